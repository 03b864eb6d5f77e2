#include "zastava/maps.hpp"

namespace zastava {

namespace {

void require_kind(const QuiverModule& m, QuiverKind kind, const char* who) {
    if (m.shape.kind != kind)
        throw DataError(std::string(who) + " expects a " + kind_name(kind) + " module, got " +
                        kind_name(m.shape.kind));
}

ArrowId aid(ArrowKind k, int l, int r = 0) { return {k, l, r}; }

} // namespace

void validate_nakajima(const NakajimaCyclicModule& n) {
    if (n.k < 1) throw infeasible_dims("cyclic rank k must be >= 1");
    if (n.framing < 0) throw infeasible_dims("framing dimension must be >= 0");
    if (static_cast<int>(n.v.size()) != n.k || static_cast<int>(n.b.size()) != n.k ||
        static_cast<int>(n.a.size()) != n.k)
        throw infeasible_dims("cyclic data must have k entries per family");
    auto vd = [&](int r) { return n.v[((r % n.k) + n.k) % n.k]; };
    for (int r = 0; r < n.k; ++r) {
        if (n.b[r].rows() != vd(r + 1) || n.b[r].cols() != vd(r))
            throw infeasible_dims("b[" + std::to_string(r) + "] has shape " + n.b[r].shape_str());
        if (n.a[r].rows() != vd(r - 1) || n.a[r].cols() != vd(r))
            throw infeasible_dims("a[" + std::to_string(r) + "] has shape " + n.a[r].shape_str());
    }
    if (n.p.rows() != n.v[0] || n.p.cols() != n.framing) throw infeasible_dims("p has wrong shape");
    if (n.q.rows() != n.framing || n.q.cols() != n.v[0]) throw infeasible_dims("q has wrong shape");
}

std::vector<Mat> nakajima_moment_residuals(const NakajimaCyclicModule& n, bool with_framing_term) {
    validate_nakajima(n);
    auto idx = [&](int r) { return ((r % n.k) + n.k) % n.k; };
    std::vector<Mat> out;
    for (int r = 0; r < n.k; ++r) {
        Mat mu = n.a[idx(r + 1)] * n.b[r] - n.b[idx(r - 1)] * n.a[r];
        if (r == 0 && with_framing_term) mu = mu + n.p * n.q;
        out.push_back(mu);
    }
    return out;
}

QuiverModule rotate(const QuiverModule& m) {
    require_kind(m, QuiverKind::Chainsaw, "rotate");
    validate_module(m);
    const int N = m.shape.N;
    QuiverModule out;
    out.shape = m.shape;
    out.dims = zero_dims(m.shape);
    for (int l = 1; l <= N; ++l) out.dims.d[{l, 0}] = m.dims.at(l % N + 1);
    for (int l = 1; l <= N; ++l) out.arrows[aid(ArrowKind::A, l)] = m.arrow(aid(ArrowKind::A, l % N + 1));
    for (int l = 0; l <= N - 1; ++l) out.arrows[aid(ArrowKind::B, l)] = m.arrow(aid(ArrowKind::B, (l + 1) % N));
    for (int l = 1; l <= N; ++l) out.arrows[aid(ArrowKind::P, l)] = m.arrow(aid(ArrowKind::P, l % N + 1));
    for (int l = 0; l <= N - 1; ++l) out.arrows[aid(ArrowKind::Q, l)] = m.arrow(aid(ArrowKind::Q, (l + 1) % N));
    validate_module(out);
    return out;
}

namespace {

// One step of the graded spiral V_1^0 -> ... -> V_N^0 -> V_1^1 -> ... ;
// returns the edge arrow leaving (l, r) and the successor vertex.
std::pair<ArrowId, VertexId> spiral_step(const QuiverShape& s, VertexId v) {
    if (v.l < s.N) return {aid(ArrowKind::B, v.l, v.r), {v.l + 1, v.r}};
    return {aid(ArrowKind::B, 0, v.r), {1, (v.r + 1) % s.k}};
}

// Product of the spiral edges from `from` to `to` (possibly the whole loop
// when from == to and full_loop is set).
Mat spiral_product(const QuiverModule& m, VertexId from, VertexId to, bool full_loop = false) {
    Mat acc = Mat::identity(m.dims.d.at(from));
    VertexId cur = from;
    bool moved = false;
    while (cur != to || (full_loop && !moved)) {
        auto [edge, next] = spiral_step(m.shape, cur);
        acc = m.arrow(edge) * acc;
        cur = next;
        moved = true;
        if (moved && cur == from && cur != to) throw std::logic_error("spiral did not reach target");
    }
    return acc;
}

} // namespace

QuiverModule psi_direct_image(const QuiverModule& m) {
    require_kind(m, QuiverKind::ChainsawFixed, "psi_direct_image");
    validate_module(m);
    const int N = m.shape.N, k = m.shape.k;
    // carriers of the output vertices inside the graded module
    auto carrier = [&](int l) -> VertexId {
        if (l <= N - 1 && N >= 2) return {l, 0};
        return {N, k - 1};
    };
    QuiverShape cs{QuiverKind::Chainsaw, N, 1};
    QuiverModule out;
    out.shape = cs;
    out.dims = zero_dims(cs);
    for (int l = 1; l <= N; ++l) out.dims.d[{l, 0}] = m.dims.d.at(carrier(l));
    for (int l = 1; l <= N; ++l) out.arrows[aid(ArrowKind::A, l)] = m.arrow(aid(ArrowKind::A, carrier(l).l, carrier(l).r));
    for (int l = 1; l <= N - 1; ++l) {
        // single edge except for the last one, which spirals through the
        // rows r = 1..k-1 before landing at the carrier of V_N
        out.arrows[aid(ArrowKind::B, l)] = spiral_product(m, carrier(l), carrier(l + 1));
    }
    {
        VertexId cN = carrier(N), c1 = carrier(1);
        bool full = (cN == c1); // N = 1: all the way around the spiral
        out.arrows[aid(ArrowKind::B, 0)] = spiral_product(m, cN, c1, full);
    }
    for (int l = 1; l <= N; ++l) {
        Mat pl = m.arrow(aid(ArrowKind::P, l));
        out.arrows[aid(ArrowKind::P, l)] = spiral_product(m, {l, 0}, carrier(l)) * pl;
    }
    for (int l = 1; l <= N - 1; ++l) out.arrows[aid(ArrowKind::Q, l)] = m.arrow(aid(ArrowKind::Q, l));
    out.arrows[aid(ArrowKind::Q, 0)] = m.arrow(aid(ArrowKind::Q, 0));
    validate_module(out);
    return out;
}

QuiverModule blowdown_pi(const QuiverModule& m) {
    require_kind(m, QuiverKind::DentedChainsaw, "blowdown_pi");
    validate_module(m);
    const int N = m.shape.N;
    const Mat& e = m.arrow(aid(ArrowKind::E, 0));
    const Mat& delta = m.arrow(aid(ArrowKind::Delta, 0));
    QuiverShape cs{QuiverKind::Chainsaw, N, 1};
    QuiverModule out;
    out.shape = cs;
    out.dims = zero_dims(cs);
    for (int l = 1; l <= N; ++l) out.dims.d[{l, 0}] = m.dims.at(l);
    for (int l = 1; l <= N - 1; ++l) out.arrows[aid(ArrowKind::A, l)] = m.arrow(aid(ArrowKind::A, l));
    out.arrows[aid(ArrowKind::A, N)] = delta * e;
    out.arrows[aid(ArrowKind::B, 0)] = m.arrow(aid(ArrowKind::B, 0)) * e;
    for (int l = 1; l <= N - 1; ++l) out.arrows[aid(ArrowKind::B, l)] = m.arrow(aid(ArrowKind::B, l));
    for (int l = 1; l <= N; ++l) out.arrows[aid(ArrowKind::P, l)] = m.arrow(aid(ArrowKind::P, l));
    out.arrows[aid(ArrowKind::Q, 0)] = m.arrow(aid(ArrowKind::Q, 0)) * e;
    for (int l = 1; l <= N - 1; ++l) out.arrows[aid(ArrowKind::Q, l)] = m.arrow(aid(ArrowKind::Q, l));
    validate_module(out);
    return out;
}

QuiverModule psi_k(const QuiverModule& m) {
    require_kind(m, QuiverKind::Rift, "psi_k");
    validate_module(m);
    const int N = m.shape.N, k = m.shape.k;
    auto modk = [k](int r) { return ((r % k) + k) % k; };
    QuiverShape fs{QuiverKind::ChainsawFixed, N, k};
    QuiverModule out;
    out.shape = fs;
    out.dims = zero_dims(fs);
    for (int l = 1; l <= N; ++l)
        for (int r = 0; r < k; ++r) out.dims.d[{l, r}] = m.dims.at(l, r);
    for (int r = 0; r < k; ++r) {
        const Mat& er = m.arrow(aid(ArrowKind::E, 0, r));            // V_N^r -> V_0^{r+1}
        const Mat& delta_next = m.arrow(aid(ArrowKind::Delta, 0, modk(r + 1))); // V_0^{r+1} -> V_N^r
        for (int l = 1; l <= N - 1; ++l) {
            out.arrows[aid(ArrowKind::A, l, r)] = m.arrow(aid(ArrowKind::A, l, r));
            out.arrows[aid(ArrowKind::B, l, r)] = m.arrow(aid(ArrowKind::B, l, r));
        }
        out.arrows[aid(ArrowKind::A, N, r)] = delta_next * er;
        out.arrows[aid(ArrowKind::B, 0, r)] = m.arrow(aid(ArrowKind::B, 0, modk(r + 1))) * er;
    }
    for (int l = 1; l <= N; ++l) out.arrows[aid(ArrowKind::P, l)] = m.arrow(aid(ArrowKind::P, l));
    for (int l = 1; l <= N - 1; ++l) out.arrows[aid(ArrowKind::Q, l)] = m.arrow(aid(ArrowKind::Q, l));
    out.arrows[aid(ArrowKind::Q, 0)] =
        m.arrow(aid(ArrowKind::Q, 0)) * m.arrow(aid(ArrowKind::E, 0, k - 1)); // V_N^{k-1} -> V_0^0 -> W_0
    validate_module(out);
    return out;
}

QuiverModule pi_k(const QuiverModule& m) { return psi_direct_image(psi_k(m)); }

NakajimaCyclicModule phi_open(const QuiverModule& m) {
    require_kind(m, QuiverKind::Rift, "phi_open");
    validate_module(m);
    const int N = m.shape.N, k = m.shape.k;
    auto modk = [k](int r) { return ((r % k) + k) % k; };

    // every edge must be invertible; this forces constant dims per column
    std::map<std::pair<int, int>, Mat> binv;
    for (int r = 0; r < k; ++r)
        for (int l = 0; l <= N - 1; ++l) {
            const Mat& bl = m.arrow(aid(ArrowKind::B, l, r));
            if (bl.rows() != bl.cols())
                throw not_on_open_piece("edge B[" + std::to_string(l) + "," + std::to_string(r) +
                                        "] is not square");
            auto inv = inverse(bl);
            if (!inv)
                throw not_on_open_piece("edge B[" + std::to_string(l) + "," + std::to_string(r) +
                                        "] is singular");
            binv[{l, r}] = *inv;
        }

    NakajimaCyclicModule n;
    n.k = k;
    n.framing = N;
    n.v.resize(k);
    for (int r = 0; r < k; ++r) n.v[r] = m.dims.at(0, r);
    n.b.resize(k);
    n.a.resize(k);
    for (int r = 0; r < k; ++r) {
        Mat row = Mat::identity(n.v[r]); // B_{N-1} ... B_0 on row r
        for (int l = 0; l <= N - 1; ++l) row = m.arrow(aid(ArrowKind::B, l, r)) * row;
        n.b[r] = m.arrow(aid(ArrowKind::E, 0, r)) * row;
        Mat rowinv_prev = Mat::identity(n.v[modk(r - 1)]);
        for (int l = N - 1; l >= 0; --l) rowinv_prev = binv.at({l, modk(r - 1)}) * rowinv_prev;
        // rowinv_prev = (B_{N-1} ... B_0)^{-1} on row r-1
        n.a[r] = rowinv_prev * m.arrow(aid(ArrowKind::Delta, 0, r));
    }
    n.p = Mat(n.v[0], N);
    n.q = Mat(N, n.v[0]);
    for (int j = 0; j < N; ++j) {
        // column j: p_{j+1} pulled back through the inverted edges to V_0^0
        Mat col = m.arrow(aid(ArrowKind::P, j + 1));
        for (int l = j; l >= 0; --l) col = binv.at({l, 0}) * col;
        for (int i = 0; i < n.v[0]; ++i) n.p.at(i, j) = col.at(i, 0);
        // row j: q_j pushed forward along the edges from V_0^0
        Mat row = Mat::identity(n.v[0]);
        for (int l = 0; l <= j - 1; ++l) row = m.arrow(aid(ArrowKind::B, l, 0)) * row;
        Mat qrow = m.arrow(aid(ArrowKind::Q, j)) * row;
        for (int i = 0; i < n.v[0]; ++i) n.q.at(j, i) = qrow.at(0, i);
    }
    validate_nakajima(n);
    return n;
}

QuiverModule phi_inverse_generator(const NakajimaCyclicModule& n) {
    validate_nakajima(n);
    const int N = n.framing, k = n.k;
    if (N < 1) throw infeasible_dims("framing dimension must be >= 1 to build a rift module");
    for (const Mat& mu : nakajima_moment_residuals(n, true))
        if (!mu.is_zero()) throw DataError("cyclic data does not satisfy the moment-map relations");
    auto modk = [k](int r) { return ((r % k) + k) % k; };

    QuiverShape rs{QuiverKind::Rift, N, k};
    QuiverModule m;
    m.shape = rs;
    m.dims = zero_dims(rs);
    for (int l = 0; l <= N; ++l)
        for (int r = 0; r < k; ++r) m.dims.d[{l, r}] = n.v[r];
    for (int r = 0; r < k; ++r) {
        for (int l = 0; l <= N - 1; ++l) m.arrows[aid(ArrowKind::B, l, r)] = Mat::identity(n.v[r]);
        m.arrows[aid(ArrowKind::E, 0, r)] = n.b[r];
        m.arrows[aid(ArrowKind::Delta, 0, r)] = n.a[r];
    }
    for (int l = 1; l <= N; ++l) {
        Mat col(n.v[0], 1);
        for (int i = 0; i < n.v[0]; ++i) col.at(i, 0) = n.p.at(i, l - 1);
        m.arrows[aid(ArrowKind::P, l)] = col;
    }
    for (int l = 0; l <= N - 1; ++l) {
        Mat row(1, n.v[0]);
        for (int i = 0; i < n.v[0]; ++i) row.at(0, i) = n.q.at(l, i);
        m.arrows[aid(ArrowKind::Q, l)] = row;
    }
    // loops, filled row by row so each relation holds on the nose
    for (int r = 0; r < k && N >= 2; ++r) {
        Mat cur = n.b[modk(r - 1)] * n.a[r]; // e delta on V_0^r
        if (r == 0) cur = cur - m.arrow(aid(ArrowKind::P, 1)) * m.arrow(aid(ArrowKind::Q, 0));
        m.arrows[aid(ArrowKind::A, 1, r)] = cur;
        for (int l = 1; l <= N - 2; ++l) {
            Mat next = m.arrow(aid(ArrowKind::A, l, r));
            if (r == 0)
                next = next - m.arrow(aid(ArrowKind::P, l + 1)) * m.arrow(aid(ArrowKind::Q, l));
            m.arrows[aid(ArrowKind::A, l + 1, r)] = next;
        }
    }
    validate_module(m);
    if (!relations_hold(m)) throw std::logic_error("phi_inverse_generator produced a bad module");
    return m;
}

namespace {

QuiverModule rekind(const QuiverModule& m, QuiverKind kind) {
    QuiverShape s{kind, m.shape.N, 1};
    QuiverModule out;
    out.shape = s;
    out.dims = zero_dims(s);
    for (const auto& [v, d] : m.dims.d) out.dims.d[v] = d;
    out.arrows = m.arrows;
    validate_module(out);
    return out;
}

} // namespace

QuiverModule fixed_to_chainsaw(const QuiverModule& m) {
    require_kind(m, QuiverKind::ChainsawFixed, "fixed_to_chainsaw");
    if (m.shape.k != 1) throw DataError("fixed_to_chainsaw requires k = 1");
    return rekind(m, QuiverKind::Chainsaw);
}

QuiverModule rift_to_dented(const QuiverModule& m) {
    require_kind(m, QuiverKind::Rift, "rift_to_dented");
    if (m.shape.k != 1) throw DataError("rift_to_dented requires k = 1");
    return rekind(m, QuiverKind::DentedChainsaw);
}

QuiverModule dented_to_rift(const QuiverModule& m) {
    require_kind(m, QuiverKind::DentedChainsaw, "dented_to_rift");
    return rekind(m, QuiverKind::Rift);
}

} // namespace zastava
