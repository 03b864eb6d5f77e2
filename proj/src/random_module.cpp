#include "zastava/random_module.hpp"

#include "zastava/errors.hpp"
#include "zastava/stability.hpp"

#include <sstream>

namespace zastava {

namespace {

ArrowId aid(ArrowKind k, int l, int r = 0) { return {k, l, r}; }

Mat random_poly_in(const Mat& a, Rng& rng) {
    int d = a.rows();
    Mat acc = Mat::zero(d, d);
    Mat pw = Mat::identity(d);
    for (int i = 0; i < d; ++i) {
        acc = acc + pw.scaled(rng.small_int(5));
        pw = pw * a;
    }
    return acc;
}

Mat random_invertible(int d, Rng& rng) {
    for (int tries = 0; tries < 64; ++tries) {
        Mat c = random_int_matrix(d, d, rng, 4);
        for (int i = 0; i < d; ++i) c.at(i, i) += 1;
        if (inverse(c)) return c;
    }
    throw generation_failed("could not draw an invertible matrix of size " + std::to_string(d));
}

std::string dims_str(const DimVector& dims) {
    std::ostringstream os;
    os << kind_name(dims.shape.kind) << " N=" << dims.shape.N << " k=" << dims.shape.k << " d=(";
    bool first = true;
    for (const auto& [v, d] : dims.d) {
        if (!first) os << ",";
        os << d;
        first = false;
    }
    os << ")";
    return os.str();
}

// --- ungraded shapes -------------------------------------------------------

std::optional<QuiverModule> try_chainsaw(const DimVector& dims, Rng& rng) {
    const int N = dims.shape.N;
    QuiverModule m = zero_module<Rational>(dims);
    if (N == 1) {
        int d = dims.at(1);
        Mat a = random_int_matrix(d, d, rng);
        m.arrows[aid(ArrowKind::A, 1)] = a;
        m.arrows[aid(ArrowKind::B, 0)] = random_poly_in(a, rng);
        m.arrows[aid(ArrowKind::P, 1)] = random_int_matrix(d, 1, rng);
        m.arrows[aid(ArrowKind::Q, 0)] = Mat(1, d);
        return m;
    }
    for (int l = 1; l <= N; ++l) {
        int d = dims.at(l);
        m.arrows[aid(ArrowKind::A, l)] = random_int_matrix(d, d, rng);
        m.arrows[aid(ArrowKind::P, l)] = random_int_matrix(d, 1, rng);
    }
    for (int l = 0; l <= N - 1; ++l) {
        int src = (l == 0) ? N : l;
        m.arrows[aid(ArrowKind::Q, l)] = random_int_matrix(1, dims.at(src), rng);
    }
    for (int l = 1; l <= N - 1; ++l) {
        Mat rhs = -(m.arrow(aid(ArrowKind::P, l + 1)) * m.arrow(aid(ArrowKind::Q, l)));
        auto b = sylvester_solve(m.arrow(aid(ArrowKind::A, l + 1)), m.arrow(aid(ArrowKind::A, l)), rhs);
        if (!b) return std::nullopt;
        m.arrows[aid(ArrowKind::B, l)] = *b;
    }
    {
        Mat rhs = -(m.arrow(aid(ArrowKind::P, 1)) * m.arrow(aid(ArrowKind::Q, 0)));
        auto b = sylvester_solve(m.arrow(aid(ArrowKind::A, 1)), m.arrow(aid(ArrowKind::A, N)), rhs);
        if (!b) return std::nullopt;
        m.arrows[aid(ArrowKind::B, 0)] = *b;
    }
    return m;
}

std::optional<QuiverModule> try_dented(const DimVector& dims, Rng& rng) {
    const int N = dims.shape.N;
    QuiverModule m = zero_module<Rational>(dims);
    if (N == 1) {
        int d = dims.at(0);
        Mat e = random_invertible(d, rng);
        m.arrows[aid(ArrowKind::B, 0)] = Mat::identity(d);
        m.arrows[aid(ArrowKind::E, 0)] = e;
        m.arrows[aid(ArrowKind::Delta, 0)] = random_poly_in(e, rng);
        m.arrows[aid(ArrowKind::P, 1)] = random_int_matrix(d, 1, rng);
        m.arrows[aid(ArrowKind::Q, 0)] = Mat(1, d);
        return m;
    }
    for (int l = 1; l <= N - 1; ++l)
        m.arrows[aid(ArrowKind::A, l)] = random_int_matrix(dims.at(l), dims.at(l), rng);
    int d0 = dims.at(0);
    m.arrows[aid(ArrowKind::E, 0)] = random_int_matrix(d0, d0, rng);
    m.arrows[aid(ArrowKind::Delta, 0)] = random_int_matrix(d0, d0, rng);
    for (int l = 1; l <= N; ++l) m.arrows[aid(ArrowKind::P, l)] = random_int_matrix(dims.at(l), 1, rng);
    for (int l = 0; l <= N - 1; ++l) m.arrows[aid(ArrowKind::Q, l)] = random_int_matrix(1, dims.at(l), rng);

    const Mat& e = m.arrow(aid(ArrowKind::E, 0));
    const Mat& delta = m.arrow(aid(ArrowKind::Delta, 0));
    {
        Mat rhs = -(m.arrow(aid(ArrowKind::P, 1)) * m.arrow(aid(ArrowKind::Q, 0)));
        auto b = sylvester_solve(m.arrow(aid(ArrowKind::A, 1)), e * delta, rhs);
        if (!b) return std::nullopt;
        m.arrows[aid(ArrowKind::B, 0)] = *b;
    }
    for (int l = 1; l <= N - 2; ++l) {
        Mat rhs = -(m.arrow(aid(ArrowKind::P, l + 1)) * m.arrow(aid(ArrowKind::Q, l)));
        auto b = sylvester_solve(m.arrow(aid(ArrowKind::A, l + 1)), m.arrow(aid(ArrowKind::A, l)), rhs);
        if (!b) return std::nullopt;
        m.arrows[aid(ArrowKind::B, l)] = *b;
    }
    {
        Mat rhs = -(m.arrow(aid(ArrowKind::P, N)) * m.arrow(aid(ArrowKind::Q, N - 1)));
        auto b = sylvester_solve(delta * e, m.arrow(aid(ArrowKind::A, N - 1)), rhs);
        if (!b) return std::nullopt;
        m.arrows[aid(ArrowKind::B, N - 1)] = *b;
    }
    return m;
}

// --- shared-spectrum graded draws -------------------------------------------

Mat shared_diag(int d) {
    Mat m(d, d);
    for (int i = 0; i < d; ++i) m.at(i, i) = rat(i + 1);
    return m;
}

Mat trunc_rect(int rows, int cols, bool weighted) {
    Mat m(rows, cols);
    for (int i = 0; i < std::min(rows, cols); ++i) m.at(i, i) = weighted ? rat(i + 1) : rat(1);
    return m;
}

// Solve A_dst * B - B * A_src + p * q = 0 jointly in (B, q); p may be
// empty (no framing term). Returns a random solution.
std::optional<std::pair<Mat, Mat>> solve_edge_and_q(const Mat& a_dst, const Mat& a_src, const Mat& p,
                                                    bool with_framing, Rng& rng) {
    int dr = a_dst.rows(), dc = a_src.rows();
    int nb = dr * dc;
    int nq = with_framing ? dc : 0;
    Mat sys(dr * dc, nb + nq);
    auto bidx = [dc](int i, int j) { return i * dc + j; };
    for (int i = 0; i < dr; ++i)
        for (int j = 0; j < dc; ++j) {
            int row = bidx(i, j);
            for (int t = 0; t < dr; ++t) sys.at(row, bidx(t, j)) += a_dst.at(i, t);
            for (int t = 0; t < dc; ++t) sys.at(row, bidx(i, t)) -= a_src.at(t, j);
            if (with_framing) sys.at(row, nb + j) += p.at(i, 0);
        }
    auto sol = solve_linear(sys, Mat(dr * dc, 1));
    if (!sol) return std::nullopt;
    Mat flat(nb + nq, 1);
    for (const auto& kv : sol->kernel) {
        Rational c = rng.small_int(5);
        for (int i = 0; i < flat.rows(); ++i) flat.at(i, 0) += c * kv.at(i, 0);
    }
    Mat b(dr, dc), q(1, with_framing ? dc : 0);
    for (int i = 0; i < dr; ++i)
        for (int j = 0; j < dc; ++j) b.at(i, j) = flat.at(bidx(i, j), 0);
    if (with_framing) {
        q = Mat(1, dc);
        for (int j = 0; j < dc; ++j) q.at(0, j) = flat.at(nb + j, 0);
    }
    return std::make_pair(b, q);
}

std::optional<QuiverModule> try_fixed(const DimVector& dims, Rng& rng) {
    const int N = dims.shape.N, k = dims.shape.k;
    QuiverModule m = zero_module<Rational>(dims);
    std::map<VertexId, Mat> conj;
    for (const VertexId& v : vertex_list(dims.shape)) {
        int d = dims.d.at(v);
        Mat g = random_invertible(d, rng);
        conj[v] = g;
        auto gi = inverse(g);
        m.arrows[aid(ArrowKind::A, v.l, v.r)] = g * shared_diag(d) * (*gi);
    }
    for (int l = 1; l <= N; ++l) m.arrows[aid(ArrowKind::P, l)] = random_int_matrix(dims.at(l, 0), 1, rng);

    auto modk = [k](int r) { return ((r % k) + k) % k; };
    for (int r = 0; r < k; ++r) {
        for (int l = 1; l <= N - 1; ++l) {
            bool framed = (r == 0);
            Mat p = framed ? m.arrow(aid(ArrowKind::P, l + 1)) : Mat();
            auto bq = solve_edge_and_q(m.arrow(aid(ArrowKind::A, l + 1, r)), m.arrow(aid(ArrowKind::A, l, r)), p,
                                       framed, rng);
            if (!bq) return std::nullopt;
            m.arrows[aid(ArrowKind::B, l, r)] = bq->first;
            if (framed) m.arrows[aid(ArrowKind::Q, l)] = bq->second;
        }
        bool framed = (r == k - 1);
        Mat p = framed ? m.arrow(aid(ArrowKind::P, 1)) : Mat();
        auto bq = solve_edge_and_q(m.arrow(aid(ArrowKind::A, 1, modk(r + 1))), m.arrow(aid(ArrowKind::A, N, r)), p,
                                   framed, rng);
        if (!bq) return std::nullopt;
        m.arrows[aid(ArrowKind::B, 0, r)] = bq->first;
        if (framed) m.arrows[aid(ArrowKind::Q, 0)] = bq->second;
    }
    if (!is_gen_stable(m)) return std::nullopt;
    return m;
}

std::optional<QuiverModule> try_rift_shared(const DimVector& dims, Rng& rng) {
    const int N = dims.shape.N, k = dims.shape.k;
    QuiverModule m = zero_module<Rational>(dims);
    auto modk = [k](int r) { return ((r % k) + k) % k; };
    std::map<VertexId, Mat> conj, conj_inv;
    for (const VertexId& v : vertex_list(dims.shape)) {
        Mat g = random_invertible(dims.d.at(v), rng);
        conj[v] = g;
        conj_inv[v] = *inverse(g);
    }
    for (const VertexId& v : vertex_list(dims.shape))
        if (v.l >= 1 && v.l <= N - 1)
            m.arrows[aid(ArrowKind::A, v.l, v.r)] = conj[v] * shared_diag(dims.d.at(v)) * conj_inv[v];
    // dent maps built from truncated rectangles so the junction products
    // share the loop spectrum
    for (int r = 0; r < k; ++r) {
        VertexId vN{N, r}, v0next{0, modk(r + 1)};
        m.arrows[aid(ArrowKind::E, 0, r)] =
            conj[v0next] * trunc_rect(dims.d.at(v0next), dims.d.at(vN), false) * conj_inv[vN];
        VertexId v0{0, r}, vNprev{N, modk(r - 1)};
        m.arrows[aid(ArrowKind::Delta, 0, r)] =
            conj[vNprev] * trunc_rect(dims.d.at(vNprev), dims.d.at(v0), true) * conj_inv[v0];
    }
    for (int l = 1; l <= N; ++l) m.arrows[aid(ArrowKind::P, l)] = random_int_matrix(dims.at(l, 0), 1, rng);

    for (int r = 0; r < k; ++r) {
        const Mat ed = m.arrow(aid(ArrowKind::E, 0, modk(r - 1))) * m.arrow(aid(ArrowKind::Delta, 0, r));
        const Mat de = m.arrow(aid(ArrowKind::Delta, 0, modk(r + 1))) * m.arrow(aid(ArrowKind::E, 0, r));
        if (N == 1) {
            bool framed = (r == 0);
            Mat p = framed ? m.arrow(aid(ArrowKind::P, 1)) : Mat();
            auto bq = solve_edge_and_q(de, ed, p, framed, rng);
            if (!bq) return std::nullopt;
            m.arrows[aid(ArrowKind::B, 0, r)] = bq->first;
            if (framed) m.arrows[aid(ArrowKind::Q, 0)] = bq->second;
            continue;
        }
        {
            bool framed = (r == 0);
            Mat p = framed ? m.arrow(aid(ArrowKind::P, 1)) : Mat();
            auto bq = solve_edge_and_q(m.arrow(aid(ArrowKind::A, 1, r)), ed, p, framed, rng);
            if (!bq) return std::nullopt;
            m.arrows[aid(ArrowKind::B, 0, r)] = bq->first;
            if (framed) m.arrows[aid(ArrowKind::Q, 0)] = bq->second;
        }
        for (int l = 1; l <= N - 2; ++l) {
            bool framed = (r == 0);
            Mat p = framed ? m.arrow(aid(ArrowKind::P, l + 1)) : Mat();
            auto bq = solve_edge_and_q(m.arrow(aid(ArrowKind::A, l + 1, r)), m.arrow(aid(ArrowKind::A, l, r)), p,
                                       framed, rng);
            if (!bq) return std::nullopt;
            m.arrows[aid(ArrowKind::B, l, r)] = bq->first;
            if (framed) m.arrows[aid(ArrowKind::Q, l)] = bq->second;
        }
        {
            bool framed = (r == 0);
            Mat p = framed ? m.arrow(aid(ArrowKind::P, N)) : Mat();
            auto bq = solve_edge_and_q(de, m.arrow(aid(ArrowKind::A, N - 1, r)), p, framed, rng);
            if (!bq) return std::nullopt;
            m.arrows[aid(ArrowKind::B, N - 1, r)] = bq->first;
            if (framed) m.arrows[aid(ArrowKind::Q, N - 1)] = bq->second;
        }
    }
    return m;
}

} // namespace

NakajimaCyclicModule random_nakajima(int k, int framing, const std::vector<int>& v, std::uint64_t seed) {
    if (k < 1 || static_cast<int>(v.size()) != k) throw infeasible_dims("v must have k entries");
    Rng rng(seed);
    auto idx = [k](int r) { return ((r % k) + k) % k; };
    NakajimaCyclicModule n;
    n.k = k;
    n.framing = framing;
    n.v = v;
    n.b.resize(k);
    n.a.resize(k);
    for (int r = 0; r < k; ++r) n.b[r] = random_int_matrix(v[idx(r + 1)], v[r], rng, 4);
    n.p = random_int_matrix(v[0], framing, rng, 4);
    n.q = Mat(framing, v[0]);
    for (int r = 0; r < k; ++r) n.a[r] = Mat(v[idx(r - 1)], v[r]);

    // Remaining unknowns (a-family, q) solve a linear homogeneous system;
    // draw a random point of its solution space.
    std::vector<int> aoff(k);
    int nunk = 0;
    for (int r = 0; r < k; ++r) {
        aoff[r] = nunk;
        nunk += v[idx(r - 1)] * v[r];
    }
    int qoff = nunk;
    nunk += framing * v[0];
    if (nunk == 0) return n;

    std::vector<std::vector<Rational>> rows;
    for (int r = 0; r < k; ++r) {
        // mu_r = a[r+1] b[r] - b[r-1] a[r] (+ p q at r = 0), an v[r] x v[r] block
        int rr = idx(r + 1), rm = idx(r - 1);
        for (int i = 0; i < v[r]; ++i)
            for (int j = 0; j < v[r]; ++j) {
                std::vector<Rational> row(nunk, Rational(0));
                // (a[rr] b[r])_{ij} = sum_t a[rr][i,t] b[r][t,j]; a[rr]: v[r] x v[rr]
                for (int t = 0; t < v[rr]; ++t)
                    row[aoff[rr] + i * v[rr] + t] += n.b[r].at(t, j);
                // -(b[rm] a[r])_{ij} = -sum_t b[rm][i,t] a[r][t,j]; a[r]: v[rm] x v[r]
                for (int t = 0; t < v[rm]; ++t)
                    row[aoff[r] + t * v[r] + j] -= n.b[rm].at(i, t);
                if (r == 0)
                    for (int t = 0; t < framing; ++t) row[qoff + t * v[0] + j] += n.p.at(i, t);
                rows.push_back(std::move(row));
            }
    }
    Mat sys(static_cast<int>(rows.size()), nunk);
    for (int i = 0; i < sys.rows(); ++i)
        for (int j = 0; j < nunk; ++j) sys.at(i, j) = rows[i][j];
    auto sol = solve_linear(sys, Mat(sys.rows(), 1));
    Mat flat(nunk, 1);
    for (const auto& kv : sol->kernel) {
        Rational c = rng.small_int(4);
        for (int i = 0; i < nunk; ++i) flat.at(i, 0) += c * kv.at(i, 0);
    }
    for (int r = 0; r < k; ++r)
        for (int i = 0; i < v[idx(r - 1)]; ++i)
            for (int j = 0; j < v[r]; ++j) n.a[r].at(i, j) = flat.at(aoff[r] + i * v[r] + j, 0);
    for (int t = 0; t < framing; ++t)
        for (int j = 0; j < v[0]; ++j) n.q.at(t, j) = flat.at(qoff + t * v[0] + j, 0);
    for (const Mat& mu : nakajima_moment_residuals(n))
        if (!mu.is_zero()) throw std::logic_error("random_nakajima produced inconsistent data");
    return n;
}

AdhmData random_adhm(int d, int n, std::uint64_t seed) {
    Rng rng(seed);
    AdhmData out;
    out.a = random_int_matrix(d, d, rng);
    out.p = random_int_matrix(d, n, rng);
    auto bq = [&]() -> std::optional<std::pair<Mat, Mat>> {
        // solve a*b - b*a + p*q = 0 jointly in (b, q)
        int nb = d * d, nq = n * d;
        Mat sys(d * d, nb + nq);
        auto bidx = [d](int i, int j) { return i * d + j; };
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                int row = bidx(i, j);
                for (int t = 0; t < d; ++t) {
                    sys.at(row, bidx(t, j)) += out.a.at(i, t);
                    sys.at(row, bidx(i, t)) -= out.a.at(t, j);
                }
                for (int t = 0; t < n; ++t) sys.at(row, nb + t * d + j) += out.p.at(i, t);
            }
        auto sol = solve_linear(sys, Mat(d * d, 1));
        if (!sol) return std::nullopt;
        Mat flat(nb + nq, 1);
        for (const auto& kv : sol->kernel) {
            Rational c = rng.small_int(4);
            for (int i = 0; i < flat.rows(); ++i) flat.at(i, 0) += c * kv.at(i, 0);
        }
        Mat b(d, d), q(n, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) b.at(i, j) = flat.at(bidx(i, j), 0);
        for (int t = 0; t < n; ++t)
            for (int j = 0; j < d; ++j) q.at(t, j) = flat.at(nb + t * d + j, 0);
        return std::make_pair(b, q);
    }();
    out.b = bq->first;
    out.q = bq->second;
    Mat res = out.a * out.b - out.b * out.a + out.p * out.q;
    if (!res.is_zero()) throw std::logic_error("random_adhm produced inconsistent data");
    return out;
}

QuiverModule random_module(const DimVector& dims, std::uint64_t seed) {
    validate_dims(dims);
    Rng master(seed);
    for (int attempt = 0; attempt < kGeneratorRetryBudget; ++attempt) {
        Rng rng = master.fork(attempt);
        std::optional<QuiverModule> m;
        switch (dims.shape.kind) {
            case QuiverKind::Chainsaw: m = try_chainsaw(dims, rng); break;
            case QuiverKind::DentedChainsaw: m = try_dented(dims, rng); break;
            case QuiverKind::ChainsawFixed: m = try_fixed(dims, rng); break;
            case QuiverKind::Rift: {
                bool constant_columns = true;
                for (int r = 0; r < dims.shape.k; ++r)
                    for (int l = 0; l <= dims.shape.N; ++l)
                        if (dims.at(l, r) != dims.at(0, r)) constant_columns = false;
                if (constant_columns) {
                    std::vector<int> v(dims.shape.k);
                    for (int r = 0; r < dims.shape.k; ++r) v[r] = dims.at(0, r);
                    try {
                        NakajimaCyclicModule n =
                            random_nakajima(dims.shape.k, dims.shape.N, v, rng.next_u64());
                        m = phi_inverse_generator(n);
                    } catch (const ComputationError&) {
                        m = std::nullopt;
                    }
                } else {
                    m = try_rift_shared(dims, rng);
                }
                break;
            }
        }
        if (m) {
            validate_module(*m);
            if (relations_hold(*m)) return *m;
        }
    }
    throw generation_failed("no relation-satisfying module after " + std::to_string(kGeneratorRetryBudget) +
                            " attempts (seed " + std::to_string(seed) + ", " + dims_str(dims) + ")");
}

} // namespace zastava
