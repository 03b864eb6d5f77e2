#include "zastava/equivariant.hpp"

#include <algorithm>

namespace zastava {

namespace {

ArrowId aid(ArrowKind k, int l, int r = 0) { return {k, l, r}; }

int mod(int a, int n) { return ((a % n) + n) % n; }

// eigenvalue exponent of the fixing gauge on V_l^r, before the global shift
int expected_exponent(const QuiverShape& shape, int l, int r, int k) {
    int n = k * shape.N;
    if (shape.kind == QuiverKind::Chainsaw) return mod(-(l + r * shape.N), n);
    return mod(r * shape.N - l, n); // dented
}

} // namespace

int gamma_character(const QuiverShape& shape, const ArrowId& id) {
    if (shape.kind != QuiverKind::Chainsaw && shape.kind != QuiverKind::DentedChainsaw)
        throw DataError("cyclic action is defined on ungraded shapes only");
    switch (id.kind) {
        case ArrowKind::A: return 0;
        case ArrowKind::B: return 1;
        case ArrowKind::P: return id.l;
        case ArrowKind::Q: return -id.l;
        case ArrowKind::E: return -2 * shape.N;
        case ArrowKind::Delta: return 2 * shape.N;
    }
    throw std::logic_error("bad arrow kind");
}

QuiverModuleT<Cyc> gamma_act(const QuiverModuleT<Cyc>& m, int k, long power) {
    if (k < 1) throw DataError("k must be >= 1");
    validate_module(m);
    const int n = k * m.shape.N;
    const CycField* f = CycField::get(n);
    QuiverModuleT<Cyc> out = m;
    for (const Arrow& a : arrow_list(m.shape)) {
        long chi = static_cast<long>(gamma_character(m.shape, a.id)) * power;
        int e = static_cast<int>(((chi % n) + n) % n);
        if (e == 0) continue;
        out.arrows[a.id] = m.arrow(a.id).scaled(Cyc::zeta_pow(f, e));
    }
    return out;
}

QuiverModuleT<Cyc> gamma_act(const QuiverModule& m, int k, long power) {
    return gamma_act(to_cyc_module(m, CycField::get(k * m.shape.N)), k, power);
}

QuiverModuleT<Cyc> to_cyc_module(const QuiverModule& m, const CycField* f) {
    QuiverModuleT<Cyc> out;
    out.shape = m.shape;
    out.dims = m.dims;
    for (const auto& [id, mat] : m.arrows) out.arrows[id] = to_cyc(mat, f);
    return out;
}

QuiverModule to_rational_module(const QuiverModuleT<Cyc>& m) {
    QuiverModule out;
    out.shape = m.shape;
    out.dims = m.dims;
    for (const auto& [id, mat] : m.arrows) out.arrows[id] = to_rational(mat);
    return out;
}

std::optional<GaugeT<Cyc>> find_fixing_gauge(const QuiverModule& m, int k, int invertibility_trials) {
    validate_module(m);
    if (m.shape.kind != QuiverKind::Chainsaw && m.shape.kind != QuiverKind::DentedChainsaw)
        throw DataError("find_fixing_gauge needs a chainsaw or dented chainsaw module");
    const int n = k * m.shape.N;
    const CycField* f = CycField::get(n);

    // Unknown gauge g; the fixed-point condition gauge_act(g, gamma(m)) = m
    // reads w^chi g_dst M = M g_src per arrow (framing blocks are 1).
    auto verts = vertex_list(m.shape);
    std::map<VertexId, int> offset;
    int nunk = 0;
    for (const VertexId& v : verts) {
        offset[v] = nunk;
        nunk += m.dims.d.at(v) * m.dims.d.at(v);
    }
    if (nunk == 0) return identity_gauge_t<Cyc>(m.dims);

    // Each arrow contributes (w^chi g_dst M - M g_src)_{ij} = 0, with the
    // framing block of g fixed to 1, which makes the p/q rows inhomogeneous.
    auto unk = [&](const VertexId& v, int i, int j) { return offset.at(v) + i * m.dims.d.at(v) + j; };
    std::vector<std::vector<Cyc>> sys;
    std::vector<Cyc> rhs_flat;
    for (const Arrow& a : arrow_list(m.shape)) {
        const Mat& M = m.arrow(a.id);
        Cyc chi = Cyc::zeta_pow(f, mod(gamma_character(m.shape, a.id), n));
        int dr = M.rows(), dc = M.cols();
        for (int i = 0; i < dr; ++i)
            for (int j = 0; j < dc; ++j) {
                std::vector<Cyc> row(nunk, Cyc(0));
                Cyc rhs(0);
                if (!a.dst_is_framing) {
                    for (int t = 0; t < dr; ++t)
                        if (M.at(t, j) != 0)
                            row[unk(a.dst, i, t)] = row[unk(a.dst, i, t)] + chi * Cyc(M.at(t, j));
                } else {
                    rhs = rhs - chi * Cyc(M.at(i, j));
                }
                if (!a.src_is_framing) {
                    for (int t = 0; t < dc; ++t)
                        if (M.at(i, t) != 0)
                            row[unk(a.src, t, j)] = row[unk(a.src, t, j)] - Cyc(M.at(i, t));
                } else {
                    rhs = rhs + Cyc(M.at(i, j));
                }
                sys.push_back(std::move(row));
                rhs_flat.push_back(rhs);
            }
    }

    CycMat A(static_cast<int>(sys.size()), nunk);
    CycMat b(static_cast<int>(sys.size()), 1);
    for (int i = 0; i < A.rows(); ++i) {
        for (int j = 0; j < nunk; ++j) A.at(i, j) = sys[i][j];
        b.at(i, 0) = rhs_flat[i]; // unknown part = framing constants
    }
    auto sol = solve_linear_generic(A, b);
    if (!sol) return std::nullopt;

    Rng rng(0x9a7fULL + static_cast<std::uint64_t>(n));
    for (int trial = 0; trial < invertibility_trials; ++trial) {
        CycMat g_flat = sol->particular; // trial 0: the particular solution itself
        if (trial > 0)
            for (const auto& kv : sol->kernel) {
                Cyc c(rng.small_int(5));
                for (int i = 0; i < g_flat.rows(); ++i) g_flat.at(i, 0) = g_flat.at(i, 0) + c * kv.at(i, 0);
            }
        GaugeT<Cyc> g;
        bool ok = true;
        for (const VertexId& v : verts) {
            int d = m.dims.d.at(v);
            CycMat blk(d, d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) blk.at(i, j) = g_flat.at(unk(v, i, j), 0);
            if (d > 0 && !inverse(blk)) { ok = false; break; }
            g.blocks[v] = blk;
        }
        if (ok) return g;
    }
    return std::nullopt; // intertwiner space found, but no invertible element in the trial budget
}

namespace {

// rational solutions of g_v x = w^j x, as rows of the returned matrix
Mat rational_eigenspace(const CycMat& gv, int j, const CycField* f) {
    int d = gv.rows();
    int deg = f->degree();
    const std::vector<Rational>& zc = f->zeta_power(j);
    Mat sys(d * deg, d);
    for (int c = 0; c < deg; ++c)
        for (int i = 0; i < d; ++i)
            for (int t = 0; t < d; ++t) {
                const auto& coords = gv.at(i, t).coords();
                Rational coeff = (c < static_cast<int>(coords.size())) ? coords[c] : Rational(0);
                if (i == t) coeff -= zc[c];
                sys.at(c * d + i, t) = coeff;
            }
    auto sol = solve_linear(sys, Mat(d * deg, 1));
    Mat rows(static_cast<int>(sol->kernel.size()), d);
    for (std::size_t r = 0; r < sol->kernel.size(); ++r)
        for (int t = 0; t < d; ++t) rows.at(static_cast<int>(r), t) = sol->kernel[r].at(t, 0);
    return rows;
}

} // namespace

Eigendecomposition eigendecompose(const QuiverModule& m, const GaugeT<Cyc>& g, int k) {
    validate_module(m);
    if (m.shape.kind != QuiverKind::Chainsaw && m.shape.kind != QuiverKind::DentedChainsaw)
        throw DataError("eigendecompose needs a chainsaw or dented chainsaw module");
    const int N = m.shape.N, n = k * N;
    const CycField* f = CycField::get(n);

    // the gauge must actually witness the fixed point
    {
        QuiverModuleT<Cyc> twisted = gamma_act(m, k, 1);
        QuiverModuleT<Cyc> back = gauge_act(g, twisted);
        QuiverModuleT<Cyc> orig = to_cyc_module(m, f);
        if (!(back == orig)) throw DataError("gauge does not fix the twisted module");
    }

    auto verts = vertex_list(m.shape);
    // order and rationality checks: g^{kN} = 1 and g^k scalar per block
    for (const VertexId& v : verts) {
        const CycMat& blk = g.blocks.at(v);
        int d = blk.rows();
        if (d == 0) continue;
        CycMat pw = CycMat::identity(d);
        for (int i = 0; i < n; ++i) pw = pw * blk;
        if (!(pw == CycMat::identity(d)))
            throw non_diagonalizable("gauge block at V_" + std::to_string(v.l) + " has order not dividing " +
                                     std::to_string(n));
        CycMat pk = CycMat::identity(d);
        for (int i = 0; i < k; ++i) pk = pk * blk;
        bool scalar = true;
        for (int i = 0; i < d && scalar; ++i)
            for (int jj = 0; jj < d && scalar; ++jj)
                if (i != jj && pk.at(i, jj) != Cyc(0)) scalar = false;
        for (int i = 1; i < d && scalar; ++i)
            if (pk.at(i, i) != pk.at(0, 0)) scalar = false;
        if (!scalar)
            throw non_diagonalizable("gauge block at V_" + std::to_string(v.l) + " has non-scalar k-th power");
    }

    // rational eigenspaces per vertex and exponent
    std::map<VertexId, std::map<int, Mat>> eig;
    for (const VertexId& v : verts) {
        int d = m.dims.d.at(v);
        int found = 0;
        for (int j = 0; j < n; ++j) {
            Mat rows = rational_eigenspace(g.blocks.at(v), j, f);
            if (rows.rows() > 0) {
                eig[v][j] = rows;
                found += rows.rows();
            }
        }
        if (found != d)
            throw non_diagonalizable("no rational eigenbasis at V_" + std::to_string(v.l) + " (found " +
                                     std::to_string(found) + " of " + std::to_string(d) + ")");
    }

    // global character shift: all eigenvalue exponents must be of the form
    // shift + expected_exponent(l, r)
    int shift = -1;
    for (int s = 0; s < n && shift < 0; ++s) {
        bool ok = true;
        for (const VertexId& v : verts) {
            for (const auto& [j, rows] : eig[v]) {
                bool matched = false;
                for (int r = 0; r < k && !matched; ++r)
                    if (mod(s + expected_exponent(m.shape, v.l, r, k), n) == j) matched = true;
                if (!matched) { ok = false; break; }
            }
            if (!ok) break;
        }
        if (ok) shift = s;
    }
    if (shift < 0) throw block_leak("eigenvalues are incompatible with the graded shape");

    // assemble the basis change and graded dims
    QuiverShape gs{m.shape.kind == QuiverKind::Chainsaw ? QuiverKind::ChainsawFixed : QuiverKind::Rift, N, k};
    CyclicGrading grading;
    grading.k = k;
    DimVector gdims = zero_dims(gs);
    std::map<VertexId, Mat> basis_inv;
    for (const VertexId& v : verts) {
        int d = m.dims.d.at(v);
        Mat P(d, d);
        std::vector<int> sizes(k, 0);
        int col = 0;
        for (int r = 0; r < k; ++r) {
            int j = mod(shift + expected_exponent(m.shape, v.l, r, k), n);
            auto it = eig[v].find(j);
            int cnt = (it == eig[v].end()) ? 0 : it->second.rows();
            for (int t = 0; t < cnt; ++t, ++col)
                for (int i = 0; i < d; ++i) P.at(i, col) = it->second.at(t, i);
            sizes[r] = cnt;
            gdims.d[{v.l, r}] = cnt;
        }
        if (col != d) throw non_diagonalizable("eigenspace dimensions do not fill the vertex");
        auto Pinv = inverse(P);
        if (!Pinv) throw non_diagonalizable("eigenbasis is singular");
        grading.basis_change[v] = P;
        grading.block_sizes[v] = sizes;
        basis_inv[v] = *Pinv;
    }

    // transform arrows and slice the permitted blocks
    QuiverModule graded = zero_module<Rational>(gdims);
    auto row_offset = [&](const VertexId& v, int r) {
        int off = 0;
        for (int t = 0; t < r; ++t) off += grading.block_sizes.at(v)[t];
        return off;
    };
    for (const Arrow& a : arrow_list(m.shape)) {
        Mat M = m.arrow(a.id);
        if (!a.src_is_framing) M = M * grading.basis_change.at(a.src);
        if (!a.dst_is_framing) M = basis_inv.at(a.dst) * M;
        int chi = mod(gamma_character(m.shape, a.id), n);
        // permitted blocks: exp_dst(r') = exp_src(r) - chi; framing has exponent 0
        auto dst_sizes = a.dst_is_framing ? std::vector<int>{1} : grading.block_sizes.at(a.dst);
        auto src_sizes = a.src_is_framing ? std::vector<int>{1} : grading.block_sizes.at(a.src);
        for (int rs = 0; rs < static_cast<int>(src_sizes.size()); ++rs) {
            int es = a.src_is_framing ? 0 : mod(shift + expected_exponent(m.shape, a.src.l, rs, k), n);
            for (int rd = 0; rd < static_cast<int>(dst_sizes.size()); ++rd) {
                int ed = a.dst_is_framing ? 0 : mod(shift + expected_exponent(m.shape, a.dst.l, rd, k), n);
                bool allowed = mod(es - chi - ed, n) == 0;
                int ro = a.dst_is_framing ? 0 : row_offset(a.dst, rd);
                int co = a.src_is_framing ? 0 : row_offset(a.src, rs);
                Mat block(dst_sizes[rd], src_sizes[rs]);
                for (int i = 0; i < block.rows(); ++i)
                    for (int j = 0; j < block.cols(); ++j) block.at(i, j) = M.at(ro + i, co + j);
                if (!allowed) {
                    if (!block.is_zero())
                        throw block_leak("forbidden block of " + arrow_kind_name(a.id.kind) + "[" +
                                         std::to_string(a.id.l) + "] is nonzero");
                    continue;
                }
                // name the graded arrow this block lands in
                ArrowId gid;
                switch (a.id.kind) {
                    case ArrowKind::A: gid = aid(ArrowKind::A, a.id.l, rs); break;
                    case ArrowKind::B: gid = aid(ArrowKind::B, a.id.l, rs); break;
                    case ArrowKind::E: gid = aid(ArrowKind::E, 0, rs); break;
                    case ArrowKind::Delta: gid = aid(ArrowKind::Delta, 0, rs); break;
                    case ArrowKind::P: gid = aid(ArrowKind::P, a.id.l, 0); break;
                    case ArrowKind::Q: gid = aid(ArrowKind::Q, a.id.l, 0); break;
                }
                graded.arrows[gid] = block;
            }
        }
    }
    validate_module(graded);
    if (!relations_hold(graded)) throw block_leak("graded module violates its quiver relations");

    Eigendecomposition dec;
    dec.graded = graded;
    dec.grading = grading;
    return dec;
}

QuiverModule reassemble_graded(const Eigendecomposition& dec) {
    QuiverModule flat = forget_grading(dec.graded);
    GaugeElement change;
    for (const auto& [v, P] : dec.grading.basis_change) change.blocks[v] = P;
    return gauge_act(change, flat);
}

QuiverModule forget_grading(const QuiverModule& graded) {
    validate_module(graded);
    if (!graded.shape.graded()) throw DataError("forget_grading needs a graded module");
    const int N = graded.shape.N, k = graded.shape.k;
    QuiverShape us{graded.shape.kind == QuiverKind::ChainsawFixed ? QuiverKind::Chainsaw
                                                                  : QuiverKind::DentedChainsaw,
                   N, 1};
    DimVector dims = zero_dims(us);
    for (const VertexId& v : vertex_list(us)) {
        int total = 0;
        for (int r = 0; r < k; ++r) total += graded.dims.at(v.l, r);
        dims.d[v] = total;
    }
    QuiverModule out = zero_module<Rational>(dims);
    auto offset = [&](int l, int r) {
        int off = 0;
        for (int t = 0; t < r; ++t) off += graded.dims.at(l, t);
        return off;
    };
    for (const Arrow& ga : arrow_list(graded.shape)) {
        const Mat& blk = graded.arrow(ga.id);
        ArrowId uid;
        switch (ga.id.kind) {
            case ArrowKind::A: uid = aid(ArrowKind::A, ga.id.l); break;
            case ArrowKind::B: uid = aid(ArrowKind::B, ga.id.l); break;
            case ArrowKind::E: uid = aid(ArrowKind::E, 0); break;
            case ArrowKind::Delta: uid = aid(ArrowKind::Delta, 0); break;
            case ArrowKind::P: uid = aid(ArrowKind::P, ga.id.l); break;
            case ArrowKind::Q: uid = aid(ArrowKind::Q, ga.id.l); break;
        }
        Mat& M = out.arrows[uid];
        int ro = ga.dst_is_framing ? 0 : offset(ga.dst.l, ga.dst.r);
        int co = ga.src_is_framing ? 0 : offset(ga.src.l, ga.src.r);
        for (int i = 0; i < blk.rows(); ++i)
            for (int j = 0; j < blk.cols(); ++j) M.at(ro + i, co + j) = blk.at(i, j);
    }
    validate_module(out);
    return out;
}

QuiverModule embed_chainsaw_graded(const QuiverModule& m, int k) {
    validate_module(m);
    if (m.shape.kind != QuiverKind::Chainsaw) throw DataError("embed_chainsaw_graded needs a chainsaw module");
    const int N = m.shape.N;
    DimVector gdims = dim_tilde_of(m.dims, k);
    QuiverModule out = zero_module<Rational>(gdims);
    int dN = m.dims.at(N);
    for (int r = 0; r < k; ++r) {
        for (int l = 1; l <= N; ++l)
            out.arrows[aid(ArrowKind::A, l, r)] = (r == 0) ? m.arrow(aid(ArrowKind::A, l))
                                                           : m.arrow(aid(ArrowKind::A, N));
        for (int l = 1; l <= N - 1; ++l)
            out.arrows[aid(ArrowKind::B, l, r)] = (r == 0) ? m.arrow(aid(ArrowKind::B, l))
                                                           : Mat::identity(dN);
        out.arrows[aid(ArrowKind::B, 0, r)] = (r == k - 1) ? m.arrow(aid(ArrowKind::B, 0))
                                                           : Mat::identity(dN);
    }
    for (int l = 1; l <= N; ++l) out.arrows[aid(ArrowKind::P, l)] = m.arrow(aid(ArrowKind::P, l));
    for (int l = 0; l <= N - 1; ++l) out.arrows[aid(ArrowKind::Q, l)] = m.arrow(aid(ArrowKind::Q, l));
    validate_module(out);
    if (!relations_hold(out)) throw std::logic_error("graded embedding violates relations");
    return out;
}

DimVector dim_tilde_of(const DimVector& chainsaw_dims, int k) {
    validate_dims(chainsaw_dims);
    if (chainsaw_dims.shape.kind != QuiverKind::Chainsaw)
        throw DataError("dim_tilde_of needs chainsaw dims");
    const int N = chainsaw_dims.shape.N;
    QuiverShape gs{QuiverKind::ChainsawFixed, N, k};
    DimVector out = zero_dims(gs);
    for (int l = 1; l <= N; ++l)
        for (int r = 0; r < k; ++r) out.d[{l, r}] = (r == 0) ? chainsaw_dims.at(l) : chainsaw_dims.at(N);
    return out;
}

bool nonempty_chain_check(const DimVector& fixed_dims) {
    validate_dims(fixed_dims);
    if (fixed_dims.shape.kind != QuiverKind::ChainsawFixed)
        throw DataError("nonempty_chain_check needs graded chainsaw dims");
    const int N = fixed_dims.shape.N, k = fixed_dims.shape.k;
    // spiral chain d_N^0 >= d_1^1 >= ... >= d_N^{k-1}
    std::vector<int> chain;
    chain.push_back(fixed_dims.at(N, 0));
    for (int r = 1; r < k; ++r)
        for (int l = 1; l <= N; ++l) chain.push_back(fixed_dims.at(l, r));
    for (std::size_t i = 1; i < chain.size(); ++i)
        if (chain[i - 1] < chain[i]) return false;
    return true;
}

bool admissible_check(const DimVector& rift_dims) {
    validate_dims(rift_dims);
    if (rift_dims.shape.kind != QuiverKind::Rift) throw DataError("admissible_check needs rift dims");
    const int N = rift_dims.shape.N, k = rift_dims.shape.k;
    for (int r = 0; r < k; ++r)
        if (rift_dims.at(0, r) != rift_dims.at(N, r)) return false;
    for (int r = 1; r < k; ++r)
        for (int l = 2; l <= N; ++l)
            if (rift_dims.at(l, r) != rift_dims.at(1, r)) return false;
    return true;
}

DefectClass defect_class(const DimVector& fixed_dims) {
    validate_dims(fixed_dims);
    if (fixed_dims.shape.kind != QuiverKind::ChainsawFixed)
        throw DataError("defect_class needs graded chainsaw dims");
    const int N = fixed_dims.shape.N, k = fixed_dims.shape.k;
    auto verts = vertex_list(fixed_dims.shape);
    const int cols = static_cast<int>(verts.size());

    // lattice generated by the distinguished vectors of the unit chainsaw dims
    std::vector<std::vector<Integer>> basis;
    QuiverShape cs{QuiverKind::Chainsaw, N, 1};
    for (int j = 1; j <= N; ++j) {
        DimVector unit = zero_dims(cs);
        unit.d[{j, 0}] = 1;
        DimVector tilde = dim_tilde_of(unit, k);
        std::vector<Integer> row(cols);
        for (int c = 0; c < cols; ++c) row[c] = tilde.d.at(verts[c]);
        basis.push_back(std::move(row));
    }

    // Hermite-style echelon with positive pivots and reduced off-pivot entries
    std::vector<std::pair<int, int>> pivots; // (row, col)
    int r = 0;
    for (int c = 0; c < cols && r < static_cast<int>(basis.size()); ++c) {
        while (true) {
            int best = -1;
            for (int i = r; i < static_cast<int>(basis.size()); ++i)
                if (basis[i][c] != 0 && (best < 0 || abs(basis[i][c]) < abs(basis[best][c]))) best = i;
            if (best < 0) break;
            std::swap(basis[r], basis[best]);
            if (basis[r][c] < 0)
                for (auto& x : basis[r]) x = -x;
            bool done = true;
            for (int i = r + 1; i < static_cast<int>(basis.size()); ++i) {
                if (basis[i][c] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), basis[i][c].get_mpz_t(), basis[r][c].get_mpz_t());
                for (int t = 0; t < cols; ++t) basis[i][t] -= q * basis[r][t];
                if (basis[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (r < static_cast<int>(basis.size()) && basis[r][c] != 0) {
            for (int i = 0; i < r; ++i) {
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), basis[i][c].get_mpz_t(), basis[r][c].get_mpz_t());
                for (int t = 0; t < cols; ++t) basis[i][t] -= q * basis[r][t];
            }
            pivots.push_back({r, c});
            ++r;
        }
    }

    DefectClass out;
    out.N = N;
    out.k = k;
    out.residue.resize(cols);
    for (int c = 0; c < cols; ++c) out.residue[c] = fixed_dims.d.at(verts[c]);
    for (auto [pr, pc] : pivots) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), out.residue[pc].get_mpz_t(), basis[pr][pc].get_mpz_t());
        for (int t = 0; t < cols; ++t) out.residue[t] -= q * basis[pr][t];
    }
    return out;
}

} // namespace zastava
