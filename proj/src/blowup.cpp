#include "zastava/blowup.hpp"

#include "zastava/errors.hpp"

#include <sstream>

namespace zastava {

namespace {

ArrowId aid(ArrowKind k, int l, int r = 0) { return {k, l, r}; }

bool kappa_zero(const KappaBlocks& k) {
    for (const auto& [key, blk] : k.blocks)
        if (!blk.is_zero()) return false;
    return true;
}

void kappa_add(KappaBlocks& k, int ti, int si, int m, std::pair<int, int> mono, const Mat& coeff) {
    if (coeff.is_zero()) return;
    DualGradedElement& e = k.blocks[{ti, si}];
    e.m = m;
    auto it = e.comps.find(mono);
    if (it == e.comps.end())
        e.comps[mono] = coeff;
    else {
        it->second = it->second + coeff;
        if (it->second.is_zero()) e.comps.erase(it);
    }
}

// B_{to-1} ... B_from : V_from -> V_to (empty product = identity)
Mat edge_path(const QuiverModule& m, int from, int to) {
    Mat acc = Mat::identity(m.dims.at(from));
    for (int l = from; l <= to - 1; ++l) acc = m.arrow(aid(ArrowKind::B, l)) * acc;
    return acc;
}

} // namespace

BlowupData build_blowup_data(const QuiverModule& dented) {
    validate_module(dented);
    if (dented.shape.kind != QuiverKind::DentedChainsaw)
        throw DataError("build_blowup_data needs a dented chainsaw module");
    const int N = dented.shape.N;
    auto dim = [&](int l) { return dented.dims.at(l); };

    BlowupData out;
    out.module = dented;
    out.syms = std::make_shared<SymbolTable>();
    int sy1 = out.syms->add("y1", {N});
    int sy2 = out.syms->add("y2", {1});
    const int ns = out.syms->count();
    auto sym = [&](int s, const Mat& coeff) { return MatPoly::single(ns, s, coeff); };
    auto cnst = [&](const Mat& coeff) { return MatPoly::constant(ns, coeff); };

    const Mat& e = dented.arrow(aid(ArrowKind::E, 0));
    const Mat& delta = dented.arrow(aid(ArrowKind::Delta, 0));

    // gamma: V_0(-N) (+) sum_{l=0}^{N-1} V_l(-l-1)  ->  sum_{l=0}^{N} V_l(-l)
    PolyMat g;
    g.syms = out.syms.get();
    g.src.push_back({"V0(-N)", {-N}, dim(0)});
    for (int l = 0; l <= N - 1; ++l)
        g.src.push_back({"V" + std::to_string(l) + "(-" + std::to_string(l + 1) + ")", {-l - 1}, dim(l)});
    for (int l = 0; l <= N; ++l)
        g.dst.push_back({"V" + std::to_string(l) + "(-" + std::to_string(l) + ")", {-l}, dim(l)});
    g.set_block(0, 0, sym(sy1, Mat::identity(dim(0))));
    g.set_block(N, 0, -cnst(delta));
    for (int l = 0; l <= N - 1; ++l) {
        g.set_block(l, 1 + l, sym(sy2, Mat::identity(dim(l))));
        g.set_block(l + 1, 1 + l, -cnst(dented.arrow(aid(ArrowKind::B, l))));
    }

    // gamma': V_0(-N-1) (+) sum_{l=1}^{N-1} V_l(-l-1)  ->  sum_{l=1}^{N} V_l(-l)
    PolyMat gp;
    gp.syms = out.syms.get();
    gp.src.push_back({"V0(-N-1)", {-N - 1}, dim(0)});
    for (int l = 1; l <= N - 1; ++l)
        gp.src.push_back({"V" + std::to_string(l) + "(-" + std::to_string(l + 1) + ")", {-l - 1}, dim(l)});
    for (int l = 1; l <= N; ++l)
        gp.dst.push_back({"V" + std::to_string(l) + "(-" + std::to_string(l) + ")", {-l}, dim(l)});
    {
        Monomial y1b0(ns, 0);
        y1b0[sy1] = 1;
        gp.set_block(0, 0, MatPoly::monomial_term(ns, y1b0, dented.arrow(aid(ArrowKind::B, 0))));
        Monomial y2d(ns, 0);
        y2d[sy2] = 1;
        gp.set_block(N - 1, 0, -MatPoly::monomial_term(ns, y2d, delta));
    }
    for (int l = 1; l <= N - 1; ++l) {
        gp.set_block(l - 1, l, sym(sy2, Mat::identity(dim(l))));
        gp.set_block(l, l, -cnst(dented.arrow(aid(ArrowKind::B, l))));
    }

    // beta: sum_{l=0}^{N-1} W_l(-l-1) -> sum_{l=1}^{N} V_l(-l), the p-blocks
    PolyMat beta;
    beta.syms = out.syms.get();
    for (int l = 0; l <= N - 1; ++l)
        beta.src.push_back({"W" + std::to_string(l) + "(-" + std::to_string(l + 1) + ")", {-l - 1}, 1});
    beta.dst = gp.dst;
    for (int l = 0; l <= N - 1; ++l) beta.set_block(l, l, cnst(dented.arrow(aid(ArrowKind::P, l + 1))));

    // kappa1[(j, l)] = (y2^{j-l})^* q_j B_{j-1}...B_l in Ext(V_l(N-l), W_j(-j-1))
    KappaBlocks k1;
    for (int j = 0; j <= N - 1; ++j) k1.target_names.push_back("W" + std::to_string(j));
    for (int l = 0; l <= N; ++l) k1.source_names.push_back("V" + std::to_string(l) + "(N-l)");
    for (int j = 0; j <= N - 1; ++j)
        for (int l = 0; l <= j; ++l)
            kappa_add(k1, j, l, j - l, {0, j - l}, dented.arrow(aid(ArrowKind::Q, j)) * edge_path(dented, l, j));
    out.kappa1 = k1;

    // kappa2 targets: index 0 = V_0(-N-1), index j = V_j(-j-1) for 1 <= j <= N-1
    KappaBlocks k2;
    k2.target_names.push_back("V0(-N-1)");
    for (int j = 1; j <= N - 1; ++j) k2.target_names.push_back("V" + std::to_string(j) + "(-j-1)");
    k2.source_names = k1.source_names;
    for (int l = 0; l <= N; ++l)
        kappa_add(k2, 0, l, N - l, {0, N - l}, e * edge_path(dented, l, N));
    kappa_add(k2, 0, 0, N, {1, 0}, e * delta); // junction component, forced by kappa2∘gamma = 0
    for (int j = 1; j <= N - 1; ++j)
        for (int l = 0; l <= j; ++l)
            kappa_add(k2, j, l, j - l, {0, j - l},
                      -(dented.arrow(aid(ArrowKind::A, j)) * edge_path(dented, l, j)));
    out.kappa2 = k2;

    out.gamma = g;
    out.gamma_prime = gp;
    out.beta = beta;
    out.gamma.grading_audit();
    out.gamma_prime.grading_audit();
    out.beta.grading_audit();
    return out;
}

namespace {

// compose a kappa family with a symbolic block map on the right:
// (phi (x) M) ∘ (f (x) G) contracts the dual part by the monomial f and
// multiplies the matrices.
KappaBlocks compose_kappa_map(const KappaBlocks& k, const PolyMat& g, int N) {
    KappaBlocks out;
    out.target_names = k.target_names;
    for (const auto& s : g.src) out.source_names.push_back(s.name);
    for (const auto& [kk, blk] : k.blocks) {
        const auto& [ti, mid] = kk;
        for (const auto& [gk, gpoly] : g.blocks) {
            if (gk.first != mid) continue;
            int si = gk.second;
            for (const auto& [mono, G] : gpoly.terms) {
                int fa = mono[0], fb = mono[1]; // exponents of y1, y2
                for (const auto& [ab, M] : blk.comps) {
                    int a = ab.first - fa, b = ab.second - fb;
                    if (a < 0 || b < 0) continue;
                    kappa_add(out, ti, si, a * N + b, {a, b}, M * G);
                }
            }
        }
    }
    return out;
}

// compose on the left with a symbolic block map: (f (x) G) ∘ (phi (x) M)
KappaBlocks compose_map_kappa(const PolyMat& g, const KappaBlocks& k, int N) {
    KappaBlocks out;
    for (const auto& s : g.dst) out.target_names.push_back(s.name);
    out.source_names = k.source_names;
    for (const auto& [gk, gpoly] : g.blocks) {
        const auto& [ti, mid] = gk;
        for (const auto& [kk, blk] : k.blocks) {
            if (kk.first != mid) continue;
            int si = kk.second;
            for (const auto& [mono, G] : gpoly.terms) {
                int fa = mono[0], fb = mono[1];
                for (const auto& [ab, M] : blk.comps) {
                    int a = ab.first - fa, b = ab.second - fb;
                    if (a < 0 || b < 0) continue;
                    kappa_add(out, ti, si, a * N + b, {a, b}, G * M);
                }
            }
        }
    }
    return out;
}

KappaBlocks kappa_sub(const KappaBlocks& x, const KappaBlocks& y) {
    KappaBlocks out = x;
    for (const auto& [kk, blk] : y.blocks)
        for (const auto& [ab, M] : blk.comps) kappa_add(out, kk.first, kk.second, blk.m, ab, -M);
    return out;
}

} // namespace

BlowupResiduals verify_blowup_identities(const BlowupData& data) {
    const int N = data.module.shape.N;
    BlowupResiduals res;

    // gamma twisted so its target matches the kappa sources; twisting only
    // shifts the degree labels, which the contraction never reads
    res.kappa1_gamma = compose_kappa_map(data.kappa1, data.gamma, N);
    res.kappa2_gamma = compose_kappa_map(data.kappa2, data.gamma, N);
    res.kappa1_gamma_zero = kappa_zero(res.kappa1_gamma);
    res.kappa2_gamma_zero = kappa_zero(res.kappa2_gamma);

    KappaBlocks beta_k1 = compose_map_kappa(data.beta, data.kappa1, N);
    KappaBlocks gp_k2 = compose_map_kappa(data.gamma_prime, data.kappa2, N);
    KappaBlocks diff = kappa_sub(beta_k1, gp_k2);

    // membership: is diff of the form gamma' ∘ (h ∘ kappa1) for some
    // h: W_j(-j-1) -> V_m(-m-1) (a multiple of y2^{j-m}, j >= m >= 1)?
    // Build the parameter-to-residual linear map column by column.
    struct HEntry {
        int j, m, row; // h block W_j -> V_m, matrix entry (row, 0)
    };
    std::vector<HEntry> params;
    for (int mcol = 1; mcol <= N - 1; ++mcol)
        for (int j = mcol; j <= N - 1; ++j)
            for (int r = 0; r < data.module.dims.at(mcol); ++r) params.push_back({j, mcol, r});

    // fixed flattening of a KappaBlocks with the same (targets = gamma'.dst,
    // sources = kappa1.sources) shape as diff
    auto flatten = [&](const KappaBlocks& k) {
        std::vector<Rational> flat;
        for (int t = 0; t < static_cast<int>(data.gamma_prime.dst.size()); ++t)
            for (int s = 0; s < static_cast<int>(data.kappa1.source_names.size()); ++s) {
                // dual degree of this composite block
                int tgt_l = t + 1;          // targets V_1..V_N
                int src_twist = N - s;      // sources V_s(N - s)
                int m = src_twist - (-tgt_l) - N - 1; // a - b - N - 1
                if (m < 0) continue;
                int rows = data.module.dims.at(tgt_l);
                int cols = data.module.dims.at(s);
                auto it = k.blocks.find({t, s});
                for (int a = 0; a * N <= m; ++a) {
                    int b = m - a * N;
                    Mat zero(rows, cols);
                    const Mat* M = &zero;
                    if (it != k.blocks.end()) {
                        auto jt = it->second.comps.find({a, b});
                        if (jt != it->second.comps.end()) M = &jt->second;
                    }
                    for (int i = 0; i < rows; ++i)
                        for (int jj = 0; jj < cols; ++jj) flat.push_back(M->at(i, jj));
                }
            }
        return flat;
    };

    std::vector<Rational> target = flatten(diff);
    bool diff_zero = true;
    for (const auto& x : target)
        if (x != 0) diff_zero = false;

    if (diff_zero || params.empty()) {
        res.middle_in_image = diff_zero;
        res.middle = diff;
        return res;
    }

    Mat sys(static_cast<int>(target.size()), static_cast<int>(params.size()));
    for (std::size_t c = 0; c < params.size(); ++c) {
        // unit h with a single nonzero entry, multiplying y2^{j-m}
        PolyMat h;
        h.syms = data.syms.get();
        h.src = data.beta.src;        // W_j(-j-1)
        h.dst = data.gamma_prime.src; // V_0(-N-1), V_1(-2), ..., V_{N-1}(-N)
        Mat unit(data.module.dims.at(params[c].m), 1);
        unit.at(params[c].row, 0) = 1;
        Monomial mono(2, 0);
        mono[1] = params[c].j - params[c].m;
        h.set_block(params[c].m, params[c].j, MatPoly::monomial_term(2, mono, unit));
        KappaBlocks img = compose_map_kappa(data.gamma_prime, compose_map_kappa(h, data.kappa1, N), N);
        std::vector<Rational> col = flatten(img);
        for (std::size_t i = 0; i < col.size(); ++i) sys.at(static_cast<int>(i), static_cast<int>(c)) = col[i];
    }
    Mat rhs(static_cast<int>(target.size()), 1);
    for (std::size_t i = 0; i < target.size(); ++i) rhs.at(static_cast<int>(i), 0) = target[i];
    auto sol = solve_linear(sys, rhs);
    if (sol) {
        res.middle_in_image = true;
        // reduce the residual by the found preimage so the reported blocks are zero
        res.middle = diff;
        for (std::size_t c = 0; c < params.size(); ++c) {
            // rebuild the c-th image scaled by the solution coefficient and subtract
            if (sol->particular.at(static_cast<int>(c), 0) == 0) continue;
            PolyMat h;
            h.syms = data.syms.get();
            h.src = data.beta.src;
            h.dst = data.gamma_prime.src;
            Mat unit(data.module.dims.at(params[c].m), 1);
            unit.at(params[c].row, 0) = sol->particular.at(static_cast<int>(c), 0);
            Monomial mono(2, 0);
            mono[1] = params[c].j - params[c].m;
            h.set_block(params[c].m, params[c].j, MatPoly::monomial_term(2, mono, unit));
            KappaBlocks img = compose_map_kappa(data.gamma_prime, compose_map_kappa(h, data.kappa1, N), N);
            res.middle = kappa_sub(res.middle, img);
        }
    } else {
        res.middle_in_image = false;
        res.middle = diff;
    }
    return res;
}

std::string kappa_dump(const KappaBlocks& k, int) {
    std::ostringstream os;
    for (const auto& [kk, blk] : k.blocks) {
        os << k.target_names[kk.first] << " <- " << k.source_names[kk.second] << " (degree " << blk.m << "):\n";
        for (const auto& [ab, M] : blk.comps) {
            os << "  (y1^" << ab.first << " y2^" << ab.second << ")^* * [";
            for (int i = 0; i < M.rows(); ++i) {
                if (i) os << "; ";
                for (int j = 0; j < M.cols(); ++j) {
                    if (j) os << ",";
                    os << rational_to_string(M.at(i, j));
                }
            }
            os << "]\n";
        }
    }
    if (k.blocks.empty()) os << "(zero)\n";
    return os.str();
}

} // namespace zastava
