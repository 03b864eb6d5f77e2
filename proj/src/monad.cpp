#include "zastava/monad.hpp"

#include "zastava/errors.hpp"

namespace zastava {

namespace {

ArrowId aid(ArrowKind k, int l, int r = 0) { return {k, l, r}; }

} // namespace

MonadPair build_adhm_monad(const Mat& a, const Mat& b, const Mat& p, const Mat& q) {
    const int d = a.rows(), n = p.cols();
    if (a.cols() != d || b.rows() != d || b.cols() != d || p.rows() != d || q.rows() != n || q.cols() != d)
        throw DataError("adhm data must be (a: dxd, b: dxd, p: dxn, q: nxd)");
    MonadPair out;
    out.syms = std::make_shared<SymbolTable>();
    int sz = out.syms->add("z", {1, 0});
    int st = out.syms->add("t", {1, 0});
    int sx = out.syms->add("x", {0, 1});
    int sy = out.syms->add("y", {0, 1});
    const int ns = out.syms->count();
    auto sym = [&](int s, const Mat& coeff) { return MatPoly::single(ns, s, coeff); };

    PolyMat c;
    c.syms = out.syms.get();
    c.src = {{"V(-1,-1)", {-1, -1}, d}};
    c.dst = {{"V(0,-1)", {0, -1}, d}, {"V(-1,0)", {-1, 0}, d}, {"W(0,0)", {0, 0}, n}};
    c.set_block(0, 0, sym(st, a) - sym(sz, Mat::identity(d)));
    c.set_block(1, 0, sym(sx, b) - sym(sy, Mat::identity(d)));
    {
        Monomial tx(ns, 0);
        tx[st] = 1;
        tx[sx] = 1;
        c.set_block(2, 0, MatPoly::monomial_term(ns, tx, q));
    }

    PolyMat dm;
    dm.syms = out.syms.get();
    dm.src = c.dst;
    dm.dst = {{"V(0,0)", {0, 0}, d}};
    dm.set_block(0, 0, -sym(sx, b) + sym(sy, Mat::identity(d)));
    dm.set_block(0, 1, sym(st, a) - sym(sz, Mat::identity(d)));
    dm.set_block(0, 2, MatPoly::constant(ns, p));

    out.c = c;
    out.d = dm;
    out.c.grading_audit();
    out.d.grading_audit();
    return out;
}

MatPoly adhm_commutator_poly(const MonadPair& pair, const Mat& a, const Mat& b, const Mat& p, const Mat& q) {
    const int ns = pair.syms->count();
    Monomial tx(ns, 0);
    tx[1] = 1; // t
    tx[2] = 1; // x
    return MatPoly::monomial_term(ns, tx, a * b - b * a + p * q);
}

MonadPair build_stack_monad(const QuiverModule& m) {
    validate_module(m);
    if (m.shape.kind != QuiverKind::Chainsaw) throw DataError("build_stack_monad needs a chainsaw module");
    const int N = m.shape.N;
    MonadPair out;
    out.syms = std::make_shared<SymbolTable>();
    int sz = out.syms->add("z", {1, 0});
    int st = out.syms->add("t", {1, 0});
    int sx = out.syms->add("x", {0, N});
    std::vector<int> sxi(N + 1, -1);
    for (int l = 1; l <= N; ++l) sxi[l] = out.syms->add("xi" + std::to_string(l), {0, 1});
    const int ns = out.syms->count();
    auto sym = [&](int s, const Mat& coeff) { return MatPoly::single(ns, s, coeff); };
    auto cnst = [&](const Mat& coeff) { return MatPoly::constant(ns, coeff); };
    auto dims = [&](int l) { return m.dims.at(((l - 1) % N + N) % N + 1); };

    // middle summands: M1_l = V_l R_l (l = 1..N), M2_l = V_{l+1} R_l (-1,0)
    // (l = 0..N-1), M3_l = W_l R_l (l = 0..N-1)
    PolyMat c;
    c.syms = out.syms.get();
    for (int l = 1; l <= N; ++l) c.src.push_back({"V" + std::to_string(l) + "R(-1)", {-1, -l}, dims(l)});
    PolyMat d;
    d.syms = out.syms.get();
    std::vector<PolyMat::Summand> mid;
    for (int l = 1; l <= N; ++l) mid.push_back({"M1_" + std::to_string(l), {0, -l}, dims(l)});
    for (int l = 0; l <= N - 1; ++l) mid.push_back({"M2_" + std::to_string(l), {-1, -l}, dims(l + 1)});
    for (int l = 0; l <= N - 1; ++l) mid.push_back({"M3_" + std::to_string(l), {0, -l}, 1});
    c.dst = mid;
    d.src = mid;
    for (int l = 0; l <= N - 1; ++l) d.dst.push_back({"T_" + std::to_string(l), {0, -l}, dims(l + 1)});
    auto m1 = [&](int l) { return l - 1; };
    auto m2 = [&](int l) { return N + l; };
    auto m3 = [&](int l) { return 2 * N + l; };

    for (int l = 1; l <= N; ++l) {
        int d_l = dims(l);
        c.set_block(m1(l), l - 1, sym(st, m.arrow(aid(ArrowKind::A, l))) - sym(sz, Mat::identity(d_l)));
        c.set_block(m2(l - 1), l - 1, -sym(sxi[l], Mat::identity(d_l)));
    }
    c.set_block(m2(0), N - 1, sym(sx, m.arrow(aid(ArrowKind::B, 0))));
    for (int l = 1; l <= N - 1; ++l) c.set_block(m2(l), l - 1, cnst(m.arrow(aid(ArrowKind::B, l))));
    {
        Monomial tx(ns, 0);
        tx[st] = 1;
        tx[sx] = 1;
        c.set_block(m3(0), N - 1, MatPoly::monomial_term(ns, tx, m.arrow(aid(ArrowKind::Q, 0))));
    }
    for (int l = 1; l <= N - 1; ++l) c.set_block(m3(l), l - 1, sym(st, m.arrow(aid(ArrowKind::Q, l))));

    for (int l = 1; l <= N; ++l) d.set_block(l - 1, m1(l), sym(sxi[l], Mat::identity(dims(l))));
    d.set_block(0, m1(N), -sym(sx, m.arrow(aid(ArrowKind::B, 0))));
    for (int l = 1; l <= N - 1; ++l) d.set_block(l, m1(l), -cnst(m.arrow(aid(ArrowKind::B, l))));
    for (int l = 0; l <= N - 1; ++l) {
        int dl1 = dims(l + 1);
        d.set_block(l, m2(l), sym(st, m.arrow(aid(ArrowKind::A, l + 1))) - sym(sz, Mat::identity(dl1)));
        d.set_block(l, m3(l), cnst(m.arrow(aid(ArrowKind::P, l + 1))));
    }

    out.c = c;
    out.d = d;
    out.c.grading_audit();
    out.d.grading_audit();
    return out;
}

MonadPair build_weighted_monad(const QuiverModule& m) {
    validate_module(m);
    if (m.shape.kind != QuiverKind::Chainsaw) throw DataError("build_weighted_monad needs a chainsaw module");
    const int N = m.shape.N;
    MonadPair out;
    out.syms = std::make_shared<SymbolTable>();
    int s0 = out.syms->add("z0", {N});
    int s1 = out.syms->add("z1", {N});
    int s2 = out.syms->add("z2", {1});
    const int ns = out.syms->count();
    auto sym = [&](int s, const Mat& coeff) { return MatPoly::single(ns, s, coeff); };
    auto cnst = [&](const Mat& coeff) { return MatPoly::constant(ns, coeff); };

    PolyMat c, d;
    c.syms = d.syms = out.syms.get();
    for (int l = 1; l <= N; ++l) c.src.push_back({"V" + std::to_string(l) + "(-l)", {-l}, m.dims.at(l)});
    std::vector<PolyMat::Summand> mid;
    for (int l = 1; l <= N; ++l) mid.push_back({"M1_" + std::to_string(l), {1 - l}, m.dims.at(l)});
    for (int l = 1; l <= N; ++l) mid.push_back({"M2_" + std::to_string(l), {N - l}, m.dims.at(l)});
    for (int l = 0; l <= N - 1; ++l) mid.push_back({"M3_" + std::to_string(l), {-l}, 1});
    c.dst = mid;
    d.src = mid;
    for (int l = 1; l <= N; ++l) d.dst.push_back({"T_" + std::to_string(l), {N + 1 - l}, m.dims.at(l)});
    auto m1 = [&](int l) { return l - 1; };
    auto m2 = [&](int l) { return N + l - 1; };
    auto m3 = [&](int l) { return 2 * N + l; };

    for (int l = 1; l <= N; ++l) {
        int dl = m.dims.at(l);
        c.set_block(m1(l), l - 1, -sym(s2, Mat::identity(dl)));
        c.set_block(m2(l), l - 1, sym(s1, Mat::identity(dl)) - sym(s0, m.arrow(aid(ArrowKind::A, l))));
    }
    for (int l = 1; l <= N - 1; ++l) c.set_block(m1(l + 1), l - 1, cnst(m.arrow(aid(ArrowKind::B, l))));
    c.set_block(m1(1), N - 1, sym(s0, m.arrow(aid(ArrowKind::B, 0))));
    c.set_block(m3(0), N - 1, sym(s0, m.arrow(aid(ArrowKind::Q, 0))));
    for (int l = 1; l <= N - 1; ++l) c.set_block(m3(l), l - 1, cnst(m.arrow(aid(ArrowKind::Q, l))));

    for (int l = 1; l <= N; ++l) {
        int dl = m.dims.at(l);
        d.set_block(l - 1, m1(l), sym(s1, Mat::identity(dl)) - sym(s0, m.arrow(aid(ArrowKind::A, l))));
        d.set_block(l - 1, m2(l), sym(s2, Mat::identity(dl)));
    }
    d.set_block(0, m2(N), -sym(s0, m.arrow(aid(ArrowKind::B, 0))));
    for (int l = 1; l <= N - 1; ++l) d.set_block(l, m2(l), -cnst(m.arrow(aid(ArrowKind::B, l))));
    // framing column: the sign is fixed by the complex property D*C = 0
    // against the relation A_{l+1}B_l - B_lA_l + p_{l+1}q_l = 0
    for (int l = 0; l <= N - 1; ++l) d.set_block(l, m3(l), -sym(s0, m.arrow(aid(ArrowKind::P, l + 1))));

    out.c = c;
    out.d = d;
    out.c.grading_audit();
    out.d.grading_audit();
    return out;
}

PolyMat verify_complex(const MonadPair& pair) {
    pair.c.grading_audit();
    pair.d.grading_audit();
    PolyMat prod = poly_mat_mul(pair.d, pair.c);
    prod.grading_audit();
    return prod;
}

} // namespace zastava
