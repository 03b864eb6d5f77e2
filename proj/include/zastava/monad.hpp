// Monad matrices attached to framed data and chainsaw modules, as symbolic
// block matrices, plus the complex check D*C = 0.
//
// Three builders:
//  * build_adhm_monad: the classical pair over symbols z, t, x, y; the
//    expansion D*C equals t*x*(AB - BA + pq) identically.
//  * build_stack_monad: the orbifold-line refinement over z, t, x and the
//    canonical inclusion symbols xi_1..xi_N.
//  * build_weighted_monad: the weighted-plane version over z0, z1, z2.
// For the latter two, D*C vanishes exactly when the module satisfies the
// chainsaw relations, and the residual is supported block-by-block on the
// corresponding relation.
#pragma once

#include "zastava/quiver.hpp"
#include "zastava/sympoly.hpp"

#include <memory>

namespace zastava {

struct MonadPair {
    std::shared_ptr<SymbolTable> syms;
    PolyMat c, d;
};

MonadPair build_adhm_monad(const Mat& a, const Mat& b, const Mat& p, const Mat& q);
MonadPair build_stack_monad(const QuiverModule& m);
MonadPair build_weighted_monad(const QuiverModule& m);

// D*C expanded and collected; the zero matrix certifies the complex
// property. Throws on grading violations.
PolyMat verify_complex(const MonadPair& pair);

// the polynomial t*x*(a*b - b*a + p*q) in the adhm symbol table, for the
// identity D*C = tx(AB - BA + pq)
MatPoly adhm_commutator_poly(const MonadPair& pair, const Mat& a, const Mat& b, const Mat& p, const Mat& q);

} // namespace zastava
