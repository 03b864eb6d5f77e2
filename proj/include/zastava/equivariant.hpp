// Cyclic-group structure on chainsaw and dented-chainsaw modules.
//
// The order-kN scaling action multiplies each arrow by a power of the
// primitive kN-th root of unity w. The character table (exponents of w):
//
//     A_l : 0        B_l : 1         p_l : l        q_l : -l
//     e   : -2N      delta : 2N                     (dented shapes)
//
// The framing legs carry the l-dependent weights of the graded lines they
// are identified with; with these characters the fixed-point data of a
// module decomposes exactly along the graded quivers (ChainsawFixed, Rift),
// with the eigenvalue of the fixing gauge on V_l^r equal to
//     w^{-(l + rN)}   (chainsaw)      w^{rN - l}   (dented),
// up to one global character shift. All root-of-unity arithmetic stays
// inside this module; decompositions are re-expressed over the rationals.
#pragma once

#include "zastava/cyclotomic.hpp"
#include "zastava/errors.hpp"
#include "zastava/quiver.hpp"

#include <optional>

namespace zastava {

// exponent of the primitive kN-th root multiplying this arrow
int gamma_character(const QuiverShape& shape, const ArrowId& id);

// Apply the generator `power` times. Exact in Q(zeta_kN); only the
// ungraded shapes carry the action.
QuiverModuleT<Cyc> gamma_act(const QuiverModuleT<Cyc>& m, int k, long power);
QuiverModuleT<Cyc> gamma_act(const QuiverModule& m, int k, long power);

QuiverModuleT<Cyc> to_cyc_module(const QuiverModule& m, const CycField* f);
QuiverModule to_rational_module(const QuiverModuleT<Cyc>& m);

// A gauge g with gauge_act(g, gamma_act(m, k, 1)) == m, i.e. a witness that
// the module is a fixed point of the twisted action. Found by solving the
// linear intertwiner system and drawing a bounded number of random elements
// of its solution space until one is invertible; absent when no invertible
// intertwiner is found.
std::optional<GaugeT<Cyc>> find_fixing_gauge(const QuiverModule& m, int k, int invertibility_trials = 8);

// Grading data attached to an ungraded module: per internal vertex a
// rational basis change whose column groups are the eigenspaces, with the
// group sizes d_l^r.
struct CyclicGrading {
    int k = 1;
    std::map<VertexId, Mat> basis_change;            // columns grouped by r
    std::map<VertexId, std::vector<int>> block_sizes; // length k per vertex
};

struct Eigendecomposition {
    QuiverModule graded;   // ChainsawFixed (from Chainsaw) or Rift (from DentedChainsaw)
    CyclicGrading grading;
};

// Decompose a fixed module along the eigenspaces of its fixing gauge.
// Errors: NonDiagonalizable when g is not semisimple of the right order or
// has no rational eigenbasis, BlockLeak when a block forbidden by the
// graded quiver is nonzero.
Eigendecomposition eigendecompose(const QuiverModule& m, const GaugeT<Cyc>& g, int k);

// Rebuild the ungraded module from a decomposition; exact inverse.
QuiverModule reassemble_graded(const Eigendecomposition& dec);

// Direct-sum assembly of a graded module into the ungraded shape, with the
// identity basis change (row-block order). Inverse direction of
// eigendecompose for modules that are already graded.
QuiverModule forget_grading(const QuiverModule& graded);

// The distinguished embedding of a chainsaw module as a graded module:
// rows r != 0 all carry V_N, the inter-row edges are identities, and the
// output dimensions are dim_tilde_of(dims, k).
QuiverModule embed_chainsaw_graded(const QuiverModule& m, int k);

// --- dimension-vector combinatorics ---------------------------------------

// d_l^0 = d_l, d_l^r = d_N for r != 0
DimVector dim_tilde_of(const DimVector& chainsaw_dims, int k);

// d_N^0 >= d_1^1 >= d_2^1 >= ... >= d_N^{k-1}, the spiral chain
bool nonempty_chain_check(const DimVector& fixed_dims);

// d_0^r = d_N^r for all r, and for r != 0 the column l -> d_l^r constant
bool admissible_check(const DimVector& rift_dims);

// Residue of a graded dimension vector modulo the lattice spanned by the
// distinguished vectors dim_tilde_of(unit), canonicalized by Hermite
// reduction.
struct DefectClass {
    int N = 1, k = 1;
    std::vector<Integer> residue;
    bool operator==(const DefectClass& o) const = default;
    bool is_zero() const {
        for (const auto& x : residue)
            if (x != 0) return false;
        return true;
    }
};

DefectClass defect_class(const DimVector& fixed_dims);

} // namespace zastava
