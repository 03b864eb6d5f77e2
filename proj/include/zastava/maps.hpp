// Explicit maps between the quiver shapes: the rotation of the chainsaw,
// the graded-to-ungraded direct image, the dent-collapsing blowdown, its
// graded refinement, and the open-piece dictionary between rift modules
// with invertible rows and cyclic Nakajima data (with a partial inverse
// used as a module generator).
#pragma once

#include "zastava/errors.hpp"
#include "zastava/quiver.hpp"

#include <vector>

namespace zastava {

// Cyclic Nakajima quiver data of type A~_{k-1} with framing w = (N,0,...,0):
// spaces V_r (r in Z/k), arrows b[r]: V_r -> V_{r+1}, a[r]: V_r -> V_{r-1},
// framing maps p: W_0 -> V_0 and q: V_0 -> W_0 with dim W_0 = N.
struct NakajimaCyclicModule {
    int k = 1;
    int framing = 0;            // N = dim W_0
    std::vector<int> v;         // dim V_r, length k
    std::vector<Mat> b;         // b[r]: v[r+1] x v[r]
    std::vector<Mat> a;         // a[r]: v[r-1] x v[r]
    Mat p;                      // v[0] x framing
    Mat q;                      // framing x v[0]

    bool operator==(const NakajimaCyclicModule& o) const = default;
};

void validate_nakajima(const NakajimaCyclicModule& n);

// Moment-map residuals, one per vertex r:
//   mu_r = a[r+1] b[r] - b[r-1] a[r]  (+ p q at r = 0 when with_framing_term).
// The framing-term sign is pinned so that images of relation-satisfying
// rift modules under phi_open satisfy mu_r = 0 at every vertex.
std::vector<Mat> nakajima_moment_residuals(const NakajimaCyclicModule& n, bool with_framing_term = true);

// --- rotation -------------------------------------------------------------

// Chainsaw index shift: output dims are rho(d) with (rho d)_l = d_{l+1};
// applying it N times returns the literal input.
QuiverModule rotate(const QuiverModule& m);

// --- graded-to-ungraded direct image --------------------------------------

// ChainsawFixed -> Chainsaw. Keeps row 0 at l = 1..N-1 and row k-1 at l = N;
// the edge into the kept V_N and the framing arrow p_N pick up the full
// composition of edges spiralling through the other rows.
QuiverModule psi_direct_image(const QuiverModule& m);

// --- blowdown -------------------------------------------------------------

// DentedChainsaw -> Chainsaw: the junction pair collapses to
// A_0 := delta e, B_0 := B_0 e, q_0 := q_0 e.
QuiverModule blowdown_pi(const QuiverModule& m);

// Rift -> ChainsawFixed: the graded analog of blowdown_pi; erases the
// column l = 0.
QuiverModule psi_k(const QuiverModule& m);

// Rift -> Chainsaw: psi_direct_image composed with psi_k.
QuiverModule pi_k(const QuiverModule& m);

// --- open piece -----------------------------------------------------------

// Rift -> Nakajima data; defined where every edge B_l^r is invertible
// (throws NotOnOpenPiece otherwise).
NakajimaCyclicModule phi_open(const QuiverModule& m);

// Partial inverse of phi_open: all edges become identities, the dent pair
// carries b/a, framing maps are split across the columns, and the loops are
// filled in so every relation holds exactly. Requires the moment-map
// relations of the input; phi_open(phi_inverse_generator(n)) == n.
QuiverModule phi_inverse_generator(const NakajimaCyclicModule& n);

// --- shape conversions (k = 1 degenerations) ------------------------------

QuiverModule fixed_to_chainsaw(const QuiverModule& m); // requires k = 1
QuiverModule rift_to_dented(const QuiverModule& m);    // requires k = 1
QuiverModule dented_to_rift(const QuiverModule& m);

} // namespace zastava
