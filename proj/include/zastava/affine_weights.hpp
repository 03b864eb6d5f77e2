// Affine weight bookkeeping for the cyclic types: level-k dominance, the
// unique dominant representative under the level-k affine Weyl action,
// affine Cartan matrices, the framed dominance criterion on cyclic
// dimension vectors, exact truncated weight multiplicities of integrable
// modules by a Freudenthal-type recursion (imaginary roots of multiplicity
// rank-1), the level-rank transpose as partition conjugation, and the
// resulting multiplicity prediction tables.
#pragma once

#include "zastava/errors.hpp"
#include "zastava/rootsystem.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace zastava {

// weight of the affinization at a fixed level: (level, finite part in
// fundamental coordinates, energy). The energy may be fractional; callers
// check integrality where they need it.
struct AffineWeight {
    long level = 0;
    WeightCoords finite;
    Rational energy = 0;
    bool operator==(const AffineWeight& o) const = default;
};

bool is_level_dominant(const WeightCoords& finite, long k, const RootSystem& rs);

// unique element of the W x (k * coroot lattice) orbit lying in the level-k
// dominant alcove, by alternating dominance folding and affine reflection
WeightCoords dominant_representative(WeightCoords a, long k, const RootSystem& rs);

// cyclic affine Cartan matrix: 2 on the diagonal, -1 on cyclic neighbours
// (n = 2 doubles the off-diagonal bond; n = 1 returns the degenerate [0]
// so that w - Cv reduces to w)
std::vector<std::vector<long>> affine_cartan(int n);

// w - C v for w = (N, 0, ..., 0)
std::vector<long> w_minus_cv(const std::vector<long>& v, long framing, int k);

// the framed dominance inequalities v_{i-1} + v_{i+1} + [i = 0] N >= 2 v_i;
// cross-checked internally against componentwise dominance of w - Cv
bool nakajima_dominance(const std::vector<long>& v, long framing, int k);

// --- multiplicities ---------------------------------------------------------

struct MultValue {
    bool truncated = false;
    Integer value = 0;
};

// multiplicity of lambda - sum_i c_i alpha_i in the integrable module with
// highest weight lambda, for the cyclic affinization of rank n (n >= 2);
// c is indexed with the affine node first. Truncated when c[0] > depth_cap.
MultValue weight_multiplicity_coords(int n, const AffineWeight& lambda, const std::vector<long>& c,
                                     long depth_cap);

// coordinates of lambda - nu over the affine simple roots (affine node
// first); nullopt when the difference is not a nonnegative integer
// combination
std::optional<std::vector<long>> root_coords(int n, const AffineWeight& lambda, const AffineWeight& nu);

MultValue weight_multiplicity(int n, const AffineWeight& lambda, const AffineWeight& nu, long depth_cap);

// --- level-rank transpose and prediction tables ------------------------------

// (c_0..c_{k-1}) summing to N (level-N dominant of the cyclic rank-k type)
// -> components of the level-(sum) dominant of rank N, by partition
// conjugation in gap coordinates
std::vector<long> level_rank_transpose(const std::vector<long>& c);

enum class EnergyForm { Basic, Killing };

struct LambdaMuAlpha {
    AffineWeight lambda, mu;
    std::vector<long> alpha; // coordinates (alpha_1..alpha_N), affine node last
    bool alpha_integral = false;
};

// lambda = transpose(w - Cv) at level k with the energy
// (a + (mu,mu)/2 - (lambda,lambda)/2)/k, mu the level-k vacuum,
// alpha = lambda - mu in simple-root coordinates. Hard failure when the
// integral alpha violates the componentwise bound alpha <= (v_0,...,v_0).
LambdaMuAlpha lambda_mu_alpha(const std::vector<long>& v, long framing, int k, const Rational& a,
                              EnergyForm form = EnergyForm::Basic);

struct MultTable {
    long depth_cap = 0;
    std::vector<long> alpha;
    // beta (componentwise <= alpha, same coordinate order) -> multiplicity
    std::map<std::vector<long>, MultValue> entries;
};

// m_beta = multiplicity of lambda - alpha + beta in the lambda module
MultTable mult_predictions(int n, const AffineWeight& lambda, const std::vector<long>& alpha, long depth_cap);

// the composite goodness predicate: framed dominance plus nonvanishing of
// the vacuum-weight multiplicity (trivial on the k = 1 degeneration)
bool good_vector(const std::vector<long>& v, long framing, int k, long depth_cap = 8);

// --- orbit dimension utilities ----------------------------------------------

Rational orbit_dim(const RootSystem& rs, const WeightCoords& dominant);
Rational conv_dim(const RootSystem& rs, const WeightCoords& l1, const WeightCoords& l2,
                  const WeightCoords& l3);

} // namespace zastava
