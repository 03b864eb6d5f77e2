// Finite simply-laced root systems in "fundamental" coordinates: a coweight
// lambda is carried as the vector a with a_i = <lambda, alpha_i>, so
// dominance is componentwise nonnegativity and the simple reflections act
// through the Cartan matrix.
#pragma once

#include "zastava/rational.hpp"

#include <string>
#include <vector>

namespace zastava {

struct RootSystem {
    char family = 'A';
    int rank = 1;
    std::vector<std::vector<long>> cartan;
    std::vector<long> marks; // highest root in simple-root coordinates

    static RootSystem simply_laced(char family, int rank);
};

using WeightCoords = std::vector<long>;

bool is_dominant(const WeightCoords& a);
long highest_root_pairing(const RootSystem& rs, const WeightCoords& a);

WeightCoords reflect(const RootSystem& rs, int i, const WeightCoords& a);

// translate by k * sum_i m_i alpha_i^vee
WeightCoords translate(const RootSystem& rs, const WeightCoords& a, const std::vector<long>& m, long k);

// invariant form normalized by (alpha, alpha) = 2, i.e. a1^T C^{-1} a2
Rational form_inner(const RootSystem& rs, const WeightCoords& a1, const WeightCoords& a2);

// coroot-lattice coordinates C^{-1} a (rational in general)
std::vector<Rational> coroot_coords(const RootSystem& rs, const WeightCoords& a);

// <lambda, sum of positive roots> = 2 sum_i (C^{-1} a)_i
Rational pairing_two_rho(const RootSystem& rs, const WeightCoords& a);

} // namespace zastava
