// Seed-deterministic generators of relation-satisfying modules.
//
// Strategy per shape:
//  * Chainsaw, N >= 2: draw loops and framing maps, solve each relation for
//    its edge as a Sylvester system (the two loop spectra are disjoint for
//    generic draws, so the edge is determined); bounded retries otherwise.
//  * Chainsaw, N = 1: the single relation pairs the edge with the loop; the
//    generator uses the commuting sector (edge a polynomial in the loop,
//    q = 0), which is the component reachable with a semisimple loop.
//  * DentedChainsaw, N >= 2: as for the chainsaw with the dent products
//    e*delta / delta*e playing the missing loops.
//  * DentedChainsaw, N = 1: unit edge, invertible e, delta a polynomial in
//    e (commuting sector, q = 0).
//  * ChainsawFixed: loops are conjugates of one shared diagonal matrix with
//    distinct small integer eigenvalues, so the homogeneous Sylvester
//    systems have nonzero solution spaces; each edge (and the row-0 q) is a
//    random solution of its relation, solved jointly. The output must be
//    generation-stable; the draw is retried up to the budget and fails
//    honestly otherwise (on spiral-chain-violating dimensions no draw can
//    ever succeed).
//  * Rift: constant column dimensions go through random cyclic Nakajima
//    data and the open-piece inverse; otherwise a shared-spectrum draw with
//    rectangular-identity dent maps.
#pragma once

#include "zastava/maps.hpp"
#include "zastava/quiver.hpp"

namespace zastava {

inline constexpr int kGeneratorRetryBudget = 32;

QuiverModule random_module(const DimVector& dims, std::uint64_t seed);

// Raw framed data (a, b, p, q) with a*b - b*a + p*q = 0, V of dimension d
// and framing of dimension n.
struct AdhmData {
    Mat a, b, p, q;
};
AdhmData random_adhm(int d, int n, std::uint64_t seed);

// Random solution of the cyclic moment-map relations with the given
// dimensions: edges b and the framing source p are free draws, the a-family
// and q come from a random point of the solution space of the (linear)
// remaining system.
NakajimaCyclicModule random_nakajima(int k, int framing, const std::vector<int>& v, std::uint64_t seed);

} // namespace zastava
