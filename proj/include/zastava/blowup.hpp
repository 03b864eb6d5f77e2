// Symbolic data attached to a dented chainsaw module on the blown-up
// geometry: the two-term complex maps gamma and gamma', the framing map
// beta, and the two extension-class families kappa1, kappa2 whose entries
// live in graded dual spaces
//     Ext(V(a), X(b)) = Sections(m)^*  (x) Hom,   m = a - b - N - 1,
// where Sections(m) has the monomial basis {y1^a y2^b : a*N + b = m}.
//
// Verified identities (exact, no tolerance):
//   (1) kappa1 ∘ gamma = 0 and (2) kappa2 ∘ gamma = 0, which hold for any
//       module by the structure of the coefficient tables, and
//   (3) beta ∘ kappa1 = gamma' ∘ kappa2 modulo the image of h -> gamma'∘h,
//       which encodes the quiver relations. The canonical beta below makes
//       the identity exact; the membership reduction is still performed.
//
// Sign conventions: each two-term column of gamma / gamma' carries the
// relative sign (+section, -induced map), and the loop-type entries of
// kappa2 carry a minus sign; the junction block of kappa2 carries an extra
// (y1)^* (x) e*delta component. All are pinned by identities (1)-(3).
#pragma once

#include "zastava/quiver.hpp"
#include "zastava/sympoly.hpp"

#include <memory>

namespace zastava {

// element of Sections(m)^* (x) Hom: coefficient matrix per monomial (a, b)
struct DualGradedElement {
    int m = 0; // dual degree; basis monomials satisfy a*N + b = m
    std::map<std::pair<int, int>, Mat> comps;

    bool is_zero() const {
        for (const auto& [k, c] : comps)
            if (!c.is_zero()) return false;
        return true;
    }
};

// family of dual-graded blocks indexed by (target summand, source summand)
struct KappaBlocks {
    std::vector<std::string> target_names;
    std::vector<std::string> source_names;
    std::map<std::pair<int, int>, DualGradedElement> blocks;
};

struct BlowupData {
    QuiverModule module;
    std::shared_ptr<SymbolTable> syms; // y1 (degree N), y2 (degree 1)
    PolyMat gamma, gamma_prime, beta;
    KappaBlocks kappa1, kappa2;
};

BlowupData build_blowup_data(const QuiverModule& dented);

struct BlowupResiduals {
    KappaBlocks kappa1_gamma;    // composite (1); zero when the identity holds
    KappaBlocks kappa2_gamma;    // composite (2)
    KappaBlocks middle;          // beta∘kappa1 - gamma'∘kappa2, reduced mod im(gamma'∘h)
    bool kappa1_gamma_zero = false;
    bool kappa2_gamma_zero = false;
    bool middle_in_image = false;

    bool all_hold() const { return kappa1_gamma_zero && kappa2_gamma_zero && middle_in_image; }
};

BlowupResiduals verify_blowup_identities(const BlowupData& data);

std::string kappa_dump(const KappaBlocks& k, int N);

} // namespace zastava
