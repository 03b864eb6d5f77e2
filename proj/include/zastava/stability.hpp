// Stability notions.
//
// Generation stability (chainsaw-type modules): no proper graded subspace
// closed under the loops and edges contains all framing images; decided
// exactly by an iterated span closure.
//
// Slope stability (dented / rift modules): King-style slopes against the
// wall parameter zeta_bullet (+1 at the l = 0 column, -1 at l = N) and its
// epsilon-perturbation zeta_minus, with the framing weight chosen so the
// whole module has slope zero. Deciding (semi)stability is a search over
// candidate destabilizing submodules; Unknown is a first-class outcome and
// is never silently coerced.
#pragma once

#include "zastava/errors.hpp"
#include "zastava/quiver.hpp"

#include <json.hpp>

#include <optional>

namespace zastava {

// --- generation stability --------------------------------------------------

template <class F>
bool is_gen_stable(const QuiverModuleT<F>& m) {
    validate_module(m);
    if (m.shape.kind != QuiverKind::Chainsaw && m.shape.kind != QuiverKind::ChainsawFixed)
        throw DataError("is_gen_stable is defined for chainsaw-type modules");
    std::map<VertexId, MatT<F>> span;
    for (const VertexId& v : vertex_list(m.shape)) span[v] = MatT<F>(0, m.dims.d.at(v));
    auto arrows = arrow_list(m.shape);
    for (const Arrow& a : arrows)
        if (a.src_is_framing) span[a.dst] = sum_spaces(span[a.dst], m.arrow(a.id).transpose());
    bool grew = true;
    while (grew) {
        grew = false;
        for (const Arrow& a : arrows) {
            if (a.src_is_framing || a.dst_is_framing) continue;
            MatT<F> img = span[a.src] * m.arrow(a.id).transpose();
            MatT<F> merged = sum_spaces(span[a.dst], img);
            if (merged.rows() > span[a.dst].rows()) {
                span[a.dst] = merged;
                grew = true;
            }
        }
    }
    for (const VertexId& v : vertex_list(m.shape))
        if (span[v].rows() != m.dims.d.at(v)) return false;
    return true;
}

// --- slope stability --------------------------------------------------------

enum class ZetaFlavor { Bullet, Minus };

struct StabilityParam {
    QuiverShape shape;
    std::map<VertexId, Rational> zeta;
    Rational zeta_inf;
    Rational epsilon; // 0 for the bullet flavor
};

// default epsilon: 1 / (1 + (total internal dimension)^2)
Rational default_epsilon(const DimVector& dims);

StabilityParam make_zeta(const DimVector& dims, ZetaFlavor flavor,
                         std::optional<Rational> epsilon = std::nullopt);

// enhanced dimension data of a submodule: internal dims plus the framing
// coordinate (0 or 1)
struct EnhancedDims {
    std::map<VertexId, int> d;
    int framing = 0;
};

Rational slope(const EnhancedDims& sub, const StabilityParam& param);

enum class SlopeMode { Stable, Semistable };
enum class VerdictKind { Stable, Unstable, Unknown };

struct SubmoduleWitness {
    EnhancedDims dims;
    // generating rows per vertex; the arrow closure of these seeds (plus the
    // framing images when framing = 1) reproduces the submodule
    std::vector<std::pair<VertexId, std::vector<Rational>>> seeds;
};

struct StabilityVerdict {
    VerdictKind kind = VerdictKind::Unknown;
    std::optional<SubmoduleWitness> witness;
    bool search_exhaustive = false; // every conceivable dim vector was realized
    long submodules_seen = 0;
};

struct SearchBudget {
    int word_rounds = -1;     // default: 2 * total dimension
    int random_vectors = 64;  // per vertex
    int max_submodules = 1024;
    std::uint64_t seed = 2024;
};

StabilityVerdict check_slope_stability(const QuiverModule& m, const StabilityParam& param, SlopeMode mode,
                                       const SearchBudget& budget = {});

// Recompute the closure from the witness seeds and confirm it is a valid
// submodule whose slope violates the chosen mode.
bool revalidate_witness(const QuiverModule& m, const StabilityParam& param, SlopeMode mode,
                        const SubmoduleWitness& w);

nlohmann::json verdict_to_json(const StabilityVerdict& v);
SubmoduleWitness witness_from_json(const nlohmann::json& j, const QuiverShape& shape);

} // namespace zastava
