// The four quiver shapes and their modules.
//
//   Chainsaw(N):        cyclic, vertices V_1..V_N (V_0 is V_N), loops A_l,
//                       edges B_l: V_l -> V_{l+1} (B_0: V_N -> V_1),
//                       framing legs p_l: W_{l-1} -> V_l, q_l: V_l -> W_l.
//   ChainsawFixed(N,k):  Z/k-graded refinement; B_0 shifts the grading row,
//                       framing attaches to row 0 except q_0: V_N^{k-1} -> W_0.
//   DentedChainsaw(N):   vertices V_0..V_N with the loop at the junction
//                       replaced by e: V_N -> V_0, delta: V_0 -> V_N.
//   Rift(N,k):           Z/k-graded dent; e and delta shift the row:
//                       e: V_N^r -> V_0^{r+1}, delta: V_0^r -> V_N^{r-1}.
//
// All framing lines W_l are one-dimensional and identified with a single
// line W_inf, so p/q arrows carry the l-tag. Relation residuals come back
// in a canonical order: by target vertex (l, then row r), wrap relations
// last; a module satisfies the relations iff every residual is zero.
#pragma once

#include "zastava/matrix.hpp"

#include <compare>
#include <map>
#include <type_traits>
#include <string>
#include <vector>

namespace zastava {

enum class QuiverKind { Chainsaw, ChainsawFixed, DentedChainsaw, Rift };

std::string kind_name(QuiverKind k);
QuiverKind kind_from_name(const std::string& s);

struct QuiverShape {
    QuiverKind kind = QuiverKind::Chainsaw;
    int N = 1;
    int k = 1; // 1 for Chainsaw / DentedChainsaw

    bool graded() const { return kind == QuiverKind::ChainsawFixed || kind == QuiverKind::Rift; }
    bool dented() const { return kind == QuiverKind::DentedChainsaw || kind == QuiverKind::Rift; }
    auto operator<=>(const QuiverShape&) const = default;
};

void validate_shape(const QuiverShape& s);

struct VertexId {
    int l = 0;
    int r = 0;
    auto operator<=>(const VertexId&) const = default;
};

// internal vertices of a shape, in (l, r) lexicographic order
std::vector<VertexId> vertex_list(const QuiverShape& s);

struct DimVector {
    QuiverShape shape;
    std::map<VertexId, int> d;

    int at(int l, int r = 0) const;
    int& at(int l, int r = 0);
    int total() const;
    bool operator==(const DimVector& o) const = default;
};

DimVector zero_dims(const QuiverShape& s);
void validate_dims(const DimVector& dims);

enum class ArrowKind { A, B, P, Q, E, Delta };

struct ArrowId {
    ArrowKind kind = ArrowKind::A;
    int l = 0;
    int r = 0;
    auto operator<=>(const ArrowId&) const = default;
};

std::string arrow_kind_name(ArrowKind k);

struct Arrow {
    ArrowId id;
    bool src_is_framing = false;
    bool dst_is_framing = false;
    VertexId src; // meaningful unless src_is_framing
    VertexId dst; // meaningful unless dst_is_framing
};

// every arrow of the shape, as drawn in the defining diagrams
std::vector<Arrow> arrow_list(const QuiverShape& s);

// one additive term of a relation: sign * composition of arrows
// (path applies back-to-front, i.e. path.back() acts first)
struct RelationTerm {
    int sign = 1;
    std::vector<ArrowId> path;
};

struct Relation {
    VertexId src, dst;
    std::vector<RelationTerm> terms;
    std::string label;
};

// canonical relation order for the shape
std::vector<Relation> relation_list(const QuiverShape& s);

template <class F>
struct QuiverModuleT {
    QuiverShape shape;
    DimVector dims;
    std::map<ArrowId, MatT<F>> arrows;

    const MatT<F>& arrow(const ArrowId& id) const {
        auto it = arrows.find(id);
        if (it == arrows.end())
            throw std::invalid_argument("missing arrow " + arrow_kind_name(id.kind) + "[" +
                                        std::to_string(id.l) + "," + std::to_string(id.r) + "]");
        return it->second;
    }
    MatT<F>& arrow(const ArrowId& id) { return arrows[id]; }

    bool operator==(const QuiverModuleT& o) const {
        return shape == o.shape && dims == o.dims && arrows == o.arrows;
    }
};

using QuiverModule = QuiverModuleT<Rational>;

// expected (rows, cols) of an arrow's matrix given the dims
std::pair<int, int> arrow_mat_shape(const DimVector& dims, const Arrow& a);

// zero module of the given dims, all arrow matrices present and zero
template <class F>
QuiverModuleT<F> zero_module(const DimVector& dims) {
    validate_dims(dims);
    QuiverModuleT<F> m;
    m.shape = dims.shape;
    m.dims = dims;
    for (const Arrow& a : arrow_list(dims.shape)) {
        auto [r, c] = arrow_mat_shape(dims, a);
        m.arrows[a.id] = MatT<F>(r, c);
    }
    return m;
}

// throws std::invalid_argument on any structural defect
template <class F>
void validate_module(const QuiverModuleT<F>& m) {
    validate_dims(m.dims);
    if (m.dims.shape != m.shape) throw std::invalid_argument("module dims carry a different shape");
    auto arrows = arrow_list(m.shape);
    if (arrows.size() != m.arrows.size()) throw std::invalid_argument("module has wrong arrow count");
    for (const Arrow& a : arrows) {
        auto it = m.arrows.find(a.id);
        if (it == m.arrows.end()) throw std::invalid_argument("module missing arrow");
        auto [r, c] = arrow_mat_shape(m.dims, a);
        if (it->second.rows() != r || it->second.cols() != c)
            throw std::invalid_argument("arrow " + arrow_kind_name(a.id.kind) + "[" + std::to_string(a.id.l) +
                                        "," + std::to_string(a.id.r) + "] has shape " + it->second.shape_str() +
                                        ", expected " + std::to_string(r) + "x" + std::to_string(c));
    }
}

template <class F>
MatT<F> evaluate_relation(const QuiverModuleT<F>& m, const Relation& rel) {
    MatT<F> acc(m.dims.d.at(rel.dst), m.dims.d.at(rel.src));
    for (const RelationTerm& t : rel.terms) {
        MatT<F> prod = m.arrow(t.path.back());
        for (int i = static_cast<int>(t.path.size()) - 2; i >= 0; --i) prod = m.arrow(t.path[i]) * prod;
        acc = (t.sign >= 0) ? acc + prod : acc - prod;
    }
    return acc;
}

// one residual matrix per relation, canonical order; all zero iff the
// module satisfies its quiver's relations
template <class F>
std::vector<MatT<F>> relation_residuals(const QuiverModuleT<F>& m) {
    validate_module(m);
    std::vector<MatT<F>> out;
    for (const Relation& rel : relation_list(m.shape)) out.push_back(evaluate_relation(m, rel));
    return out;
}

template <class F>
bool relations_hold(const QuiverModuleT<F>& m) {
    for (const auto& res : relation_residuals(m))
        if (!res.is_zero()) return false;
    return true;
}

template <class F>
struct GaugeT {
    std::map<VertexId, MatT<F>> blocks; // invertible square block per internal vertex
};

using GaugeElement = GaugeT<Rational>;

template <class F>
GaugeT<F> identity_gauge_t(const DimVector& dims) {
    GaugeT<F> g;
    for (const VertexId& v : vertex_list(dims.shape)) g.blocks[v] = MatT<F>::identity(dims.d.at(v));
    return g;
}

inline GaugeElement identity_gauge(const DimVector& dims) { return identity_gauge_t<Rational>(dims); }

template <class F>
GaugeT<F> inverse_gauge(const GaugeT<F>& g) {
    GaugeT<F> out;
    for (const auto& [v, b] : g.blocks) {
        auto inv = inverse(b);
        if (!inv) throw std::invalid_argument("gauge block is singular");
        out.blocks[v] = *inv;
    }
    return out;
}

// arrows transform target-block * M * source-block^{-1}; framing untouched
template <class F>
QuiverModuleT<F> gauge_act(const GaugeT<F>& g, const QuiverModuleT<F>& m) {
    validate_module(m);
    GaugeT<F> ginv = inverse_gauge(g);
    QuiverModuleT<F> out = m;
    for (const Arrow& a : arrow_list(m.shape)) {
        MatT<F> v = m.arrow(a.id);
        if (!a.src_is_framing) v = v * ginv.blocks.at(a.src);
        if (!a.dst_is_framing) v = g.blocks.at(a.dst) * v;
        out.arrows[a.id] = v;
    }
    return out;
}

template <class F>
GaugeT<F> random_gauge(const DimVector& dims, Rng& rng) {
    GaugeT<F> g;
    for (const VertexId& v : vertex_list(dims.shape)) {
        int n = dims.d.at(v);
        for (int tries = 0;; ++tries) {
            Mat cand = random_int_matrix(n, n, rng, 3);
            for (int i = 0; i < n; ++i) cand.at(i, i) += 1; // bias away from singular
            if (inverse(cand)) {
                if constexpr (std::is_same_v<F, Rational>) {
                    g.blocks[v] = cand;
                } else {
                    MatT<F> b(n, n);
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j) b.at(i, j) = F(cand.at(i, j));
                    g.blocks[v] = b;
                }
                break;
            }
            if (tries > 64) throw std::runtime_error("could not sample invertible gauge block");
        }
    }
    return g;
}

} // namespace zastava
