#include "zastava/stability.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace zastava {

using nlohmann::json;

Rational default_epsilon(const DimVector& dims) {
    long s = dims.total();
    return Rational(1, 1 + s * s);
}

StabilityParam make_zeta(const DimVector& dims, ZetaFlavor flavor, std::optional<Rational> epsilon) {
    validate_dims(dims);
    if (!dims.shape.dented()) throw DataError("make_zeta needs dented or rift dims");
    StabilityParam p;
    p.shape = dims.shape;
    p.epsilon = 0;
    if (flavor == ZetaFlavor::Minus) p.epsilon = epsilon ? *epsilon : default_epsilon(dims);
    for (const VertexId& v : vertex_list(dims.shape)) {
        Rational z = 0;
        if (v.l == 0) z = 1;
        if (v.l == dims.shape.N) z = -1;
        p.zeta[v] = z - p.epsilon;
    }
    p.zeta_inf = 0;
    for (const VertexId& v : vertex_list(dims.shape)) p.zeta_inf -= p.zeta.at(v) * dims.d.at(v);
    return p;
}

Rational slope(const EnhancedDims& sub, const StabilityParam& param) {
    Rational num = 0;
    long den = sub.framing;
    for (const auto& [v, d] : sub.d) {
        num += param.zeta.at(v) * d;
        den += d;
    }
    num += param.zeta_inf * sub.framing;
    if (den == 0) throw DataError("slope of the zero dimension vector");
    return num / Rational(den);
}

namespace {

// a candidate submodule: canonical row bases per vertex plus framing flag
struct Sub {
    std::map<VertexId, Mat> space;
    bool framing = false;
    std::vector<std::pair<VertexId, std::vector<Rational>>> seeds;

    EnhancedDims dims() const {
        EnhancedDims e;
        for (const auto& [v, s] : space) e.d[v] = s.rows();
        e.framing = framing ? 1 : 0;
        return e;
    }
    std::string key() const {
        std::ostringstream os;
        os << framing;
        for (const auto& [v, s] : space) {
            os << "|" << v.l << "," << v.r << ":";
            for (int i = 0; i < s.rows(); ++i)
                for (int j = 0; j < s.cols(); ++j) os << rational_to_string(s.at(i, j)) << ";";
        }
        return os.str();
    }
};

struct ClosureContext {
    const QuiverModule* m;
    std::vector<Arrow> arrows;
};

// grow per-vertex spaces until closed under every internal arrow
void close_under_arrows(const ClosureContext& cx, std::map<VertexId, Mat>& space) {
    bool grew = true;
    while (grew) {
        grew = false;
        for (const Arrow& a : cx.arrows) {
            if (a.src_is_framing || a.dst_is_framing) continue;
            Mat img = space.at(a.src) * cx.m->arrow(a.id).transpose();
            Mat merged = sum_spaces(space.at(a.dst), img);
            if (merged.rows() > space.at(a.dst).rows()) {
                space[a.dst] = merged;
                grew = true;
            }
        }
    }
}

std::map<VertexId, Mat> empty_spaces(const QuiverModule& m) {
    std::map<VertexId, Mat> s;
    for (const VertexId& v : vertex_list(m.shape)) s[v] = Mat(0, m.dims.d.at(v));
    return s;
}

// framing-0 submodules must be annihilated by every q-type arrow
bool killed_by_framing_maps(const ClosureContext& cx, const std::map<VertexId, Mat>& space) {
    for (const Arrow& a : cx.arrows) {
        if (!a.dst_is_framing) continue;
        Mat img = space.at(a.src) * cx.m->arrow(a.id).transpose();
        if (!img.is_zero()) return false;
    }
    return true;
}

std::optional<Sub> build_candidate(const ClosureContext& cx,
                                   const std::vector<std::pair<VertexId, std::vector<Rational>>>& seeds,
                                   bool with_framing) {
    std::map<VertexId, Mat> space = empty_spaces(*cx.m);
    for (const auto& [v, vec] : seeds) {
        Mat row(1, cx.m->dims.d.at(v));
        for (int j = 0; j < row.cols(); ++j) row.at(0, j) = vec[j];
        space[v] = sum_spaces(space[v], row);
    }
    if (with_framing)
        for (const Arrow& a : cx.arrows)
            if (a.src_is_framing) space[a.dst] = sum_spaces(space[a.dst], cx.m->arrow(a.id).transpose());
    close_under_arrows(cx, space);
    if (!with_framing && !killed_by_framing_maps(cx, space)) return std::nullopt;
    Sub s;
    s.space = std::move(space);
    s.framing = with_framing;
    s.seeds = seeds;
    return s;
}

bool is_zero_sub(const Sub& s) {
    if (s.framing) return false;
    for (const auto& [v, sp] : s.space)
        if (sp.rows() > 0) return false;
    return true;
}

bool is_full_sub(const Sub& s, const QuiverModule& m) {
    if (!s.framing) return false;
    for (const auto& [v, sp] : s.space)
        if (sp.rows() != m.dims.d.at(v)) return false;
    return true;
}

} // namespace

StabilityVerdict check_slope_stability(const QuiverModule& m, const StabilityParam& param, SlopeMode mode,
                                       const SearchBudget& budget) {
    validate_module(m);
    if (!m.shape.dented()) throw DataError("slope stability is defined for dented / rift modules");
    if (param.shape != m.shape) throw DataError("stability parameter built for a different shape");

    StabilityVerdict verdict;
    if (m.dims.total() == 0) {
        verdict.kind = VerdictKind::Stable; // vacuously: no nonzero proper submodule besides W_inf line
        // even the framing-only submodule requires p = 0; with all dims zero it
        // is the whole module, hence not proper
        verdict.search_exhaustive = true;
        return verdict;
    }

    ClosureContext cx{&m, arrow_list(m.shape)};
    Rng rng(budget.seed);
    int rounds = budget.word_rounds >= 0 ? budget.word_rounds : 2 * m.dims.total();

    EnhancedDims full;
    for (const VertexId& v : vertex_list(m.shape)) full.d[v] = m.dims.d.at(v);
    full.framing = 1;
    Rational theta_full = slope(full, param);

    // ---- seed collection ----
    std::vector<std::pair<VertexId, std::vector<Rational>>> seeds;
    auto add_seed_rows = [&](const VertexId& v, const Mat& rows) {
        for (int i = 0; i < rows.rows(); ++i) {
            std::vector<Rational> vec(rows.cols());
            bool nonzero = false;
            for (int j = 0; j < rows.cols(); ++j) {
                vec[j] = rows.at(i, j);
                if (vec[j] != 0) nonzero = true;
            }
            if (nonzero) seeds.push_back({v, vec});
        }
    };
    for (const VertexId& v : vertex_list(m.shape)) {
        int d = m.dims.d.at(v);
        add_seed_rows(v, Mat::identity(d));
        Mat rnd(budget.random_vectors, d);
        for (int i = 0; i < rnd.rows(); ++i)
            for (int j = 0; j < d; ++j) rnd.at(i, j) = rng.small_int();
        add_seed_rows(v, row_space_basis(rnd));
    }
    // images and kernels of arrow words, grown breadth-first with dedup
    {
        std::map<VertexId, std::set<std::string>> seen;
        std::vector<std::pair<VertexId, Mat>> frontier;
        auto push_space = [&](const VertexId& v, const Mat& rows) {
            Mat canon = row_space_basis(rows);
            if (canon.rows() == 0) return;
            std::ostringstream os;
            for (int i = 0; i < canon.rows(); ++i)
                for (int j = 0; j < canon.cols(); ++j) os << rational_to_string(canon.at(i, j)) << ",";
            if (seen[v].insert(os.str()).second) {
                frontier.push_back({v, canon});
                add_seed_rows(v, canon);
            }
        };
        for (const Arrow& a : cx.arrows) {
            if (a.src_is_framing || a.dst_is_framing) continue;
            const Mat& M = m.arrow(a.id);
            push_space(a.dst, M.transpose()); // image
            auto ker = solve_linear(M, Mat(M.rows(), 1));
            Mat kerrows(static_cast<int>(ker->kernel.size()), M.cols());
            for (std::size_t i = 0; i < ker->kernel.size(); ++i)
                for (int j = 0; j < M.cols(); ++j) kerrows.at(static_cast<int>(i), j) = ker->kernel[i].at(j, 0);
            push_space(a.src, kerrows); // kernel
        }
        for (int round = 0; round < rounds && !frontier.empty(); ++round) {
            std::vector<std::pair<VertexId, Mat>> next;
            for (const auto& [v, rows] : frontier) {
                for (const Arrow& a : cx.arrows) {
                    if (a.src_is_framing || a.dst_is_framing) continue;
                    if (a.src == v) {
                        Mat img = rows * m.arrow(a.id).transpose();
                        Mat canon = row_space_basis(img);
                        if (canon.rows() > 0) {
                            std::ostringstream os;
                            for (int i = 0; i < canon.rows(); ++i)
                                for (int j = 0; j < canon.cols(); ++j)
                                    os << rational_to_string(canon.at(i, j)) << ",";
                            if (seen[a.dst].insert(os.str()).second) {
                                next.push_back({a.dst, canon});
                                add_seed_rows(a.dst, canon);
                            }
                        }
                    }
                }
            }
            frontier = std::move(next);
            if (static_cast<long>(seeds.size()) > budget.max_submodules) break;
        }
    }

    // ---- closures of all seeds, with and without the framing line ----
    std::map<std::string, Sub> found;
    std::optional<SubmoduleWitness> violation;
    auto violates = [&](const Sub& sub) {
        if (is_zero_sub(sub) || is_full_sub(sub, m)) return false;
        Rational th = slope(sub.dims(), param);
        return (mode == SlopeMode::Semistable) ? (th > theta_full) : (th >= theta_full);
    };
    auto consider = [&](const std::optional<Sub>& cand) {
        if (!cand || violation) return false;
        bool fresh = found.emplace(cand->key(), *cand).second;
        if (fresh && violates(*cand)) {
            SubmoduleWitness w;
            w.dims = cand->dims();
            w.seeds = cand->seeds;
            violation = w;
        }
        return fresh;
    };
    consider(build_candidate(cx, {}, true)); // closure of the framing line alone
    for (const auto& seed : seeds) {
        if (violation || static_cast<long>(found.size()) > budget.max_submodules) break;
        consider(build_candidate(cx, {seed}, false));
        consider(build_candidate(cx, {seed}, true));
    }

    // ---- close the family under sums ----
    bool capped = static_cast<long>(found.size()) > budget.max_submodules;
    bool grew = true;
    while (grew && !capped && !violation) {
        grew = false;
        std::vector<Sub> items;
        for (const auto& [k, s] : found) items.push_back(s);
        for (std::size_t i = 0; i < items.size() && !capped && !violation; ++i)
            for (std::size_t j = i + 1; j < items.size() && !capped && !violation; ++j) {
                Sub merged;
                merged.framing = items[i].framing || items[j].framing;
                for (const auto& [v, sp] : items[i].space) merged.space[v] = sum_spaces(sp, items[j].space.at(v));
                merged.seeds = items[i].seeds;
                for (const auto& s : items[j].seeds) merged.seeds.push_back(s);
                if (!merged.framing && !killed_by_framing_maps(cx, merged.space)) continue;
                if (consider(merged)) grew = true;
                if (static_cast<long>(found.size()) > budget.max_submodules) capped = true;
            }
    }
    verdict.submodules_seen = static_cast<long>(found.size());
    if (violation) {
        verdict.kind = VerdictKind::Unstable;
        verdict.witness = violation;
        return verdict;
    }

    // ---- completeness by cardinality ----
    std::set<std::string> attained_dims;
    for (const auto& [key, sub] : found) {
        EnhancedDims ed = sub.dims();
        std::ostringstream os;
        os << ed.framing;
        for (const auto& [v, d] : ed.d) os << "," << d;
        attained_dims.insert(os.str());
    }
    long conceivable = 2;
    for (const VertexId& v : vertex_list(m.shape)) conceivable *= (m.dims.d.at(v) + 1);
    if (!capped && static_cast<long>(attained_dims.size()) == conceivable) {
        verdict.kind = VerdictKind::Stable;
        verdict.search_exhaustive = true;
    } else {
        verdict.kind = VerdictKind::Unknown;
    }
    return verdict;
}

bool revalidate_witness(const QuiverModule& m, const StabilityParam& param, SlopeMode mode,
                        const SubmoduleWitness& w) {
    validate_module(m);
    ClosureContext cx{&m, arrow_list(m.shape)};
    auto cand = build_candidate(cx, w.seeds, w.dims.framing == 1);
    if (!cand) return false;
    EnhancedDims ed = cand->dims();
    if (!(ed.d == w.dims.d && ed.framing == w.dims.framing)) return false;
    if (is_zero_sub(*cand) || is_full_sub(*cand, m)) return false;
    EnhancedDims full;
    for (const VertexId& v : vertex_list(m.shape)) full.d[v] = m.dims.d.at(v);
    full.framing = 1;
    Rational theta_full = slope(full, param);
    Rational th = slope(ed, param);
    return (mode == SlopeMode::Semistable) ? (th > theta_full) : (th >= theta_full);
}

json verdict_to_json(const StabilityVerdict& v) {
    json j;
    switch (v.kind) {
        case VerdictKind::Stable: j["verdict"] = "stable"; break;
        case VerdictKind::Unstable: j["verdict"] = "unstable"; break;
        case VerdictKind::Unknown: j["verdict"] = "unknown"; break;
    }
    j["search_exhaustive"] = v.search_exhaustive;
    j["submodules_seen"] = v.submodules_seen;
    if (v.witness) {
        json w;
        json dims = json::object();
        for (const auto& [vx, d] : v.witness->dims.d)
            dims[std::to_string(vx.l) + "," + std::to_string(vx.r)] = d;
        w["dims"] = dims;
        w["framing"] = v.witness->dims.framing;
        json seeds = json::array();
        for (const auto& [vx, vec] : v.witness->seeds) {
            json s;
            s["vertex"] = {vx.l, vx.r};
            json entries = json::array();
            for (const auto& x : vec) entries.push_back(rational_to_string(x));
            s["vector"] = entries;
            seeds.push_back(s);
        }
        w["seeds"] = seeds;
        j["witness"] = w;
    }
    return j;
}

SubmoduleWitness witness_from_json(const json& j, const QuiverShape& shape) {
    SubmoduleWitness w;
    try {
        for (const VertexId& v : vertex_list(shape)) {
            std::string key = std::to_string(v.l) + "," + std::to_string(v.r);
            w.dims.d[v] = j.at("dims").at(key).get<int>();
        }
        w.dims.framing = j.at("framing").get<int>();
        for (const auto& s : j.at("seeds")) {
            VertexId v{s.at("vertex")[0].get<int>(), s.at("vertex")[1].get<int>()};
            std::vector<Rational> vec;
            for (const auto& x : s.at("vector")) vec.push_back(rational_from_string(x.get<std::string>()));
            w.seeds.push_back({v, vec});
        }
    } catch (const json::exception& e) {
        throw DataError(std::string("bad witness document: ") + e.what());
    }
    return w;
}

} // namespace zastava
