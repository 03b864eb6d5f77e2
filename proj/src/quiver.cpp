#include "zastava/quiver.hpp"

#include <stdexcept>

namespace zastava {

std::string kind_name(QuiverKind k) {
    switch (k) {
        case QuiverKind::Chainsaw: return "chainsaw";
        case QuiverKind::ChainsawFixed: return "chainsaw_fixed";
        case QuiverKind::DentedChainsaw: return "dented_chainsaw";
        case QuiverKind::Rift: return "rift";
    }
    throw std::logic_error("bad kind");
}

QuiverKind kind_from_name(const std::string& s) {
    if (s == "chainsaw") return QuiverKind::Chainsaw;
    if (s == "chainsaw_fixed") return QuiverKind::ChainsawFixed;
    if (s == "dented_chainsaw") return QuiverKind::DentedChainsaw;
    if (s == "rift") return QuiverKind::Rift;
    throw std::invalid_argument("unknown quiver kind '" + s + "'");
}

std::string arrow_kind_name(ArrowKind k) {
    switch (k) {
        case ArrowKind::A: return "A";
        case ArrowKind::B: return "B";
        case ArrowKind::P: return "p";
        case ArrowKind::Q: return "q";
        case ArrowKind::E: return "e";
        case ArrowKind::Delta: return "delta";
    }
    throw std::logic_error("bad arrow kind");
}

void validate_shape(const QuiverShape& s) {
    if (s.N < 1) throw std::invalid_argument("shape requires N >= 1");
    if (s.k < 1) throw std::invalid_argument("shape requires k >= 1");
    if (!s.graded() && s.k != 1)
        throw std::invalid_argument("k must be 1 for ungraded shapes");
}

std::vector<VertexId> vertex_list(const QuiverShape& s) {
    validate_shape(s);
    int l0 = s.dented() ? 0 : 1;
    int rows = s.graded() ? s.k : 1;
    std::vector<VertexId> out;
    for (int l = l0; l <= s.N; ++l)
        for (int r = 0; r < rows; ++r) out.push_back({l, r});
    return out;
}

int DimVector::at(int l, int r) const {
    auto it = d.find({l, r});
    if (it == d.end())
        throw std::invalid_argument("no vertex (" + std::to_string(l) + "," + std::to_string(r) + ") in shape");
    return it->second;
}

int& DimVector::at(int l, int r) {
    auto it = d.find({l, r});
    if (it == d.end())
        throw std::invalid_argument("no vertex (" + std::to_string(l) + "," + std::to_string(r) + ") in shape");
    return it->second;
}

int DimVector::total() const {
    int t = 0;
    for (const auto& [v, n] : d) t += n;
    return t;
}

DimVector zero_dims(const QuiverShape& s) {
    DimVector dv;
    dv.shape = s;
    for (const VertexId& v : vertex_list(s)) dv.d[v] = 0;
    return dv;
}

void validate_dims(const DimVector& dims) {
    validate_shape(dims.shape);
    auto verts = vertex_list(dims.shape);
    if (verts.size() != dims.d.size()) throw std::invalid_argument("dimension vector has wrong vertex set");
    for (const VertexId& v : verts) {
        auto it = dims.d.find(v);
        if (it == dims.d.end()) throw std::invalid_argument("dimension vector missing a vertex");
        if (it->second < 0) throw std::invalid_argument("negative dimension");
    }
    if (dims.shape.kind == QuiverKind::DentedChainsaw && dims.at(0) != dims.at(dims.shape.N))
        throw std::invalid_argument("dented chainsaw requires dim V_0 = dim V_N");
}

std::vector<Arrow> arrow_list(const QuiverShape& s) {
    validate_shape(s);
    const int N = s.N;
    const int rows = s.graded() ? s.k : 1;
    auto modk = [rows](int r) { return ((r % rows) + rows) % rows; };
    std::vector<Arrow> out;
    auto add = [&out](ArrowKind kind, int l, int r, bool sf, VertexId src, bool df, VertexId dst) {
        Arrow a;
        a.id = {kind, l, r};
        a.src_is_framing = sf;
        a.dst_is_framing = df;
        a.src = src;
        a.dst = dst;
        out.push_back(a);
    };

    if (!s.dented()) {
        for (int r = 0; r < rows; ++r) {
            for (int l = 1; l <= N; ++l) add(ArrowKind::A, l, r, false, {l, r}, false, {l, r});
            for (int l = 1; l <= N - 1; ++l) add(ArrowKind::B, l, r, false, {l, r}, false, {l + 1, r});
            add(ArrowKind::B, 0, r, false, {N, r}, false, {1, modk(r + 1)});
        }
        for (int l = 1; l <= N; ++l) add(ArrowKind::P, l, 0, true, {}, false, {l, 0});
        for (int l = 1; l <= N - 1; ++l) add(ArrowKind::Q, l, 0, false, {l, 0}, true, {});
        add(ArrowKind::Q, 0, 0, false, {N, modk(-1)}, true, {});
    } else {
        for (int r = 0; r < rows; ++r) {
            for (int l = 1; l <= N - 1; ++l) add(ArrowKind::A, l, r, false, {l, r}, false, {l, r});
            for (int l = 0; l <= N - 1; ++l) add(ArrowKind::B, l, r, false, {l, r}, false, {l + 1, r});
            add(ArrowKind::E, 0, r, false, {N, r}, false, {0, modk(r + 1)});
            add(ArrowKind::Delta, 0, r, false, {0, r}, false, {N, modk(r - 1)});
        }
        for (int l = 1; l <= N; ++l) add(ArrowKind::P, l, 0, true, {}, false, {l, 0});
        for (int l = 0; l <= N - 1; ++l) add(ArrowKind::Q, l, 0, false, {l, 0}, true, {});
    }
    return out;
}

std::pair<int, int> arrow_mat_shape(const DimVector& dims, const Arrow& a) {
    int r = a.dst_is_framing ? 1 : dims.d.at(a.dst);
    int c = a.src_is_framing ? 1 : dims.d.at(a.src);
    return {r, c};
}

namespace {

ArrowId aid(ArrowKind k, int l, int r = 0) { return {k, l, r}; }

} // namespace

std::vector<Relation> relation_list(const QuiverShape& s) {
    validate_shape(s);
    const int N = s.N;
    const int rows = s.graded() ? s.k : 1;
    auto modk = [rows](int r) { return ((r % rows) + rows) % rows; };
    std::vector<Relation> out;

    if (!s.dented()) {
        // A_{l+1} B_l - B_l A_l + p_{l+1} q_l = 0 on V_l^r -> V_{l+1}^r,
        // with the framing term on row 0 only; the wrap copy runs
        // V_N^r -> V_1^{r+1} with the framing term from row k-1.
        for (int l = 1; l <= N - 1; ++l)
            for (int r = 0; r < rows; ++r) {
                Relation rel;
                rel.src = {l, r};
                rel.dst = {l + 1, r};
                rel.label = "rel(" + std::to_string(l) + "," + std::to_string(r) + ")";
                rel.terms.push_back({+1, {aid(ArrowKind::A, l + 1, r), aid(ArrowKind::B, l, r)}});
                rel.terms.push_back({-1, {aid(ArrowKind::B, l, r), aid(ArrowKind::A, l, r)}});
                if (r == 0)
                    rel.terms.push_back({+1, {aid(ArrowKind::P, l + 1), aid(ArrowKind::Q, l)}});
                out.push_back(rel);
            }
        for (int r = 0; r < rows; ++r) {
            Relation rel;
            rel.src = {N, r};
            rel.dst = {1, modk(r + 1)};
            rel.label = "wrap(" + std::to_string(r) + ")";
            rel.terms.push_back({+1, {aid(ArrowKind::A, 1, modk(r + 1)), aid(ArrowKind::B, 0, r)}});
            rel.terms.push_back({-1, {aid(ArrowKind::B, 0, r), aid(ArrowKind::A, N, r)}});
            if (r == modk(-1))
                rel.terms.push_back({+1, {aid(ArrowKind::P, 1), aid(ArrowKind::Q, 0)}});
            out.push_back(rel);
        }
    } else if (N == 1) {
        // single junction relation per row:
        // delta e B_0 - B_0 e delta (+ p_1 q_0 on row 0) = 0 on V_0^r -> V_1^r
        for (int r = 0; r < rows; ++r) {
            Relation rel;
            rel.src = {0, r};
            rel.dst = {1, r};
            rel.label = "junction(" + std::to_string(r) + ")";
            rel.terms.push_back(
                {+1, {aid(ArrowKind::Delta, 0, modk(r + 1)), aid(ArrowKind::E, 0, r), aid(ArrowKind::B, 0, r)}});
            rel.terms.push_back(
                {-1, {aid(ArrowKind::B, 0, r), aid(ArrowKind::E, 0, modk(r - 1)), aid(ArrowKind::Delta, 0, r)}});
            if (r == 0) rel.terms.push_back({+1, {aid(ArrowKind::P, 1), aid(ArrowKind::Q, 0)}});
            out.push_back(rel);
        }
    } else {
        // target V_1^r: A_1 B_0 - B_0 e delta (+ p_1 q_0) = 0
        for (int r = 0; r < rows; ++r) {
            Relation rel;
            rel.src = {0, r};
            rel.dst = {1, r};
            rel.label = "junction_in(" + std::to_string(r) + ")";
            rel.terms.push_back({+1, {aid(ArrowKind::A, 1, r), aid(ArrowKind::B, 0, r)}});
            rel.terms.push_back(
                {-1, {aid(ArrowKind::B, 0, r), aid(ArrowKind::E, 0, modk(r - 1)), aid(ArrowKind::Delta, 0, r)}});
            if (r == 0) rel.terms.push_back({+1, {aid(ArrowKind::P, 1), aid(ArrowKind::Q, 0)}});
            out.push_back(rel);
        }
        // targets V_2..V_{N-1}: the plain chain relations
        for (int l = 1; l <= N - 2; ++l)
            for (int r = 0; r < rows; ++r) {
                Relation rel;
                rel.src = {l, r};
                rel.dst = {l + 1, r};
                rel.label = "rel(" + std::to_string(l) + "," + std::to_string(r) + ")";
                rel.terms.push_back({+1, {aid(ArrowKind::A, l + 1, r), aid(ArrowKind::B, l, r)}});
                rel.terms.push_back({-1, {aid(ArrowKind::B, l, r), aid(ArrowKind::A, l, r)}});
                if (r == 0)
                    rel.terms.push_back({+1, {aid(ArrowKind::P, l + 1), aid(ArrowKind::Q, l)}});
                out.push_back(rel);
            }
        // target V_N^r: delta e B_{N-1} - B_{N-1} A_{N-1} (+ p_N q_{N-1}) = 0
        for (int r = 0; r < rows; ++r) {
            Relation rel;
            rel.src = {N - 1, r};
            rel.dst = {N, r};
            rel.label = "junction_out(" + std::to_string(r) + ")";
            rel.terms.push_back(
                {+1, {aid(ArrowKind::Delta, 0, modk(r + 1)), aid(ArrowKind::E, 0, r), aid(ArrowKind::B, N - 1, r)}});
            rel.terms.push_back({-1, {aid(ArrowKind::B, N - 1, r), aid(ArrowKind::A, N - 1, r)}});
            if (r == 0) rel.terms.push_back({+1, {aid(ArrowKind::P, N), aid(ArrowKind::Q, N - 1)}});
            out.push_back(rel);
        }
    }
    return out;
}

} // namespace zastava
