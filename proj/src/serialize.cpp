#include "zastava/serialize.hpp"

#include <fstream>
#include <sstream>

namespace zastava {

using nlohmann::json;

namespace {

std::string index_key(const QuiverShape& s, const ArrowId& id) {
    bool graded_key = s.graded() && (id.kind == ArrowKind::A || id.kind == ArrowKind::B ||
                                     id.kind == ArrowKind::E || id.kind == ArrowKind::Delta);
    if (id.kind == ArrowKind::E || id.kind == ArrowKind::Delta)
        return graded_key ? std::to_string(id.r) : std::string();
    if (graded_key) return std::to_string(id.l) + "," + std::to_string(id.r);
    return std::to_string(id.l);
}

std::string vertex_key(const QuiverShape& s, const VertexId& v) {
    if (s.graded()) return std::to_string(v.l) + "," + std::to_string(v.r);
    return std::to_string(v.l);
}

} // namespace

json mat_to_json(const Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(rational_to_string(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

Mat mat_from_json(const json& j, int expect_rows, int expect_cols) {
    if (!j.is_array()) throw DataError("matrix must be an array of arrays");
    if (static_cast<int>(j.size()) != expect_rows)
        throw DataError("matrix has " + std::to_string(j.size()) + " rows, expected " + std::to_string(expect_rows));
    Mat m(expect_rows, expect_cols);
    for (int i = 0; i < expect_rows; ++i) {
        const json& row = j[i];
        if (!row.is_array() || static_cast<int>(row.size()) != expect_cols)
            throw DataError("matrix row " + std::to_string(i) + " has wrong length, expected " +
                            std::to_string(expect_cols));
        for (int jj = 0; jj < expect_cols; ++jj) {
            if (!row[jj].is_string()) throw DataError("matrix entries must be rational strings");
            try {
                m.at(i, jj) = rational_from_string(row[jj].get<std::string>());
            } catch (const std::invalid_argument& e) {
                throw DataError(std::string("bad matrix entry: ") + e.what());
            }
        }
    }
    return m;
}

json module_to_json(const QuiverModule& m) {
    validate_module(m);
    json j;
    j["format"] = "quiver-module";
    j["shape"] = {{"kind", kind_name(m.shape.kind)}, {"N", m.shape.N}, {"k", m.shape.k}};
    json dims = json::object();
    for (const VertexId& v : vertex_list(m.shape)) dims[vertex_key(m.shape, v)] = m.dims.d.at(v);
    j["dims"] = dims;
    json arrows = json::object();
    for (const Arrow& a : arrow_list(m.shape)) {
        std::string group = arrow_kind_name(a.id.kind);
        std::string key = index_key(m.shape, a.id);
        if (key.empty())
            arrows[group] = mat_to_json(m.arrow(a.id)); // dented e / delta: one matrix
        else
            arrows[group][key] = mat_to_json(m.arrow(a.id));
    }
    j["arrows"] = arrows;
    return j;
}

QuiverModule module_from_json(const json& j) {
    if (!j.is_object()) throw DataError("module document must be a JSON object");
    if (!j.contains("shape") || !j.contains("dims") || !j.contains("arrows"))
        throw DataError("module document needs shape, dims and arrows");
    const json& js = j["shape"];
    QuiverShape shape;
    try {
        shape.kind = kind_from_name(js.at("kind").get<std::string>());
        shape.N = js.at("N").get<int>();
        shape.k = js.at("k").get<int>();
        validate_shape(shape);
    } catch (const json::exception& e) {
        throw DataError(std::string("bad shape block: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw DataError(std::string("bad shape block: ") + e.what());
    }

    DimVector dims = zero_dims(shape);
    const json& jd = j["dims"];
    if (!jd.is_object()) throw DataError("dims must be an object");
    for (const VertexId& v : vertex_list(shape)) {
        std::string key = vertex_key(shape, v);
        if (!jd.contains(key)) throw DataError("dims missing vertex " + key);
        if (!jd[key].is_number_integer()) throw DataError("dims entry " + key + " must be an integer");
        dims.d[v] = jd[key].get<int>();
    }
    try {
        validate_dims(dims);
    } catch (const std::invalid_argument& e) {
        throw DataError(e.what());
    }

    QuiverModule m;
    m.shape = shape;
    m.dims = dims;
    const json& ja = j["arrows"];
    if (!ja.is_object()) throw DataError("arrows must be an object");
    for (const Arrow& a : arrow_list(shape)) {
        std::string group = arrow_kind_name(a.id.kind);
        std::string key = index_key(shape, a.id);
        if (!ja.contains(group)) throw DataError("arrows missing group '" + group + "'");
        const json* slot;
        if (key.empty()) {
            slot = &ja[group];
        } else {
            if (!ja[group].is_object() || !ja[group].contains(key))
                throw DataError("arrow group '" + group + "' missing index '" + key + "'");
            slot = &ja[group][key];
        }
        auto [r, c] = arrow_mat_shape(dims, a);
        try {
            m.arrows[a.id] = mat_from_json(*slot, r, c);
        } catch (const DataError& e) {
            throw DataError("arrow " + group + "[" + key + "]: " + e.what());
        }
    }
    try {
        validate_module(m);
    } catch (const std::invalid_argument& e) {
        throw DataError(e.what());
    }
    return m;
}

std::string serialize_module(const QuiverModule& m) { return module_to_json(m).dump(2) + "\n"; }

QuiverModule deserialize_module(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DataError(std::string("JSON parse error: ") + e.what());
    }
    return module_from_json(j);
}

QuiverModule load_module_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return deserialize_module(ss.str());
}

void save_module_file(const std::string& path, const QuiverModule& m) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << serialize_module(m);
}

} // namespace zastava
