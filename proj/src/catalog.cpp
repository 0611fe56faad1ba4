#include "affiq/catalog.hpp"

#include <json.hpp>

#include "affiq/body_json.hpp"

namespace affiq {

nlohmann::json body_to_json(const Body& b) {
    nlohmann::json j;
    j["kind"] = body_kind(b);
    j["dim"] = body_dim(b);
    if (const auto* v = std::get_if<VPolytope>(&b)) {
        auto verts = nlohmann::json::array();
        for (int i = 0; i < v->count(); ++i) {
            auto row = nlohmann::json::array();
            for (int c = 0; c < v->dim(); ++c) row.push_back(v->vertices(i, c));
            verts.push_back(std::move(row));
        }
        j["vertices"] = std::move(verts);
    } else if (const auto* h = std::get_if<HPolytope>(&b)) {
        auto rows = nlohmann::json::array();
        for (int i = 0; i < h->count(); ++i) {
            auto row = nlohmann::json::array();
            for (int c = 0; c < h->dim(); ++c) row.push_back(h->normals(i, c));
            row.push_back(h->offsets[i]);
            rows.push_back(std::move(row));
        }
        j["rows"] = std::move(rows);
    } else {
        const auto& e = std::get<Ellipsoid>(b);
        auto center = nlohmann::json::array();
        for (int c = 0; c < e.dim(); ++c) center.push_back(e.center[c]);
        auto shape = nlohmann::json::array();
        for (int i = 0; i < e.dim(); ++i) {
            auto row = nlohmann::json::array();
            for (int c = 0; c < e.dim(); ++c) row.push_back(e.shape(i, c));
            shape.push_back(std::move(row));
        }
        j["center"] = std::move(center);
        j["shape"] = std::move(shape);
    }
    return j;
}

Body body_from_json(const nlohmann::json& j) {
    require(j.is_object() && j.contains("kind") && j.contains("dim"),
            ErrorCode::InvalidArgument, "body json needs kind and dim");
    const std::string kind = j.at("kind").get<std::string>();
    const int n = j.at("dim").get<int>();
    require(n >= 1, ErrorCode::BadDims, "body dim");

    auto read_matrix = [&](const nlohmann::json& rows, int expect_cols) {
        require(rows.is_array() && !rows.empty(), ErrorCode::InvalidArgument, "matrix json");
        Mat m(rows.size(), expect_cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& row = rows[i];
            require(row.is_array() && static_cast<int>(row.size()) == expect_cols,
                    ErrorCode::InvalidArgument, "matrix row length");
            for (int c = 0; c < expect_cols; ++c) m(i, c) = row[c].get<double>();
        }
        return m;
    };

    if (kind == "vpoly") return make_vpolytope(read_matrix(j.at("vertices"), n));
    if (kind == "hpoly") {
        const Mat rows = read_matrix(j.at("rows"), n + 1);
        return make_hpolytope(rows.leftCols(n), rows.col(n));
    }
    if (kind == "ellipsoid") {
        const auto& cj = j.at("center");
        require(cj.is_array() && static_cast<int>(cj.size()) == n, ErrorCode::InvalidArgument,
                "center length");
        Vec center(n);
        for (int c = 0; c < n; ++c) center[c] = cj[c].get<double>();
        return make_ellipsoid(std::move(center), read_matrix(j.at("shape"), n));
    }
    fail(ErrorCode::UnknownName, "unknown body kind '" + kind + "'");
}

const std::string& default_catalog_text() {
    static const std::string text = R"({
  "version": 1,
  "bodies": [
    {"id": "cube2",    "kind": "cube",          "n": 2},
    {"id": "simplex2", "kind": "simplex",       "n": 2},
    {"id": "rand2a",   "kind": "random-poly",   "n": 2, "m": 9,  "seed": 21},
    {"id": "ell2a",    "kind": "ellipsoid",     "n": 2, "diag": [2.0, 1.0]},
    {"id": "ball2",    "kind": "ball",          "n": 2, "radius": 1.0},
    {"id": "cube3",    "kind": "cube",          "n": 3},
    {"id": "box3a",    "kind": "box",           "n": 3, "sides": [1.0, 0.7, 1.6]},
    {"id": "box3b",    "kind": "box",           "n": 3, "sides": [2.0, 0.5, 0.9]},
    {"id": "simplex3", "kind": "simplex",       "n": 3},
    {"id": "cross3",   "kind": "cross-polytope","n": 3},
    {"id": "rand3a",   "kind": "random-poly",   "n": 3, "m": 12, "seed": 101},
    {"id": "rand3b",   "kind": "random-poly",   "n": 3, "m": 18, "seed": 202},
    {"id": "ballpoly3","kind": "ball-polytope", "n": 3, "m": 400, "seed": 301},
    {"id": "ell3a",    "kind": "ellipsoid",     "n": 3, "diag": [2.0, 1.0, 1.0]},
    {"id": "ell3b",    "kind": "ellipsoid",     "n": 3, "diag": [3.0, 1.0, 0.5]},
    {"id": "ball3",    "kind": "ball",          "n": 3, "radius": 1.0},
    {"id": "cube4",    "kind": "cube",          "n": 4},
    {"id": "box4a",    "kind": "box",           "n": 4, "sides": [1.0, 0.7, 1.6, 1.1]},
    {"id": "box4b",    "kind": "box",           "n": 4, "sides": [2.0, 0.5, 0.9, 1.3]},
    {"id": "simplex4", "kind": "simplex",       "n": 4},
    {"id": "cross4",   "kind": "cross-polytope","n": 4},
    {"id": "rand4a",   "kind": "random-poly",   "n": 4, "m": 16, "seed": 404},
    {"id": "rand4b",   "kind": "random-poly",   "n": 4, "m": 24, "seed": 505},
    {"id": "ballpoly4","kind": "ball-polytope", "n": 4, "m": 320, "seed": 606},
    {"id": "ell4a",    "kind": "ellipsoid",     "n": 4, "diag": [2.0, 1.0, 1.0, 1.0]},
    {"id": "ell4b",    "kind": "ellipsoid",     "n": 4, "diag": [3.0, 1.0, 0.5, 1.0]},
    {"id": "ball4",    "kind": "ball",          "n": 4, "radius": 1.0},
    {"id": "cube5",    "kind": "cube",          "n": 5},
    {"id": "simplex5", "kind": "simplex",       "n": 5},
    {"id": "ball5",    "kind": "ball",          "n": 5, "radius": 1.0}
  ]
})";
    return text;
}

std::vector<CatalogEntry> load_catalog(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::InvalidArgument, std::string("catalog parse: ") + e.what());
    }
    require(j.is_object() && j.contains("bodies") && j["bodies"].is_array(),
            ErrorCode::InvalidArgument, "catalog needs a bodies array");

    std::vector<CatalogEntry> out;
    for (const auto& e : j["bodies"]) {
        CatalogEntry entry;
        entry.id = e.at("id").get<std::string>();
        entry.n = e.at("n").get<int>();
        if (e.contains("body")) {
            entry.kind = e["body"].at("kind").get<std::string>();
            entry.body = body_from_json(e["body"]);
            out.push_back(std::move(entry));
            continue;
        }
        entry.kind = e.at("kind").get<std::string>();
        BodyParams params;
        if (e.contains("m")) params.m = e["m"].get<int>();
        if (e.contains("radius")) params.radius = e["radius"].get<double>();
        if (e.contains("sides")) {
            const auto& s = e["sides"];
            params.sides.resize(s.size());
            for (std::size_t i = 0; i < s.size(); ++i) params.sides[i] = s[i].get<double>();
        }
        if (e.contains("diag")) {
            const auto& d = e["diag"];
            require(static_cast<int>(d.size()) == entry.n, ErrorCode::InvalidArgument,
                    "diag length");
            params.shape = Mat::Zero(entry.n, entry.n);
            for (int i = 0; i < entry.n; ++i) params.shape(i, i) = d[i].get<double>();
        }
        if (e.contains("shape")) {
            const auto& s = e["shape"];
            params.shape = Mat(entry.n, entry.n);
            for (int i = 0; i < entry.n; ++i)
                for (int c = 0; c < entry.n; ++c) params.shape(i, c) = s[i][c].get<double>();
        }
        const uint64_t seed = e.contains("seed") ? e["seed"].get<uint64_t>() : 0;
        entry.body = standard_body(entry.kind, entry.n, params, RngStream(seed));
        out.push_back(std::move(entry));
    }
    return out;
}

std::vector<CatalogEntry> default_catalog() { return load_catalog(default_catalog_text()); }

const CatalogEntry* find_body(const std::vector<CatalogEntry>& catalog,
                              const std::string& id) {
    for (const auto& e : catalog)
        if (e.id == id) return &e;
    return nullptr;
}

}  // namespace affiq
