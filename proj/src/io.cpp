#include "cpoly/io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cpoly/errors.hpp"

namespace cpoly {

namespace {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string to_cpoly_json(const CPolyhedron& P, const Metadata& metadata) {
    std::ostringstream os;
    os << "{\n  \"format\": \"cpoly/1\",\n  \"vertices\": [\n";
    for (int v = 0; v < P.n(); ++v) {
        const LVec4& d = P.disk(v).v;
        os << "    {\"id\": " << P.tri.ids[static_cast<size_t>(v)] << ", \"disk\": ["
           << fmt17(d.x) << ", " << fmt17(d.y) << ", " << fmt17(d.z) << ", " << fmt17(d.t)
           << "]}" << (v + 1 < P.n() ? "," : "") << "\n";
    }
    os << "  ],\n  \"faces\": [\n";
    for (int f = 0; f < P.tri.face_count(); ++f) {
        const auto& face = P.tri.faces[static_cast<size_t>(f)];
        os << "    [" << P.tri.ids[static_cast<size_t>(face[0])] << ", "
           << P.tri.ids[static_cast<size_t>(face[1])] << ", "
           << P.tri.ids[static_cast<size_t>(face[2])] << "]"
           << (f + 1 < P.tri.face_count() ? "," : "") << "\n";
    }
    os << "  ],\n  \"metadata\": {";
    bool first = true;
    for (const auto& [k, v] : metadata) {
        os << (first ? "" : ",") << "\n    \"" << escape(k) << "\": \"" << escape(v) << "\"";
        first = false;
    }
    os << (metadata.empty() ? "" : "\n  ") << "}\n}\n";
    return os.str();
}

void save(const CPolyhedron& P, const std::string& path, const Metadata& metadata) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    out << to_cpoly_json(P, metadata);
}

LoadResult parse_cpoly_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what());
    }

    if (!doc.is_object() || doc.value("format", "") != std::string("cpoly/1"))
        throw SchemaError("missing or unsupported format marker (want \"cpoly/1\")");
    if (!doc.contains("vertices") || !doc["vertices"].is_array() || !doc.contains("faces") ||
        !doc["faces"].is_array())
        throw SchemaError("document needs \"vertices\" and \"faces\" arrays");

    LoadResult result;
    std::vector<std::pair<std::int64_t, LVec4>> raw;
    for (const auto& vtx : doc["vertices"]) {
        if (!vtx.is_object() || !vtx.contains("id") || !vtx.contains("disk") ||
            !vtx["disk"].is_array() || vtx["disk"].size() != 4)
            throw SchemaError("vertex entries need an id and a 4-number disk");
        LVec4 d{vtx["disk"][0].get<double>(), vtx["disk"][1].get<double>(),
                vtx["disk"][2].get<double>(), vtx["disk"][3].get<double>()};
        if (!d.finite()) throw SchemaError("disk vector has non-finite coordinates");
        raw.emplace_back(vtx["id"].get<std::int64_t>(), d);
    }
    std::sort(raw.begin(), raw.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 1; i < raw.size(); ++i)
        if (raw[i].first == raw[i - 1].first)
            throw SchemaError("duplicate vertex id " + std::to_string(raw[i].first));

    std::map<std::int64_t, int> index_of;
    std::vector<std::int64_t> ids;
    std::vector<Disk> disks;
    for (const auto& [id, vec] : raw) {
        const double q = lorentz_norm2(vec);
        if (!(q > 0))
            throw NormalizationError("vertex " + std::to_string(id) +
                                     " disk is not spacelike (<v,v> = " + fmt17(q) + ")");
        const double err = std::abs(q - 1.0);
        if (err > 1e-4)
            throw NormalizationError("vertex " + std::to_string(id) + " disk is " +
                                     fmt17(err) + " from the de Sitter sphere");
        LVec4 v = vec;
        if (err > 1e-8) {
            v = normalize_to_de_sitter(vec);
            result.warnings.push_back("vertex " + std::to_string(id) +
                                      " re-normalized onto the de Sitter sphere");
        }
        index_of[id] = static_cast<int>(ids.size());
        ids.push_back(id);
        disks.push_back(Disk(v, 1e-8));
    }

    std::vector<std::array<int, 3>> faces;
    for (const auto& face : doc["faces"]) {
        if (!face.is_array() || face.size() != 3)
            throw SchemaError("faces must be triangles");
        std::array<int, 3> f;
        for (int k = 0; k < 3; ++k) {
            const std::int64_t id = face[static_cast<size_t>(k)].get<std::int64_t>();
            auto it = index_of.find(id);
            if (it == index_of.end())
                throw SchemaError("face references unknown vertex id " + std::to_string(id));
            f[static_cast<size_t>(k)] = it->second;
        }
        faces.push_back(f);
    }

    const Triangulation tri = validate(static_cast<int>(ids.size()), faces, &ids);
    result.polyhedron = CPolyhedron(tri, std::move(disks));

    if (doc.contains("metadata") && doc["metadata"].is_object())
        for (const auto& [k, v] : doc["metadata"].items())
            if (v.is_string()) result.metadata[k] = v.get<std::string>();
    return result;
}

LoadResult load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_cpoly_json(ss.str());
}

}  // namespace cpoly
