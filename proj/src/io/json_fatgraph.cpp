#include "loopforge/error.hpp"
#include "loopforge/io/json_io.hpp"

namespace loopforge::io {

using fatgraph::FatGraph;

FatGraph fatgraph_from_json(const json& j, fatgraph::Valence mode) {
    std::vector<std::string> names;
    for (const auto& n : require(j, "half_edges")) {
        if (!n.is_string()) fail(ErrorCode::Parse, "half-edge names must be strings");
        names.push_back(n.get<std::string>());
    }
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& p : require(j, "involution")) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
            fail(ErrorCode::Parse, "involution entries must be [h1, h2] pairs of names, got " + p.dump());
        pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
    }
    std::vector<std::vector<std::string>> vertices;
    for (const auto& v : require(j, "vertices")) {
        if (!v.is_array()) fail(ErrorCode::Parse, "each vertex must be an array of half-edge names");
        vertices.emplace_back();
        for (const auto& h : v) {
            if (!h.is_string()) fail(ErrorCode::Parse, "vertex entries must be half-edge names");
            vertices.back().push_back(h.get<std::string>());
        }
    }
    FatGraph g(std::move(names), pairs, vertices, mode);
    if (auto it = j.find("edge_labels"); it != j.end())
        for (const auto& [k, v] : it->items()) g.edge_labels[k] = v.is_string() ? v.get<std::string>() : v.dump();
    if (auto it = j.find("lengths"); it != j.end())
        for (const auto& [k, v] : it->items()) {
            const auto len = rational_from_json(v);
            if (len.sign() <= 0) fail(ErrorCode::Parse, "edge length for '" + k + "' must be positive");
            g.lengths[k] = len;
        }
    if (auto it = j.find("markings"); it != j.end())
        for (const auto& m : *it) g.markings.push_back(m.get<std::string>());
    return g;
}

json to_json(const FatGraph& g) {
    json j;
    j["half_edges"] = g.names();
    json inv = json::array();
    for (fatgraph::HalfEdge h = 0; h < g.half_edge_count(); ++h)
        if (h < g.reverse(h)) inv.push_back({g.name(h), g.name(g.reverse(h))});
    j["involution"] = inv;
    json verts = json::array();
    for (const auto& v : g.vertices()) {
        json vv = json::array();
        for (auto h : v) vv.push_back(g.name(h));
        verts.push_back(vv);
    }
    j["vertices"] = verts;
    if (!g.edge_labels.empty()) j["edge_labels"] = g.edge_labels;
    if (!g.lengths.empty()) {
        json l = json::object();
        for (const auto& [k, v] : g.lengths) l[k] = v.str();
        j["lengths"] = l;
    }
    if (!g.markings.empty()) j["markings"] = g.markings;
    return j;
}

json cycles_to_json(const FatGraph& g, const fatgraph::BoundaryPartition& p) {
    json out = json::array();
    for (const auto& c : p.cycles) {
        json cyc = json::array();
        for (auto h : c) cyc.push_back(g.name(h));
        out.push_back(cyc);
    }
    return out;
}

}  // namespace loopforge::io
