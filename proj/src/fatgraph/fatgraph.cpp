#include "loopforge/fatgraph/fatgraph.hpp"

#include "loopforge/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>

namespace loopforge::fatgraph {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

[[noreturn]] void invalid_chord(const std::string& why) { fail(ErrorCode::InvalidChordDiagram, why); }

}  // namespace

FatGraph::FatGraph(std::vector<std::string> names, const std::vector<std::pair<std::string, std::string>>& edges,
                   const std::vector<std::vector<std::string>>& vertices, Valence mode)
    : names_(std::move(names)) {
    std::unordered_map<std::string, HalfEdge> index;
    for (HalfEdge h = 0; h < names_.size(); ++h)
        if (!index.emplace(names_[h], h).second) fail(ErrorCode::MalformedGraph, "duplicate half-edge '" + names_[h] + "'");
    auto lookup = [&](const std::string& n) {
        auto it = index.find(n);
        if (it == index.end()) fail(ErrorCode::MalformedGraph, "unknown half-edge '" + n + "'");
        return it->second;
    };
    involution_.assign(names_.size(), npos);
    for (const auto& [a, b] : edges) {
        const HalfEdge x = lookup(a), y = lookup(b);
        if (x == y) fail(ErrorCode::MalformedGraph, "involution fixes half-edge '" + a + "'");
        if (involution_[x] != npos || involution_[y] != npos)
            fail(ErrorCode::MalformedGraph, "half-edge paired twice in involution: '" + a + "' / '" + b + "'");
        involution_[x] = y;
        involution_[y] = x;
    }
    for (const auto& v : vertices) {
        vertices_.emplace_back();
        for (const auto& n : v) vertices_.back().push_back(lookup(n));
    }
    build_indices(mode);
}

FatGraph::FatGraph(std::vector<std::string> names, std::vector<HalfEdge> involution,
                   std::vector<std::vector<HalfEdge>> vertices, Valence mode)
    : names_(std::move(names)), involution_(std::move(involution)), vertices_(std::move(vertices)) {
    build_indices(mode);
}

void FatGraph::build_indices(Valence mode) {
    const std::size_t n = names_.size();
    if (n == 0) fail(ErrorCode::MalformedGraph, "graph has no half-edges");
    if (involution_.size() != n) fail(ErrorCode::MalformedGraph, "involution does not cover every half-edge");
    for (HalfEdge h = 0; h < n; ++h) {
        const HalfEdge r = involution_[h];
        if (r == npos || r >= n) fail(ErrorCode::MalformedGraph, "half-edge '" + names_[h] + "' is unpaired");
        if (r == h) fail(ErrorCode::MalformedGraph, "involution fixes half-edge '" + names_[h] + "'");
        if (involution_[r] != h) fail(ErrorCode::MalformedGraph, "pairing is not an involution at '" + names_[h] + "'");
    }
    vertex_of_.assign(n, npos);
    position_.assign(n, npos);
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
        if (vertices_[v].empty()) fail(ErrorCode::MalformedGraph, "vertex " + std::to_string(v) + " is empty");
        for (std::size_t k = 0; k < vertices_[v].size(); ++k) {
            const HalfEdge h = vertices_[v][k];
            if (h >= n) fail(ErrorCode::MalformedGraph, "vertex references an unknown half-edge");
            if (vertex_of_[h] != npos)
                fail(ErrorCode::MalformedGraph, "half-edge '" + names_[h] + "' appears at two vertex positions");
            vertex_of_[h] = v;
            position_[h] = k;
        }
    }
    for (HalfEdge h = 0; h < n; ++h)
        if (vertex_of_[h] == npos) fail(ErrorCode::MalformedGraph, "half-edge '" + names_[h] + "' is at no vertex");
    edge_of_.assign(n, npos);
    std::size_t e = 0;
    for (HalfEdge h = 0; h < n; ++h)
        if (edge_of_[h] == npos) edge_of_[h] = edge_of_[involution_[h]] = e++;
    if (mode == Valence::Strict) validate_strict();
}

HalfEdge FatGraph::find(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) fail(ErrorCode::InvalidInput, "unknown half-edge '" + name + "'");
    return static_cast<HalfEdge>(it - names_.begin());
}

HalfEdge FatGraph::next_at_vertex(HalfEdge h) const {
    const auto& v = vertices_[vertex_of_[h]];
    return v[(position_[h] + 1) % v.size()];
}

bool FatGraph::is_connected() const {
    UnionFind uf(vertices_.size());
    std::size_t components = vertices_.size();
    for (HalfEdge h = 0; h < names_.size(); ++h)
        if (uf.unite(vertex_of_[h], vertex_of_[involution_[h]])) --components;
    return components == 1;
}

void FatGraph::validate_strict() const {
    for (std::size_t v = 0; v < vertices_.size(); ++v)
        if (vertices_[v].size() < 3)
            fail(ErrorCode::MalformedGraph, "vertex " + std::to_string(v) + " has valence " +
                                                std::to_string(vertices_[v].size()) + " < 3 (strict mode)");
}

BoundaryPartition boundary_cycles(const FatGraph& g) {
    BoundaryPartition p;
    std::vector<bool> seen(g.half_edge_count(), false);
    for (HalfEdge start = 0; start < g.half_edge_count(); ++start) {
        if (seen[start]) continue;
        std::vector<HalfEdge> cycle;
        HalfEdge h = start;
        do {
            seen[h] = true;
            cycle.push_back(h);
            h = g.boundary_next(h);
        } while (h != start);
        p.cycles.push_back(std::move(cycle));
    }
    return p;
}

long long euler_characteristic(const FatGraph& g) {
    return static_cast<long long>(g.vertex_count()) - static_cast<long long>(g.edge_count());
}

SurfaceType genus(const FatGraph& g) {
    if (!g.is_connected()) fail(ErrorCode::Disconnected, "genus is only defined for connected graphs");
    const long long n = static_cast<long long>(boundary_cycles(g).cycles.size());
    const long long two_g = 2 - n - euler_characteristic(g);
    if (two_g < 0 || two_g % 2 != 0)
        fail(ErrorCode::NonIntegralGenus, "2 - 2g - n = chi has no nonnegative integer solution (2g = " +
                                              std::to_string(two_g) + ")");
    return {static_cast<std::size_t>(two_g / 2), static_cast<std::size_t>(n)};
}

std::vector<std::vector<std::string>> normalized_cycles(const FatGraph& g, const BoundaryPartition& p) {
    std::vector<std::vector<std::string>> out;
    for (const auto& c : p.cycles) {
        std::vector<std::string> names;
        for (HalfEdge h : c) names.push_back(g.name(h));
        auto smallest = std::min_element(names.begin(), names.end());
        std::rotate(names.begin(), smallest, names.end());
        out.push_back(std::move(names));
    }
    std::sort(out.begin(), out.end());
    return out;
}

ChordDiagram validate_chord_diagram(const FatGraph& g, const std::vector<std::size_t>& incoming) {
    BoundaryPartition cycles = boundary_cycles(g);
    const std::size_t n = cycles.cycles.size();
    std::set<std::size_t> in_set;
    for (auto i : incoming) {
        if (i >= n) fail(ErrorCode::IndexOutOfRange, "incoming cycle index " + std::to_string(i) + " out of range");
        if (!in_set.insert(i).second) invalid_chord("incoming cycle " + std::to_string(i) + " listed twice");
    }
    if (incoming.empty()) invalid_chord("no incoming cycles");
    if (in_set.size() == n) invalid_chord("every boundary cycle is incoming; at least one outgoing cycle is required");

    std::vector<bool> circular(g.edge_count(), false);
    for (auto i : incoming) {
        const auto& cyc = cycles.cycles[i];
        std::set<std::size_t> vertices_seen;
        std::set<std::size_t> edges_seen;
        for (HalfEdge h : cyc) {
            if (!edges_seen.insert(g.edge_of(h)).second)
                invalid_chord("incoming cycle " + std::to_string(i) + " traverses edge '" + g.name(h) +
                              "' in both directions; it is not an embedded circle");
            if (!vertices_seen.insert(g.vertex_of(h)).second)
                invalid_chord("incoming cycle " + std::to_string(i) + " passes through vertex " +
                              std::to_string(g.vertex_of(h)) + " twice; it is not an embedded circle");
        }
        for (auto e : edges_seen) {
            if (circular[e]) invalid_chord("incoming circles share an edge");
            circular[e] = true;
        }
    }

    // Ghost edges must form a forest whose components each touch a circle,
    // with every ghost leaf on a circle.
    std::vector<bool> on_circle(g.vertex_count(), false);
    for (HalfEdge h = 0; h < g.half_edge_count(); ++h)
        if (circular[g.edge_of(h)]) on_circle[g.vertex_of(h)] = true;
    UnionFind uf(g.vertex_count());
    std::vector<std::size_t> ghost_degree(g.vertex_count(), 0);
    for (HalfEdge h = 0; h < g.half_edge_count(); ++h) {
        if (circular[g.edge_of(h)]) continue;
        ++ghost_degree[g.vertex_of(h)];
        if (h < g.reverse(h) && !uf.unite(g.vertex_of(h), g.vertex_of(g.reverse(h))))
            invalid_chord("ghost edges contain a cycle through edge '" + g.name(h) + "'");
    }
    std::vector<bool> component_touches(g.vertex_count(), false);
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        if (on_circle[v]) component_touches[uf.find(v)] = true;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (on_circle[v]) continue;
        if (!component_touches[uf.find(v)]) invalid_chord("a ghost component does not meet any circle");
        if (ghost_degree[v] == 1) invalid_chord("ghost tree has an endpoint off the circles (vertex " + std::to_string(v) + ")");
    }

    const SurfaceType st = genus(g);
    ChordDiagram c{g, std::move(cycles), {}, {}, std::move(circular), {}};
    c.incoming = incoming;
    for (std::size_t i = 0; i < n; ++i)
        if (!in_set.count(i)) c.outgoing.push_back(i);
    c.type = {st.genus, c.incoming.size(), c.outgoing.size()};
    return c;
}

FatGraph contract_edge(const FatGraph& g, HalfEdge h) {
    const HalfEdge r = g.reverse(h);
    const std::size_t u = g.vertex_of(h), v = g.vertex_of(r);
    if (u == v) fail(ErrorCode::InvalidInput, "cannot contract a loop edge");
    auto rotated_tail = [&](std::size_t vertex, HalfEdge first) {
        const auto& order = g.vertices()[vertex];
        auto it = std::find(order.begin(), order.end(), first);
        std::vector<HalfEdge> tail(it + 1, order.end());
        tail.insert(tail.end(), order.begin(), it);
        return tail;
    };
    // (h, a1..ak) and (r, b1..bm) merge to (a1..ak, b1..bm).
    std::vector<HalfEdge> merged = rotated_tail(u, h);
    const auto tail_v = rotated_tail(v, r);
    merged.insert(merged.end(), tail_v.begin(), tail_v.end());

    std::vector<std::size_t> remap(g.half_edge_count(), npos);
    std::vector<std::string> names;
    for (HalfEdge x = 0; x < g.half_edge_count(); ++x) {
        if (x == h || x == r) continue;
        remap[x] = names.size();
        names.push_back(g.name(x));
    }
    std::vector<HalfEdge> inv(names.size());
    for (HalfEdge x = 0; x < g.half_edge_count(); ++x)
        if (remap[x] != npos) inv[remap[x]] = remap[g.reverse(x)];
    std::vector<std::vector<HalfEdge>> verts;
    for (std::size_t w = 0; w < g.vertex_count(); ++w) {
        if (w == v) continue;
        const auto& src = (w == u) ? merged : g.vertices()[w];
        if (src.empty()) continue;
        verts.emplace_back();
        for (HalfEdge x : src) verts.back().push_back(remap[x]);
    }
    FatGraph out(std::move(names), std::move(inv), std::move(verts));
    out.lengths = g.lengths;
    out.lengths.erase(g.name(h));
    out.lengths.erase(g.name(r));
    out.edge_labels = g.edge_labels;
    out.markings = g.markings;
    return out;
}

ReducedDiagram reduce_chord_diagram(const ChordDiagram& c) {
    FatGraph g = c.graph;
    std::set<std::string> ghost_names;
    for (HalfEdge h = 0; h < g.half_edge_count(); ++h)
        if (!c.circular[g.edge_of(h)]) ghost_names.insert(g.name(h));
    // Ghost edges form a forest, so each one is a non-loop edge when contracted.
    for (;;) {
        HalfEdge pick = npos;
        for (HalfEdge h = 0; h < g.half_edge_count() && pick == npos; ++h)
            if (ghost_names.count(g.name(h))) pick = h;
        if (pick == npos) break;
        ghost_names.erase(g.name(pick));
        ghost_names.erase(g.name(g.reverse(pick)));
        g = contract_edge(g, pick);
    }

    ReducedDiagram red{g, boundary_cycles(g), {}, {}};
    std::set<std::set<std::string>> incoming_sets;
    for (auto i : c.incoming) {
        std::set<std::string> s;
        for (HalfEdge h : c.cycles.cycles[i]) s.insert(c.graph.name(h));
        incoming_sets.insert(std::move(s));
    }
    std::vector<int> side(g.half_edge_count(), 0);  // +1 incoming, -1 outgoing
    for (std::size_t k = 0; k < red.cycles.cycles.size(); ++k) {
        std::set<std::string> s;
        for (HalfEdge h : red.cycles.cycles[k]) s.insert(g.name(h));
        const bool in = incoming_sets.count(s) > 0;
        (in ? red.incoming : red.outgoing).push_back(k);
        for (HalfEdge h : red.cycles.cycles[k]) side[h] = in ? 1 : -1;
    }
    if (red.incoming.size() != c.incoming.size())
        invalid_chord("reduction lost an incoming circle");
    for (HalfEdge h = 0; h < g.half_edge_count(); ++h)
        if ((side[h] == 1) != (side[g.reverse(h)] == -1))
            invalid_chord("reduced diagram: '" + g.name(h) + "' violates incoming/outgoing duality");
    return red;
}

}  // namespace loopforge::fatgraph
