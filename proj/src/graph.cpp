#include "spinelab/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace spinelab {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    // Returns false if already joined.
    bool join(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

} // namespace

bool is_connected(const ThornedGraph& g) {
    if (g.vertices == 0) return false;
    UnionFind uf(g.vertices);
    int comps = g.vertices;
    for (const auto& [u, v] : g.edges)
        if (u != v && uf.join(u, v)) --comps;
    return comps == 1;
}

void validate(const ThornedGraph& g) {
    if (g.vertices <= 0) throw structural_error("graph must have at least one vertex");
    if (g.s < 0) throw structural_error("s must be nonnegative");
    for (const auto& [u, v] : g.edges) {
        if (u < 0 || v < 0 || u >= g.vertices || v >= g.vertices)
            throw structural_error("edge endpoint out of range");
        if (u > v) throw structural_error("edges must be stored with u <= v");
    }
    if (g.s == 0) {
        if (g.basepoint != -1) throw structural_error("basepoint present but s = 0");
        if (!g.marks.empty()) throw structural_error("marks present but s = 0");
    } else {
        if (g.basepoint < 0 || g.basepoint >= g.vertices)
            throw structural_error("basepoint out of range");
        if (static_cast<int>(g.marks.size()) != g.s - 1)
            throw structural_error("mark list must have s-1 entries");
        for (int m : g.marks)
            if (m < 0 || m >= g.vertices) throw structural_error("mark out of range");
    }
    if (!is_connected(g)) throw structural_error("graph is disconnected");
    int r = static_cast<int>(g.edges.size()) - g.vertices + 1;
    if (r != g.n) throw structural_error("declared rank does not match edges - vertices + 1");
}

int valence(const ThornedGraph& g, int v) {
    int d = 0;
    for (const auto& [a, b] : g.edges) {
        if (a == v) ++d;
        if (b == v) ++d;
    }
    return d;
}

std::vector<int> valences(const ThornedGraph& g) {
    std::vector<int> d(g.vertices, 0);
    for (const auto& [a, b] : g.edges) {
        ++d[a];
        ++d[b];
    }
    return d;
}

int mark_count_at(const ThornedGraph& g, int v) {
    int c = 0;
    for (int m : g.marks)
        if (m == v) ++c;
    return c;
}

int rank_of(const ThornedGraph& g) {
    if (!is_connected(g)) throw structural_error("rank undefined for disconnected graph");
    return static_cast<int>(g.edges.size()) - g.vertices + 1;
}

int basepoint_weight(const ThornedGraph& g) {
    if (!g.has_basepoint()) throw unsupported_error("no basepoint (s = 0)");
    return valence(g, g.basepoint) + mark_count_at(g, g.basepoint);
}

int degree_of(const ThornedGraph& g) {
    if (!g.has_basepoint()) throw unsupported_error("degree undefined without a basepoint");
    return 2 * rank_of(g) + g.s - 1 - basepoint_weight(g);
}

int basepoint_loop_count(const ThornedGraph& g) {
    if (!g.has_basepoint()) throw unsupported_error("no basepoint (s = 0)");
    int c = 0;
    for (const auto& [u, v] : g.edges)
        if (u == v && u == g.basepoint) ++c;
    return c;
}

std::vector<bool> bridge_edges(const ThornedGraph& g) {
    // DFS lowpoint algorithm on the multigraph; the parent edge is skipped by
    // index, so a parallel partner still provides the back edge.
    int V = g.vertices;
    int E = static_cast<int>(g.edges.size());
    std::vector<bool> bridge(E, false);
    std::vector<std::vector<std::pair<int, int>>> adj(V);  // (neighbor, edge index)
    for (int e = 0; e < E; ++e) {
        auto [u, v] = g.edges[e];
        if (u == v) continue;
        adj[u].push_back({v, e});
        adj[v].push_back({u, e});
    }
    std::vector<int> disc(V, -1), low(V, 0);
    int timer = 0;
    std::function<void(int, int)> dfs = [&](int v, int pe) {
        disc[v] = low[v] = timer++;
        for (auto [to, e] : adj[v]) {
            if (e == pe) continue;
            if (disc[to] != -1) {
                low[v] = std::min(low[v], disc[to]);
            } else {
                dfs(to, e);
                low[v] = std::min(low[v], low[to]);
                if (low[to] > disc[v]) bridge[e] = true;
            }
        }
    };
    for (int v = 0; v < V; ++v)
        if (disc[v] == -1) dfs(v, -1);
    return bridge;
}

bool is_reduced(const ThornedGraph& g) {
    auto bridge = bridge_edges(g);
    for (bool b : bridge)
        if (b) return false;
    auto val = valences(g);
    std::vector<bool> special(g.vertices, false);
    if (g.has_basepoint()) special[g.basepoint] = true;
    for (int m : g.marks) special[m] = true;
    for (int v = 0; v < g.vertices; ++v)
        if (!special[v] && val[v] < 3) return false;
    return true;
}

bool proof_identity_check(const ThornedGraph& g) {
    if (!g.has_basepoint()) throw not_applicable_error("needs a basepoint");
    if (basepoint_loop_count(g) > 0) throw not_applicable_error("basepoint loops present");
    auto val = valences(g);
    for (int v = 0; v < g.vertices; ++v) {
        if (v == g.basepoint) continue;
        if (val[v] + mark_count_at(g, v) != 3)
            throw not_applicable_error("non-basepoint vertex is not trivalent");
    }
    int k = degree_of(g);
    // Edges of the subgraph away from the basepoint, with implicit thorns
    // based there included.
    int e1 = 0;
    for (const auto& [u, v] : g.edges)
        if (u != g.basepoint && v != g.basepoint) ++e1;
    for (int m : g.marks)
        if (m != g.basepoint) ++e1;
    return rank_of(g) == 2 * k - e1;
}

void validate_forest(const ThornedGraph& g, const Forest& f) {
    int E = static_cast<int>(g.edges.size());
    int prev = -1;
    UnionFind uf(g.vertices);
    for (int e : f.edge_indices) {
        if (e < 0 || e >= E) throw structural_error("forest edge index out of range");
        if (e <= prev) throw structural_error("forest edges must be sorted and unique");
        prev = e;
        auto [u, v] = g.edges[e];
        if (u == v) throw structural_error("forest contains a loop");
        if (!uf.join(u, v)) throw structural_error("forest contains a cycle");
    }
}

bool forest_subset(const Forest& a, const Forest& b) {
    return std::includes(b.edge_indices.begin(), b.edge_indices.end(),
                         a.edge_indices.begin(), a.edge_indices.end());
}

void validate_flag(const ThornedGraph& g, const ForestFlag& flag) {
    if (flag.flags.empty()) throw structural_error("flag must be nonempty");
    for (const auto& f : flag.flags) {
        if (f.edge_indices.empty()) throw structural_error("flag member must be nonempty");
        validate_forest(g, f);
    }
    for (std::size_t i = 0; i + 1 < flag.flags.size(); ++i) {
        const auto& a = flag.flags[i];
        const auto& b = flag.flags[i + 1];
        if (a.edge_indices.size() >= b.edge_indices.size() || !forest_subset(a, b))
            throw structural_error("flag members must strictly increase");
    }
}

CollapseResult collapse_detailed(const ThornedGraph& g, const Forest& f) {
    validate(g);
    validate_forest(g, f);
    UnionFind uf(g.vertices);
    std::vector<bool> in_forest(g.edges.size(), false);
    for (int e : f.edge_indices) {
        in_forest[e] = true;
        uf.join(g.edges[e].first, g.edges[e].second);
    }
    // New vertex ids in order of first appearance by old index.
    std::vector<int> vmap(g.vertices, -1);
    int next = 0;
    for (int v = 0; v < g.vertices; ++v) {
        int r = uf.find(v);
        if (vmap[r] == -1) vmap[r] = next++;
    }
    for (int v = 0; v < g.vertices; ++v) vmap[v] = vmap[uf.find(v)];

    CollapseResult out;
    out.vertex_map = vmap;
    out.edge_map.assign(g.edges.size(), -1);
    out.graph.vertices = next;
    out.graph.s = g.s;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (in_forest[e]) continue;
        int u = vmap[g.edges[e].first];
        int v = vmap[g.edges[e].second];
        if (u > v) std::swap(u, v);
        out.edge_map[e] = static_cast<int>(out.graph.edges.size());
        out.graph.edges.push_back({u, v});
    }
    out.graph.n = static_cast<int>(out.graph.edges.size()) - next + 1;
    if (g.has_basepoint()) out.graph.basepoint = vmap[g.basepoint];
    out.graph.marks.reserve(g.marks.size());
    for (int m : g.marks) out.graph.marks.push_back(vmap[m]);
    validate(out.graph);
    if (out.graph.n != g.n) throw structural_error("collapse changed the rank");
    return out;
}

ThornedGraph collapse(const ThornedGraph& g, const Forest& f) {
    return collapse_detailed(g, f).graph;
}

ThornedGraph standard_rose(int n, int s) {
    if (n < 0 || s < 0) throw structural_error("standard_rose: bad parameters");
    ThornedGraph g;
    g.n = n;
    g.s = s;
    g.vertices = 1;
    for (int i = 0; i < n; ++i) g.edges.push_back({0, 0});
    if (s >= 1) {
        g.basepoint = 0;
        g.marks.assign(static_cast<std::size_t>(s - 1), 0);
    }
    validate(g);
    return g;
}

ojson graph_to_json(const ThornedGraph& g) {
    ojson j;
    j["n"] = g.n;
    j["s"] = g.s;
    j["vertices"] = g.vertices;
    ojson edges = ojson::array();
    for (const auto& [u, v] : g.edges) edges.push_back(ojson::array({u, v}));
    j["edges"] = std::move(edges);
    if (g.has_basepoint())
        j["basepoint"] = g.basepoint;
    else
        j["basepoint"] = nullptr;
    j["marks"] = g.marks;
    return j;
}

ThornedGraph graph_from_json(const ojson& j) {
    ThornedGraph g;
    g.n = j.at("n").get<int>();
    g.s = j.at("s").get<int>();
    g.vertices = j.at("vertices").get<int>();
    for (const auto& e : j.at("edges")) {
        int u = e.at(0).get<int>();
        int v = e.at(1).get<int>();
        if (u > v) std::swap(u, v);
        g.edges.push_back({u, v});
    }
    if (j.at("basepoint").is_null())
        g.basepoint = -1;
    else
        g.basepoint = j.at("basepoint").get<int>();
    g.marks = j.at("marks").get<std::vector<int>>();
    validate(g);
    return g;
}

} // namespace spinelab
