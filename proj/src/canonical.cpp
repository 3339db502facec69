#include "spinelab/canonical.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace spinelab {

namespace {

// Vertex color under label-preserving isomorphism: basepoint flag plus the
// sorted list of mark labels sitting at the vertex. Each label occurs once
// globally, so preserving per-vertex label sets pins every marked vertex.
std::vector<int> initial_colors(const ThornedGraph& g) {
    std::vector<std::vector<int>> key(g.vertices);
    for (int v = 0; v < g.vertices; ++v)
        key[v].push_back(g.has_basepoint() && v == g.basepoint ? 1 : 0);
    for (std::size_t i = 0; i < g.marks.size(); ++i)
        key[g.marks[i]].push_back(static_cast<int>(i) + 2);
    std::map<std::vector<int>, int> ids;
    for (int v = 0; v < g.vertices; ++v) ids.emplace(key[v], 0);
    int next = 0;
    for (auto& [k, id] : ids) id = next++;
    std::vector<int> color(g.vertices);
    for (int v = 0; v < g.vertices; ++v) color[v] = ids[key[v]];
    return color;
}

struct Canonicalizer {
    const ThornedGraph& g;
    int V;
    std::vector<std::vector<int>> mult;  // multiplicity matrix, loops on diagonal
    std::vector<int> color;

    // Search state: best leaf encoding and every permutation achieving it.
    std::vector<int> best_enc;
    bool have_best = false;
    std::vector<std::vector<int>> best_perms;

    explicit Canonicalizer(const ThornedGraph& graph) : g(graph), V(graph.vertices) {
        mult.assign(V, std::vector<int>(V, 0));
        for (auto [u, v] : g.edges) {
            if (u == v) {
                ++mult[u][u];  // diagonal holds loop count
            } else {
                ++mult[u][v];
                ++mult[v][u];
            }
        }
        color = initial_colors(g);
    }

    using Partition = std::vector<std::vector<int>>;  // ordered cells of vertex ids

    Partition initial_partition() const {
        int classes = 0;
        for (int v = 0; v < V; ++v) classes = std::max(classes, color[v] + 1);
        Partition p(classes);
        for (int v = 0; v < V; ++v) p[color[v]].push_back(v);
        p.erase(std::remove_if(p.begin(), p.end(),
                               [](const std::vector<int>& c) { return c.empty(); }),
                p.end());
        return p;
    }

    // Equitable-ish refinement: split cells by (loop count, multiset of
    // (cell, multiplicity) over neighbors) until stable. Cell order is kept
    // deterministic: sub-cells replace their parent in signature order.
    void refine(Partition& p) const {
        bool changed = true;
        while (changed) {
            changed = false;
            std::vector<int> cell_of(V);
            for (std::size_t c = 0; c < p.size(); ++c)
                for (int v : p[c]) cell_of[v] = static_cast<int>(c);
            Partition np;
            for (const auto& cell : p) {
                if (cell.size() == 1) {
                    np.push_back(cell);
                    continue;
                }
                std::map<std::vector<int>, std::vector<int>> split;
                for (int v : cell) {
                    std::vector<int> sig;
                    sig.push_back(mult[v][v]);
                    std::vector<std::pair<int, int>> nb;
                    for (int u = 0; u < V; ++u)
                        if (u != v && mult[v][u] > 0) nb.push_back({cell_of[u], mult[v][u]});
                    std::sort(nb.begin(), nb.end());
                    for (auto [c, m] : nb) {
                        sig.push_back(c);
                        sig.push_back(m);
                    }
                    split[sig].push_back(v);
                }
                if (split.size() > 1) changed = true;
                for (auto& [sig, verts] : split) np.push_back(verts);
            }
            p = std::move(np);
        }
    }

    void leaf(const Partition& p) {
        std::vector<int> perm(V);  // old -> new
        for (std::size_t c = 0; c < p.size(); ++c) perm[p[c][0]] = static_cast<int>(c);
        std::vector<int> inv(V);
        for (int v = 0; v < V; ++v) inv[perm[v]] = v;
        std::vector<int> enc;
        enc.reserve(static_cast<std::size_t>(V) * (V + 1) / 2);
        for (int i = 0; i < V; ++i)
            for (int j = i; j < V; ++j) enc.push_back(mult[inv[i]][inv[j]]);
        if (!have_best || enc < best_enc) {
            best_enc = std::move(enc);
            have_best = true;
            best_perms.clear();
            best_perms.push_back(perm);
        } else if (enc == best_enc) {
            best_perms.push_back(perm);
        }
    }

    void search(Partition p) {
        refine(p);
        std::size_t target = p.size();
        for (std::size_t c = 0; c < p.size(); ++c)
            if (p[c].size() > 1) {
                target = c;
                break;
            }
        if (target == p.size()) {
            leaf(p);
            return;
        }
        for (int v : p[target]) {
            Partition q;
            q.reserve(p.size() + 1);
            for (std::size_t c = 0; c < p.size(); ++c) {
                if (c != target) {
                    q.push_back(p[c]);
                    continue;
                }
                q.push_back({v});
                std::vector<int> rest;
                for (int u : p[c])
                    if (u != v) rest.push_back(u);
                q.push_back(std::move(rest));
            }
            search(std::move(q));
        }
    }
};

void append_uvarint(std::string& out, unsigned long long x) {
    do {
        unsigned char b = x & 0x7f;
        x >>= 7;
        if (x) b |= 0x80;
        out.push_back(static_cast<char>(b));
    } while (x);
}

std::string to_hex(const std::string& bytes) {
    static const char* digits = "0123456789abcdef";
    std::string h;
    h.reserve(bytes.size() * 2);
    for (unsigned char c : bytes) {
        h.push_back(digits[c >> 4]);
        h.push_back(digits[c & 0xf]);
    }
    return h;
}

Int factorial(int k) {
    Int f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

} // namespace

CanonicalGraph canonical_form(const ThornedGraph& g) {
    validate(g);
    Canonicalizer cz(g);
    cz.search(cz.initial_partition());

    CanonicalGraph out;
    out.vertex_map = cz.best_perms.front();
    const auto& p0 = out.vertex_map;

    // Relabel and sort edges; stable order keeps parallel classes contiguous
    // and makes the edge map deterministic.
    std::vector<std::tuple<int, int, int>> relabeled;  // (u', v', original index)
    relabeled.reserve(g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        int u = p0[g.edges[e].first];
        int v = p0[g.edges[e].second];
        if (u > v) std::swap(u, v);
        relabeled.push_back({u, v, static_cast<int>(e)});
    }
    std::sort(relabeled.begin(), relabeled.end());
    out.edge_map.assign(g.edges.size(), -1);
    ThornedGraph cg;
    cg.n = g.n;
    cg.s = g.s;
    cg.vertices = g.vertices;
    for (std::size_t i = 0; i < relabeled.size(); ++i) {
        auto [u, v, orig] = relabeled[i];
        cg.edges.push_back({u, v});
        out.edge_map[orig] = static_cast<int>(i);
    }
    if (g.has_basepoint()) cg.basepoint = p0[g.basepoint];
    for (int m : g.marks) cg.marks.push_back(p0[m]);
    validate(cg);
    out.graph = cg;

    std::string bytes;
    append_uvarint(bytes, 1);  // format tag
    append_uvarint(bytes, static_cast<unsigned long long>(cg.n));
    append_uvarint(bytes, static_cast<unsigned long long>(cg.s));
    append_uvarint(bytes, static_cast<unsigned long long>(cg.vertices));
    append_uvarint(bytes, cg.edges.size());
    for (auto [u, v] : cg.edges) {
        append_uvarint(bytes, static_cast<unsigned long long>(u));
        append_uvarint(bytes, static_cast<unsigned long long>(v));
    }
    append_uvarint(bytes, static_cast<unsigned long long>(cg.has_basepoint() ? cg.basepoint + 1 : 0));
    for (int m : cg.marks) append_uvarint(bytes, static_cast<unsigned long long>(m));
    out.hex = to_hex(bytes);

    // Vertex automorphisms of the canonical representative: compositions of
    // any best-leaf permutation with the inverse of the chosen one.
    std::set<std::vector<int>> vauts;
    {
        std::vector<int> inv0(cg.vertices);
        for (int v = 0; v < cg.vertices; ++v) inv0[p0[v]] = v;
        for (const auto& p : cz.best_perms) {
            std::vector<int> a(cg.vertices);
            for (int v = 0; v < cg.vertices; ++v) a[v] = p[inv0[v]];
            vauts.insert(std::move(a));
        }
    }

    // Parallel classes of the canonical edge list (contiguous runs).
    std::vector<std::pair<int, int>> runs;  // [begin, end)
    for (std::size_t i = 0; i < cg.edges.size();) {
        std::size_t j = i;
        while (j < cg.edges.size() && cg.edges[j] == cg.edges[i]) ++j;
        runs.push_back({static_cast<int>(i), static_cast<int>(j)});
        i = j;
    }
    int loop_edges = 0;
    for (auto [u, v] : cg.edges)
        if (u == v) ++loop_edges;

    out.aut_order = Int(static_cast<long long>(vauts.size()));
    for (auto [b, e] : runs) out.aut_order *= factorial(e - b);
    out.aut_order <<= loop_edges;

    int E = static_cast<int>(cg.edges.size());
    auto identity_eperm = [&] {
        std::vector<int> id(E);
        for (int i = 0; i < E; ++i) id[i] = i;
        return id;
    };
    // Generator set: each vertex automorphism with its order-preserving edge
    // map, one adjacent transposition per parallel class position, one
    // reversal per loop edge.
    for (const auto& a : vauts) {
        bool is_id = true;
        for (int v = 0; v < cg.vertices; ++v)
            if (a[v] != v) {
                is_id = false;
                break;
            }
        if (is_id) continue;
        GraphAut ga;
        ga.vperm = a;
        ga.eperm.assign(E, -1);
        ga.erev.assign(E, 0);
        // Map the k-th edge of each class to the k-th edge of the image class.
        std::map<std::pair<int, int>, int> class_begin;
        for (auto [b, e] : runs) class_begin[cg.edges[b]] = b;
        std::map<std::pair<int, int>, int> used;
        for (int i = 0; i < E; ++i) {
            auto [u, v] = cg.edges[i];
            int au = a[u], av = a[v];
            if (au > av) std::swap(au, av);
            int base = class_begin.at({au, av});
            int k = used[{au, av}]++;
            ga.eperm[i] = base + k;
        }
        out.aut_generators.push_back(std::move(ga));
    }
    for (auto [b, e] : runs) {
        for (int i = b; i + 1 < e; ++i) {
            GraphAut ga;
            ga.vperm.resize(cg.vertices);
            for (int v = 0; v < cg.vertices; ++v) ga.vperm[v] = v;
            ga.eperm = identity_eperm();
            std::swap(ga.eperm[i], ga.eperm[i + 1]);
            ga.erev.assign(E, 0);
            out.aut_generators.push_back(std::move(ga));
        }
    }
    for (int i = 0; i < E; ++i) {
        if (cg.edges[i].first != cg.edges[i].second) continue;
        GraphAut ga;
        ga.vperm.resize(cg.vertices);
        for (int v = 0; v < cg.vertices; ++v) ga.vperm[v] = v;
        ga.eperm = identity_eperm();
        ga.erev.assign(E, 0);
        ga.erev[i] = 1;
        out.aut_generators.push_back(std::move(ga));
    }
    return out;
}

std::vector<std::vector<int>> edge_action_group(const CanonicalGraph& cg, std::size_t cap) {
    int E = static_cast<int>(cg.graph.edges.size());
    std::vector<int> id(E);
    for (int i = 0; i < E; ++i) id[i] = i;
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> frontier{id};
    seen.insert(id);
    std::vector<std::vector<int>> gens;
    for (const auto& g : cg.aut_generators) {
        if (g.eperm == id) continue;
        gens.push_back(g.eperm);
    }
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& p : frontier) {
            for (const auto& q : gens) {
                std::vector<int> r(E);
                for (int i = 0; i < E; ++i) r[i] = q[p[i]];
                if (seen.insert(r).second) {
                    if (seen.size() > cap)
                        throw structural_error("edge automorphism group exceeds cap");
                    next.push_back(std::move(r));
                }
            }
        }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

} // namespace spinelab
