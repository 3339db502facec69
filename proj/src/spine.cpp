#include "spinelab/spine.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

#include "spinelab/parallel.hpp"

namespace spinelab {

namespace {

std::string flag_key(const std::vector<std::vector<int>>& flag) {
    std::string s;
    for (std::size_t i = 0; i < flag.size(); ++i) {
        if (i) s.push_back('|');
        for (std::size_t j = 0; j < flag[i].size(); ++j) {
            if (j) s.push_back('.');
            s += std::to_string(flag[i][j]);
        }
    }
    return s;
}

std::string cell_key(const std::string& hex, const std::vector<std::vector<int>>& flag) {
    return flag.empty() ? hex : hex + ":" + flag_key(flag);
}

std::vector<std::vector<int>> apply_eperm(const std::vector<int>& eperm,
                                          const std::vector<std::vector<int>>& flag) {
    std::vector<std::vector<int>> out;
    out.reserve(flag.size());
    for (const auto& f : flag) {
        std::vector<int> g;
        g.reserve(f.size());
        for (int e : f) g.push_back(eperm[static_cast<std::size_t>(e)]);
        std::sort(g.begin(), g.end());
        out.push_back(std::move(g));
    }
    return out;
}

std::vector<std::vector<int>> normalize_flag(const std::vector<std::vector<int>>& flag,
                                             const std::vector<std::vector<int>>& egroup) {
    std::vector<std::vector<int>> best = flag;
    bool first = true;
    for (const auto& p : egroup) {
        auto cand = apply_eperm(p, flag);
        if (first || cand < best) {
            best = std::move(cand);
            first = false;
        }
    }
    return best;
}

struct GraphTable {
    std::vector<EnumeratedClass> graphs;
    std::vector<std::vector<std::vector<int>>> egroups;  // per graph
    std::unordered_map<std::string, int> by_hex;
};

} // namespace

std::vector<std::vector<ojson>> SpineComplex::cell_labels() const {
    std::vector<std::vector<ojson>> out(cells.size());
    for (std::size_t d = 0; d < cells.size(); ++d)
        for (const auto& c : cells[d]) {
            ojson j;
            j["graph"] = graphs[static_cast<std::size_t>(c.graph_index)].hex;
            ojson flag = ojson::array();
            for (const auto& f : c.flag) flag.push_back(f);
            j["flag"] = std::move(flag);
            out[d].push_back(std::move(j));
        }
    return out;
}

SpineComplex spine_quotient(int n, int s, const SpineOptions& opts) {
    if (opts.restrict_to_L && s < 1)
        throw bad_flags_error("basepoint loop restriction needs s >= 1");
    if (opts.degree_max && s < 1)
        throw bad_flags_error("degree filter needs s >= 1");

    EnumerationQuery q;
    q.n = n;
    q.s = s;
    q.reduced = true;
    q.degree_max = opts.degree_max;
    q.require_basepoint_loop = opts.restrict_to_L;
    EnumerateOptions eo;
    eo.threads = opts.threads;
    eo.budget = opts.budget;
    eo.use_cache = opts.use_cache;
    eo.cache_dir = opts.cache_dir;

    GraphTable table;
    table.graphs = enumerate_graphs(q, eo);
    table.egroups.resize(table.graphs.size());
    for (std::size_t i = 0; i < table.graphs.size(); ++i)
        table.by_hex.emplace(table.graphs[i].hex, static_cast<int>(i));
    parallel_for(table.graphs.size(), opts.threads, [&](std::size_t i) {
        table.egroups[i] = edge_action_group(canonical_form(table.graphs[i].graph));
    });

    SpineComplex sc;
    sc.n = n;
    sc.s = s;
    sc.options = opts;
    sc.graphs = table.graphs;

    long long total_cells = static_cast<long long>(table.graphs.size());
    if (total_cells > opts.budget) throw budget_error("spine 0-cells exceed budget");

    // Dimension 0.
    sc.cells.push_back({});
    for (std::size_t i = 0; i < table.graphs.size(); ++i)
        sc.cells[0].push_back(SpineCellData{static_cast<int>(i), {}});
    sc.chain.cells.push_back({});
    for (const auto& g : table.graphs) sc.chain.cells[0].push_back(g.hex);
    sc.chain.boundary.push_back(
        SparseIntMatrix::zero(0, static_cast<int>(table.graphs.size())));

    // Higher dimensions: orbit classes of flags, collected per graph in one
    // chain walk over the forest poset.
    std::vector<std::vector<std::map<std::string, SpineCellData>>> per_graph(
        table.graphs.size());
    parallel_for(table.graphs.size(), opts.threads, [&](std::size_t i) {
        const auto& g = table.graphs[i].graph;
        auto forests = enumerate_forests(g);
        std::size_t F = forests.size();
        std::vector<std::vector<std::size_t>> supersets(F);
        for (std::size_t a = 0; a < F; ++a)
            for (std::size_t b = 0; b < F; ++b)
                if (a != b &&
                    forests[a].edge_indices.size() < forests[b].edge_indices.size() &&
                    forest_subset(forests[a], forests[b]))
                    supersets[a].push_back(b);
        auto& buckets = per_graph[i];
        std::vector<std::vector<int>> chain;
        std::function<void(std::size_t)> grow = [&](std::size_t last) {
            std::size_t d = chain.size();
            if (opts.max_dim >= 0 && static_cast<int>(d) > opts.max_dim) return;
            if (buckets.size() < d) buckets.resize(d);
            auto norm = normalize_flag(chain, table.egroups[i]);
            // Flag members have strictly increasing sizes, so a stabilizing
            // automorphism fixes them member-wise and no cell can be glued to
            // itself with reversed orientation.
            for (std::size_t t = 0; t + 1 < norm.size(); ++t)
                if (norm[t].size() >= norm[t + 1].size())
                    throw structural_error("flag member sizes must strictly increase");
            std::string key = cell_key(table.graphs[i].hex, norm);
            buckets[d - 1].emplace(std::move(key),
                                   SpineCellData{static_cast<int>(i), std::move(norm)});
            for (std::size_t nxt : supersets[last]) {
                chain.push_back(forests[nxt].edge_indices);
                grow(nxt);
                chain.pop_back();
            }
        };
        for (std::size_t f = 0; f < F; ++f) {
            chain.push_back(forests[f].edge_indices);
            grow(f);
            chain.pop_back();
        }
    });

    std::vector<std::map<std::string, int>> index_by_dim;  // key -> cell index
    index_by_dim.push_back({});
    for (std::size_t i = 0; i < table.graphs.size(); ++i)
        index_by_dim[0].emplace(table.graphs[i].hex, static_cast<int>(i));

    // Memo for face 0: forest F_1 of graph i -> (target graph, composed edge map).
    struct CollapseTarget {
        int graph = -1;
        std::string hex;
        std::vector<int> edge_map;  // source edge -> canonical target edge, -1 collapsed
    };
    std::vector<std::map<std::vector<int>, CollapseTarget>> collapse_memo(
        table.graphs.size());
    auto collapse_target = [&](int gi, const std::vector<int>& f1) -> const CollapseTarget& {
        auto& memo = collapse_memo[static_cast<std::size_t>(gi)];
        auto it = memo.find(f1);
        if (it != memo.end()) return it->second;
        const auto& host = table.graphs[static_cast<std::size_t>(gi)].graph;
        auto col = collapse_detailed(host, Forest{f1});
        auto cf = canonical_form(col.graph);
        CollapseTarget t;
        auto git = table.by_hex.find(cf.hex);
        if (git == table.by_hex.end())
            throw structural_error("collapsed graph left the filtered spine");
        t.graph = git->second;
        t.hex = cf.hex;
        t.edge_map.assign(host.edges.size(), -1);
        for (std::size_t e = 0; e < host.edges.size(); ++e) {
            int im = col.edge_map[e];
            if (im >= 0) t.edge_map[e] = cf.edge_map[static_cast<std::size_t>(im)];
        }
        return memo.emplace(f1, std::move(t)).first->second;
    };

    int max_d = 0;
    for (const auto& b : per_graph)
        max_d = std::max(max_d, static_cast<int>(b.size()));
    for (int d = 1; d <= max_d; ++d) {
        std::vector<std::pair<std::string, SpineCellData>> cells_d;
        for (auto& b : per_graph) {
            if (static_cast<int>(b.size()) < d) continue;
            for (auto& kv : b[static_cast<std::size_t>(d) - 1])
                cells_d.push_back(kv);
        }
        if (cells_d.empty()) break;
        std::sort(cells_d.begin(), cells_d.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });

        total_cells += static_cast<long long>(cells_d.size());
        if (total_cells > opts.budget) throw budget_error("spine cells exceed budget");

        sc.cells.push_back({});
        sc.chain.cells.push_back({});
        index_by_dim.push_back({});
        for (std::size_t j = 0; j < cells_d.size(); ++j) {
            index_by_dim[static_cast<std::size_t>(d)].emplace(cells_d[j].first,
                                                              static_cast<int>(j));
            sc.chain.cells[static_cast<std::size_t>(d)].push_back(cells_d[j].first);
            sc.cells[static_cast<std::size_t>(d)].push_back(std::move(cells_d[j].second));
        }

        // Boundary d -> d-1.
        std::vector<std::tuple<int, int, Int>> trips;
        const auto& rows = index_by_dim[static_cast<std::size_t>(d) - 1];
        for (std::size_t j = 0; j < sc.cells[static_cast<std::size_t>(d)].size(); ++j) {
            const auto& cell = sc.cells[static_cast<std::size_t>(d)][j];
            const auto& ghex = table.graphs[static_cast<std::size_t>(cell.graph_index)].hex;

            // Face 0: collapse by F_1 and re-root the chain at G/F_1.
            {
                const auto& tgt = collapse_target(cell.graph_index, cell.flag.front());
                std::vector<std::vector<int>> mapped;
                for (std::size_t t = 1; t < cell.flag.size(); ++t) {
                    std::vector<int> f;
                    for (int e : cell.flag[t]) {
                        int im = tgt.edge_map[static_cast<std::size_t>(e)];
                        if (im >= 0) f.push_back(im);
                    }
                    std::sort(f.begin(), f.end());
                    mapped.push_back(std::move(f));
                }
                std::string key;
                if (mapped.empty()) {
                    key = tgt.hex;
                } else {
                    auto norm = normalize_flag(
                        mapped, table.egroups[static_cast<std::size_t>(tgt.graph)]);
                    key = cell_key(tgt.hex, norm);
                }
                auto rit = rows.find(key);
                if (rit == rows.end())
                    throw structural_error("re-rooted face is not a spine cell");
                trips.push_back({rit->second, static_cast<int>(j), Int(1)});
            }
            // Faces 1..d: drop flag member t (simplex vertex t+1), sign (-1)^{t+1}.
            for (std::size_t t = 0; t < cell.flag.size(); ++t) {
                std::vector<std::vector<int>> rest;
                for (std::size_t u = 0; u < cell.flag.size(); ++u)
                    if (u != t) rest.push_back(cell.flag[u]);
                std::string key;
                if (rest.empty()) {
                    key = ghex;
                } else {
                    auto norm = normalize_flag(
                        rest, table.egroups[static_cast<std::size_t>(cell.graph_index)]);
                    key = cell_key(ghex, norm);
                }
                auto rit = rows.find(key);
                if (rit == rows.end())
                    throw structural_error("dropped-member face is not a spine cell");
                int sign = (t + 1) % 2 == 0 ? 1 : -1;  // (-1)^{t+1}
                trips.push_back({rit->second, static_cast<int>(j), Int(sign)});
            }
        }
        sc.chain.boundary.push_back(SparseIntMatrix::from_triplets(
            static_cast<int>(sc.chain.cells[static_cast<std::size_t>(d) - 1].size()),
            static_cast<int>(sc.chain.cells[static_cast<std::size_t>(d)].size()), trips));
    }

    if (!verify_dd_zero(sc.chain))
        throw structural_error("spine boundary does not square to zero");
    return sc;
}

StabKind stab_kind_from_string(const std::string& s) {
    if (s == "alpha") return StabKind::alpha;
    if (s == "mu") return StabKind::mu;
    if (s == "beta") return StabKind::beta;
    throw bad_flags_error("unknown stabilization map: " + s);
}

std::string to_string(StabKind k) {
    switch (k) {
        case StabKind::alpha: return "alpha";
        case StabKind::mu: return "mu";
        case StabKind::beta: return "beta";
    }
    return "?";
}

namespace {

// Collapses bridges until none remain. Fallback normalization for beta
// images; not expected to trigger (adding an edge cannot create a bridge).
ThornedGraph reduce_bridges(const ThornedGraph& g) {
    ThornedGraph cur = g;
    for (;;) {
        auto b = bridge_edges(cur);
        Forest f;
        for (std::size_t e = 0; e < b.size(); ++e)
            if (b[e]) f.edge_indices.push_back(static_cast<int>(e));
        if (f.edge_indices.empty()) return cur;
        // Bridges always form a forest.
        cur = collapse(cur, f);
    }
}

ThornedGraph stab_image_graph(StabKind kind, const ThornedGraph& g, bool& normalized) {
    normalized = false;
    ThornedGraph out = g;
    switch (kind) {
        case StabKind::alpha: {
            if (g.s < 1) throw unsupported_error("alpha needs s >= 1");
            out.edges.push_back({g.basepoint, g.basepoint});
            out.n = g.n + 1;
            break;
        }
        case StabKind::mu: {
            if (g.s < 1) throw unsupported_error("mu needs s >= 1");
            out.s = g.s + 1;
            out.marks.push_back(g.basepoint);
            break;
        }
        case StabKind::beta: {
            if (g.s < 2) throw unsupported_error("beta needs s >= 2");
            int u, v;
            if (g.s == 2) {
                u = g.basepoint;
                v = g.marks.back();
                out.basepoint = -1;
                out.marks.clear();
                out.s = 0;
            } else {
                u = g.marks[g.marks.size() - 2];
                v = g.marks[g.marks.size() - 1];
                out.marks.pop_back();
                out.marks.pop_back();
                out.s = g.s - 2;
            }
            out.edges.push_back({std::min(u, v), std::max(u, v)});
            out.n = g.n + 1;
            break;
        }
    }
    validate(out);
    if (out.n != g.n + (kind == StabKind::mu ? 0 : 1))
        throw structural_error("stabilization changed rank unexpectedly");
    if (!is_reduced(out)) {
        out = reduce_bridges(out);
        normalized = true;
    }
    if (!is_reduced(out))
        throw structural_error("stabilization image cannot be normalized to reduced form");
    return out;
}

} // namespace

ChainMap stabilization_chain_map(StabKind kind, const SpineComplex& src,
                                 const SpineComplex& tgt) {
    int en = kind == StabKind::mu ? src.n : src.n + 1;
    int es = kind == StabKind::alpha ? src.s : (kind == StabKind::mu ? src.s + 1 : src.s - 2);
    if (tgt.n != en || tgt.s != es)
        throw structural_error("target spine has wrong parameters for this map");
    if (tgt.chain.cells.size() < src.chain.cells.size())
        throw structural_error("target spine is not built deep enough");

    std::unordered_map<std::string, int> tgt_graph_by_hex;
    for (std::size_t i = 0; i < tgt.graphs.size(); ++i)
        tgt_graph_by_hex.emplace(tgt.graphs[i].hex, static_cast<int>(i));
    std::vector<std::vector<std::vector<int>>> tgt_egroups(tgt.graphs.size());
    for (std::size_t i = 0; i < tgt.graphs.size(); ++i)
        tgt_egroups[i] = edge_action_group(canonical_form(tgt.graphs[i].graph));
    std::vector<std::unordered_map<std::string, int>> tgt_index(tgt.chain.cells.size());
    for (std::size_t dd = 0; dd < tgt.chain.cells.size(); ++dd)
        for (std::size_t j = 0; j < tgt.chain.cells[dd].size(); ++j)
            tgt_index[dd].emplace(tgt.chain.cells[dd][j], static_cast<int>(j));

    ChainMap f;
    for (std::size_t dd = 0; dd < src.chain.cells.size(); ++dd) {
        std::vector<std::tuple<int, int, Int>> trips;
        for (std::size_t j = 0; j < src.cells[dd].size(); ++j) {
            const auto& cell = src.cells[dd][j];
            const auto& host = src.graphs[static_cast<std::size_t>(cell.graph_index)].graph;
            bool normalized = false;
            ThornedGraph img = stab_image_graph(kind, host, normalized);
            if (normalized && !cell.flag.empty())
                throw structural_error("cannot transport a flag through bridge normalization");
            // The new edge (alpha, beta) is appended, so flag indices carry over.
            auto cf = canonical_form(img);
            auto git = tgt_graph_by_hex.find(cf.hex);
            if (git == tgt_graph_by_hex.end())
                throw structural_error("stabilization image missing from target spine");
            std::string key;
            if (cell.flag.empty()) {
                key = cf.hex;
            } else {
                std::vector<std::vector<int>> mapped;
                for (const auto& part : cell.flag) {
                    std::vector<int> m;
                    for (int e : part) m.push_back(cf.edge_map[static_cast<std::size_t>(e)]);
                    std::sort(m.begin(), m.end());
                    mapped.push_back(std::move(m));
                }
                auto norm = normalize_flag(mapped,
                                           tgt_egroups[static_cast<std::size_t>(git->second)]);
                key = cell_key(cf.hex, norm);
            }
            auto it = tgt_index[dd].find(key);
            if (it == tgt_index[dd].end())
                throw structural_error("stabilization image cell missing from target spine");
            trips.push_back({it->second, static_cast<int>(j), Int(1)});
        }
        f.maps.push_back(SparseIntMatrix::from_triplets(
            static_cast<int>(tgt.chain.cells[dd].size()),
            static_cast<int>(src.chain.cells[dd].size()), trips));
    }
    if (!chain_map_commutes(f, src.chain, tgt.chain))
        throw structural_error("stabilization map does not commute with boundaries");
    return f;
}

} // namespace spinelab
