#include "spinelab/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <unordered_map>

#include "spinelab/cache.hpp"
#include "spinelab/parallel.hpp"

namespace spinelab {

void validate(const EnumerationQuery& q) {
    if (q.n == 0) throw unsupported_error("rank 0 is not supported");
    if (q.n < 0 || q.s < 0) throw bad_flags_error("rank and mark count must be nonnegative");
    if (q.require_basepoint_loop && q.forbid_basepoint_loop)
        throw bad_flags_error("cannot both require and forbid basepoint loops");
    if (q.s == 0) {
        if (q.degree_max) throw bad_flags_error("degree filter undefined without a basepoint");
        if (q.require_basepoint_loop || q.forbid_basepoint_loop)
            throw bad_flags_error("basepoint loop filter undefined without a basepoint");
    }
}

ojson query_to_json(const EnumerationQuery& q) {
    ojson j;
    j["n"] = q.n;
    j["s"] = q.s;
    j["reduced"] = q.reduced;
    if (q.degree_max)
        j["degree_max"] = *q.degree_max;
    else
        j["degree_max"] = nullptr;
    j["require_basepoint_loop"] = q.require_basepoint_loop;
    j["forbid_basepoint_loop"] = q.forbid_basepoint_loop;
    return j;
}

namespace {

// Descending sequences of length parts summing to total with entries in
// [min_val, max_val], and at most low_cap entries <= 2.
void degree_sequences(int total, int parts, int max_val, int min_val, int low_cap,
                      std::vector<int>& cur,
                      const std::function<void(const std::vector<int>&)>& emit) {
    if (parts == 0) {
        if (total == 0) emit(cur);
        return;
    }
    for (int d = std::min(max_val, total); d >= min_val; --d) {
        if (d * parts < total) break;  // descending: rest cannot reach total
        int low = d <= 2 ? 1 : 0;
        if (low > low_cap) continue;
        cur.push_back(d);
        degree_sequences(total - d, parts - 1, d, min_val, low_cap - low, cur, emit);
        cur.pop_back();
    }
}

// All multigraphs with the given degree sequence (loops allowed, loops count
// twice), emitted as s=0 graphs via the upper-triangular multiplicity matrix.
void graphs_with_degrees(const std::vector<int>& deg,
                         const std::function<void(const ThornedGraph&)>& emit) {
    int V = static_cast<int>(deg.size());
    std::vector<std::vector<int>> m(V, std::vector<int>(V, 0));
    std::vector<int> rem = deg;

    std::function<void(int, int)> rec = [&](int i, int j) {
        if (i == V) {
            ThornedGraph g;
            g.vertices = V;
            g.s = 0;
            g.basepoint = -1;
            for (int a = 0; a < V; ++a) {
                for (int l = 0; l < m[a][a]; ++l) g.edges.push_back({a, a});
                for (int b = a + 1; b < V; ++b)
                    for (int l = 0; l < m[a][b]; ++l) g.edges.push_back({a, b});
            }
            g.n = static_cast<int>(g.edges.size()) - V + 1;
            if (is_connected(g)) emit(g);
            return;
        }
        if (j == V) {
            if (rem[i] == 0) rec(i + 1, i + 1);
            return;
        }
        if (i == j) {
            // Loop cell; forced when it is also the last cell of the last row.
            if (i == V - 1) {
                if (rem[i] % 2 == 0) {
                    m[i][i] = rem[i] / 2;
                    int save = rem[i];
                    rem[i] = 0;
                    rec(i + 1, i + 1);
                    rem[i] = save;
                    m[i][i] = 0;
                }
                return;
            }
            for (int l = 0; 2 * l <= rem[i]; ++l) {
                m[i][i] = l;
                rem[i] -= 2 * l;
                rec(i, j + 1);
                rem[i] += 2 * l;
            }
            m[i][i] = 0;
            return;
        }
        if (j == V - 1) {
            // Last cell of the row is forced to close the row sum.
            int v = rem[i];
            if (v <= rem[j]) {
                m[i][j] = v;
                rem[i] -= v;
                rem[j] -= v;
                rec(i, j + 1);
                rem[i] += v;
                rem[j] += v;
                m[i][j] = 0;
            }
            return;
        }
        int cap = std::min(rem[i], rem[j]);
        for (int v = 0; v <= cap; ++v) {
            m[i][j] = v;
            rem[i] -= v;
            rem[j] -= v;
            rec(i, j + 1);
            rem[i] += v;
            rem[j] += v;
        }
        m[i][j] = 0;
        return;
    };
    rec(0, 0);
}

bool bridgeless(const ThornedGraph& g) {
    for (bool b : bridge_edges(g))
        if (b) return false;
    return true;
}

} // namespace

const std::vector<ThornedGraph>& core_graphs(int n, bool allow_bridges) {
    static std::map<std::pair<int, bool>, std::vector<ThornedGraph>> memo;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(n, allow_bridges);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    if (n < 2) throw unsupported_error("core graphs need rank >= 2");
    std::map<std::string, ThornedGraph> classes;
    for (int V = 1; V <= 2 * n - 2; ++V) {
        int E = V + n - 1;
        std::vector<int> cur;
        degree_sequences(2 * E, V, 2 * E, 3, 0, cur, [&](const std::vector<int>& deg) {
            graphs_with_degrees(deg, [&](const ThornedGraph& g) {
                if (!allow_bridges && !bridgeless(g)) return;
                auto cf = canonical_form(g);
                classes.emplace(cf.hex, cf.graph);
            });
        });
    }
    std::vector<ThornedGraph> out;
    out.reserve(classes.size());
    for (auto& [hex, g] : classes) out.push_back(std::move(g));
    return memo.emplace(key, std::move(out)).first->second;
}

namespace {

struct CandidateSink {
    const EnumerationQuery& q;
    std::map<std::string, ThornedGraph>& classes;

    // Exact filters; the caller may have pre-pruned on the same predicates.
    void offer(const ThornedGraph& g) {
        if (q.degree_max && degree_of(g) > *q.degree_max) return;
        if (q.require_basepoint_loop && basepoint_loop_count(g) == 0) return;
        if (q.forbid_basepoint_loop && basepoint_loop_count(g) > 0) return;
        auto cf = canonical_form(g);
        classes.emplace(cf.hex, cf.graph);
    }
};

// Decorates one core graph with subdivision points and token placements.
// Tokens are the basepoint plus the s-1 mark labels; every subdivision vertex
// must carry at least one token, which is exactly the reducedness constraint.
void decorate_core(const ThornedGraph& core, const EnumerationQuery& q, CandidateSink& sink) {
    int s = q.s;
    if (s == 0) {
        sink.offer(core);
        return;
    }
    int EC = static_cast<int>(core.edges.size());
    std::vector<int> pattern(static_cast<std::size_t>(EC), 0);

    auto run_pattern = [&](int extra) {
        // Build the subdivided skeleton.
        ThornedGraph g;
        g.vertices = core.vertices + extra;
        g.s = 0;
        g.basepoint = -1;
        int next = core.vertices;
        std::vector<char> is_subdiv(static_cast<std::size_t>(g.vertices), 0);
        for (int e = 0; e < EC; ++e) {
            auto [u, v] = core.edges[e];
            int k = pattern[static_cast<std::size_t>(e)];
            if (k == 0) {
                g.edges.push_back({u, v});
                continue;
            }
            int prev = u;
            for (int i = 0; i < k; ++i) {
                is_subdiv[static_cast<std::size_t>(next)] = 1;
                g.edges.push_back({std::min(prev, next), std::max(prev, next)});
                prev = next++;
            }
            g.edges.push_back({std::min(prev, v), std::max(prev, v)});
        }
        g.n = static_cast<int>(g.edges.size()) - g.vertices + 1;

        auto val = valences(g);
        std::vector<char> has_loop(static_cast<std::size_t>(g.vertices), 0);
        for (auto [u, v] : g.edges)
            if (u == v) has_loop[static_cast<std::size_t>(u)] = 1;

        // Token placement: position 0 is the basepoint, 1..s-1 the labels.
        std::vector<int> place(static_cast<std::size_t>(s), 0);
        std::function<void(int)> assign = [&](int t) {
            if (t == s) {
                std::vector<int> tokens_at(static_cast<std::size_t>(g.vertices), 0);
                for (int x : place) ++tokens_at[static_cast<std::size_t>(x)];
                for (int v = 0; v < g.vertices; ++v)
                    if (is_subdiv[static_cast<std::size_t>(v)] && tokens_at[static_cast<std::size_t>(v)] == 0)
                        return;
                int bp = place[0];
                if (q.degree_max) {
                    int w0 = val[static_cast<std::size_t>(bp)];
                    for (int i = 1; i < s; ++i)
                        if (place[static_cast<std::size_t>(i)] == bp) ++w0;
                    if (2 * q.n + s - 1 - w0 > *q.degree_max) return;
                }
                if (q.require_basepoint_loop && !has_loop[static_cast<std::size_t>(bp)]) return;
                if (q.forbid_basepoint_loop && has_loop[static_cast<std::size_t>(bp)]) return;
                ThornedGraph cand = g;
                cand.s = s;
                cand.basepoint = bp;
                cand.marks.assign(place.begin() + 1, place.end());
                sink.offer(cand);
                return;
            }
            for (int v = 0; v < g.vertices; ++v) {
                place[static_cast<std::size_t>(t)] = v;
                assign(t + 1);
            }
        };
        assign(0);
    };

    std::function<void(int, int)> patterns = [&](int e, int left) {
        if (e == EC) {
            int extra = 0;
            for (int k : pattern) extra += k;
            run_pattern(extra);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            pattern[static_cast<std::size_t>(e)] = k;
            patterns(e + 1, left - k);
        }
        pattern[static_cast<std::size_t>(e)] = 0;
    };
    patterns(0, s);
}

// Rank-1 reduced graphs are decorated cycles: every vertex has valence 2 and
// must carry a token.
void enumerate_rank1(const EnumerationQuery& q, CandidateSink& sink) {
    int s = q.s;
    if (s == 0) return;  // the bare circle has an unmarked valence-2 vertex
    for (int k = 1; k <= s; ++k) {
        ThornedGraph g;
        g.vertices = k;
        g.s = 0;
        g.basepoint = -1;
        if (k == 1) {
            g.edges.push_back({0, 0});
        } else {
            for (int i = 0; i < k; ++i) {
                int u = i, v = (i + 1) % k;
                g.edges.push_back({std::min(u, v), std::max(u, v)});
            }
        }
        g.n = 1;
        std::vector<int> place(static_cast<std::size_t>(s), 0);
        std::function<void(int)> assign = [&](int t) {
            if (t == s) {
                std::vector<int> tokens_at(static_cast<std::size_t>(k), 0);
                for (int x : place) ++tokens_at[static_cast<std::size_t>(x)];
                for (int v = 0; v < k; ++v)
                    if (tokens_at[static_cast<std::size_t>(v)] == 0) return;
                ThornedGraph cand = g;
                cand.s = s;
                cand.basepoint = place[0];
                cand.marks.assign(place.begin() + 1, place.end());
                sink.offer(cand);
                return;
            }
            for (int v = 0; v < k; ++v) {
                place[static_cast<std::size_t>(t)] = v;
                assign(t + 1);
            }
        };
        assign(0);
    }
}

// Direct generator for the bridges-allowed pointed mode: degree sequences
// admit valence 1 and 2 on up to s special vertices. Kept behind the reduced
// flag and budget-guarded; no downstream construction uses it.
void enumerate_direct(const EnumerationQuery& q, CandidateSink& sink, long long budget) {
    int n = q.n, s = q.s;
    int vmax = 2 * n + 2 * s - 2;
    if (vmax > 12) throw budget_error("non-reduced enumeration bound too large");
    long long candidates = 0;
    for (int V = 1; V <= vmax; ++V) {
        int E = V + n - 1;
        std::vector<int> cur;
        degree_sequences(2 * E, V, 2 * E, 1, s, cur, [&](const std::vector<int>& deg) {
            graphs_with_degrees(deg, [&](const ThornedGraph& g) {
                auto val = valences(g);
                std::vector<int> place(static_cast<std::size_t>(s), 0);
                std::function<void(int)> assign = [&](int t) {
                    if (t == s) {
                        if (++candidates > budget)
                            throw budget_error("candidate budget exceeded");
                        std::vector<int> tokens_at(static_cast<std::size_t>(V), 0);
                        for (int x : place) ++tokens_at[static_cast<std::size_t>(x)];
                        for (int v = 0; v < V; ++v)
                            if (val[static_cast<std::size_t>(v)] < 3 &&
                                tokens_at[static_cast<std::size_t>(v)] == 0)
                                return;
                        ThornedGraph cand = g;
                        cand.s = s;
                        cand.basepoint = place[0];
                        cand.marks.assign(place.begin() + 1, place.end());
                        // The reduced-mode vertex bound must never be
                        // attainable by a reduced graph.
                        if (V >= 2 * n + s - 1 && is_reduced(cand))
                            throw structural_error("vertex bound violated by a reduced graph");
                        sink.offer(cand);
                        return;
                    }
                    for (int v = 0; v < V; ++v) {
                        place[static_cast<std::size_t>(t)] = v;
                        assign(t + 1);
                    }
                };
                assign(0);
            });
        });
    }
}

std::string cache_key_for(const EnumerationQuery& q) {
    ojson j = query_to_json(q);
    j["version"] = std::string(kVersion);
    return fnv1a_hex(j.dump());
}

} // namespace

std::vector<EnumeratedClass> enumerate_graphs(const EnumerationQuery& q,
                                              const EnumerateOptions& opts) {
    validate(q);

    if (opts.use_cache) {
        auto text = cache_load(cache_key_for(q), opts.cache_dir);
        if (text) {
            std::vector<EnumeratedClass> out;
            std::size_t start = 0;
            while (start < text->size()) {
                std::size_t end = text->find('\n', start);
                if (end == std::string::npos) end = text->size();
                std::string line = text->substr(start, end - start);
                start = end + 1;
                if (line.empty()) continue;
                ojson j = ojson::parse(line);
                EnumeratedClass c;
                c.hex = j.at("canonical").get<std::string>();
                c.graph = graph_from_json(j.at("graph"));
                out.push_back(std::move(c));
            }
            return out;
        }
    }

    std::map<std::string, ThornedGraph> classes;
    CandidateSink sink{q, classes};

    if (q.reduced) {
        if (q.n == 1) {
            enumerate_rank1(q, sink);
        } else {
            const auto& cores = core_graphs(q.n, false);
            if (opts.threads > 1 && q.s >= 1) {
                std::vector<std::map<std::string, ThornedGraph>> partial(cores.size());
                parallel_for(cores.size(), opts.threads, [&](std::size_t i) {
                    CandidateSink local{q, partial[i]};
                    decorate_core(cores[i], q, local);
                });
                for (auto& p : partial)
                    for (auto& [hex, g] : p) classes.emplace(hex, std::move(g));
            } else {
                for (const auto& core : cores) decorate_core(core, q, sink);
            }
        }
    } else {
        if (q.s == 0 && q.n >= 2) {
            const auto& cores = core_graphs(q.n, true);
            for (const auto& core : cores) sink.offer(core);
        } else {
            enumerate_direct(q, sink, opts.budget);
        }
    }

    if (static_cast<long long>(classes.size()) > opts.budget)
        throw budget_error("class count exceeds budget");

    std::vector<EnumeratedClass> out;
    out.reserve(classes.size());
    for (auto& [hex, g] : classes) {
        if (q.reduced && !is_reduced(g))
            throw structural_error("enumerator emitted a non-reduced graph in reduced mode");
        out.push_back({hex, std::move(g)});
    }

    if (opts.use_cache) {
        std::string blob;
        for (const auto& c : out) {
            ojson line;
            line["canonical"] = c.hex;
            line["graph"] = graph_to_json(c.graph);
            blob += line.dump();
            blob.push_back('\n');
        }
        cache_store(cache_key_for(q), blob, opts.cache_dir);
    }
    return out;
}

std::vector<Forest> enumerate_forests(const ThornedGraph& g) {
    validate(g);
    std::vector<int> nonloop;
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        if (g.edges[e].first != g.edges[e].second) nonloop.push_back(static_cast<int>(e));
    std::vector<Forest> out;
    std::vector<int> parent(static_cast<std::size_t>(g.vertices));
    std::function<int(std::vector<int>&, int)> find = [&](std::vector<int>& p, int x) {
        while (p[static_cast<std::size_t>(x)] != x) {
            p[static_cast<std::size_t>(x)] = p[static_cast<std::size_t>(p[static_cast<std::size_t>(x)])];
            x = p[static_cast<std::size_t>(x)];
        }
        return x;
    };
    std::vector<int> chosen;
    std::function<void(std::size_t, std::vector<int>)> rec = [&](std::size_t idx,
                                                                 std::vector<int> uf) {
        if (!chosen.empty()) out.push_back(Forest{chosen});
        for (std::size_t i = idx; i < nonloop.size(); ++i) {
            int e = nonloop[i];
            auto [u, v] = g.edges[static_cast<std::size_t>(e)];
            std::vector<int> uf2 = uf;
            int ru = find(uf2, u), rv = find(uf2, v);
            if (ru == rv) continue;
            uf2[static_cast<std::size_t>(rv)] = ru;
            chosen.push_back(e);
            rec(i + 1, std::move(uf2));
            chosen.pop_back();
        }
    };
    std::vector<int> uf0(static_cast<std::size_t>(g.vertices));
    for (int v = 0; v < g.vertices; ++v) uf0[static_cast<std::size_t>(v)] = v;
    rec(0, std::move(uf0));
    std::sort(out.begin(), out.end(), [](const Forest& a, const Forest& b) {
        if (a.edge_indices.size() != b.edge_indices.size())
            return a.edge_indices.size() < b.edge_indices.size();
        return a.edge_indices < b.edge_indices;
    });
    return out;
}

std::vector<ForestFlag> enumerate_flags(const ThornedGraph& g, int p) {
    if (p < 1) throw structural_error("flag length must be >= 1");
    auto forests = enumerate_forests(g);
    std::size_t F = forests.size();
    std::vector<std::vector<std::size_t>> supersets(F);
    for (std::size_t i = 0; i < F; ++i)
        for (std::size_t j = 0; j < F; ++j)
            if (i != j &&
                forests[i].edge_indices.size() < forests[j].edge_indices.size() &&
                forest_subset(forests[i], forests[j]))
                supersets[i].push_back(j);
    std::vector<ForestFlag> out;
    std::vector<std::size_t> chain;
    std::function<void(int)> rec = [&](int depth) {
        if (depth == p) {
            ForestFlag fl;
            for (std::size_t i : chain) fl.flags.push_back(forests[i]);
            out.push_back(std::move(fl));
            return;
        }
        if (chain.empty()) {
            for (std::size_t i = 0; i < F; ++i) {
                chain.push_back(i);
                rec(depth + 1);
                chain.pop_back();
            }
        } else {
            for (std::size_t j : supersets[chain.back()]) {
                chain.push_back(j);
                rec(depth + 1);
                chain.pop_back();
            }
        }
    };
    rec(0);
    return out;
}

LemmaReport verify_basepoint_loop_lemma(int n_max, int s_max, const EnumerateOptions& opts) {
    if (n_max < 1 || s_max < 1) throw bad_flags_error("lemma check needs n_max, s_max >= 1");
    LemmaReport report;
    report.n_max = n_max;
    report.s_max = s_max;
    for (int n = 1; n <= n_max; ++n) {
        for (int s = 1; s <= s_max; ++s) {
            int sharp = (n + 1) / 2;  // ceil(n/2)
            EnumerationQuery q;
            q.n = n;
            q.s = s;
            q.reduced = true;
            q.degree_max = sharp;
            auto classes = enumerate_graphs(q, opts);
            LemmaCase c;
            c.n = n;
            c.s = s;
            for (const auto& cls : classes) {
                int k = degree_of(cls.graph);
                int loops = basepoint_loop_count(cls.graph);
                if (2 * k < n) {
                    ++c.low_degree_classes;
                    if (loops == 0) c.violations.push_back(cls.hex);
                } else if (k == sharp && loops == 0 && !c.sharp_witness) {
                    c.sharp_witness = cls.hex;
                }
            }
            if (!c.violations.empty()) report.ok = false;
            report.cases.push_back(std::move(c));
        }
    }
    return report;
}

} // namespace spinelab
