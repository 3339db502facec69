#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace oracles {

using spinelab::FreeAutomorphism;
using spinelab::SparseIntMatrix;
using spinelab::Word;

namespace {

std::vector<std::vector<int>> mult_matrix(const ThornedGraph& g) {
    std::vector<std::vector<int>> m(g.vertices, std::vector<int>(g.vertices, 0));
    for (auto [u, v] : g.edges) {
        if (u == v)
            ++m[u][u];
        else {
            ++m[u][v];
            ++m[v][u];
        }
    }
    return m;
}

std::vector<std::vector<int>> vertex_labels(const ThornedGraph& g) {
    std::vector<std::vector<int>> lab(g.vertices);
    if (g.has_basepoint()) lab[g.basepoint].push_back(0);
    for (std::size_t i = 0; i < g.marks.size(); ++i)
        lab[g.marks[i]].push_back(static_cast<int>(i) + 1);
    return lab;
}

} // namespace

bool brute_isomorphic(const ThornedGraph& a, const ThornedGraph& b) {
    if (a.vertices != b.vertices || a.edges.size() != b.edges.size() || a.s != b.s ||
        a.n != b.n)
        return false;
    auto ma = mult_matrix(a), mb = mult_matrix(b);
    auto la = vertex_labels(a), lb = vertex_labels(b);
    int V = a.vertices;
    std::vector<int> perm(V, -1), used(V, 0);
    std::function<bool(int)> rec = [&](int v) -> bool {
        if (v == V) return true;
        for (int w = 0; w < V; ++w) {
            if (used[w] || la[v] != lb[w]) continue;
            if (ma[v][v] != mb[w][w]) continue;
            bool ok = true;
            for (int u = 0; u < v && ok; ++u)
                if (ma[v][u] != mb[w][perm[u]]) ok = false;
            if (!ok) continue;
            perm[v] = w;
            used[w] = 1;
            if (rec(v + 1)) return true;
            used[w] = 0;
            perm[v] = -1;
        }
        return false;
    };
    return rec(0);
}

Int brute_aut_order(const ThornedGraph& g) {
    int V = g.vertices;
    int E = static_cast<int>(g.edges.size());
    auto m = mult_matrix(g);
    auto lab = vertex_labels(g);
    int loops = 0;
    for (auto [u, v] : g.edges)
        if (u == v) ++loops;

    std::vector<int> vperm(V);
    std::iota(vperm.begin(), vperm.end(), 0);
    Int count = 0;
    do {
        bool ok = true;
        for (int v = 0; v < V && ok; ++v) {
            if (lab[v] != lab[vperm[v]]) ok = false;
            for (int u = 0; u <= v && ok; ++u)
                if (m[v][u] != m[vperm[v]][vperm[u]]) ok = false;
        }
        if (!ok) continue;
        // Count edge bijections compatible with this vertex map.
        std::vector<int> eperm(E);
        std::iota(eperm.begin(), eperm.end(), 0);
        long long edge_maps = 0;
        do {
            bool good = true;
            for (int e = 0; e < E && good; ++e) {
                auto [u, v] = g.edges[e];
                auto [x, y] = g.edges[eperm[e]];
                int pu = vperm[u], pv = vperm[v];
                if (!((pu == x && pv == y) || (pu == y && pv == x))) good = false;
            }
            if (good) ++edge_maps;
        } while (std::next_permutation(eperm.begin(), eperm.end()));
        count += Int(edge_maps) << loops;  // loop traversals flip freely
    } while (std::next_permutation(vperm.begin(), vperm.end()));
    return count;
}

namespace {

// Emits every connected multigraph with V vertices and E edges whose valence
// profile could survive the reduced filter: at most `spec` vertices of
// valence <= 2, none of valence 0 (when V > 1). Valence profiles are
// enumerated ascending and matrices are filled against exact row targets; a
// final recount of valences cross-checks the bookkeeping. Deduplication and
// decoration happen in the caller, so overgeneration is harmless here.
void raw_graphs(int V, int E, int spec,
                const std::function<void(const ThornedGraph&)>& emit) {
    std::vector<int> profile(V, 0);
    std::vector<std::vector<int>> m(V, std::vector<int>(V, 0));

    std::function<void(int, int)> fill;
    auto leaf = [&] {
        ThornedGraph g;
        g.vertices = V;
        g.s = 0;
        g.basepoint = -1;
        for (int a = 0; a < V; ++a) {
            for (int l = 0; l < m[a][a]; ++l) g.edges.push_back({a, a});
            for (int b = a + 1; b < V; ++b)
                for (int l = 0; l < m[a][b]; ++l) g.edges.push_back({a, b});
        }
        g.n = E - V + 1;
        // Independent recount of the valences against the chosen profile.
        auto val = spinelab::valences(g);
        for (int v = 0; v < V; ++v)
            if (val[v] != profile[v])
                throw spinelab::structural_error("oracle: valence bookkeeping drifted");
        if (spinelab::is_connected(g)) emit(g);
    };

    std::vector<int> rem(V, 0);
    fill = [&](int i, int j) {
        if (i == V) {
            leaf();
            return;
        }
        if (j == V) {
            if (rem[i] == 0) fill(i + 1, i + 1);
            return;
        }
        if (i == j) {
            int max_loops = rem[i] / 2;
            for (int l = max_loops; l >= 0; --l) {  // descending, unlike production
                m[i][i] = l;
                rem[i] -= 2 * l;
                fill(i, j + 1);
                rem[i] += 2 * l;
                m[i][i] = 0;
            }
            return;
        }
        int cap = std::min(rem[i], rem[j]);
        if (j == V - 1 && rem[i] != 0) {
            // row must close here
            int c = rem[i];
            if (c > rem[j]) return;
            m[i][j] = c;
            rem[i] -= c;
            rem[j] -= c;
            fill(i, j + 1);
            rem[i] += c;
            rem[j] += c;
            m[i][j] = 0;
            return;
        }
        for (int c = cap; c >= 0; --c) {
            m[i][j] = c;
            rem[i] -= c;
            rem[j] -= c;
            fill(i, j + 1);
            rem[i] += c;
            rem[j] += c;
            m[i][j] = 0;
        }
    };

    // Ascending valence profiles with the filter-implied constraints.
    std::function<void(int, int, int, int)> profiles = [&](int idx, int min_val, int left,
                                                           int lows) {
        if (idx == V) {
            if (left != 0) return;
            for (int v = 0; v < V; ++v) rem[v] = profile[v];
            fill(0, 0);
            return;
        }
        int parts_after = V - idx - 1;
        for (int d = min_val; d <= left; ++d) {
            if (V > 1 && d == 0) continue;
            if (d == 0 && left > 0 && V == 1) continue;
            int lows2 = lows + (d <= 2 ? 1 : 0);
            if (lows2 > spec) {
                if (d <= 2) continue;
            }
            // ascending: remaining parts are >= d
            if (static_cast<long long>(d) * parts_after > left - d) continue;
            profile[idx] = d;
            profiles(idx + 1, d, left - d, lows2);
        }
    };
    profiles(0, V == 1 ? 0 : 1, 2 * E, 0);
}

} // namespace

std::vector<ThornedGraph> naive_reduced_classes(int n, int s) {
    std::vector<ThornedGraph> reps;
    std::map<std::string, std::vector<std::size_t>> buckets;
    auto bucket_key = [](const ThornedGraph& g) {
        std::vector<std::vector<int>> prof;
        auto val = spinelab::valences(g);
        auto lab = vertex_labels(g);
        for (int v = 0; v < g.vertices; ++v) {
            std::vector<int> p{val[v]};
            p.insert(p.end(), lab[v].begin(), lab[v].end());
            prof.push_back(std::move(p));
        }
        std::sort(prof.begin(), prof.end());
        std::string key = std::to_string(g.vertices) + ";";
        for (const auto& p : prof) {
            for (int x : p) key += std::to_string(x) + ",";
            key += "|";
        }
        return key;
    };
    int vmax = 2 * n + s - 1;  // the spec bound, inclusive on purpose
    for (int V = 1; V <= vmax; ++V) {
        int E = V + n - 1;
        if (E < 0) continue;
        raw_graphs(V, E, s, [&](const ThornedGraph& base) {
            // All basepoint/mark placements.
            std::vector<int> place(static_cast<std::size_t>(std::max(s, 0)), 0);
            std::function<void(int)> assign = [&](int t) {
                if (t == s) {
                    ThornedGraph g = base;
                    g.s = s;
                    if (s >= 1) {
                        g.basepoint = place[0];
                        g.marks.assign(place.begin() + 1, place.end());
                    }
                    if (!spinelab::is_reduced(g)) return;
                    if (g.vertices >= vmax)
                        throw spinelab::structural_error(
                            "oracle: reduced graph at the vertex bound");
                    auto key = bucket_key(g);
                    for (std::size_t idx : buckets[key])
                        if (brute_isomorphic(g, reps[idx])) return;
                    buckets[key].push_back(reps.size());
                    reps.push_back(g);
                    return;
                }
                for (int v = 0; v < base.vertices; ++v) {
                    place[static_cast<std::size_t>(t)] = v;
                    assign(t + 1);
                }
            };
            if (s == 0) {
                assign(0);
            } else {
                assign(0);
            }
        });
    }
    return reps;
}

std::vector<std::vector<int>> naive_forests(const ThornedGraph& g) {
    // Forest test: edges == touched vertices - components, computed by DFS.
    int E = static_cast<int>(g.edges.size());
    std::vector<std::vector<int>> out;
    for (unsigned mask = 1; mask < (1u << E); ++mask) {
        std::vector<int> sub;
        bool has_loop = false;
        for (int e = 0; e < E; ++e)
            if (mask & (1u << e)) {
                sub.push_back(e);
                if (g.edges[e].first == g.edges[e].second) has_loop = true;
            }
        if (has_loop) continue;
        std::set<int> touched;
        for (int e : sub) {
            touched.insert(g.edges[e].first);
            touched.insert(g.edges[e].second);
        }
        // count components of the subgraph on touched vertices
        std::map<int, std::vector<std::pair<int, int>>> adj;
        for (int e : sub) {
            adj[g.edges[e].first].push_back({g.edges[e].second, e});
            adj[g.edges[e].second].push_back({g.edges[e].first, e});
        }
        std::set<int> seen;
        int comps = 0;
        for (int v : touched) {
            if (seen.count(v)) continue;
            ++comps;
            std::vector<int> stack{v};
            seen.insert(v);
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                for (auto [y, e] : adj[x])
                    if (!seen.count(y)) {
                        seen.insert(y);
                        stack.push_back(y);
                    }
            }
        }
        if (static_cast<int>(sub.size()) == static_cast<int>(touched.size()) - comps)
            out.push_back(sub);
    }
    return out;
}

long long naive_rational_rank(const SparseIntMatrix& m) {
    std::vector<std::vector<Rat>> a(m.rows, std::vector<Rat>(m.cols, Rat(0)));
    for (int i = 0; i < m.rows; ++i)
        for (const auto& [j, v] : m.row_data[i]) a[i][j] = Rat(v);
    int rank = 0;
    for (int c = 0; c < m.cols && rank < m.rows; ++c) {
        int pivot = -1;
        for (int r = rank; r < m.rows; ++r)
            if (a[r][c] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(a[rank], a[pivot]);
        for (int r = 0; r < m.rows; ++r) {
            if (r == rank || a[r][c] == 0) continue;
            Rat f = a[r][c] / a[rank][c];
            for (int j = c; j < m.cols; ++j) a[r][j] -= f * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

namespace {

Int leibniz_det(const std::vector<std::vector<Int>>& a) {
    int n = static_cast<int>(a.size());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Int det = 0;
    // Track permutation sign by counting inversions.
    do {
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inv;
        Int term = inv % 2 == 0 ? 1 : -1;
        for (int i = 0; i < n && term != 0; ++i) term *= a[i][perm[i]];
        det += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

} // namespace

Int brute_determinant(const SparseIntMatrix& m) {
    if (m.rows != m.cols) throw spinelab::structural_error("determinant of non-square");
    std::vector<std::vector<Int>> a(m.rows, std::vector<Int>(m.cols, Int(0)));
    for (int i = 0; i < m.rows; ++i)
        for (const auto& [j, v] : m.row_data[i]) a[i][j] = v;
    return leibniz_det(a);
}

std::vector<Int> minor_gcd_divisors(const SparseIntMatrix& m) {
    std::vector<std::vector<Int>> a(m.rows, std::vector<Int>(m.cols, Int(0)));
    for (int i = 0; i < m.rows; ++i)
        for (const auto& [j, v] : m.row_data[i]) a[i][j] = v;
    int kmax = std::min(m.rows, m.cols);
    std::vector<Int> dets{Int(1)};  // D_0
    for (int k = 1; k <= kmax; ++k) {
        Int g = 0;
        std::vector<int> rows(k), cols(k);
        std::function<void(int, int)> pick_rows = [&](int idx, int start) {
            if (idx == k) {
                std::function<void(int, int)> pick_cols = [&](int jdx, int jstart) {
                    if (jdx == k) {
                        std::vector<std::vector<Int>> sub(k, std::vector<Int>(k));
                        for (int i = 0; i < k; ++i)
                            for (int j = 0; j < k; ++j) sub[i][j] = a[rows[i]][cols[j]];
                        g = spinelab::int_gcd(g, leibniz_det(sub));
                        return;
                    }
                    for (int j = jstart; j < m.cols; ++j) {
                        cols[jdx] = j;
                        pick_cols(jdx + 1, j + 1);
                    }
                };
                pick_cols(0, 0);
                return;
            }
            for (int i = start; i < m.rows; ++i) {
                rows[idx] = i;
                pick_rows(idx + 1, i + 1);
            }
        };
        pick_rows(0, 0);
        dets.push_back(g);
        if (g == 0) break;
    }
    std::vector<Int> divisors;
    for (std::size_t k = 1; k < dets.size(); ++k) {
        if (dets[k] == 0) break;
        divisors.push_back(dets[k] / dets[k - 1]);
    }
    return divisors;
}

bool brute_is_inner(const FreeAutomorphism& phi, int len) {
    int n = phi.n;
    std::vector<int> letters;
    std::function<bool(int)> rec = [&](int depth) -> bool {
        Word g = Word::reduced({letters.begin(), letters.end()});
        bool all = true;
        for (int j = 1; j <= n && all; ++j) {
            Word conj = Word::concat(Word::concat(g, Word::generator(j)), g.inverse());
            if (!(conj == phi.images[static_cast<std::size_t>(j) - 1])) all = false;
        }
        if (all) return true;
        if (depth == len) return false;
        for (int x = -n; x <= n; ++x) {
            if (x == 0) continue;
            letters.push_back(x);
            if (rec(depth + 1)) return true;
            letters.pop_back();
        }
        return false;
    };
    return rec(0);
}

} // namespace oracles
