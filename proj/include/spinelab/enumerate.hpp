#ifndef SPINELAB_ENUMERATE_HPP
#define SPINELAB_ENUMERATE_HPP

#include <optional>
#include <string>
#include <vector>

#include "spinelab/canonical.hpp"
#include "spinelab/graph.hpp"

namespace spinelab {

struct EnumerationQuery {
    int n = 1;
    int s = 0;
    bool reduced = true;
    std::optional<int> degree_max;
    bool require_basepoint_loop = false;
    bool forbid_basepoint_loop = false;
};

void validate(const EnumerationQuery& q);
ojson query_to_json(const EnumerationQuery& q);

struct EnumerateOptions {
    int threads = 1;
    long long budget = 2000000;
    bool use_cache = false;
    std::string cache_dir;  // empty: resolve via SPINELAB_CACHE / default
};

struct EnumeratedClass {
    std::string hex;     // canonical bytes
    ThornedGraph graph;  // canonical representative
};

// One representative per label-preserving isomorphism class satisfying all
// filters, sorted by canonical bytes. Deterministic for any thread count.
std::vector<EnumeratedClass> enumerate_graphs(const EnumerationQuery& q,
                                              const EnumerateOptions& opts = {});

// Connected multigraphs of rank n with every valence >= 3 (no distinguished
// points), one per isomorphism class. The building blocks for reduced
// enumeration; memoized per (n, allow_bridges).
const std::vector<ThornedGraph>& core_graphs(int n, bool allow_bridges);

// All nonempty forests of non-loop edges, in index-lexicographic order.
std::vector<Forest> enumerate_forests(const ThornedGraph& g);

// All strictly increasing chains of p nonempty forests.
std::vector<ForestFlag> enumerate_flags(const ThornedGraph& g, int p);

struct LemmaCase {
    int n = 0, s = 0;
    long long low_degree_classes = 0;  // classes with degree < n/2
    std::vector<std::string> violations;  // canonical hex of offenders
    std::optional<std::string> sharp_witness;  // degree ceil(n/2), no basepoint loop
};

struct LemmaReport {
    int n_max = 0, s_max = 0;
    std::vector<LemmaCase> cases;
    bool ok = true;
};

// Exhaustive check that every reduced graph of degree < n/2 has a basepoint
// loop, with sharpness witnesses one degree higher.
LemmaReport verify_basepoint_loop_lemma(int n_max, int s_max,
                                        const EnumerateOptions& opts = {});

} // namespace spinelab

#endif
