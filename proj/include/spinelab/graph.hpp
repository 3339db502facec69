#ifndef SPINELAB_GRAPH_HPP
#define SPINELAB_GRAPH_HPP

#include <string>
#include <utility>
#include <vector>

#include "spinelab/errors.hpp"

#include <json.hpp>

namespace spinelab {

using ojson = nlohmann::ordered_json;

// A finite connected multigraph with a basepoint and s-1 marked points.
// Thorns are implicit: each entry of `marks` stands for one free edge attached
// at that vertex. They are never stored as edges and never collapse.
//
// s counts distinguished points including the basepoint. s = 0 means no
// basepoint at all (the unpointed case); then `marks` is empty and
// `basepoint` is -1.
struct ThornedGraph {
    int n = 0;         // declared rank; must equal edges - vertices + 1
    int s = 0;         // distinguished point count
    int vertices = 0;
    std::vector<std::pair<int, int>> edges;  // unordered pairs, stored u <= v
    int basepoint = -1;                      // valid iff s >= 1
    std::vector<int> marks;                  // size s-1; marks[i] hosts point i+1

    bool has_basepoint() const { return s >= 1; }
};

// Throws structural_error unless all type invariants hold (connectivity, rank
// consistency, index ranges, mark count).
void validate(const ThornedGraph& g);

bool is_connected(const ThornedGraph& g);

// Valence among stored edges; loops count twice.
int valence(const ThornedGraph& g, int v);
std::vector<int> valences(const ThornedGraph& g);

int mark_count_at(const ThornedGraph& g, int v);

int rank_of(const ThornedGraph& g);

// |v_0|: basepoint valence among stored edges plus marks sitting at the
// basepoint (each implicit thorn contributes one).
int basepoint_weight(const ThornedGraph& g);

// 2n + s - 1 - |v_0|. Undefined without a basepoint.
int degree_of(const ThornedGraph& g);

int basepoint_loop_count(const ThornedGraph& g);

// bridge[i] true iff stored edge i separates the graph. Loops are never
// bridges; neither is any edge with a parallel partner.
std::vector<bool> bridge_edges(const ThornedGraph& g);

// No stored edge is a bridge, and every vertex that is neither the basepoint
// nor marked has valence >= 3.
bool is_reduced(const ThornedGraph& g);

// Checks the trivalent-normalization identity rank = 2*degree - E(G_1), where
// G_1 is spanned by the non-basepoint vertices and includes the implicit thorn
// edges based there. Applicable only when the graph has a basepoint, no
// basepoint loops, and every non-basepoint vertex has stored valence plus
// marks equal to 3. Throws not_applicable_error otherwise.
bool proof_identity_check(const ThornedGraph& g);

struct Forest {
    std::vector<int> edge_indices;  // sorted ascending, unique
};

// Forest invariants relative to a host graph: valid indices, no loops, and no
// cycle (two parallel edges already form one).
void validate_forest(const ThornedGraph& g, const Forest& f);

struct ForestFlag {
    std::vector<Forest> flags;  // strictly increasing nonempty chain
};

void validate_flag(const ThornedGraph& g, const ForestFlag& flag);

bool forest_subset(const Forest& a, const Forest& b);  // a proper-or-equal subset of b

struct CollapseResult {
    ThornedGraph graph;
    std::vector<int> vertex_map;  // old vertex -> new vertex
    std::vector<int> edge_map;    // old edge -> new edge, -1 for collapsed ones
};

// Quotient by a forest of non-loop edges. Rank, connectivity, basepoint and
// marks are transported; the empty forest is accepted and returns the input.
CollapseResult collapse_detailed(const ThornedGraph& g, const Forest& f);
ThornedGraph collapse(const ThornedGraph& g, const Forest& f);

// Bouquet of n loops at one vertex carrying the basepoint and all marks.
ThornedGraph standard_rose(int n, int s);

ojson graph_to_json(const ThornedGraph& g);
ThornedGraph graph_from_json(const ojson& j);

} // namespace spinelab

#endif
