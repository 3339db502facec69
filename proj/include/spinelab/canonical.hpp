#ifndef SPINELAB_CANONICAL_HPP
#define SPINELAB_CANONICAL_HPP

#include <string>
#include <vector>

#include "spinelab/graph.hpp"
#include "spinelab/numbers.hpp"

namespace spinelab {

// A label-preserving automorphism acts on vertices and edge slots: vperm on
// vertices, eperm on edge indices, erev[e] true when a loop is traversed
// backwards. Non-loop orientation is determined by vperm.
struct GraphAut {
    std::vector<int> vperm;
    std::vector<int> eperm;
    std::vector<char> erev;
};

struct CanonicalGraph {
    std::string hex;        // canonical byte encoding, lowercase hex
    ThornedGraph graph;     // canonical representative (relabeled input)
    std::vector<int> vertex_map;  // input vertex -> canonical vertex
    std::vector<int> edge_map;    // input edge index -> canonical edge index
    // Generators of the automorphism group of the canonical representative:
    // vertex automorphisms plus parallel-class transpositions and loop
    // reversals.
    std::vector<GraphAut> aut_generators;
    Int aut_order;
};

// Deterministic canonical form under label-preserving isomorphism: basepoint
// maps to basepoint and the vertex carrying mark i maps to the vertex carrying
// mark i. Two graphs get equal hex iff such an isomorphism exists.
CanonicalGraph canonical_form(const ThornedGraph& g);

// The edge-index action of the full automorphism group of cg.graph, as the
// closure of the generators. Size is capped; exceeding it is a structural
// error (never expected at workbench scale).
std::vector<std::vector<int>> edge_action_group(const CanonicalGraph& cg,
                                                std::size_t cap = 200000);

} // namespace spinelab

#endif
