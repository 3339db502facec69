#ifndef SPINELAB_SPINE_HPP
#define SPINELAB_SPINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "spinelab/chain.hpp"
#include "spinelab/enumerate.hpp"

namespace spinelab {

struct SpineOptions {
    bool restrict_to_L = false;       // require a basepoint loop (s >= 1 only)
    std::optional<int> degree_max;
    int max_dim = -1;                 // -1: build until no cells remain
    long long budget = 2000000;
    int threads = 1;
    bool use_cache = false;
    std::string cache_dir;
};

// A quotient cell: an enumerated graph class plus an orbit-normalized flag of
// forests (lexicographically least over the automorphism action on edges).
struct SpineCellData {
    int graph_index = 0;
    std::vector<std::vector<int>> flag;  // empty for 0-cells
};

struct SpineComplex {
    int n = 0, s = 0;
    SpineOptions options;
    std::vector<EnumeratedClass> graphs;  // 0-cells sorted by canonical hex
    ChainComplex chain;
    std::vector<std::vector<SpineCellData>> cells;  // per dimension
    std::vector<std::vector<ojson>> cell_labels() const;
};

// Quotient of the spine restricted to reduced graphs, with optional basepoint
// loop and degree filters. Cells in dimension d are orbit classes
// (G, F_1 < ... < F_d); faces drop a flag member or collapse by F_1,
// re-rooting the chain at G/F_1. The boundary squares to zero by
// construction and is verified.
SpineComplex spine_quotient(int n, int s, const SpineOptions& opts = {});

enum class StabKind { alpha, mu, beta };

StabKind stab_kind_from_string(const std::string& s);
std::string to_string(StabKind k);

// Cell-level stabilization map between spine quotients: alpha wedges a loop
// onto the basepoint, mu adds a mark at the basepoint, beta joins the last
// two distinguished points by a new edge and forgets them.
ChainMap stabilization_chain_map(StabKind kind, const SpineComplex& src,
                                 const SpineComplex& tgt);

} // namespace spinelab

#endif
