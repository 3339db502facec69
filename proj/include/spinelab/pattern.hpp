#ifndef SPINELAB_PATTERN_HPP
#define SPINELAB_PATTERN_HPP

#include <string>
#include <vector>

#include "spinelab/chain.hpp"

namespace spinelab {

// Pattern cells are set partitions of positions {0..d} into at most n blocks,
// written as restricted-growth strings: cell[i] is the block of position i,
// blocks numbered by first appearance.
using PatternCell = std::vector<int>;

std::string pattern_key(const PatternCell& c);
ojson pattern_label(const PatternCell& c);  // canonical block list [[...],...]

// Face map d_i: delete position i and renumber blocks.
PatternCell pattern_face(const PatternCell& c, int i);

std::vector<PatternCell> pattern_cells(int n, int dim);

// The finite quotient pattern complex: d-cells are partitions of {0..d} into
// <= n blocks, boundary is the alternating sum of position deletions.
ChainComplex pattern_quotient(int n, int max_dim);

std::vector<std::vector<ojson>> pattern_labels(int n, int max_dim);

} // namespace spinelab

#endif
