#ifndef SPINELAB_CHAIN_HPP
#define SPINELAB_CHAIN_HPP

#include <string>
#include <vector>

#include "spinelab/matrix.hpp"

namespace spinelab {

// Graded cell sets with sparse integer boundaries. boundary[d] maps d-cells
// to (d-1)-cells; boundary[0] has zero rows. A complex truncated at top
// dimension D reports homology reliably only through D-1; builders add a
// guard dimension where that matters.
struct ChainComplex {
    std::vector<std::vector<std::string>> cells;  // cells[d] = cell keys
    std::vector<SparseIntMatrix> boundary;        // same length as cells

    int top_dim() const { return static_cast<int>(cells.size()) - 1; }
    long long cell_count(int d) const {
        return d >= 0 && d < static_cast<int>(cells.size())
                   ? static_cast<long long>(cells[d].size())
                   : 0;
    }
    long long total_cells() const;
    long long euler_from_cells() const;
};

// Shape consistency plus the exact check that consecutive boundaries compose
// to zero.
bool verify_dd_zero(const ChainComplex& c);

// Rational Betti numbers, one per dimension present. reduced subtracts the
// augmentation in dimension 0.
std::vector<long long> betti_q(const ChainComplex& c, bool reduced = false);

struct HomologySummary {
    std::vector<long long> betti;
    std::vector<std::vector<Int>> torsion;  // divisors > 1 per dimension
    long long euler_cells = 0;
    long long euler_betti = 0;
};

HomologySummary homology_z(const ChainComplex& c);

// Degreewise integer matrices commuting with the boundaries.
struct ChainMap {
    std::vector<SparseIntMatrix> maps;  // maps[d]: source d-cells -> target d-cells
};

bool chain_map_commutes(const ChainMap& f, const ChainComplex& src, const ChainComplex& tgt);

struct InducedMap {
    int dim = 0;
    long long source_rank = 0;  // dim H_d(source; Q)
    long long target_rank = 0;
    RatMatrix matrix;  // target_rank x source_rank
    long long rank = 0;
    bool injective = false;
    bool surjective = false;
    bool iso = false;
};

// Matrices of f_* on deterministic homology bases (boundary columns first,
// then earliest independent kernel vectors, in canonical cell order).
std::vector<InducedMap> induced_maps(const ChainMap& f, const ChainComplex& src,
                                     const ChainComplex& tgt, int max_dim);

ojson complex_to_json(const ChainComplex& c,
                      const std::vector<std::vector<ojson>>* cell_labels = nullptr);

} // namespace spinelab

#endif
