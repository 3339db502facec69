#ifndef SPINELAB_DELTA_HPP
#define SPINELAB_DELTA_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "spinelab/chain.hpp"

namespace spinelab {

// Finite abstract simplicial complex on vertices 0..vertices-1, given by
// maximal faces; all subsets are implied faces.
struct SimplicialComplex {
    int vertices = 0;
    std::vector<std::vector<int>> maximal_faces;  // each sorted, distinct entries
};

void validate(const SimplicialComplex& z);

// All faces (nonempty), sorted by (size, lex). Vertices that appear in no
// maximal face do not occur.
std::vector<std::vector<int>> faces_of(const SimplicialComplex& z);

// Ordinary simplicial chain complex of Z (full dimension range).
ChainComplex simplicial_chain_complex(const SimplicialComplex& z);

// The complex whose d-cells are ordered (d+1)-tuples of vertices lying in a
// common face, repetitions allowed, truncated above max_dim. Boundaries are
// alternating position deletions. Homology is reliable through max_dim - 1.
ChainComplex delta_construction(const SimplicialComplex& z, int max_dim);

struct DeltaCheckDim {
    int dim = 0;
    long long betti_z = 0, betti_delta = 0;
    std::vector<Int> torsion_z, torsion_delta;
    bool equal = false;
};

struct DeltaCheckResult {
    bool equal = false;
    std::vector<DeltaCheckDim> dims;
};

// Integral comparison (Betti plus torsion) of H_d(Delta(Z)) against H_d(Z)
// for d <= max_check_dim; Delta(Z) is built one guard dimension higher.
DeltaCheckResult delta_homology_check(const SimplicialComplex& z, int max_check_dim);

SimplicialComplex boundary_of_simplex(int k);  // boundary of the k-simplex
SimplicialComplex projective_plane();          // 6-vertex triangulation
SimplicialComplex random_complex(std::uint64_t seed);  // <= 8 vertices

} // namespace spinelab

#endif
