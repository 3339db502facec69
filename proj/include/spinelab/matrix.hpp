#ifndef SPINELAB_MATRIX_HPP
#define SPINELAB_MATRIX_HPP

#include <optional>
#include <tuple>
#include <vector>

#include "spinelab/errors.hpp"
#include "spinelab/numbers.hpp"

#include <json.hpp>

namespace spinelab {

using ojson = nlohmann::ordered_json;

// Sparse integer matrix; each row holds (col, value) sorted by column with no
// zero values stored.
struct SparseIntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::pair<int, Int>>> row_data;

    static SparseIntMatrix zero(int r, int c);
    static SparseIntMatrix identity(int n);
    static SparseIntMatrix from_triplets(int r, int c,
                                         const std::vector<std::tuple<int, int, Int>>& t);

    Int at(int r, int c) const;
    void add_at(int r, int c, const Int& v);  // accumulate, dropping zeros
    long long nnz() const;
    bool is_zero() const;
    SparseIntMatrix transpose() const;
    SparseIntMatrix multiply(const SparseIntMatrix& o) const;
    bool operator==(const SparseIntMatrix& o) const;
};

// Exact rank over Q via fraction-free integer elimination with content
// stripping and a pivoting rule that prefers unit entries and short rows.
long long rank_ff(const SparseIntMatrix& m);

struct SmithResult {
    std::vector<Int> divisors;  // positive, d_1 | d_2 | ...; rank entries
    bool with_transforms = false;
    SparseIntMatrix U, V, D;  // U*A*V = D when with_transforms
    int det_u = 1, det_v = 1;  // tracked determinants, always +-1
};

SmithResult smith_normal_form(const SparseIntMatrix& a, bool with_transforms = true);

// Dense exact rational matrix; the workhorse behind induced maps on homology.
struct RatMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<Rat>> a;

    static RatMatrix zero(int r, int c);
    static RatMatrix from_sparse(const SparseIntMatrix& m);
    std::vector<Rat> apply(const std::vector<Rat>& x) const;  // A * x
};

// Reduced row echelon form in place; returns pivot column indices.
std::vector<int> rref(RatMatrix& m);

long long rank_rational(const RatMatrix& m);

// Deterministic kernel basis: one vector per free column, unit there.
std::vector<std::vector<Rat>> kernel_basis(const RatMatrix& m);

// Solves A x = b; nullopt if inconsistent. Free variables are set to zero.
std::optional<std::vector<Rat>> solve(const RatMatrix& a, const std::vector<Rat>& b);

ojson matrix_to_json(const SparseIntMatrix& m);
SparseIntMatrix matrix_from_json(const ojson& j);

} // namespace spinelab

#endif
