#include "spinelab/chain.hpp"

#include <algorithm>

namespace spinelab {

long long ChainComplex::total_cells() const {
    long long t = 0;
    for (const auto& c : cells) t += static_cast<long long>(c.size());
    return t;
}

long long ChainComplex::euler_from_cells() const {
    long long chi = 0;
    int sign = 1;
    for (const auto& c : cells) {
        chi += sign * static_cast<long long>(c.size());
        sign = -sign;
    }
    return chi;
}

bool verify_dd_zero(const ChainComplex& c) {
    if (c.cells.size() != c.boundary.size()) return false;
    for (std::size_t d = 0; d < c.cells.size(); ++d) {
        long long rows_expect = d == 0 ? 0 : static_cast<long long>(c.cells[d - 1].size());
        if (c.boundary[d].rows != rows_expect ||
            c.boundary[d].cols != static_cast<long long>(c.cells[d].size()))
            return false;
    }
    for (std::size_t d = 1; d + 1 < c.boundary.size(); ++d)
        if (!c.boundary[d].multiply(c.boundary[d + 1]).is_zero()) return false;
    return true;
}

std::vector<long long> betti_q(const ChainComplex& c, bool reduced) {
    if (!verify_dd_zero(c)) throw structural_error("boundary maps do not square to zero");
    int D = c.top_dim();
    std::vector<long long> rank_d(static_cast<std::size_t>(D) + 2, 0);
    for (int d = 1; d <= D; ++d) rank_d[d] = rank_ff(c.boundary[d]);
    std::vector<long long> betti(static_cast<std::size_t>(D) + 1, 0);
    for (int d = 0; d <= D; ++d) {
        long long kernel = c.cell_count(d) - rank_d[d];
        betti[d] = kernel - rank_d[d + 1];
    }
    if (reduced && !betti.empty() && c.cell_count(0) > 0) betti[0] -= 1;
    return betti;
}

HomologySummary homology_z(const ChainComplex& c) {
    if (!verify_dd_zero(c)) throw structural_error("boundary maps do not square to zero");
    int D = c.top_dim();
    HomologySummary out;
    std::vector<long long> rank_d(static_cast<std::size_t>(D) + 2, 0);
    std::vector<std::vector<Int>> divisors(static_cast<std::size_t>(D) + 2);
    for (int d = 1; d <= D; ++d) {
        auto snf = smith_normal_form(c.boundary[d], false);
        divisors[d] = snf.divisors;
        rank_d[d] = static_cast<long long>(snf.divisors.size());
    }
    out.betti.assign(static_cast<std::size_t>(D) + 1, 0);
    out.torsion.assign(static_cast<std::size_t>(D) + 1, {});
    for (int d = 0; d <= D; ++d) {
        out.betti[d] = c.cell_count(d) - rank_d[d] - rank_d[d + 1];
        for (const Int& v : divisors[d + 1])
            if (v > 1) out.torsion[d].push_back(v);
    }
    out.euler_cells = c.euler_from_cells();
    long long chi = 0;
    int sign = 1;
    for (long long b : out.betti) {
        chi += sign * b;
        sign = -sign;
    }
    out.euler_betti = chi;
    return out;
}

bool chain_map_commutes(const ChainMap& f, const ChainComplex& src, const ChainComplex& tgt) {
    for (std::size_t d = 0; d < f.maps.size(); ++d) {
        if (f.maps[d].cols != static_cast<int>(src.cells[d].size())) return false;
        if (f.maps[d].rows != static_cast<int>(tgt.cells[d].size())) return false;
        if (d == 0) continue;
        // target boundary after f equals f after source boundary
        auto lhs = tgt.boundary[d].multiply(f.maps[d]);
        auto rhs = f.maps[d - 1].multiply(src.boundary[d]);
        if (!(lhs == rhs)) return false;
    }
    return true;
}

namespace {

// Deterministic homology data in dimension d: a matrix whose columns are
// first a basis of the boundary space, then cycle representatives completing
// it to a basis of the kernel. Representatives are kernel-basis vectors taken
// in order, keeping those that add rank.
struct HomologyBasis {
    RatMatrix span;           // cells_d x (boundary_rank + betti)
    long long boundary_rank = 0;
    long long betti = 0;
};

HomologyBasis homology_basis(const ChainComplex& c, int d) {
    long long nd = c.cell_count(d);
    RatMatrix bd = d >= 1 ? RatMatrix::from_sparse(c.boundary[d])
                          : RatMatrix::zero(0, static_cast<int>(nd));
    auto kernel = kernel_basis(bd);

    std::vector<std::vector<Rat>> cols;
    if (d + 1 <= c.top_dim()) {
        const auto& b = c.boundary[d + 1];
        // first independent boundary columns, in cell order
        RatMatrix probe = RatMatrix::zero(static_cast<int>(nd), 0);
        for (int j = 0; j < b.cols; ++j) {
            std::vector<Rat> col(static_cast<std::size_t>(nd), Rat(0));
            for (int i = 0; i < b.rows; ++i) {
                Int v = b.at(i, j);
                if (v != 0) col[static_cast<std::size_t>(i)] = Rat(v);
            }
            probe.cols += 1;
            for (int i = 0; i < probe.rows; ++i) probe.a[i].push_back(col[i]);
            if (rank_rational(probe) == static_cast<long long>(cols.size()) + 1) {
                cols.push_back(col);
            } else {
                for (int i = 0; i < probe.rows; ++i) probe.a[i].pop_back();
                probe.cols -= 1;
            }
        }
    }
    HomologyBasis out;
    out.boundary_rank = static_cast<long long>(cols.size());
    // extend by kernel vectors that add rank
    RatMatrix probe = RatMatrix::zero(static_cast<int>(nd), static_cast<int>(cols.size()));
    for (int i = 0; i < probe.rows; ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) probe.a[i][j] = cols[j][i];
    long long cur = out.boundary_rank;
    for (const auto& k : kernel) {
        probe.cols += 1;
        for (int i = 0; i < probe.rows; ++i) probe.a[i].push_back(k[static_cast<std::size_t>(i)]);
        if (rank_rational(probe) == cur + 1) {
            cols.push_back(k);
            ++cur;
        } else {
            for (int i = 0; i < probe.rows; ++i) probe.a[i].pop_back();
            probe.cols -= 1;
        }
    }
    out.betti = cur - out.boundary_rank;
    out.span = RatMatrix::zero(static_cast<int>(nd), static_cast<int>(cols.size()));
    for (int i = 0; i < out.span.rows; ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) out.span.a[i][j] = cols[j][i];
    return out;
}

} // namespace

std::vector<InducedMap> induced_maps(const ChainMap& f, const ChainComplex& src,
                                     const ChainComplex& tgt, int max_dim) {
    if (!chain_map_commutes(f, src, tgt))
        throw structural_error("chain map does not commute with boundaries");
    std::vector<InducedMap> out;
    for (int d = 0; d <= max_dim; ++d) {
        HomologyBasis hs = homology_basis(src, d);
        HomologyBasis ht = homology_basis(tgt, d);
        InducedMap im;
        im.dim = d;
        im.source_rank = hs.betti;
        im.target_rank = ht.betti;
        im.matrix = RatMatrix::zero(static_cast<int>(ht.betti), static_cast<int>(hs.betti));
        RatMatrix fd = d < static_cast<int>(f.maps.size())
                           ? RatMatrix::from_sparse(f.maps[d])
                           : RatMatrix::zero(static_cast<int>(tgt.cell_count(d)),
                                             static_cast<int>(src.cell_count(d)));
        for (long long j = 0; j < hs.betti; ++j) {
            std::vector<Rat> rep(static_cast<std::size_t>(src.cell_count(d)), Rat(0));
            for (int i = 0; i < hs.span.rows; ++i)
                rep[static_cast<std::size_t>(i)] =
                    hs.span.a[i][static_cast<std::size_t>(hs.boundary_rank + j)];
            auto img = fd.apply(rep);
            auto x = solve(ht.span, img);
            if (!x)
                throw structural_error("image of a cycle is not a cycle in the target");
            for (long long i = 0; i < ht.betti; ++i)
                im.matrix.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    (*x)[static_cast<std::size_t>(ht.boundary_rank + i)];
        }
        im.rank = rank_rational(im.matrix);
        im.injective = im.rank == im.source_rank;
        im.surjective = im.rank == im.target_rank;
        im.iso = im.injective && im.surjective;
        out.push_back(std::move(im));
    }
    return out;
}

ojson complex_to_json(const ChainComplex& c,
                      const std::vector<std::vector<ojson>>* cell_labels) {
    ojson dims = ojson::array();
    for (std::size_t d = 0; d < c.cells.size(); ++d) {
        ojson entry;
        ojson cells = ojson::array();
        if (cell_labels && d < cell_labels->size()) {
            for (const auto& l : (*cell_labels)[d]) cells.push_back(l);
        } else {
            for (const auto& k : c.cells[d]) cells.push_back(k);
        }
        entry["cells"] = std::move(cells);
        entry["boundary"] = matrix_to_json(c.boundary[d]);
        dims.push_back(std::move(entry));
    }
    ojson j;
    j["dims"] = std::move(dims);
    return j;
}

} // namespace spinelab
