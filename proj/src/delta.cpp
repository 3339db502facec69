#include "spinelab/delta.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace spinelab {

void validate(const SimplicialComplex& z) {
    if (z.vertices < 0) throw structural_error("negative vertex count");
    for (const auto& f : z.maximal_faces) {
        if (f.empty()) throw structural_error("empty face");
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (f[i] < 0 || f[i] >= z.vertices) throw structural_error("face vertex out of range");
            if (i > 0 && f[i] <= f[i - 1])
                throw structural_error("face must be sorted with distinct vertices");
        }
    }
}

std::vector<std::vector<int>> faces_of(const SimplicialComplex& z) {
    validate(z);
    std::set<std::vector<int>> faces;
    for (const auto& f : z.maximal_faces) {
        int m = static_cast<int>(f.size());
        for (unsigned mask = 1; mask < (1u << m); ++mask) {
            std::vector<int> sub;
            for (int i = 0; i < m; ++i)
                if (mask & (1u << i)) sub.push_back(f[i]);
            faces.insert(std::move(sub));
        }
    }
    std::vector<std::vector<int>> out(faces.begin(), faces.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

namespace {

std::string face_key(const std::vector<int>& f) {
    std::string s;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) s.push_back('.');
        s += std::to_string(f[i]);
    }
    return s;
}

} // namespace

ChainComplex simplicial_chain_complex(const SimplicialComplex& z) {
    auto faces = faces_of(z);
    int top = 0;
    for (const auto& f : faces) top = std::max(top, static_cast<int>(f.size()) - 1);
    ChainComplex c;
    c.cells.assign(static_cast<std::size_t>(top) + 1, {});
    std::vector<std::map<std::vector<int>, int>> index(static_cast<std::size_t>(top) + 1);
    std::vector<std::vector<std::vector<int>>> by_dim(static_cast<std::size_t>(top) + 1);
    for (const auto& f : faces) {
        int d = static_cast<int>(f.size()) - 1;
        index[d][f] = static_cast<int>(by_dim[d].size());
        by_dim[d].push_back(f);
        c.cells[d].push_back(face_key(f));
    }
    c.boundary.resize(c.cells.size());
    c.boundary[0] = SparseIntMatrix::zero(0, static_cast<int>(c.cells[0].size()));
    for (int d = 1; d <= top; ++d) {
        std::vector<std::tuple<int, int, Int>> trips;
        for (std::size_t j = 0; j < by_dim[d].size(); ++j) {
            const auto& f = by_dim[d][j];
            int sign = 1;
            for (std::size_t i = 0; i < f.size(); ++i) {
                std::vector<int> sub;
                for (std::size_t k = 0; k < f.size(); ++k)
                    if (k != i) sub.push_back(f[k]);
                trips.push_back({index[d - 1].at(sub), static_cast<int>(j), Int(sign)});
                sign = -sign;
            }
        }
        c.boundary[d] = SparseIntMatrix::from_triplets(
            static_cast<int>(c.cells[d - 1].size()), static_cast<int>(c.cells[d].size()), trips);
    }
    return c;
}

ChainComplex delta_construction(const SimplicialComplex& z, int max_dim) {
    if (max_dim < 0) throw structural_error("max_dim must be nonnegative");
    auto faces = faces_of(z);
    std::set<std::vector<int>> face_set(faces.begin(), faces.end());
    std::vector<int> verts;
    for (const auto& f : faces)
        if (f.size() == 1) verts.push_back(f[0]);

    auto support_is_face = [&](const std::vector<int>& tuple) {
        std::vector<int> sup = tuple;
        std::sort(sup.begin(), sup.end());
        sup.erase(std::unique(sup.begin(), sup.end()), sup.end());
        return face_set.count(sup) > 0;
    };

    ChainComplex c;
    c.cells.assign(static_cast<std::size_t>(max_dim) + 1, {});
    c.boundary.resize(c.cells.size());
    std::vector<std::map<std::vector<int>, int>> index(static_cast<std::size_t>(max_dim) + 1);
    std::vector<std::vector<std::vector<int>>> by_dim(static_cast<std::size_t>(max_dim) + 1);

    // Tuples in lexicographic order over the vertex list.
    for (int d = 0; d <= max_dim; ++d) {
        std::vector<int> tuple(static_cast<std::size_t>(d) + 1, 0);
        std::vector<std::size_t> pos(static_cast<std::size_t>(d) + 1, 0);
        if (verts.empty()) break;
        for (;;) {
            for (std::size_t i = 0; i <= static_cast<std::size_t>(d); ++i)
                tuple[i] = verts[pos[i]];
            if (support_is_face(tuple)) {
                index[d][tuple] = static_cast<int>(by_dim[d].size());
                by_dim[d].push_back(tuple);
                c.cells[d].push_back(face_key(tuple));
            }
            int i = d;
            for (; i >= 0; --i) {
                if (pos[i] + 1 < verts.size()) {
                    ++pos[i];
                    for (int k = i + 1; k <= d; ++k) pos[k] = 0;
                    break;
                }
            }
            if (i < 0) break;
        }
    }
    c.boundary[0] = SparseIntMatrix::zero(0, static_cast<int>(c.cells[0].size()));
    for (int d = 1; d <= max_dim; ++d) {
        std::vector<std::tuple<int, int, Int>> trips;
        for (std::size_t j = 0; j < by_dim[d].size(); ++j) {
            const auto& t = by_dim[d][j];
            int sign = 1;
            for (std::size_t i = 0; i < t.size(); ++i) {
                std::vector<int> sub;
                for (std::size_t k = 0; k < t.size(); ++k)
                    if (k != i) sub.push_back(t[k]);
                trips.push_back({index[d - 1].at(sub), static_cast<int>(j), Int(sign)});
                sign = -sign;
            }
        }
        c.boundary[d] = SparseIntMatrix::from_triplets(
            static_cast<int>(c.cells[d - 1].size()), static_cast<int>(c.cells[d].size()), trips);
    }
    return c;
}

DeltaCheckResult delta_homology_check(const SimplicialComplex& z, int max_check_dim) {
    auto hz = homology_z(simplicial_chain_complex(z));
    auto delta = delta_construction(z, max_check_dim + 1);
    auto hd = homology_z(delta);
    DeltaCheckResult out;
    out.equal = true;
    for (int d = 0; d <= max_check_dim; ++d) {
        DeltaCheckDim row;
        row.dim = d;
        row.betti_z = d < static_cast<int>(hz.betti.size()) ? hz.betti[d] : 0;
        row.betti_delta = d < static_cast<int>(hd.betti.size()) ? hd.betti[d] : 0;
        if (d < static_cast<int>(hz.torsion.size())) row.torsion_z = hz.torsion[d];
        if (d < static_cast<int>(hd.torsion.size())) row.torsion_delta = hd.torsion[d];
        row.equal = row.betti_z == row.betti_delta && row.torsion_z == row.torsion_delta;
        out.equal = out.equal && row.equal;
        out.dims.push_back(std::move(row));
    }
    return out;
}

SimplicialComplex boundary_of_simplex(int k) {
    if (k < 1) throw structural_error("boundary_of_simplex needs k >= 1");
    SimplicialComplex z;
    z.vertices = k + 1;
    for (int skip = 0; skip <= k; ++skip) {
        std::vector<int> f;
        for (int v = 0; v <= k; ++v)
            if (v != skip) f.push_back(v);
        z.maximal_faces.push_back(std::move(f));
    }
    return z;
}

SimplicialComplex projective_plane() {
    SimplicialComplex z;
    z.vertices = 6;
    z.maximal_faces = {{0, 1, 4}, {0, 1, 5}, {0, 2, 3}, {0, 2, 5},
                       {0, 3, 4}, {1, 2, 3}, {1, 2, 4}, {1, 3, 5},
                       {2, 4, 5}, {3, 4, 5}};
    return z;
}

SimplicialComplex random_complex(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    SimplicialComplex z;
    z.vertices = 4 + static_cast<int>(rng() % 5);  // 4..8
    int nfaces = 3 + static_cast<int>(rng() % 7);  // 3..9 maximal candidates
    std::set<std::vector<int>> chosen;
    for (int i = 0; i < nfaces; ++i) {
        int size = 2 + static_cast<int>(rng() % 3);  // 2..4 vertices
        std::set<int> f;
        while (static_cast<int>(f.size()) < size)
            f.insert(static_cast<int>(rng() % static_cast<std::uint64_t>(z.vertices)));
        chosen.insert(std::vector<int>(f.begin(), f.end()));
    }
    // Keep only faces not contained in another chosen face.
    for (const auto& f : chosen) {
        bool maximal = true;
        for (const auto& g : chosen)
            if (f != g && std::includes(g.begin(), g.end(), f.begin(), f.end())) {
                maximal = false;
                break;
            }
        if (maximal) z.maximal_faces.push_back(f);
    }
    return z;
}

} // namespace spinelab
