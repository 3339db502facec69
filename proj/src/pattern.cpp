#include "spinelab/pattern.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace spinelab {

std::string pattern_key(const PatternCell& c) {
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s.push_back('.');
        s += std::to_string(c[i]);
    }
    return s;
}

ojson pattern_label(const PatternCell& c) {
    int blocks = 0;
    for (int b : c) blocks = std::max(blocks, b + 1);
    ojson out = ojson::array();
    for (int b = 0; b < blocks; ++b) {
        ojson block = ojson::array();
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c[i] == b) block.push_back(static_cast<int>(i));
        out.push_back(std::move(block));
    }
    return out;
}

PatternCell pattern_face(const PatternCell& c, int i) {
    if (i < 0 || i >= static_cast<int>(c.size()))
        throw structural_error("face index out of range");
    PatternCell raw;
    raw.reserve(c.size() - 1);
    for (std::size_t k = 0; k < c.size(); ++k)
        if (static_cast<int>(k) != i) raw.push_back(c[k]);
    // Renumber to restricted-growth form.
    std::map<int, int> renum;
    PatternCell out;
    out.reserve(raw.size());
    for (int b : raw) {
        auto [it, fresh] = renum.emplace(b, static_cast<int>(renum.size()));
        out.push_back(it->second);
    }
    return out;
}

std::vector<PatternCell> pattern_cells(int n, int dim) {
    std::vector<PatternCell> out;
    PatternCell cur(static_cast<std::size_t>(dim) + 1, 0);
    // Restricted growth strings with at most n blocks, lexicographic order.
    std::function<void(int, int)> rec = [&](int pos, int maxb) {
        if (pos == dim + 1) {
            out.push_back(cur);
            return;
        }
        int lim = std::min(maxb + 1, n - 1);
        for (int b = 0; b <= lim; ++b) {
            cur[static_cast<std::size_t>(pos)] = b;
            rec(pos + 1, std::max(maxb, b));
        }
    };
    if (n >= 1 && dim >= 0) rec(0, -1);
    return out;
}

ChainComplex pattern_quotient(int n, int max_dim) {
    if (n < 1) throw unsupported_error("pattern_quotient needs n >= 1");
    if (max_dim < 0) throw structural_error("max_dim must be nonnegative");
    ChainComplex c;
    c.cells.assign(static_cast<std::size_t>(max_dim) + 1, {});
    c.boundary.resize(c.cells.size());
    std::vector<std::map<std::string, int>> index(static_cast<std::size_t>(max_dim) + 1);
    std::vector<std::vector<PatternCell>> by_dim(static_cast<std::size_t>(max_dim) + 1);
    for (int d = 0; d <= max_dim; ++d) {
        by_dim[d] = pattern_cells(n, d);
        for (const auto& cell : by_dim[d]) {
            index[d][pattern_key(cell)] = static_cast<int>(c.cells[d].size());
            c.cells[d].push_back(pattern_key(cell));
        }
    }
    c.boundary[0] = SparseIntMatrix::zero(0, static_cast<int>(c.cells[0].size()));
    for (int d = 1; d <= max_dim; ++d) {
        std::vector<std::tuple<int, int, Int>> trips;
        for (std::size_t j = 0; j < by_dim[d].size(); ++j) {
            int sign = 1;
            for (int i = 0; i <= d; ++i) {
                auto f = pattern_face(by_dim[d][j], i);
                trips.push_back({index[d - 1].at(pattern_key(f)), static_cast<int>(j), Int(sign)});
                sign = -sign;
            }
        }
        c.boundary[d] = SparseIntMatrix::from_triplets(
            static_cast<int>(c.cells[d - 1].size()), static_cast<int>(c.cells[d].size()), trips);
    }
    return c;
}

std::vector<std::vector<ojson>> pattern_labels(int n, int max_dim) {
    std::vector<std::vector<ojson>> out(static_cast<std::size_t>(max_dim) + 1);
    for (int d = 0; d <= max_dim; ++d)
        for (const auto& cell : pattern_cells(n, d)) out[d].push_back(pattern_label(cell));
    return out;
}

} // namespace spinelab
