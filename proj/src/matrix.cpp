#include "spinelab/matrix.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>

namespace spinelab {

SparseIntMatrix SparseIntMatrix::zero(int r, int c) {
    SparseIntMatrix m;
    m.rows = r;
    m.cols = c;
    m.row_data.assign(static_cast<std::size_t>(r), {});
    return m;
}

SparseIntMatrix SparseIntMatrix::identity(int n) {
    auto m = zero(n, n);
    for (int i = 0; i < n; ++i) m.row_data[i].push_back({i, Int(1)});
    return m;
}

SparseIntMatrix SparseIntMatrix::from_triplets(
    int r, int c, const std::vector<std::tuple<int, int, Int>>& t) {
    auto m = zero(r, c);
    std::vector<std::map<int, Int>> acc(static_cast<std::size_t>(r));
    for (const auto& [i, j, v] : t) {
        if (i < 0 || i >= r || j < 0 || j >= c)
            throw structural_error("triplet index out of range");
        acc[i][j] += v;
    }
    for (int i = 0; i < r; ++i)
        for (auto& [j, v] : acc[i])
            if (v != 0) m.row_data[i].push_back({j, std::move(v)});
    return m;
}

Int SparseIntMatrix::at(int r, int c) const {
    const auto& row = row_data[static_cast<std::size_t>(r)];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& p, int col) { return p.first < col; });
    if (it != row.end() && it->first == c) return it->second;
    return Int(0);
}

void SparseIntMatrix::add_at(int r, int c, const Int& v) {
    if (v == 0) return;
    auto& row = row_data[static_cast<std::size_t>(r)];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& p, int col) { return p.first < col; });
    if (it != row.end() && it->first == c) {
        it->second += v;
        if (it->second == 0) row.erase(it);
    } else {
        row.insert(it, {c, v});
    }
}

long long SparseIntMatrix::nnz() const {
    long long t = 0;
    for (const auto& r : row_data) t += static_cast<long long>(r.size());
    return t;
}

bool SparseIntMatrix::is_zero() const { return nnz() == 0; }

SparseIntMatrix SparseIntMatrix::transpose() const {
    auto m = zero(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (const auto& [j, v] : row_data[i]) m.row_data[j].push_back({i, v});
    return m;
}

SparseIntMatrix SparseIntMatrix::multiply(const SparseIntMatrix& o) const {
    if (cols != o.rows) throw structural_error("dimension mismatch in multiply");
    auto m = zero(rows, o.cols);
    for (int i = 0; i < rows; ++i) {
        std::map<int, Int> acc;
        for (const auto& [k, v] : row_data[i])
            for (const auto& [j, w] : o.row_data[k]) acc[j] += v * w;
        for (auto& [j, v] : acc)
            if (v != 0) m.row_data[i].push_back({j, std::move(v)});
    }
    return m;
}

bool SparseIntMatrix::operator==(const SparseIntMatrix& o) const {
    return rows == o.rows && cols == o.cols && row_data == o.row_data;
}

long long rank_ff(const SparseIntMatrix& m) {
    std::vector<std::vector<std::pair<int, Int>>> rows = m.row_data;
    std::vector<char> active(rows.size(), 1);
    auto strip_content = [](std::vector<std::pair<int, Int>>& row) {
        if (row.empty()) return;
        Int g = 0;
        for (const auto& [c, v] : row) {
            g = int_gcd(g, v);
            if (g == 1) break;
        }
        if (g > 1)
            for (auto& [c, v] : row) v /= g;
    };
    for (auto& r : rows) strip_content(r);

    long long rank = 0;
    for (;;) {
        // Pivot choice: a unit entry in the shortest possible row.
        int pr = -1, pc = -1;
        std::tuple<int, std::size_t, int> best{2, 0, 0};
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (!active[i] || rows[i].empty()) continue;
            for (const auto& [c, v] : rows[i]) {
                int unit = (v == 1 || v == -1) ? 0 : 1;
                std::tuple<int, std::size_t, int> key{unit, rows[i].size(), c};
                if (pr < 0 || key < best) {
                    best = key;
                    pr = static_cast<int>(i);
                    pc = c;
                }
                if (unit == 0) break;  // first unit in this row is good enough
            }
        }
        if (pr < 0) break;
        ++rank;
        active[pr] = 0;
        Int pv = 0;
        for (const auto& [c, v] : rows[pr])
            if (c == pc) pv = v;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (!active[i] || rows[i].empty()) continue;
            Int rv = 0;
            {
                auto it = std::lower_bound(rows[i].begin(), rows[i].end(), pc,
                                           [](const auto& p, int col) { return p.first < col; });
                if (it != rows[i].end() && it->first == pc) rv = it->second;
            }
            if (rv == 0) continue;
            // row_i := pv*row_i - rv*row_pr  (kills column pc)
            std::vector<std::pair<int, Int>> out;
            out.reserve(rows[i].size() + rows[pr].size());
            auto a = rows[i].begin(), ae = rows[i].end();
            auto b = rows[pr].begin(), be = rows[pr].end();
            while (a != ae || b != be) {
                if (b == be || (a != ae && a->first < b->first)) {
                    out.push_back({a->first, pv * a->second});
                    ++a;
                } else if (a == ae || b->first < a->first) {
                    out.push_back({b->first, -rv * b->second});
                    ++b;
                } else {
                    Int v = pv * a->second - rv * b->second;
                    if (v != 0) out.push_back({a->first, std::move(v)});
                    ++a;
                    ++b;
                }
            }
            strip_content(out);
            rows[i] = std::move(out);
        }
    }
    return rank;
}

namespace {

// Working state for the Smith reduction: row-major maps plus transform
// accumulators. V is kept transposed so column operations stay row
// operations.
struct SnfWork {
    int rows, cols;
    std::vector<std::map<int, Int>> R;
    bool track;
    std::vector<std::map<int, Int>> U, Vt;
    int det_u = 1, det_v = 1;

    SnfWork(const SparseIntMatrix& a, bool with_transforms)
        : rows(a.rows), cols(a.cols), track(with_transforms) {
        R.assign(static_cast<std::size_t>(rows), {});
        for (int i = 0; i < rows; ++i)
            for (const auto& [j, v] : a.row_data[i]) R[i][j] = v;
        if (track) {
            U.assign(static_cast<std::size_t>(rows), {});
            Vt.assign(static_cast<std::size_t>(cols), {});
            for (int i = 0; i < rows; ++i) U[i][i] = 1;
            for (int j = 0; j < cols; ++j) Vt[j][j] = 1;
        }
    }

    Int get(int i, int j) const {
        auto it = R[static_cast<std::size_t>(i)].find(j);
        return it == R[static_cast<std::size_t>(i)].end() ? Int(0) : it->second;
    }

    void swap_rows(int i, int j) {
        if (i == j) return;
        std::swap(R[i], R[j]);
        if (track) {
            std::swap(U[i], U[j]);
            det_u = -det_u;
        }
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (auto& row : R) {
            auto a = row.find(i), b = row.find(j);
            Int va = a == row.end() ? Int(0) : a->second;
            Int vb = b == row.end() ? Int(0) : b->second;
            if (a != row.end()) row.erase(a);
            if ((b = row.find(j)) != row.end()) row.erase(b);
            if (vb != 0) row[i] = vb;
            if (va != 0) row[j] = va;
        }
        if (track) {
            std::swap(Vt[i], Vt[j]);
            det_v = -det_v;
        }
    }
    // row_i -= q * row_j
    void row_op(int i, int j, const Int& q) {
        if (q == 0) return;
        for (const auto& [c, v] : R[j]) {
            auto it = R[i].find(c);
            if (it == R[i].end()) {
                R[i][c] = -q * v;
            } else {
                it->second -= q * v;
                if (it->second == 0) R[i].erase(it);
            }
        }
        if (track)
            for (const auto& [c, v] : U[j]) {
                auto it = U[i].find(c);
                if (it == U[i].end()) {
                    U[i][c] = -q * v;
                } else {
                    it->second -= q * v;
                    if (it->second == 0) U[i].erase(it);
                }
            }
    }
    // col_i -= q * col_j
    void col_op(int i, int j, const Int& q) {
        if (q == 0) return;
        for (std::size_t r = 0; r < R.size(); ++r) {
            auto jt = R[r].find(j);
            if (jt == R[r].end()) continue;
            Int delta = -q * jt->second;
            auto it = R[r].find(i);
            if (it == R[r].end()) {
                R[r][i] = std::move(delta);
            } else {
                it->second += delta;
                if (it->second == 0) R[r].erase(it);
            }
        }
        if (track)
            for (const auto& [c, v] : Vt[j]) {
                auto it = Vt[i].find(c);
                if (it == Vt[i].end()) {
                    Vt[i][c] = -q * v;
                } else {
                    it->second -= q * v;
                    if (it->second == 0) Vt[i].erase(it);
                }
            }
    }
    void negate_row(int i) {
        for (auto& [c, v] : R[i]) v = -v;
        if (track) {
            for (auto& [c, v] : U[i]) v = -v;
            det_u = -det_u;
        }
    }

    // Clears row t and column t against the pivot at (t,t) with gcd steps.
    void clear_at(int t) {
        for (;;) {
            bool swapped = false;
            // Column sweep.
            for (;;) {
                int hit = -1;
                for (int i = 0; i < rows; ++i) {
                    if (i == t) continue;
                    if (R[i].count(t)) {
                        hit = i;
                        break;
                    }
                }
                if (hit < 0) break;
                Int p = get(t, t);
                Int v = get(hit, t);
                Int q = v / p;  // truncated division
                row_op(hit, t, q);
                if (R[hit].count(t)) {
                    swap_rows(hit, t);  // remainder is strictly smaller
                    swapped = true;
                }
            }
            // Row sweep.
            for (;;) {
                int hit = -1;
                for (const auto& [c, v] : R[t]) {
                    if (c != t) {
                        hit = c;
                        break;
                    }
                }
                if (hit < 0) break;
                Int p = get(t, t);
                Int v = get(t, hit);
                Int q = v / p;
                col_op(hit, t, q);
                if (R[t].count(hit)) {
                    swap_cols(hit, t);
                    swapped = true;
                }
            }
            // Column may be dirty again after column swaps.
            bool col_clean = true;
            for (int i = 0; i < rows && col_clean; ++i)
                if (i != t && R[i].count(t)) col_clean = false;
            if (col_clean && !swapped) break;
            if (col_clean) {
                bool row_clean = true;
                for (const auto& [c, v] : R[t])
                    if (c != t) row_clean = false;
                if (row_clean) break;
            }
        }
    }
};

} // namespace

SmithResult smith_normal_form(const SparseIntMatrix& a, bool with_transforms) {
    SnfWork w(a, with_transforms);
    int bound = std::min(a.rows, a.cols);
    int t = 0;
    for (; t < bound; ++t) {
        // Pivot selection: smallest magnitude wins, sparsity breaks ties.
        int pr = -1, pc = -1;
        Int pbest;
        std::size_t pfill = 0;
        for (int i = t; i < w.rows; ++i) {
            for (const auto& [j, v] : w.R[i]) {
                if (j < t) continue;
                Int av = v < 0 ? -v : v;
                std::size_t fill = w.R[i].size();
                if (pr < 0 || av < pbest || (av == pbest && fill < pfill)) {
                    pr = i;
                    pc = j;
                    pbest = av;
                    pfill = fill;
                }
                if (pbest == 1 && pfill <= 1) break;
            }
        }
        if (pr < 0) break;
        w.swap_rows(t, pr);
        w.swap_cols(t, pc);
        w.clear_at(t);
    }

    // Enforce the divisibility chain on the diagonal.
    auto diag = [&](int i) { return w.get(i, i); };
    bool stable = false;
    while (!stable) {
        stable = true;
        for (int i = 0; i < t; ++i) {
            for (int j = i + 1; j < t; ++j) {
                Int di = diag(i), dj = diag(j);
                if (di == 0 || dj % di == 0) continue;
                // Fold column j into column i and re-reduce the 2x2 block.
                w.col_op(i, j, Int(-1));
                w.clear_at(i);
                stable = false;
            }
        }
    }
    for (int i = 0; i < t; ++i)
        if (diag(i) < 0) w.negate_row(i);

    SmithResult out;
    out.with_transforms = with_transforms;
    for (int i = 0; i < t; ++i) {
        Int d = diag(i);
        if (d != 0) out.divisors.push_back(d);
    }
    if (with_transforms) {
        out.U = SparseIntMatrix::zero(a.rows, a.rows);
        for (int i = 0; i < a.rows; ++i)
            for (const auto& [j, v] : w.U[i]) out.U.row_data[i].push_back({j, v});
        auto vt = SparseIntMatrix::zero(a.cols, a.cols);
        for (int i = 0; i < a.cols; ++i)
            for (const auto& [j, v] : w.Vt[i]) vt.row_data[i].push_back({j, v});
        out.V = vt.transpose();
        out.D = SparseIntMatrix::zero(a.rows, a.cols);
        for (int i = 0; i < w.rows; ++i)
            for (const auto& [j, v] : w.R[i]) out.D.row_data[i].push_back({j, v});
        out.det_u = w.det_u;
        out.det_v = w.det_v;
    }
    return out;
}

RatMatrix RatMatrix::zero(int r, int c) {
    RatMatrix m;
    m.rows = r;
    m.cols = c;
    m.a.assign(static_cast<std::size_t>(r), std::vector<Rat>(static_cast<std::size_t>(c), Rat(0)));
    return m;
}

RatMatrix RatMatrix::from_sparse(const SparseIntMatrix& m) {
    auto d = zero(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (const auto& [j, v] : m.row_data[i]) d.a[i][j] = Rat(v);
    return d;
}

std::vector<Rat> RatMatrix::apply(const std::vector<Rat>& x) const {
    if (static_cast<int>(x.size()) != cols) throw structural_error("apply: size mismatch");
    std::vector<Rat> y(static_cast<std::size_t>(rows), Rat(0));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (a[i][j] != 0) y[i] += a[i][j] * x[j];
    return y;
}

std::vector<int> rref(RatMatrix& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int pr = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.a[i][c] != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(m.a[r], m.a[pr]);
        Rat inv = Rat(1) / m.a[r][c];
        for (int j = c; j < m.cols; ++j) m.a[r][j] *= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m.a[i][c] == 0) continue;
            Rat f = m.a[i][c];
            for (int j = c; j < m.cols; ++j) m.a[i][j] -= f * m.a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

long long rank_rational(const RatMatrix& m) {
    RatMatrix w = m;
    return static_cast<long long>(rref(w).size());
}

std::vector<std::vector<Rat>> kernel_basis(const RatMatrix& m) {
    RatMatrix w = m;
    auto pivots = rref(w);
    std::vector<char> is_pivot(static_cast<std::size_t>(m.cols), 0);
    for (int c : pivots) is_pivot[c] = 1;
    std::vector<std::vector<Rat>> basis;
    for (int c = 0; c < m.cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<Rat> v(static_cast<std::size_t>(m.cols), Rat(0));
        v[c] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -w.a[r][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Rat>> solve(const RatMatrix& a, const std::vector<Rat>& b) {
    if (static_cast<int>(b.size()) != a.rows) throw structural_error("solve: size mismatch");
    RatMatrix aug = RatMatrix::zero(a.rows, a.cols + 1);
    for (int i = 0; i < a.rows; ++i) {
        for (int j = 0; j < a.cols; ++j) aug.a[i][j] = a.a[i][j];
        aug.a[i][a.cols] = b[i];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == a.cols) return std::nullopt;
    std::vector<Rat> x(static_cast<std::size_t>(a.cols), Rat(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.a[r][a.cols];
    return x;
}

ojson matrix_to_json(const SparseIntMatrix& m) {
    ojson j;
    j["rows"] = m.rows;
    j["cols"] = m.cols;
    ojson entries = ojson::array();
    for (int i = 0; i < m.rows; ++i)
        for (const auto& [c, v] : m.row_data[i]) {
            ojson e = ojson::array();
            e.push_back(i);
            e.push_back(c);
            if (v >= std::numeric_limits<long long>::min() &&
                v <= std::numeric_limits<long long>::max())
                e.push_back(static_cast<long long>(v));
            else
                e.push_back(v.str());
            entries.push_back(std::move(e));
        }
    j["entries"] = std::move(entries);
    return j;
}

SparseIntMatrix matrix_from_json(const ojson& j) {
    int r = j.at("rows").get<int>();
    int c = j.at("cols").get<int>();
    std::vector<std::tuple<int, int, Int>> trips;
    for (const auto& e : j.at("entries")) {
        Int v;
        if (e.at(2).is_string())
            v = Int(e.at(2).get<std::string>());
        else
            v = Int(e.at(2).get<long long>());
        trips.push_back({e.at(0).get<int>(), e.at(1).get<int>(), v});
    }
    return SparseIntMatrix::from_triplets(r, c, trips);
}

} // namespace spinelab
