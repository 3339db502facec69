#include "spinelab/presentation.hpp"

namespace spinelab {

long long abelianization_rank_bound(const Presentation& p) {
    std::vector<std::tuple<int, int, Int>> trips;
    for (std::size_t r = 0; r < p.relators.size(); ++r) {
        std::vector<long long> row(static_cast<std::size_t>(p.num_generators), 0);
        for (int x : p.relators[r]) {
            int i = x > 0 ? x : -x;
            if (i < 1 || i > p.num_generators)
                throw structural_error("relator letter out of range");
            row[static_cast<std::size_t>(i) - 1] += x > 0 ? 1 : -1;
        }
        for (int c = 0; c < p.num_generators; ++c)
            if (row[static_cast<std::size_t>(c)] != 0)
                trips.push_back({static_cast<int>(r), c, Int(row[static_cast<std::size_t>(c)])});
    }
    auto m = SparseIntMatrix::from_triplets(static_cast<int>(p.relators.size()),
                                            p.num_generators, trips);
    return p.num_generators - rank_ff(m);
}

TorsionCertificate nielsen_torsion_certificate(int n) {
    if (n < 2) throw unsupported_error("certificate needs n >= 2");
    TorsionCertificate c;
    c.n = n;
    // Generators: tau_1..tau_{n-1} (adjacent swaps), sigma (invert x_1),
    // E (x_1 -> x_1 x_2).
    for (int i = 1; i < n; ++i) c.generators.push_back(nielsen_swap(n, i, i + 1));
    c.generators.push_back(nielsen_invert(n, 1));
    c.generators.push_back(nielsen_transvection(n, 1, 2, false));
    int tau0 = 1;                 // generator ids are 1-based in relators
    int sigma = n;                // after the n-1 swaps
    int e = n + 1;
    c.presentation.num_generators = n + 1;
    for (int i = 0; i < n - 1; ++i) c.presentation.relators.push_back({tau0 + i, tau0 + i});
    c.presentation.relators.push_back({sigma, sigma});
    // C = tau_1 sigma tau_1 inverts x_2; conjugating E by it gives E^{-1},
    // so C E C E is a relator and kills E rationally.
    c.presentation.relators.push_back({tau0, sigma, tau0, e, tau0, sigma, tau0, e});
    return c;
}

bool verify_certificate(const TorsionCertificate& c) {
    for (const auto& rel : c.presentation.relators) {
        FreeAutomorphism acc = FreeAutomorphism::identity(c.n);
        for (int x : rel) {
            int i = x > 0 ? x : -x;
            if (i < 1 || i > static_cast<int>(c.generators.size())) return false;
            const FreeAutomorphism& g = c.generators[static_cast<std::size_t>(i) - 1];
            acc = acc.compose(x > 0 ? g : g.inverse());
        }
        if (!acc.is_identity()) return false;
    }
    return true;
}

long long certified_h1_rank(const TorsionCertificate& c) {
    if (!verify_certificate(c))
        throw structural_error("certificate relators do not hold");
    return abelianization_rank_bound(c.presentation);
}

} // namespace spinelab
