#ifndef SPINELAB_PRESENTATION_HPP
#define SPINELAB_PRESENTATION_HPP

#include <string>
#include <vector>

#include "spinelab/matrix.hpp"
#include "spinelab/words.hpp"

namespace spinelab {

// A generating set with relator words (letters +-(i+1) index generators).
// Abelianizing the relators bounds the rationalized abelianization from
// above; the bound is exact when the relator matrix has full rank, since
// every verified relator is a genuine relation.
struct Presentation {
    int num_generators = 0;
    std::vector<std::vector<int>> relators;
};

long long abelianization_rank_bound(const Presentation& p);

// Nielsen-style certificate for Aut(F_n) and Out(F_n): generators are the
// adjacent transpositions, the inversion of x_1 and one transvection; the
// relators kill every generator rationally. Relators are verified by
// composing automorphisms, so a transcription mistake cannot go unnoticed.
struct TorsionCertificate {
    int n = 0;
    std::vector<FreeAutomorphism> generators;
    Presentation presentation;
};

TorsionCertificate nielsen_torsion_certificate(int n);

// Every relator composes to the identity automorphism (hence maps to 1 in
// both Aut(F_n) and its unpointed quotient).
bool verify_certificate(const TorsionCertificate& c);

// Rank of H_1(-; Q) certified by the relators: gens - rank(relator matrix).
// Throws if the certificate fails verification.
long long certified_h1_rank(const TorsionCertificate& c);

} // namespace spinelab

#endif
