#ifndef SPINELAB_WORDS_HPP
#define SPINELAB_WORDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spinelab/errors.hpp"

#include <json.hpp>

namespace spinelab {

using ojson = nlohmann::ordered_json;

// Freely reduced word over x_1..x_n; letter +i is x_i, -i its inverse.
// The string form writes x_1 as 'a', x_1^{-1} as 'A', and so on.
class Word {
public:
    Word() = default;
    static Word reduced(std::vector<int> letters);

    const std::vector<int>& letters() const { return letters_; }
    bool trivial() const { return letters_.empty(); }
    std::size_t size() const { return letters_.size(); }

    Word inverse() const;
    static Word concat(const Word& a, const Word& b);  // reduced product a*b

    bool operator==(const Word& o) const { return letters_ == o.letters_; }
    bool operator!=(const Word& o) const { return !(*this == o); }

    std::string str() const;
    static Word parse(const std::string& s);

    static Word generator(int i) { return Word::reduced({i}); }

private:
    std::vector<int> letters_;
};

// Automorphism of F_n given by generator images together with the images
// under the inverse; both directions are verified on construction.
struct FreeAutomorphism {
    int n = 0;
    std::vector<Word> images;
    std::vector<Word> inverse_images;

    static FreeAutomorphism identity(int n);
    static FreeAutomorphism create(int n, std::vector<Word> images,
                                   std::vector<Word> inverse_images);

    Word apply(const Word& w) const;
    Word apply_inverse(const Word& w) const;
    FreeAutomorphism compose(const FreeAutomorphism& other) const;  // this after other
    FreeAutomorphism inverse() const;
    bool is_identity() const;
    bool operator==(const FreeAutomorphism& o) const {
        return n == o.n && images == o.images;
    }
};

// Elementary Nielsen moves; products of these are how random elements are
// built, keeping the inverse known by construction.
FreeAutomorphism nielsen_swap(int n, int i, int j);       // x_i <-> x_j
FreeAutomorphism nielsen_invert(int n, int i);            // x_i -> x_i^{-1}
FreeAutomorphism nielsen_transvection(int n, int i, int j, bool left);
// left: x_i -> x_j x_i ; otherwise x_i -> x_i x_j

// Element of the mapping-class model: an automorphism of F_n plus one word
// per non-base distinguished point, recording the loop its thorn traverses.
struct GammaElement {
    int n = 0;
    int s = 0;
    FreeAutomorphism phi;
    std::vector<Word> thorns;  // size s-1 when s >= 1, else empty

    static GammaElement identity(int n, int s);
    bool operator==(const GammaElement& o) const {
        return n == o.n && s == o.s && phi == o.phi && thorns == o.thorns;
    }
};

// (phi_a, w) * (phi_b, u) = (phi_a phi_b, phi_a(u_i) w_i).
GammaElement compose(const GammaElement& a, const GammaElement& b);
GammaElement inverse(const GammaElement& g);

// Stabilizations. alpha: rank n+1, same s. mu: same rank, s+1 (appends the
// trivial thorn word). beta: rank n+1, s-2, consuming the last two boundary
// data; at s = 2 the base sphere's implicit trivial word plays the role of
// w_0. gamma_fill: drops the last thorn word (s >= 2), or lands in the
// unpointed group at s = 1, where equality is up to inner automorphisms.
GammaElement alpha(const GammaElement& g);
GammaElement mu(const GammaElement& g);
GammaElement beta(const GammaElement& g);
GammaElement gamma_fill(const GammaElement& g);

// Outer class of an automorphism; equality decided exactly via is_inner.
struct OuterClass {
    FreeAutomorphism rep;
};
bool outer_equal(const OuterClass& a, const OuterClass& b);

// Equality in the modeled group: exact for s >= 1, up to inner for s = 0.
bool gamma_equal(const GammaElement& a, const GammaElement& b);

// Exact decision: returns the unique witness g with phi = conj_g when phi is
// inner, std::nullopt otherwise. No search bound is involved: the witness is
// parsed off phi(x_1), phi(x_2) and verified against all generators.
std::optional<Word> is_inner(const FreeAutomorphism& phi);

// F_n coordinate of a kernel element of the forget-last-point map: defined
// when phi is the identity and all but the last thorn word are trivial.
std::optional<Word> kernel_project(const GammaElement& g);

GammaElement random_element(int n, int s, int max_len, std::uint64_t seed);
Word random_word(int n, int max_len, std::uint64_t seed);

ojson gamma_to_json(const GammaElement& g);
GammaElement gamma_from_json(const ojson& j);

} // namespace spinelab

#endif
