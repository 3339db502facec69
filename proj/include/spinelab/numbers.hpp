#ifndef SPINELAB_NUMBERS_HPP
#define SPINELAB_NUMBERS_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <string_view>

namespace spinelab {

// All homology-facing arithmetic is exact. Entry growth in eliminations is real
// even at small sizes, so fixed-width integers are never used there.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int int_gcd(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// FNV-1a, used for cache keys and result digests. Not cryptographic; it only
// needs to be stable across runs of the same build.
inline std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string fnv1a_hex(std::string_view bytes);

inline constexpr std::string_view kVersion = "0.1.0";

} // namespace spinelab

#endif
