#include "spinelab/numbers.hpp"

namespace spinelab {

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = fnv1a(bytes);
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

} // namespace spinelab
