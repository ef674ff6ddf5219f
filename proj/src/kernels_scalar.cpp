#include "kernels_impl.hpp"

#include <bit>

namespace ladlab::kernels::detail {

std::uint64_t popcount_scalar(const Word* a, std::size_t words) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < words; ++i) total += std::popcount(a[i]);
    return total;
}

std::uint64_t xor_popcount_scalar(const Word* a, const Word* b, std::size_t words) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < words; ++i) total += std::popcount(a[i] ^ b[i]);
    return total;
}

std::uint64_t and3_xor_popcount_scalar(const Word* a, const Word* b, const Word* c, const Word* y,
                                       std::size_t words) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < words; ++i) total += std::popcount((a[i] & b[i] & c[i]) ^ y[i]);
    return total;
}

std::uint64_t or_xor_popcount_scalar(const Word* a, const Word* b, const Word* y, std::size_t words) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < words; ++i) total += std::popcount((a[i] | b[i]) ^ y[i]);
    return total;
}

}  // namespace ladlab::kernels::detail
