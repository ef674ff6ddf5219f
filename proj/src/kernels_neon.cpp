#include "kernels_impl.hpp"

#if LADLAB_NEON

#include <arm_neon.h>

#include <bit>

namespace ladlab::kernels::detail {
namespace {

inline uint64x2_t load(const Word* p) { return vld1q_u64(p); }

// Byte popcounts widened and accumulated into two 64-bit lanes.
inline uint64x2_t popcount_lanes(uint64x2_t v) {
    const uint8x16_t bytes = vcntq_u8(vreinterpretq_u8_u64(v));
    return vpaddlq_u32(vpaddlq_u16(vpaddlq_u8(bytes)));
}

}  // namespace

std::uint64_t popcount_neon(const Word* a, std::size_t words) {
    uint64x2_t acc = vdupq_n_u64(0);
    std::size_t i = 0;
    for (; i + 2 <= words; i += 2) acc = vaddq_u64(acc, popcount_lanes(load(a + i)));
    std::uint64_t total = vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1);
    for (; i < words; ++i) total += std::popcount(a[i]);
    return total;
}

std::uint64_t xor_popcount_neon(const Word* a, const Word* b, std::size_t words) {
    uint64x2_t acc = vdupq_n_u64(0);
    std::size_t i = 0;
    for (; i + 2 <= words; i += 2) {
        acc = vaddq_u64(acc, popcount_lanes(veorq_u64(load(a + i), load(b + i))));
    }
    std::uint64_t total = vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1);
    for (; i < words; ++i) total += std::popcount(a[i] ^ b[i]);
    return total;
}

std::uint64_t and3_xor_popcount_neon(const Word* a, const Word* b, const Word* c, const Word* y,
                                     std::size_t words) {
    uint64x2_t acc = vdupq_n_u64(0);
    std::size_t i = 0;
    for (; i + 2 <= words; i += 2) {
        const uint64x2_t h = vandq_u64(vandq_u64(load(a + i), load(b + i)), load(c + i));
        acc = vaddq_u64(acc, popcount_lanes(veorq_u64(h, load(y + i))));
    }
    std::uint64_t total = vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1);
    for (; i < words; ++i) total += std::popcount((a[i] & b[i] & c[i]) ^ y[i]);
    return total;
}

std::uint64_t or_xor_popcount_neon(const Word* a, const Word* b, const Word* y, std::size_t words) {
    uint64x2_t acc = vdupq_n_u64(0);
    std::size_t i = 0;
    for (; i + 2 <= words; i += 2) {
        const uint64x2_t h = vorrq_u64(load(a + i), load(b + i));
        acc = vaddq_u64(acc, popcount_lanes(veorq_u64(h, load(y + i))));
    }
    std::uint64_t total = vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1);
    for (; i < words; ++i) total += std::popcount((a[i] | b[i]) ^ y[i]);
    return total;
}

}  // namespace ladlab::kernels::detail

#endif  // LADLAB_NEON
