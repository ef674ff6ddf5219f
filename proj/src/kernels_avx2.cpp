#include "kernels_impl.hpp"

#if LADLAB_X86

#include <immintrin.h>

#include <bit>

// Functions here carry target("avx2") so the rest of the library builds for
// the baseline ISA; dispatch only calls them after a CPU feature check.
#define LADLAB_AVX2 __attribute__((target("avx2")))

namespace ladlab::kernels::detail {
namespace {

// Nibble-lookup popcount of each byte, summed into the four 64-bit lanes.
LADLAB_AVX2 inline __m256i popcount_lanes(__m256i v) {
    const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                            0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low_mask = _mm256_set1_epi8(0x0f);
    const __m256i lo = _mm256_and_si256(v, low_mask);
    const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
    const __m256i counts =
        _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
    return _mm256_sad_epu8(counts, _mm256_setzero_si256());
}

LADLAB_AVX2 inline std::uint64_t horizontal_sum(__m256i acc) {
    return static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 0)) +
           static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 1)) +
           static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 2)) +
           static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 3));
}

LADLAB_AVX2 inline __m256i load(const Word* p) {
    return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

}  // namespace

LADLAB_AVX2 std::uint64_t popcount_avx2(const Word* a, std::size_t words) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= words; i += 4) acc = _mm256_add_epi64(acc, popcount_lanes(load(a + i)));
    std::uint64_t total = horizontal_sum(acc);
    for (; i < words; ++i) total += std::popcount(a[i]);
    return total;
}

LADLAB_AVX2 std::uint64_t xor_popcount_avx2(const Word* a, const Word* b, std::size_t words) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= words; i += 4) {
        acc = _mm256_add_epi64(acc, popcount_lanes(_mm256_xor_si256(load(a + i), load(b + i))));
    }
    std::uint64_t total = horizontal_sum(acc);
    for (; i < words; ++i) total += std::popcount(a[i] ^ b[i]);
    return total;
}

LADLAB_AVX2 std::uint64_t and3_xor_popcount_avx2(const Word* a, const Word* b, const Word* c,
                                                 const Word* y, std::size_t words) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= words; i += 4) {
        const __m256i h = _mm256_and_si256(_mm256_and_si256(load(a + i), load(b + i)), load(c + i));
        acc = _mm256_add_epi64(acc, popcount_lanes(_mm256_xor_si256(h, load(y + i))));
    }
    std::uint64_t total = horizontal_sum(acc);
    for (; i < words; ++i) total += std::popcount((a[i] & b[i] & c[i]) ^ y[i]);
    return total;
}

LADLAB_AVX2 std::uint64_t or_xor_popcount_avx2(const Word* a, const Word* b, const Word* y,
                                               std::size_t words) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= words; i += 4) {
        const __m256i h = _mm256_or_si256(load(a + i), load(b + i));
        acc = _mm256_add_epi64(acc, popcount_lanes(_mm256_xor_si256(h, load(y + i))));
    }
    std::uint64_t total = horizontal_sum(acc);
    for (; i < words; ++i) total += std::popcount((a[i] | b[i]) ^ y[i]);
    return total;
}

}  // namespace ladlab::kernels::detail

#endif  // LADLAB_X86
