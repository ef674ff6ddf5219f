#pragma once

#include "ladlab/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define LADLAB_X86 1
#else
#define LADLAB_X86 0
#endif

#if defined(__aarch64__) && (defined(__ARM_NEON) || defined(__ARM_NEON__))
#define LADLAB_NEON 1
#else
#define LADLAB_NEON 0
#endif

namespace ladlab::kernels::detail {

std::uint64_t popcount_scalar(const Word* a, std::size_t words);
std::uint64_t xor_popcount_scalar(const Word* a, const Word* b, std::size_t words);
std::uint64_t and3_xor_popcount_scalar(const Word* a, const Word* b, const Word* c, const Word* y,
                                       std::size_t words);
std::uint64_t or_xor_popcount_scalar(const Word* a, const Word* b, const Word* y, std::size_t words);

#if LADLAB_X86
std::uint64_t popcount_avx2(const Word* a, std::size_t words);
std::uint64_t xor_popcount_avx2(const Word* a, const Word* b, std::size_t words);
std::uint64_t and3_xor_popcount_avx2(const Word* a, const Word* b, const Word* c, const Word* y,
                                     std::size_t words);
std::uint64_t or_xor_popcount_avx2(const Word* a, const Word* b, const Word* y, std::size_t words);
#endif

#if LADLAB_NEON
std::uint64_t popcount_neon(const Word* a, std::size_t words);
std::uint64_t xor_popcount_neon(const Word* a, const Word* b, std::size_t words);
std::uint64_t and3_xor_popcount_neon(const Word* a, const Word* b, const Word* c, const Word* y,
                                     std::size_t words);
std::uint64_t or_xor_popcount_neon(const Word* a, const Word* b, const Word* y, std::size_t words);
#endif

}  // namespace ladlab::kernels::detail
