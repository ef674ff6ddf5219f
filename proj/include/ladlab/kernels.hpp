#pragma once

// Word-parallel bit-vector kernels.
//
// Every kernel has a scalar reference implementation. SIMD variants (AVX2 on
// x86-64, NEON on AArch64) are compiled when the target allows it and chosen
// at runtime from the CPU's feature set. All variants must return identical
// results; tests/unit/test_kernels.cpp checks that on random inputs.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace ladlab::kernels {

using Word = std::uint64_t;

struct KernelTable {
    std::string_view name;

    // Number of set bits in a[0..words).
    std::uint64_t (*popcount)(const Word* a, std::size_t words);

    // popcount(a ^ b): Hamming distance of two bit vectors.
    std::uint64_t (*xor_popcount)(const Word* a, const Word* b, std::size_t words);

    // popcount((a & b & c) ^ y): disagreements of a three-literal conjunction
    // against a label vector.
    std::uint64_t (*and3_xor_popcount)(const Word* a, const Word* b, const Word* c, const Word* y,
                                       std::size_t words);

    // popcount((a | b) ^ y).
    std::uint64_t (*or_xor_popcount)(const Word* a, const Word* b, const Word* y, std::size_t words);
};

enum class Backend { Auto, Scalar, Avx2, Neon };

const KernelTable& scalar_table();

// nullptr when the variant was not compiled in or the CPU lacks the feature.
const KernelTable* avx2_table();
const KernelTable* neon_table();

// The table used by the span wrappers below. Selected on first use: the
// LADLAB_KERNELS environment variable (scalar|avx2|neon) wins, otherwise the
// widest supported variant.
const KernelTable& active();

// Pin the active table. Throws std::invalid_argument if the requested backend
// is unavailable on this machine.
void select(Backend backend);

std::uint64_t popcount(std::span<const Word> a);
std::uint64_t xor_popcount(std::span<const Word> a, std::span<const Word> b);
std::uint64_t and3_xor_popcount(std::span<const Word> a, std::span<const Word> b,
                                std::span<const Word> c, std::span<const Word> y);
std::uint64_t or_xor_popcount(std::span<const Word> a, std::span<const Word> b,
                              std::span<const Word> y);

}  // namespace ladlab::kernels
