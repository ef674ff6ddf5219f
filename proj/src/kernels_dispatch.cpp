#include "kernels_impl.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace ladlab::kernels {
namespace {

const KernelTable kScalar{
    "scalar",
    detail::popcount_scalar,
    detail::xor_popcount_scalar,
    detail::and3_xor_popcount_scalar,
    detail::or_xor_popcount_scalar,
};

#if LADLAB_X86
const KernelTable kAvx2{
    "avx2",
    detail::popcount_avx2,
    detail::xor_popcount_avx2,
    detail::and3_xor_popcount_avx2,
    detail::or_xor_popcount_avx2,
};
#endif

#if LADLAB_NEON
const KernelTable kNeon{
    "neon",
    detail::popcount_neon,
    detail::xor_popcount_neon,
    detail::and3_xor_popcount_neon,
    detail::or_xor_popcount_neon,
};
#endif

const KernelTable* table_for(Backend backend) {
    switch (backend) {
        case Backend::Scalar: return &scalar_table();
        case Backend::Avx2: return avx2_table();
        case Backend::Neon: return neon_table();
        case Backend::Auto: break;
    }
    if (const auto* t = avx2_table()) return t;
    if (const auto* t = neon_table()) return t;
    return &scalar_table();
}

const KernelTable* initial_table() {
    if (const char* env = std::getenv("LADLAB_KERNELS")) {
        const std::string v{env};
        const KernelTable* t = nullptr;
        if (v == "scalar") t = table_for(Backend::Scalar);
        else if (v == "avx2") t = table_for(Backend::Avx2);
        else if (v == "neon") t = table_for(Backend::Neon);
        if (t != nullptr) return t;
    }
    return table_for(Backend::Auto);
}

std::atomic<const KernelTable*>& current() {
    static std::atomic<const KernelTable*> table{initial_table()};
    return table;
}

void check_sizes(std::size_t a, std::size_t b) {
    if (a != b) throw std::invalid_argument("kernels: operand lengths differ");
}

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

const KernelTable* avx2_table() {
#if LADLAB_X86
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &kAvx2 : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable* neon_table() {
#if LADLAB_NEON
    return &kNeon;
#else
    return nullptr;
#endif
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

void select(Backend backend) {
    const KernelTable* t = table_for(backend);
    if (t == nullptr) throw std::invalid_argument("kernels: requested backend is not available");
    current().store(t, std::memory_order_release);
}

std::uint64_t popcount(std::span<const Word> a) { return active().popcount(a.data(), a.size()); }

std::uint64_t xor_popcount(std::span<const Word> a, std::span<const Word> b) {
    check_sizes(a.size(), b.size());
    return active().xor_popcount(a.data(), b.data(), a.size());
}

std::uint64_t and3_xor_popcount(std::span<const Word> a, std::span<const Word> b,
                                std::span<const Word> c, std::span<const Word> y) {
    check_sizes(a.size(), b.size());
    check_sizes(a.size(), c.size());
    check_sizes(a.size(), y.size());
    return active().and3_xor_popcount(a.data(), b.data(), c.data(), y.data(), a.size());
}

std::uint64_t or_xor_popcount(std::span<const Word> a, std::span<const Word> b,
                              std::span<const Word> y) {
    check_sizes(a.size(), b.size());
    check_sizes(a.size(), y.size());
    return active().or_xor_popcount(a.data(), b.data(), y.data(), a.size());
}

}  // namespace ladlab::kernels
