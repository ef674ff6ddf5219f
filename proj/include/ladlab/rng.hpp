#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace ladlab {

// One splitmix64 step on state x (increment, then finalizer); bijective.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Deterministic random stream.
//
// The engine is std::mt19937_64 seeded with the 64-bit seed, whose output
// sequence is fixed by the C++ standard. Bounded integers come from a
// multiply-and-reject draw implemented here, so no implementation-defined
// std distribution is involved.
//
// Child seeds are derived by `derive(parent, {i0, i1, ...})`:
//   h = mix64(parent ^ mix64(arity))
//   h = mix64(h ^ mix64(i_k + 0x9e3779b97f4a7c15 * (k + 1)))   for each index
// The result depends only on (parent, indices), never on the order in which
// workers ask for it.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : seed_{seed}, engine_{seed} {}

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform integer in [0, bound). bound must be nonzero.
    std::uint64_t below(std::uint64_t bound);

    static std::uint64_t derive(std::uint64_t parent, std::initializer_list<std::uint64_t> path) noexcept;

    SeededRng child(std::initializer_list<std::uint64_t> path) const {
        return SeededRng{derive(seed_, path)};
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace ladlab
