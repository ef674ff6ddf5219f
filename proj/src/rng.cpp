#include "ladlab/rng.hpp"

#include <stdexcept>

namespace ladlab {

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t SeededRng::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("SeededRng::below: bound must be positive");
    unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            m = static_cast<unsigned __int128>(engine_()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

std::uint64_t SeededRng::derive(std::uint64_t parent, std::initializer_list<std::uint64_t> path) noexcept {
    std::uint64_t h = mix64(parent ^ mix64(path.size()));
    std::uint64_t k = 1;
    for (std::uint64_t index : path) {
        h = mix64(h ^ mix64(index + 0x9e3779b97f4a7c15ULL * k));
        ++k;
    }
    return h;
}

}  // namespace ladlab
