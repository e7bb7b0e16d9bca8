#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace sknn {

/// All seeded behavior in the library flows through std::mt19937_64 (fully
/// specified by the standard) with the bounded draws below, so runs
/// reproduce bit-for-bit across platforms. std::shuffle and
/// std::uniform_int_distribution are avoided on purpose: their outputs are
/// implementation-defined.

/// Uniform draw in [0, n) via 128-bit multiply-shift of one generator word.
inline std::uint64_t bounded_draw(std::mt19937_64& gen, std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(gen()) * static_cast<unsigned __int128>(n)) >> 64);
}

/// In-place Fisher-Yates with bounded_draw.
template <typename T>
void deterministic_shuffle(std::vector<T>& items, std::mt19937_64& gen) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(bounded_draw(gen, i));
        std::swap(items[i - 1], items[j]);
    }
}

/// First `count` indices of a shuffled [0, n) range; seeded sampling without
/// replacement.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t count, std::uint64_t seed);

}  // namespace sknn
