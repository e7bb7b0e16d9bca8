#include "sknn/rng.hpp"

namespace sknn {

std::vector<std::size_t> sample_indices(std::size_t n, std::size_t count, std::uint64_t seed) {
    std::vector<std::size_t> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = i;
    std::mt19937_64 gen(seed);
    deterministic_shuffle(ids, gen);
    ids.resize(std::min(count, n));
    return ids;
}

}  // namespace sknn
