#ifndef IGK_RNG_HPP
#define IGK_RNG_HPP

#include <cstdint>
#include <random>

namespace igk {

using Rng = std::mt19937_64;

// splitmix64 finalizer; gives independent streams for (seed, stream) pairs
// so restarts and subsamples do not depend on evaluation order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
    return Rng(derive_seed(seed, stream));
}

}  // namespace igk

#endif  // IGK_RNG_HPP
