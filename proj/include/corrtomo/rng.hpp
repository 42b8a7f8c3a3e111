#ifndef CORRTOMO_RNG_HPP
#define CORRTOMO_RNG_HPP

#include <cstdint>
#include <random>

namespace corrtomo {

/// splitmix64 mix step; used to derive independent per-shot seeds so
/// results do not depend on thread scheduling.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return mix_seed(seed ^ mix_seed(index));
}

inline std::mt19937_64 make_rng(std::uint64_t seed) {
    return std::mt19937_64(mix_seed(seed));
}

}  // namespace corrtomo

#endif
