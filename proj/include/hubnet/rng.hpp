#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace hubnet {

// Deterministic RNG streams. Every randomized routine derives its own
// generator from (master seed, purpose tag, index), so adding or reordering
// draws in one place never perturbs another, and the same seed reproduces
// the same run on every platform that ships the same standard library.

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : text) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace detail

// Mixes the inputs into a single well-spread 64-bit value.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag,
                                 std::uint64_t index = 0) {
    std::uint64_t state = seed;
    std::uint64_t mixed = detail::splitmix64(state);
    state ^= detail::fnv1a(tag);
    mixed ^= detail::splitmix64(state);
    state ^= index;
    mixed ^= detail::splitmix64(state);
    return mixed;
}

inline std::mt19937_64 make_stream(std::uint64_t seed, std::string_view tag,
                                   std::uint64_t index = 0) {
    return std::mt19937_64(derive_seed(seed, tag, index));
}

// Uniform draw on [0, 1) using the top 53 bits of one generator word.
inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Standard exponential via inversion.
inline double exponential_draw(std::mt19937_64& gen) {
    double u = uniform01(gen);
    return -std::log1p(-u);
}

// Beta(alpha, beta) as the usual ratio of gamma draws.
inline double beta_draw(std::mt19937_64& gen, double alpha, double beta) {
    std::gamma_distribution<double> ga(alpha, 1.0);
    std::gamma_distribution<double> gb(beta, 1.0);
    double x = ga(gen);
    double y = gb(gen);
    return x / (x + y);
}

}  // namespace hubnet
