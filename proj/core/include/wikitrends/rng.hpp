#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace wikitrends {

/// Deterministic RNG used everywhere randomness is needed.
///
/// std::mt19937_64 output is fully specified by the standard, and the
/// uniform conversions below avoid the implementation-defined
/// std::*_distribution classes, so identical seeds give bit-identical
/// streams on every platform.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be > 0.
    uint64_t next_below(uint64_t bound) { return engine_() % bound; }

    /// Uniform integer in [lo, hi] inclusive.
    uint64_t next_in(uint64_t lo, uint64_t hi) { return lo + next_below(hi - lo + 1); }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool next_bool(double p) { return next_double() < p; }

    /// Poisson sample via Knuth's product method. O(lambda) per draw,
    /// which is fine at the rates the synthetic generator uses.
    uint32_t next_poisson(double lambda);

private:
    std::mt19937_64 engine_;
};

inline uint32_t Rng::next_poisson(double lambda) {
    if (lambda <= 0.0) return 0;
    // split large rates so exp(-lambda) stays representable
    uint32_t total = 0;
    while (lambda > 500.0) {
        total += next_poisson(500.0);
        lambda -= 500.0;
    }
    const double limit = std::exp(-lambda);
    double product = 1.0;
    uint32_t k = 0;
    do {
        product *= next_double();
        ++k;
    } while (product > limit);
    return total + k - 1;
}

/// Mixes a stage tag into a base seed (FNV-1a over the tag, then a
/// splitmix64 finalizer). Each pipeline stage draws from its own stream,
/// so adding randomness to one stage never shifts another.
inline uint64_t derive_seed(uint64_t base, std::string_view tag) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 1099511628211ull;
    }
    uint64_t z = base ^ h;
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace wikitrends
