#pragma once

#include "kmstab/gaussian.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>

namespace kmstab {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Deterministic per-stream seeds from one master seed. Used so repetitions,
// eval samples and datasets all get independent but reproducible streams.
inline uint64_t derive_seed(uint64_t master, uint64_t stream) {
    return splitmix64(master + 0x9E3779B97F4A7C15ull * (stream + 1));
}

// Thin deterministic RNG. All distributions are implemented on top of the
// raw mt19937_64 stream (no std::*_distribution), so the same seed gives the
// same numbers on every platform and standard library.
class Rng {
  public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    // Uniform on (0, 1), both ends excluded.
    double uniform() { return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53; }

    // Uniform integer in [0, n), rejection sampled (no modulo bias).
    uint64_t below(uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::below: n == 0");
        const uint64_t rem = (UINT64_MAX % n + 1) % n; // 2^64 mod n
        uint64_t v = gen_();
        while (rem != 0 && v > UINT64_MAX - rem) v = gen_();
        return v % n;
    }

    // Standard normal by inverting the cdf; exact determinism, accuracy
    // inherited from normal_quantile.
    double normal() { return normal_quantile(uniform()); }

  private:
    std::mt19937_64 gen_;
};

} // namespace kmstab
