#pragma once

#include <cstdint>
#include <cmath>

namespace confit {

// splitmix64 finalizer (Steele, Lea & Flood; Vigna's fixed-increment variant).
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * UINT64_C(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)) * UINT64_C(0x94D049BB133111EB);
    return z ^ (z >> 31);
}

// Counter-based splittable stream. Every stream is identified by a 64-bit
// state; output i is mix64(state + i * golden_gamma), so streams derived
// from distinct (seed, index) pairs are independent of execution order.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += UINT64_C(0x9E3779B97F4A7C15);
        return mix64(state_);
    }

    // uniform in [0, 1), 53-bit resolution
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // unbiased uniform integer in [0, n); Lemire's multiply-shift with
    // rejection of the biased low range
    std::uint64_t next_below(std::uint64_t n) {
        std::uint64_t x = next_u64();
        __uint128_t m = static_cast<__uint128_t>(x) * n;
        auto low = static_cast<std::uint64_t>(m);
        if (low < n) {
            std::uint64_t threshold = (0 - n) % n;
            while (low < threshold) {
                x = next_u64();
                m = static_cast<__uint128_t>(x) * n;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // standard normal via Box-Muller (cosine branch only)
    double next_gaussian() {
        double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
        double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    // triangular(min, mode, max) by inverse CDF
    double next_triangular(double a, double m, double c) {
        double u = next_double();
        double fm = (c == a) ? 0.5 : (m - a) / (c - a);
        if (u < fm) return a + std::sqrt(u * (c - a) * (m - a));
        return c - std::sqrt((1.0 - u) * (c - a) * (c - m));
    }

private:
    std::uint64_t state_;
};

// Deterministic stream derivation: hashes (master seed, index, attempt) into
// a fresh stream state. Resample r of a bootstrap run always sees the same
// stream no matter which thread executes it.
inline RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t index,
                                  std::uint64_t attempt = 0) {
    std::uint64_t h = mix64(master_seed ^ UINT64_C(0xA0761D6478BD642F));
    h = mix64(h + index * UINT64_C(0xE7037ED1A0B428DB));
    h = mix64(h + attempt * UINT64_C(0x8EBC6AF09C88C6E3));
    return RandomStream(h);
}

}  // namespace confit
