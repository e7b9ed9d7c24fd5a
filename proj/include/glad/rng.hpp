#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace glad {

// 64-bit FNV-1a. Used to derive per-component sub-seeds from one master seed.
inline uint64_t fnv1a64(std::string_view s, uint64_t h = 14695981039346656037ull) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Deterministic RNG. std::mt19937_64's output sequence is fully specified by
// the standard; the distribution helpers are hand-rolled because the
// std::*_distribution classes are implementation-defined and would break
// byte-identical reproducibility across toolchains.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(splitmix64(seed)), seed_mix_(splitmix64(seed)) {}

    // Independent child stream for a named component. Independent of how many
    // draws were made from this stream.
    Rng child(std::string_view tag) const { return Rng(seed_mix_ ^ fnv1a64(tag)); }

    uint64_t next() { return eng_(); }

    // Uniform in [0, n). Modulo bias is negligible for the ranges used here.
    uint64_t below(uint64_t n) { return n <= 1 ? 0 : eng_() % n; }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    bool coin() { return (eng_() >> 63) != 0; }

    bool bernoulli(double p) { return unit() < p; }

    // Uniform in [0, 1) with 53-bit resolution.
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    // Box-Muller; one spare cached.
    double normal(double mean, double stddev) {
        if (has_spare_) {
            has_spare_ = false;
            return mean + stddev * spare_;
        }
        double u1 = 0.0;
        do {
            u1 = unit();
        } while (u1 <= 0.0);
        const double u2 = unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return mean + stddev * r * std::cos(a);
    }

    template <typename T>
    void shuffle(std::vector<T>& xs) {
        for (size_t k = xs.size(); k > 1; --k) {
            size_t r = static_cast<size_t>(below(k));
            std::swap(xs[k - 1], xs[r]);
        }
    }

    // k distinct values from [0, n), in selection order.
    std::vector<size_t> sample_indices(size_t n, size_t k) {
        std::vector<size_t> all(n);
        for (size_t t = 0; t < n; ++t) all[t] = t;
        shuffle(all);
        if (k < all.size()) all.resize(k);
        return all;
    }

private:
    std::mt19937_64 eng_;
    uint64_t seed_mix_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace glad
