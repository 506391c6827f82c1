#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace kpz {

// SplitMix64 finalizer, used only to derive seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Seed of the k-th child stream of a master seed.
inline std::uint64_t split_seed(std::uint64_t master, std::uint64_t k) {
    return splitmix64(master ^ splitmix64(k + 0x632BE59BD9B4E019ULL));
}

// One generator per replica. The engine is mt19937_64 seeded with
// splitmix64(seed); children are derived with split_seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : seed_(seed), eng_(splitmix64(seed)) {}

    std::uint64_t seed() const { return seed_; }
    Rng child(std::uint64_t k) const { return Rng(split_seed(seed_, k)); }
    std::mt19937_64& engine() { return eng_; }

    // uniform on the open interval (0,1)
    double uniform() {
        double u;
        do {
            u = std::generate_canonical<double, 53>(eng_);
        } while (u <= 0.0);
        return u;
    }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    bool bernoulli(double p) { return uniform() < p; }
    double exponential(double rate = 1.0) { return -std::log(uniform()) / rate; }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }
    long poisson(double mean) {
        if (mean <= 0) return 0;
        return std::poisson_distribution<long>(mean)(eng_);
    }
    // P(k) = (1-q) q^k, k >= 0
    long geometric(double q) {
        if (q <= 0) return 0;
        return static_cast<long>(std::floor(std::log(uniform()) / std::log(q)));
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
};

} // namespace kpz
