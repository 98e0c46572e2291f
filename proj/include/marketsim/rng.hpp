#ifndef MARKETSIM_RNG_HPP
#define MARKETSIM_RNG_HPP

#include <cstdint>
#include <cmath>
#include <random>

namespace marketsim {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Seedable random stream. One master seed spawns independent substreams
// (one per agent, one for the market, one per infrastructure task) so
// results do not depend on iteration order.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}

    static Rng substream(std::uint64_t master, std::uint64_t stream) {
        return Rng(splitmix64(master) ^ splitmix64(stream * 0xD1342543DE82EF95ULL + 1));
    }

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // uniform in [-1, 1]
    double uniform_sym() { return 2.0 * uniform() - 1.0; }

    // uniform integer in [0, n)
    std::size_t uniform_int(std::size_t n) {
        return static_cast<std::size_t>(uniform() * static_cast<double>(n));
    }

    bool bernoulli(double p) { return uniform() < p; }

    // Box-Muller; used by test oracles
    double normal() {
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

private:
    std::mt19937_64 gen_;
};

} // namespace marketsim

#endif
