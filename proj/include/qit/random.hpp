#pragma once

// Seeded randomness for simulations and property tests.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. Uniform doubles are built from the top 53 bits directly rather
// than through std::uniform_real_distribution, whose algorithm is
// implementation-defined, so results are identical across standard libraries.

#include <cmath>
#include <cstdint>
#include <random>

#include "qit/cmatrix.hpp"

namespace qit {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

    /// Standard normal via Box-Muller.
    double normal() {
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    Complex complex_normal() { return {normal(), normal()}; }

    /// Independent child stream for partitioned work.
    Rng split(std::uint64_t stream) { return Rng(mix(next_u64() ^ mix(stream + 0x9e3779b97f4a7c15ULL))); }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
};

}  // namespace qit
