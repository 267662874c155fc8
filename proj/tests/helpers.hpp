#pragma once

// Random instances shared by the property tests.

#include <cmath>
#include <cstdint>
#include <vector>

#include "qit/qit.hpp"

namespace qit::testing {

inline CMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
    CMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
    return m;
}

inline CMatrix random_hermitian(Rng& rng, std::size_t n) {
    const CMatrix a = random_matrix(rng, n, n);
    return 0.5 * (a + dagger(a));
}

/// exp(-iH) of a random Hermitian H.
inline CMatrix random_unitary(Rng& rng, std::size_t n) {
    return mat_func(random_hermitian(rng, n), [](double e) { return std::exp(Complex(0.0, -e)); });
}

inline CVector random_vector(Rng& rng, std::size_t n) {
    CVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = rng.complex_normal();
    return v.normalized();
}

inline PureState random_pure(Rng& rng, Dims dims) {
    std::size_t d = 1;
    for (const auto x : dims) d *= x;
    return PureState(random_vector(rng, d), std::move(dims));
}

/// G G^dagger / tr, full rank with probability 1.
inline DensityOperator random_density(Rng& rng, Dims dims) {
    std::size_t d = 1;
    for (const auto x : dims) d *= x;
    const CMatrix g = random_matrix(rng, d, d);
    CMatrix m = g * dagger(g);
    m = Complex(1.0 / trace(m).real()) * m;
    return DensityOperator(hermitian_part(m), std::move(dims));
}

inline DensityOperator random_density(Rng& rng, std::size_t d) { return random_density(rng, Dims{d}); }

inline std::vector<double> random_distribution(Rng& rng, std::size_t n) {
    std::vector<double> p(n);
    double total = 0.0;
    for (auto& x : p) {
        x = rng.uniform() + 1e-3;
        total += x;
    }
    for (auto& x : p) x /= total;
    return p;
}

inline double binomial_sigma(double p, std::uint64_t trials) {
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

}  // namespace qit::testing
