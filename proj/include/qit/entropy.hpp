#pragma once

// Classical and quantum entropies. Information quantities are in bits;
// thermodynamic entropies are in units of k (nats times k).

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qit/qstate.hpp"

namespace qit {

inline constexpr double kLn2 = std::numbers::ln2;

/// Probability distribution; entries nonnegative and summing to 1 within 1e-9.
class ProbDist {
public:
    explicit ProbDist(std::vector<double> p) : p_(std::move(p)) {
        if (p_.empty()) throw ContractError("ProbDist: empty distribution");
        double total = 0.0;
        for (const double x : p_) {
            if (!(x >= 0.0) || !std::isfinite(x)) throw ContractError("ProbDist: invalid probability " + format_number(x));
            total += x;
        }
        if (std::abs(total - 1.0) > kDefaultTolerance) {
            throw ContractError("ProbDist: probabilities sum to " + format_number(total) + ", expected 1");
        }
    }
    ProbDist(std::initializer_list<double> p) : ProbDist(std::vector<double>(p)) {}

    const std::vector<double>& values() const noexcept { return p_; }
    std::size_t size() const noexcept { return p_.size(); }
    double operator[](std::size_t i) const { return p_[i]; }

private:
    std::vector<double> p_;
};

/// Entropy in bits with its optional thermodynamic counterpart (units of k).
struct EntropyValue {
    double bits = 0.0;
    std::optional<double> thermo;

    static EntropyValue with_thermo(double bits, double k = 1.0) { return {bits, k * kLn2 * bits}; }
};

/// log2(1/p)
inline double surprise(double p) {
    if (!(p > 0.0) || p > 1.0) throw DomainError("surprise: probability must lie in (0, 1]");
    return -std::log2(p);
}

namespace detail {

inline double shannon_raw(const std::vector<double>& p) {
    double h = 0.0;
    for (const double x : p)
        if (x > 0.0) h -= x * std::log2(x);
    return std::max(h, 0.0);
}

}  // namespace detail

/// -sum p log2 p with 0 log 0 = 0.
inline double shannon(const ProbDist& d) { return detail::shannon_raw(d.values()); }

/// H(q) = -q log2 q - (1-q) log2 (1-q)
inline double binary_entropy(double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError("binary_entropy: q must lie in [0, 1]");
    return detail::shannon_raw({q, 1.0 - q});
}

/// Eigenvalues of rho cleaned for entropy evaluation: residues in [-1e-6, 0)
/// are clamped to zero and the spectrum renormalized.
inline std::vector<double> spectrum(const DensityOperator& rho) {
    auto values = eigenvalues(hermitian_part(rho.matrix()));
    double total = 0.0;
    for (auto& v : values) {
        if (v < -1e-6) throw ContractError("spectrum: eigenvalue " + format_number(v) + " is negative");
        v = std::max(v, 0.0);
        total += v;
    }
    for (auto& v : values) v /= total;
    return values;
}

/// S(rho) in bits.
inline double von_neumann(const DensityOperator& rho) { return detail::shannon_raw(spectrum(rho)); }

/// k ln2 H(d), in units of k.
inline double boltzmann(const ProbDist& d, double k = 1.0) { return k * kLn2 * shannon(d); }

/// -k tr(rho ln omega). Requires omega to be positive on the support of rho
/// (eigenvalues below 1e-12 count as zero).
inline double erasure_cross_term(const DensityOperator& rho, const DensityOperator& omega, double k = 1.0) {
    if (rho.dim() != omega.dim()) throw ShapeError("erasure_cross_term: dimension mismatch");
    const HermitianEigen e = hermitian_eig(hermitian_part(omega.matrix()));
    double sum = 0.0;
    for (std::size_t j = 0; j < e.values.size(); ++j) {
        const CVector v = e.vectors.column(j);
        const double weight = inner(v, rho.matrix() * v).real();  // <v_j|rho|v_j>
        if (e.values[j] < kLogCutoff) {
            if (weight > kLogCutoff) {
                throw DomainError("erasure_cross_term: rho has weight outside the support of omega");
            }
            continue;
        }
        sum += weight * std::log(e.values[j]);
    }
    return -k * sum;
}

}  // namespace qit
