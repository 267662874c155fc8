#pragma once

// Landauer bookkeeping: the Szilard engine cycle and thermal (Lubkin)
// erasure of quantum states. Inside this header k = 1, energies are in units
// of kT and entropies in nats; conversions to bits carry an explicit ln 2.

#include <cmath>
#include <optional>

#include "qit/entropy.hpp"

namespace qit {

/// Work, heat and entropy balance of one erasure or engine cycle.
struct WorkLedger {
    double w_extracted = 0.0;          ///< units of kT
    double w_erasure = 0.0;            ///< units of kT, negative = work spent
    double q_total = 0.0;              ///< w_extracted + w_erasure
    double delta_S_system = 0.0;       ///< units of k
    double delta_S_bath = 0.0;         ///< units of k
    double delta_S_total = 0.0;        ///< units of k
    double info_bits = 0.0;            ///< bits
    double generalized_entropy = 0.0;  ///< delta_S_system / ln2 - info_bits for the engine; see lubkin_ledger
};

/// One Szilard engine cycle at temperature T, including the erasure of the
/// demon's one-bit memory.
inline WorkLedger szilard_cycle(double temperature) {
    if (!(temperature > 0.0)) throw DomainError("szilard_cycle: temperature must be positive");
    WorkLedger l;
    l.w_extracted = temperature * kLn2;
    l.w_erasure = -temperature * kLn2;
    l.q_total = l.w_extracted + l.w_erasure;
    l.delta_S_system = kLn2;  // isothermal expansion to twice the volume
    l.delta_S_bath = -kLn2;
    l.delta_S_total = l.delta_S_system + l.delta_S_bath;
    l.info_bits = 1.0;
    l.generalized_entropy = l.delta_S_system / kLn2 - l.info_bits;
    return l;
}

/// Hamiltonian with a heat bath at a given temperature (k = 1).
class ThermalSpec {
public:
    ThermalSpec(Observable hamiltonian, double temperature)
        : hamiltonian_(std::move(hamiltonian)), temperature_(temperature) {
        if (!(temperature_ > 0.0)) throw DomainError("ThermalSpec: temperature must be positive");
        const auto e = hermitian_eig(hamiltonian_.matrix());
        ground_energy_ = e.values.back();
        shifted_z_ = 0.0;
        for (const double v : e.values) shifted_z_ += std::exp(-(v - ground_energy_) / temperature_);
    }

    const Observable& hamiltonian() const noexcept { return hamiltonian_; }
    double temperature() const noexcept { return temperature_; }

    /// Z = tr exp(-H/T).
    double partition_function() const { return std::exp(-ground_energy_ / temperature_) * shifted_z_; }

    /// ln Z, stable when Z itself would overflow.
    double log_partition_function() const { return -ground_energy_ / temperature_ + std::log(shifted_z_); }

private:
    Observable hamiltonian_;
    double temperature_;
    double ground_energy_ = 0.0;
    double shifted_z_ = 0.0;
};

/// omega = exp(-H/T) / Z
inline DensityOperator gibbs_state(const ThermalSpec& spec) {
    const auto e = hermitian_eig(spec.hamiltonian().matrix());
    const double ground = e.values.back();
    const double t = spec.temperature();
    std::vector<Complex> weights(e.values.size());
    double z = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        const double w = std::exp(-(e.values[k] - ground) / t);
        weights[k] = w;
        z += w;
    }
    for (auto& w : weights) w /= z;
    return DensityOperator(hermitian_part(reconstruct(e, weights)), spec.hamiltonian().dims());
}

/// -T ln(rho), shifted so the smallest eigenvalue is 0. Its Gibbs state at
/// temperature T is rho. Requires rho of full rank.
inline Observable erasure_hamiltonian(const DensityOperator& rho, double temperature) {
    if (!(temperature > 0.0)) throw DomainError("erasure_hamiltonian: temperature must be positive");
    const auto e = hermitian_eig(hermitian_part(rho.matrix()));
    if (e.values.back() < kLogCutoff) {
        throw DomainError("erasure_hamiltonian: rho is rank deficient; use erasure_hamiltonian_on_support");
    }
    const double max_log = std::log(e.values.front());
    std::vector<Complex> energies(e.values.size());
    for (std::size_t k = 0; k < energies.size(); ++k) energies[k] = -temperature * (std::log(e.values[k]) - max_log);
    return Observable(hermitian_part(reconstruct(e, energies)), rho.dims());
}

/// Erasure Hamiltonian restricted to the support of a possibly rank-deficient rho.
struct SupportHamiltonian {
    Observable hamiltonian;  ///< -T ln(rho) on the support (gauge: minimum 0), 0 on the kernel
    CMatrix support;         ///< orthogonal projector onto supp(rho)
    std::size_t rank = 0;
};

inline SupportHamiltonian erasure_hamiltonian_on_support(const DensityOperator& rho, double temperature) {
    if (!(temperature > 0.0)) throw DomainError("erasure_hamiltonian_on_support: temperature must be positive");
    const auto e = hermitian_eig(hermitian_part(rho.matrix()));
    const double max_log = std::log(e.values.front());
    std::vector<Complex> energies(e.values.size());
    std::vector<Complex> support(e.values.size());
    std::size_t rank = 0;
    for (std::size_t k = 0; k < energies.size(); ++k) {
        if (e.values[k] < kLogCutoff) continue;
        energies[k] = -temperature * (std::log(e.values[k]) - max_log);
        support[k] = 1.0;
        ++rank;
    }
    return {Observable(hermitian_part(reconstruct(e, energies)), rho.dims()), hermitian_part(reconstruct(e, support)),
            rank};
}

namespace detail {

inline WorkLedger fill_ledger(const DensityOperator& rho, const DensityOperator& omega, const Observable& hamiltonian,
                              double temperature, double delta_S_total) {
    WorkLedger l;
    l.delta_S_system = kLn2 * von_neumann(omega);
    l.delta_S_bath = -trace((omega.matrix() - rho.matrix()) * hamiltonian.matrix()).real() / temperature;
    l.delta_S_total = delta_S_total;
    l.w_extracted = 0.0;
    l.w_erasure = -temperature * l.delta_S_total;
    l.q_total = l.w_extracted + l.w_erasure;
    l.info_bits = von_neumann(rho);
    l.generalized_entropy = l.delta_S_total / kLn2 - l.info_bits;
    return l;
}

inline void check_ledger_args(const DensityOperator& rho, const DensityOperator& omega, const Observable& hamiltonian,
                              double temperature) {
    if (!(temperature > 0.0)) throw DomainError("lubkin_ledger: temperature must be positive");
    if (rho.dim() != omega.dim() || rho.dim() != hamiltonian.dim()) throw ShapeError("lubkin_ledger: dimension mismatch");
}

}  // namespace detail

/// Entropy balance of thermalising a system prepared in rho into the state
/// omega of a bath at temperature T with Hamiltonian H.
///
/// The three entropies are evaluated independently:
///   system: ln2 S(omega)
///   bath:   -tr((omega - rho) H) / T
///   total:  -tr(rho ln omega)
/// so total == system + bath is a genuine consistency check.
/// The work entries record the Landauer cost -T * delta_S_total;
/// info_bits is S(rho) and generalized_entropy the excess
/// delta_S_total / ln2 - S(rho) >= 0, zero for the matched bath.
inline WorkLedger lubkin_ledger(const DensityOperator& rho, const DensityOperator& omega, const Observable& hamiltonian,
                                double temperature) {
    detail::check_ledger_args(rho, omega, hamiltonian, temperature);
    return detail::fill_ledger(rho, omega, hamiltonian, temperature, erasure_cross_term(rho, omega));
}

/// For a Gibbs bath ln omega = -H/T - ln Z is known exactly, so the total is
/// tr(rho H)/T + ln Z. Taking the log of omega numerically would lose
/// relative accuracy in its smallest eigenvalues once H/T spans many e-folds.
inline WorkLedger lubkin_ledger(const DensityOperator& rho, const ThermalSpec& spec) {
    const DensityOperator omega = gibbs_state(spec);
    const double t = spec.temperature();
    detail::check_ledger_args(rho, omega, spec.hamiltonian(), t);
    const double total = trace(rho.matrix() * spec.hamiltonian().matrix()).real() / t + spec.log_partition_function();
    return detail::fill_ledger(rho, omega, spec.hamiltonian(), t, total);
}

/// Ledger for the bath matched to rho (omega = rho on the support of rho).
inline WorkLedger matched_lubkin_ledger(const DensityOperator& rho, double temperature) {
    const auto sh = erasure_hamiltonian_on_support(rho, temperature);
    if (sh.rank == rho.dim()) return lubkin_ledger(rho, ThermalSpec(sh.hamiltonian, temperature));
    // Kernel levels sit at formally infinite energy: the equilibrium state is rho itself.
    return lubkin_ledger(rho, rho, sh.hamiltonian, temperature);
}

/// Minimum erasure entropy ln2 S(rho), in units of k.
inline double optimal_erasure_entropy(const DensityOperator& rho) { return kLn2 * von_neumann(rho); }

}  // namespace qit
