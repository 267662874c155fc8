#pragma once

// Holevo quantity of a signal ensemble, the two-step erasure ledger that
// bounds it, and the fixed-measurement mutual information it dominates.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qit/entropy.hpp"

namespace qit {

/// Signal states rho_i sent with probabilities p_i.
class SignalEnsemble {
public:
    struct Item {
        double p;
        DensityOperator rho;
    };

    explicit SignalEnsemble(std::vector<Item> items) : items_(std::move(items)) {
        if (items_.empty()) throw ContractError("SignalEnsemble: no signals");
        double total = 0.0;
        for (const auto& item : items_) {
            if (!(item.p >= 0.0)) throw ContractError("SignalEnsemble: negative probability");
            if (item.rho.dims() != items_.front().rho.dims()) throw ShapeError("SignalEnsemble: signals have different dims");
            total += item.p;
        }
        if (std::abs(total - 1.0) > kDefaultTolerance) {
            throw ContractError("SignalEnsemble: probabilities sum to " + format_number(total) + ", expected 1");
        }
    }

    explicit SignalEnsemble(const Ensemble& e) : SignalEnsemble(convert(e)) {}

    const std::vector<Item>& items() const noexcept { return items_; }
    const Dims& dims() const noexcept { return items_.front().rho.dims(); }

    std::vector<double> weights() const {
        std::vector<double> w;
        for (const auto& item : items_) w.push_back(item.p);
        return w;
    }

    /// sum_i p_i rho_i
    DensityOperator average() const {
        const std::size_t d = items_.front().rho.dim();
        CMatrix m(d, d);
        for (const auto& item : items_) m = m + Complex(item.p) * item.rho.matrix();
        return DensityOperator(hermitian_part(m), dims());
    }

private:
    static std::vector<Item> convert(const Ensemble& e) {
        std::vector<Item> items;
        for (const auto& item : e.items()) {
            items.push_back({item.p, DensityOperator(hermitian_part(Ensemble::matrix_of(item.state)), Ensemble::dims_of(item.state))});
        }
        return items;
    }

    std::vector<Item> items_;
};

/// S(sum p_i rho_i) - sum p_i S(rho_i), in bits.
inline double holevo_bound(const SignalEnsemble& e) {
    double mixed = 0.0;
    for (const auto& item : e.items()) mixed += item.p * von_neumann(item.rho);
    return std::max(0.0, von_neumann(e.average()) - mixed);
}

/// Letter (i, alpha) has probability p_i r^i_alpha and is sent as the pure
/// state phi^i_alpha; the channel forgets alpha.
class CodedSource {
public:
    CodedSource(std::vector<double> outer, std::vector<std::vector<double>> inner, std::vector<std::vector<PureState>> states)
        : outer_(std::move(outer)), inner_(std::move(inner)), states_(std::move(states)) {
        static_cast<void>(ProbDist(outer_));
        if (inner_.size() != outer_.size() || states_.size() != outer_.size()) {
            throw ShapeError("CodedSource: outer, inner and state lists differ in length");
        }
        for (std::size_t i = 0; i < outer_.size(); ++i) {
            static_cast<void>(ProbDist(inner_[i]));
            if (states_[i].size() != inner_[i].size()) throw ShapeError("CodedSource: inner list and states differ in length");
            for (const auto& s : states_[i])
                if (s.dims() != states_.front().front().dims()) throw ShapeError("CodedSource: states have different dims");
        }
    }

    const std::vector<double>& outer() const noexcept { return outer_; }
    const std::vector<std::vector<double>>& inner() const noexcept { return inner_; }
    const std::vector<std::vector<PureState>>& states() const noexcept { return states_; }

    /// rho_i = sum_alpha r^i_alpha |phi^i_alpha><phi^i_alpha|
    DensityOperator signal(std::size_t i) const {
        const auto& first = states_[i].front();
        CMatrix m(first.dim(), first.dim());
        for (std::size_t a = 0; a < states_[i].size(); ++a) m = m + Complex(inner_[i][a]) * states_[i][a].projector();
        return DensityOperator(hermitian_part(m), first.dims());
    }

    SignalEnsemble induced() const {
        std::vector<SignalEnsemble::Item> items;
        for (std::size_t i = 0; i < outer_.size(); ++i) items.push_back({outer_[i], signal(i)});
        return SignalEnsemble(std::move(items));
    }

private:
    std::vector<double> outer_;
    std::vector<std::vector<double>> inner_;
    std::vector<std::vector<PureState>> states_;
};

struct TwoStepLedger {
    double ds1 = 0.0;     ///< bits: erasing the pure letters down to rho_i
    double ds2 = 0.0;     ///< bits: erasing the pure letters directly to rho
    double ds_bob = 0.0;  ///< ds2 - ds1
};

/// Entropy of erasure in both procedures, each computed from the optimal
/// (matched bath) cross term -tr(sigma log2 omega):
///   ds1 = -sum_i p_i sum_alpha r^i_alpha <phi|log2 rho_i|phi>
///   ds2 = -sum_i p_i tr(rho_i log2 rho)
/// The difference is checked against holevo_bound of the induced ensemble.
inline TwoStepLedger two_step_ledger(const CodedSource& src) {
    const SignalEnsemble induced = src.induced();
    const DensityOperator rho = induced.average();
    const CMatrix log_rho = matrix_log(rho.matrix(), true);

    TwoStepLedger out;
    for (std::size_t i = 0; i < src.outer().size(); ++i) {
        const CMatrix log_rho_i = matrix_log(induced.items()[i].rho.matrix(), true);
        for (std::size_t a = 0; a < src.states()[i].size(); ++a) {
            const CVector& phi = src.states()[i][a].vector();
            out.ds1 -= src.outer()[i] * src.inner()[i][a] * inner(phi, log_rho_i * phi).real() / kLn2;
        }
        out.ds2 -= src.outer()[i] * trace(induced.items()[i].rho.matrix() * log_rho).real() / kLn2;
    }
    out.ds_bob = out.ds2 - out.ds1;

    const double direct = holevo_bound(induced);
    if (std::abs(out.ds_bob - direct) > 1e-9) {
        throw NumericalError("two_step_ledger: erasure ledger " + format_number(out.ds_bob) +
                             " disagrees with the Holevo quantity " + format_number(direct));
    }
    return out;
}

/// Rank-one projectors onto the computational basis of dimension d.
inline std::vector<CMatrix> computational_basis(std::size_t d) {
    std::vector<CMatrix> out;
    for (std::size_t j = 0; j < d; ++j) out.push_back(projector(CVector::basis(d, j)));
    return out;
}

/// Rank-one projectors onto the columns of a unitary.
inline std::vector<CMatrix> basis_from_unitary(const CMatrix& u) {
    if (!is_unitary(u)) throw ContractError("basis_from_unitary: matrix is not unitary");
    std::vector<CMatrix> out;
    for (std::size_t j = 0; j < u.cols(); ++j) out.push_back(projector(u.column(j)));
    return out;
}

/// Mutual information of P(i, j) = p_i tr(P_j rho_i) for a complete set of
/// orthogonal projectors. Bounded above by holevo_bound(e).
inline double measurement_mutual_info(const SignalEnsemble& e, const std::vector<CMatrix>& basis) {
    const std::size_t d = e.items().front().rho.dim();
    if (basis.empty()) throw ContractError("measurement_mutual_info: empty basis");
    CMatrix sum(d, d);
    for (std::size_t j = 0; j < basis.size(); ++j) {
        if (basis[j].rows() != d || basis[j].cols() != d) throw ShapeError("measurement_mutual_info: projector dimension");
        if (!is_projector(basis[j])) throw ContractError("measurement_mutual_info: element is not a projector");
        for (std::size_t k = j + 1; k < basis.size(); ++k)
            if (frobenius_norm(basis[j] * basis[k]) > kDefaultTolerance) {
                throw ContractError("measurement_mutual_info: projectors are not orthogonal");
            }
        sum = sum + basis[j];
    }
    if (max_abs_diff(sum, CMatrix::identity(d)) > kDefaultTolerance) {
        throw ContractError("measurement_mutual_info: projectors do not sum to the identity");
    }

    const std::size_t n = e.items().size();
    std::vector<double> joint(n * basis.size());
    std::vector<double> px(n, 0.0);
    std::vector<double> py(basis.size(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j) {
            const double pij = e.items()[i].p * std::max(0.0, trace(basis[j] * e.items()[i].rho.matrix()).real());
            joint[i * basis.size() + j] = pij;
            px[i] += pij;
            py[j] += pij;
        }
    }
    return std::max(0.0, detail::shannon_raw(px) + detail::shannon_raw(py) - detail::shannon_raw(joint));
}

}  // namespace qit
