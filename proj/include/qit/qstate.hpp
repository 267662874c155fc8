#pragma once

// States, ensembles, observables, measurement statistics and Schrodinger
// evolution on top of the dense kernel in cmatrix.hpp.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qit/cmatrix.hpp"

namespace qit {

using Dims = std::vector<std::size_t>;

namespace detail {

inline std::size_t dims_product(const Dims& dims, const char* what) {
    if (dims.empty()) throw ShapeError(std::string(what) + ": empty subsystem list");
    std::size_t p = 1;
    for (const auto d : dims) {
        if (d == 0) throw ShapeError(std::string(what) + ": zero subsystem dimension");
        p = checked_product(p, d, what);
    }
    return p;
}

inline std::string format_dims(const Dims& dims) {
    std::string s = "[";
    for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "," : "") + std::to_string(dims[i]);
    return s + "]";
}

}  // namespace detail

/// Normalized state vector with its subsystem structure.
class PureState {
public:
    PureState(CVector vector, Dims dims) : vector_(std::move(vector)), dims_(std::move(dims)) {
        if (detail::dims_product(dims_, "PureState") != vector_.size()) {
            throw ShapeError("PureState: dims " + detail::format_dims(dims_) + " do not match vector dimension " +
                             std::to_string(vector_.size()));
        }
        if (std::abs(vector_.norm() - 1.0) > kDefaultTolerance) {
            throw ValidationError("PureState: state vector is not normalized (norm " +
                                  format_number(vector_.norm()) + ")");
        }
    }

    /// Single system of dimension vector.size().
    explicit PureState(CVector vector) : PureState(vector, Dims{vector.size()}) {}

    /// Computational basis state |index> on the given subsystems.
    static PureState basis(Dims dims, std::size_t index) {
        const std::size_t dim = detail::dims_product(dims, "PureState::basis");
        return PureState(CVector::basis(dim, index), std::move(dims));
    }

    /// n-qubit basis state from a bit string such as "0101" (qubit 0 first).
    static PureState from_bits(const std::string& bits) {
        if (bits.empty()) throw ShapeError("PureState::from_bits: empty string");
        std::size_t index = 0;
        for (const char c : bits) {
            if (c != '0' && c != '1') throw ParseError("PureState::from_bits: expected 0 or 1");
            index = (index << 1) | static_cast<std::size_t>(c - '0');
        }
        return basis(Dims(bits.size(), 2), index);
    }

    const CVector& vector() const noexcept { return vector_; }
    const Dims& dims() const noexcept { return dims_; }
    std::size_t dim() const noexcept { return vector_.size(); }

    CMatrix projector() const { return qit::projector(vector_); }

private:
    CVector vector_;
    Dims dims_;
};

inline PureState tensor(const PureState& a, const PureState& b) {
    Dims dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    return PureState(tensor(a.vector(), b.vector()), std::move(dims));
}

/// Hermitian, unit-trace, positive-semidefinite operator.
class DensityOperator {
public:
    DensityOperator(CMatrix matrix, Dims dims) : matrix_(std::move(matrix)), dims_(std::move(dims)) {
        if (!matrix_.is_square() || detail::dims_product(dims_, "DensityOperator") != matrix_.rows()) {
            throw ShapeError("DensityOperator: dims " + detail::format_dims(dims_) + " do not match matrix side");
        }
        if (!is_hermitian(matrix_, kDefaultTolerance)) throw ValidationError("DensityOperator: matrix is not Hermitian");
        const Complex tr = trace(matrix_);
        if (std::abs(tr - Complex(1.0)) > kDefaultTolerance) {
            throw ValidationError("DensityOperator: trace is " + format_number(tr.real()) + ", expected 1");
        }
        if (!is_density(matrix_, kDefaultTolerance)) throw ValidationError("DensityOperator: matrix has a negative eigenvalue");
    }

    explicit DensityOperator(CMatrix matrix) : DensityOperator(matrix, Dims{matrix.rows()}) {}

    explicit DensityOperator(const PureState& psi) : matrix_(psi.projector()), dims_(psi.dims()) {}

    /// I/d on the given subsystems.
    static DensityOperator maximally_mixed(Dims dims) {
        const std::size_t d = detail::dims_product(dims, "DensityOperator::maximally_mixed");
        return DensityOperator((1.0 / static_cast<double>(d)) * CMatrix::identity(d), std::move(dims));
    }

    const CMatrix& matrix() const noexcept { return matrix_; }
    const Dims& dims() const noexcept { return dims_; }
    std::size_t dim() const noexcept { return matrix_.rows(); }

private:
    CMatrix matrix_;
    Dims dims_;
};

inline DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
    Dims dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    return DensityOperator(tensor(a.matrix(), b.matrix()), std::move(dims));
}

/// Hermitian operator on a (possibly composite) space.
class Observable {
public:
    Observable(CMatrix matrix, Dims dims) : matrix_(std::move(matrix)), dims_(std::move(dims)) {
        if (!matrix_.is_square() || detail::dims_product(dims_, "Observable") != matrix_.rows()) {
            throw ShapeError("Observable: dims " + detail::format_dims(dims_) + " do not match matrix side");
        }
        if (!is_hermitian(matrix_, kHermitianInputTolerance)) throw ValidationError("Observable: matrix is not Hermitian");
    }

    explicit Observable(CMatrix matrix) : Observable(matrix, Dims{matrix.rows()}) {}

    const CMatrix& matrix() const noexcept { return matrix_; }
    const Dims& dims() const noexcept { return dims_; }
    std::size_t dim() const noexcept { return matrix_.rows(); }

private:
    CMatrix matrix_;
    Dims dims_;
};

/// Preparation procedure: probabilities attached to pure or mixed members.
class Ensemble {
public:
    using Member = std::variant<PureState, DensityOperator>;
    struct Item {
        double p;
        Member state;
    };

    explicit Ensemble(std::vector<Item> items) : items_(std::move(items)) {
        if (items_.empty()) throw ValidationError("Ensemble: no members");
        double total = 0.0;
        for (const auto& item : items_) {
            if (!(item.p >= 0.0)) throw ValidationError("Ensemble: negative probability " + format_number(item.p));
            total += item.p;
            if (dims_of(item.state) != dims_of(items_.front().state)) {
                throw ShapeError("Ensemble: members have different dims");
            }
        }
        if (std::abs(total - 1.0) > kDefaultTolerance) {
            throw ValidationError("Ensemble: probabilities sum to " + format_number(total) + ", expected 1");
        }
    }

    const std::vector<Item>& items() const noexcept { return items_; }
    const Dims& dims() const { return dims_of(items_.front().state); }
    std::size_t size() const noexcept { return items_.size(); }

    std::vector<double> weights() const {
        std::vector<double> w;
        w.reserve(items_.size());
        for (const auto& item : items_) w.push_back(item.p);
        return w;
    }

    static const Dims& dims_of(const Member& m) {
        return std::visit([](const auto& s) -> const Dims& { return s.dims(); }, m);
    }

    static CMatrix matrix_of(const Member& m) {
        if (const auto* psi = std::get_if<PureState>(&m)) return psi->projector();
        return std::get<DensityOperator>(m).matrix();
    }

private:
    std::vector<Item> items_;
};

/// rho = sum_i p_i rho_i, with pure members entering as projectors.
inline DensityOperator density_from_ensemble(const Ensemble& e) {
    const Dims& dims = e.dims();
    const std::size_t d = detail::dims_product(dims, "density_from_ensemble");
    CMatrix rho(d, d);
    for (const auto& item : e.items()) rho = rho + Complex(item.p) * Ensemble::matrix_of(item.state);
    return DensityOperator(rho, dims);
}

/// <O> = tr(O rho). An imaginary residue above 1e-6 is a numerical error.
inline double expectation(const Observable& o, const DensityOperator& rho) {
    if (o.dims() != rho.dims()) throw ShapeError("expectation: dims mismatch");
    const Complex value = trace(o.matrix() * rho.matrix());
    if (std::abs(value.imag()) > 1e-6) {
        throw NumericalError("expectation: imaginary residue " + format_number(value.imag()));
    }
    return value.real();
}

inline bool is_projector(const CMatrix& p, double tol = kDefaultTolerance) {
    return p.is_square() && is_hermitian(p, tol) && max_abs_diff(p * p, p) <= tol;
}

/// tr(P rho) for an orthogonal projector P, clamped to [0, 1].
inline double measure_prob(const DensityOperator& rho, const CMatrix& proj) {
    if (proj.rows() != rho.dim() || proj.cols() != rho.dim()) throw ShapeError("measure_prob: dimension mismatch");
    if (!is_projector(proj)) throw ContractError("measure_prob: operator is not an orthogonal projector");
    const double p = trace(proj * rho.matrix()).real();
    if (p < -kDefaultTolerance || p > 1.0 + kDefaultTolerance) {
        throw NumericalError("measure_prob: probability " + format_number(p) + " outside [0, 1]");
    }
    return std::clamp(p, 0.0, 1.0);
}

/// exp(-i H t / hbar)
inline CMatrix propagator(const Observable& h, double t, double hbar = 1.0) {
    if (!(hbar > 0.0)) throw DomainError("propagator: hbar must be positive");
    return mat_func(h.matrix(), [t, hbar](double e) { return std::exp(Complex(0.0, -e * t / hbar)); });
}

inline PureState evolve(const PureState& psi, const Observable& h, double t, double hbar = 1.0) {
    if (psi.dims() != h.dims()) throw ShapeError("evolve: dims mismatch");
    CVector out = propagator(h, t, hbar) * psi.vector();
    return PureState(out.normalized(), psi.dims());
}

/// tr(rho^2)
inline double purity(const DensityOperator& rho) { return trace(rho.matrix() * rho.matrix()).real(); }

inline DensityOperator reduced(const DensityOperator& rho, const std::vector<std::size_t>& keep) {
    const CMatrix m = partial_trace(rho.matrix(), rho.dims(), keep);
    std::vector<std::size_t> sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    Dims kept_dims;
    for (const auto k : sorted) kept_dims.push_back(rho.dims()[k]);
    if (kept_dims.empty()) kept_dims.push_back(1);
    return DensityOperator(hermitian_part(m), std::move(kept_dims));
}

/// Squared Schmidt coefficients (eigenvalues of the first subsystem's reduced
/// state), descending.
inline std::vector<double> schmidt_probabilities(const PureState& psi) {
    if (psi.dims().size() != 2) throw ShapeError("schmidt: state must have exactly two subsystems");
    const CMatrix rho_a = partial_trace(psi.projector(), psi.dims(), std::vector<std::size_t>{0});
    auto values = eigenvalues(hermitian_part(rho_a));
    for (auto& v : values) v = std::max(v, 0.0);
    return values;
}

inline std::size_t schmidt_rank(const PureState& psi, double tol = kDefaultTolerance) {
    std::size_t rank = 0;
    for (const auto v : schmidt_probabilities(psi))
        if (v > tol) ++rank;
    return rank;
}

inline bool is_product(const PureState& psi, double tol = kDefaultTolerance) { return schmidt_rank(psi, tol) == 1; }

}  // namespace qit
