#pragma once

// Dense complex linear algebra for small Hilbert spaces.
//
// Tensor-product convention: the first factor is the most significant index,
// so subsystem 0 of a composite space owns the highest-order "digit" of a
// basis index. Every other header relies on this.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qit/errors.hpp"

namespace qit {

using Complex = std::complex<double>;

/// Upper bound on stored entries for any dense vector or matrix (2^20).
inline constexpr std::size_t kMaxEntries = std::size_t{1} << 20;
/// Default tolerance for structural predicates (Hermitian, unitary, density).
inline constexpr double kDefaultTolerance = 1e-9;
/// Tolerance the eigensolver uses to accept its input as Hermitian.
inline constexpr double kHermitianInputTolerance = 1e-10;
/// Eigenvalues below this are exact zeros for logarithms.
inline constexpr double kLogCutoff = 1e-12;

namespace detail {

inline bool is_finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline void require_finite(std::span<const Complex> values, const char* what) {
    for (const auto& z : values) {
        if (!is_finite(z)) {
            throw ContractError(std::string(what) + ": non-finite entry");
        }
    }
}

inline std::size_t checked_product(std::size_t a, std::size_t b, const char* what) {
    if (a != 0 && b > kMaxEntries / a) {
        throw SizeError(std::string(what) + ": exceeds the 2^20 entry limit");
    }
    const std::size_t n = a * b;
    if (n > kMaxEntries) {
        throw SizeError(std::string(what) + ": exceeds the 2^20 entry limit");
    }
    return n;
}

}  // namespace detail

class CVector {
public:
    CVector() = default;

    explicit CVector(std::size_t dim) : entries_(dim) {
        if (dim == 0) throw ShapeError("CVector: dimension must be positive");
        if (dim > kMaxEntries) throw SizeError("CVector: exceeds the 2^20 entry limit");
    }

    explicit CVector(std::vector<Complex> entries) : entries_(std::move(entries)) {
        if (entries_.empty()) throw ShapeError("CVector: dimension must be positive");
        if (entries_.size() > kMaxEntries) throw SizeError("CVector: exceeds the 2^20 entry limit");
        detail::require_finite(entries_, "CVector");
    }

    CVector(std::initializer_list<Complex> entries) : CVector(std::vector<Complex>(entries)) {}

    /// Computational basis vector |index> in a space of dimension dim.
    static CVector basis(std::size_t dim, std::size_t index) {
        if (index >= dim) throw ShapeError("CVector::basis: index out of range");
        CVector v(dim);
        v.entries_[index] = 1.0;
        return v;
    }

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    Complex& operator[](std::size_t i) { return entries_[i]; }
    const Complex& operator[](std::size_t i) const { return entries_[i]; }

    std::span<const Complex> entries() const noexcept { return entries_; }
    auto begin() const noexcept { return entries_.begin(); }
    auto end() const noexcept { return entries_.end(); }

    double norm_squared() const {
        double s = 0.0;
        for (const auto& z : entries_) s += std::norm(z);
        return s;
    }
    double norm() const { return std::sqrt(norm_squared()); }

    CVector normalized() const {
        const double n = norm();
        if (n == 0.0) throw DomainError("CVector::normalized: zero vector");
        CVector out = *this;
        for (auto& z : out.entries_) z /= n;
        return out;
    }

private:
    std::vector<Complex> entries_;
};

class CMatrix {
public:
    CMatrix() = default;

    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(detail::checked_product(rows, cols, "CMatrix")) {
        if (rows == 0 || cols == 0) throw ShapeError("CMatrix: dimensions must be positive");
    }

    /// Row-major entries.
    CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries) : rows_(rows), cols_(cols) {
        if (rows == 0 || cols == 0) throw ShapeError("CMatrix: dimensions must be positive");
        if (detail::checked_product(rows, cols, "CMatrix") != entries.size()) {
            throw ShapeError("CMatrix: entry count does not match rows*cols");
        }
        detail::require_finite(entries, "CMatrix");
        entries_ = std::move(entries);
    }

    static CMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r == 0 ? 0 : rows.begin()->size();
        std::vector<Complex> data;
        data.reserve(r * c);
        for (const auto& row : rows) {
            if (row.size() != c) throw ShapeError("CMatrix::from_rows: ragged rows");
            data.insert(data.end(), row.begin(), row.end());
        }
        return CMatrix(r, c, std::move(data));
    }

    static CMatrix identity(std::size_t n) {
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static CMatrix diagonal(std::span<const double> values) {
        CMatrix m(values.size(), values.size());
        for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
        return m;
    }

    static CMatrix diagonal(std::span<const Complex> values) {
        CMatrix m(values.size(), values.size());
        for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    std::span<const Complex> entries() const noexcept { return entries_; }

    /// Column j as a vector.
    CVector column(std::size_t j) const {
        CVector v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

// ---------------------------------------------------------------------------
// Basic algebra

inline CMatrix operator+(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("add: dimension mismatch");
    CMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
    return out;
}

inline CMatrix operator-(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("subtract: dimension mismatch");
    CMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
    return out;
}

inline CMatrix operator*(Complex s, const CMatrix& a) {
    CMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = s * a(i, j);
    return out;
}

inline CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw ShapeError("matmul: inner dimensions differ");
    CMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

inline CVector operator*(const CMatrix& a, const CVector& v) {
    if (a.cols() != v.size()) throw ShapeError("matvec: dimension mismatch");
    CVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex s{};
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

inline CVector operator*(Complex s, const CVector& v) {
    CVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
    return out;
}

inline CVector operator+(const CVector& a, const CVector& b) {
    if (a.size() != b.size()) throw ShapeError("add: dimension mismatch");
    CVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline CMatrix scale(const CMatrix& a, Complex s) { return s * a; }
inline CMatrix matmul(const CMatrix& a, const CMatrix& b) { return a * b; }

inline CMatrix dagger(const CMatrix& a) {
    CMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
    return out;
}

inline Complex trace(const CMatrix& a) {
    if (!a.is_square()) throw ShapeError("trace: matrix is not square");
    Complex s{};
    for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, i);
    return s;
}

/// <v|w>, conjugate-linear in the first argument.
inline Complex inner(const CVector& v, const CVector& w) {
    if (v.size() != w.size()) throw ShapeError("inner: dimension mismatch");
    Complex s{};
    for (std::size_t i = 0; i < v.size(); ++i) s += std::conj(v[i]) * w[i];
    return s;
}

/// Largest elementwise modulus of a - b.
inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    return m;
}

inline double max_abs_diff(const CVector& a, const CVector& b) {
    if (a.size() != b.size()) throw ShapeError("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double frobenius_norm(const CMatrix& a) {
    double s = 0.0;
    for (const auto& z : a.entries()) s += std::norm(z);
    return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Tensor and outer products

/// Kronecker product; (a(x)b)[i*rb+k, j*cb+l] = a[i,j]*b[k,l].
inline CMatrix tensor(const CMatrix& a, const CMatrix& b) {
    const std::size_t rows = a.rows() * b.rows();
    const std::size_t cols = a.cols() * b.cols();
    detail::checked_product(rows, cols, "tensor");
    CMatrix out(rows, cols);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

inline CVector tensor(const CVector& a, const CVector& b) {
    detail::checked_product(a.size(), b.size(), "tensor");
    CVector out(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) out[i * b.size() + k] = a[i] * b[k];
    return out;
}

/// |v><w|
inline CMatrix outer(const CVector& v, const CVector& w) {
    CMatrix out(v.size(), w.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j) out(i, j) = v[i] * std::conj(w[j]);
    return out;
}

inline CMatrix projector(const CVector& v) { return outer(v, v); }

// ---------------------------------------------------------------------------
// Structural predicates

inline bool is_hermitian(const CMatrix& m, double tol = kDefaultTolerance) {
    if (!m.is_square()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
    return true;
}

inline bool is_unitary(const CMatrix& m, double tol = kDefaultTolerance) {
    if (!m.is_square()) return false;
    const CMatrix id = CMatrix::identity(m.rows());
    return max_abs_diff(m * dagger(m), id) <= tol && max_abs_diff(dagger(m) * m, id) <= tol;
}

/// (m + m^dagger) / 2
inline CMatrix hermitian_part(const CMatrix& m) {
    if (!m.is_square()) throw ShapeError("hermitian_part: matrix is not square");
    CMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    return out;
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver

struct HermitianEigen {
    std::vector<double> values;  ///< descending
    CMatrix vectors;             ///< column k is the eigenvector of values[k]
};

/// Above this side length the tridiagonal route replaces Jacobi.
inline constexpr std::size_t kJacobiMaxDim = 64;

namespace detail {

inline HermitianEigen sorted_eigen(const std::vector<double>& values, const CMatrix& vectors) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return values[i] > values[j]; });
    HermitianEigen out{std::vector<double>(n), CMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = values[order[k]];
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = vectors(i, order[k]);
    }
    return out;
}

/// Cyclic Jacobi rotations.
///
/// Each rotation first removes the phase of the pivot a_pq with a diagonal
/// unitary, then applies the real symmetric rotation that annihilates it.
/// Sweeps stop once the off-diagonal Frobenius mass falls below
/// 1e-14 * ||m||_F.
inline HermitianEigen jacobi_eig(const CMatrix& m) {
    const std::size_t n = m.rows();
    CMatrix a = hermitian_part(m);
    CMatrix v = CMatrix::identity(n);

    const double threshold = 1e-14 * frobenius_norm(a);
    auto off_mass = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    constexpr int kMaxSweeps = 100;
    int sweep = 0;
    for (; sweep < kMaxSweeps && off_mass() > threshold; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double g = std::abs(apq);
                if (g == 0.0) continue;

                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const Complex phase = std::conj(apq) / g;  // D_qq, makes (D^+ A D)_pq real
                const double tau = (aqq - app) / (2.0 * g);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // J = D * R with R = [[c, s], [-s, c]] on (p, q)
                const Complex jpp = c;
                const Complex jpq = s;
                const Complex jqp = -s * phase;
                const Complex jqq = c * phase;

                for (std::size_t k = 0; k < n; ++k) {  // A <- A J
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                }
                for (std::size_t k = 0; k < n; ++k) {  // A <- J^+ A
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {  // V <- V J
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * jpp + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * jqq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }
    if (off_mass() > threshold) throw NumericalError("hermitian_eig: Jacobi sweeps did not converge");

    std::vector<double> values(n);
    for (std::size_t k = 0; k < n; ++k) values[k] = a(k, k).real();
    return sorted_eigen(values, v);
}

/// Householder reduction to a real symmetric tridiagonal matrix followed by
/// implicit QL with Wilkinson-style shifts. O(n^3), used for large sides.
/// Eigenvectors are accumulated into *z when it is non-null; the returned
/// eigenvalues are unsorted and aligned with the columns of *z.
inline std::vector<double> tridiagonal_ql(const CMatrix& m, CMatrix* z) {
    const std::size_t n = m.rows();
    const bool with_vectors = z != nullptr;
    CMatrix a = hermitian_part(m);
    CMatrix q = CMatrix::identity(with_vectors ? n : 1);
    std::vector<Complex> v(n);
    std::vector<Complex> w(n);

    for (std::size_t k = 0; k + 2 < n; ++k) {
        double xnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) xnorm2 += std::norm(a(i, k));
        double below = 0.0;
        for (std::size_t i = k + 2; i < n; ++i) below += std::norm(a(i, k));
        if (below == 0.0) continue;
        const double xnorm = std::sqrt(xnorm2);
        const Complex x0 = a(k + 1, k);
        const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex(1.0);
        const Complex alpha = -phase * xnorm;

        // v = x - alpha e1, so that (I - 2 v v^dagger) x = alpha e1 with v^dagger x real.
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i] = a(i, k);
            if (i == k + 1) v[i] -= alpha;
            vnorm2 += std::norm(v[i]);
        }
        const double vscale = 1.0 / std::sqrt(vnorm2);
        for (std::size_t i = k + 1; i < n; ++i) v[i] *= vscale;

        // Trailing block B <- B - 2 v w^dagger - 2 w v^dagger, w = B v - (v^dagger B v) v.
        Complex kappa = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            Complex sum = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) sum += a(i, j) * v[j];
            w[i] = sum;
            kappa += std::conj(v[i]) * sum;
        }
        for (std::size_t i = k + 1; i < n; ++i) w[i] -= kappa.real() * v[i];
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) -= 2.0 * (v[i] * std::conj(w[j]) + w[i] * std::conj(v[j]));

        a(k + 1, k) = alpha;
        a(k, k + 1) = std::conj(alpha);
        for (std::size_t i = k + 2; i < n; ++i) {
            a(i, k) = 0.0;
            a(k, i) = 0.0;
        }
        if (with_vectors) {
            for (std::size_t r = 0; r < n; ++r) {
                Complex sum = 0.0;
                for (std::size_t i = k + 1; i < n; ++i) sum += q(r, i) * v[i];
                for (std::size_t i = k + 1; i < n; ++i) q(r, i) -= 2.0 * sum * std::conj(v[i]);
            }
        }
    }

    // A diagonal phase makes the off-diagonal real and nonnegative.
    std::vector<double> d(n);
    std::vector<double> e(n, 0.0);
    std::vector<Complex> dphase(n, Complex(1.0));
    for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i).real();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const Complex off = a(i + 1, i);
        e[i] = std::abs(off);
        dphase[i + 1] = e[i] > 0.0 ? dphase[i] * off / e[i] : dphase[i];
    }
    if (with_vectors) {
        *z = CMatrix(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t i = 0; i < n; ++i) (*z)(r, i) = q(r, i) * dphase[i];
    }

    constexpr int kMaxIterations = 60;
    const double eps = std::numeric_limits<double>::epsilon();
    // Absolute deflation threshold; a purely relative test never fires on a
    // cluster of exact zeros.
    double anorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) anorm = std::max(anorm, std::abs(d[i]) + e[i]);
    const double deflate = eps * anorm;
    const auto ln = static_cast<std::ptrdiff_t>(n);
    for (std::ptrdiff_t l = 0; l < ln; ++l) {
        int iterations = 0;
        std::ptrdiff_t mm = l;
        do {
            for (mm = l; mm < ln - 1; ++mm) {
                if (std::abs(e[mm]) <= deflate) break;
            }
            if (mm == l) break;
            if (++iterations > kMaxIterations) throw NumericalError("hermitian_eig: QL iteration did not converge");
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[mm] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0;
            double c = 1.0;
            double p = 0.0;
            std::ptrdiff_t i = mm - 1;
            bool underflow = false;
            for (; i >= l; --i) {
                double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[mm] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if (with_vectors) {
                    for (std::size_t k = 0; k < n; ++k) {
                        CMatrix& zm = *z;
                        const Complex zk1 = zm(k, static_cast<std::size_t>(i + 1));
                        const Complex zk0 = zm(k, static_cast<std::size_t>(i));
                        zm(k, static_cast<std::size_t>(i + 1)) = s * zk0 + c * zk1;
                        zm(k, static_cast<std::size_t>(i)) = c * zk0 - s * zk1;
                    }
                }
            }
            if (underflow) continue;
            d[l] -= p;
            e[l] = g;
            e[mm] = 0.0;
        } while (mm != l);
    }
    return d;
}

inline HermitianEigen tridiagonal_eig(const CMatrix& m) {
    CMatrix z = CMatrix::identity(m.rows());
    const auto values = tridiagonal_ql(m, &z);
    return sorted_eigen(values, z);
}

inline std::vector<double> tridiagonal_values(const CMatrix& m) {
    auto values = tridiagonal_ql(m, nullptr);
    std::sort(values.begin(), values.end(), std::greater<>());
    return values;
}

}  // namespace detail

/// Eigendecomposition of a Hermitian matrix: cyclic Jacobi up to side
/// kJacobiMaxDim, Householder tridiagonalisation plus implicit QL beyond.
inline HermitianEigen hermitian_eig(const CMatrix& m, double hermitian_tol = kHermitianInputTolerance) {
    if (!m.is_square()) throw ShapeError("hermitian_eig: matrix is not square");
    if (!is_hermitian(m, hermitian_tol)) throw ContractError("hermitian_eig: matrix is not Hermitian");
    return m.rows() <= kJacobiMaxDim ? detail::jacobi_eig(m) : detail::tridiagonal_eig(m);
}

/// Descending eigenvalues; skips the eigenvector work on the large-side route.
inline std::vector<double> eigenvalues(const CMatrix& m, double hermitian_tol = kHermitianInputTolerance) {
    if (!m.is_square()) throw ShapeError("hermitian_eig: matrix is not square");
    if (!is_hermitian(m, hermitian_tol)) throw ContractError("hermitian_eig: matrix is not Hermitian");
    return m.rows() <= kJacobiMaxDim ? detail::jacobi_eig(m).values : detail::tridiagonal_values(m);
}

/// V diag(values) V^dagger
inline CMatrix reconstruct(const HermitianEigen& e, std::span<const Complex> values) {
    const std::size_t n = e.vectors.rows();
    if (values.size() != n) throw ShapeError("reconstruct: value count mismatch");
    CMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        if (values[k] == Complex{}) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const Complex vik = e.vectors(i, k) * values[k];
            for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(e.vectors(j, k));
        }
    }
    return out;
}

/// f(h) = V diag(f(lambda_i)) V^dagger for Hermitian h. f maps a real
/// eigenvalue to a complex number; a non-finite result is a domain error.
template <class F>
CMatrix mat_func(const CMatrix& h, F&& f) {
    const HermitianEigen e = hermitian_eig(h);
    std::vector<Complex> fv(e.values.size());
    for (std::size_t k = 0; k < fv.size(); ++k) {
        fv[k] = Complex(std::invoke(f, e.values[k]));
        if (!detail::is_finite(fv[k])) {
            throw DomainError("mat_func: function undefined at eigenvalue " + format_number(e.values[k]));
        }
    }
    return reconstruct(e, fv);
}

/// Natural logarithm of a positive-definite Hermitian matrix.
/// Eigenvalues below kLogCutoff are a domain error unless on_support is set,
/// in which case the logarithm is taken on the support and the kernel maps to 0.
inline CMatrix matrix_log(const CMatrix& h, bool on_support = false) {
    return mat_func(h, [on_support](double lambda) -> Complex {
        if (lambda < kLogCutoff) {
            if (on_support) return 0.0;
            throw DomainError("matrix_log: eigenvalue " + format_number(lambda) + " below cutoff");
        }
        return std::log(lambda);
    });
}

inline bool is_density(const CMatrix& m, double tol = kDefaultTolerance) {
    if (!m.is_square() || !is_hermitian(m, tol)) return false;
    if (std::abs(trace(m) - Complex(1.0)) > tol) return false;
    const auto values = eigenvalues(hermitian_part(m));
    return values.back() >= -tol;
}

// ---------------------------------------------------------------------------
// Partial trace

/// Traces out every subsystem not listed in keep. Kept subsystems stay in
/// ascending order; keeping none yields the 1x1 matrix [trace(m)].
inline CMatrix partial_trace(const CMatrix& m, std::span<const std::size_t> dims, std::span<const std::size_t> keep) {
    if (!m.is_square()) throw ShapeError("partial_trace: matrix is not square");
    if (dims.empty()) throw ShapeError("partial_trace: empty subsystem list");
    std::size_t total = 1;
    for (const auto d : dims) {
        if (d == 0) throw ShapeError("partial_trace: zero subsystem dimension");
        total *= d;
    }
    if (total != m.rows()) throw ShapeError("partial_trace: subsystem dims do not match matrix side");

    std::vector<bool> kept(dims.size(), false);
    for (const auto k : keep) {
        if (k >= dims.size()) throw ShapeError("partial_trace: subsystem index out of range");
        if (kept[k]) throw ShapeError("partial_trace: duplicate subsystem index");
        kept[k] = true;
    }

    std::vector<std::size_t> stride(dims.size());
    std::size_t s = 1;
    for (std::size_t k = dims.size(); k-- > 0;) {
        stride[k] = s;
        s *= dims[k];
    }

    // Offsets of every composite index over the kept (resp. traced) subsystems.
    auto offsets = [&](bool want_kept) {
        std::vector<std::size_t> offs{0};
        for (std::size_t k = 0; k < dims.size(); ++k) {
            if (kept[k] != want_kept) continue;
            std::vector<std::size_t> next;
            next.reserve(offs.size() * dims[k]);
            for (const auto o : offs)
                for (std::size_t d = 0; d < dims[k]; ++d) next.push_back(o + d * stride[k]);
            offs = std::move(next);
        }
        return offs;
    };
    const auto keep_off = offsets(true);
    const auto trace_off = offsets(false);

    CMatrix out(keep_off.size(), keep_off.size());
    for (std::size_t a = 0; a < keep_off.size(); ++a)
        for (std::size_t b = 0; b < keep_off.size(); ++b) {
            Complex sum{};
            for (const auto t : trace_off) sum += m(keep_off[a] + t, keep_off[b] + t);
            out(a, b) = sum;
        }
    return out;
}

inline CMatrix partial_trace(const CMatrix& m, std::initializer_list<std::size_t> dims,
                             std::initializer_list<std::size_t> keep) {
    return partial_trace(m, std::span<const std::size_t>(dims.begin(), dims.size()),
                         std::span<const std::size_t>(keep.begin(), keep.size()));
}

}  // namespace qit
