#pragma once

// Block compression of a memoryless qubit source onto its typical subspace.
//
// Strings are n-bit basis labels in the source eigenbasis, qubit 0 first
// (most significant). The scheme is a basis permutation that sends the k-th
// typical string to index k, so every typical string lands in the block whose
// leading n - m qubits are |0>. Vectors are permuted as index maps; no
// 2^n x 2^n matrix is built.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "qit/erasure.hpp"
#include "qit/random.hpp"

namespace qit {

inline constexpr std::size_t kMaxBlockQubits = 16;

/// Single-qubit source diagonalised: rho = p0 |b0><b0| + p1 |b1><b1|, p0 >= p1.
struct SourceSpec {
    DensityOperator rho;
    CMatrix eigenbasis;  ///< columns b0, b1
    double p0 = 1.0;
    double p1 = 0.0;
};

inline SourceSpec diagonalize_source(const DensityOperator& rho) {
    if (rho.dim() != 2) throw ShapeError("diagonalize_source: source must be a single qubit");
    const auto e = hermitian_eig(hermitian_part(rho.matrix()));
    const double p0 = std::clamp(e.values[0], 0.0, 1.0);
    return SourceSpec{rho, e.vectors, p0, 1.0 - p0};
}

inline SourceSpec diagonalize_source(const Ensemble& e) { return diagonalize_source(density_from_ensemble(e)); }

/// Memoryless source emitting eigenstate b0 with probability p0.
inline SourceSpec diagonal_source(double p0) {
    if (!(p0 >= 0.5 && p0 <= 1.0)) throw DomainError("diagonal_source: p0 must lie in [0.5, 1]");
    const double diag[] = {p0, 1.0 - p0};
    return diagonalize_source(DensityOperator(CMatrix::diagonal(std::span<const double>(diag))));
}

/// "0100..." label of a basis index.
inline std::string basis_label(std::uint32_t index, std::size_t n) {
    std::string s(n, '0');
    for (std::size_t i = 0; i < n; ++i)
        if ((index >> i) & 1U) s[n - 1 - i] = '1';
    return s;
}

inline double string_probability(const SourceSpec& spec, std::uint32_t index, std::size_t n) {
    const auto ones = static_cast<double>(std::popcount(index));
    return std::pow(spec.p1, ones) * std::pow(spec.p0, static_cast<double>(n) - ones);
}

/// Nonzero-probability n-bit strings by descending probability, ties broken
/// lexicographically, truncated to max_count.
inline std::vector<std::uint32_t> typical_strings(const SourceSpec& spec, std::size_t n, std::size_t max_count) {
    if (n == 0 || n > kMaxBlockQubits) throw ContractError("typical_strings: block length must lie in [1, 16]");
    std::vector<std::uint32_t> all(std::size_t{1} << n);
    std::iota(all.begin(), all.end(), 0U);
    // Probability depends only on the number of ones; p0 >= p1 means fewer ones
    // is at least as likely, with exact ties when p0 == p1.
    const bool equal = spec.p0 == spec.p1;
    std::stable_sort(all.begin(), all.end(), [&](std::uint32_t a, std::uint32_t b) {
        const int ca = std::popcount(a);
        const int cb = std::popcount(b);
        if (!equal && ca != cb) return ca < cb;
        return a < b;
    });
    std::vector<std::uint32_t> out;
    for (const auto s : all) {
        if (out.size() >= max_count) break;
        if (string_probability(spec, s, n) <= 0.0) break;
        out.push_back(s);
    }
    return out;
}

struct CompressionScheme {
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<std::uint32_t> typical;
    std::vector<std::uint32_t> perm;     ///< perm[source index] = target index
    std::vector<std::uint32_t> inverse;  ///< inverse[target index] = source index
    CMatrix eigenbasis = CMatrix::identity(2);
};

inline CompressionScheme build_scheme(const SourceSpec& spec, std::size_t n, std::size_t m) {
    if (m >= n) throw ContractError("build_scheme: compressed length must be smaller than the block length");
    if (n > kMaxBlockQubits) throw ContractError("build_scheme: block length limited to 16 qubits");
    CompressionScheme s;
    s.n = n;
    s.m = m;
    s.eigenbasis = spec.eigenbasis;
    s.typical = typical_strings(spec, n, std::size_t{1} << m);

    const std::size_t dim = std::size_t{1} << n;
    constexpr auto kUnset = static_cast<std::uint32_t>(-1);
    s.perm.assign(dim, kUnset);
    s.inverse.assign(dim, kUnset);
    for (std::size_t k = 0; k < s.typical.size(); ++k) {
        s.perm[s.typical[k]] = static_cast<std::uint32_t>(k);
        s.inverse[k] = s.typical[k];
    }
    // Remaining sources, ascending, onto remaining targets, ascending.
    std::uint32_t next_target = static_cast<std::uint32_t>(s.typical.size());
    for (std::uint32_t src = 0; src < dim; ++src) {
        if (s.perm[src] != kUnset) continue;
        while (s.inverse[next_target] != kUnset) ++next_target;
        s.perm[src] = next_target;
        s.inverse[next_target] = src;
    }
    return s;
}

/// The scheme's basis permutation as a dense 0/1 matrix (n <= 10).
inline CMatrix permutation_matrix(const CompressionScheme& s) {
    if (s.n > 10) throw SizeError("permutation_matrix: limited to 10 qubits");
    const std::size_t dim = s.perm.size();
    CMatrix u(dim, dim);
    for (std::size_t src = 0; src < dim; ++src) u(s.perm[src], src) = 1.0;
    return u;
}

namespace detail {

/// Applies the same 2x2 matrix to every qubit of an n-qubit vector.
inline CVector apply_each_qubit(const CVector& v, const CMatrix& u, std::size_t n) {
    CVector out = v;
    const std::size_t dim = v.size();
    for (std::size_t q = 0; q < n; ++q) {
        const std::size_t bit = std::size_t{1} << (n - 1 - q);
        for (std::size_t i = 0; i < dim; ++i) {
            if (i & bit) continue;
            const Complex a0 = out[i];
            const Complex a1 = out[i | bit];
            out[i] = u(0, 0) * a0 + u(0, 1) * a1;
            out[i | bit] = u(1, 0) * a0 + u(1, 1) * a1;
        }
    }
    return out;
}

inline bool is_identity(const CMatrix& u) { return max_abs_diff(u, CMatrix::identity(u.rows())) == 0.0; }

}  // namespace detail

struct CompressionResult {
    std::optional<PureState> compressed;  ///< empty when the projection vanishes
    double success_prob = 0.0;
};

/// Rotates into the source eigenbasis, permutes, and keeps the branch whose
/// leading n - m qubits are all |0>.
inline CompressionResult compress(const PureState& psi, const CompressionScheme& s) {
    const std::size_t dim = std::size_t{1} << s.n;
    if (psi.dim() != dim) throw ShapeError("compress: state does not live on the scheme's block");
    const CVector in = detail::is_identity(s.eigenbasis) ? psi.vector()
                                                         : detail::apply_each_qubit(psi.vector(), dagger(s.eigenbasis), s.n);
    const std::size_t kept = std::size_t{1} << s.m;
    std::vector<Complex> head(kept);
    for (std::size_t src = 0; src < dim; ++src)
        if (s.perm[src] < kept) head[s.perm[src]] = in[src];
    CVector h(std::move(head));
    CompressionResult r;
    r.success_prob = std::clamp(h.norm_squared(), 0.0, 1.0);
    if (h.norm_squared() > 1e-300) r.compressed = PureState(h.normalized(), Dims(s.m, 2));
    return r;
}

/// Prepends |0...0>, undoes the permutation and returns to the original basis.
inline PureState decompress(const PureState& compressed, const CompressionScheme& s) {
    const std::size_t kept = std::size_t{1} << s.m;
    if (compressed.dim() != kept) throw ShapeError("decompress: state does not match the compressed length");
    CVector full(std::size_t{1} << s.n);
    for (std::size_t t = 0; t < kept; ++t) full[s.inverse[t]] = compressed.vector()[t];
    if (!detail::is_identity(s.eigenbasis)) full = detail::apply_each_qubit(full, s.eigenbasis, s.n);
    return PureState(full.normalized(), Dims(s.n, 2));
}

/// Source probability of the scheme's typical strings.
inline double block_success_prob(const SourceSpec& spec, std::size_t n, std::size_t m) {
    const auto s = build_scheme(spec, n, m);
    double total = 0.0;
    for (const auto t : s.typical) total += string_probability(spec, t, n);
    return total;
}

/// Qubits per source qubit needed asymptotically: H(p0) = S(rho).
inline double asymptotic_rate(const SourceSpec& spec) { return binary_entropy(spec.p0); }

/// S(rho) obtained from the optimal erasure entropy of one source qubit.
inline double landauer_rate_bound(const SourceSpec& spec) { return optimal_erasure_entropy(spec.rho) / kLn2; }

struct LandauerRateCheck {
    double required_erasure = 0.0;    ///< n ln2 S(rho), units of k
    double compressed_erasure = 0.0;  ///< n * rate qubits, each maximally mixed
    bool contradicts = false;         ///< compressed_erasure < required_erasure
};

/// Compares the erasure entropy of n source qubits with that of n*rate
/// compressed qubits in the maximally mixed state. A rate below S(rho)
/// would erase the same information for less entropy.
inline LandauerRateCheck check_compression_rate(const SourceSpec& spec, double rate, std::size_t n) {
    if (rate < 0.0) throw DomainError("check_compression_rate: rate must be nonnegative");
    LandauerRateCheck c;
    c.required_erasure = static_cast<double>(n) * optimal_erasure_entropy(spec.rho);
    c.compressed_erasure = static_cast<double>(n) * rate * optimal_erasure_entropy(DensityOperator::maximally_mixed({2}));
    c.contradicts = c.compressed_erasure < c.required_erasure - 1e-12;
    return c;
}

/// Samples a block from the source (in its eigenbasis) and reports the
/// fraction that the scheme compresses faithfully.
inline double simulate_block_success(const SourceSpec& spec, const CompressionScheme& s, std::uint64_t trials,
                                     std::uint64_t seed) {
    if (trials == 0) throw ContractError("simulate_block_success: trials must be positive");
    Rng rng(seed);
    const std::size_t kept = std::size_t{1} << s.m;
    std::uint64_t ok = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::uint32_t index = 0;
        for (std::size_t q = 0; q < s.n; ++q) index = (index << 1) | static_cast<std::uint32_t>(rng.bernoulli(spec.p1));
        if (s.perm[index] < kept) ++ok;
    }
    return static_cast<double>(ok) / static_cast<double>(trials);
}

}  // namespace qit
