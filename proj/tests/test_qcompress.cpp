#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <numbers>
#include <set>

#include "helpers.hpp"

using namespace qit;
using namespace qit::testing;

namespace {

const double kR = std::numbers::sqrt2 / 2;

SourceSpec up_plus_source() {
    return diagonalize_source(Ensemble({{0.5, PureState(CVector{1.0, 0.0})}, {0.5, PureState(CVector{kR, kR})}}));
}

// Oracle: the n-fold Kronecker power of a 2x2 matrix, built as a dense matrix.
CMatrix kron_power(const CMatrix& u, std::size_t n) {
    CMatrix out = u;
    for (std::size_t i = 1; i < n; ++i) out = tensor(out, u);
    return out;
}

}  // namespace

TEST(Source, Diagonalize) {
    const auto spec = up_plus_source();
    EXPECT_NEAR(spec.p0, 0.85355, 1e-5);
    EXPECT_NEAR(spec.p1, 0.14645, 1e-5);
    EXPECT_NEAR(spec.p0, std::pow(std::cos(std::numbers::pi / 8), 2), 1e-12);
    EXPECT_TRUE(is_unitary(spec.eigenbasis));
    const CVector b0 = spec.eigenbasis.column(0);
    EXPECT_NEAR(inner(b0, spec.rho.matrix() * b0).real(), spec.p0, 1e-12);
    EXPECT_THROW(diagonalize_source(DensityOperator::maximally_mixed({3})), ShapeError);
    EXPECT_THROW(diagonal_source(0.3), DomainError);
}

TEST(Typical, AgainstBruteForce) {
    const auto spec = diagonal_source(0.6);
    const auto t = typical_strings(spec, 3, 8);
    ASSERT_EQ(t.size(), 8u);
    // Probabilities non-increasing, ties in ascending index order.
    for (std::size_t k = 1; k < t.size(); ++k) {
        const double a = std::pow(0.4, std::popcount(t[k - 1])) * std::pow(0.6, 3 - std::popcount(t[k - 1]));
        const double b = std::pow(0.4, std::popcount(t[k])) * std::pow(0.6, 3 - std::popcount(t[k]));
        ASSERT_GE(a, b - 1e-15);
        if (std::abs(a - b) < 1e-15) {
            ASSERT_LT(t[k - 1], t[k]);
        }
    }
    EXPECT_EQ(basis_label(t[0], 3), "000");
    EXPECT_EQ(basis_label(t[1], 3), "001");
    EXPECT_EQ(basis_label(t[3], 3), "100");
    EXPECT_EQ(basis_label(t[4], 3), "011");
    EXPECT_EQ(basis_label(t[7], 3), "111");
    EXPECT_EQ(typical_strings(spec, 3, 4).size(), 4u);
    EXPECT_EQ(typical_strings(diagonal_source(1.0), 3, 8).size(), 1u);
}

TEST(Scheme, PermutationIsBijection) {
    const auto s = build_scheme(diagonal_source(0.8), 6, 3);
    std::set<std::uint32_t> targets(s.perm.begin(), s.perm.end());
    EXPECT_EQ(targets.size(), 64u);
    for (std::uint32_t src = 0; src < 64; ++src) EXPECT_EQ(s.inverse[s.perm[src]], src);
    for (std::size_t k = 0; k < s.typical.size(); ++k) EXPECT_EQ(s.perm[s.typical[k]], k);
    EXPECT_TRUE(is_unitary(permutation_matrix(s)));
    EXPECT_THROW(build_scheme(diagonal_source(0.8), 3, 3), ContractError);
    EXPECT_THROW(build_scheme(diagonal_source(0.8), 3, 4), ContractError);
}

TEST(Compress, AtypicalInputFails) {
    const auto s = build_scheme(diagonal_source(0.9), 3, 2);
    const auto r = compress(PureState::from_bits("011"), s);
    EXPECT_EQ(r.success_prob, 0.0);
    EXPECT_FALSE(r.compressed.has_value());
    const auto ok = compress(PureState::from_bits("010"), s);
    EXPECT_NEAR(ok.success_prob, 1.0, 1e-15);
}

TEST(Compress, MatchesDenseOracle) {
    // Dense route: project onto the first 2^m rows of P (B^dagger)^{(x)n}.
    Rng rng(91);
    const auto spec = up_plus_source();
    for (const std::size_t n : {3u, 4u, 5u}) {
        const auto s = build_scheme(spec, n, n - 2);
        const CMatrix dense = permutation_matrix(s) * kron_power(dagger(spec.eigenbasis), n);
        for (int trial = 0; trial < 20; ++trial) {
            const auto psi = random_pure(rng, Dims(n, 2));
            const CVector full = dense * psi.vector();
            double expected = 0.0;
            for (std::size_t i = 0; i < (std::size_t{1} << s.m); ++i) expected += std::norm(full[i]);
            ASSERT_NEAR(compress(psi, s).success_prob, expected, 1e-12);
        }
    }
}

TEST(Compress, TypicalSuperpositionsRoundTrip) {
    Rng rng(92);
    const auto spec = up_plus_source();
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 2 + rng.next_u64() % 7;
        const std::size_t m = 1 + rng.next_u64() % (n - 1);
        const auto s = build_scheme(spec, n, m);
        CVector in_eigenbasis(std::size_t{1} << n);
        for (const auto t : s.typical) in_eigenbasis[t] = rng.complex_normal();
        const CVector lab = detail::apply_each_qubit(in_eigenbasis.normalized(), spec.eigenbasis, n);
        const PureState psi(lab, Dims(n, 2));
        const auto r = compress(psi, s);
        ASSERT_NEAR(r.success_prob, 1.0, 1e-9);
        const auto back = decompress(*r.compressed, s);
        ASSERT_NEAR(std::norm(inner(back.vector(), psi.vector())), 1.0, 1e-9);
    }
}

TEST(Compress, EmpiricalSuccessWithinFourSigma) {
    const auto spec = up_plus_source();
    const auto s = build_scheme(spec, 8, 5);
    const double exact = block_success_prob(spec, 8, 5);
    const std::uint64_t trials = 10000;
    EXPECT_LE(std::abs(simulate_block_success(spec, s, trials, 93) - exact), 4 * binomial_sigma(exact, trials));
    EXPECT_THROW(simulate_block_success(spec, s, 0, 1), ContractError);
}

TEST(Compress, BlockSuccessExample) {
    // Oracle: p0^n + n p0^(n-1) p1, the strings with at most one 1.
    const auto spec = diagonal_source(0.95);
    EXPECT_NEAR(block_success_prob(spec, 7, 3), 0.95562, 1e-4);
    EXPECT_NEAR(block_success_prob(spec, 7, 3), std::pow(0.95, 7) + 7 * std::pow(0.95, 6) * 0.05, 1e-12);
    const auto tilted = up_plus_source();
    EXPECT_NEAR(block_success_prob(tilted, 3, 2), std::pow(tilted.p0, 3) + 3 * tilted.p0 * tilted.p0 * tilted.p1, 1e-12);
    EXPECT_NEAR(asymptotic_rate(spec), 0.2864, 1e-4);
}

TEST(Compress, SuccessMonotoneInKeptQubits) {
    const auto spec = diagonal_source(0.75);
    double previous = 0.0;
    for (std::size_t m = 1; m < 10; ++m) {
        const double p = block_success_prob(spec, 10, m);
        EXPECT_GE(p, previous);
        previous = p;
    }
}

TEST(Rates, Values) {
    EXPECT_EQ(asymptotic_rate(diagonal_source(1.0)), 0.0);
    EXPECT_EQ(asymptotic_rate(diagonal_source(0.5)), 1.0);
    const auto spec = up_plus_source();
    EXPECT_NEAR(asymptotic_rate(spec), 0.6008, 1e-4);
    EXPECT_NEAR(landauer_rate_bound(spec), asymptotic_rate(spec), 1e-12);
}

TEST(Rates, LandauerCheck) {
    const auto spec = up_plus_source();
    const double s = asymptotic_rate(spec);
    EXPECT_TRUE(check_compression_rate(spec, s - 0.01, 100).contradicts);
    EXPECT_FALSE(check_compression_rate(spec, s, 100).contradicts);
    EXPECT_FALSE(check_compression_rate(spec, 1.0, 100).contradicts);
    const auto c = check_compression_rate(spec, 0.5, 10);
    EXPECT_NEAR(c.required_erasure, 10 * std::numbers::ln2 * s, 1e-12);
    EXPECT_NEAR(c.compressed_erasure, 5 * std::numbers::ln2, 1e-12);
    EXPECT_THROW(check_compression_rate(spec, -0.1, 10), DomainError);
}
