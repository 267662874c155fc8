#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"

using namespace qit;
using namespace qit::testing;

namespace {

DensityOperator diag_state(double a, double b) {
    const double d[] = {a, b};
    return DensityOperator(CMatrix::diagonal(std::span<const double>(d)));
}

Observable diag_observable(double a, double b) {
    const double d[] = {a, b};
    return Observable(CMatrix::diagonal(std::span<const double>(d)));
}

}  // namespace

TEST(Szilard, Cycle) {
    const auto l = szilard_cycle(300.0);
    EXPECT_NEAR(l.w_extracted, 300 * kLn2, 1e-12);
    EXPECT_NEAR(l.w_erasure, -300 * kLn2, 1e-12);
    EXPECT_NEAR(l.q_total, 0.0, 1e-12);
    EXPECT_NEAR(l.delta_S_total, 0.0, 1e-15);
    EXPECT_NEAR(l.delta_S_system, kLn2, 1e-15);
    EXPECT_NEAR(l.delta_S_bath, -kLn2, 1e-15);
    EXPECT_EQ(l.info_bits, 1.0);
    EXPECT_NEAR(l.generalized_entropy, 0.0, 1e-15);
    EXPECT_THROW(szilard_cycle(0.0), DomainError);
    EXPECT_THROW(szilard_cycle(-1.0), DomainError);
}

TEST(Gibbs, States) {
    const auto flat = gibbs_state(ThermalSpec(Observable(CMatrix(3, 3)), 1.0));
    EXPECT_LT(max_abs_diff(flat.matrix(), Complex(1.0 / 3) * CMatrix::identity(3)), 1e-15);

    const auto ninety = gibbs_state(ThermalSpec(diag_observable(0, 1), 1 / std::log(9.0)));
    EXPECT_LT(max_abs_diff(ninety.matrix(), diag_state(0.9, 0.1).matrix()), 1e-12);

    const auto hot = gibbs_state(ThermalSpec(diag_observable(0, 1), 1e6));
    EXPECT_LT(max_abs_diff(hot.matrix(), Complex(0.5) * CMatrix::identity(2)), 1e-6);

    EXPECT_THROW(ThermalSpec(diag_observable(0, 1), 0.0), DomainError);
}

TEST(Gibbs, ColdAndHugeEnergiesStayFinite) {
    const auto cold = gibbs_state(ThermalSpec(diag_observable(0, 1), 1e-3));
    EXPECT_NEAR(cold.matrix()(0, 0).real(), 1.0, 1e-15);
    const ThermalSpec spec(diag_observable(1e4, 1e4 + 1), 1.0);
    EXPECT_TRUE(std::isfinite(spec.log_partition_function()));
    EXPECT_NEAR(spec.log_partition_function(), -1e4 + std::log(1 + std::exp(-1.0)), 1e-9);
}

TEST(Gibbs, PartitionFunctionMatchesOracle) {
    Rng rng(71);
    for (int trial = 0; trial < 100; ++trial) {
        const CMatrix h = random_hermitian(rng, 3);
        const double t = rng.uniform(0.5, 3.0);
        double z = 0.0;
        for (const double e : eigenvalues(h)) z += std::exp(-e / t);
        EXPECT_NEAR(ThermalSpec(Observable(h), t).partition_function(), z, 1e-9 * z);
    }
}

TEST(ErasureHamiltonian, Examples) {
    EXPECT_LT(frobenius_norm(erasure_hamiltonian(DensityOperator::maximally_mixed({2}), 1.0).matrix()), 1e-12);
    const auto h = erasure_hamiltonian(diag_state(0.9, 0.1), 1.0);
    EXPECT_LT(max_abs_diff(h.matrix(), diag_observable(0, std::log(9.0)).matrix()), 1e-12);
    EXPECT_THROW(erasure_hamiltonian(diag_state(1.0, 0.0), 1.0), DomainError);
    EXPECT_THROW(erasure_hamiltonian(diag_state(0.5, 0.5), -1.0), DomainError);
}

TEST(ErasureHamiltonian, GibbsRoundTrip) {
    Rng rng(72);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t d = 2 + rng.next_u64() % 4;
        const auto rho = random_density(rng, d);
        const double t = rng.uniform(0.1, 10.0);
        const auto back = gibbs_state(ThermalSpec(erasure_hamiltonian(rho, t), t));
        ASSERT_LT(max_abs_diff(back.matrix(), rho.matrix()), 1e-8);
    }
}

TEST(ErasureHamiltonian, OnSupport) {
    const DensityOperator pure(PureState(CVector{std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2}));
    const auto sh = erasure_hamiltonian_on_support(pure, 1.0);
    EXPECT_EQ(sh.rank, 1u);
    EXPECT_LT(max_abs_diff(sh.support, pure.matrix()), 1e-12);
    EXPECT_LT(frobenius_norm(sh.hamiltonian.matrix()), 1e-12);
}

TEST(Ledger, ComponentsConsistent) {
    Rng rng(73);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t d = 2 + rng.next_u64() % 3;
        const auto rho = random_density(rng, d);
        const Observable h(random_hermitian(rng, d));
        const double t = rng.uniform(0.2, 5.0);
        const auto l = lubkin_ledger(rho, ThermalSpec(h, t));
        ASSERT_NEAR(l.delta_S_system + l.delta_S_bath, l.delta_S_total, 1e-9);
        ASSERT_NEAR(l.w_extracted + l.w_erasure, l.q_total, 1e-12);
        ASSERT_GE(l.delta_S_total, optimal_erasure_entropy(rho) - 1e-9);
        ASSERT_GE(l.generalized_entropy, -1e-9);
    }
}

TEST(Ledger, GibbsShortcutMatchesCrossTerm) {
    // Moderate H/T keeps omega well conditioned, so the numerical log is accurate too.
    Rng rng(75);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t d = 2 + rng.next_u64() % 3;
        const auto rho = random_density(rng, d);
        const ThermalSpec spec(Observable(random_hermitian(rng, d)), rng.uniform(1.0, 5.0));
        const auto direct = lubkin_ledger(rho, gibbs_state(spec), spec.hamiltonian(), spec.temperature());
        ASSERT_NEAR(lubkin_ledger(rho, spec).delta_S_total, direct.delta_S_total, 1e-9);
    }
}

TEST(Ledger, MatchedBath) {
    Rng rng(74);
    for (int trial = 0; trial < 100; ++trial) {
        const auto rho = random_density(rng, 2 + rng.next_u64() % 3);
        const auto l = matched_lubkin_ledger(rho, 2.0);
        EXPECT_NEAR(l.delta_S_total, kLn2 * von_neumann(rho), 1e-9);
        EXPECT_NEAR(l.generalized_entropy, 0.0, 1e-9);
        EXPECT_NEAR(l.w_erasure, -2.0 * kLn2 * von_neumann(rho), 1e-8);
    }
    const auto half = matched_lubkin_ledger(DensityOperator::maximally_mixed({2}), 1.0);
    EXPECT_NEAR(half.delta_S_total, kLn2, 1e-12);
    const auto pure = matched_lubkin_ledger(DensityOperator(PureState::basis({2}, 1)), 1.0);
    EXPECT_NEAR(pure.delta_S_total, 0.0, 1e-12);
}

TEST(Ledger, MismatchedBath) {
    const auto spec = ThermalSpec(diag_observable(0, 1), 1 / std::log(9.0));
    const auto l = lubkin_ledger(DensityOperator(PureState::basis({2}, 0)), spec);
    EXPECT_NEAR(l.delta_S_total, -std::log(0.9), 1e-9);
    EXPECT_NEAR(l.delta_S_system, kLn2 * binary_entropy(0.9), 1e-9);
    EXPECT_THROW(lubkin_ledger(DensityOperator::maximally_mixed({2}), DensityOperator::maximally_mixed({3}),
                               Observable(CMatrix::identity(2)), 1.0),
                 ShapeError);
}

TEST(Ledger, MatchedTemperatureIsOptimalOverGrid) {
    // Fixed Hamiltonian diag(0, 1): only T = 1/ln(p0/p1) reproduces rho.
    const auto rho = diag_state(0.8, 0.2);
    const double matched_t = 1 / std::log(4.0);
    const double best = lubkin_ledger(rho, ThermalSpec(diag_observable(0, 1), matched_t)).delta_S_total;
    EXPECT_NEAR(best, kLn2 * binary_entropy(0.8), 1e-12);
    for (int k = 1; k <= 20; ++k) {
        const double t = 0.1 * k;
        const double s = lubkin_ledger(rho, ThermalSpec(diag_observable(0, 1), t)).delta_S_total;
        EXPECT_GE(s, best - 1e-12) << "T = " << t;
    }
}
