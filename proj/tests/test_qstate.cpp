#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"

using namespace qit;
using namespace qit::testing;

namespace {

const double kR = std::numbers::sqrt2 / 2;

PureState psi1() {
    const double s = 1 / std::sqrt(5.0);
    return PureState(CVector{2 * s, s});
}
PureState psi0() { return PureState(CVector{kR, kR}); }

Observable diag_observable(std::initializer_list<double> d, Dims dims) {
    const std::vector<double> v(d);
    return Observable(CMatrix::diagonal(std::span<const double>(v)), std::move(dims));
}

}  // namespace

TEST(PureState, Validation) {
    EXPECT_THROW(PureState(CVector{1.0, 1.0}), ValidationError);
    EXPECT_THROW(PureState(CVector{1.0, 0.0, 0.0}, {2, 2}), ShapeError);
    EXPECT_NO_THROW(PureState(CVector{kR, kR}));
    EXPECT_EQ(max_abs_diff(PureState::from_bits("10").vector(), CVector{0.0, 0.0, 1.0, 0.0}), 0.0);
}

TEST(DensityOperator, Validation) {
    EXPECT_THROW(DensityOperator(CMatrix::from_rows({{0.5, 0.0}, {0.0, 0.4}})), ValidationError);
    EXPECT_THROW(DensityOperator(CMatrix::from_rows({{1.5, 0.0}, {0.0, -0.5}})), ValidationError);
    EXPECT_THROW(DensityOperator(CMatrix::from_rows({{0.5, 0.1}, {0.3, 0.5}})), ValidationError);
    EXPECT_THROW(DensityOperator(CMatrix::identity(4), {2, 3}), ShapeError);
    try {
        DensityOperator(CMatrix::from_rows({{0.5, 0.0}, {0.0, 0.4}}));
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("trace"), std::string::npos);
    }
}

TEST(Ensemble, Validation) {
    EXPECT_THROW(Ensemble({{0.5, psi0()}, {0.4, psi1()}}), ValidationError);
    EXPECT_THROW(Ensemble({{1.2, psi0()}, {-0.2, psi1()}}), ValidationError);
    EXPECT_THROW(Ensemble({{0.5, psi0()}, {0.5, PureState::from_bits("00")}}), ShapeError);
    try {
        Ensemble({{0.5, psi0()}, {0.4, psi1()}});
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("probabilities sum to 0.9"), std::string::npos) << e.what();
    }
}

TEST(Ensemble, OvenDensityMatrix) {
    const auto rho = density_from_ensemble(Ensemble({{0.95, psi1()}, {0.05, psi0()}}));
    EXPECT_LT(max_abs_diff(rho.matrix(), CMatrix::from_rows({{0.785, 0.405}, {0.405, 0.215}})), 1e-12);
}

TEST(Ensemble, PureCase) {
    const auto rho = density_from_ensemble(Ensemble({{1.0, psi1()}}));
    EXPECT_LT(max_abs_diff(rho.matrix(), psi1().projector()), 1e-15);
}

TEST(Ensemble, TwoAtomMixtures) {
    const double p0 = 0.6;
    const double p1 = 0.4;
    // With the state written as (|00>+|11>)/sqrt2 the coherence sits on the |00>,|11> corners.
    const auto bell = density_from_ensemble(Ensemble({{p0, PureState(CVector{kR, 0, 0, kR}, {2, 2})}, {p1, PureState::from_bits("00")}}));
    const CMatrix expected_bell =
        CMatrix::from_rows({{p0 / 2 + p1, 0, 0, p0 / 2}, {0, 0, 0, 0}, {0, 0, 0, 0}, {p0 / 2, 0, 0, p0 / 2}});
    EXPECT_LT(max_abs_diff(bell.matrix(), expected_bell), 1e-12);

    // The printed matrix corresponds to (|01>+|10>)/sqrt2.
    const auto swap = density_from_ensemble(Ensemble({{p0, PureState(CVector{0, kR, kR, 0}, {2, 2})}, {p1, PureState::from_bits("00")}}));
    const CMatrix printed = CMatrix::from_rows({{p1, 0, 0, 0}, {0, p0 / 2, p0 / 2, 0}, {0, p0 / 2, p0 / 2, 0}, {0, 0, 0, 0}});
    EXPECT_LT(max_abs_diff(swap.matrix(), printed), 1e-12);
}

TEST(Ensemble, MixedMembers) {
    const auto inner = density_from_ensemble(Ensemble({{0.5, PureState::basis({2}, 0)}, {0.5, PureState::basis({2}, 1)}}));
    const auto rho = density_from_ensemble(Ensemble({{0.5, inner}, {0.5, PureState::basis({2}, 0)}}));
    EXPECT_NEAR(rho.matrix()(0, 0).real(), 0.75, 1e-15);
    EXPECT_NEAR(rho.matrix()(1, 1).real(), 0.25, 1e-15);
}

TEST(Ensemble, RandomisedOutputsAreDensities) {
    Rng rng(41);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t d = 1 + rng.next_u64() % 8;
        const std::size_t k = 1 + rng.next_u64() % 4;
        const auto p = random_distribution(rng, k);
        std::vector<Ensemble::Item> items;
        for (std::size_t i = 0; i < k; ++i) {
            if (rng.bernoulli(0.5)) {
                items.push_back({p[i], random_pure(rng, {d})});
            } else {
                items.push_back({p[i], random_density(rng, d)});
            }
        }
        const auto rho = density_from_ensemble(Ensemble(std::move(items)));
        ASSERT_TRUE(is_density(rho.matrix(), 1e-9));
    }
}

TEST(Expectation, Examples) {
    const auto rho = DensityOperator(CMatrix::from_rows({{0.785, 0.405}, {0.405, 0.215}}));
    EXPECT_NEAR(expectation(Observable(CMatrix::identity(2)), rho), 1.0, 1e-15);
    EXPECT_NEAR(expectation(diag_observable({1, -1}, {2}), rho), 0.570, 1e-15);
    EXPECT_NEAR(expectation(diag_observable({3.5, -2}, {2}), DensityOperator(PureState::basis({2}, 0))), 3.5, 1e-15);
    EXPECT_THROW(expectation(Observable(CMatrix::identity(4), {2, 2}), rho), ShapeError);
}

TEST(Expectation, EqualsSpectralMeasurementSum) {
    Rng rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t d = 1 + rng.next_u64() % 6;
        const CMatrix h = random_hermitian(rng, d);
        const auto rho = random_density(rng, d);
        const auto e = hermitian_eig(h);
        double sum = 0.0;
        double total_prob = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            const double p = measure_prob(rho, projector(e.vectors.column(k)));
            sum += e.values[k] * p;
            total_prob += p;
        }
        EXPECT_NEAR(expectation(Observable(h), rho), sum, 1e-9);
        EXPECT_NEAR(total_prob, 1.0, 1e-9);
    }
}

TEST(MeasureProb, Examples) {
    const DensityOperator bell(PureState(CVector{kR, 0, 0, kR}, {2, 2}));
    EXPECT_NEAR(measure_prob(bell, tensor(projector(CVector{1.0, 0.0}), projector(CVector{0.0, 1.0}))), 0.0, 1e-15);
    EXPECT_NEAR(measure_prob(bell, CMatrix::identity(4)), 1.0, 1e-15);
    EXPECT_NEAR(measure_prob(DensityOperator(psi0()), projector(CVector{0.0, 1.0})), 0.5, 1e-15);
    EXPECT_THROW(measure_prob(bell, 0.5 * CMatrix::identity(4)), ContractError);
    EXPECT_THROW(measure_prob(bell, CMatrix::identity(2)), ShapeError);
}

TEST(Evolve, EntanglingHamiltonian) {
    const PureState psi(CVector{0.5, 0.5, 0.5, 0.5}, {2, 2});
    const auto out = evolve(psi, diag_observable({1, 1, 1, -1}, {2, 2}), std::numbers::pi / 2);
    const Complex a(0, -0.5);
    EXPECT_LT(max_abs_diff(out.vector(), CVector{a, a, a, -a}), 1e-9);
    EXPECT_EQ(schmidt_rank(out), 2u);
}

TEST(Evolve, ZeroTimeAndHbar) {
    Rng rng(43);
    const auto psi = random_pure(rng, {3});
    const Observable h(random_hermitian(rng, 3));
    EXPECT_LT(max_abs_diff(evolve(psi, h, 0.0).vector(), psi.vector()), 1e-12);
    // t / hbar is what matters.
    EXPECT_LT(max_abs_diff(evolve(psi, h, 2.0, 2.0).vector(), evolve(psi, h, 1.0).vector()), 1e-12);
    EXPECT_THROW(evolve(psi, Observable(CMatrix::identity(2)), 1.0), ShapeError);
    EXPECT_THROW(propagator(h, 1.0, 0.0), DomainError);
}

TEST(Evolve, LocalHamiltoniansKeepProductStates) {
    Rng rng(44);
    for (int trial = 0; trial < 100; ++trial) {
        const CMatrix a = random_hermitian(rng, 2);
        const CMatrix b = random_hermitian(rng, 3);
        const Observable h(tensor(a, CMatrix::identity(3)) + tensor(CMatrix::identity(2), b), {2, 3});
        const auto psi = tensor(random_pure(rng, {2}), random_pure(rng, {3}));
        EXPECT_EQ(schmidt_rank(evolve(psi, h, rng.uniform(0, 5)), 1e-8), 1u);
    }
}

TEST(Purity, Examples) {
    EXPECT_NEAR(purity(DensityOperator(psi0())), 1.0, 1e-15);
    EXPECT_NEAR(purity(DensityOperator::maximally_mixed({2})), 0.5, 1e-15);
    const auto rho = DensityOperator(CMatrix::from_rows({{0.785, 0.405}, {0.405, 0.215}}));
    const auto v = eigenvalues(rho.matrix());
    EXPECT_NEAR(purity(rho), v[0] * v[0] + v[1] * v[1], 1e-14);
}

TEST(Purity, ReducedStates) {
    Rng rng(45);
    for (int trial = 0; trial < 100; ++trial) {
        const auto product = tensor(random_pure(rng, {2}), random_pure(rng, {3}));
        EXPECT_NEAR(purity(reduced(DensityOperator(product), {0})), 1.0, 1e-9);
        const auto entangled = random_pure(rng, {2, 3});
        EXPECT_LT(purity(reduced(DensityOperator(entangled), {0})), 1.0);
    }
}

TEST(Schmidt, Ranks) {
    EXPECT_EQ(schmidt_rank(PureState(CVector{kR, 0, 0, kR}, {2, 2})), 2u);
    EXPECT_EQ(schmidt_rank(PureState::from_bits("10")), 1u);
    EXPECT_TRUE(is_product(PureState::from_bits("10")));
    const Complex a(0, -0.5);
    EXPECT_EQ(schmidt_rank(PureState(CVector{a, a, a, -a}, {2, 2})), 2u);
    EXPECT_THROW(schmidt_rank(PureState::from_bits("101")), ShapeError);
}
