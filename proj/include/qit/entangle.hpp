#pragma once

// Correlation experiments, entangling dynamics, the cloning entropy argument
// and Procrustean distillation of a single partially entangled pair.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include "qit/entropy.hpp"
#include "qit/random.hpp"

namespace qit {

/// Polarizer rotated by angle (radians): |X> = cos a |H> + sin a |V>,
/// |Y> = -sin a |H> + cos a |V>, with |H> = (1,0) and |V> = (0,1).
struct PolarizationBasis {
    double angle = 0.0;
    CVector x;
    CVector y;

    explicit PolarizationBasis(double a)
        : angle(a), x{std::cos(a), std::sin(a)}, y{-std::sin(a), std::cos(a)} {}
};

struct AnticorrelationProbs {
    double p_xy = 0.0;  ///< first beam X, second Y
    double p_yx = 0.0;
};

inline AnticorrelationProbs anticorrelation_probs(const DensityOperator& state, const PolarizationBasis& basis) {
    if (state.dim() != 4) throw ShapeError("anticorrelation_probs: expected a two-qubit state");
    const CMatrix px = projector(basis.x);
    const CMatrix py = projector(basis.y);
    return {measure_prob(state, tensor(px, py)), measure_prob(state, tensor(py, px))};
}

/// 1/2 |HH><HH| + 1/2 |VV><VV|
inline DensityOperator classically_correlated_state() {
    const double diag[] = {0.5, 0.0, 0.0, 0.5};
    return DensityOperator(CMatrix::diagonal(std::span<const double>(diag)), {2, 2});
}

/// (|00> + |11>) / sqrt 2
inline PureState bell_state() {
    const double r = std::numbers::sqrt2 / 2.0;
    return PureState(CVector{r, 0.0, 0.0, r}, {2, 2});
}

struct EntanglingDemo {
    PureState initial;
    PureState final_state;
    std::size_t schmidt_rank_initial = 0;
    std::size_t schmidt_rank_final = 0;
};

/// Two beams in the product state (|H>+|V>)(|H>+|V>)/2 evolve for t = pi/2
/// under H = diag(1, 1, 1, -1).
inline EntanglingDemo entangling_demo(double hbar = 1.0) {
    const PureState initial(CVector{0.5, 0.5, 0.5, 0.5}, {2, 2});
    const double diag[] = {1.0, 1.0, 1.0, -1.0};
    const Observable h(CMatrix::diagonal(std::span<const double>(diag)), {2, 2});
    const PureState final_state = evolve(initial, h, std::numbers::pi * hbar / 2.0, hbar);
    return {initial, final_state, schmidt_rank(initial), schmidt_rank(final_state)};
}

/// S(1/2 |up>^k<up|^k + 1/2 |psi1>^k<psi1|^k) with psi1 = (|up> + |down>)/sqrt 2,
/// built as a full 2^k-dimensional density matrix (k <= 10).
inline double no_cloning_entropy_full(std::size_t copies) {
    if (copies == 0) throw ContractError("no_cloning_entropy: at least one copy");
    if (copies > 10) throw SizeError("no_cloning_entropy_full: limited to 10 copies");
    const double r = std::numbers::sqrt2 / 2.0;
    PureState up(CVector{1.0, 0.0});
    PureState diag(CVector{r, r});
    PureState up_k = up;
    PureState diag_k = diag;
    for (std::size_t i = 1; i < copies; ++i) {
        up_k = tensor(up_k, up);
        diag_k = tensor(diag_k, diag);
    }
    const Ensemble e({{0.5, up_k}, {0.5, diag_k}});
    return von_neumann(density_from_ensemble(e));
}

/// Same quantity from the 2x2 Gram matrix: the mixture's nonzero spectrum
/// equals that of sqrt(P) G sqrt(P) with overlap <up|psi1>^k = 2^(-k/2).
inline double no_cloning_entropy_gram(std::size_t copies) {
    if (copies == 0) throw ContractError("no_cloning_entropy: at least one copy");
    if (copies > 60) throw SizeError("no_cloning_entropy_gram: limited to 60 copies");
    const double overlap = std::pow(2.0, -static_cast<double>(copies) / 2.0);
    const CMatrix g = CMatrix::from_rows({{0.5, 0.5 * overlap}, {0.5 * overlap, 0.5}});
    auto values = eigenvalues(g);
    for (auto& v : values) v = std::max(v, 0.0);
    return detail::shannon_raw(values);
}

/// Entropy of k clones of the two-state encoding; full matrix up to 10 copies,
/// Gram route beyond.
inline double no_cloning_demo(std::size_t copies) {
    return copies <= 10 ? no_cloning_entropy_full(copies) : no_cloning_entropy_gram(copies);
}

// ---------------------------------------------------------------------------
// Procrustean distillation

/// Alice's two-qubit filter for alpha >= beta > 0 (qubit order: ancilla, pair member).
inline CMatrix procrustean_unitary(double alpha, double beta) {
    if (!(alpha > 0.0) || !(beta > 0.0)) throw ContractError("procrustean_unitary: amplitudes must be positive");
    if (beta > alpha) throw ContractError("procrustean_unitary: requires alpha >= beta");
    const double c = beta / alpha;
    const double s = std::sqrt(std::max(0.0, alpha * alpha - beta * beta)) / alpha;
    return CMatrix::from_rows({{c, 0.0, -s, 0.0}, {0.0, 1.0, 0.0, 0.0}, {s, 0.0, c, 0.0}, {0.0, 0.0, 0.0, 1.0}});
}

struct DistillationOutcome {
    bool success = false;
    double probability = 0.0;
    std::optional<PureState> post_state;  ///< pair state after the ancilla outcome; empty for a zero-probability branch
};

struct DistillationBranches {
    DistillationOutcome success;
    DistillationOutcome failure;
};

/// alpha|00> + beta|11> shared by Alice and Bob. Alice appends |0>, applies
/// the filter to (ancilla, her qubit) and measures the ancilla. Outcome 0
/// leaves the Bell state, outcome 1 leaves |00>.
inline DistillationBranches procrustean_distill(double alpha, double beta) {
    if (std::abs(alpha * alpha + beta * beta - 1.0) > kDefaultTolerance) {
        throw ContractError("procrustean_distill: alpha^2 + beta^2 must equal 1");
    }
    const CMatrix u = procrustean_unitary(alpha, beta);

    // Qubit order: ancilla, Alice, Bob.
    const PureState pair(CVector{alpha, 0.0, 0.0, beta}, {2, 2});
    const PureState total = tensor(PureState(CVector{1.0, 0.0}), pair);
    const CVector after = tensor(u, CMatrix::identity(2)) * total.vector();

    auto branch = [&](std::size_t outcome) {
        DistillationOutcome o;
        o.success = outcome == 0;
        CVector rest(4);
        for (std::size_t i = 0; i < 4; ++i) rest[i] = after[outcome * 4 + i];
        o.probability = std::clamp(rest.norm_squared(), 0.0, 1.0);
        if (rest.norm_squared() > 1e-300) o.post_state = PureState(rest.normalized(), {2, 2});
        return o;
    };
    return {branch(0), branch(1)};
}

/// Distills an arbitrary two-qubit pure state by first reading off its
/// Schmidt coefficients; the local unitaries that bring it to
/// alpha|00> + beta|11> do not change the branch probabilities.
inline DistillationBranches procrustean_distill(const PureState& psi) {
    const auto lambda = schmidt_probabilities(psi);
    if (lambda.size() != 2) throw ShapeError("procrustean_distill: expected a two-qubit state");
    const double total = lambda[0] + lambda[1];
    return procrustean_distill(std::sqrt(lambda[0] / total), std::sqrt(lambda[1] / total));
}

/// Draws ancilla outcomes; returns the number of successful runs.
inline std::uint64_t sample_distillation(double alpha, double beta, std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0) throw ContractError("sample_distillation: trials must be positive");
    const double p = procrustean_distill(alpha, beta).success.probability;
    Rng rng(seed);
    std::uint64_t successes = 0;
    for (std::uint64_t t = 0; t < trials; ++t)
        if (rng.bernoulli(p)) ++successes;
    return successes;
}

/// von Neumann entropy of the first subsystem, in ebits.
inline double entanglement_entropy(const PureState& psi) {
    if (psi.dims().size() != 2) throw ShapeError("entanglement_entropy: state must be bipartite");
    return von_neumann(reduced(DensityOperator(psi), {0}));
}

/// min(1, S(rho_A) / log2 N): the best average yield of maximally entangled
/// pairs per input pair when the filter has N outcomes.
inline double distill_bound(const PureState& psi, std::size_t outcomes) {
    if (outcomes < 2) throw ContractError("distill_bound: need at least two outcomes");
    return std::min(1.0, entanglement_entropy(psi) / std::log2(static_cast<double>(outcomes)));
}

}  // namespace qit
