#pragma once

// Recomputes the worked numbers of the source text and compares each one with
// its printed value. Matrix- and vector-valued examples are reported as a
// maximum elementwise deviation against an expected value of 0.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "json.hpp"
#include "qit/classical_info.hpp"
#include "qit/entangle.hpp"
#include "qit/erasure.hpp"
#include "qit/holevo.hpp"
#include "qit/qcompress.hpp"

namespace qit {

struct ReportEntry {
    std::string id;  ///< "<section>.<name>"
    std::string description;
    double paper_value = 0.0;
    double computed = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;

    std::string section() const { return id.substr(0, id.find('.')); }
    const char* status() const { return pass ? "pass" : "fail"; }
};

struct Report {
    std::vector<ReportEntry> entries;

    std::size_t passed() const {
        return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.pass; }));
    }
    std::size_t failed() const { return entries.size() - passed(); }
    bool all_pass() const { return failed() == 0; }
    int exit_code() const { return all_pass() ? 0 : 1; }
};

inline constexpr std::uint64_t kMonteCarloTrials = 100000;

namespace detail {

struct EntrySpec {
    std::string id;
    std::string description;
    double paper_value;
    double tolerance;
    std::function<double()> compute;
    std::string note = {};
};

inline CVector bell_vector() {
    const double r = std::numbers::sqrt2 / 2.0;
    return CVector{r, 0.0, 0.0, r};
}

/// Half-width of a 4-sigma binomial band for a mean of `trials` draws.
inline double four_sigma(double p, std::uint64_t trials) {
    return 4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

inline DensityOperator oven_state() {
    const double r = std::numbers::sqrt2 / 2.0;
    const double s = 1.0 / std::sqrt(5.0);
    const Ensemble e({{0.95, PureState(CVector{2.0 * s, s})}, {0.05, PureState(CVector{r, r})}});
    return density_from_ensemble(e);
}

inline SignalEnsemble two_pure_signals() {
    const double r = std::numbers::sqrt2 / 2.0;
    return SignalEnsemble(Ensemble({{0.5, PureState(CVector{1.0, 0.0})}, {0.5, PureState(CVector{r, r})}}));
}

inline std::vector<EntrySpec> report_specs(std::uint64_t seed) {
    const double r = std::numbers::sqrt2 / 2.0;
    std::vector<EntrySpec> specs;

    // -- cmatrix
    specs.push_back({"cmatrix.partial_trace_bell", "reduced state of the maximally entangled pair, max |dev| from I/2", 0.0,
                     1e-12, [] {
                         const CMatrix red = partial_trace(projector(bell_vector()), {2, 2}, {1});
                         return max_abs_diff(red, 0.5 * CMatrix::identity(2));
                     }});
    specs.push_back({"cmatrix.projector_bell", "projector on the entangled state, max |dev|", 0.0, 1e-12, [] {
                         const CMatrix expected = 0.5 * CMatrix::from_rows({{1, 0, 0, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}, {1, 0, 0, 1}});
                         return max_abs_diff(projector(bell_vector()), expected);
                     }});
    specs.push_back({"cmatrix.propagator_diag", "exp(-iHt), H = diag(1,1,1,-1), t = pi/2, max |dev|", 0.0, 1e-12, [] {
                         const double diag[] = {1.0, 1.0, 1.0, -1.0};
                         const Observable h(CMatrix::diagonal(std::span<const double>(diag)), {2, 2});
                         const Complex mi(0.0, -1.0);
                         const Complex pi_(0.0, 1.0);
                         const Complex expected[] = {mi, mi, mi, pi_};
                         return max_abs_diff(propagator(h, std::numbers::pi / 2.0),
                                             CMatrix::diagonal(std::span<const Complex>(expected)));
                     }});
    specs.push_back({"cmatrix.tensor_1_0", "vector of |1>|0>, max |dev| from (0,0,1,0)", 0.0, 1e-12, [] {
                         return max_abs_diff(tensor(CVector{0.0, 1.0}, CVector{1.0, 0.0}), CVector{0.0, 0.0, 1.0, 0.0});
                     }});
    specs.push_back({"cmatrix.is_density_oven", "[[0.785,0.405],[0.405,0.215]] is a density matrix (1 = yes)", 1.0, 0.0, [] {
                         return is_density(CMatrix::from_rows({{0.785, 0.405}, {0.405, 0.215}})) ? 1.0 : 0.0;
                     }});

    // -- qstate
    specs.push_back({"qstate.density_oven", "oven ensemble {0.95: (2|0>+|1>)/sqrt5, 0.05: (|0>+|1>)/sqrt2}, max |dev|", 0.0, 1e-12, [] {
                         return max_abs_diff(oven_state().matrix(), CMatrix::from_rows({{0.785, 0.405}, {0.405, 0.215}}));
                     }});
    specs.push_back({"qstate.density_mix1", "printed two-atom mixture (p0 = 0.7, p1 = 0.3), max |dev|", 0.0, 1e-12,
                     [r] {
                         const double p0 = 0.7;
                         const double p1 = 0.3;
                         const PureState pair(CVector{0.0, r, r, 0.0}, {2, 2});
                         const Ensemble e({{p0, pair}, {p1, PureState::from_bits("00")}});
                         const CMatrix printed = CMatrix::from_rows(
                             {{p1, 0, 0, 0}, {0, p0 / 2, p0 / 2, 0}, {0, p0 / 2, p0 / 2, 0}, {0, 0, 0, 0}});
                         return max_abs_diff(density_from_ensemble(e).matrix(), printed);
                     },
                     "the printed matrix is the mixture with (|01>+|10>)/sqrt2; the state written beside it, "
                     "(|00>+|11>)/sqrt2, gives weight p0/2 on |00>,|11> instead"});
    specs.push_back({"qstate.evolve_final", "evolved state (-i/2)(1,1,1,-1), max |dev|", 0.0, 1e-9, [] {
                         const double diag[] = {1.0, 1.0, 1.0, -1.0};
                         const Observable h(CMatrix::diagonal(std::span<const double>(diag)), {2, 2});
                         const PureState psi(CVector{0.5, 0.5, 0.5, 0.5}, {2, 2});
                         const Complex a(0.0, -0.5);
                         return max_abs_diff(evolve(psi, h, std::numbers::pi / 2.0).vector(), CVector{a, a, a, -a});
                     }});
    specs.push_back({"qstate.measure_01_bell", "P(A=0, B=1) on the entangled projector", 0.0, 1e-12, [] {
                         const DensityOperator rho(PureState(bell_vector(), {2, 2}));
                         return measure_prob(rho, tensor(projector(CVector{1.0, 0.0}), projector(CVector{0.0, 1.0})));
                     }});
    specs.push_back({"qstate.schmidt_rank_bell", "Schmidt rank of (|00>+|11>)/sqrt2", 2.0, 0.0,
                     [] { return static_cast<double>(schmidt_rank(PureState(bell_vector(), {2, 2}))); }});
    specs.push_back({"qstate.schmidt_rank_final", "Schmidt rank of (-i/2)(1,1,1,-1)", 2.0, 0.0, [] {
                         const Complex a(0.0, -0.5);
                         return static_cast<double>(schmidt_rank(PureState(CVector{a, a, a, -a}, {2, 2})));
                     }});

    // -- entropy
    specs.push_back({"entropy.boltzmann_certain", "Boltzmann entropy of (1, 0), units of k", 0.0, 1e-12,
                     [] { return boltzmann(ProbDist({1.0, 0.0})); }});
    specs.push_back({"entropy.boltzmann_half", "Boltzmann entropy of (1/2, 1/2), units of k", kLn2, 1e-12,
                     [] { return boltzmann(ProbDist({0.5, 0.5})); }});
    specs.push_back({"entropy.binary_095", "H(0.95), bits", 0.2864, 1e-4, [] { return binary_entropy(0.95); }});
    specs.push_back({"entropy.cross_term_matched", "-tr(rho ln omega) - ln2 S(rho) at omega = rho (oven state)", 0.0, 1e-12, [] {
                         const auto rho = oven_state();
                         return erasure_cross_term(rho, rho) - kLn2 * von_neumann(rho);
                     }});
    specs.push_back({"entropy.shannon_1_8", "H(1/8, 7/8), bits", 0.5436, 1e-4,
                     [] { return shannon(ProbDist({0.125, 0.875})); }});
    specs.push_back({"entropy.shannon_half", "H(1/2, 1/2), bits", 1.0, 1e-12, [] { return shannon(ProbDist({0.5, 0.5})); }});
    specs.push_back({"entropy.von_neumann_nocloning", "S of 1/2 |up><up| + 1/2 |psi1><psi1|, bits", 0.6008, 1e-4, [r] {
                         const Ensemble e({{0.5, PureState(CVector{1.0, 0.0})}, {0.5, PureState(CVector{r, r})}});
                         return von_neumann(density_from_ensemble(e));
                     }});
    specs.push_back({"entropy.von_neumann_pure", "S of a pure state", 0.0, 1e-12,
                     [] { return von_neumann(DensityOperator(PureState(bell_vector(), {2, 2}))); }});

    // -- classical
    specs.push_back({"classical.capacity_identity", "N_C(1-H(q)) + N_C H(q) at N_C = 1000, q = 0.11", 1000.0, 1e-9,
                     [] { return channel_capacity(1000, 0.11) + error_pattern_bits(1000, 0.11); }});
    specs.push_back({"classical.codebook_single_ones", "single-1 strings in the N=8, p1=1/8 codebook", 8.0, 0.0, [] {
                         const double p1 = 0.125;
                         const double mass = std::pow(1.0 - p1, 8.0) + 8.0 * p1 * std::pow(1.0 - p1, 7.0);
                         const auto book = build_codebook(8, p1, mass);
                         double singles = 0.0;
                         for (const auto& s : book.typical())
                             if (s.count_ones() == 1) singles += 1.0;
                         return singles;
                     }});
    specs.push_back({"classical.compression_bits", "log2 of the typical count, N=8, p1=1/8", 3.0, 1e-12,
                     [] { return compression_bits(8, 0.125).exact; }});
    specs.push_back({"classical.decode_101", "majority decoding of 101", 1.0, 0.0,
                     [] { return static_cast<double>(repetition_decode(BitString::parse("101"))); }});
    specs.push_back({"classical.residual_error", "residual error of the 3-bit repetition code at q = 0.01", 1e-4, 2e-4,
                     [] { return bsc_residual_error(3, 0.01); },
                     "printed as 0.01% (one double-error pattern); the exact value over all patterns is 2.98e-4"});
    specs.push_back({"classical.residual_error_mc", "simulated residual error, 1e5 trials", bsc_residual_error(3, 0.01),
                     four_sigma(bsc_residual_error(3, 0.01), kMonteCarloTrials),
                     [seed] { return bsc_simulate(3, 0.01, kMonteCarloTrials, seed); },
                     "expected value is the exact residual; tolerance is 4 sigma"});
    specs.push_back({"classical.stirling_per_symbol", "N H(p1) / N at p1 = 1/8, bits", 0.5436, 1e-4,
                     [] { return compression_bits(8, 0.125).stirling / 8.0; }});
    specs.push_back({"classical.typical_count", "strings of length 8 with one 1", 8.0, 0.0,
                     [] { return static_cast<double>(typical_count(8, 0.125).exact.value_or(0)); }});

    // -- erasure
    specs.push_back({"erasure.lubkin_minimum", "matched-bath erasure entropy minus ln2 S(rho), oven state", 0.0, 1e-9, [] {
                         const auto rho = oven_state();
                         return matched_lubkin_ledger(rho, 1.0).delta_S_total - kLn2 * von_neumann(rho);
                     }});
    specs.push_back({"erasure.lubkin_minimum_ledger", "ledger total for omega = rho minus ln2 S(rho), oven state", 0.0, 1e-9,
                     [] {
                         const auto rho = oven_state();
                         const ThermalSpec spec(erasure_hamiltonian(rho, 1.0), 1.0);
                         return lubkin_ledger(rho, spec).delta_S_total - kLn2 * von_neumann(rho);
                     }});
    specs.push_back({"erasure.szilard_extract", "work extracted per Szilard cycle at T = 1, units of kT", kLn2, 1e-12,
                     [] { return szilard_cycle(1.0).w_extracted; }});
    specs.push_back({"erasure.szilard_total", "net work of a Szilard cycle including erasure", 0.0, 1e-12,
                     [] { return szilard_cycle(1.0).q_total; }});

    // -- holevo
    specs.push_back({"holevo.bound_two_pure", "Holevo bound of {1/2: |up>, 1/2: (|up>+|down>)/sqrt2}", 0.6008, 1e-4,
                     [] { return holevo_bound(two_pure_signals()); }});

    // -- qcompress
    specs.push_back({"qcompress.block_success", "p_likely for n=7, m=3, p0=0.95", 0.955, 1e-3,
                     [] { return block_success_prob(diagonal_source(0.95), 7, 3); },
                     "printed value is rounded down; exact 0.95^7 + 7 0.95^6 0.05 = 0.955619"});
    specs.push_back({"qcompress.block_success_mc", "simulated block success, 1e5 blocks",
                     block_success_prob(diagonal_source(0.95), 7, 3),
                     four_sigma(block_success_prob(diagonal_source(0.95), 7, 3), kMonteCarloTrials), [seed] {
                         const auto spec = diagonal_source(0.95);
                         return simulate_block_success(spec, build_scheme(spec, 7, 3), kMonteCarloTrials, seed);
                     },
                     "expected value is the exact success probability; tolerance is 4 sigma"});
    specs.push_back({"qcompress.landauer_rate", "rate bound from the optimal erasure entropy, p0 = 0.95", 0.2864, 1e-4,
                     [] { return landauer_rate_bound(diagonal_source(0.95)); }});
    specs.push_back({"qcompress.rate", "asymptotic qubits per source qubit, p0 = 0.95", 0.2864, 1e-4,
                     [] { return asymptotic_rate(diagonal_source(0.95)); }});
    specs.push_back({"qcompress.scheme_mappings", "n=7, m=3 mappings differing from U|typical_k> = |k>", 0.0, 0.0, [] {
                         const auto s = build_scheme(diagonal_source(0.95), 7, 3);
                         const std::uint32_t typical[] = {0, 1, 2, 4, 8, 16, 32, 64};
                         double wrong = 0.0;
                         for (std::uint32_t k = 0; k < 8; ++k)
                             if (s.perm[typical[k]] != k) wrong += 1.0;
                         return wrong;
                     }});
    specs.push_back({"qcompress.source_p0", "p0 of {0.95: |0>, 0.05: |1>}", 0.95, 1e-12, [] {
                         const Ensemble e({{0.95, PureState::basis({2}, 0)}, {0.05, PureState::basis({2}, 1)}});
                         return diagonalize_source(e).p0;
                     }});
    specs.push_back({"qcompress.superposition_roundtrip", "a|0000000> + b|0000001> -> a|000> + b|001>, max |dev|", 0.0,
                     1e-12, [] {
                         const auto spec = diagonal_source(0.95);
                         const auto s = build_scheme(spec, 7, 3);
                         const double a = 0.6;
                         const double b = 0.8;
                         CVector in(128);
                         in[0] = a;
                         in[1] = b;
                         const auto c = compress(PureState(in, Dims(7, 2)), s);
                         CVector expected(8);
                         expected[0] = a;
                         expected[1] = b;
                         return std::max(std::abs(1.0 - c.success_prob), max_abs_diff(c.compressed->vector(), expected));
                     }});
    specs.push_back({"qcompress.typical_strings", "n=7 typical strings differing from 0000000 and the single-1 strings", 0.0,
                     0.0, [] {
                         const auto t = typical_strings(diagonal_source(0.95), 7, 8);
                         const std::vector<std::uint32_t> expected = {0, 1, 2, 4, 8, 16, 32, 64};
                         double wrong = t.size() == expected.size() ? 0.0 : 8.0;
                         for (std::size_t k = 0; k < std::min(t.size(), expected.size()); ++k)
                             if (t[k] != expected[k]) wrong += 1.0;
                         return wrong;
                     }});

    // -- entangle
    specs.push_back({"entangle.distill_mc", "simulated distillation success, alpha^2 = 0.8, 1e5 trials", 0.4,
                     four_sigma(0.4, kMonteCarloTrials), [seed] {
                         const auto n = sample_distillation(std::sqrt(0.8), std::sqrt(0.2), kMonteCarloTrials, seed);
                         return static_cast<double>(n) / static_cast<double>(kMonteCarloTrials);
                     },
                     "tolerance is 4 sigma"});
    specs.push_back({"entangle.distill_post_entropy", "entanglement of the success branch, alpha^2 = 0.8, ebits", 1.0, 1e-9,
                     [] { return entanglement_entropy(*procrustean_distill(std::sqrt(0.8), std::sqrt(0.2)).success.post_state); }});
    specs.push_back({"entangle.distill_probability", "success probability 2 beta^2 at alpha^2 = 0.8", 0.4, 1e-9,
                     [] { return procrustean_distill(std::sqrt(0.8), std::sqrt(0.2)).success.probability; }});
    specs.push_back({"entangle.ebit", "entanglement of (|10>+|01>)/sqrt2, ebits", 1.0, 1e-12,
                     [r] { return entanglement_entropy(PureState(CVector{0.0, r, r, 0.0}, {2, 2})); }});
    specs.push_back({"entangle.final_schmidt_rank", "Schmidt rank after the entangling evolution", 2.0, 0.0,
                     [] { return static_cast<double>(entangling_demo().schmidt_rank_final); }});
    specs.push_back({"entangle.final_vector", "entangling evolution result vs (-i/2)(1,1,1,-1), max |dev|", 0.0, 1e-9, [] {
                         const Complex a(0.0, -0.5);
                         return max_abs_diff(entangling_demo().final_state.vector(), CVector{a, a, a, -a});
                     }});
    specs.push_back({"entangle.no_cloning_1", "S with one copy, bits", 0.6008, 1e-4, [] { return no_cloning_demo(1); }});
    specs.push_back({"entangle.no_cloning_2", "S with two copies, bits", 0.8113, 1e-4, [] { return no_cloning_demo(2); }});
    specs.push_back({"entangle.prob_classical", "P(X,Y) at 45 degrees on the classically correlated state", 0.25, 1e-12, [] {
                         return anticorrelation_probs(classically_correlated_state(), PolarizationBasis(std::numbers::pi / 4)).p_xy;
                     }});
    specs.push_back({"entangle.prob_entangled", "P(X,Y) at 45 degrees on the entangled projector", 0.0, 1e-12, [] {
                         return anticorrelation_probs(DensityOperator(bell_state()), PolarizationBasis(std::numbers::pi / 4)).p_xy;
                     }});
    return specs;
}

}  // namespace detail

namespace detail {

/// A computation that throws is reported as a failure with a NaN value.
inline ReportEntry evaluate(const EntrySpec& spec) {
    ReportEntry e;
    e.id = spec.id;
    e.description = spec.description;
    e.paper_value = spec.paper_value;
    e.tolerance = spec.tolerance;
    e.note = spec.note;
    try {
        e.computed = spec.compute();
    } catch (const std::exception& ex) {
        e.computed = std::nan("");
        e.note = std::string("error: ") + ex.what();
    }
    e.pass = std::abs(e.computed - e.paper_value) <= e.tolerance;
    return e;
}

}  // namespace detail

/// Runs every entry whose id starts with `filter` (all when empty), sorted by id.
inline Report run_report(const std::string& filter = "", std::uint64_t seed = 1) {
    Report report;
    for (const auto& spec : detail::report_specs(seed)) {
        if (!filter.empty() && spec.id.rfind(filter, 0) != 0) continue;
        report.entries.push_back(detail::evaluate(spec));
    }
    std::sort(report.entries.begin(), report.entries.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return report;
}

inline nlohmann::ordered_json report_json(const Report& r) {
    nlohmann::ordered_json doc;
    doc["entries"] = nlohmann::ordered_json::array();
    for (const auto& e : r.entries) {
        nlohmann::ordered_json j;
        j["id"] = e.id;
        j["description"] = e.description;
        j["paper_value"] = e.paper_value;
        if (std::isfinite(e.computed)) {
            j["computed"] = e.computed;
        } else {
            j["computed"] = nullptr;
        }
        j["tolerance"] = e.tolerance;
        j["status"] = e.status();
        if (!e.note.empty()) j["note"] = e.note;
        doc["entries"].push_back(std::move(j));
    }
    doc["summary"] = {{"pass", r.passed()}, {"fail", r.failed()}};
    return doc;
}

inline std::string report_text(const Report& r) {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "%-36s %14s %14s %10s  %s\n", "id", "expected", "computed", "tolerance", "status");
    out += line;
    out += std::string(84, '-') + "\n";
    for (const auto& e : r.entries) {
        std::snprintf(line, sizeof line, "%-36s %14.8g %14.8g %10.2g  %s\n", e.id.c_str(), e.paper_value, e.computed,
                      e.tolerance, e.status());
        out += line;
    }
    std::snprintf(line, sizeof line, "\n%zu passed, %zu failed\n", r.passed(), r.failed());
    out += line;
    return out;
}

enum class ReportFormat { text, json };

inline std::string emit(const Report& r, ReportFormat format) {
    return format == ReportFormat::json ? report_json(r).dump(2) + "\n" : report_text(r);
}

}  // namespace qit
