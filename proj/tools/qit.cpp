// qit: command-line front end. Every subcommand prints JSON (report can also
// print a text table) and exits nonzero on error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qit/qit.hpp"

using nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw qit::ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool looks_like_json(const std::string& text) {
    const auto pos = text.find_first_not_of(" \t\r\n");
    return pos != std::string::npos && text[pos] == '{';
}

/// A state file holds either a density matrix in the text format or an ensemble JSON document.
qit::DensityOperator load_state(const std::string& path) {
    const std::string text = read_file(path);
    if (looks_like_json(text)) return qit::density_from_ensemble(qit::parse_ensemble(text));
    return qit::DensityOperator(qit::parse_matrix(text));
}

void print(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

struct Globals {
    std::string config_path;
    std::optional<double> k_boltzmann;
    std::optional<double> hbar;
    std::optional<std::uint64_t> seed;

    qit::Config resolve() const {
        std::optional<std::string> file;
        if (!config_path.empty()) file = read_file(config_path);
        std::optional<std::string> env;
        if (const char* s = std::getenv("QIT_SEED")) env = s;
        qit::ConfigOverrides flags;
        flags.k_boltzmann = k_boltzmann;
        flags.hbar = hbar;
        flags.seed = seed;
        return qit::parse_config(file, env, flags);
    }
};

void add_globals(CLI::App* cmd, Globals& g, bool with_seed) {
    cmd->add_option("--config", g.config_path, "JSON config file")->check(CLI::ExistingFile);
    cmd->add_option("--k-boltzmann", g.k_boltzmann, "Boltzmann constant for thermodynamic outputs");
    cmd->add_option("--hbar", g.hbar, "reduced Planck constant");
    if (with_seed) cmd->add_option("--seed", g.seed, "random seed (overrides QIT_SEED and the config file)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum information toolkit"};
    app.require_subcommand(1);
    Globals g;
    int exit_code = 0;

    // classical
    auto* classical = app.add_subcommand("classical", "typical-set compression and the binary symmetric channel");
    std::size_t n = 8;
    double p1 = 0.125;
    double q = 0.01;
    std::size_t copies = 3;
    std::uint64_t trials = 100000;
    std::optional<double> coverage;
    classical->add_option("--n", n, "sequence length")->check(CLI::PositiveNumber);
    classical->add_option("--p1", p1, "probability of a 1")->check(CLI::Range(0.0, 1.0));
    classical->add_option("--q", q, "channel flip probability")->check(CLI::Range(0.0, 1.0));
    classical->add_option("--copies", copies, "repetition code length (odd)");
    classical->add_option("--trials", trials, "Monte Carlo trials");
    classical->add_option("--coverage", coverage, "codebook coverage; adds codebook size and bits")->check(CLI::Range(0.0, 1.0));
    add_globals(classical, g, true);
    classical->callback([&] {
        const auto cfg = g.resolve();
        const auto bits = qit::compression_bits(n, p1);
        ordered_json out;
        out["exact_bits"] = bits.exact;
        out["stirling_bits"] = bits.stirling;
        out["capacity"] = qit::channel_capacity(n, q);
        out["residual_exact"] = qit::bsc_residual_error(copies, q);
        out["residual_empirical"] = qit::bsc_simulate(copies, q, trials, cfg.seed);
        if (coverage) {
            const auto book = qit::build_codebook(n, p1, *coverage);
            out["codebook_size"] = book.size();
            out["codebook_bits"] = book.code_bits();
            out["codebook_mass"] = book.mass();
        }
        print(out);
    });

    // entropy
    auto* entropy = app.add_subcommand("entropy", "von Neumann entropy of a state file");
    std::string state_path;
    entropy->add_option("--state", state_path, "matrix text file or ensemble JSON")->required()->check(CLI::ExistingFile);
    add_globals(entropy, g, false);
    entropy->callback([&] {
        const auto cfg = g.resolve();
        const auto rho = load_state(state_path);
        ordered_json out;
        out["von_neumann_bits"] = qit::von_neumann(rho);
        out["thermodynamic"] = cfg.k_boltzmann * qit::optimal_erasure_entropy(rho);
        out["purity"] = qit::purity(rho);
        out["spectrum"] = qit::spectrum(rho);
        print(out);
    });

    // erase
    auto* erase = app.add_subcommand("erase", "entropy ledger of erasing a state by thermalisation");
    double temperature = 1.0;
    bool match = false;
    std::string hamiltonian_path;
    erase->add_option("--state", state_path, "matrix text file or ensemble JSON")->required()->check(CLI::ExistingFile);
    erase->add_option("--temperature", temperature, "bath temperature")->check(CLI::PositiveNumber);
    erase->add_flag("--match", match, "choose the bath Hamiltonian whose equilibrium state is the input");
    erase->add_option("--hamiltonian", hamiltonian_path, "bath Hamiltonian, matrix text format")->check(CLI::ExistingFile);
    add_globals(erase, g, false);
    erase->callback([&] {
        const auto cfg = g.resolve();
        const auto rho = load_state(state_path);
        qit::WorkLedger l;
        if (match) {
            l = qit::matched_lubkin_ledger(rho, temperature);
        } else {
            if (hamiltonian_path.empty()) throw CLI::ValidationError("erase", "either --match or --hamiltonian is required");
            const qit::Observable h(qit::parse_matrix(read_file(hamiltonian_path)), rho.dims());
            l = qit::lubkin_ledger(rho, qit::ThermalSpec(h, temperature));
        }
        const double k = cfg.k_boltzmann;
        ordered_json out;
        out["temperature"] = temperature;
        out["w_extracted"] = k * l.w_extracted;
        out["w_erasure"] = k * l.w_erasure;
        out["q_total"] = k * l.q_total;
        out["delta_S_system"] = k * l.delta_S_system;
        out["delta_S_bath"] = k * l.delta_S_bath;
        out["delta_S_total"] = k * l.delta_S_total;
        out["info_bits"] = l.info_bits;
        out["generalized_entropy"] = l.generalized_entropy;
        out["landauer_minimum"] = k * qit::optimal_erasure_entropy(rho);
        print(out);
    });

    // holevo
    auto* holevo = app.add_subcommand("holevo", "Holevo bound and erasure ledger of an ensemble file");
    std::string ensemble_path;
    holevo->add_option("ensemble", ensemble_path, "ensemble JSON")->required()->check(CLI::ExistingFile);
    add_globals(holevo, g, false);
    holevo->callback([&] {
        g.resolve();
        const std::string text = read_file(ensemble_path);
        const auto ensemble = qit::parse_ensemble(text);
        const qit::SignalEnsemble signals(ensemble);
        ordered_json out;
        out["holevo_bits"] = qit::holevo_bound(signals);

        // Pure members are one-letter code words; mixed members need explicit components.
        std::optional<qit::CodedSource> coded = qit::parse_coded_source(text);
        if (!coded) {
            std::vector<double> outer;
            std::vector<std::vector<double>> inner;
            std::vector<std::vector<qit::PureState>> states;
            bool all_pure = true;
            for (const auto& item : ensemble.items()) {
                const auto* psi = std::get_if<qit::PureState>(&item.state);
                if (!psi) {
                    all_pure = false;
                    break;
                }
                outer.push_back(item.p);
                inner.push_back({1.0});
                states.push_back({*psi});
            }
            if (all_pure) coded.emplace(std::move(outer), std::move(inner), std::move(states));
        }
        if (coded) {
            const auto ledger = qit::two_step_ledger(*coded);
            out["ds1"] = ledger.ds1;
            out["ds2"] = ledger.ds2;
        } else {
            out["ds1"] = nullptr;
            out["ds2"] = nullptr;
        }
        out["fixed_basis_mi"] = qit::measurement_mutual_info(signals, qit::computational_basis(signals.items().front().rho.dim()));
        print(out);
    });

    // qcompress
    auto* qcompress = app.add_subcommand("qcompress", "block compression of a qubit source");
    double p0 = 0.95;
    std::size_t block = 7;
    std::size_t kept = 3;
    std::uint64_t blocks = 10000;
    qcompress->add_option("--p0", p0, "probability of the likelier eigenstate")->check(CLI::Range(0.5, 1.0));
    qcompress->add_option("--n", block, "block length in qubits")->check(CLI::Range(1, 16));
    qcompress->add_option("--m", kept, "compressed length in qubits");
    qcompress->add_option("--trials", blocks, "sampled blocks");
    add_globals(qcompress, g, true);
    qcompress->callback([&] {
        const auto cfg = g.resolve();
        const auto spec = qit::diagonal_source(p0);
        const auto scheme = qit::build_scheme(spec, block, kept);
        ordered_json out;
        out["success_prob_exact"] = qit::block_success_prob(spec, block, kept);
        out["success_prob_empirical"] = qit::simulate_block_success(spec, scheme, blocks, cfg.seed);
        out["rate"] = static_cast<double>(kept) / static_cast<double>(block);
        out["bound"] = qit::asymptotic_rate(spec);
        print(out);
    });

    // distill
    auto* distill = app.add_subcommand("distill", "Procrustean distillation of one partially entangled pair");
    double alpha2 = 0.8;
    std::uint64_t distill_trials = 10000;
    distill->add_option("--alpha2", alpha2, "alpha squared, in [0.5, 1)")->check(CLI::Range(0.5, 1.0));
    distill->add_option("--trials", distill_trials, "sampled runs");
    add_globals(distill, g, true);
    distill->callback([&] {
        const auto cfg = g.resolve();
        const double alpha = std::sqrt(alpha2);
        const double beta = std::sqrt(1.0 - alpha2);
        const auto branches = qit::procrustean_distill(alpha, beta);
        const auto successes = qit::sample_distillation(alpha, beta, distill_trials, cfg.seed);
        const qit::PureState pair(qit::CVector{alpha, 0.0, 0.0, beta}, {2, 2});
        ordered_json out;
        out["success_prob"] = branches.success.probability;
        out["failure_prob"] = branches.failure.probability;
        out["success_entanglement"] = qit::entanglement_entropy(*branches.success.post_state);
        out["input_entanglement"] = qit::entanglement_entropy(pair);
        out["success_empirical"] = static_cast<double>(successes) / static_cast<double>(distill_trials);
        print(out);
    });

    // correlations
    auto* correlations = app.add_subcommand("correlations", "anticorrelation probabilities in a rotated polarizer basis");
    double angle = 45.0;
    correlations->add_option("--angle", angle, "polarizer angle in degrees");
    add_globals(correlations, g, false);
    correlations->callback([&] {
        g.resolve();
        const qit::PolarizationBasis basis(angle * std::numbers::pi / 180.0);
        const auto classical_probs = qit::anticorrelation_probs(qit::classically_correlated_state(), basis);
        const auto entangled_probs = qit::anticorrelation_probs(qit::DensityOperator(qit::bell_state()), basis);
        ordered_json out;
        out["angle_degrees"] = angle;
        out["classical"] = {{"p_xy", classical_probs.p_xy}, {"p_yx", classical_probs.p_yx}};
        out["entangled"] = {{"p_xy", entangled_probs.p_xy}, {"p_yx", entangled_probs.p_yx}};
        print(out);
    });

    // evolve
    auto* evolve = app.add_subcommand("evolve", "Schrodinger evolution of the entangling two-beam example");
    add_globals(evolve, g, false);
    evolve->callback([&] {
        const auto cfg = g.resolve();
        const auto demo = qit::entangling_demo(cfg.hbar);
        ordered_json out;
        ordered_json amps = ordered_json::array();
        for (const auto& z : demo.final_state.vector()) amps.push_back({z.real(), z.imag()});
        out["final_state"] = amps;
        out["schmidt_rank_initial"] = demo.schmidt_rank_initial;
        out["schmidt_rank_final"] = demo.schmidt_rank_final;
        print(out);
    });

    // report
    auto* report = app.add_subcommand("report", "recompute every worked value and compare");
    std::string filter;
    std::string format = "text";
    std::string output;
    report->add_option("--filter", filter, "section or id prefix (classical, entropy, holevo, ...)");
    report->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    report->add_option("--output", output, "write to a file instead of stdout");
    add_globals(report, g, true);
    report->callback([&] {
        const auto cfg = g.resolve();
        const auto r = qit::run_report(filter, cfg.seed);
        const std::string text = qit::emit(r, format == "json" ? qit::ReportFormat::json : qit::ReportFormat::text);
        if (output.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(output, std::ios::binary);
            if (!out) throw qit::ParseError("cannot write '" + output + "'");
            out << text;
        }
        exit_code = r.exit_code();
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const qit::Error& e) {
        std::cerr << "qit: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
