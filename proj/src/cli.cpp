#include "qftv/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qftv/applications.hpp"
#include "qftv/bounds.hpp"
#include "qftv/channel.hpp"
#include "qftv/channel_json.hpp"
#include "qftv/phase_estimation.hpp"
#include "qftv/verifier.hpp"
#include "qftv/version.hpp"

namespace qftv::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::uint64_t kDefaultSeed = 20240901;

ordered_json load_json_file(const std::string& path) {
    std::ifstream stream(path);
    if (!stream) throw std::invalid_argument("cannot open file: " + path);
    ordered_json doc;
    stream >> doc;
    return doc;
}

// resolved channel plus its document for the config echo
struct LoadedChannel {
    Channel channel;
    ordered_json doc;
};

LoadedChannel load_channel(const std::string& channel_path, const ordered_json& config) {
    ordered_json doc;
    if (!channel_path.empty()) {
        doc = load_json_file(channel_path);
    } else if (config.contains("channel")) {
        const ordered_json& entry = config["channel"];
        doc = entry.is_string() ? load_json_file(entry.get<std::string>()) : entry;
    } else {
        throw std::invalid_argument("no channel given (use --channel or a config file)");
    }
    return LoadedChannel{channel_from_json(nlohmann::json(doc)), doc};
}

// config-file fallback: apply config[key] to every option the user left unset
template <typename T>
void merge_config(const CLI::Option* option, const ordered_json& config, const char* key,
                  T& value) {
    if (option != nullptr && option->count() > 0) return;
    if (config.contains(key)) value = config[key].get<T>();
}

std::string render_report(const std::string& command, const ordered_json& config_echo,
                          const ordered_json& result) {
    ordered_json report;
    report["command"] = command;
    report["version"] = kVersion;
    report["config"] = config_echo;
    report["result"] = result;
    return report.dump(2) + "\n";
}

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.10g", value);
    return buffer;
}

double eta_for_report(const Channel& channel, std::uint64_t eta_shots, std::uint64_t seed,
                      std::uint64_t* shots_used) {
    const bool needs_sampling =
        std::holds_alternative<PerGateNoise>(channel.variant());
    const PerBasisInfidelity info =
        exact_per_basis_infidelity(channel, needs_sampling ? eta_shots : 0, seed);
    *shots_used = info.shots_per_state;
    return info.eta_avg;
}

struct CommandContext {
    std::uint64_t seed = kDefaultSeed;
    ordered_json config;
    bool verbose = false;
};

RunResult cmd_verify(const CommandContext& ctx, const LoadedChannel& loaded, double epsilon,
                     double delta, double threshold, bool sequential) {
    const InfidelityEstimate estimate =
        sequential ? estimate_average_infidelity_sequential(loaded.channel, epsilon, delta,
                                                            ctx.seed)
                   : estimate_average_infidelity(loaded.channel, epsilon, delta, ctx.seed);
    const Verdict result = verdict(estimate, threshold);

    ordered_json config_echo;
    config_echo["n"] = loaded.channel.num_qubits();
    config_echo["epsilon"] = epsilon;
    config_echo["delta"] = delta;
    config_echo["threshold"] = threshold;
    config_echo["sequential"] = sequential;
    config_echo["seed"] = ctx.seed;
    config_echo["channel"] = loaded.doc;

    ordered_json payload;
    payload["eta_hat"] = estimate.eta_hat;
    payload["shots"] = estimate.shots;
    payload["epsilon"] = estimate.epsilon;
    payload["delta"] = estimate.delta;
    payload["failures"] = estimate.failures;
    payload["seed"] = ctx.seed;
    payload["verdict"] = result == Verdict::pass ? "PASS" : "FAIL";

    RunResult run_result;
    run_result.exit_code = result == Verdict::pass ? 0 : 1;
    run_result.output = render_report("verify", config_echo, payload);
    return run_result;
}

RunResult cmd_pe(const CommandContext& ctx, const LoadedChannel& loaded, double theta, int K,
                 std::uint64_t shots, std::int64_t pin_lambda, std::uint64_t eta_shots) {
    const int n = loaded.channel.num_qubits();
    const std::uint64_t dim = 1ull << n;
    std::optional<std::uint64_t> pinned;
    if (pin_lambda >= 0) pinned = static_cast<std::uint64_t>(pin_lambda);

    const std::vector<PhaseRunOutcome> outcomes =
        randomized_pe(loaded.channel, theta, shots, ctx.seed, pinned);
    std::uint64_t bad = 0;
    for (const PhaseRunOutcome& outcome : outcomes) {
        if (!good_outcome(outcome.corrected, theta, K, n)) ++bad;
    }
    const double bad_fraction = static_cast<double>(bad) / static_cast<double>(shots);

    std::uint64_t eta_sample_shots = 0;
    const double eta = eta_for_report(loaded.channel, eta_shots, ctx.seed + 1, &eta_sample_shots);
    const double exact_tail = tail_probability_exact(dim, theta, K);

    ordered_json config_echo;
    config_echo["n"] = n;
    config_echo["theta"] = theta;
    config_echo["K"] = K;
    config_echo["shots"] = shots;
    if (pinned) config_echo["pin_lambda"] = *pinned;
    config_echo["seed"] = ctx.seed;
    config_echo["channel"] = loaded.doc;

    ordered_json payload;
    payload["theta"] = theta;
    payload["n"] = n;
    payload["K"] = K;
    payload["shots"] = shots;
    payload["bad_fraction"] = bad_fraction;
    payload["eta"] = eta;
    if (eta_sample_shots > 0) payload["eta_estimate_shots_per_state"] = eta_sample_shots;
    if (K >= 2 && K * eta <= 0.5) {
        payload["bound"] = theorem3_bound(K, eta);
    } else {
        payload["bound"] = nullptr;
    }
    if (2.0 * K * eta <= 1.0) {
        payload["bound_with_exact_tail"] = theorem3_bound_with_tail(K, eta, exact_tail);
    } else {
        payload["bound_with_exact_tail"] = nullptr;
    }
    payload["exact_tail"] = exact_tail;
    payload["seed"] = ctx.seed;

    RunResult run_result;
    run_result.output = render_report("pe", config_echo, payload);
    return run_result;
}

RunResult cmd_period(const CommandContext& ctx, const LoadedChannel& loaded, std::uint64_t r,
                     std::uint64_t s, std::uint64_t period_bound, std::uint64_t runs) {
    const int n = loaded.channel.num_qubits();
    const PeriodicStateSpec spec{1ull << n, r, s};
    spec.validate();
    if (period_bound == 0) period_bound = spec.dimension - 1;

    std::vector<PeriodFindingResult> results(runs);
    for (std::uint64_t i = 0; i < runs; ++i) {
        RandomStream rng = RandomStream::derive(ctx.seed, i);
        results[i] = period_finding_run(loaded.channel, spec, period_bound, rng);
    }

    std::uint64_t successes = 0;
    std::map<std::uint64_t, std::uint64_t> candidate_counts;
    for (const PeriodFindingResult& result : results) {
        if (result.success) ++successes;
        if (result.candidate_period) ++candidate_counts[*result.candidate_period];
    }

    ordered_json config_echo;
    config_echo["n"] = n;
    config_echo["N"] = spec.dimension;
    config_echo["r"] = r;
    config_echo["s"] = s;
    config_echo["period_bound"] = period_bound;
    config_echo["runs"] = runs;
    config_echo["seed"] = ctx.seed;
    config_echo["channel"] = loaded.doc;

    ordered_json payload;
    payload["num_runs"] = runs;
    payload["successes"] = successes;
    payload["success_rate"] = static_cast<double>(successes) / static_cast<double>(runs);
    ordered_json counts = ordered_json::object();
    for (const auto& [candidate, count] : candidate_counts) {
        counts[std::to_string(candidate)] = count;
    }
    payload["candidate_counts"] = counts;
    payload["seed"] = ctx.seed;
    if (ctx.verbose) {
        ordered_json run_list = ordered_json::array();
        for (const PeriodFindingResult& result : results) {
            ordered_json entry;
            entry["outcome_j"] = result.outcome_j;
            if (result.candidate_period) {
                entry["candidate_period"] = *result.candidate_period;
            } else {
                entry["candidate_period"] = nullptr;
            }
            ordered_json convergents = ordered_json::array();
            for (const Convergent& convergent : result.convergents) {
                convergents.push_back({convergent.numerator, convergent.denominator});
            }
            entry["convergents"] = convergents;
            entry["success"] = result.success;
            run_list.push_back(entry);
        }
        payload["runs"] = run_list;
    }

    RunResult run_result;
    run_result.output = render_report("period", config_echo, payload);
    return run_result;
}

RunResult cmd_amplitude(const CommandContext& ctx, const LoadedChannel& loaded, double mu,
                        std::uint64_t shots) {
    const AmplitudeEstimate estimate =
        amplitude_estimation(loaded.channel, mu, shots, ctx.seed);

    ordered_json config_echo;
    config_echo["n"] = loaded.channel.num_qubits();
    config_echo["mu"] = mu;
    config_echo["shots"] = shots;
    config_echo["seed"] = ctx.seed;
    config_echo["channel"] = loaded.doc;

    ordered_json payload;
    payload["mu"] = mu;
    payload["mu_hat"] = estimate.mu_hat;
    payload["abs_error"] = std::abs(estimate.mu_hat - mu);
    payload["shots"] = shots;
    payload["seed"] = ctx.seed;
    if (ctx.verbose) payload["samples"] = estimate.samples;

    RunResult run_result;
    run_result.output = render_report("amplitude", config_echo, payload);
    return run_result;
}

RunResult cmd_bounds(const CommandContext& ctx, std::uint64_t N, std::vector<int> Ks,
                     std::vector<double> xs, const std::string& format) {
    const std::vector<TailBoundRow> rows = bounds_table(N, Ks, xs);

    RunResult run_result;
    if (format == "json") {
        ordered_json config_echo;
        config_echo["N"] = N;
        config_echo["K"] = Ks;
        config_echo["x"] = xs;
        config_echo["seed"] = ctx.seed;
        ordered_json table = ordered_json::array();
        for (const TailBoundRow& row : rows) {
            table.push_back({{"N", row.N},
                             {"K", row.K},
                             {"x", row.x},
                             {"exact_tail", row.exact_tail},
                             {"rigorous", row.rigorous_bound},
                             {"conjectured", row.conjectured_bound}});
        }
        run_result.output = render_report("bounds", config_echo, table);
    } else {
        std::ostringstream csv;
        csv << "N,K,x,exact_tail,rigorous,conjectured\n";
        for (const TailBoundRow& row : rows) {
            csv << row.N << ',' << row.K << ',' << format_double(row.x) << ','
                << format_double(row.exact_tail) << ',' << format_double(row.rigorous_bound)
                << ',' << format_double(row.conjectured_bound) << '\n';
        }
        run_result.output = csv.str();
    }
    return run_result;
}

}  // namespace

RunResult run(const std::vector<std::string>& args) {
    CLI::App app{"average-case inverse-QFT verification and randomized phase estimation"};
    app.require_subcommand(1);

    // common options registered per subcommand
    struct Common {
        std::string config_path;
        std::string out_path;
        std::string format;
        std::string channel_path;
        std::uint64_t seed = kDefaultSeed;
        int threads = 0;
        bool verbose = false;
        CLI::Option* seed_opt = nullptr;
        CLI::Option* format_opt = nullptr;
    };
    auto add_common = [](CLI::App* cmd, Common& common, bool with_channel) {
        cmd->add_option("--config", common.config_path, "JSON config file with defaults");
        cmd->add_option("--out", common.out_path, "write the report to this path");
        common.format_opt = cmd->add_option("--format", common.format, "output format: json|csv");
        common.seed_opt = cmd->add_option("--seed", common.seed, "master random seed");
        cmd->add_option("--threads", common.threads, "worker thread count (0 = default)");
        cmd->add_flag("--verbose", common.verbose, "include per-run details in the report");
        if (with_channel) {
            cmd->add_option("--channel", common.channel_path, "channel spec JSON file");
        }
    };

    Common verify_common, pe_common, period_common, amplitude_common, bounds_common;

    CLI::App* verify = app.add_subcommand("verify", "estimate the average infidelity over random Fourier basis states");
    double verify_epsilon = 0.01, verify_delta = 0.01, verify_threshold = 0.041;
    bool verify_sequential = false;
    add_common(verify, verify_common, true);
    CLI::Option* eps_opt = verify->add_option("--epsilon", verify_epsilon, "additive error");
    CLI::Option* delta_opt = verify->add_option("--delta", verify_delta, "failure probability");
    CLI::Option* thr_opt = verify->add_option("--threshold", verify_threshold, "PASS threshold on eta");
    verify->add_flag("--sequential", verify_sequential, "adaptive shot count (empirical Bernstein)");

    CLI::App* pe = app.add_subcommand("pe", "randomized-offset phase estimation");
    double pe_theta = 0.0;
    int pe_K = 2;
    std::uint64_t pe_shots = 10000, pe_eta_shots = 64;
    std::int64_t pe_pin_lambda = -1;
    add_common(pe, pe_common, true);
    CLI::Option* theta_opt = pe->add_option("--theta", pe_theta, "phase to estimate, in [0,1)");
    CLI::Option* k_opt = pe->add_option("--K", pe_K, "window half-width");
    CLI::Option* pe_shots_opt = pe->add_option("--shots", pe_shots, "number of shots");
    pe->add_option("--pin-lambda", pe_pin_lambda, "debug: fix the offset (disables randomization)");
    pe->add_option("--eta-shots", pe_eta_shots, "per-state shots for eta estimation (noise channels)");

    CLI::App* period = app.add_subcommand("period", "period finding on a periodic state");
    std::uint64_t period_r = 0, period_s = 0, period_bound = 0, period_runs = 16;
    add_common(period, period_common, true);
    CLI::Option* r_opt = period->add_option("--r", period_r, "true period of the input state");
    CLI::Option* s_opt = period->add_option("--s", period_s, "offset of the periodic state");
    CLI::Option* bound_opt = period->add_option("--bound", period_bound, "a-priori period bound R (0 = N-1)");
    CLI::Option* runs_opt = period->add_option("--runs", period_runs, "repetition budget");

    CLI::App* amplitude = app.add_subcommand("amplitude", "amplitude estimation via folded phase estimation");
    double amplitude_mu = 0.0;
    std::uint64_t amplitude_shots = 101;
    add_common(amplitude, amplitude_common, true);
    CLI::Option* mu_opt = amplitude->add_option("--mu", amplitude_mu, "rotation angle in [0, pi/2]");
    CLI::Option* amp_shots_opt = amplitude->add_option("--shots", amplitude_shots, "number of shots");

    CLI::App* bounds = app.add_subcommand("bounds", "exact window tails with rigorous and conjectured bounds (CSV)");
    std::uint64_t bounds_N = 1024;
    std::vector<int> bounds_Ks{2, 3, 4};
    std::vector<double> bounds_xs{0.5};
    add_common(bounds, bounds_common, false);
    CLI::Option* n_opt = bounds->add_option("--N", bounds_N, "Fourier dimension (power of two)");
    CLI::Option* ks_opt = bounds->add_option("--K", bounds_Ks, "window half-widths");
    CLI::Option* xs_opt = bounds->add_option("--x", bounds_xs, "fractional parts of N*theta");

    RunResult result;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));

        Common* common = nullptr;
        if (app.got_subcommand(verify)) common = &verify_common;
        else if (app.got_subcommand(pe)) common = &pe_common;
        else if (app.got_subcommand(period)) common = &period_common;
        else if (app.got_subcommand(amplitude)) common = &amplitude_common;
        else common = &bounds_common;

        CommandContext ctx;
        if (!common->config_path.empty()) ctx.config = load_json_file(common->config_path);
        merge_config(common->seed_opt, ctx.config, "seed", common->seed);
        ctx.seed = common->seed;
        ctx.verbose = common->verbose;

        if (common->threads > 0) {
#ifdef _OPENMP
            omp_set_num_threads(common->threads);
#endif
        }

        merge_config(common->format_opt, ctx.config, "format", common->format);
        const bool is_bounds = app.got_subcommand(bounds);
        if (common->format.empty()) common->format = is_bounds ? "csv" : "json";
        if (common->format != "json" && common->format != "csv") {
            throw std::invalid_argument("format must be json or csv");
        }
        if (!is_bounds && common->format == "csv") {
            throw std::invalid_argument("csv output is only available for the bounds table");
        }

        if (app.got_subcommand(verify)) {
            merge_config(eps_opt, ctx.config, "epsilon", verify_epsilon);
            merge_config(delta_opt, ctx.config, "delta", verify_delta);
            merge_config(thr_opt, ctx.config, "threshold", verify_threshold);
            const LoadedChannel loaded = load_channel(common->channel_path, ctx.config);
            result = cmd_verify(ctx, loaded, verify_epsilon, verify_delta, verify_threshold,
                                verify_sequential);
        } else if (app.got_subcommand(pe)) {
            merge_config(theta_opt, ctx.config, "theta", pe_theta);
            merge_config(k_opt, ctx.config, "K", pe_K);
            merge_config(pe_shots_opt, ctx.config, "shots", pe_shots);
            const LoadedChannel loaded = load_channel(common->channel_path, ctx.config);
            result = cmd_pe(ctx, loaded, pe_theta, pe_K, pe_shots, pe_pin_lambda, pe_eta_shots);
        } else if (app.got_subcommand(period)) {
            merge_config(r_opt, ctx.config, "r", period_r);
            merge_config(s_opt, ctx.config, "s", period_s);
            merge_config(bound_opt, ctx.config, "bound", period_bound);
            merge_config(runs_opt, ctx.config, "runs", period_runs);
            if (period_r == 0) throw std::invalid_argument("period subcommand requires --r");
            const LoadedChannel loaded = load_channel(common->channel_path, ctx.config);
            result = cmd_period(ctx, loaded, period_r, period_s, period_bound, period_runs);
        } else if (app.got_subcommand(amplitude)) {
            merge_config(mu_opt, ctx.config, "mu", amplitude_mu);
            merge_config(amp_shots_opt, ctx.config, "shots", amplitude_shots);
            const LoadedChannel loaded = load_channel(common->channel_path, ctx.config);
            result = cmd_amplitude(ctx, loaded, amplitude_mu, amplitude_shots);
        } else {
            merge_config(n_opt, ctx.config, "N", bounds_N);
            merge_config(ks_opt, ctx.config, "K", bounds_Ks);
            merge_config(xs_opt, ctx.config, "x", bounds_xs);
            result = cmd_bounds(ctx, bounds_N, bounds_Ks, bounds_xs, common->format);
        }
        result.out_path = common->out_path;
    } catch (const CLI::CallForHelp&) {
        result.output = app.help();
        result.exit_code = 0;
    } catch (const CLI::ParseError& error) {
        result.diagnostics = std::string("usage error: ") + error.what();
        result.exit_code = 2;
    } catch (const std::exception& error) {
        result.diagnostics = std::string("error: ") + error.what();
        result.exit_code = 2;
    }
    return result;
}

int main_entry(int argc, char** argv) {
    const auto start = std::chrono::steady_clock::now();
    RunResult result = run(std::vector<std::string>(argv + 1, argv + argc));

    if (!result.output.empty()) {
        if (!result.out_path.empty()) {
            std::ofstream out(result.out_path);
            if (!out) {
                std::cerr << "error: cannot write to " << result.out_path << "\n";
                return 2;
            }
            out << result.output;
        } else {
            std::cout << result.output;
        }
    }
    if (!result.diagnostics.empty()) std::cerr << result.diagnostics << "\n";

    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    std::cerr << "completed in " << elapsed.count() << " ms\n";
    return result.exit_code;
}

}  // namespace qftv::cli
