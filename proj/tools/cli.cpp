// SPDX-License-Identifier: Apache-2.0
//
// antijam: sensing-assisted anti-jamming receivers for the MU-MIMO uplink
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "cli.hpp"

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "antijam/harness.hpp"
#include "antijam_oracles/oracles.hpp"

namespace antijam {

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 1;
constexpr int exit_runtime = 2;

std::string format(const char *fmt, double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, x);
    return buf;
}

struct SweepFlags
{
    std::optional<std::string> config;
    std::optional<std::string> kind;
    std::optional<int> trials;
    std::optional<long long> seed;
    std::optional<double> eta;
    std::optional<double> gamma0_db;
    std::optional<int> threads;
    std::vector<std::string> settings;
    std::string out;
    bool progress = false;
};

SweepConfig build_sweep_config(const SweepFlags &f)
{
    SweepConfig cfg;
    if (f.config)
        load_config_file(cfg, *f.config);
    for (const auto &s : f.settings) {
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--set expects key=value, got '" + s + "'");
        apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
    }
    if (f.kind)
        cfg.kind = parse_sweep_kind(*f.kind);
    if (f.trials)
        cfg.trials = *f.trials;
    if (f.seed) {
        if (*f.seed < 0)
            throw ConfigError("--seed must be nonnegative");
        cfg.seed = static_cast<std::uint64_t>(*f.seed);
    }
    if (f.eta)
        cfg.eta = *f.eta;
    if (f.gamma0_db)
        cfg.gamma0_db = *f.gamma0_db;
    if (f.threads)
        cfg.threads = *f.threads;
    cfg.validate();
    return cfg;
}

int run_sweep_command(const SweepFlags &flags, std::ostream &out, std::ostream &err)
{
    const SweepConfig cfg = build_sweep_config(flags);
    std::function<void(int, int)> progress;
    if (flags.progress)
        progress = [&err](int done, int total) { err << "\r" << done << "/" << total << std::flush; };
    const SweepResult result = run_sweep(cfg, progress);
    if (flags.progress)
        err << "\n";
    if (flags.out.empty() || flags.out == "-")
        write_csv(result, out);
    else
        emit_csv(result, flags.out);
    return exit_ok;
}

int run_demo(long long seed, const std::optional<std::string> &config, std::ostream &out)
{
    if (seed < 0)
        throw ConfigError("--seed must be nonnegative");
    SweepConfig cfg;
    if (config)
        load_config_file(cfg, *config);
    cfg.validate();
    const Scenario sc = sample_scenario(cfg.scenario, static_cast<std::uint64_t>(seed));
    const TrialEvaluation ev = evaluate_trial(sc, cfg);

    out << "scenario: K = " << sc.users() << ", N_B = " << sc.bs_antennas() << ", N_J = " << sc.jammer_antennas()
        << ", P_J = " << format("%.1f", cfg.scenario.jammer_power_db) << " dB, theta_J = "
        << format("%.1f", cfg.scenario.jammer_aoa_deg) << " deg, seed = " << seed << "\n";
    out << "jammer: max SINR " << format("%.6f", ev.jammer.objective) << " (uniform "
        << format("%.6f", ev.jammer.uniform_objective) << "), " << ev.jammer.iterations << " iterations\n";
    out << "method          ";
    for (int k = 0; k < sc.users(); ++k)
        out << "  user" << k << "    ";
    out << "  sum\n";
    for (const auto &m : ev.methods) {
        const bool pre = m.method == Method::no_jammer;
        const auto &rates = pre ? m.report.rate_a : m.report.rate_b;
        std::string name = to_string(m.method);
        name.resize(16, ' ');
        out << name;
        for (double r : rates)
            out << format("%10.6f", r) << "  ";
        out << format("%10.6f", m.sum_rate);
        if (m.fallbacks > 0)
            out << "  (" << m.fallbacks << " fallback)";
        out << "\n";
    }
    return exit_ok;
}

int run_selftest_command(long long seed, std::ostream &out)
{
    if (seed < 0)
        throw ConfigError("--seed must be nonnegative");
    const auto results = oracles::run_selftest(static_cast<std::uint64_t>(seed));
    int failed = 0;
    for (const auto &r : results) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << "  [" << r.detail << "]\n";
        failed += r.passed ? 0 : 1;
    }
    out << results.size() - static_cast<std::size_t>(failed) << "/" << results.size() << " checks passed\n";
    return failed == 0 ? exit_ok : exit_runtime;
}

} // namespace

int cli_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Worst-case jamming and anti-jamming receivers for the MU-MIMO uplink", "antijam"};
    app.require_subcommand(1);

    SweepFlags sweep_flags;
    auto *sweep = app.add_subcommand("sweep", "Monte-Carlo sum-rate sweep, written as CSV");
    sweep->add_option("--kind", sweep_flags.kind, "Swept parameter")->check(CLI::IsMember({"antennas", "power", "aoa"}));
    sweep->add_option("--trials", sweep_flags.trials, "Trials per grid value");
    sweep->add_option("--seed", sweep_flags.seed, "Base seed; trial i uses seed + i");
    sweep->add_option("--out", sweep_flags.out, "Output CSV path ('-' or absent: stdout)");
    sweep->add_option("--eta", sweep_flags.eta, "Jammer weight of the analytic receiver");
    sweep->add_option("--gamma0-db", sweep_flags.gamma0_db, "QoS target of the min-SINR receiver, dB");
    sweep->add_option("--config", sweep_flags.config, "key = value file applied before the flags");
    sweep->add_option("--threads", sweep_flags.threads, "Worker threads (0: all cores)");
    sweep->add_option("--set", sweep_flags.settings, "Extra key=value setting, repeatable");
    sweep->add_flag("--progress", sweep_flags.progress, "Report progress on stderr");

    long long demo_seed = 1;
    std::optional<std::string> demo_config;
    auto *demo = app.add_subcommand("demo", "Evaluate every receiver on one scenario");
    demo->add_option("--seed", demo_seed, "Scenario seed");
    demo->add_option("--config", demo_config, "key = value file for the scenario");

    long long selftest_seed = 2024;
    auto *selftest = app.add_subcommand("selftest", "Cross-check the library against reference computations");
    selftest->add_option("--seed", selftest_seed, "Seed for the random test data");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return exit_config;
    }

    try {
        if (sweep->parsed())
            return run_sweep_command(sweep_flags, out, err);
        if (demo->parsed())
            return run_demo(demo_seed, demo_config, out);
        if (selftest->parsed())
            return run_selftest_command(selftest_seed, out);
    } catch (const ConfigError &e) {
        err << "configuration error: " << e.what() << "\n\n" << app.help();
        return exit_config;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return exit_runtime;
    }
    return exit_config;
}

} // namespace antijam
