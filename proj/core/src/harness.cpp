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

#include "antijam/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <random>
#include <thread>

#include "antijam/txrx.hpp"

namespace antijam {

namespace {

constexpr std::uint64_t nuisance_salt = 0x9E3779B97F4A7C15ull;
constexpr int max_resamples = 16;

bool signatures_independent(const Scenario &sc)
{
    const CMatrix p = sc.effective_channels();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(p.adjoint() * p, Eigen::EigenvaluesOnly);
    const double top = es.eigenvalues().maxCoeff();
    return top > 0.0 && es.eigenvalues().minCoeff() > 1e-20 * top;
}

} // namespace

Scenario trial_scenario(const SweepConfig &cfg, double sweep_value, std::uint64_t seed)
{
    // Same nuisance draws at every grid value of a given trial.
    std::mt19937_64 rng(seed ^ nuisance_salt);
    auto pick = [&](std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    };
    const std::size_t nj_index = pick(cfg.jammer_antenna_grid.size());
    const std::size_t pj_index = pick(cfg.jammer_power_grid_db.size());
    const std::size_t aoa_index = pick(cfg.jammer_aoa_grid_deg.size());

    ScenarioConfig sc = cfg.scenario;
    sc.jammer_antennas = cfg.jammer_antenna_grid[nj_index];
    sc.jammer_power_db = cfg.jammer_power_grid_db[pj_index];
    sc.jammer_aoa_deg = cfg.jammer_aoa_grid_deg[aoa_index];
    switch (cfg.kind) {
    case SweepKind::antennas:
        sc.jammer_antennas = static_cast<int>(std::lround(sweep_value));
        break;
    case SweepKind::power:
        sc.jammer_power_db = sweep_value;
        break;
    case SweepKind::aoa:
        sc.jammer_aoa_deg = sweep_value;
        break;
    }

    for (int attempt = 0; attempt < max_resamples; ++attempt) {
        const std::uint64_t s = seed + (static_cast<std::uint64_t>(attempt) << 32);
        Scenario scenario = sample_scenario(sc, s);
        if (signatures_independent(scenario))
            return scenario;
    }
    throw DegenerateError("trial_scenario: could not draw linearly independent user signatures");
}

TrialEvaluation evaluate_trial(const Scenario &sc, const SweepConfig &cfg)
{
    const ReceiverKnowledge kn = receiver_knowledge(sc);
    const bool jammed = std::any_of(cfg.methods.begin(), cfg.methods.end(),
                                    [](Method m) { return m != Method::no_jammer; });

    TrialEvaluation out;
    if (jammed)
        out.jammer = worst_case_covariance(sc, sc.jammer_power);

    const auto nj = sc.jammer_antennas();
    const ReceivedStatistics clean = received_statistics(sc, HermitianPsd::zero(nj));
    ReceivedStatistics attacked;
    if (jammed)
        attacked = received_statistics(sc, out.jammer.covariance);

    std::vector<double> angles;
    auto beampattern_angles = [&]() -> const std::vector<double> & {
        if (angles.empty())
            angles = cfg.angles == BeampatternAngles::padded
                         ? pad_angles(kn.jammer_aoa, kn.bs, kn.user_aoa_centers)
                         : kn.jammer_aoa;
        return angles;
    };

    for (Method m : cfg.methods) {
        MethodEvaluation ev;
        ev.method = m;
        switch (m) {
        case Method::no_jammer:
            ev.report = rate_report(clean, analytic_receiver(kn, 0.0));
            ev.sum_rate = ev.report.sum_rate_a;
            break;
        case Method::no_protection: {
            const FilterBank f =
                cfg.baseline == Baseline::mmse ? analytic_receiver(kn, 0.0) : matched_filter_receiver(kn);
            ev.report = rate_report(attacked, f);
            ev.sum_rate = ev.report.sum_rate_b;
            break;
        }
        case Method::analytic:
            ev.report = rate_report(attacked, analytic_receiver(kn, cfg.eta));
            ev.sum_rate = ev.report.sum_rate_b;
            break;
        case Method::minsinr: {
            const MinSinrResult r = minsinr_receiver(kn, beampattern_angles(), QosTarget::from_db(cfg.gamma0_db));
            ev.report = rate_report(attacked, r.filters);
            ev.sum_rate = ev.report.sum_rate_b;
            ev.fallbacks = r.fallback_count();
            break;
        }
        case Method::zf:
            ev.report = rate_report(attacked, zf_receiver(kn, beampattern_angles()));
            ev.sum_rate = ev.report.sum_rate_b;
            break;
        }
        out.methods.push_back(std::move(ev));
    }
    return out;
}

SweepResult run_sweep(const SweepConfig &cfg, const std::function<void(int, int)> &progress)
{
    cfg.validate();
    const std::vector<double> values = cfg.sweep_values();
    const std::size_t n_values = values.size();
    const std::size_t n_methods = cfg.methods.size();
    const auto n_trials = static_cast<std::size_t>(cfg.trials);
    const std::size_t n_jobs = n_values * n_trials;

    // rates[job][method], fallbacks[job][method]
    std::vector<std::vector<double>> rates(n_jobs, std::vector<double>(n_methods, 0.0));
    std::vector<std::vector<int>> fallbacks(n_jobs, std::vector<int>(n_methods, 0));

    std::atomic<std::size_t> next{0};
    std::atomic<int> done{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    std::mutex progress_mutex;

    auto worker = [&]() {
        for (;;) {
            const std::size_t job = next.fetch_add(1);
            if (job >= n_jobs)
                return;
            {
                std::lock_guard lock(error_mutex);
                if (first_error)
                    return;
            }
            try {
                const std::size_t vi = job / n_trials;
                const std::size_t trial = job % n_trials;
                const Scenario sc = trial_scenario(cfg, values[vi], cfg.seed + trial);
                const TrialEvaluation ev = evaluate_trial(sc, cfg);
                for (std::size_t m = 0; m < n_methods; ++m) {
                    rates[job][m] = ev.methods[m].sum_rate;
                    fallbacks[job][m] = ev.methods[m].fallbacks;
                }
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
                return;
            }
            const int finished = ++done;
            if (progress) {
                std::lock_guard lock(progress_mutex);
                progress(finished, static_cast<int>(n_jobs));
            }
        }
    };

    unsigned threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads) : std::thread::hardware_concurrency();
    threads = std::clamp(threads, 1u, static_cast<unsigned>(std::max<std::size_t>(n_jobs, 1)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }
    if (first_error)
        std::rethrow_exception(first_error);

    SweepResult result;
    for (std::size_t vi = 0; vi < n_values; ++vi) {
        for (std::size_t m = 0; m < n_methods; ++m) {
            double sum = 0.0;
            int fb = 0;
            for (std::size_t t = 0; t < n_trials; ++t) {
                sum += rates[vi * n_trials + t][m];
                fb += fallbacks[vi * n_trials + t][m];
            }
            const double mean = sum / static_cast<double>(n_trials);
            double ss = 0.0;
            for (std::size_t t = 0; t < n_trials; ++t) {
                const double d = rates[vi * n_trials + t][m] - mean;
                ss += d * d;
            }
            SweepRow row;
            row.sweep = to_string(cfg.kind);
            row.value = values[vi];
            row.method = to_string(cfg.methods[m]);
            row.mean_rate = mean;
            row.std_rate = n_trials > 1 ? std::sqrt(ss / static_cast<double>(n_trials - 1)) : 0.0;
            row.trials = static_cast<int>(n_trials);
            row.fallbacks = fb;
            result.rows.push_back(std::move(row));
        }
    }
    return result;
}

} // namespace antijam
