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


#include <benchmark/benchmark.h>

#include <complex>
#include <random>

#include "antijam/covariance.hpp"
#include "antijam/harness.hpp"
#include "antijam/jammer.hpp"
#include "antijam/numerics.hpp"
#include "antijam/txrx.hpp"

using namespace antijam;

namespace {

CMatrix random_hermitian(Eigen::Index n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    CMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            m(i, j) = cplx(g(rng), g(rng));
    return hermitian_part(m);
}

void BM_HermitianEig(benchmark::State &state)
{
    const CMatrix m = random_hermitian(state.range(0), 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(hermitian_eig(m));
}
BENCHMARK(BM_HermitianEig)->Arg(16)->Arg(64)->Arg(128);

void BM_PsdProjectTrace(benchmark::State &state)
{
    const CMatrix m = random_hermitian(state.range(0), 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(psd_project_trace(m, 10.0));
}
BENCHMARK(BM_PsdProjectTrace)->Arg(16)->Arg(64);

// One per-user min-SINR program on a default scenario.
void BM_SolveSmallSdp(benchmark::State &state)
{
    ScenarioConfig cfg;
    cfg.bs_antennas = static_cast<int>(state.range(0));
    const Scenario sc = sample_scenario(cfg, 3);
    const ReceiverKnowledge kn = receiver_knowledge(sc);
    const CMatrix p = kn.effective_channels();
    const auto n = p.rows();
    const CMatrix x = manifold_gram(jammer_manifold(pad_angles(kn.jammer_aoa, kn.bs, kn.user_aoa_centers), kn.bs));
    const std::vector<SdpConstraint> constraints{
        {signal_covariance(p, 0) - 100.0 * interference_plus_noise(p, 0, kn.noise_var), 0.0,
         ConstraintSense::greater_equal},
        {CMatrix::Identity(n, n), 1.0, ConstraintSense::equal},
    };
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_small_sdp(x, constraints, n));
}
BENCHMARK(BM_SolveSmallSdp)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_WorstCaseCovariance(benchmark::State &state)
{
    ScenarioConfig cfg;
    cfg.jammer_antennas = static_cast<int>(state.range(0));
    const Scenario sc = sample_scenario(cfg, 4);
    for (auto _ : state)
        benchmark::DoNotOptimize(worst_case_covariance(sc, sc.jammer_power));
}
BENCHMARK(BM_WorstCaseCovariance)->Arg(16)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_EvaluateTrial(benchmark::State &state)
{
    SweepConfig cfg;
    const Scenario sc = trial_scenario(cfg, 64.0, 5);
    for (auto _ : state)
        benchmark::DoNotOptimize(evaluate_trial(sc, cfg));
}
BENCHMARK(BM_EvaluateTrial)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
