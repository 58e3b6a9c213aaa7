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

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "antijam/channel.hpp"
#include "antijam/jammer.hpp"
#include "antijam/metrics.hpp"

namespace antijam {

enum class SweepKind
{
    antennas, // N_J
    power,    // P_J in dB
    aoa,      // theta_J in degrees
};

enum class Method
{
    no_jammer,     // jammer-free matched bound, sum of R_k^A with Q = 0
    no_protection, // jammer-unaware receiver
    analytic,
    minsinr,
    zf,
};

/// Receiver used for the no_protection series.
enum class Baseline
{
    mmse,    // (B_k)^{-1} h_k
    matched, // h_k
};

/// Angle set over which the zf and minsinr designs minimize the beampattern.
enum class BeampatternAngles
{
    resolved, // jammer AoAs only; a rank-deficient X takes the 1e-8 ridge
    padded,   // jammer AoAs padded to N_B angles by pad_angles
};

const char *to_string(SweepKind kind);
const char *to_string(Method method);
const char *to_string(Baseline baseline);
const char *to_string(BeampatternAngles angles);
SweepKind parse_sweep_kind(const std::string &text);
Method parse_method(const std::string &text);
Baseline parse_baseline(const std::string &text);
BeampatternAngles parse_beampattern_angles(const std::string &text);

struct SweepConfig
{
    SweepKind kind = SweepKind::antennas;
    std::vector<int> jammer_antenna_grid;   // 16..128 step 8
    std::vector<double> jammer_power_grid_db{5.0, 20.0, 35.0, 50.0, 65.0};
    std::vector<double> jammer_aoa_grid_deg; // -35..30 step 5
    int trials = 100;
    std::uint64_t seed = 1;
    std::vector<Method> methods{Method::no_jammer, Method::no_protection, Method::analytic, Method::minsinr,
                                Method::zf};
    double eta = 1.0;
    double gamma0_db = 20.0;
    Baseline baseline = Baseline::mmse;
    BeampatternAngles angles = BeampatternAngles::resolved;
    int threads = 0; // 0: hardware concurrency
    ScenarioConfig scenario;

    SweepConfig();

    /// Values of the swept parameter.
    std::vector<double> sweep_values() const;

    /// Throws ConfigError describing the first problem found.
    void validate() const;
};

/// Applies one `key = value` setting (config-file spelling). Throws
/// ConfigError for unknown keys or unparsable values.
void apply_setting(SweepConfig &cfg, const std::string &key, const std::string &value);

/// Reads a plain-text `key = value` file; `#` starts a comment.
void load_config_file(SweepConfig &cfg, const std::filesystem::path &path);

/// Parses "a,b,c" or an inclusive range "start:stop:step".
std::vector<double> parse_number_list(const std::string &text);

/// One method's outcome on one scenario. `sum_rate` is R^A with Q = 0 for
/// no_jammer and R^B under the worst-case covariance otherwise.
struct MethodEvaluation
{
    Method method = Method::no_jammer;
    RateReport report;
    double sum_rate = 0.0;
    int fallbacks = 0; // minsinr users that fell back to the analytic filter
};

struct TrialEvaluation
{
    JammerStrategy jammer;
    std::vector<MethodEvaluation> methods; // in cfg.methods order
};

/// Runs the worst-case jammer and every configured receiver on one scenario.
/// Receivers only see receiver_knowledge(sc).
TrialEvaluation evaluate_trial(const Scenario &sc, const SweepConfig &cfg);

/// Draws the scenario for one trial: the swept value is applied to cfg.scenario
/// and the other jammer parameters are drawn from their grids. Resamples (with a
/// derived seed) if the user signatures are linearly dependent.
Scenario trial_scenario(const SweepConfig &cfg, double sweep_value, std::uint64_t seed);

struct SweepRow
{
    std::string sweep;
    double value = 0.0;
    std::string method;
    double mean_rate = 0.0; // bits/s/Hz
    double std_rate = 0.0;
    int trials = 0;
    int fallbacks = 0;
};

struct SweepResult
{
    std::vector<SweepRow> rows;
};

/// Monte-Carlo sweep. Trial i uses seed cfg.seed + i at every grid value;
/// the non-swept jammer parameters are drawn uniformly from their grids with
/// a generator derived from the same seed. Deterministic for a given config.
SweepResult run_sweep(const SweepConfig &cfg, const std::function<void(int, int)> &progress = {});

/// Writes `sweep,value,method,mean_rate,std_rate,trials,fallbacks` with
/// 6 significant digits and LF line endings.
void write_csv(const SweepResult &result, std::ostream &out);

/// Throws std::runtime_error naming the path on I/O failure.
void emit_csv(const SweepResult &result, const std::filesystem::path &path);

/// Parses CSV produced by write_csv. Throws std::runtime_error on schema errors.
SweepResult read_csv(std::istream &in);
SweepResult read_csv(const std::filesystem::path &path);

} // namespace antijam
