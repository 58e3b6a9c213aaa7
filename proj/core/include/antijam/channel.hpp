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
#include <vector>

#include "antijam/types.hpp"

namespace antijam {

/// Uniform linear array. Spacing is in wavelengths.
struct ArrayGeometry
{
    int elements = 1;
    double spacing = 0.5;

    void validate() const;
};

/// Resolvable propagation paths of one beamspace channel. Angles in radians.
struct PathSet
{
    std::vector<cplx> gains;
    std::vector<double> aoa; // at the receiving array
    std::vector<double> aod; // at the transmitting array

    std::size_t size() const { return gains.size(); }
    void validate() const;
};

/// ULA response; entry n is exp(-j 2 pi spacing n sin(theta)), entry 0 is exactly 1.
/// Throws DomainError unless theta lies in [-pi/2, pi/2].
CVector steering(const ArrayGeometry &geometry, double theta);

/// sum_l b_l a_rx(theta_l) a_tx(psi_l)^H
CMatrix beamspace_channel(const PathSet &paths, const ArrayGeometry &rx, const ArrayGeometry &tx);

/// Columns are the rx steering vectors for the given angles (radians).
/// Throws DomainError for an empty list.
CMatrix jammer_manifold(const std::vector<double> &angles, const ArrayGeometry &rx);

/// Inputs to sample_scenario. Powers and noise in dB relative to unit power,
/// angles in degrees.
struct ScenarioConfig
{
    int users = 3;
    int user_antennas = 8;
    int bs_antennas = 16;
    int jammer_antennas = 64;
    int user_paths = 3;
    int jammer_paths = 3;
    double spacing = 0.5;
    std::vector<double> user_aoa_deg{-10.0, 0.0, 10.0};
    double jammer_aoa_deg = 20.0;
    double angle_spread_deg = 5.0; // offsets and AoDs ~ U(-spread, spread)
    double user_power_db = 5.0;
    double jammer_power_db = 35.0;
    double noise_db = -10.0;

    void validate() const;
};

/// Complete ground truth of one trial.
struct Scenario
{
    ArrayGeometry bs;
    std::vector<ArrayGeometry> user_arrays;
    ArrayGeometry jammer_array;

    std::vector<PathSet> user_paths;
    std::vector<CMatrix> channels;  // H_k, N_B x N_{A_k}
    std::vector<CVector> precoders; // w_k
    std::vector<double> user_power; // P_{A_k}, linear
    std::vector<double> user_aoa_centers; // radians

    PathSet jammer_paths;
    CMatrix jammer_channel;      // G = A_B B_G A_J^H
    CMatrix jammer_bs_manifold;  // A_B(theta_G)
    CMatrix jammer_gains;        // B_G, diagonal
    CMatrix jammer_tx_manifold;  // A_J(psi_G)
    double jammer_power = 0.0;   // P_J, linear
    double noise_var = 1.0;      // sigma^2, linear
    std::uint64_t seed = 0;

    int users() const { return static_cast<int>(channels.size()); }
    Eigen::Index bs_antennas() const { return bs.elements; }
    Eigen::Index jammer_antennas() const { return jammer_array.elements; }

    /// Effective user signatures h_k = H_k w_k as columns (the matrix P).
    CMatrix effective_channels() const;

    /// Checks the structural invariants; throws ConfigError on violation.
    void validate() const;
};

/// Builds the jammer factors and G from a path set.
void set_jammer_paths(Scenario &sc, PathSet paths);

/// Draws a scenario. Identical (cfg, seed) pairs reproduce bit-exactly, and
/// user channels do not depend on any jammer field of cfg.
Scenario sample_scenario(const ScenarioConfig &cfg, std::uint64_t seed);

/// What the base station may use: legitimate channels and precoders, the
/// jammer AoAs, the noise level and its own array. No jammer gains, AoDs,
/// antenna count or power.
struct ReceiverKnowledge
{
    ArrayGeometry bs;
    std::vector<CMatrix> channels;
    std::vector<CVector> precoders;
    std::vector<double> user_aoa_centers; // radians
    std::vector<double> jammer_aoa;       // radians
    double noise_var = 1.0;

    int users() const { return static_cast<int>(channels.size()); }
    CMatrix effective_channels() const;
};

ReceiverKnowledge receiver_knowledge(const Scenario &sc);

} // namespace antijam
