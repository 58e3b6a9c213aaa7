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

#include <vector>

#include "antijam/channel.hpp"
#include "antijam/numerics.hpp"

namespace antijam {

/// Worst-case jammer covariance and how the search ended.
struct JammerStrategy
{
    HermitianPsd covariance = HermitianPsd::zero(1); // Q_z, N_J x N_J
    double objective = 0.0;          // max_k gamma_k^A at covariance
    double uniform_objective = 0.0;  // same at (P_J / N_J) I
    int iterations = 0;
    bool converged = false;
    std::vector<double> best_history; // best-so-far objective per iteration, if recorded
};

struct JammerOptions
{
    int max_iterations = 10000;
    int stall_window = 200;       // converged when the best improves < tolerance over this many iterations
    double tolerance = 1e-6;      // relative
    bool record_history = false;
};

/// max_k h_k^H M_k^{-1} h_k for the covariance q (dimension N_J).
double jammer_objective(const HermitianPsd &q, const Scenario &sc);

/// Minimizes jammer_objective over {Q >= 0, tr Q <= power} by projected
/// subgradient descent from the uniform covariance (power / N_J) I, with step
/// alpha_t = alpha_0 / sqrt(t), alpha_0 = power / ||g_0||_F, and user ties
/// resolved to the lowest index. The search runs in the row space of G,
/// which contains an optimal point. Never reads receive filters.
/// Throws DomainError if power < 0.
JammerStrategy worst_case_covariance(const Scenario &sc, double power, const JammerOptions &options = {});

} // namespace antijam
