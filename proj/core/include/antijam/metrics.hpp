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
#include "antijam/txrx.hpp"

namespace antijam {

/// M_k = sum_{k' != k} h_k' h_k'^H + G Q G^H + sigma^2 I
CMatrix jammed_interference(const Scenario &sc, const HermitianPsd &q, int k);

/// Pre-equalization SINR h_k^H M_k^{-1} h_k.
double sinr_a(const Scenario &sc, const HermitianPsd &q, int k);

/// Post-equalization SINR |v^H h_k|^2 / v^H M_k v. Invariant under v -> c v.
/// Throws DomainError for a zero filter.
double sinr_b(const Scenario &sc, const HermitianPsd &q, const CVector &v, int k);

/// eta = P_J N_J L_G ||B_G||_F
double compute_eta(double jammer_power, int jammer_antennas, int jammer_paths, const CMatrix &jammer_gains);

/// v^H A_k v / v^H (B_k + eta A_B A_B^H) v with A_B over the resolved jammer AoAs.
/// Throws DomainError for a zero filter.
double sinr_lower_bound(const ReceiverKnowledge &kn, const CVector &v, int k, double eta);

/// log2(1 + sinr)
inline double rate_bits(double sinr) { return std::log2(1.0 + sinr); }

/// Per-user and summed SINRs and rates, before (A) and after (B) equalization.
struct RateReport
{
    std::vector<double> sinr_a;
    std::vector<double> sinr_b;
    std::vector<double> rate_a; // bits/s/Hz
    std::vector<double> rate_b;
    double sum_rate_a = 0.0;
    double sum_rate_b = 0.0;
};

/// What the base-station array receives: user signatures h_k as columns,
/// the jamming covariance G Q G^H at the array, and the noise level.
struct ReceivedStatistics
{
    CMatrix signatures;
    CMatrix jamming;
    double noise_var = 1.0;
};

ReceivedStatistics received_statistics(const Scenario &sc, const HermitianPsd &q);

/// Evaluates every user under jammer covariance q with the given filters.
/// Throws std::logic_error if R^A > K max_k R_k^A (cannot happen for valid input).
RateReport rate_report(const Scenario &sc, const HermitianPsd &q, const FilterBank &filters);
RateReport rate_report(const ReceivedStatistics &stats, const FilterBank &filters);

} // namespace antijam
