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

#include <string>
#include <vector>

#include "antijam/channel.hpp"
#include "antijam/numerics.hpp"

namespace antijam {

/// One receive equalizer per user stream.
struct FilterBank
{
    std::vector<CVector> v;

    std::size_t size() const { return v.size(); }
    const CVector &operator[](std::size_t k) const { return v[k]; }

    /// Throws DomainError if any filter is zero or non-finite.
    void validate() const;
};

/// Minimum jammer-free SINR target, linear.
struct QosTarget
{
    double gamma0 = 100.0;

    static QosTarget from_db(double db);
};

/// Rotates v so its first nonzero entry is real and positive.
void normalize_phase(CVector &v);

/// sqrt(P_A) times the dominant right singular vector of H, phase-normalized.
/// Ties go to the lowest index. Throws DegenerateError for a zero matrix.
CVector svd_precoder(const CMatrix &H, double power);

/// ||A^H v||^2 for a steering manifold A.
double beampattern(const CVector &v, const CMatrix &manifold);

/// v_k = (B_k + eta A_B A_B^H)^{-1} h_k with A_B over the resolved jammer AoAs.
/// eta = 0 gives the jammer-unaware MMSE filter.
FilterBank analytic_receiver(const ReceiverKnowledge &kn, double eta);

/// v_k = h_k. Not one of the protected designs; available as a baseline.
FilterBank matched_filter_receiver(const ReceiverKnowledge &kn);

/// Angle padding grid: 1 degree resolution, 2 degree exclusion radius.
struct PaddingOptions
{
    double resolution_deg = 1.0;
    double exclusion_deg = 2.0;
};

/// Returns `angles` followed by bs.elements - angles.size() extra angles
/// (radians) drawn from a grid over (-90, 90) degrees, kept away from the
/// jammer AoAs and the user AoA centers. Each pick is the grid angle whose
/// steering vector lies farthest from the span of those already chosen.
/// The input is returned unchanged if it already has bs.elements entries.
std::vector<double> pad_angles(const std::vector<double> &angles, const ArrayGeometry &bs,
                               const std::vector<double> &user_aoa_centers, const PaddingOptions &options = {});

/// Beampattern-minimizing zero-forcing filters over the (padded) angles:
/// v_k = X^{-1} P (P^H X^{-1} P)^{-1} e_k with X = A_B A_B^H.
/// Throws DegenerateError if P is column-rank deficient. An ill-conditioned
/// X gets a ridge of 1e-8 tr(X)/N_B and `ridge_applied` is set.
struct ZfResult
{
    FilterBank filters;
    bool ridge_applied = false;
};
ZfResult zf_receiver_detailed(const ReceiverKnowledge &kn, const std::vector<double> &padded_angles);
FilterBank zf_receiver(const ReceiverKnowledge &kn, const std::vector<double> &padded_angles);

struct MinSinrUserReport
{
    SdpStatus sdp_status = SdpStatus::numerical_failure;
    bool fallback = false;       // analytic filter (eta = 1) used instead
    bool rank_warning = false;   // recovered filter misses gamma0 by more than 2%
    double relaxed_objective = 0.0;   // SDP dual objective, a lower bound on tr(X V)
    double recovered_objective = 0.0; // beampattern of the unit-norm recovered filter
    double achieved_sinr = 0.0;       // jammer-free SINR of the recovered filter
};

struct MinSinrResult
{
    FilterBank filters;
    std::vector<MinSinrUserReport> users;

    int fallback_count() const;
};

/// Per user: min tr(X V) s.t. tr(A_k V) - gamma0 tr(B_k V) >= 0, tr V = 1,
/// V >= 0; the filter is the principal eigenvector of V (unit norm).
/// Users whose SDP is infeasible fall back to analytic_receiver(eta = 1).
MinSinrResult minsinr_receiver(const ReceiverKnowledge &kn, const std::vector<double> &padded_angles,
                               const QosTarget &qos, const SdpOptions &options = {});

} // namespace antijam
