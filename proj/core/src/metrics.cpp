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

#include "antijam/metrics.hpp"

#include <algorithm>
#include <stdexcept>

#include "antijam/covariance.hpp"

namespace antijam {

namespace {

void check_user(const Scenario &sc, int k)
{
    if (k < 0 || k >= sc.users())
        throw DomainError("user index " + std::to_string(k) + " out of range");
}

void check_covariance(const Scenario &sc, const HermitianPsd &q)
{
    if (q.dim() != sc.jammer_antennas())
        throw DimensionError("jammer covariance is " + std::to_string(q.dim()) + "x" + std::to_string(q.dim()) +
                             ", expected N_J = " + std::to_string(sc.jammer_antennas()));
}

} // namespace

CMatrix jammed_interference(const Scenario &sc, const HermitianPsd &q, int k)
{
    check_user(sc, k);
    check_covariance(sc, q);
    CMatrix m = interference_plus_noise(sc.effective_channels(), k, sc.noise_var);
    m.noalias() += sc.jammer_channel * q.matrix() * sc.jammer_channel.adjoint();
    return 0.5 * (m + m.adjoint());
}

double sinr_a(const Scenario &sc, const HermitianPsd &q, int k)
{
    const CMatrix m = jammed_interference(sc, q, k);
    const CVector h = sc.channels[static_cast<std::size_t>(k)] * sc.precoders[static_cast<std::size_t>(k)];
    return h.dot(m.llt().solve(h)).real();
}

double sinr_b(const Scenario &sc, const HermitianPsd &q, const CVector &v, int k)
{
    if (v.size() != sc.bs_antennas())
        throw DimensionError("sinr_b: filter length does not match N_B");
    if (v.squaredNorm() == 0.0)
        throw DomainError("sinr_b: zero filter");
    const CMatrix m = jammed_interference(sc, q, k);
    const CVector h = sc.channels[static_cast<std::size_t>(k)] * sc.precoders[static_cast<std::size_t>(k)];
    return std::norm(v.dot(h)) / v.dot(m * v).real();
}

double compute_eta(double jammer_power, int jammer_antennas, int jammer_paths, const CMatrix &jammer_gains)
{
    if (!(jammer_power >= 0.0) || jammer_antennas < 0 || jammer_paths < 0)
        throw DomainError("compute_eta: arguments must be nonnegative");
    return jammer_power * jammer_antennas * jammer_paths * jammer_gains.norm();
}

double sinr_lower_bound(const ReceiverKnowledge &kn, const CVector &v, int k, double eta)
{
    if (k < 0 || k >= kn.users())
        throw DomainError("sinr_lower_bound: user index out of range");
    if (v.squaredNorm() == 0.0)
        throw DomainError("sinr_lower_bound: zero filter");
    const CMatrix p = kn.effective_channels();
    const CMatrix b = interference_plus_noise(p, k, kn.noise_var);
    double denom = v.dot(b * v).real();
    if (!kn.jammer_aoa.empty())
        denom += eta * beampattern(v, jammer_manifold(kn.jammer_aoa, kn.bs));
    return std::norm(v.dot(p.col(k))) / denom;
}

ReceivedStatistics received_statistics(const Scenario &sc, const HermitianPsd &q)
{
    check_covariance(sc, q);
    ReceivedStatistics stats;
    stats.signatures = sc.effective_channels();
    stats.jamming = sc.jammer_channel * q.matrix() * sc.jammer_channel.adjoint();
    stats.jamming = 0.5 * (stats.jamming + stats.jamming.adjoint().eval());
    stats.noise_var = sc.noise_var;
    return stats;
}

RateReport rate_report(const Scenario &sc, const HermitianPsd &q, const FilterBank &filters)
{
    return rate_report(received_statistics(sc, q), filters);
}

RateReport rate_report(const ReceivedStatistics &stats, const FilterBank &filters)
{
    const auto users = static_cast<int>(stats.signatures.cols());
    if (static_cast<int>(filters.size()) != users)
        throw DimensionError("rate_report: need one filter per user");
    RateReport r;
    for (int k = 0; k < users; ++k) {
        const CMatrix m = interference_plus_noise(stats.signatures, k, stats.noise_var) + stats.jamming;
        const CVector h = stats.signatures.col(k);
        const CVector &v = filters[static_cast<std::size_t>(k)];
        if (v.size() != h.size())
            throw DimensionError("rate_report: filter length does not match N_B");
        if (v.squaredNorm() == 0.0)
            throw DomainError("rate_report: zero filter for user " + std::to_string(k));
        const double ga = h.dot(m.llt().solve(h)).real();
        const double gb = std::norm(v.dot(h)) / v.dot(m * v).real();
        r.sinr_a.push_back(ga);
        r.sinr_b.push_back(gb);
        r.rate_a.push_back(rate_bits(ga));
        r.rate_b.push_back(rate_bits(gb));
        r.sum_rate_a += r.rate_a.back();
        r.sum_rate_b += r.rate_b.back();
    }
    const double strongest = *std::max_element(r.rate_a.begin(), r.rate_a.end());
    if (r.sum_rate_a > users * strongest * (1.0 + 1e-12) + 1e-12)
        throw std::logic_error("rate_report: sum rate exceeds K times the strongest user rate");
    return r;
}

} // namespace antijam
