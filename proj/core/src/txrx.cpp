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

#include "antijam/txrx.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "antijam/covariance.hpp"

namespace antijam {

// ---- covariance helpers --------------------------------------------------

CMatrix signal_covariance(const CMatrix &signatures, int k)
{
    const CVector h = signatures.col(k);
    return h * h.adjoint();
}

CMatrix interference_plus_noise(const CMatrix &signatures, int k, double noise_var)
{
    const auto n = signatures.rows();
    CMatrix b = noise_var * CMatrix::Identity(n, n);
    for (Eigen::Index j = 0; j < signatures.cols(); ++j)
        if (j != k)
            b.noalias() += signatures.col(j) * signatures.col(j).adjoint();
    return b;
}

CMatrix manifold_gram(const CMatrix &manifold)
{
    return manifold * manifold.adjoint();
}

// ---- filter bank ---------------------------------------------------------

void FilterBank::validate() const
{
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (!v[k].allFinite())
            throw DomainError("FilterBank: non-finite filter for user " + std::to_string(k));
        if (v[k].squaredNorm() == 0.0)
            throw DomainError("FilterBank: zero filter for user " + std::to_string(k));
    }
}

QosTarget QosTarget::from_db(double db)
{
    return {db2lin(db)};
}

void normalize_phase(CVector &v)
{
    const double scale = v.cwiseAbs().maxCoeff();
    if (scale == 0.0)
        return;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double mag = std::abs(v[i]);
        if (mag > 1e-12 * scale) {
            v *= std::conj(v[i]) / mag;
            v[i] = cplx(mag, 0.0);
            return;
        }
    }
}

CVector svd_precoder(const CMatrix &H, double power)
{
    if (!(power >= 0.0))
        throw DomainError("svd_precoder: negative power");
    if (H.size() == 0 || H.norm() == 0.0)
        throw DegenerateError("svd_precoder: zero channel matrix");

    const auto eig = hermitian_eig(H.adjoint() * H);
    const auto n = eig.values.size();
    const double top = eig.values[n - 1];
    const double tie = 1e-12 * std::max(1.0, std::abs(top));
    Eigen::Index pick = n - 1;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (eig.values[i] >= top - tie) {
            pick = i;
            break;
        }
    }
    CVector w = eig.vectors.col(pick);
    w.normalize();
    normalize_phase(w);
    return std::sqrt(power) * w;
}

double beampattern(const CVector &v, const CMatrix &manifold)
{
    if (manifold.rows() != v.size())
        throw DimensionError("beampattern: filter length does not match array size");
    return (manifold.adjoint() * v).squaredNorm();
}

FilterBank analytic_receiver(const ReceiverKnowledge &kn, double eta)
{
    if (!(eta >= 0.0))
        throw DomainError("analytic_receiver: eta must be nonnegative");
    const CMatrix p = kn.effective_channels();
    const auto n = p.rows();
    CMatrix x = CMatrix::Zero(n, n);
    if (!kn.jammer_aoa.empty() && eta > 0.0)
        x = manifold_gram(jammer_manifold(kn.jammer_aoa, kn.bs));

    FilterBank bank;
    for (int k = 0; k < kn.users(); ++k) {
        const CMatrix r = interference_plus_noise(p, k, kn.noise_var) + eta * x;
        CVector v = r.llt().solve(p.col(k));
        normalize_phase(v);
        bank.v.push_back(std::move(v));
    }
    return bank;
}

FilterBank matched_filter_receiver(const ReceiverKnowledge &kn)
{
    const CMatrix p = kn.effective_channels();
    FilterBank bank;
    for (int k = 0; k < kn.users(); ++k) {
        CVector v = p.col(k);
        normalize_phase(v);
        bank.v.push_back(std::move(v));
    }
    return bank;
}

std::vector<double> pad_angles(const std::vector<double> &angles, const ArrayGeometry &bs,
                               const std::vector<double> &user_aoa_centers, const PaddingOptions &options)
{
    const int bs_antennas = bs.elements;
    if (static_cast<int>(angles.size()) >= bs_antennas)
        return angles;
    if (!(options.resolution_deg > 0.0) || !(options.exclusion_deg >= 0.0))
        throw DomainError("pad_angles: invalid grid options");

    std::vector<double> blocked;
    for (double a : angles)
        blocked.push_back(rad2deg(a));
    for (double a : user_aoa_centers)
        blocked.push_back(rad2deg(a));

    // grid over the open interval (-90, 90)
    std::vector<double> grid;
    const int steps = static_cast<int>(std::floor(180.0 / options.resolution_deg + 1e-9));
    for (int i = 1; i < steps; ++i) {
        const double g = -90.0 + i * options.resolution_deg;
        if (g >= 90.0)
            break;
        const bool near = std::any_of(blocked.begin(), blocked.end(), [&](double b) {
            return std::abs(g - b) <= options.exclusion_deg + 1e-12;
        });
        if (!near)
            grid.push_back(g);
    }

    const int need = bs_antennas - static_cast<int>(angles.size());
    if (static_cast<int>(grid.size()) < need)
        throw std::logic_error("pad_angles: padding grid exhausted");

    // Greedy pivoted Gram-Schmidt: each step takes the grid angle whose steering
    // vector has the largest component outside the span chosen so far.
    CMatrix residual(bs_antennas, static_cast<Eigen::Index>(grid.size()));
    for (std::size_t j = 0; j < grid.size(); ++j)
        residual.col(static_cast<Eigen::Index>(j)) = steering(bs, deg2rad(grid[j]));
    auto deflate = [&](CVector q) {
        const double norm = q.norm();
        if (!(norm > 1e-12 * std::sqrt(static_cast<double>(bs_antennas))))
            return;
        q /= norm;
        residual -= q * (q.adjoint() * residual);
    };
    {
        CMatrix basis(bs_antennas, 0);
        for (double a : angles) {
            CVector q = steering(bs, a);
            for (Eigen::Index c = 0; c < basis.cols(); ++c)
                q -= basis.col(c) * basis.col(c).dot(q);
            const double norm = q.norm();
            if (norm > 1e-12 * std::sqrt(static_cast<double>(bs_antennas))) {
                basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
                basis.col(basis.cols() - 1) = q / norm;
            }
        }
        for (Eigen::Index c = 0; c < basis.cols(); ++c)
            residual -= basis.col(c) * (basis.col(c).adjoint() * residual);
    }

    std::vector<bool> used(grid.size(), false);
    std::vector<double> out = angles;
    for (int i = 0; i < need; ++i) {
        std::size_t best = grid.size();
        double best_norm = -1.0;
        for (std::size_t j = 0; j < grid.size(); ++j) {
            if (used[j])
                continue;
            const double norm = residual.col(static_cast<Eigen::Index>(j)).norm();
            if (norm > best_norm) {
                best = j;
                best_norm = norm;
            }
        }
        used[best] = true;
        out.push_back(deg2rad(grid[best]));
        deflate(residual.col(static_cast<Eigen::Index>(best)));
    }
    return out;
}

ZfResult zf_receiver_detailed(const ReceiverKnowledge &kn, const std::vector<double> &padded_angles)
{
    const CMatrix p = kn.effective_channels();
    const auto n = p.rows();
    const auto users = p.cols();

    Eigen::SelfAdjointEigenSolver<CMatrix> gram(p.adjoint() * p, Eigen::EigenvaluesOnly);
    const double smax = gram.eigenvalues().maxCoeff();
    if (!(smax > 0.0) || gram.eigenvalues().minCoeff() <= 1e-20 * smax)
        throw DegenerateError("zf_receiver: user signatures are linearly dependent; resample the scenario");

    ZfResult result;
    CMatrix x = manifold_gram(jammer_manifold(padded_angles, kn.bs));
    Eigen::SelfAdjointEigenSolver<CMatrix> xe(x, Eigen::EigenvaluesOnly);
    const double xmax = xe.eigenvalues().maxCoeff();
    if (xe.eigenvalues().minCoeff() <= 1e-12 * xmax) {
        x += 1e-8 * x.trace().real() / static_cast<double>(n) * CMatrix::Identity(n, n);
        result.ridge_applied = true;
    }

    const Eigen::LLT<CMatrix> xf(x);
    const CMatrix y = xf.solve(p);          // X^{-1} P
    const CMatrix s = p.adjoint() * y;      // P^H X^{-1} P
    const CMatrix v = y * s.llt().solve(CMatrix::Identity(users, users));
    for (Eigen::Index k = 0; k < users; ++k)
        result.filters.v.push_back(v.col(k));
    return result;
}

FilterBank zf_receiver(const ReceiverKnowledge &kn, const std::vector<double> &padded_angles)
{
    return zf_receiver_detailed(kn, padded_angles).filters;
}

int MinSinrResult::fallback_count() const
{
    return static_cast<int>(std::count_if(users.begin(), users.end(), [](const auto &u) { return u.fallback; }));
}

MinSinrResult minsinr_receiver(const ReceiverKnowledge &kn, const std::vector<double> &padded_angles,
                               const QosTarget &qos, const SdpOptions &options)
{
    if (!(qos.gamma0 >= 0.0))
        throw DomainError("minsinr_receiver: gamma0 must be nonnegative");
    const CMatrix p = kn.effective_channels();
    const auto n = p.rows();
    const CMatrix x = manifold_gram(jammer_manifold(padded_angles, kn.bs));

    MinSinrResult result;
    FilterBank fallback; // built lazily
    for (int k = 0; k < kn.users(); ++k) {
        const CMatrix a = signal_covariance(p, k);
        const CMatrix b = interference_plus_noise(p, k, kn.noise_var);

        const std::vector<SdpConstraint> constraints{
            {a - qos.gamma0 * b, 0.0, ConstraintSense::greater_equal},
            {CMatrix::Identity(n, n), 1.0, ConstraintSense::equal},
        };
        const SdpSolution sol = solve_small_sdp(x, constraints, n, options);

        MinSinrUserReport report;
        report.sdp_status = sol.status;
        CVector v;
        if (sol.status == SdpStatus::optimal) {
            const auto eig = hermitian_eig(sol.x->matrix());
            v = eig.vectors.col(n - 1);
            v.normalize();
            normalize_phase(v);
            report.relaxed_objective = sol.dual_objective;
            report.recovered_objective = beampattern(v, jammer_manifold(padded_angles, kn.bs));
            report.achieved_sinr = (v.adjoint() * a * v)(0, 0).real() / (v.adjoint() * b * v)(0, 0).real();
            report.rank_warning = report.achieved_sinr < qos.gamma0 * (1.0 - 0.02);
        } else {
            if (fallback.size() == 0)
                fallback = analytic_receiver(kn, 1.0);
            v = fallback[static_cast<std::size_t>(k)];
            report.fallback = true;
            report.achieved_sinr = (v.adjoint() * a * v)(0, 0).real() / (v.adjoint() * b * v)(0, 0).real();
        }
        result.filters.v.push_back(std::move(v));
        result.users.push_back(report);
    }
    return result;
}

} // namespace antijam
