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

#include "antijam/jammer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "antijam/covariance.hpp"
#include "antijam/metrics.hpp"

namespace antijam {

double jammer_objective(const HermitianPsd &q, const Scenario &sc)
{
    double best = 0.0;
    for (int k = 0; k < sc.users(); ++k)
        best = std::max(best, sinr_a(sc, q, k));
    return best;
}

namespace {

// The objective only sees Q through G Q G^H, so with U an orthonormal basis
// of the row space of G and Q = U S U^H nothing is lost: projecting any Q
// onto that subspace keeps G Q G^H and does not increase the trace. Each
// user's SINR is evaluated with the push-through identity
//
//   h^H (B + Gr S Gr^H)^{-1} h = s - c^H S (I + T S)^{-1} c,
//   Gr = G U,  s = h^H B^{-1} h,  c = Gr^H B^{-1} h,  T = Gr^H B^{-1} Gr,
//
// and its gradient in S is -d d^H with d = (I + T S)^{-1} c.
class ReducedObjective
{
public:
    ReducedObjective(const Scenario &sc, const CMatrix &reduced_channel)
    {
        const CMatrix p = sc.effective_channels();
        for (int k = 0; k < sc.users(); ++k) {
            const Eigen::LLT<CMatrix> bf(interference_plus_noise(p, k, sc.noise_var));
            const CVector f = bf.solve(p.col(k));
            const CMatrix bg = bf.solve(reduced_channel);
            s_.push_back(p.col(k).dot(f).real());
            c_.push_back(reduced_channel.adjoint() * f);
            CMatrix t = reduced_channel.adjoint() * bg;
            t_.push_back(0.5 * (t + t.adjoint()));
        }
    }

    struct Value
    {
        double objective = 0.0;
        int active = 0;
        CMatrix gradient;
    };

    Value evaluate(const CMatrix &s) const
    {
        const auto r = s.rows();
        Value out;
        out.objective = -1.0;
        CVector d_active;
        for (std::size_t k = 0; k < s_.size(); ++k) {
            const CMatrix lhs = CMatrix::Identity(r, r) + t_[k] * s;
            const CVector d = lhs.partialPivLu().solve(c_[k]);
            const double value = s_[k] - c_[k].dot(s * d).real();
            if (value > out.objective) { // strict: ties keep the lowest index
                out.objective = value;
                out.active = static_cast<int>(k);
                d_active = d;
            }
        }
        out.gradient = -(d_active * d_active.adjoint());
        return out;
    }

private:
    std::vector<double> s_;
    std::vector<CVector> c_;
    std::vector<CMatrix> t_;
};

} // namespace

JammerStrategy worst_case_covariance(const Scenario &sc, double power, const JammerOptions &options)
{
    if (!(power >= 0.0))
        throw DomainError("worst_case_covariance: jammer power must be nonnegative");
    const Eigen::Index nj = sc.jammer_antennas();
    if (sc.jammer_channel.cols() != nj)
        throw DimensionError("worst_case_covariance: jammer channel does not match N_J");

    JammerStrategy out;
    out.covariance = HermitianPsd::scaled_identity(nj, power / static_cast<double>(nj));
    out.uniform_objective = jammer_objective(out.covariance, sc);
    out.objective = out.uniform_objective;
    if (power == 0.0) {
        out.converged = true;
        return out;
    }

    // Row space of G from the eigenpairs of G G^H (N_B x N_B, cheap).
    const auto eig = hermitian_eig(sc.jammer_channel * sc.jammer_channel.adjoint());
    const double top = eig.values.maxCoeff();
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i)
        if (top > 0.0 && eig.values[i] > 1e-12 * top)
            keep.push_back(i);
    if (keep.empty()) {
        out.converged = true; // G = 0: every feasible Q is optimal
        return out;
    }
    const auto r = static_cast<Eigen::Index>(keep.size());
    CMatrix reduced_channel(sc.jammer_channel.rows(), r); // G U
    CMatrix basis(nj, r);                                 // U
    for (Eigen::Index j = 0; j < r; ++j) {
        const double sv = std::sqrt(eig.values[keep[static_cast<std::size_t>(j)]]);
        const CVector w = eig.vectors.col(keep[static_cast<std::size_t>(j)]);
        reduced_channel.col(j) = sv * w;
        basis.col(j) = sc.jammer_channel.adjoint() * w / sv;
    }

    const ReducedObjective f(sc, reduced_channel);
    CMatrix s = (power / static_cast<double>(nj)) * CMatrix::Identity(r, r);
    auto value = f.evaluate(s);

    double best = value.objective;
    CMatrix best_s = s;
    bool improved = false;
    const double grad_norm = value.gradient.norm();
    if (grad_norm == 0.0) {
        out.converged = true;
        return out;
    }
    const double alpha0 = power / grad_norm;

    std::vector<double> history;
    history.reserve(static_cast<std::size_t>(options.max_iterations) + 1);
    history.push_back(best);

    int t = 1;
    for (; t <= options.max_iterations; ++t) {
        const double step = alpha0 / std::sqrt(static_cast<double>(t));
        s = psd_project_trace(s - step * value.gradient, power).matrix();
        value = f.evaluate(s);
        if (value.objective < best) {
            best = value.objective;
            best_s = s;
            improved = true;
        }
        history.push_back(best);

        const auto w = static_cast<std::size_t>(options.stall_window);
        if (history.size() > w) {
            const double earlier = history[history.size() - 1 - w];
            if (earlier - best <= options.tolerance * std::abs(earlier)) {
                out.converged = true;
                break;
            }
        }
    }
    out.iterations = std::min(t, options.max_iterations);

    if (improved) {
        CMatrix q = basis * best_s * basis.adjoint();
        q = 0.5 * (q + q.adjoint().eval());
        const double tr = q.trace().real();
        if (tr > power)
            q *= power / tr;
        out.covariance = psd_project_trace(q, power);
        out.objective = jammer_objective(out.covariance, sc);
        if (out.objective > out.uniform_objective) {
            // rounding in the lift; keep the baseline
            out.covariance = HermitianPsd::scaled_identity(nj, power / static_cast<double>(nj));
            out.objective = out.uniform_objective;
        }
    }
    if (options.record_history)
        out.best_history = std::move(history);
    return out;
}

} // namespace antijam
