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
//
// Infeasible-start primal-dual path following for
//
//     min  Re tr(C X)   s.t.  Re tr(A_i X) - s_i = b_i  (inequality rows)
//                             Re tr(A_i X)       = b_i  (equality rows)
//          X >= 0, s >= 0
//
// The slacks form a nonnegative-orthant block next to the Hermitian block.
// Search direction is HKM (dX = R_c - Z^{-1} dZ X, symmetrized) with a
// Mehrotra predictor-corrector. Data is row-normalized before solving.

#include "antijam/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace antijam {

const char *to_string(SdpStatus status)
{
    switch (status) {
    case SdpStatus::optimal:
        return "optimal";
    case SdpStatus::infeasible:
        return "infeasible";
    case SdpStatus::numerical_failure:
        return "numerical_failure";
    }
    return "unknown";
}

namespace {

constexpr Eigen::Index max_sdp_dim = 64;
constexpr double step_fraction = 0.98;
constexpr double certificate_tolerance = 1e-7;
constexpr double dependence_tolerance = 1e-10;

struct Problem
{
    Eigen::Index n = 0;
    CMatrix c;
    std::vector<CMatrix> a;
    RVector b;
    std::vector<int> slack_of_row; // -1 for equality rows
    std::vector<int> row_of_slack;
    std::vector<double> row_scale;
    double cost_scale = 1.0;

    Eigen::Index m() const { return static_cast<Eigen::Index>(a.size()); }
    Eigen::Index p() const { return static_cast<Eigen::Index>(row_of_slack.size()); }
};

struct Iterate
{
    CMatrix x;
    RVector xs;
    RVector y;
    CMatrix z;
    RVector zs;
};

struct Direction
{
    CMatrix dx;
    RVector dxs;
    RVector dy;
    CMatrix dz;
    RVector dzs;
};

CMatrix adjoint_op(const Problem &pb, const RVector &y)
{
    CMatrix out = CMatrix::Zero(pb.n, pb.n);
    for (Eigen::Index i = 0; i < pb.m(); ++i)
        out += y[i] * pb.a[static_cast<std::size_t>(i)];
    return out;
}

// Slack part of the adjoint: coefficient of s_j in row i(j) is -1.
RVector adjoint_op_slack(const Problem &pb, const RVector &y)
{
    RVector out(pb.p());
    for (Eigen::Index j = 0; j < pb.p(); ++j)
        out[j] = -y[pb.row_of_slack[static_cast<std::size_t>(j)]];
    return out;
}

RVector forward_op(const Problem &pb, const CMatrix &x, const RVector &xs)
{
    RVector out(pb.m());
    for (Eigen::Index i = 0; i < pb.m(); ++i) {
        out[i] = trace_product(pb.a[static_cast<std::size_t>(i)], x);
        const int j = pb.slack_of_row[static_cast<std::size_t>(i)];
        if (j >= 0)
            out[i] -= xs[j];
    }
    return out;
}

// Largest alpha with M + alpha D >= 0 (infinity if D keeps M PSD).
double max_step_psd(const CMatrix &m, const CMatrix &d)
{
    Eigen::LLT<CMatrix> llt(m);
    if (llt.info() != Eigen::Success)
        return 0.0;
    const CMatrix l_inv_d = llt.matrixL().solve(d);
    const CMatrix w = llt.matrixL().solve(l_inv_d.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (w + w.adjoint()), Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    if (lmin >= 0.0)
        return std::numeric_limits<double>::infinity();
    return -1.0 / lmin;
}

double max_step_orthant(const RVector &v, const RVector &dv)
{
    double alpha = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (dv[i] < 0.0)
            alpha = std::min(alpha, -v[i] / dv[i]);
    return alpha;
}

double complementarity(const Iterate &it)
{
    return trace_product(it.x, it.z) + it.xs.dot(it.zs);
}

bool has_certificate(const Problem &pb, const RVector &y)
{
    const double by = pb.b.dot(y);
    if (!(by > 0.0) || !std::isfinite(by))
        return false;
    const RVector yn = y / by;
    for (Eigen::Index j = 0; j < pb.p(); ++j)
        if (yn[pb.row_of_slack[static_cast<std::size_t>(j)]] < -certificate_tolerance)
            return false;
    const CMatrix s = -adjoint_op(pb, yn);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (s + s.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -certificate_tolerance;
}

class HkmSystem
{
public:
    HkmSystem(const Problem &pb, const Iterate &it) : pb_(pb), it_(it)
    {
        z_inv_ = it.z.llt().solve(CMatrix::Identity(pb.n, pb.n));
        z_inv_ = 0.5 * (z_inv_ + z_inv_.adjoint().eval());
        ratio_ = it.xs.cwiseQuotient(it.zs);

        const Eigen::Index m = pb.m();
        Eigen::MatrixXd schur = Eigen::MatrixXd::Zero(m, m);
        std::vector<CMatrix> zax(static_cast<std::size_t>(m));
        for (Eigen::Index j = 0; j < m; ++j)
            zax[static_cast<std::size_t>(j)] = z_inv_ * pb.a[static_cast<std::size_t>(j)] * it.x;
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = 0; j < m; ++j)
                schur(i, j) = trace_product(pb.a[static_cast<std::size_t>(i)], zax[static_cast<std::size_t>(j)]);
        for (Eigen::Index j = 0; j < pb.p(); ++j) {
            const auto i = pb.row_of_slack[static_cast<std::size_t>(j)];
            schur(i, i) += ratio_[j];
        }
        schur = 0.5 * (schur + schur.transpose().eval());
        factor_.compute(schur);
        ok_ = factor_.info() == Eigen::Success;
    }

    bool ok() const { return ok_; }
    const CMatrix &z_inv() const { return z_inv_; }

    // Solves for the direction given the centering targets (rc, rcs).
    Direction solve(const RVector &rp, const CMatrix &rd, const RVector &rds,
                    const CMatrix &rc, const RVector &rcs) const
    {
        const CMatrix t = rc - z_inv_ * rd * it_.x;
        const RVector ts = rcs - ratio_.cwiseProduct(rds);
        const RVector rhs = rp - forward_op(pb_, t, ts);

        Direction d;
        d.dy = factor_.solve(rhs);
        d.dz = rd - adjoint_op(pb_, d.dy);
        d.dzs = rds - adjoint_op_slack(pb_, d.dy);
        d.dx = rc - z_inv_ * d.dz * it_.x;
        d.dx = 0.5 * (d.dx + d.dx.adjoint().eval());
        d.dxs = rcs - ratio_.cwiseProduct(d.dzs);
        return d;
    }

private:
    const Problem &pb_;
    const Iterate &it_;
    CMatrix z_inv_;
    RVector ratio_;
    Eigen::LDLT<Eigen::MatrixXd> factor_;
    bool ok_ = false;
};

} // namespace

SdpSolution solve_small_sdp(const CMatrix &C, const std::vector<SdpConstraint> &constraints, Eigen::Index dim,
                            const SdpOptions &options)
{
    if (dim <= 0 || dim > max_sdp_dim)
        throw DimensionError("solve_small_sdp: dimension must be in [1, 64], got " + std::to_string(dim));
    if (C.rows() != dim || C.cols() != dim)
        throw DimensionError("solve_small_sdp: cost matrix does not match dimension");
    for (const auto &con : constraints)
        if (con.a.rows() != dim || con.a.cols() != dim)
            throw DimensionError("solve_small_sdp: constraint matrix does not match dimension");

    SdpSolution result;
    const Eigen::Index n = dim;

    // ---- normalize --------------------------------------------------------
    Problem pb;
    pb.n = n;
    pb.c = hermitian_part(C);
    pb.cost_scale = pb.c.norm() > 0.0 ? pb.c.norm() : 1.0;
    pb.c /= pb.cost_scale;

    std::vector<int> kept_rows; // original index of each kept row
    // Kept equality rows as real vectors, for the dependence check.
    Eigen::MatrixXd eq_basis(2 * n * n, 0);
    RVector eq_b(0);
    std::vector<int> eq_rows;
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        const auto &con = constraints[i];
        CMatrix a = hermitian_part(con.a);
        const double scale = a.norm();
        if (scale == 0.0) {
            // 0 {>=,=} b: either vacuous or trivially infeasible.
            const bool violated = con.sense == ConstraintSense::equal ? con.b != 0.0 : con.b > 0.0;
            if (violated) {
                result.status = SdpStatus::infeasible;
                result.dual = RVector::Zero(static_cast<Eigen::Index>(constraints.size()));
                result.dual[static_cast<Eigen::Index>(i)] = con.b > 0.0 ? 1.0 : -1.0;
                return result;
            }
            continue;
        }
        a /= scale;
        if (con.sense == ConstraintSense::equal) {
            const Eigen::VectorXd va = (Eigen::VectorXd(2 * n * n) << a.real().reshaped(), a.imag().reshaped()).finished();
            const double bi = con.b / scale;
            if (eq_basis.cols() > 0) {
                const RVector coef = eq_basis.colPivHouseholderQr().solve(va);
                if ((eq_basis * coef - va).norm() < dependence_tolerance) {
                    // A dependent row is redundant if consistent, else a Farkas certificate.
                    const double mismatch = bi - coef.dot(eq_b);
                    if (std::abs(mismatch) <= certificate_tolerance * (1.0 + std::abs(bi)))
                        continue;
                    result.status = SdpStatus::infeasible;
                    result.dual = RVector::Zero(static_cast<Eigen::Index>(constraints.size()));
                    const double sign = mismatch > 0.0 ? 1.0 : -1.0;
                    result.dual[static_cast<Eigen::Index>(i)] = sign / scale;
                    for (Eigen::Index j = 0; j < coef.size(); ++j) {
                        const auto row = static_cast<std::size_t>(eq_rows[static_cast<std::size_t>(j)]);
                        result.dual[static_cast<Eigen::Index>(row)] =
                            -sign * coef[j] / hermitian_part(constraints[row].a).norm();
                    }
                    return result;
                }
            }
            eq_basis.conservativeResize(Eigen::NoChange, eq_basis.cols() + 1);
            eq_basis.col(eq_basis.cols() - 1) = va;
            eq_b.conservativeResize(eq_b.size() + 1);
            eq_b[eq_b.size() - 1] = bi;
            eq_rows.push_back(static_cast<int>(i));
        }
        pb.a.push_back(a);
        pb.row_scale.push_back(scale);
        kept_rows.push_back(static_cast<int>(i));
        if (con.sense == ConstraintSense::greater_equal) {
            pb.slack_of_row.push_back(static_cast<int>(pb.row_of_slack.size()));
            pb.row_of_slack.push_back(static_cast<int>(pb.a.size() - 1));
        } else {
            pb.slack_of_row.push_back(-1);
        }
    }
    const Eigen::Index m = pb.m();
    const Eigen::Index p = pb.p();
    pb.b.resize(m);
    for (Eigen::Index i = 0; i < m; ++i)
        pb.b[i] = constraints[static_cast<std::size_t>(kept_rows[static_cast<std::size_t>(i)])].b /
                  pb.row_scale[static_cast<std::size_t>(i)];

    // ---- starting point ---------------------------------------------------
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    double xi = std::max(10.0, sqrt_n);
    for (Eigen::Index i = 0; i < m; ++i)
        xi = std::max(xi, static_cast<double>(n) * (1.0 + std::abs(pb.b[i])) / 2.0);
    const double zeta = std::max({10.0, sqrt_n, 1.0 + pb.c.norm()});

    Iterate it;
    it.x = xi * CMatrix::Identity(n, n);
    it.xs = RVector::Constant(p, xi);
    it.y = RVector::Zero(m);
    it.z = zeta * CMatrix::Identity(n, n);
    it.zs = RVector::Constant(p, zeta);

    const double nu = static_cast<double>(n + p);
    const double b_norm = pb.b.norm();
    const double c_norm = pb.c.norm();

    auto finish = [&](SdpStatus status) {
        result.status = status;
        result.dual = RVector::Zero(static_cast<Eigen::Index>(constraints.size()));
        for (Eigen::Index i = 0; i < m; ++i)
            result.dual[kept_rows[static_cast<std::size_t>(i)]] =
                it.y[i] * pb.cost_scale / pb.row_scale[static_cast<std::size_t>(i)];
        if (status == SdpStatus::optimal) {
            CMatrix x = 0.5 * (it.x + it.x.adjoint());
            result.x.emplace(x);
            result.primal_objective = trace_product(hermitian_part(C), x);
            result.dual_objective = pb.b.dot(it.y) * pb.cost_scale;
        }
        return result;
    };

    for (int iter = 0; iter < options.max_iterations; ++iter) {
        result.iterations = iter;
        const RVector rp = pb.b - forward_op(pb, it.x, it.xs);
        CMatrix rd = pb.c - adjoint_op(pb, it.y) - it.z;
        rd = 0.5 * (rd + rd.adjoint().eval());
        const RVector rds = -adjoint_op_slack(pb, it.y) - it.zs;

        const double pobj = trace_product(pb.c, it.x);
        const double dobj = pb.b.dot(it.y);
        result.relative_gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
        result.primal_residual = rp.norm() / (1.0 + b_norm);
        result.dual_residual = std::sqrt(rd.squaredNorm() + rds.squaredNorm()) / (1.0 + c_norm);

        if (!std::isfinite(result.relative_gap) || !std::isfinite(result.primal_residual) ||
            !std::isfinite(result.dual_residual))
            return finish(SdpStatus::numerical_failure);

        if (result.relative_gap < options.tolerance && result.primal_residual < options.tolerance &&
            result.dual_residual < options.tolerance)
            return finish(SdpStatus::optimal);

        if (has_certificate(pb, it.y))
            return finish(SdpStatus::infeasible);

        const double mu = complementarity(it) / nu;
        HkmSystem sys(pb, it);
        if (!sys.ok() || !sys.z_inv().allFinite())
            break;

        // predictor
        const Direction aff = sys.solve(rp, rd, rds, -it.x, -it.xs);
        const double ap_aff = std::min({1.0, max_step_psd(it.x, aff.dx), max_step_orthant(it.xs, aff.dxs)});
        const double ad_aff = std::min({1.0, max_step_psd(it.z, aff.dz), max_step_orthant(it.zs, aff.dzs)});
        const double mu_aff = (trace_product(it.x + ap_aff * aff.dx, it.z + ad_aff * aff.dz) +
                               (it.xs + ap_aff * aff.dxs).dot(it.zs + ad_aff * aff.dzs)) /
                              nu;
        const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

        // corrector
        const CMatrix rc = sigma * mu * sys.z_inv() - it.x - sys.z_inv() * aff.dz * aff.dx;
        const RVector rcs = (sigma * mu * it.zs.cwiseInverse() - it.xs -
                             aff.dzs.cwiseProduct(aff.dxs).cwiseQuotient(it.zs))
                                .eval();
        const Direction dir = sys.solve(rp, rd, rds, rc, rcs);

        const double ap = std::min(
            {1.0, step_fraction * max_step_psd(it.x, dir.dx), step_fraction * max_step_orthant(it.xs, dir.dxs)});
        const double ad = std::min(
            {1.0, step_fraction * max_step_psd(it.z, dir.dz), step_fraction * max_step_orthant(it.zs, dir.dzs)});
        if (!(ap > 1e-14) && !(ad > 1e-14))
            break;

        it.x += ap * dir.dx;
        it.x = 0.5 * (it.x + it.x.adjoint().eval());
        it.xs += ap * dir.dxs;
        it.y += ad * dir.dy;
        it.z += ad * dir.dz;
        it.z = 0.5 * (it.z + it.z.adjoint().eval());
        it.zs += ad * dir.dzs;
    }

    // Out of iterations: accept if the contract tolerance is met.
    if (result.relative_gap < options.accept_tolerance && result.primal_residual < options.accept_tolerance &&
        result.dual_residual < options.accept_tolerance)
        return finish(SdpStatus::optimal);
    if (has_certificate(pb, it.y))
        return finish(SdpStatus::infeasible);
    return finish(SdpStatus::numerical_failure);
}

} // namespace antijam
