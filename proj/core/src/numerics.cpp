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

#include "antijam/numerics.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace antijam {

namespace {

void require_square(const CMatrix &M, const char *what)
{
    if (M.rows() != M.cols() || M.rows() == 0)
        throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                             std::to_string(M.rows()) + "x" + std::to_string(M.cols()));
}

bool all_finite(const CMatrix &M)
{
    return M.allFinite();
}

} // namespace

CMatrix hermitian_part(const CMatrix &M)
{
    require_square(M, "hermitian_part");
    return 0.5 * (M + M.adjoint());
}

bool is_hermitian(const CMatrix &M, double tol)
{
    if (M.rows() != M.cols())
        return false;
    const double scale = std::max(1.0, M.norm());
    return (M - M.adjoint()).norm() <= tol * scale;
}

double trace_product(const CMatrix &A, const CMatrix &B)
{
    if (A.cols() != B.rows() || A.rows() != B.cols())
        throw DimensionError("trace_product: incompatible shapes");
    // Re tr(AB) = Re sum_ij A_ij B_ji
    return (A.array() * B.transpose().array()).sum().real();
}

// ---- HermitianPsd -------------------------------------------------------

HermitianPsd::HermitianPsd(const CMatrix &M)
{
    require_square(M, "HermitianPsd");
    if (!all_finite(M))
        throw DomainError("HermitianPsd: non-finite entries");
    if (!is_hermitian(M))
        throw DomainError("HermitianPsd: matrix is not Hermitian");
    m_ = hermitian_part(M);
    const auto eig = hermitian_eig(m_);
    const double floor = -psd_tolerance * std::max(1.0, eig.values.maxCoeff());
    if (eig.values.minCoeff() < floor)
        throw DomainError("HermitianPsd: smallest eigenvalue " + std::to_string(eig.values.minCoeff()) +
                          " violates the PSD tolerance");
}

HermitianPsd HermitianPsd::zero(Eigen::Index dim)
{
    if (dim <= 0)
        throw DimensionError("HermitianPsd::zero: dimension must be positive");
    return HermitianPsd(CMatrix::Zero(dim, dim), Unchecked{});
}

HermitianPsd HermitianPsd::scaled_identity(Eigen::Index dim, double scale)
{
    if (dim <= 0)
        throw DimensionError("HermitianPsd::scaled_identity: dimension must be positive");
    if (!(scale >= 0.0))
        throw DomainError("HermitianPsd::scaled_identity: negative scale");
    return HermitianPsd(CMatrix::Identity(dim, dim) * scale, Unchecked{});
}

// ---- eigendecomposition -------------------------------------------------

EigenDecomposition hermitian_eig(const CMatrix &M)
{
    require_square(M, "hermitian_eig");
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(M), Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("hermitian_eig: eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

// ---- projections --------------------------------------------------------

RVector project_capped_simplex(const RVector &x, double cap)
{
    if (!(cap >= 0.0))
        throw DomainError("project_capped_simplex: cap must be nonnegative");
    RVector clipped = x.cwiseMax(0.0);
    if (clipped.sum() <= cap)
        return clipped;

    // Water level tau with sum(max(x - tau, 0)) = cap; tau > 0 here.
    std::vector<double> sorted(x.data(), x.data() + x.size());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double running = 0.0;
    double tau = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        running += sorted[i];
        const double candidate = (running - cap) / static_cast<double>(i + 1);
        if (i + 1 == sorted.size() || sorted[i + 1] <= candidate) {
            tau = candidate;
            break;
        }
    }
    RVector out = (x.array() - tau).cwiseMax(0.0);
    // Rounding can leave the sum a few ulps above the cap.
    const double total = out.sum();
    if (total > cap && total > 0.0)
        out *= cap / total;
    return out;
}

HermitianPsd psd_project_trace(const CMatrix &M, double power)
{
    if (!(power >= 0.0))
        throw DomainError("psd_project_trace: power must be nonnegative");
    require_square(M, "psd_project_trace");

    const auto eig = hermitian_eig(M);
    const RVector lambda = project_capped_simplex(eig.values, power);
    CMatrix Q = eig.vectors * lambda.cast<cplx>().asDiagonal() * eig.vectors.adjoint();
    Q = 0.5 * (Q + Q.adjoint().eval());

    // The reconstruction may overshoot the cap by rounding; rescale exactly.
    const double tr = Q.trace().real();
    if (tr > power && tr > 0.0)
        Q *= power / tr;
    return HermitianPsd(std::move(Q), HermitianPsd::Unchecked{});
}

} // namespace antijam
