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

#include <optional>
#include <vector>

#include "antijam/types.hpp"

namespace antijam {

/// Relative tolerance for the Hermitian check, ||M - M^H||_F <= tol * max(1, ||M||_F).
inline constexpr double hermitian_tolerance = 1e-10;

/// Relative tolerance for the PSD check, lambda_min >= -tol * max(1, lambda_max).
inline constexpr double psd_tolerance = 1e-8;

/// Returns (M + M^H) / 2. Throws DimensionError for non-square input.
CMatrix hermitian_part(const CMatrix &M);

bool is_hermitian(const CMatrix &M, double tol = hermitian_tolerance);

/// Real part of tr(A B), i.e. the Frobenius inner product <A^H, B>.
double trace_product(const CMatrix &A, const CMatrix &B);

/// Hermitian positive semidefinite matrix.
///
/// Construction validates the Hermitian and PSD tolerances and stores the
/// exactly symmetrized matrix; the dimension is fixed afterwards.
class HermitianPsd
{
public:
    explicit HermitianPsd(const CMatrix &M);

    static HermitianPsd zero(Eigen::Index dim);
    static HermitianPsd scaled_identity(Eigen::Index dim, double scale);

    const CMatrix &matrix() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }
    double trace() const { return m_.trace().real(); }

private:
    struct Unchecked {};
    HermitianPsd(CMatrix M, Unchecked) : m_(std::move(M)) {}

    CMatrix m_;

    friend HermitianPsd psd_project_trace(const CMatrix &M, double power);
};

struct EigenDecomposition
{
    RVector values;  // ascending
    CMatrix vectors; // unitary, column i pairs with values[i]
};

/// Eigendecomposition of a Hermitian matrix. The input is symmetrized first.
/// Throws DimensionError for non-square input.
EigenDecomposition hermitian_eig(const CMatrix &M);

/// Euclidean projection of a real vector onto {x >= 0, sum(x) <= cap}.
RVector project_capped_simplex(const RVector &x, double cap);

/// Frobenius-nearest point of {Q >= 0, tr Q <= power}.
/// Throws DomainError if power < 0.
HermitianPsd psd_project_trace(const CMatrix &M, double power);

// ---- small dense semidefinite programs ----------------------------------

enum class ConstraintSense
{
    greater_equal,
    equal,
};

/// One linear constraint Re tr(A X) {>=, =} b.
struct SdpConstraint
{
    CMatrix a;
    double b = 0.0;
    ConstraintSense sense = ConstraintSense::equal;
};

enum class SdpStatus
{
    optimal,
    infeasible,        // a Farkas certificate was found and verified
    numerical_failure, // iteration limit or breakdown without a certificate
};

const char *to_string(SdpStatus status);

struct SdpOptions
{
    int max_iterations = 100;
    double tolerance = 1e-9;        // target for gap and residuals
    double accept_tolerance = 1e-6; // contract: what still counts as solved
};

struct SdpSolution
{
    SdpStatus status = SdpStatus::numerical_failure;
    std::optional<HermitianPsd> x; // set iff status == optimal
    RVector dual;                  // multipliers y, one per constraint
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    double relative_gap = 0.0;
    double primal_residual = 0.0; // relative
    double dual_residual = 0.0;   // relative
    int iterations = 0;
};

/// Solves   min Re tr(C X)  s.t.  Re tr(A_i X) {>=, =} b_i,  X >= 0
/// with a primal-dual interior point method (HKM direction, Mehrotra
/// predictor-corrector, infeasible start). Intended for dim <= 64.
///
/// Infeasibility is reported only with a verified certificate y:
/// sum_i y_i A_i <= 0, y_i >= 0 on inequality rows and b^T y > 0.
///
/// Throws DimensionError on shape mismatch or dim > 64.
SdpSolution solve_small_sdp(const CMatrix &C,
                            const std::vector<SdpConstraint> &constraints,
                            Eigen::Index dim,
                            const SdpOptions &options = {});

} // namespace antijam
