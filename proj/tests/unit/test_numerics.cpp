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

#include <catch_amalgamated.hpp>

#include "antijam/numerics.hpp"
#include "antijam_oracles/oracles.hpp"

using namespace antijam;
namespace orc = antijam::oracles;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

CMatrix diag(std::initializer_list<double> d)
{
    RVector v(static_cast<Eigen::Index>(d.size()));
    Eigen::Index i = 0;
    for (double x : d)
        v[i++] = x;
    return v.cast<cplx>().asDiagonal();
}

double unitarity_error(const CMatrix &u)
{
    return (u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols())).norm();
}

} // namespace

TEST_CASE("hermitian_eig on small fixed matrices", "[numerics]")
{
    SECTION("identity")
    {
        const auto e = hermitian_eig(CMatrix::Identity(3, 3));
        CHECK((e.values - RVector::Ones(3)).norm() < 1e-14);
        CHECK(unitarity_error(e.vectors) < 1e-12);
    }
    SECTION("diagonal")
    {
        const auto e = hermitian_eig(diag({2.0, 5.0}));
        CHECK_THAT(e.values[0], WithinAbs(2.0, 1e-14));
        CHECK_THAT(e.values[1], WithinAbs(5.0, 1e-14));
        CHECK(std::abs(e.vectors(0, 0)) == Catch::Approx(1.0));
        CHECK(std::abs(e.vectors(1, 1)) == Catch::Approx(1.0));
    }
    SECTION("non-square input")
    {
        CHECK_THROWS_AS(hermitian_eig(CMatrix::Zero(2, 3)), DimensionError);
    }
}

TEST_CASE("hermitian_eig recovers a matrix built from a known spectrum", "[numerics]")
{
    orc::Rng rng(11);
    const CMatrix u = orc::random_unitary(rng, 8);
    RVector lambda(8);
    lambda << -3.0, -1.0, 0.0, 0.5, 1.0, 2.0, 4.0, 9.0;
    const CMatrix m = u * lambda.cast<cplx>().asDiagonal() * u.adjoint();
    const auto e = hermitian_eig(m);
    CHECK((e.values - lambda).norm() < 1e-10);
    const CMatrix back = e.vectors * e.values.cast<cplx>().asDiagonal() * e.vectors.adjoint();
    CHECK((back - m).norm() / m.norm() < 1e-8);
}

TEST_CASE("hermitian_eig round trip on 100 random matrices", "[numerics][property]")
{
    orc::Rng rng(12);
    for (int t = 0; t < 100; ++t) {
        const Eigen::Index n = 1 + t % 32;
        const CMatrix m = orc::random_hermitian(rng, n);
        const auto e = hermitian_eig(m);
        const CMatrix back = e.vectors * e.values.cast<cplx>().asDiagonal() * e.vectors.adjoint();
        INFO("n = " << n);
        CHECK((back - m).norm() / m.norm() < 1e-8);
        CHECK(unitarity_error(e.vectors) < 1e-8);
        for (Eigen::Index i = 1; i < n; ++i)
            CHECK(e.values[i - 1] <= e.values[i]);
    }
}

TEST_CASE("hermitian_eig symmetrizes slightly non-Hermitian input", "[numerics]")
{
    CMatrix m = diag({1.0, 2.0});
    m(0, 1) = cplx(1e-12, 0.0);
    const auto e = hermitian_eig(m);
    CHECK(e.values.allFinite());
    CHECK_THAT(e.values[1], WithinAbs(2.0, 1e-10));
}

TEST_CASE("HermitianPsd validates its invariants", "[numerics]")
{
    CHECK_NOTHROW(HermitianPsd(diag({1.0, 0.0})));
    CHECK_THROWS_AS(HermitianPsd(diag({1.0, -1.0})), DomainError);
    CMatrix skew = diag({1.0, 1.0});
    skew(0, 1) = cplx(0.5, 0.0);
    CHECK_THROWS_AS(HermitianPsd(skew), DomainError);
    CHECK_THROWS_AS(HermitianPsd(CMatrix::Zero(2, 3)), DimensionError);
    CMatrix nan = diag({1.0, 1.0});
    nan(0, 0) = cplx(std::nan(""), 0.0);
    CHECK_THROWS_AS(HermitianPsd(nan), DomainError);

    // tiny negative eigenvalue within tolerance is accepted
    CHECK_NOTHROW(HermitianPsd(diag({1.0, -1e-10})));

    CHECK(HermitianPsd::zero(4).trace() == 0.0);
    CHECK_THAT(HermitianPsd::scaled_identity(4, 2.5).trace(), WithinAbs(10.0, 1e-14));
}

TEST_CASE("psd_project_trace examples", "[numerics]")
{
    SECTION("feasible point is unchanged")
    {
        const CMatrix m = diag({1.0, 2.0, 0.5});
        CHECK((psd_project_trace(m, 4.0).matrix() - m).norm() < 1e-12);
    }
    SECTION("negative eigenvalue is clipped")
    {
        CHECK((psd_project_trace(diag({-1.0, 3.0}), 10.0).matrix() - diag({0.0, 3.0})).norm() < 1e-12);
    }
    SECTION("trace cap splits evenly")
    {
        const RVector lambda = RVector::Constant(2, 4.0);
        const double tau = orc::water_level(lambda, 4.0);
        CHECK_THAT(tau, WithinAbs(2.0, 1e-9));
        CHECK((psd_project_trace(diag({4.0, 4.0}), 4.0).matrix() - diag({2.0, 2.0})).norm() < 1e-12);
    }
    SECTION("negative power")
    {
        CHECK_THROWS_AS(psd_project_trace(diag({1.0}), -1.0), DomainError);
    }
    SECTION("zero power")
    {
        CHECK(psd_project_trace(diag({1.0, 2.0}), 0.0).matrix().norm() == 0.0);
    }
}

TEST_CASE("psd_project_trace agrees with the bisection water level", "[numerics][oracle]")
{
    orc::Rng rng(13);
    for (int t = 0; t < 40; ++t) {
        const Eigen::Index n = 2 + t % 10;
        const CMatrix m = orc::random_hermitian(rng, n);
        const double cap = 0.25 * (1 + t % 8);
        const auto e = hermitian_eig(m);
        RVector want = e.values.cwiseMax(0.0);
        if (want.sum() > cap)
            want = (e.values.array() - orc::water_level(e.values, cap)).cwiseMax(0.0);
        const CMatrix ref = e.vectors * want.cast<cplx>().asDiagonal() * e.vectors.adjoint();
        CHECK((psd_project_trace(m, cap).matrix() - ref).norm() < 1e-9);
    }
}

TEST_CASE("psd_project_trace output is feasible and projection is idempotent", "[numerics][property]")
{
    orc::Rng rng(14);
    for (int t = 0; t < 50; ++t) {
        const CMatrix m = 3.0 * orc::random_hermitian(rng, 6);
        const double cap = 1.0 + t % 5;
        const HermitianPsd p = psd_project_trace(m, cap);
        const auto e = hermitian_eig(p.matrix());
        CHECK(e.values.minCoeff() >= -1e-9);
        CHECK(p.trace() <= cap + 1e-9);
        CHECK((psd_project_trace(p.matrix(), cap).matrix() - p.matrix()).norm() < 1e-9);
    }
}

TEST_CASE("psd_project_trace is non-expansive", "[numerics][property]")
{
    orc::Rng rng(15);
    for (int t = 0; t < 50; ++t) {
        const CMatrix a = orc::random_hermitian(rng, 5);
        const CMatrix b = orc::random_hermitian(rng, 5);
        const double lhs = (psd_project_trace(a, 2.0).matrix() - psd_project_trace(b, 2.0).matrix()).norm();
        CHECK(lhs <= (a - b).norm() + 1e-9);
    }
}

TEST_CASE("project_capped_simplex basic cases", "[numerics]")
{
    RVector x(3);
    x << 0.5, -1.0, 0.25;
    CHECK((project_capped_simplex(x, 1.0) - RVector{{0.5, 0.0, 0.25}}).norm() < 1e-15);
    x << 3.0, 1.0, 0.0;
    CHECK((project_capped_simplex(x, 2.0) - RVector{{2.0, 0.0, 0.0}}).norm() < 1e-12);
    x << 1.0, 1.0, 1.0;
    CHECK((project_capped_simplex(x, 1.5) - RVector::Constant(3, 0.5)).norm() < 1e-12);
}

TEST_CASE("trace_product and hermitian helpers", "[numerics]")
{
    orc::Rng rng(16);
    const CMatrix a = orc::random_hermitian(rng, 4);
    const CMatrix b = orc::random_hermitian(rng, 4);
    CHECK_THAT(trace_product(a, b), WithinRel((a * b).trace().real(), 1e-12));
    CHECK(is_hermitian(a));
    CHECK_FALSE(is_hermitian(orc::random_complex(rng, 4, 4)));
    CHECK(is_hermitian(hermitian_part(orc::random_complex(rng, 4, 4))));
    CHECK_THROWS_AS(hermitian_part(CMatrix::Zero(3, 2)), DimensionError);
}
