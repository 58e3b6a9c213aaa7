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

#include <algorithm>
#include <set>

#include "antijam/covariance.hpp"
#include "antijam/metrics.hpp"
#include "antijam/txrx.hpp"
#include "antijam_oracles/oracles.hpp"

using namespace antijam;
namespace orc = antijam::oracles;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// K = 1 knowledge whose effective channel is e_1.
ReceiverKnowledge single_user_knowledge(int n, double noise_var)
{
    ReceiverKnowledge kn;
    kn.bs = {n, 0.5};
    CMatrix h = CMatrix::Zero(n, 1);
    h(0, 0) = 1.0;
    kn.channels = {h};
    kn.precoders = {CVector::Ones(1)};
    kn.user_aoa_centers = {0.0};
    kn.jammer_aoa = {deg2rad(20.0)};
    kn.noise_var = noise_var;
    return kn;
}

std::vector<double> default_padding(const ReceiverKnowledge &kn)
{
    return pad_angles(kn.jammer_aoa, kn.bs, kn.user_aoa_centers);
}

} // namespace

TEST_CASE("svd_precoder examples", "[txrx]")
{
    SECTION("rank one channel")
    {
        orc::Rng rng(41);
        const CVector u = orc::random_vector(rng, 5).normalized();
        CMatrix h = CMatrix::Zero(5, 4);
        h.col(1) = 3.0 * u;
        const CVector w = svd_precoder(h, 2.0);
        CVector want = CVector::Zero(4);
        want[1] = std::sqrt(2.0);
        CHECK((w - want).norm() < 1e-12);
    }
    SECTION("identity ties resolve to the first basis vector")
    {
        const CVector w = svd_precoder(CMatrix::Identity(4, 4), 1.0);
        CHECK(std::abs(w[0] - cplx(1.0, 0.0)) < 1e-12);
        CHECK(w.tail(3).norm() < 1e-12);
    }
    SECTION("gain matches power iteration")
    {
        orc::Rng rng(42);
        for (int t = 0; t < 10; ++t) {
            const CMatrix h = orc::random_complex(rng, 16, 8);
            const CVector w = svd_precoder(h, 3.0);
            CHECK_THAT(w.squaredNorm(), WithinRel(3.0, 1e-12));
            CHECK_THAT((h * w).norm() / w.norm(), WithinRel(orc::power_iteration_top_singular(h), 1e-8));
            // phase convention
            CHECK(std::abs(w[0].imag()) < 1e-12);
            CHECK(w[0].real() > 0.0);
        }
    }
    SECTION("errors")
    {
        CHECK_THROWS_AS(svd_precoder(CMatrix::Zero(3, 2), 1.0), DegenerateError);
        CHECK_THROWS_AS(svd_precoder(CMatrix::Identity(2, 2), -1.0), DomainError);
    }
}

TEST_CASE("beampattern examples", "[txrx]")
{
    const ArrayGeometry bs{8, 0.5};
    const CMatrix a = jammer_manifold({0.0}, bs);
    CVector ortho = CVector::Zero(8);
    ortho[0] = 1.0;
    ortho[1] = -1.0;
    CHECK(beampattern(ortho, a) < 1e-24);
    CHECK_THAT(beampattern(a.col(0).normalized(), a), WithinRel(8.0, 1e-12));

    orc::Rng rng(43);
    const CMatrix m = jammer_manifold({-0.3, 0.1, 0.6}, bs);
    const CVector v = orc::random_vector(rng, 8);
    const CMatrix vv = v * v.adjoint();
    CHECK_THAT(beampattern(v, m), WithinRel((m.adjoint() * vv * m).trace().real(), 1e-10));
    CHECK_THROWS_AS(beampattern(CVector::Ones(4), m), DimensionError);
}

TEST_CASE("analytic receiver", "[txrx]")
{
    SECTION("single user, no jammer weight")
    {
        const auto kn = single_user_knowledge(4, 1.0);
        const FilterBank f = analytic_receiver(kn, 0.0);
        CVector e1 = CVector::Zero(4);
        e1[0] = 1.0;
        CHECK((f[0] - e1).norm() < 1e-14);
    }
    SECTION("maximizes the bound quotient")
    {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const Scenario sc = sample_scenario(ScenarioConfig{}, seed);
            const auto kn = receiver_knowledge(sc);
            const CMatrix p = kn.effective_channels();
            const CMatrix x = manifold_gram(jammer_manifold(kn.jammer_aoa, kn.bs));
            for (double eta : {0.0, 1.0, 50.0}) {
                const FilterBank f = analytic_receiver(kn, eta);
                for (int k = 0; k < sc.users(); ++k) {
                    const double want = orc::generalized_eig_max(
                        signal_covariance(p, k), interference_plus_noise(p, k, kn.noise_var) + eta * x);
                    CHECK_THAT(sinr_lower_bound(kn, f[static_cast<std::size_t>(k)], k, eta), WithinRel(want, 1e-6));
                }
            }
        }
    }
    SECTION("large eta nulls the jammer directions")
    {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const Scenario sc = sample_scenario(ScenarioConfig{}, seed);
            const auto kn = receiver_knowledge(sc);
            const CMatrix a = jammer_manifold(kn.jammer_aoa, kn.bs);
            const FilterBank f0 = analytic_receiver(kn, 0.0);
            const FilterBank f1 = analytic_receiver(kn, 1e6);
            for (int k = 0; k < sc.users(); ++k) {
                const auto i = static_cast<std::size_t>(k);
                const double b0 = beampattern(f0[i].normalized(), a);
                const double b1 = beampattern(f1[i].normalized(), a);
                CHECK(b1 < 1e-6 * b0);
            }
        }
    }
    SECTION("negative eta")
    {
        CHECK_THROWS_AS(analytic_receiver(single_user_knowledge(4, 1.0), -1.0), DomainError);
    }
}

TEST_CASE("matched filter baseline", "[txrx]")
{
    const Scenario sc = sample_scenario(ScenarioConfig{}, 2);
    const auto kn = receiver_knowledge(sc);
    const FilterBank f = matched_filter_receiver(kn);
    const CMatrix p = kn.effective_channels();
    for (int k = 0; k < sc.users(); ++k) {
        const CVector &v = f[static_cast<std::size_t>(k)];
        const cplx ratio = p.col(k).dot(v) / p.col(k).squaredNorm();
        CHECK_THAT(std::abs(ratio), WithinRel(1.0, 1e-12));
    }
}

TEST_CASE("angle padding", "[txrx]")
{
    const std::vector<double> jam{deg2rad(18.0), deg2rad(20.0), deg2rad(23.5)};
    const std::vector<double> users{deg2rad(-10.0), 0.0, deg2rad(10.0)};

    SECTION("nothing to pad")
    {
        std::vector<double> full(16);
        for (int i = 0; i < 16; ++i)
            full[static_cast<std::size_t>(i)] = deg2rad(-80.0 + 10.0 * i);
        CHECK(pad_angles(full, {16, 0.5}, users) == full);
    }
    SECTION("prefix, count, distinctness, exclusion")
    {
        const auto out = pad_angles(jam, {16, 0.5}, users);
        REQUIRE(out.size() == 16);
        CHECK(std::equal(jam.begin(), jam.end(), out.begin()));
        std::set<long> seen;
        for (double a : out)
            seen.insert(std::lround(rad2deg(a) * 1000.0));
        CHECK(seen.size() == 16);
        for (std::size_t i = 3; i < out.size(); ++i) {
            const double g = rad2deg(out[i]);
            CHECK(std::abs(g) < 90.0);
            CHECK(std::abs(g - std::round(g)) < 1e-9);
            for (double b : jam)
                CHECK(std::abs(g - rad2deg(b)) > 2.0);
            for (double b : users)
                CHECK(std::abs(g - rad2deg(b)) > 2.0);
        }
    }
    SECTION("padded manifold has full rank")
    {
        for (int n : {4, 8, 16, 32, 64}) {
            const auto out = pad_angles(jam, {n, 0.5}, users);
            const auto e = hermitian_eig(manifold_gram(jammer_manifold(out, {n, 0.5})));
            INFO("N_B = " << n);
            CHECK(std::sqrt(std::max(e.values[0], 0.0)) > 1e-6 * std::sqrt(e.values[n - 1]));
        }
    }
}

TEST_CASE("zero-forcing receiver", "[txrx]")
{
    SECTION("constraint residual and null-space oracle")
    {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const Scenario sc = sample_scenario(ScenarioConfig{}, seed);
            const auto kn = receiver_knowledge(sc);
            const auto padded = default_padding(kn);
            const ZfResult zf = zf_receiver_detailed(kn, padded);
            const CMatrix p = kn.effective_channels();
            const CMatrix a = jammer_manifold(padded, kn.bs);
            double total = 0.0;
            for (int k = 0; k < sc.users(); ++k) {
                const CVector &v = zf.filters[static_cast<std::size_t>(k)];
                CVector e = CVector::Zero(sc.users());
                e[k] = 1.0;
                CHECK((p.adjoint() * v - e).cwiseAbs().maxCoeff() < 1e-8);
                total += beampattern(v, a);
            }
            CHECK_THAT(total, WithinRel(orc::zf_nullspace_objective(manifold_gram(a), p), 1e-6));
        }
    }
    SECTION("isotropic metric gives the minimum-norm ZF filter")
    {
        // sin(theta) in {-1/2, 0, 1/2, 1} makes the 4-element steering vectors orthogonal, so X = 4 I
        auto kn = single_user_knowledge(4, 0.1);
        kn.channels[0] = CMatrix(4, 1);
        kn.channels[0] << cplx(1, 1), cplx(0, 2), cplx(-1, 0), cplx(0.5, -0.5);
        const std::vector<double> angles{-pi / 6, 0.0, pi / 6, pi / 2};
        const CMatrix x = manifold_gram(jammer_manifold(angles, kn.bs));
        REQUIRE((x - 4.0 * CMatrix::Identity(4, 4)).norm() < 1e-12);
        const CMatrix p = kn.effective_channels();
        const CVector want = p * (p.adjoint() * p).inverse();
        CHECK((zf_receiver(kn, angles)[0] - want.col(0)).norm() < 1e-12);
    }
    SECTION("order of the padded angles does not matter")
    {
        const Scenario sc = sample_scenario(ScenarioConfig{}, 6);
        const auto kn = receiver_knowledge(sc);
        auto padded = default_padding(kn);
        const FilterBank f = zf_receiver(kn, padded);
        orc::Rng rng(44);
        for (int t = 0; t < 5; ++t) {
            std::shuffle(padded.begin(), padded.end(), rng);
            const FilterBank g = zf_receiver(kn, padded);
            for (int k = 0; k < sc.users(); ++k)
                CHECK((f[static_cast<std::size_t>(k)] - g[static_cast<std::size_t>(k)]).norm() <
                      1e-8 * f[static_cast<std::size_t>(k)].norm());
        }
    }
    SECTION("rank-deficient user signatures")
    {
        Scenario sc = sample_scenario(ScenarioConfig{}, 7);
        sc.channels[1] = sc.channels[0];
        sc.precoders[1] = sc.precoders[0];
        const auto kn = receiver_knowledge(sc);
        CHECK_THROWS_AS(zf_receiver(kn, default_padding(kn)), DegenerateError);
    }
    SECTION("unpadded angles trigger the ridge")
    {
        const Scenario sc = sample_scenario(ScenarioConfig{}, 8);
        const auto kn = receiver_knowledge(sc);
        const ZfResult zf = zf_receiver_detailed(kn, kn.jammer_aoa);
        CHECK(zf.ridge_applied);
        zf.filters.validate();
        const ZfResult padded = zf_receiver_detailed(kn, default_padding(kn));
        CHECK_FALSE(padded.ridge_applied);

        // the ridge limit nulls the resolved AoAs outright and keeps the ZF constraint
        const CMatrix p = kn.effective_channels();
        const CMatrix a = jammer_manifold(kn.jammer_aoa, kn.bs);
        for (int k = 0; k < kn.users(); ++k) {
            const CVector &v = zf.filters[static_cast<std::size_t>(k)];
            const CVector e = CVector::Unit(kn.users(), k);
            CHECK((p.adjoint() * v - e).cwiseAbs().maxCoeff() < 1e-8);
            CHECK(beampattern(v, a) < 1e-6 * beampattern(padded.filters[static_cast<std::size_t>(k)], a));
        }
    }
}

TEST_CASE("min-SINR receiver", "[txrx]")
{
    SECTION("vacuous target gives the minimum-beampattern direction")
    {
        const Scenario sc = sample_scenario(ScenarioConfig{}, 9);
        const auto kn = receiver_knowledge(sc);
        const auto padded = default_padding(kn);
        const CMatrix a = jammer_manifold(padded, kn.bs);
        const double floor = hermitian_eig(manifold_gram(a)).values[0];
        const auto res = minsinr_receiver(kn, padded, QosTarget{0.0});
        for (int k = 0; k < sc.users(); ++k) {
            const auto i = static_cast<std::size_t>(k);
            CHECK_FALSE(res.users[i].fallback);
            CHECK_THAT(beampattern(res.filters[i], a), WithinAbs(floor, 1e-6));
        }
    }
    SECTION("unreachable target falls back to the analytic filter")
    {
        const Scenario sc = sample_scenario(ScenarioConfig{}, 10);
        const auto kn = receiver_knowledge(sc);
        const CMatrix p = kn.effective_channels();
        double gmax = 0.0;
        for (int k = 0; k < sc.users(); ++k)
            gmax = std::max(gmax, orc::generalized_eig_max(signal_covariance(p, k),
                                                           interference_plus_noise(p, k, kn.noise_var)));
        const auto res = minsinr_receiver(kn, default_padding(kn), QosTarget{2.0 * gmax});
        CHECK(res.fallback_count() == sc.users());
        const FilterBank ref = analytic_receiver(kn, 1.0);
        for (int k = 0; k < sc.users(); ++k) {
            const auto i = static_cast<std::size_t>(k);
            CHECK(res.users[i].sdp_status == SdpStatus::infeasible);
            CHECK(res.filters[i] == ref[i]);
        }
    }
    SECTION("relaxation gap on eight-antenna arrays")
    {
        ScenarioConfig cfg;
        cfg.bs_antennas = 8;
        const QosTarget qos = QosTarget::from_db(20.0);
        int solved = 0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const Scenario sc = sample_scenario(cfg, seed);
            const auto kn = receiver_knowledge(sc);
            const auto res = minsinr_receiver(kn, default_padding(kn), qos);
            for (const auto &u : res.users) {
                if (u.fallback)
                    continue;
                ++solved;
                CHECK(u.relaxed_objective <= u.recovered_objective * (1.0 + 1e-6) + 1e-9);
                CHECK(u.recovered_objective - u.relaxed_objective <= 0.05 * u.relaxed_objective + 1e-9);
                CHECK(u.achieved_sinr >= 0.98 * qos.gamma0);
                CHECK_FALSE(u.rank_warning);
            }
            for (const auto &v : res.filters.v) {
                CHECK(v.norm() > 0.5);
                CHECK_THAT(v.norm(), WithinRel(1.0, 1e-9));
            }
        }
        CHECK(solved > 0);
    }
    SECTION("negative target")
    {
        const Scenario sc = sample_scenario(ScenarioConfig{}, 1);
        const auto kn = receiver_knowledge(sc);
        CHECK_THROWS_AS(minsinr_receiver(kn, default_padding(kn), QosTarget{-1.0}), DomainError);
    }
}

TEST_CASE("filters depend only on receiver knowledge", "[txrx]")
{
    const Scenario sc = sample_scenario(ScenarioConfig{}, 12);
    Scenario other = sc;
    PathSet paths = sc.jammer_paths;
    for (auto &g : paths.gains)
        g *= cplx(0.3, 2.0);
    for (auto &a : paths.aod)
        a = -a + 0.1;
    other.jammer_array = {128, 0.5};
    other.jammer_power = 1e6;
    set_jammer_paths(other, paths);

    const auto ka = receiver_knowledge(sc);
    const auto kb = receiver_knowledge(other);
    const auto pa = default_padding(ka);
    const auto pb = default_padding(kb);
    CHECK(pa == pb);
    const auto check_same = [](const FilterBank &x, const FilterBank &y) {
        REQUIRE(x.size() == y.size());
        for (std::size_t k = 0; k < x.size(); ++k)
            CHECK(x[k] == y[k]);
    };
    check_same(analytic_receiver(ka, 1.0), analytic_receiver(kb, 1.0));
    check_same(zf_receiver(ka, pa), zf_receiver(kb, pb));
    check_same(minsinr_receiver(ka, pa, QosTarget::from_db(20.0)).filters,
               minsinr_receiver(kb, pb, QosTarget::from_db(20.0)).filters);
}

TEST_CASE("FilterBank validation", "[txrx]")
{
    FilterBank f;
    f.v.push_back(CVector::Ones(3));
    CHECK_NOTHROW(f.validate());
    f.v.push_back(CVector::Zero(3));
    CHECK_THROWS_AS(f.validate(), DomainError);
    f.v.back() = CVector::Constant(3, cplx(std::nan(""), 0.0));
    CHECK_THROWS_AS(f.validate(), DomainError);
}
