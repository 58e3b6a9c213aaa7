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

#include "antijam/channel.hpp"

#include <random>
#include <string>

#include "antijam/txrx.hpp"

namespace antijam {

void ArrayGeometry::validate() const
{
    if (elements < 1)
        throw ConfigError("ArrayGeometry: element count must be >= 1");
    if (!(spacing > 0.0))
        throw ConfigError("ArrayGeometry: spacing must be positive");
}

void PathSet::validate() const
{
    if (gains.empty())
        throw ConfigError("PathSet: at least one path is required");
    if (aoa.size() != gains.size() || aod.size() != gains.size())
        throw ConfigError("PathSet: gains, aoa and aod must have equal length");
    for (double a : aoa)
        if (!(std::abs(a) < pi / 2))
            throw ConfigError("PathSet: AoA outside (-90, 90) degrees");
    for (double a : aod)
        if (!(std::abs(a) < pi / 2))
            throw ConfigError("PathSet: AoD outside (-90, 90) degrees");
}

CVector steering(const ArrayGeometry &geometry, double theta)
{
    geometry.validate();
    if (!(std::abs(theta) <= pi / 2))
        throw DomainError("steering: angle " + std::to_string(theta) + " rad outside [-pi/2, pi/2]");
    CVector a(geometry.elements);
    const double phase_step = -2.0 * pi * geometry.spacing * std::sin(theta);
    a[0] = cplx(1.0, 0.0);
    for (int n = 1; n < geometry.elements; ++n)
        a[n] = std::polar(1.0, phase_step * n);
    return a;
}

CMatrix beamspace_channel(const PathSet &paths, const ArrayGeometry &rx, const ArrayGeometry &tx)
{
    paths.validate();
    CMatrix h = CMatrix::Zero(rx.elements, tx.elements);
    for (std::size_t l = 0; l < paths.size(); ++l)
        h += paths.gains[l] * steering(rx, paths.aoa[l]) * steering(tx, paths.aod[l]).adjoint();
    return h;
}

CMatrix jammer_manifold(const std::vector<double> &angles, const ArrayGeometry &rx)
{
    if (angles.empty())
        throw DomainError("jammer_manifold: empty angle list");
    CMatrix a(rx.elements, static_cast<Eigen::Index>(angles.size()));
    for (std::size_t l = 0; l < angles.size(); ++l)
        a.col(static_cast<Eigen::Index>(l)) = steering(rx, angles[l]);
    return a;
}

void ScenarioConfig::validate() const
{
    if (users < 1)
        throw ConfigError("scenario: users must be >= 1");
    if (bs_antennas < users + 1)
        throw ConfigError("scenario: bs_antennas (" + std::to_string(bs_antennas) + ") must be >= users + 1 (" +
                          std::to_string(users + 1) + ")");
    if (user_antennas < 1 || jammer_antennas < 1)
        throw ConfigError("scenario: antenna counts must be >= 1");
    if (user_paths < 1 || jammer_paths < 1)
        throw ConfigError("scenario: path counts must be >= 1");
    if (!(spacing > 0.0))
        throw ConfigError("scenario: spacing must be positive");
    if (static_cast<int>(user_aoa_deg.size()) != users)
        throw ConfigError("scenario: need one user AoA center per user (" + std::to_string(users) + "), got " +
                          std::to_string(user_aoa_deg.size()));
    if (!(angle_spread_deg >= 0.0))
        throw ConfigError("scenario: angle spread must be nonnegative");
    for (double c : user_aoa_deg)
        if (!(std::abs(c) + angle_spread_deg < 90.0))
            throw ConfigError("scenario: user AoA center plus spread leaves (-90, 90) degrees");
    if (!(std::abs(jammer_aoa_deg) + angle_spread_deg < 90.0))
        throw ConfigError("scenario: jammer AoA plus spread leaves (-90, 90) degrees");
    if (!std::isfinite(user_power_db) || !std::isfinite(jammer_power_db) || !std::isfinite(noise_db))
        throw ConfigError("scenario: powers must be finite");
}

CMatrix Scenario::effective_channels() const
{
    CMatrix p(bs.elements, users());
    for (int k = 0; k < users(); ++k)
        p.col(k) = channels[static_cast<std::size_t>(k)] * precoders[static_cast<std::size_t>(k)];
    return p;
}

void Scenario::validate() const
{
    const auto k = channels.size();
    if (k == 0)
        throw ConfigError("Scenario: no users");
    if (precoders.size() != k || user_power.size() != k)
        throw ConfigError("Scenario: per-user vectors have inconsistent length");
    if (bs.elements < static_cast<int>(k) + 1)
        throw ConfigError("Scenario: N_B must be >= K + 1");
    for (std::size_t i = 0; i < k; ++i) {
        if (channels[i].rows() != bs.elements || channels[i].cols() != precoders[i].size())
            throw ConfigError("Scenario: channel/precoder shape mismatch for user " + std::to_string(i));
        if (precoders[i].squaredNorm() > user_power[i] + 1e-9)
            throw ConfigError("Scenario: precoder exceeds power budget for user " + std::to_string(i));
    }
    if (jammer_channel.rows() != bs.elements || jammer_channel.cols() != jammer_array.elements)
        throw ConfigError("Scenario: jammer channel shape mismatch");
    if (!(noise_var > 0.0))
        throw ConfigError("Scenario: noise variance must be positive");
    if (!(jammer_power >= 0.0))
        throw ConfigError("Scenario: jammer power must be nonnegative");
    const CMatrix g = jammer_bs_manifold * jammer_gains * jammer_tx_manifold.adjoint();
    if ((g - jammer_channel).norm() > 1e-10 * std::max(1.0, jammer_channel.norm()))
        throw ConfigError("Scenario: G does not factor as A_B B_G A_J^H");
}

void set_jammer_paths(Scenario &sc, PathSet paths)
{
    paths.validate();
    const auto l = static_cast<Eigen::Index>(paths.size());
    sc.jammer_bs_manifold = jammer_manifold(paths.aoa, sc.bs);
    sc.jammer_tx_manifold = jammer_manifold(paths.aod, sc.jammer_array);
    sc.jammer_gains = CMatrix::Zero(l, l);
    for (Eigen::Index i = 0; i < l; ++i)
        sc.jammer_gains(i, i) = paths.gains[static_cast<std::size_t>(i)];
    sc.jammer_channel = sc.jammer_bs_manifold * sc.jammer_gains * sc.jammer_tx_manifold.adjoint();
    sc.jammer_paths = std::move(paths);
}

Scenario sample_scenario(const ScenarioConfig &cfg, std::uint64_t seed)
{
    cfg.validate();

    std::mt19937_64 rng(seed);
    // unit-variance circular complex Gaussian: re, im ~ N(0, 1/2)
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    std::uniform_real_distribution<double> spread(-cfg.angle_spread_deg, cfg.angle_spread_deg);

    auto draw_paths = [&](int count, double center_deg) {
        PathSet paths;
        for (int l = 0; l < count; ++l) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            paths.gains.emplace_back(re, im);
        }
        for (int l = 0; l < count; ++l)
            paths.aod.push_back(deg2rad(spread(rng)));
        for (int l = 0; l < count; ++l)
            paths.aoa.push_back(deg2rad(center_deg + spread(rng)));
        return paths;
    };

    Scenario sc;
    sc.seed = seed;
    sc.bs = {cfg.bs_antennas, cfg.spacing};
    sc.noise_var = db2lin(cfg.noise_db);
    sc.jammer_power = db2lin(cfg.jammer_power_db);
    sc.jammer_array = {cfg.jammer_antennas, cfg.spacing};

    // Users first, so legitimate links are independent of every jammer setting.
    for (int k = 0; k < cfg.users; ++k) {
        const ArrayGeometry tx{cfg.user_antennas, cfg.spacing};
        const double center = cfg.user_aoa_deg[static_cast<std::size_t>(k)];
        PathSet paths = draw_paths(cfg.user_paths, center);
        CMatrix h = beamspace_channel(paths, sc.bs, tx);
        const double power = db2lin(cfg.user_power_db);

        sc.user_arrays.push_back(tx);
        sc.user_paths.push_back(std::move(paths));
        sc.precoders.push_back(svd_precoder(h, power));
        sc.channels.push_back(std::move(h));
        sc.user_power.push_back(power);
        sc.user_aoa_centers.push_back(deg2rad(center));
    }

    set_jammer_paths(sc, draw_paths(cfg.jammer_paths, cfg.jammer_aoa_deg));
    return sc;
}

CMatrix ReceiverKnowledge::effective_channels() const
{
    CMatrix p(bs.elements, users());
    for (int k = 0; k < users(); ++k)
        p.col(k) = channels[static_cast<std::size_t>(k)] * precoders[static_cast<std::size_t>(k)];
    return p;
}

ReceiverKnowledge receiver_knowledge(const Scenario &sc)
{
    ReceiverKnowledge kn;
    kn.bs = sc.bs;
    kn.channels = sc.channels;
    kn.precoders = sc.precoders;
    kn.user_aoa_centers = sc.user_aoa_centers;
    kn.jammer_aoa = sc.jammer_paths.aoa;
    kn.noise_var = sc.noise_var;
    return kn;
}

} // namespace antijam
