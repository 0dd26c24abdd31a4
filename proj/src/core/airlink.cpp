// SPDX-License-Identifier: Apache-2.0
//
// stripesim: simulator for daisy-chained sub-THz radio stripes
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

#include "core/airlink.hpp"

#include "core/rfchain.hpp"

#include <stdexcept>

namespace stripesim {

namespace {

constexpr double kElementFloorDb = -40.0;
// Normalised |AF|^2 floor; keeps exact nulls finite.
constexpr double kArrayFactorFloor = 1e-10;
constexpr double kTieToleranceDb = 1e-9;

double element_factor_db(double rolloff, double cos_theta)
{
    if (cos_theta <= 0.0)
        return kElementFloorDb;
    return std::max(rolloff * 10.0 * std::log10(cos_theta), kElementFloorDb);
}

// |sum_{m<n} exp(j m psi)|^2 via the Dirichlet kernel.
double linear_af_power(int n, double psi)
{
    const double half = std::sin(0.5 * psi);
    if (std::abs(half) < 1e-12)
        return static_cast<double>(n) * n;
    const double r = std::sin(0.5 * n * psi) / half;
    return r * r;
}

double directivity(double q)
{
    // 4 pi / integral of the power pattern; Simpson over theta in [0, pi].
    constexpr int n = 20000;
    const double floor_lin = db_to_linear(kElementFloorDb);
    const double h = kPi / n;
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double t = i * h;
        const double c = std::cos(t);
        const double p = std::max(c > 0.0 ? std::pow(c, q) : 0.0, floor_lin) * std::sin(t);
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * p;
    }
    const double integral = 2.0 * kPi * acc * h / 3.0;
    return 4.0 * kPi / integral;
}

} // namespace

double wavelength_m(double f_hz)
{
    if (!(f_hz > 0.0))
        throw std::invalid_argument("frequency must be > 0 Hz");
    return kSpeedOfLight / f_hz;
}

double fspl_db(double f_hz, double d_m)
{
    if (!(d_m > 0.0))
        throw std::invalid_argument("distance must be > 0 m");
    return 20.0 * std::log10(4.0 * kPi * d_m / wavelength_m(f_hz));
}

double array_gain_dbi(const AntennaSpec &spec)
{
    return spec.element_gain_dbi + 10.0 * std::log10(static_cast<double>(spec.n_x) * spec.n_y);
}

double hpbw_deg(int n_elems_axis)
{
    if (n_elems_axis < 2)
        throw std::invalid_argument("HPBW estimate needs at least 2 elements");
    return 0.886 * 2.0 / n_elems_axis * 180.0 / kPi;
}

double element_rolloff_for_gain(double element_gain_dbi)
{
    const double target = db_to_linear(element_gain_dbi);
    double lo = 0.0;
    double hi = 64.0;
    if (directivity(lo) > target || directivity(hi) < target)
        throw std::invalid_argument("element gain outside the range of the cos^q model");
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (directivity(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double array_factor_power(const AntennaSpec &spec, const Vec3 &steer_dir, const Vec3 &obs_dir)
{
    const Vec3 steer = spec.steering == Steering::FixedBroadside ? Vec3{0.0, 0.0, 1.0} : steer_dir;
    return linear_af_power(spec.n_x, kPi * (obs_dir.x - steer.x)) *
           linear_af_power(spec.n_y, kPi * (obs_dir.y - steer.y));
}

double pattern_gain_db(const AntennaSpec &spec, const Vec3 &steer_dir, const Vec3 &obs_dir)
{
    const double n = static_cast<double>(spec.n_x) * spec.n_y;
    const double af_norm = std::max(array_factor_power(spec, steer_dir, obs_dir) / (n * n), kArrayFactorFloor);
    return spec.element_gain_dbi + element_factor_db(spec.element_rolloff, obs_dir.z) + 10.0 * std::log10(n) +
           10.0 * std::log10(af_norm);
}

double blockage_loss_db(const Vec3 &tx, const Vec3 &rx, std::span<const Blocker> blockers)
{
    double loss = 0.0;
    for (const auto &b : blockers)
        if (point_segment_distance(b.center, tx, rx) < b.radius_m)
            loss += b.penetration_loss_db;
    return loss;
}

Vec3 to_downward_frame(const Vec3 &v) { return {v.x, -v.y, -v.z}; }

Transmitter ru_transmitter(const ScenarioConfig &cfg, int ru_index)
{
    const auto positions = ru_positions(cfg.stripe);
    if (ru_index < 0 || ru_index >= static_cast<int>(positions.size()))
        throw std::out_of_range("RU index out of range");
    return {ru_index, positions[ru_index], cfg.rus.at(ru_index).tx_array, std::nullopt};
}

Transmitter central_transmitter(const ScenarioConfig &cfg, Steering steering)
{
    AntennaSpec array = cfg.central_array;
    array.steering = steering;
    return {std::nullopt, central_ap_position(cfg), array, std::nullopt};
}

LinkSample link_path_gain(const Transmitter &tx, const Vec3 &ue, const ScenarioConfig &cfg,
                          std::span<const Blocker> blockers)
{
    const double d = distance(tx.position, ue);
    if (!(d > 0.0))
        throw std::invalid_argument("transmitter and terminal positions coincide");
    const Vec3 down = (ue - tx.position) * (1.0 / d);

    const Vec3 tx_obs = to_downward_frame(down);
    double tx_gain;
    if (tx.beam_dir) {
        AntennaSpec steered = tx.array;
        steered.steering = Steering::SteeredToTarget;
        tx_gain = pattern_gain_db(steered, to_downward_frame(*tx.beam_dir), tx_obs);
    } else {
        tx_gain = pattern_gain_db(tx.array, tx_obs, tx_obs);
    }

    const Vec3 rx_obs = -down; // terminal frame equals the global frame
    const double rx_gain = pattern_gain_db(cfg.terminal.rx_array, rx_obs, rx_obs);

    const double blocked = blockage_loss_db(tx.position, ue, blockers);
    LinkSample s;
    s.tx_index = tx.ru_index;
    s.ue_position = ue;
    s.path_gain_db = tx_gain + rx_gain - fspl_db(cfg.carrier_hz, d) - blocked;
    s.los_blocked = blocked > 0.0;
    return s;
}

LinkSample link_path_gain(const Transmitter &tx, const Vec3 &ue, const ScenarioConfig &cfg)
{
    return link_path_gain(tx, ue, cfg, cfg.blockers);
}

const char *to_string(ProfileMode mode)
{
    switch (mode) {
    case ProfileMode::Distributed:
        return "distributed";
    case ProfileMode::CentralSteered:
        return "central_steered";
    case ProfileMode::CentralUnsteered:
        return "central_unsteered";
    }
    return "?";
}

std::vector<double> make_x_grid(const ScenarioConfig &cfg, double step_m)
{
    if (!(step_m > 0.0))
        throw std::invalid_argument("grid step must be > 0");
    const int n = static_cast<int>(std::floor(cfg.room.length_m / step_m + 1e-9)) + 1;
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i)
        xs[i] = i * step_m;
    return xs;
}

PathGainProfile serve_and_profile(const ScenarioConfig &cfg, std::span<const double> x_grid)
{
    if (x_grid.empty())
        throw std::invalid_argument("position grid is empty");
    const auto tx_ids = transmitter_indices(cfg);
    if (tx_ids.empty())
        throw std::invalid_argument("scenario has no transmit-mode RU");

    std::vector<Transmitter> rus;
    for (int k : tx_ids)
        rus.push_back(ru_transmitter(cfg, k));
    const Transmitter steered = central_transmitter(cfg, Steering::SteeredToTarget);
    const Transmitter unsteered = central_transmitter(cfg, Steering::FixedBroadside);

    PathGainProfile prof;
    prof.x_grid_m.assign(x_grid.begin(), x_grid.end());
    auto &dist = prof.per_mode[ProfileMode::Distributed];
    auto &cs = prof.per_mode[ProfileMode::CentralSteered];
    auto &cu = prof.per_mode[ProfileMode::CentralUnsteered];

    for (double x : x_grid) {
        const Vec3 ue{x, cfg.terminal.position.y, cfg.terminal.position.z};
        if (!cfg.room.contains(ue))
            throw std::invalid_argument("grid position x = " + std::to_string(x) + " lies outside the room");

        LinkSample best = link_path_gain(rus.front(), ue, cfg);
        for (std::size_t i = 1; i < rus.size(); ++i) {
            const auto s = link_path_gain(rus[i], ue, cfg);
            if (s.path_gain_db > best.path_gain_db + kTieToleranceDb)
                best = s;
        }
        dist.path_gain_db.push_back(best.path_gain_db);
        dist.serving_tx.push_back(*best.tx_index);
        dist.los_blocked.push_back(best.los_blocked);

        for (auto [tx, mp] : {std::pair{&steered, &cs}, std::pair{&unsteered, &cu}}) {
            const auto s = link_path_gain(*tx, ue, cfg);
            mp->path_gain_db.push_back(s.path_gain_db);
            mp->serving_tx.push_back(-1);
            mp->los_blocked.push_back(s.los_blocked);
        }
    }
    return prof;
}

double doppler_hz(double speed_mps, double f_hz)
{
    if (!(speed_mps >= 0.0))
        throw std::invalid_argument("speed must be >= 0");
    return speed_mps * f_hz / kSpeedOfLight;
}

EndToEndProfile end_to_end_gain_profile(const ScenarioConfig &cfg, std::span<const double> x_grid,
                                        const FiberVariant &variant)
{
    if (!(variant.atten_db_per_m >= 0.0) || !(variant.coupler_loss_db >= 0.0))
        throw std::invalid_argument("fiber variant losses must be >= 0 dB");
    const FiberSpec fiber{variant.atten_db_per_m, variant.coupler_loss_db};
    const double booster = variant.booster_gain_db.value_or(fiber.hop_loss_db(cfg.stripe.ru_spacing_m));
    if (!(booster >= 0.0 && booster < 30.0))
        throw std::invalid_argument("booster gain must be in [0, 30) dB");

    ChainOptions opts;
    opts.fiber = fiber;
    opts.booster_gain_db = booster;
    const auto chain = run_chain(cfg, opts);
    const auto prof = serve_and_profile(cfg, x_grid);

    EndToEndProfile out;
    out.x_grid_m = prof.x_grid_m;
    for (std::size_t k = 1; k < chain.taps.size(); ++k)
        out.chain_gain_db.push_back(chain.taps[k].p_sig_dbm - chain.launch_dbm);

    const auto &dist = prof.at(ProfileMode::Distributed);
    const auto &direct = prof.at(ProfileMode::CentralSteered);
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        const int k = dist.serving_tx[i];
        out.serving_ru.push_back(k);
        out.direct_db.push_back(direct.path_gain_db[i]);
        out.stripe_db.push_back(out.chain_gain_db.at(k) + dist.path_gain_db[i]);
    }
    return out;
}

} // namespace stripesim
