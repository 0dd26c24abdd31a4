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

#include "core/rfchain.hpp"

#include <stdexcept>

namespace stripesim {

namespace {

// Power sum in dBm; -inf terms contribute nothing.
double add_dbm(double a, double b) { return linear_to_db(db_to_linear(a) + db_to_linear(b)); }

} // namespace

StageSpec StageSpec::loss(double loss_db)
{
    if (!(loss_db >= 0.0))
        throw std::invalid_argument("loss must be >= 0 dB");
    return {StageKind::Loss, -loss_db, loss_db, INFINITY};
}

StageSpec StageSpec::amplifier(double gain_db, double noise_figure_db, double oip3_dbm)
{
    if (!(gain_db > 0.0 && gain_db < 30.0))
        throw std::invalid_argument("amplifier gain must be in (0, 30) dB");
    if (!(noise_figure_db >= 0.0))
        throw std::invalid_argument("noise figure must be >= 0 dB");
    return {StageKind::Amplifier, gain_db, noise_figure_db, oip3_dbm};
}

double thermal_noise_floor_dbm(double bandwidth_hz)
{
    if (!(bandwidth_hz > 0.0))
        throw std::invalid_argument("bandwidth must be > 0 Hz");
    return -174.0 + 10.0 * std::log10(bandwidth_hz);
}

SignalState apply_stage(const SignalState &state, const StageSpec &stage, double bandwidth_hz)
{
    const double ktb = db_to_linear(thermal_noise_floor_dbm(bandwidth_hz));
    const double g = db_to_linear(stage.gain_db);
    const double f = db_to_linear(stage.noise_figure_db);

    SignalState out = state;
    out.p_sig_dbm = state.p_sig_dbm + stage.gain_db;
    out.p_noise_dbm = linear_to_db(db_to_linear(state.p_noise_dbm) * g + ktb * (f - 1.0) * g);
    out.p_imd_dbm = state.p_imd_dbm + stage.gain_db;
    if (stage.kind == StageKind::Amplifier && std::isfinite(stage.oip3_dbm)) {
        const double added = 3.0 * out.p_sig_dbm - 2.0 * stage.oip3_dbm;
        out.p_imd_dbm = add_dbm(out.p_imd_dbm, added);
    }
    return out;
}

double snr_db(const SignalState &s) { return s.p_sig_dbm - s.p_noise_dbm; }

double sdr_db(const SignalState &s) { return s.p_sig_dbm - s.p_imd_dbm; }

double sndr_db(const SignalState &s)
{
    const double impairment = db_to_linear(s.p_noise_dbm) + db_to_linear(s.p_imd_dbm);
    return s.p_sig_dbm - linear_to_db(impairment);
}

std::vector<StageSpec> hop_stages(const FiberSpec &fiber, double spacing_m, const RadioUnitSpec &ru,
                                  std::optional<double> booster_gain_db)
{
    std::vector<StageSpec> stages{
        StageSpec::loss(fiber.coupler_loss_db),
        StageSpec::loss(fiber.atten_db_per_m * spacing_m),
        StageSpec::loss(fiber.coupler_loss_db),
    };
    const double gain = booster_gain_db.value_or(ru.booster_gain_db);
    if (gain > 0.0)
        stages.push_back(StageSpec::amplifier(gain, ru.noise_figure_db, ru.oip3_dbm));
    return stages;
}

SignalState cu_output(const CentralUnitSpec &cu, double launch_dbm, double bandwidth_hz)
{
    SignalState s;
    s.p_sig_dbm = launch_dbm;
    s.p_noise_dbm = thermal_noise_floor_dbm(bandwidth_hz) + cu.noise_figure_db;
    s.p_imd_dbm = launch_dbm + cu.phase_noise_floor_dbc;
    s.position_m = 0.0;
    return s;
}

ChainReport run_chain(const ScenarioConfig &cfg, const ChainOptions &opts)
{
    validate(cfg);
    const FiberSpec fiber = opts.fiber.value_or(cfg.fiber);
    const double spacing = cfg.stripe.ru_spacing_m;

    ChainReport report;
    report.launch_dbm = opts.launch_dbm.value_or(cfg.cu.launch_dbm());
    SignalState state = cu_output(cfg.cu, report.launch_dbm, cfg.bandwidth_hz);
    report.taps.push_back(state);

    for (const auto &ru : cfg.rus) {
        if (ru.mode == RuMode::Disabled)
            break;
        for (const auto &stage : hop_stages(fiber, spacing, ru, opts.booster_gain_db))
            state = apply_stage(state, stage, cfg.bandwidth_hz);
        state.position_m = (ru.index + 1) * spacing;
        report.taps.push_back(state);
    }

    // Only a noise-limited start can cross over; a chain that is
    // distortion-limited at the CU output has no crossover point.
    if (sdr_db(report.taps.front()) >= snr_db(report.taps.front())) {
        for (const auto &tap : report.taps) {
            if (sdr_db(tap) < snr_db(tap)) {
                report.crossover_m = tap.position_m;
                break;
            }
        }
    }
    return report;
}

double sweep_launch_power(const ScenarioConfig &cfg, std::span<const double> grid_dbm)
{
    if (grid_dbm.empty())
        throw std::invalid_argument("launch-power grid is empty");
    double best_p = grid_dbm.front();
    double best_sndr = -INFINITY;
    bool first = true;
    for (double p : grid_dbm) {
        ChainOptions opts;
        opts.launch_dbm = p;
        const auto rep = run_chain(cfg, opts);
        const double v = sndr_db(rep.taps.back());
        if (first || v > best_sndr || (v == best_sndr && p < best_p)) {
            best_sndr = v;
            best_p = p;
            first = false;
        }
    }
    return best_p;
}

} // namespace stripesim
