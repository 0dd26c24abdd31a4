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

#pragma once

// Signal / noise / intermodulation bookkeeping along the CU -> coupler ->
// fiber -> coupler -> RU daisy chain.
//
// All powers are integrated over the simulation bandwidth, in dBm. Noise and
// distortion are tracked as separate power terms. Distortion from different
// stages adds in power (uncorrelated products), and the CU phase-noise floor
// is folded into the distortion term.

#include "core/scenario.hpp"

#include <optional>
#include <span>
#include <vector>

namespace stripesim {

struct SignalState
{
    double p_sig_dbm = 0.0;
    double p_noise_dbm = -INFINITY;
    double p_imd_dbm = -INFINITY;
    double position_m = 0.0;
};

enum class StageKind
{
    Loss,
    Amplifier,
};

struct StageSpec
{
    StageKind kind = StageKind::Loss;
    double gain_db = 0.0;
    double noise_figure_db = 0.0;
    double oip3_dbm = INFINITY;

    // Passive attenuator at 290 K: NF equals the loss.
    static StageSpec loss(double loss_db);
    static StageSpec amplifier(double gain_db, double noise_figure_db, double oip3_dbm);
};

struct ChainReport
{
    std::vector<SignalState> taps; // CU output, then one per active RU
    std::optional<double> crossover_m;
    double launch_dbm = 0.0;
};

// Overrides used by the launch-power sweep and the end-to-end comparison.
// booster_gain_db == 0 means passive RUs (no amplifier stage).
struct ChainOptions
{
    std::optional<double> launch_dbm;
    std::optional<FiberSpec> fiber;
    std::optional<double> booster_gain_db;
};

// kTB at 290 K: -174 dBm/Hz + 10 log10(B). Throws for B <= 0.
double thermal_noise_floor_dbm(double bandwidth_hz);

SignalState apply_stage(const SignalState &state, const StageSpec &stage, double bandwidth_hz);

double snr_db(const SignalState &s);
double sdr_db(const SignalState &s);
// 1/sndr = 1/snr + 1/sdr in linear terms.
double sndr_db(const SignalState &s);

// Stage list of one hop ending at RU `ru` (output coupler, fiber, input
// coupler, RU amplifier).
std::vector<StageSpec> hop_stages(const FiberSpec &fiber, double spacing_m, const RadioUnitSpec &ru,
                                  std::optional<double> booster_gain_db = std::nullopt);

// State at the CU output (before the first coupler).
SignalState cu_output(const CentralUnitSpec &cu, double launch_dbm, double bandwidth_hz);

ChainReport run_chain(const ScenarioConfig &cfg, const ChainOptions &opts = {});

// Grid point maximising SNDR at the last tap; ties go to the lower power.
double sweep_launch_power(const ScenarioConfig &cfg, std::span<const double> grid_dbm);

} // namespace stripesim
