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

// Simulation world: room, stripe placement, radio-unit roster, terminal and
// blockers, plus the YAML scenario format (grammar in docs/scenario-format.md).

#include "core/errors.hpp"
#include "core/geometry.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace stripesim {

// cos^q element roll-off whose hemispherical integral gives a 6 dBi patch.
// See element_rolloff_for_gain() in airlink.hpp for the calibration.
inline constexpr double kPatchRolloff = 0.99093217563037639;

struct Room
{
    double length_m = 15.0;
    double width_m = 6.0;
    double height_m = 5.0;
    double wall_reflectivity = 0.1;

    bool contains(const Vec3 &p, double tol = 1e-9) const
    {
        return p.x >= -tol && p.x <= length_m + tol && p.y >= -tol && p.y <= width_m + tol && p.z >= -tol &&
               p.z <= height_m + tol;
    }
    friend bool operator==(const Room &, const Room &) = default;
};

struct StripePlacement
{
    Vec3 start{0.0, 3.0, 5.0};
    Vec3 direction{1.0, 0.0, 0.0};
    double length_m = 15.0;
    double ru_spacing_m = 1.5;
    int transmit_capable_every = 1;

    friend bool operator==(const StripePlacement &, const StripePlacement &) = default;
};

enum class Steering
{
    FixedBroadside,
    SteeredToTarget,
};

struct AntennaSpec
{
    int n_x = 4;
    int n_y = 4;
    double element_gain_dbi = 6.0;
    double element_rolloff = kPatchRolloff;
    Steering steering = Steering::SteeredToTarget;

    friend bool operator==(const AntennaSpec &, const AntennaSpec &) = default;
};

enum class RuMode
{
    Transmit,
    Booster,
    Disabled,
};

struct RadioUnitSpec
{
    int index = 0;
    RuMode mode = RuMode::Transmit;
    AntennaSpec tx_array{};
    double booster_gain_db = 10.5;
    double noise_figure_db = 8.0;
    double oip3_dbm = 17.25;

    friend bool operator==(const RadioUnitSpec &, const RadioUnitSpec &) = default;
};

// Template applied to every RU before per-RU overrides. An empty
// booster_gain_db means "exactly compensate one hop" (coupler + fiber + coupler).
// An empty mode follows the transmit_capable_every stride.
struct RadioUnitDefaults
{
    std::optional<RuMode> mode;
    AntennaSpec tx_array{};
    std::optional<double> booster_gain_db;
    double noise_figure_db = 8.0;
    double oip3_dbm = 17.25;

    friend bool operator==(const RadioUnitDefaults &, const RadioUnitDefaults &) = default;
};

struct CentralUnitSpec
{
    double peak_power_dbm = 10.0;
    double backoff_db = 6.0;
    // Extra drive reduction below the backed-off peak (crest factor, losses
    // ahead of the first coupler).
    double implementation_margin_db = 9.0;
    // White phase-noise floor, folded into the distortion power. -inf disables it.
    double phase_noise_floor_dbc = -45.0;
    // Output-referred: CU output noise = kTB * F. Lumps DAC, mixer and PA chain.
    double noise_figure_db = 27.0;

    double launch_dbm() const { return peak_power_dbm - backoff_db - implementation_margin_db; }
    friend bool operator==(const CentralUnitSpec &, const CentralUnitSpec &) = default;
};

struct FiberSpec
{
    double atten_db_per_m = 3.0;
    double coupler_loss_db = 3.0;

    // Loss of one CU->RU or RU->RU hop: output coupler, fiber, input coupler.
    double hop_loss_db(double spacing_m) const { return 2.0 * coupler_loss_db + atten_db_per_m * spacing_m; }
    friend bool operator==(const FiberSpec &, const FiberSpec &) = default;
};

struct UserTerminal
{
    Vec3 position{0.75, 3.0, 1.0};
    AntennaSpec rx_array{};
    double speed_mps = 5.0 / 3.6;

    friend bool operator==(const UserTerminal &, const UserTerminal &) = default;
};

struct Blocker
{
    Vec3 center{};
    double radius_m = 0.25;
    double penetration_loss_db = 40.0;

    friend bool operator==(const Blocker &, const Blocker &) = default;
};

// Sub-10 GHz access point used by the dual-band learning. A planar array of
// n_x * n_y antennas at half-wavelength spacing, facing down from the ceiling
// centre. csi_snr_db = +inf means noiseless channel estimates.
struct LowbandSpec
{
    int n_x = 4;
    int n_y = 2;
    double csi_snr_db = INFINITY;

    friend bool operator==(const LowbandSpec &, const LowbandSpec &) = default;
};

// Beams per RU: nadir plus (n_beams - 1) azimuths on a ring at
// ring_offnadir_deg from nadir.
struct CodebookSpec
{
    int n_beams = 5;
    double ring_offnadir_deg = 30.0;

    friend bool operator==(const CodebookSpec &, const CodebookSpec &) = default;
};

// Transmit and booster RUs draw the same power (class-A amplifiers).
// Digital baseband power is not included.
struct PowerModel
{
    double p_ru_active_w = 0.5;
    double p_cu_w = 0.1;
    double throughput_bps = 20e9;

    friend bool operator==(const PowerModel &, const PowerModel &) = default;
};

struct ScenarioConfig
{
    Room room{};
    StripePlacement stripe{};
    CentralUnitSpec cu{};
    FiberSpec fiber{};
    RadioUnitDefaults ru_defaults{};
    std::vector<RadioUnitSpec> rus; // resolved, one per RU along the chain
    UserTerminal terminal{};
    std::vector<Blocker> blockers;
    AntennaSpec central_array{};
    LowbandSpec lowband{};
    CodebookSpec codebook{};
    PowerModel power{};
    double carrier_hz = 140e9;
    double lowband_hz = 6e9;
    double bandwidth_hz = 20e9;
    std::uint64_t seed = 0;

    friend bool operator==(const ScenarioConfig &, const ScenarioConfig &) = default;
};

// Number of RUs that fit on the stripe: floor(length / spacing).
int ru_count(const StripePlacement &stripe);

// start + k * spacing * direction for k = 1..N.
std::vector<Vec3> ru_positions(const StripePlacement &stripe);

bool is_transmit_capable(const StripePlacement &stripe, int ru_index);
std::vector<Vec3> transmit_capable_positions(const StripePlacement &stripe);

// Indices of RUs in Transmit mode, in chain order (Disabled suffix excluded).
std::vector<int> transmitter_indices(const ScenarioConfig &cfg);

// Unsteered/steered single AP for the centralised comparison: room centre,
// at stripe height.
Vec3 central_ap_position(const ScenarioConfig &cfg);

// Low-band AP: room centre, ceiling height.
Vec3 lowband_ap_position(const ScenarioConfig &cfg);

// Default scenario with every RU resolved.
ScenarioConfig default_scenario();

// Re-derives cfg.rus from ru_defaults (dropping any per-RU overrides).
void resolve_radio_units(ScenarioConfig &cfg);

// Throws ValidationError naming the first violated field.
void validate(const ScenarioConfig &cfg);

ScenarioConfig parse_scenario(const std::string &text);
ScenarioConfig load_scenario(const std::filesystem::path &path);

// Inverse of parse_scenario: parse_scenario(serialize_scenario(c)) == c.
std::string serialize_scenario(const ScenarioConfig &cfg);

const char *to_string(RuMode mode);
const char *to_string(Steering steering);

} // namespace stripesim
