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

// Over-the-air path gain between stripe RUs (or a single central AP) and the
// terminal: free-space loss, planar-array patterns, blockage, serving-RU
// selection and position sweeps.
//
// Array convention: elements on a half-wavelength grid in the local x/y plane,
// broadside along local +z. RU and central-AP arrays face the floor, terminal
// arrays face the ceiling.

#include "core/scenario.hpp"

#include <map>
#include <optional>
#include <span>
#include <vector>

namespace stripesim {

double wavelength_m(double f_hz);
double fspl_db(double f_hz, double d_m);

// Broadside gain of a lossless-feed array.
double array_gain_dbi(const AntennaSpec &spec);

// Uniform-array half-power beamwidth estimate, 0.886 * lambda / (N * lambda / 2).
double hpbw_deg(int n_elems_axis);

// Roll-off exponent q such that a cos^q element (floored at -40 dB) has the
// given directivity. Throws if the gain is below what q = 0 can deliver.
double element_rolloff_for_gain(double element_gain_dbi);

// Element + array-factor gain toward obs_dir (local frame, unit vectors).
// FixedBroadside specs ignore steer_dir.
double pattern_gain_db(const AntennaSpec &spec, const Vec3 &steer_dir, const Vec3 &obs_dir);

// Linear |AF|^2 of the array for the given local directions (peak N^2).
double array_factor_power(const AntennaSpec &spec, const Vec3 &steer_dir, const Vec3 &obs_dir);

// Sum of penetration losses of spheres cutting the open segment (tx, rx).
double blockage_loss_db(const Vec3 &tx, const Vec3 &rx, std::span<const Blocker> blockers);

// Global direction -> frame of an array facing the floor.
Vec3 to_downward_frame(const Vec3 &v);

struct Transmitter
{
    std::optional<int> ru_index; // empty for the central AP
    Vec3 position{};
    AntennaSpec array{};
    // Global steering direction forced by a codebook beam; overrides the
    // array's own steering mode.
    std::optional<Vec3> beam_dir;
};

struct LinkSample
{
    std::optional<int> tx_index; // empty = central AP
    Vec3 ue_position{};
    double path_gain_db = 0.0;
    bool los_blocked = false;
};

Transmitter ru_transmitter(const ScenarioConfig &cfg, int ru_index);
Transmitter central_transmitter(const ScenarioConfig &cfg, Steering steering);

// Both antenna gains minus FSPL at the carrier minus blockage. The terminal
// array follows its own steering mode, aimed at the transmitter.
LinkSample link_path_gain(const Transmitter &tx, const Vec3 &ue, const ScenarioConfig &cfg,
                          std::span<const Blocker> blockers);
LinkSample link_path_gain(const Transmitter &tx, const Vec3 &ue, const ScenarioConfig &cfg);

enum class ProfileMode
{
    Distributed,
    CentralSteered,
    CentralUnsteered,
};

const char *to_string(ProfileMode mode);

struct ModeProfile
{
    std::vector<double> path_gain_db;
    std::vector<int> serving_tx; // RU index, -1 for the central AP
    std::vector<bool> los_blocked;
};

struct PathGainProfile
{
    std::vector<double> x_grid_m;
    std::map<ProfileMode, ModeProfile> per_mode;

    const ModeProfile &at(ProfileMode m) const { return per_mode.at(m); }
};

// 0, step, 2 step, ... up to and including the room length.
std::vector<double> make_x_grid(const ScenarioConfig &cfg, double step_m);

// Terminal at (x, terminal.y, terminal.z) for every x. Distributed serving RU
// is the argmax over Transmit-mode RUs; gains within 1e-9 dB count as ties
// and go to the lower index.
PathGainProfile serve_and_profile(const ScenarioConfig &cfg, std::span<const double> x_grid);

double doppler_hz(double speed_mps, double f_hz);

struct FiberVariant
{
    double atten_db_per_m = 3.0;
    double coupler_loss_db = 3.0;
    // Empty: boosters exactly compensate the variant's hop loss.
    // 0: passive RUs (no amplification along the fiber).
    std::optional<double> booster_gain_db;
};

struct EndToEndProfile
{
    std::vector<double> x_grid_m;
    std::vector<int> serving_ru;
    std::vector<double> direct_db; // central steered AP, air only
    std::vector<double> stripe_db; // fiber chain to serving RU + air
    std::vector<double> chain_gain_db; // per RU index, launch -> RU output
};

EndToEndProfile end_to_end_gain_profile(const ScenarioConfig &cfg, std::span<const double> x_grid,
                                        const FiberVariant &variant);

} // namespace stripesim
