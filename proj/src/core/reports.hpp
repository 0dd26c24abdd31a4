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

// CSV writers for every run output plus the figure-reproduction drivers.

#include "core/airlink.hpp"
#include "core/dualband.hpp"
#include "core/energy.hpp"
#include "core/rfchain.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stripesim {

inline constexpr const char *kFiberHeader = "position_m,p_sig_dbm,p_noise_dbm,p_imd_dbm,snr_db,sdr_db,sndr_db";
inline constexpr const char *kAirHeader =
    "x_m,pg_distributed_db,serving_tx,pg_central_steered_db,pg_central_unsteered_db,los_blocked";
inline constexpr const char *kEndToEndHeader = "x_m,serving_ru,direct_db,stripe_db";
inline constexpr const char *kMetricsHeader = "k,topk_rate,mean_gain_loss_db,p95_gain_loss_db,mean_slots";
inline constexpr const char *kEnergyHeader = "n_active_rus,total_w,pj_per_bit";

void write_fiber_csv(std::ostream &os, const ChainReport &rep);
void write_air_csv(std::ostream &os, const PathGainProfile &prof);
void write_endtoend_csv(std::ostream &os, const EndToEndProfile &prof);
void write_metrics_csv(std::ostream &os, std::span<const MetricsRow> rows);
void write_energy_csv(std::ostream &os, const EnergyReport &rep);

// x,y,f0..f{n-1},ru_label,beam_label. Features are written with 17
// significant digits so a reload is exact.
std::string dataset_header(std::size_t n_features);
void write_dataset_csv(std::ostream &os, std::span<const DualBandSample> samples);
// Positions get z = ue_z. Throws ParseError on malformed rows.
std::vector<DualBandSample> read_dataset_csv(std::istream &is, double ue_z);

// Every RU array replaced by a single fixed-broadside patch.
ScenarioConfig single_patch_variant(const ScenarioConfig &cfg);

struct Fig3Summary
{
    std::optional<double> crossover_m;
    double end_sndr_db = 0.0;
    double distributed_p2p_db = 0.0;
    double central_steered_p2p_db = 0.0;
    double central_unsteered_p2p_db = 0.0;
    double single_patch_edge_db = 0.0;    // min over x
    double central_steered_edge_db = 0.0; // min over x
};

struct Fig3Data
{
    ChainReport chain;
    PathGainProfile profile;
    std::vector<double> single_patch_db;
    Fig3Summary summary;
};

Fig3Data reproduce_fig3(const ScenarioConfig &cfg, double grid_step_m);
// Air columns plus pg_distributed_single_patch_db.
void write_fig3_top_csv(std::ostream &os, const Fig3Data &d);
void write_fig3_summary_csv(std::ostream &os, const Fig3Summary &s);

struct Fig4Curve
{
    std::string name;
    FiberVariant variant;
    EndToEndProfile profile;
    EndToEndProfile under_ru; // terminal directly below each RU
};

struct Fig4Data
{
    std::vector<Fig4Curve> curves;
};

// 3 dB/m + 3 dB couplers (boosted to unity and passive), 1 dB/m + 0.5 dB
// couplers passive.
std::vector<std::pair<std::string, FiberVariant>> fig4_variants();

Fig4Data reproduce_fig4(const ScenarioConfig &cfg, double grid_step_m);
void write_fig4_csv(std::ostream &os, const Fig4Data &d);
void write_fig4_per_ru_csv(std::ostream &os, const Fig4Data &d);

} // namespace stripesim
