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

#include "core/reports.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace stripesim {

namespace {

std::string num(double v) { return fmt::format("{:.6f}", v); }

double peak_to_peak(const std::vector<double> &v)
{
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi - *lo;
}

std::vector<std::string> split(const std::string &line, char sep)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, sep))
        out.push_back(cell);
    if (!line.empty() && line.back() == sep)
        out.emplace_back();
    return out;
}

double parse_double(const std::string &s, int line)
{
    char *end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size())
        throw ParseError("bad number '" + s + "'", line);
    return v;
}

int parse_int(const std::string &s, int line)
{
    char *end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size())
        throw ParseError("bad integer '" + s + "'", line);
    return static_cast<int>(v);
}

} // namespace

void write_fiber_csv(std::ostream &os, const ChainReport &rep)
{
    os << kFiberHeader << '\n';
    for (const auto &t : rep.taps)
        os << fmt::format("{},{},{},{},{},{},{}\n", num(t.position_m), num(t.p_sig_dbm), num(t.p_noise_dbm),
                          num(t.p_imd_dbm), num(snr_db(t)), num(sdr_db(t)), num(sndr_db(t)));
}

void write_air_csv(std::ostream &os, const PathGainProfile &prof)
{
    const auto &d = prof.at(ProfileMode::Distributed);
    const auto &cs = prof.at(ProfileMode::CentralSteered);
    const auto &cu = prof.at(ProfileMode::CentralUnsteered);
    os << kAirHeader << '\n';
    for (std::size_t i = 0; i < prof.x_grid_m.size(); ++i)
        os << fmt::format("{},{},{},{},{},{}\n", num(prof.x_grid_m[i]), num(d.path_gain_db[i]), d.serving_tx[i],
                          num(cs.path_gain_db[i]), num(cu.path_gain_db[i]), d.los_blocked[i] ? 1 : 0);
}

void write_endtoend_csv(std::ostream &os, const EndToEndProfile &prof)
{
    os << kEndToEndHeader << '\n';
    for (std::size_t i = 0; i < prof.x_grid_m.size(); ++i)
        os << fmt::format("{},{},{},{}\n", num(prof.x_grid_m[i]), prof.serving_ru[i], num(prof.direct_db[i]),
                          num(prof.stripe_db[i]));
}

void write_metrics_csv(std::ostream &os, std::span<const MetricsRow> rows)
{
    os << kMetricsHeader << '\n';
    for (const auto &r : rows)
        os << fmt::format("{},{},{},{},{}\n", r.k, num(r.topk_rate), num(r.mean_gain_loss_db),
                          num(r.p95_gain_loss_db), num(r.mean_slots));
}

void write_energy_csv(std::ostream &os, const EnergyReport &rep)
{
    os << kEnergyHeader << '\n';
    os << fmt::format("{},{},{}\n", rep.n_active_rus, num(rep.total_power_w), num(rep.pj_per_bit()));
}

std::string dataset_header(std::size_t n_features)
{
    std::string h = "x,y";
    for (std::size_t i = 0; i < n_features; ++i)
        h += fmt::format(",f{}", i);
    return h + ",ru_label,beam_label";
}

void write_dataset_csv(std::ostream &os, std::span<const DualBandSample> samples)
{
    const std::size_t nf = samples.empty() ? 0 : samples.front().features.size();
    os << dataset_header(nf) << '\n';
    for (const auto &s : samples) {
        if (s.features.size() != nf)
            throw std::invalid_argument("dataset rows have inconsistent feature counts");
        std::string row = fmt::format("{:.17g},{:.17g}", s.position.x, s.position.y);
        for (double f : s.features)
            row += fmt::format(",{:.17g}", f);
        row += fmt::format(",{},{}\n", s.label.ru, s.label.beam);
        os << row;
    }
}

std::vector<DualBandSample> read_dataset_csv(std::istream &is, double ue_z)
{
    std::string line;
    if (!std::getline(is, line))
        throw ParseError("dataset is empty", 1);
    const auto head = split(line, ',');
    if (head.size() < 4 || head[0] != "x" || head[1] != "y" || head[head.size() - 2] != "ru_label" ||
        head.back() != "beam_label")
        throw ParseError("dataset header must be x,y,features...,ru_label,beam_label", 1);
    const std::size_t nf = head.size() - 4;
    if (line != dataset_header(nf))
        throw ParseError("dataset feature columns must be named f0..f" + std::to_string(nf - 1), 1);

    std::vector<DualBandSample> out;
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty())
            continue;
        const auto cells = split(line, ',');
        if (cells.size() != head.size())
            throw ParseError(fmt::format("expected {} columns, found {}", head.size(), cells.size()), lineno);
        DualBandSample s;
        s.position = {parse_double(cells[0], lineno), parse_double(cells[1], lineno), ue_z};
        for (std::size_t i = 0; i < nf; ++i)
            s.features.push_back(parse_double(cells[2 + i], lineno));
        s.label = {parse_int(cells[2 + nf], lineno), parse_int(cells[3 + nf], lineno)};
        out.push_back(std::move(s));
    }
    return out;
}

ScenarioConfig single_patch_variant(const ScenarioConfig &cfg)
{
    ScenarioConfig out = cfg;
    auto patch = [](AntennaSpec &a) {
        a.n_x = 1;
        a.n_y = 1;
        a.steering = Steering::FixedBroadside;
    };
    patch(out.ru_defaults.tx_array);
    for (auto &ru : out.rus)
        patch(ru.tx_array);
    return out;
}

Fig3Data reproduce_fig3(const ScenarioConfig &cfg, double grid_step_m)
{
    Fig3Data d;
    d.chain = run_chain(cfg);
    const auto grid = make_x_grid(cfg, grid_step_m);
    d.profile = serve_and_profile(cfg, grid);
    d.single_patch_db = serve_and_profile(single_patch_variant(cfg), grid).at(ProfileMode::Distributed).path_gain_db;

    auto &s = d.summary;
    s.crossover_m = d.chain.crossover_m;
    s.end_sndr_db = sndr_db(d.chain.taps.back());
    s.distributed_p2p_db = peak_to_peak(d.profile.at(ProfileMode::Distributed).path_gain_db);
    s.central_steered_p2p_db = peak_to_peak(d.profile.at(ProfileMode::CentralSteered).path_gain_db);
    s.central_unsteered_p2p_db = peak_to_peak(d.profile.at(ProfileMode::CentralUnsteered).path_gain_db);
    s.single_patch_edge_db = *std::min_element(d.single_patch_db.begin(), d.single_patch_db.end());
    const auto &cs = d.profile.at(ProfileMode::CentralSteered).path_gain_db;
    s.central_steered_edge_db = *std::min_element(cs.begin(), cs.end());
    return d;
}

void write_fig3_top_csv(std::ostream &os, const Fig3Data &d)
{
    const auto &p = d.profile;
    const auto &dist = p.at(ProfileMode::Distributed);
    const auto &cs = p.at(ProfileMode::CentralSteered);
    const auto &cu = p.at(ProfileMode::CentralUnsteered);
    os << kAirHeader << ",pg_distributed_single_patch_db\n";
    for (std::size_t i = 0; i < p.x_grid_m.size(); ++i)
        os << fmt::format("{},{},{},{},{},{},{}\n", num(p.x_grid_m[i]), num(dist.path_gain_db[i]), dist.serving_tx[i],
                          num(cs.path_gain_db[i]), num(cu.path_gain_db[i]), dist.los_blocked[i] ? 1 : 0,
                          num(d.single_patch_db[i]));
}

void write_fig3_summary_csv(std::ostream &os, const Fig3Summary &s)
{
    os << "metric,value\n";
    os << "crossover_m," << (s.crossover_m ? num(*s.crossover_m) : std::string("nan")) << '\n';
    os << "end_sndr_db," << num(s.end_sndr_db) << '\n';
    os << "distributed_p2p_db," << num(s.distributed_p2p_db) << '\n';
    os << "central_steered_p2p_db," << num(s.central_steered_p2p_db) << '\n';
    os << "central_unsteered_p2p_db," << num(s.central_unsteered_p2p_db) << '\n';
    os << "single_patch_edge_db," << num(s.single_patch_edge_db) << '\n';
    os << "central_steered_edge_db," << num(s.central_steered_edge_db) << '\n';
}

std::vector<std::pair<std::string, FiberVariant>> fig4_variants()
{
    return {
        {"3dbpm_3db_boosted", {3.0, 3.0, std::nullopt}},
        {"3dbpm_3db_passive", {3.0, 3.0, 0.0}},
        {"1dbpm_0p5db_passive", {1.0, 0.5, 0.0}},
    };
}

Fig4Data reproduce_fig4(const ScenarioConfig &cfg, double grid_step_m)
{
    const auto grid = make_x_grid(cfg, grid_step_m);
    std::vector<double> under;
    for (int k : transmitter_indices(cfg))
        under.push_back(ru_positions(cfg.stripe).at(k).x);

    Fig4Data d;
    for (const auto &[name, v] : fig4_variants())
        d.curves.push_back({name, v, end_to_end_gain_profile(cfg, grid, v), end_to_end_gain_profile(cfg, under, v)});
    return d;
}

namespace {

void write_fig4_table(std::ostream &os, const Fig4Data &d, EndToEndProfile Fig4Curve::*which)
{
    if (d.curves.empty())
        throw std::invalid_argument("no curves to write");
    const auto &first = d.curves.front().*which;
    os << "x_m,serving_ru,direct_db";
    for (const auto &c : d.curves)
        os << ",stripe_" << c.name << "_db";
    os << '\n';
    for (std::size_t i = 0; i < first.x_grid_m.size(); ++i) {
        os << fmt::format("{},{},{}", num(first.x_grid_m[i]), first.serving_ru[i], num(first.direct_db[i]));
        for (const auto &c : d.curves)
            os << ',' << num((c.*which).stripe_db[i]);
        os << '\n';
    }
}

} // namespace

void write_fig4_csv(std::ostream &os, const Fig4Data &d) { write_fig4_table(os, d, &Fig4Curve::profile); }

void write_fig4_per_ru_csv(std::ostream &os, const Fig4Data &d) { write_fig4_table(os, d, &Fig4Curve::under_ru); }

} // namespace stripesim
