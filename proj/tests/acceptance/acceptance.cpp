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

// Prints one line per acceptance criterion and exits nonzero if any fails.

#include "core/airlink.hpp"
#include "core/dualband.hpp"
#include "core/energy.hpp"
#include "core/reports.hpp"
#include "core/rfchain.hpp"

#include "oracles.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>

using namespace stripesim;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict
{
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string &what)
    {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
        }
    }
    void note(const std::string &s) { detail += (detail.empty() ? "" : "; ") + s; }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Verdict criterion1()
{
    Verdict v;
    const auto t0 = Clock::now();
    const auto d = reproduce_fig3(default_scenario(), 0.05);
    const double dt = seconds_since(t0);
    const auto &s = d.summary;
    v.require(s.crossover_m.has_value() && std::abs(*s.crossover_m - 9.0) <= 1.5, "crossover within 9 +- 1.5 m");
    v.require(s.end_sndr_db >= 30.0, "end SNDR >= 30 dB");
    v.require(dt < 1.0, "runtime < 1 s");
    v.note(fmt::format("crossover {} m, end SNDR {:.2f} dB, {:.3f} s",
                       s.crossover_m ? fmt::format("{:.2f}", *s.crossover_m) : "none", s.end_sndr_db, dt));
    return v;
}

Verdict criterion2()
{
    Verdict v;
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> gain(0.5, 29.5), nf(0.0, 15.0), oip3(0.0, 30.0), backoff(15.0, 40.0);
    double worst_friis = 0.0, worst_im3 = 0.0;
    const double b = 1e9, ktb = thermal_noise_floor_dbm(b);
    for (int t = 0; t < 100; ++t) {
        const double g1 = gain(rng), g2 = gain(rng), f1 = nf(rng), f2 = nf(rng);
        SignalState s{-40.0, ktb, -INFINITY, 0.0};
        s = apply_stage(s, StageSpec::amplifier(g1, f1, INFINITY), b);
        s = apply_stage(s, StageSpec::amplifier(g2, f2, INFINITY), b);
        const double f = oracle::friis_two_stage(db_to_linear(f1), db_to_linear(g1), db_to_linear(f2));
        worst_friis = std::max(worst_friis, std::abs(db_to_linear(snr_db(s)) * f / db_to_linear(-40.0 - ktb) - 1.0));

        const double g = gain(rng), o = oip3(rng), pin = o - g - backoff(rng);
        const auto out = apply_stage({pin, -INFINITY, -INFINITY, 0.0}, StageSpec::amplifier(g, 0.0, o), 1.0);
        worst_im3 = std::max(worst_im3, std::abs(out.p_imd_dbm - oracle::two_tone_im3_dbm(pin, g, o)));
    }
    v.require(worst_friis <= 1e-9, "Friis within 1e-9 relative");
    v.require(worst_im3 <= 0.1, "two-tone IMD within 0.1 dB");
    v.note(fmt::format("100 cases, worst Friis rel err {:.2e}, worst IM3 err {:.2e} dB", worst_friis, worst_im3));
    return v;
}

Verdict criterion3()
{
    Verdict v;
    const auto s = reproduce_fig3(default_scenario(), 0.05).summary;
    v.require(s.distributed_p2p_db <= 6.0, "distributed p2p <= 6 dB");
    v.require(s.central_unsteered_p2p_db > 15.0, "central unsteered p2p > 15 dB");
    v.require(std::abs(s.single_patch_edge_db - s.central_steered_edge_db) <= 3.0, "single-patch edge within 3 dB");
    v.note(fmt::format("distributed p2p {:.2f} dB, unsteered p2p {:.2f} dB, edge {:.2f} vs {:.2f} dB",
                       s.distributed_p2p_db, s.central_unsteered_p2p_db, s.single_patch_edge_db,
                       s.central_steered_edge_db));
    return v;
}

Verdict criterion4()
{
    Verdict v;
    const auto cfg = default_scenario();
    const auto grid = make_x_grid(cfg, 0.05);
    const auto low = end_to_end_gain_profile(cfg, grid, {1.0, 0.5, 0.0});
    int wins = 0;
    double best_margin = -INFINITY;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double m = low.stripe_db[i] - low.direct_db[i];
        best_margin = std::max(best_margin, m);
        wins += m > 0.0;
    }
    v.require(wins > 0, "low-loss stripe beats direct somewhere");

    std::vector<double> under;
    for (int k : transmitter_indices(cfg))
        under.push_back(ru_positions(cfg.stripe)[k].x);
    bool monotone = true;
    for (double cap : {0.0, 9.0}) {
        const auto p = end_to_end_gain_profile(cfg, under, {3.0, 3.0, cap});
        for (std::size_t i = 1; i < under.size(); ++i)
            monotone = monotone && p.serving_ru[i] > p.serving_ru[i - 1] && p.stripe_db[i] <= p.stripe_db[i - 1];
    }
    v.require(monotone, "capped stripe gain non-increasing in serving RU");
    v.note(fmt::format("1 dB/m + 0.5 dB wins at {} of {} points (best margin {:.2f} dB); capped 0 and 9 dB monotone",
                       wins, grid.size(), best_margin));
    return v;
}

Verdict criterion5()
{
    Verdict v;
    const auto cfg = default_scenario();
    const auto r = serving_report(cfg.power, 9, static_cast<int>(cfg.rus.size()));
    v.require(r.n_active_rus == 10, "10 active RUs");
    v.require(r.total_power_w == 5.1, "total exactly 5.1 W");
    v.require(r.pj_per_bit() == 255.0, "exactly 255 pJ/bit");
    v.note(fmt::format("{} RUs, {} W, {} pJ/bit", r.n_active_rus, r.total_power_w, r.pj_per_bit()));
    return v;
}

Verdict criterion6()
{
    Verdict v;
    const auto t0 = Clock::now();
    const auto cfg = default_scenario();
    const auto cb = make_codebook(cfg);
    const auto train_set = build_dataset(cfg, 0.25);
    const auto model = train(ModelKind::NearestNeighbor, train_set, cb);

    int slot_mismatch = 0;
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> ux(0.0, cfg.room.length_m), uy(0.0, cfg.room.width_m);
    for (int t = 0; t < 50; ++t)
        slot_mismatch += oracle_sweep(cfg, cb, {ux(rng), uy(rng), 1.0}).slots_used != cb.size();

    std::size_t train_hits = 0;
    for (const auto &s : train_set)
        train_hits += model->predict_topk(s.features, 1).front() == s.label;

    const auto pts = floor_grid(cfg, 0.25, 0.5);
    const std::vector<int> ks{1, 3, cb.size()};
    const auto rows = evaluate(*model, cfg, cb, pts, ks);
    const double dt = seconds_since(t0);

    v.require(slot_mismatch == 0, "oracle sweep uses N_RU*N_b slots");
    v.require(train_hits == train_set.size(), "training top-1 = 100%");
    v.require(rows[0].topk_rate >= 0.80, "top-1 >= 80%");
    v.require(rows[1].topk_rate >= 0.95, "top-3 >= 95%");
    v.require(rows[2].mean_gain_loss_db == 0.0, "loss at full codebook exactly 0");
    v.require(dt < 60.0, "runtime < 60 s");
    v.note(fmt::format("{} training samples, train top-1 {:.2f}%, top-1 {:.2f}%, top-3 {:.2f}%, loss@{} {} dB, {:.2f} s",
                       train_set.size(), 100.0 * train_hits / train_set.size(), 100.0 * rows[0].topk_rate,
                       100.0 * rows[1].topk_rate, cb.size(), rows[2].mean_gain_loss_db, dt));
    return v;
}

Verdict criterion7()
{
    Verdict v;
    auto cfg = default_scenario();
    cfg.room.length_m = 50.0;
    cfg.room.width_m = 50.0;
    const auto t0 = Clock::now();
    const auto ds = build_dataset(cfg, 5.0 * wavelength_m(cfg.lowband_hz));
    v.require(ds.size() == 40000, "exactly 40000 samples");
    v.note(fmt::format("{} samples at {:.4f} m spacing, {:.2f} s", ds.size(), 5.0 * wavelength_m(cfg.lowband_hz),
                       seconds_since(t0)));
    return v;
}

Verdict criterion8()
{
    Verdict v;
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    bool fspl = true;
    for (int t = 0; t < 100; ++t) {
        const double f = 1e9 + 299e9 * u(rng), d = 0.1 + 100 * u(rng);
        fspl = fspl && std::abs(fspl_db(f, 2 * d) - fspl_db(f, d) - 20.0 * std::log10(2.0)) < 1e-9;
    }
    v.require(fspl, "FSPL doubling");

    bool slope = true;
    for (int t = 0; t < 100; ++t) {
        const auto amp = StageSpec::amplifier(1 + 28 * u(rng), 3.0, 30 * u(rng));
        const double p = -60 + 40 * u(rng);
        const auto a = apply_stage({p, -INFINITY, -INFINITY, 0.0}, amp, 1.0);
        const auto b = apply_stage({p + 3, -INFINITY, -INFINITY, 0.0}, amp, 1.0);
        slope = slope && std::abs(b.p_imd_dbm - a.p_imd_dbm - 9.0) < 1e-9;
    }
    v.require(slope, "third-order +9 dB slope");

    bool bound = true;
    for (int t = 0; t < 50; ++t) {
        ChainOptions o;
        o.launch_dbm = -30 + 40 * u(rng);
        for (const auto &tap : run_chain(default_scenario(), o).taps)
            bound = bound && sndr_db(tap) <= std::min(snr_db(tap), sdr_db(tap)) + 1e-12;
    }
    v.require(bound, "SNDR composition bound");

    const auto cfg = default_scenario();
    std::vector<double> xs, shifted;
    for (double x = 1.5; x <= 12.0 + 1e-9; x += 0.05) {
        xs.push_back(x);
        shifted.push_back(x + cfg.stripe.ru_spacing_m);
    }
    const auto pa = serve_and_profile(cfg, xs).at(ProfileMode::Distributed).path_gain_db;
    const auto pb = serve_and_profile(cfg, shifted).at(ProfileMode::Distributed).path_gain_db;
    bool periodic = true;
    for (std::size_t i = 0; i < xs.size(); ++i)
        periodic = periodic && std::abs(pa[i] - pb[i]) < 1e-6;
    v.require(periodic, "handover periodicity");

    const auto grid = make_x_grid(cfg, 0.25);
    const auto clean = serve_and_profile(cfg, grid).at(ProfileMode::Distributed).path_gain_db;
    bool blockage = true;
    for (int t = 0; t < 20; ++t) {
        auto b = cfg;
        b.blockers.push_back({{15 * u(rng), 6 * u(rng), 1 + 4 * u(rng)}, 0.1 + 0.5 * u(rng), 50 * u(rng)});
        const auto g = serve_and_profile(b, grid).at(ProfileMode::Distributed).path_gain_db;
        for (std::size_t i = 0; i < grid.size(); ++i)
            blockage = blockage && g[i] <= clean[i] + 1e-12;
    }
    v.require(blockage, "blockage monotonicity");

    bool suffix = true;
    for (int t = 0; t < 200; ++t) {
        auto c = default_scenario();
        std::vector<RuMode> modes;
        for (auto &ru : c.rus)
            modes.push_back(ru.mode = static_cast<RuMode>(rng() % 3));
        const auto first = std::find(modes.begin(), modes.end(), RuMode::Disabled);
        const bool ok = std::all_of(first, modes.end(), [](RuMode m) { return m == RuMode::Disabled; });
        bool accepted = true;
        try {
            validate(c);
        } catch (const ValidationError &) {
            accepted = false;
        }
        suffix = suffix && accepted == ok;
    }
    v.require(suffix, "chain-disable suffix rule");

    auto noisy = default_scenario();
    noisy.lowband.csi_snr_db = 15.0;
    noisy.seed = 8;
    const auto cb = make_codebook(noisy);
    const auto model = train(ModelKind::NearestNeighbor, build_dataset(noisy, 0.5), cb);
    const auto pts = floor_grid(noisy, 0.5, 0.5);
    std::vector<int> ks(cb.size());
    for (int k = 1; k <= cb.size(); ++k)
        ks[k - 1] = k;
    auto render = [&](const char *threads) {
        setenv("STRIPESIM_THREADS", threads, 1);
        const auto rows = evaluate(*model, noisy, cb, pts, ks);
        std::ostringstream os;
        write_metrics_csv(os, rows);
        return std::pair{rows, os.str()};
    };
    const auto [rows, first_csv] = render("1");
    bool topk = true;
    for (std::size_t i = 1; i < rows.size(); ++i)
        topk = topk && rows[i].topk_rate >= rows[i - 1].topk_rate;
    v.require(topk, "top-k monotonicity");
    const bool same = render("1").second == first_csv && render("4").second == first_csv;
    unsetenv("STRIPESIM_THREADS");
    v.require(same, "byte-identical rerun across thread counts");
    v.note("FSPL, +9 dB slope, SNDR bound, periodicity, blockage, disable rule, top-k, determinism");
    return v;
}

} // namespace

int main()
{
    const std::vector<std::function<Verdict()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                         criterion5, criterion6, criterion7, criterion8};
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i]();
        } catch (const std::exception &e) {
            v.pass = false;
            v.detail = std::string("exception: ") + e.what();
        }
        failures += !v.pass;
        fmt::print("criterion {}: {} - {}\n", i + 1, v.pass ? "PASS" : "FAIL", v.detail);
    }
    return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
