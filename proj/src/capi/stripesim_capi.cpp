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

#include "stripesim/stripesim.h"

#include "core/reports.hpp"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>

using namespace stripesim;

struct stripesim_scenario
{
    ScenarioConfig cfg;
};

struct stripesim_dataset
{
    std::vector<DualBandSample> samples;
};

struct stripesim_model
{
    std::unique_ptr<MappingModel> model;
    Codebook codebook;
};

namespace {

thread_local std::string g_last_error;

stripesim_status fail(stripesim_status st, std::string msg)
{
    g_last_error = std::move(msg);
    return st;
}

template <typename F> stripesim_status guarded(F &&fn)
{
    try {
        fn();
        g_last_error.clear();
        return STRIPESIM_OK;
    } catch (const ParseError &e) {
        return fail(STRIPESIM_E_PARSE, std::string("parse error: ") + e.what());
    } catch (const ValidationError &e) {
        return fail(STRIPESIM_E_VALIDATION, std::string("validation error: ") + e.what());
    } catch (const IoError &e) {
        return fail(STRIPESIM_E_IO, std::string("i/o error: ") + e.what());
    } catch (const std::invalid_argument &e) {
        return fail(STRIPESIM_E_INVALID_ARGUMENT, std::string("invalid argument: ") + e.what());
    } catch (const std::out_of_range &e) {
        return fail(STRIPESIM_E_INVALID_ARGUMENT, std::string("invalid argument: ") + e.what());
    } catch (const std::exception &e) {
        return fail(STRIPESIM_E_INTERNAL, std::string("internal error: ") + e.what());
    } catch (...) {
        return fail(STRIPESIM_E_INTERNAL, "internal error: unknown exception");
    }
}

template <typename T> void require(const T *p, const char *name)
{
    if (!p)
        throw std::invalid_argument(std::string(name) + " is NULL");
}

// Renders into memory first, then writes the file in one go.
void write_file(const std::filesystem::path &path, const std::function<void(std::ostream &)> &render)
{
    std::ostringstream buf;
    render(buf);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open output file '" + path.string() + "' for writing");
    out << buf.str();
    out.close();
    if (!out)
        throw IoError("failed writing output file '" + path.string() + "'");
}

std::filesystem::path prepare_dir(const char *out_dir)
{
    require(out_dir, "out_dir");
    std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw IoError("cannot create output directory '" + dir.string() + "'");
    return dir;
}

ChainReport chain_for(const stripesim_scenario *sc, const double *launch_dbm)
{
    ChainOptions opts;
    if (launch_dbm)
        opts.launch_dbm = *launch_dbm;
    return run_chain(sc->cfg, opts);
}

std::vector<MetricsRow> run_eval(const stripesim_model *m, const stripesim_scenario *sc, double grid_step_m,
                                 const int *k, size_t n_k)
{
    require(m, "model");
    require(sc, "scenario");
    require(k, "k");
    if (n_k == 0)
        throw std::invalid_argument("k list is empty");
    const auto cb = make_codebook(sc->cfg);
    if (cb.n_ru() != m->codebook.n_ru() || cb.n_beams() != m->codebook.n_beams())
        throw std::invalid_argument("scenario codebook does not match the trained model");
    const auto pts = floor_grid(sc->cfg, grid_step_m, 0.5);
    const std::vector<int> ks(k, k + n_k);
    return evaluate(*m->model, sc->cfg, cb, pts, ks);
}

} // namespace

extern "C" {

const char *stripesim_version(void) { return STRIPESIM_VERSION; }

const char *stripesim_status_name(stripesim_status status)
{
    switch (status) {
    case STRIPESIM_OK:
        return "ok";
    case STRIPESIM_E_INVALID_ARGUMENT:
        return "invalid argument";
    case STRIPESIM_E_PARSE:
        return "parse error";
    case STRIPESIM_E_VALIDATION:
        return "validation error";
    case STRIPESIM_E_IO:
        return "i/o error";
    case STRIPESIM_E_STATE:
        return "state error";
    case STRIPESIM_E_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

const char *stripesim_last_error(void) { return g_last_error.c_str(); }

stripesim_status stripesim_scenario_load(const char *path, stripesim_scenario **out)
{
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = nullptr;
        auto sc = std::make_unique<stripesim_scenario>();
        sc->cfg = load_scenario(path);
        *out = sc.release();
    });
}

stripesim_status stripesim_scenario_parse(const char *text, stripesim_scenario **out)
{
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        *out = nullptr;
        auto sc = std::make_unique<stripesim_scenario>();
        sc->cfg = parse_scenario(text);
        *out = sc.release();
    });
}

stripesim_status stripesim_scenario_default(stripesim_scenario **out)
{
    return guarded([&] {
        require(out, "out");
        *out = new stripesim_scenario{default_scenario()};
    });
}

void stripesim_scenario_free(stripesim_scenario *sc) { delete sc; }

stripesim_status stripesim_scenario_set_seed(stripesim_scenario *sc, uint64_t seed)
{
    return guarded([&] {
        require(sc, "scenario");
        sc->cfg.seed = seed;
    });
}

stripesim_status stripesim_scenario_seed(const stripesim_scenario *sc, uint64_t *seed)
{
    return guarded([&] {
        require(sc, "scenario");
        require(seed, "seed");
        *seed = sc->cfg.seed;
    });
}

stripesim_status stripesim_scenario_ru_count(const stripesim_scenario *sc, int *count)
{
    return guarded([&] {
        require(sc, "scenario");
        require(count, "count");
        *count = static_cast<int>(sc->cfg.rus.size());
    });
}

stripesim_status stripesim_scenario_serialize(const stripesim_scenario *sc, char *buf, size_t cap, size_t *needed)
{
    return guarded([&] {
        require(sc, "scenario");
        require(needed, "needed");
        const auto text = serialize_scenario(sc->cfg);
        *needed = text.size() + 1;
        if (!buf)
            return;
        if (cap < text.size() + 1)
            throw std::invalid_argument("buffer too small for serialized scenario");
        std::memcpy(buf, text.c_str(), text.size() + 1);
    });
}

stripesim_status stripesim_fiber_run(const stripesim_scenario *sc, const double *launch_dbm, stripesim_tap *taps,
                                     size_t cap, size_t *n_taps, double *crossover_m)
{
    return guarded([&] {
        require(sc, "scenario");
        require(n_taps, "n_taps");
        const auto rep = chain_for(sc, launch_dbm);
        *n_taps = rep.taps.size();
        if (crossover_m)
            *crossover_m = rep.crossover_m.value_or(NAN);
        if (!taps)
            return;
        if (cap < rep.taps.size())
            throw std::invalid_argument("tap buffer holds " + std::to_string(cap) + ", need " +
                                        std::to_string(rep.taps.size()));
        for (std::size_t i = 0; i < rep.taps.size(); ++i) {
            const auto &t = rep.taps[i];
            taps[i] = {t.position_m, t.p_sig_dbm, t.p_noise_dbm, t.p_imd_dbm, snr_db(t), sdr_db(t), sndr_db(t)};
        }
    });
}

stripesim_status stripesim_fiber_write_csv(const stripesim_scenario *sc, const double *launch_dbm, const char *path)
{
    return guarded([&] {
        require(sc, "scenario");
        require(path, "path");
        const auto rep = chain_for(sc, launch_dbm);
        write_file(path, [&](std::ostream &os) { write_fiber_csv(os, rep); });
    });
}

stripesim_status stripesim_fiber_sweep_launch(const stripesim_scenario *sc, const double *grid_dbm, size_t n,
                                              double *best_dbm)
{
    return guarded([&] {
        require(sc, "scenario");
        require(best_dbm, "best_dbm");
        if (n > 0)
            require(grid_dbm, "grid_dbm");
        *best_dbm = sweep_launch_power(sc->cfg, std::span<const double>(grid_dbm, n));
    });
}

stripesim_status stripesim_air_write_csv(const stripesim_scenario *sc, double grid_step_m, const char *path)
{
    return guarded([&] {
        require(sc, "scenario");
        require(path, "path");
        const auto prof = serve_and_profile(sc->cfg, make_x_grid(sc->cfg, grid_step_m));
        write_file(path, [&](std::ostream &os) { write_air_csv(os, prof); });
    });
}

stripesim_status stripesim_endtoend_write_csv(const stripesim_scenario *sc, double atten_db_per_m,
                                              double coupler_loss_db, const double *booster_gain_db,
                                              double grid_step_m, const char *path)
{
    return guarded([&] {
        require(sc, "scenario");
        require(path, "path");
        FiberVariant v{atten_db_per_m, coupler_loss_db, std::nullopt};
        if (booster_gain_db)
            v.booster_gain_db = *booster_gain_db;
        const auto prof = end_to_end_gain_profile(sc->cfg, make_x_grid(sc->cfg, grid_step_m), v);
        write_file(path, [&](std::ostream &os) { write_endtoend_csv(os, prof); });
    });
}

stripesim_status stripesim_dataset_build(const stripesim_scenario *sc, double grid_step_m, stripesim_dataset **out)
{
    return guarded([&] {
        require(sc, "scenario");
        require(out, "out");
        *out = nullptr;
        auto ds = std::make_unique<stripesim_dataset>();
        ds->samples = build_dataset(sc->cfg, grid_step_m);
        *out = ds.release();
    });
}

stripesim_status stripesim_dataset_load(const stripesim_scenario *sc, const char *path, stripesim_dataset **out)
{
    return guarded([&] {
        require(sc, "scenario");
        require(path, "path");
        require(out, "out");
        *out = nullptr;
        std::ifstream in(path);
        if (!in)
            throw IoError(std::string("cannot open dataset file '") + path + "': file not found or unreadable");
        auto ds = std::make_unique<stripesim_dataset>();
        ds->samples = read_dataset_csv(in, sc->cfg.terminal.position.z);
        *out = ds.release();
    });
}

stripesim_status stripesim_dataset_write_csv(const stripesim_dataset *ds, const char *path)
{
    return guarded([&] {
        require(ds, "dataset");
        require(path, "path");
        write_file(path, [&](std::ostream &os) { write_dataset_csv(os, ds->samples); });
    });
}

stripesim_status stripesim_dataset_size(const stripesim_dataset *ds, size_t *n)
{
    return guarded([&] {
        require(ds, "dataset");
        require(n, "n");
        *n = ds->samples.size();
    });
}

void stripesim_dataset_free(stripesim_dataset *ds) { delete ds; }

stripesim_status stripesim_model_train_nn(const stripesim_scenario *sc, const stripesim_dataset *ds,
                                          stripesim_model **out)
{
    return guarded([&] {
        require(sc, "scenario");
        require(ds, "dataset");
        require(out, "out");
        *out = nullptr;
        auto m = std::make_unique<stripesim_model>();
        m->codebook = make_codebook(sc->cfg);
        m->model = train(ModelKind::NearestNeighbor, ds->samples, m->codebook);
        *out = m.release();
    });
}

void stripesim_model_free(stripesim_model *m) { delete m; }

stripesim_status stripesim_dualband_evaluate(const stripesim_model *m, const stripesim_scenario *sc,
                                             double grid_step_m, const int *k, size_t n_k,
                                             stripesim_metrics_row *rows)
{
    return guarded([&] {
        require(rows, "rows");
        const auto res = run_eval(m, sc, grid_step_m, k, n_k);
        for (std::size_t i = 0; i < res.size(); ++i)
            rows[i] = {res[i].k, res[i].topk_rate, res[i].mean_gain_loss_db, res[i].p95_gain_loss_db,
                       res[i].mean_slots};
    });
}

stripesim_status stripesim_dualband_eval_write_csv(const stripesim_model *m, const stripesim_scenario *sc,
                                                   double grid_step_m, const int *k, size_t n_k, const char *path)
{
    return guarded([&] {
        require(path, "path");
        const auto res = run_eval(m, sc, grid_step_m, k, n_k);
        write_file(path, [&](std::ostream &os) { write_metrics_csv(os, res); });
    });
}

stripesim_status stripesim_energy_serving(const stripesim_scenario *sc, int serving_ru, stripesim_energy *out)
{
    return guarded([&] {
        require(sc, "scenario");
        require(out, "out");
        const auto r = serving_report(sc->cfg.power, serving_ru, static_cast<int>(sc->cfg.rus.size()));
        *out = {r.n_active_rus, r.total_power_w, r.energy_per_bit_j, r.pj_per_bit()};
    });
}

stripesim_status stripesim_energy_write_csv(const stripesim_scenario *sc, int serving_ru, const char *path)
{
    return guarded([&] {
        require(sc, "scenario");
        require(path, "path");
        const auto r = serving_report(sc->cfg.power, serving_ru, static_cast<int>(sc->cfg.rus.size()));
        write_file(path, [&](std::ostream &os) { write_energy_csv(os, r); });
    });
}

stripesim_status stripesim_reproduce_fig3(const stripesim_scenario *sc, double grid_step_m, const char *out_dir,
                                          stripesim_fig3_summary *summary)
{
    return guarded([&] {
        require(sc, "scenario");
        const auto dir = prepare_dir(out_dir);
        const auto d = reproduce_fig3(sc->cfg, grid_step_m);
        write_file(dir / "fig3_bottom.csv", [&](std::ostream &os) { write_fiber_csv(os, d.chain); });
        write_file(dir / "fig3_top.csv", [&](std::ostream &os) { write_fig3_top_csv(os, d); });
        write_file(dir / "fig3_summary.csv", [&](std::ostream &os) { write_fig3_summary_csv(os, d.summary); });
        if (summary) {
            const auto &s = d.summary;
            *summary = {s.crossover_m.value_or(NAN), s.end_sndr_db,           s.distributed_p2p_db,
                        s.central_steered_p2p_db,     s.central_unsteered_p2p_db, s.single_patch_edge_db,
                        s.central_steered_edge_db};
        }
    });
}

stripesim_status stripesim_reproduce_fig4(const stripesim_scenario *sc, double grid_step_m, const char *out_dir)
{
    return guarded([&] {
        require(sc, "scenario");
        const auto dir = prepare_dir(out_dir);
        const auto d = reproduce_fig4(sc->cfg, grid_step_m);
        write_file(dir / "fig4.csv", [&](std::ostream &os) { write_fig4_csv(os, d); });
        write_file(dir / "fig4_per_ru.csv", [&](std::ostream &os) { write_fig4_per_ru_csv(os, d); });
    });
}

} // extern "C"
