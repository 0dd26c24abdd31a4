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

// stripe-sim: command-line front end over the stripesim C API.
//
// Exit codes: 0 success, 1 usage error, 2 runtime error.
// Every run writes a manifest next to its output; `stripe-sim replay`
// re-executes one from the recorded scenario snapshot.

#include "stripesim/stripesim.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct RunFailure
{
    stripesim_status status;
    std::string message;
};

void check(stripesim_status st)
{
    if (st != STRIPESIM_OK)
        throw RunFailure{st, stripesim_last_error()};
}

[[noreturn]] void fail(std::string msg) { throw RunFailure{STRIPESIM_E_INVALID_ARGUMENT, std::move(msg)}; }

struct ScenarioDeleter
{
    void operator()(stripesim_scenario *p) const { stripesim_scenario_free(p); }
};
struct DatasetDeleter
{
    void operator()(stripesim_dataset *p) const { stripesim_dataset_free(p); }
};
struct ModelDeleter
{
    void operator()(stripesim_model *p) const { stripesim_model_free(p); }
};
using ScenarioPtr = std::unique_ptr<stripesim_scenario, ScenarioDeleter>;
using DatasetPtr = std::unique_ptr<stripesim_dataset, DatasetDeleter>;
using ModelPtr = std::unique_ptr<stripesim_model, ModelDeleter>;

ScenarioPtr load(const std::optional<std::string> &path)
{
    stripesim_scenario *sc = nullptr;
    check(path ? stripesim_scenario_load(path->c_str(), &sc) : stripesim_scenario_default(&sc));
    return ScenarioPtr(sc);
}

ScenarioPtr parse(const std::string &text)
{
    stripesim_scenario *sc = nullptr;
    check(stripesim_scenario_parse(text.c_str(), &sc));
    return ScenarioPtr(sc);
}

std::string snapshot(const stripesim_scenario *sc)
{
    size_t need = 0;
    check(stripesim_scenario_serialize(sc, nullptr, 0, &need));
    std::string buf(need, '\0');
    check(stripesim_scenario_serialize(sc, buf.data(), buf.size(), &need));
    buf.resize(need - 1);
    return buf;
}

// One subcommand invocation, reduced to what is needed to replay it.
struct Run
{
    std::string subcommand;
    json params = json::object();
    std::string out;
};

bool writes_directory(const std::string &sub) { return sub == "reproduce-fig3" || sub == "reproduce-fig4"; }

std::vector<std::string> output_paths(const Run &run)
{
    namespace fs = std::filesystem;
    if (run.subcommand == "reproduce-fig3")
        return {(fs::path(run.out) / "fig3_bottom.csv").string(), (fs::path(run.out) / "fig3_top.csv").string(),
                (fs::path(run.out) / "fig3_summary.csv").string()};
    if (run.subcommand == "reproduce-fig4")
        return {(fs::path(run.out) / "fig4.csv").string(), (fs::path(run.out) / "fig4_per_ru.csv").string()};
    return {run.out};
}

std::string manifest_path(const Run &run)
{
    if (writes_directory(run.subcommand))
        return (std::filesystem::path(run.out) / "manifest.json").string();
    return run.out + ".manifest.json";
}

std::vector<int> k_list(const json &params)
{
    std::vector<int> ks = params.at("k").get<std::vector<int>>();
    if (ks.empty())
        fail("--k needs at least one value");
    return ks;
}

void print_fig3(const stripesim_fig3_summary &s)
{
    if (std::isnan(s.crossover_m))
        std::printf("crossover_m: none\n");
    else
        std::printf("crossover_m: %.3f\n", s.crossover_m);
    std::printf("end_sndr_db: %.3f\n", s.end_sndr_db);
    std::printf("distributed_p2p_db: %.3f\n", s.distributed_p2p_db);
    std::printf("central_unsteered_p2p_db: %.3f\n", s.central_unsteered_p2p_db);
    std::printf("single_patch_edge_db: %.3f\n", s.single_patch_edge_db);
    std::printf("central_steered_edge_db: %.3f\n", s.central_steered_edge_db);
}

void execute(const Run &run, stripesim_scenario *sc)
{
    const auto &p = run.params;
    const char *out = run.out.c_str();
    const std::string &sub = run.subcommand;

    if (sub == "fiber") {
        std::optional<double> launch;
        if (p.contains("launch_dbm"))
            launch = p.at("launch_dbm").get<double>();
        check(stripesim_fiber_write_csv(sc, launch ? &*launch : nullptr, out));
    } else if (sub == "air") {
        check(stripesim_air_write_csv(sc, p.at("grid_step").get<double>(), out));
    } else if (sub == "endtoend") {
        std::optional<double> booster;
        if (p.contains("booster_gain_db"))
            booster = p.at("booster_gain_db").get<double>();
        check(stripesim_endtoend_write_csv(sc, p.at("fiber_atten").get<double>(), p.at("coupler_loss").get<double>(),
                                           booster ? &*booster : nullptr, p.at("grid_step").get<double>(), out));
    } else if (sub == "dualband train") {
        stripesim_dataset *ds = nullptr;
        check(stripesim_dataset_build(sc, p.at("grid_step").get<double>(), &ds));
        DatasetPtr hold(ds);
        check(stripesim_dataset_write_csv(ds, out));
    } else if (sub == "dualband eval") {
        stripesim_dataset *ds = nullptr;
        if (p.contains("dataset"))
            check(stripesim_dataset_load(sc, p.at("dataset").get<std::string>().c_str(), &ds));
        else
            check(stripesim_dataset_build(sc, p.at("grid_step").get<double>(), &ds));
        DatasetPtr hold_ds(ds);
        stripesim_model *m = nullptr;
        check(stripesim_model_train_nn(sc, ds, &m));
        ModelPtr hold_m(m);
        const auto ks = k_list(p);
        check(stripesim_dualband_eval_write_csv(m, sc, p.at("grid_step").get<double>(), ks.data(), ks.size(), out));
    } else if (sub == "energy") {
        check(stripesim_energy_write_csv(sc, p.at("serving_ru").get<int>(), out));
    } else if (sub == "reproduce-fig3") {
        stripesim_fig3_summary s{};
        check(stripesim_reproduce_fig3(sc, p.at("grid_step").get<double>(), out, &s));
        print_fig3(s);
    } else if (sub == "reproduce-fig4") {
        check(stripesim_reproduce_fig4(sc, p.at("grid_step").get<double>(), out));
    } else {
        fail("unknown subcommand '" + sub + "'");
    }
}

void write_manifest(const Run &run, const stripesim_scenario *sc)
{
    uint64_t seed = 0;
    check(stripesim_scenario_seed(sc, &seed));
    json m;
    m["tool"] = "stripe-sim";
    m["version"] = stripesim_version();
    m["subcommand"] = run.subcommand;
    m["parameters"] = run.params;
    m["seed"] = seed;
    m["config"] = snapshot(sc);
    m["out"] = run.out;
    m["outputs"] = output_paths(run);

    const auto path = manifest_path(run);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw RunFailure{STRIPESIM_E_IO, "i/o error: cannot write manifest '" + path + "'"};
    f << m.dump(2) << '\n';
}

void run_fresh(const Run &run, const std::optional<std::string> &config, const std::optional<uint64_t> &seed)
{
    auto sc = load(config);
    if (run.out.empty())
        fail("--out is required");
    if (seed)
        check(stripesim_scenario_set_seed(sc.get(), *seed));
    execute(run, sc.get());
    write_manifest(run, sc.get());
}

void run_replay(const std::string &manifest, const std::optional<std::string> &out_override)
{
    std::ifstream f(manifest);
    if (!f)
        throw RunFailure{STRIPESIM_E_IO, "i/o error: cannot open manifest '" + manifest + "': file not found"};
    json m;
    try {
        m = json::parse(f);
    } catch (const json::exception &e) {
        throw RunFailure{STRIPESIM_E_PARSE, std::string("parse error: manifest: ") + e.what()};
    }
    Run run;
    std::string config;
    uint64_t seed = 0;
    try {
        run.subcommand = m.at("subcommand").get<std::string>();
        run.params = m.at("parameters");
        run.out = m.at("out").get<std::string>();
        config = m.at("config").get<std::string>();
        seed = m.at("seed").get<uint64_t>();
    } catch (const json::exception &e) {
        throw RunFailure{STRIPESIM_E_PARSE, std::string("parse error: manifest: ") + e.what()};
    }
    if (out_override)
        run.out = *out_override;
    auto sc = parse(config);
    check(stripesim_scenario_set_seed(sc.get(), seed));
    try {
        execute(run, sc.get());
    } catch (const json::exception &e) {
        throw RunFailure{STRIPESIM_E_PARSE, std::string("parse error: manifest parameters: ") + e.what()};
    }
    write_manifest(run, sc.get());
}

struct Common
{
    std::optional<std::string> config;
    std::optional<uint64_t> seed;
    std::string out;
};

void add_common(CLI::App *cmd, Common &c, bool config_required, const char *out_help)
{
    auto *opt = cmd->add_option("--config", c.config, "Scenario file");
    if (config_required)
        opt->required();
    cmd->add_option("--seed", c.seed, "Seed (overrides the scenario file)");
    cmd->add_option("--out", c.out, out_help);
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"stripe-sim: radio-stripe simulator (fiber cascade, over-the-air coverage, dual-band beam "
                 "selection, energy).\nThreads: set STRIPESIM_THREADS (default: hardware concurrency)."};
    app.set_version_flag("--version", std::string(stripesim_version()));
    app.require_subcommand(1);

    Run run;
    Common common;

    double launch_dbm = 0.0;
    auto *fiber = app.add_subcommand("fiber", "Per-tap signal, noise and distortion along the chain");
    add_common(fiber, common, true, "Output CSV");
    auto *launch_opt = fiber->add_option("--launch-dbm", launch_dbm, "Launch power override [dBm]");

    double grid_step = 0.05;
    auto *air = app.add_subcommand("air", "Path gain versus terminal position");
    add_common(air, common, true, "Output CSV");
    air->add_option("--grid-step", grid_step, "x grid step [m]")->check(CLI::PositiveNumber);

    double fiber_atten = 3.0, coupler_loss = 3.0, booster_gain = 0.0;
    auto *e2e = app.add_subcommand("endtoend", "Fiber plus air gain of the stripe versus the central AP");
    add_common(e2e, common, false, "Output CSV");
    e2e->add_option("--fiber-atten", fiber_atten, "Fiber attenuation [dB/m]")->check(CLI::NonNegativeNumber);
    e2e->add_option("--coupler-loss", coupler_loss, "Loss per coupler [dB]")->check(CLI::NonNegativeNumber);
    auto *booster_opt =
        e2e->add_option("--booster-gain", booster_gain, "RU gain [dB]; default compensates the hop, 0 = passive");
    e2e->add_option("--grid-step", grid_step, "x grid step [m]")->check(CLI::PositiveNumber);

    auto *dual = app.add_subcommand("dualband", "Low-band assisted RU/beam selection");
    dual->require_subcommand(1);
    double db_step = 0.25;
    std::vector<int> ks{1, 3, 5};
    std::optional<std::string> dataset;
    auto *train = dual->add_subcommand("train", "Build the labelled dataset");
    add_common(train, common, true, "Dataset CSV");
    train->add_option("--grid-step", db_step, "Training grid spacing [m]")->check(CLI::PositiveNumber);
    auto *eval = dual->add_subcommand("eval", "Train nearest neighbour and score the midpoint test grid");
    add_common(eval, common, true, "Metrics CSV");
    eval->add_option("--grid-step", db_step, "Training grid spacing [m]")->check(CLI::PositiveNumber);
    eval->add_option("--k", ks, "Shortlist sizes, e.g. 1,3,5")->delimiter(',')->check(CLI::PositiveNumber);
    eval->add_option("--dataset", dataset, "Dataset CSV from `dualband train` (built in place if absent)");

    int serving_ru = 0;
    auto *energy = app.add_subcommand("energy", "Stripe power when serving through one RU");
    add_common(energy, common, true, "Output CSV");
    energy->add_option("--serving-ru", serving_ru, "Serving RU, 0-based")->required();

    double fig_step = 0.05;
    auto *fig3 = app.add_subcommand("reproduce-fig3", "Chain budget and coverage profiles (default scenario)");
    add_common(fig3, common, false, "Output directory");
    fig3->add_option("--grid-step", fig_step, "x grid step [m]")->check(CLI::PositiveNumber);
    auto *fig4 = app.add_subcommand("reproduce-fig4", "End-to-end gain for several fiber technologies");
    add_common(fig4, common, false, "Output directory");
    fig4->add_option("--grid-step", fig_step, "x grid step [m]")->check(CLI::PositiveNumber);

    std::string manifest;
    std::optional<std::string> replay_out;
    auto *replay = app.add_subcommand("replay", "Re-run a manifest");
    replay->add_option("manifest", manifest, "Manifest JSON")->required();
    replay->add_option("--out", replay_out, "Write to this output instead of the recorded one");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (replay->parsed()) {
            run_replay(manifest, replay_out);
            return kExitOk;
        }

        run.out = common.out;
        if (fiber->parsed()) {
            run.subcommand = "fiber";
            if (launch_opt->count())
                run.params["launch_dbm"] = launch_dbm;
        } else if (air->parsed()) {
            run.subcommand = "air";
            run.params["grid_step"] = grid_step;
        } else if (e2e->parsed()) {
            run.subcommand = "endtoend";
            run.params["fiber_atten"] = fiber_atten;
            run.params["coupler_loss"] = coupler_loss;
            run.params["grid_step"] = grid_step;
            if (booster_opt->count())
                run.params["booster_gain_db"] = booster_gain;
        } else if (train->parsed()) {
            run.subcommand = "dualband train";
            run.params["grid_step"] = db_step;
        } else if (eval->parsed()) {
            run.subcommand = "dualband eval";
            run.params["grid_step"] = db_step;
            run.params["k"] = ks;
            if (dataset)
                run.params["dataset"] = *dataset;
        } else if (energy->parsed()) {
            run.subcommand = "energy";
            run.params["serving_ru"] = serving_ru;
        } else if (fig3->parsed()) {
            run.subcommand = "reproduce-fig3";
            run.params["grid_step"] = fig_step;
        } else if (fig4->parsed()) {
            run.subcommand = "reproduce-fig4";
            run.params["grid_step"] = fig_step;
        }
        run_fresh(run, common.config, common.seed);
    } catch (const RunFailure &f) {
        std::cerr << "stripe-sim: error: " << f.message << '\n';
        return f.status == STRIPESIM_E_INVALID_ARGUMENT ? kExitUsage : kExitRuntime;
    } catch (const std::exception &e) {
        std::cerr << "stripe-sim: error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}
