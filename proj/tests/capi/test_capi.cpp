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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stripesim/stripesim.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Scenario
{
    stripesim_scenario *p = nullptr;
    Scenario() { REQUIRE(stripesim_scenario_default(&p) == STRIPESIM_OK); }
    ~Scenario() { stripesim_scenario_free(p); }
};

fs::path scratch(const char *name)
{
    const auto d = fs::temp_directory_path() / "stripesim_capi_test" / name;
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path &p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string first_line(const fs::path &p)
{
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    return line;
}

} // namespace

TEST_CASE("version and status names")
{
    CHECK(std::strlen(stripesim_version()) > 0);
    CHECK(std::string(stripesim_status_name(STRIPESIM_OK)) == "ok");
    CHECK(std::string(stripesim_status_name(STRIPESIM_E_PARSE)) != "ok");
    CHECK(stripesim_status_name(static_cast<stripesim_status>(99)) != nullptr);
}

TEST_CASE("null arguments are rejected")
{
    CHECK(stripesim_scenario_default(nullptr) == STRIPESIM_E_INVALID_ARGUMENT);
    CHECK(std::strlen(stripesim_last_error()) > 0);
    stripesim_scenario *sc = nullptr;
    CHECK(stripesim_scenario_parse(nullptr, &sc) == STRIPESIM_E_INVALID_ARGUMENT);
    CHECK(sc == nullptr);
    CHECK(stripesim_scenario_load(nullptr, &sc) == STRIPESIM_E_INVALID_ARGUMENT);
    int n = 0;
    CHECK(stripesim_scenario_ru_count(nullptr, &n) == STRIPESIM_E_INVALID_ARGUMENT);
    stripesim_scenario_free(nullptr);
    stripesim_dataset_free(nullptr);
    stripesim_model_free(nullptr);
}

TEST_CASE("parse and validation errors map to their codes")
{
    stripesim_scenario *sc = nullptr;
    CHECK(stripesim_scenario_parse("stripe:\n  bogus: 1\n", &sc) == STRIPESIM_E_PARSE);
    CHECK(std::string(stripesim_last_error()).find("bogus") != std::string::npos);
    CHECK(stripesim_scenario_parse("stripe:\n  ru_spacing_m: -1\n", &sc) == STRIPESIM_E_VALIDATION);
    CHECK(std::string(stripesim_last_error()).find("stripe.ru_spacing_m") != std::string::npos);
    CHECK(stripesim_scenario_load("/nonexistent/dir/x.yaml", &sc) == STRIPESIM_E_IO);
    CHECK(std::string(stripesim_last_error()).find("file not found") != std::string::npos);
    CHECK(sc == nullptr);
}

TEST_CASE("seed and RU count")
{
    Scenario s;
    int n = 0;
    REQUIRE(stripesim_scenario_ru_count(s.p, &n) == STRIPESIM_OK);
    CHECK(n == 10);
    REQUIRE(stripesim_scenario_set_seed(s.p, 1234) == STRIPESIM_OK);
    uint64_t seed = 0;
    REQUIRE(stripesim_scenario_seed(s.p, &seed) == STRIPESIM_OK);
    CHECK(seed == 1234);
}

TEST_CASE("serialize sizing and round trip")
{
    Scenario s;
    stripesim_scenario_set_seed(s.p, 9);
    size_t needed = 0;
    REQUIRE(stripesim_scenario_serialize(s.p, nullptr, 0, &needed) == STRIPESIM_OK);
    REQUIRE(needed > 1);
    std::vector<char> small(needed - 1);
    CHECK(stripesim_scenario_serialize(s.p, small.data(), small.size(), &needed) == STRIPESIM_E_INVALID_ARGUMENT);
    std::vector<char> buf(needed);
    REQUIRE(stripesim_scenario_serialize(s.p, buf.data(), buf.size(), &needed) == STRIPESIM_OK);
    CHECK(std::strlen(buf.data()) + 1 == needed);

    stripesim_scenario *back = nullptr;
    REQUIRE(stripesim_scenario_parse(buf.data(), &back) == STRIPESIM_OK);
    std::vector<char> again(needed);
    size_t needed2 = 0;
    REQUIRE(stripesim_scenario_serialize(back, again.data(), again.size(), &needed2) == STRIPESIM_OK);
    CHECK(std::string(again.data()) == std::string(buf.data()));
    stripesim_scenario_free(back);
}

TEST_CASE("fiber run")
{
    Scenario s;
    size_t n = 0;
    double cross = 0;
    CHECK(stripesim_fiber_run(s.p, nullptr, nullptr, 0, &n, &cross) == STRIPESIM_OK);
    CHECK(n == 11);
    std::vector<stripesim_tap> taps(n);
    CHECK(stripesim_fiber_run(s.p, nullptr, taps.data(), n - 1, &n, &cross) == STRIPESIM_E_INVALID_ARGUMENT);
    CHECK(n == 11);
    REQUIRE(stripesim_fiber_run(s.p, nullptr, taps.data(), taps.size(), &n, &cross) == STRIPESIM_OK);
    CHECK(cross == doctest::Approx(9.0));
    CHECK(taps.back().sndr_db >= 30.0);
    CHECK(taps.back().position_m == doctest::Approx(15.0));

    const double low = -40.0;
    REQUIRE(stripesim_fiber_run(s.p, &low, taps.data(), taps.size(), &n, &cross) == STRIPESIM_OK);
    CHECK(std::isnan(cross));

    const double grid[] = {-15.0, -10.0, -5.0, 0.0};
    double best = 0;
    REQUIRE(stripesim_fiber_sweep_launch(s.p, grid, 4, &best) == STRIPESIM_OK);
    CHECK((best == -10.0 || best == -5.0));
    CHECK(stripesim_fiber_sweep_launch(s.p, grid, 0, &best) == STRIPESIM_E_INVALID_ARGUMENT);
}

TEST_CASE("energy")
{
    Scenario s;
    stripesim_energy e{};
    REQUIRE(stripesim_energy_serving(s.p, 9, &e) == STRIPESIM_OK);
    CHECK(e.n_active_rus == 10);
    CHECK(e.total_w == 5.1);
    CHECK(e.pj_per_bit == 255.0);
    CHECK(stripesim_energy_serving(s.p, 10, &e) == STRIPESIM_E_INVALID_ARGUMENT);
    CHECK(stripesim_energy_serving(s.p, -1, &e) == STRIPESIM_E_INVALID_ARGUMENT);
}

TEST_CASE("csv writers produce the documented headers")
{
    Scenario s;
    const auto d = scratch("csv");
    REQUIRE(stripesim_fiber_write_csv(s.p, nullptr, (d / "fiber.csv").c_str()) == STRIPESIM_OK);
    CHECK(first_line(d / "fiber.csv") == "position_m,p_sig_dbm,p_noise_dbm,p_imd_dbm,snr_db,sdr_db,sndr_db");
    REQUIRE(stripesim_air_write_csv(s.p, 0.5, (d / "air.csv").c_str()) == STRIPESIM_OK);
    CHECK(first_line(d / "air.csv") ==
          "x_m,pg_distributed_db,serving_tx,pg_central_steered_db,pg_central_unsteered_db,los_blocked");
    REQUIRE(stripesim_energy_write_csv(s.p, 9, (d / "energy.csv").c_str()) == STRIPESIM_OK);
    CHECK(slurp(d / "energy.csv") == "n_active_rus,total_w,pj_per_bit\n10,5.100000,255.000000\n");
    const double passive = 0.0;
    REQUIRE(stripesim_endtoend_write_csv(s.p, 1.0, 0.5, &passive, 0.5, (d / "e2e.csv").c_str()) == STRIPESIM_OK);
    CHECK(first_line(d / "e2e.csv") == "x_m,serving_ru,direct_db,stripe_db");
    CHECK(stripesim_air_write_csv(s.p, 0.0, (d / "bad.csv").c_str()) == STRIPESIM_E_INVALID_ARGUMENT);
    CHECK(stripesim_air_write_csv(s.p, 0.5, "/nonexistent/dir/air.csv") == STRIPESIM_E_IO);
}

TEST_CASE("dual-band pipeline")
{
    Scenario s;
    const auto d = scratch("dualband");
    stripesim_dataset *ds = nullptr;
    REQUIRE(stripesim_dataset_build(s.p, 0.5, &ds) == STRIPESIM_OK);
    size_t n = 0;
    REQUIRE(stripesim_dataset_size(ds, &n) == STRIPESIM_OK);
    CHECK(n == 360);
    REQUIRE(stripesim_dataset_write_csv(ds, (d / "train.csv").c_str()) == STRIPESIM_OK);
    CHECK(first_line(d / "train.csv").rfind("x,y,", 0) == 0);

    stripesim_dataset *loaded = nullptr;
    REQUIRE(stripesim_dataset_load(s.p, (d / "train.csv").c_str(), &loaded) == STRIPESIM_OK);
    size_t n2 = 0;
    stripesim_dataset_size(loaded, &n2);
    CHECK(n2 == n);

    stripesim_model *m = nullptr;
    REQUIRE(stripesim_model_train_nn(s.p, loaded, &m) == STRIPESIM_OK);
    const int ks[] = {1, 3, 5};
    stripesim_metrics_row rows[3];
    REQUIRE(stripesim_dualband_evaluate(m, s.p, 0.5, ks, 3, rows) == STRIPESIM_OK);
    CHECK(rows[0].k == 1);
    CHECK(rows[0].topk_rate <= rows[1].topk_rate);
    CHECK(rows[1].topk_rate <= rows[2].topk_rate);
    CHECK(rows[2].mean_slots == 5.0);
    const int bad[] = {0};
    CHECK(stripesim_dualband_evaluate(m, s.p, 0.5, bad, 1, rows) == STRIPESIM_E_INVALID_ARGUMENT);
    REQUIRE(stripesim_dualband_eval_write_csv(m, s.p, 0.5, ks, 3, (d / "m.csv").c_str()) == STRIPESIM_OK);
    CHECK(first_line(d / "m.csv") == "k,topk_rate,mean_gain_loss_db,p95_gain_loss_db,mean_slots");

    std::ofstream(d / "broken.csv") << "x,y\n1,2\n";
    stripesim_dataset *broken = nullptr;
    CHECK(stripesim_dataset_load(s.p, (d / "broken.csv").c_str(), &broken) == STRIPESIM_E_PARSE);
    CHECK(broken == nullptr);

    stripesim_model_free(m);
    stripesim_dataset_free(loaded);
    stripesim_dataset_free(ds);
}

TEST_CASE("figure drivers write their files")
{
    Scenario s;
    const auto d = scratch("fig") / "nested";
    stripesim_fig3_summary sum{};
    REQUIRE(stripesim_reproduce_fig3(s.p, 0.05, d.c_str(), &sum) == STRIPESIM_OK);
    CHECK(fs::exists(d / "fig3_bottom.csv"));
    CHECK(fs::exists(d / "fig3_top.csv"));
    CHECK(fs::exists(d / "fig3_summary.csv"));
    CHECK(sum.crossover_m == doctest::Approx(9.0));
    CHECK(sum.distributed_p2p_db <= 6.0);
    REQUIRE(stripesim_reproduce_fig3(s.p, 0.05, d.c_str(), nullptr) == STRIPESIM_OK);
    REQUIRE(stripesim_reproduce_fig4(s.p, 0.05, d.c_str()) == STRIPESIM_OK);
    CHECK(fs::exists(d / "fig4.csv"));
    CHECK(fs::exists(d / "fig4_per_ru.csv"));
}
