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

#include <doctest.h>

#include <sstream>
#include <string>

using namespace stripesim;

namespace {

std::string first_line(const std::string &s) { return s.substr(0, s.find('\n')); }

std::size_t rows(const std::string &s)
{
    std::size_t n = 0;
    for (char c : s)
        n += c == '\n';
    return n - 1;
}

} // namespace

TEST_SUITE("reports")
{
    TEST_CASE("fiber CSV")
    {
        std::ostringstream os;
        write_fiber_csv(os, run_chain(default_scenario()));
        CHECK(first_line(os.str()) == "position_m,p_sig_dbm,p_noise_dbm,p_imd_dbm,snr_db,sdr_db,sndr_db");
        CHECK(rows(os.str()) == 11);
    }

    TEST_CASE("air and end-to-end CSV")
    {
        const auto cfg = default_scenario();
        const auto grid = make_x_grid(cfg, 0.5);
        std::ostringstream a;
        write_air_csv(a, serve_and_profile(cfg, grid));
        CHECK(first_line(a.str()) ==
              "x_m,pg_distributed_db,serving_tx,pg_central_steered_db,pg_central_unsteered_db,los_blocked");
        CHECK(rows(a.str()) == grid.size());
        std::ostringstream e;
        write_endtoend_csv(e, end_to_end_gain_profile(cfg, grid, {}));
        CHECK(first_line(e.str()) == "x_m,serving_ru,direct_db,stripe_db");
        CHECK(rows(e.str()) == grid.size());
    }

    TEST_CASE("metrics and energy CSV")
    {
        std::ostringstream m;
        const std::vector<MetricsRow> r{{1, 0.5, 1.25, 3.0, 1.0}};
        write_metrics_csv(m, r);
        CHECK(m.str() == "k,topk_rate,mean_gain_loss_db,p95_gain_loss_db,mean_slots\n"
                         "1,0.500000,1.250000,3.000000,1.000000\n");
        std::ostringstream en;
        write_energy_csv(en, report(PowerModel{}, 10, 20e9));
        CHECK(en.str() == "n_active_rus,total_w,pj_per_bit\n10,5.100000,255.000000\n");
    }

    TEST_CASE("dataset CSV round trip is exact")
    {
        auto cfg = default_scenario();
        const std::vector<Vec3> pts{{1.0, 1.0, 1.0}, {2.3, 4.1, 1.0}};
        const auto ds = build_dataset(cfg, pts);
        std::ostringstream os;
        write_dataset_csv(os, ds);
        CHECK(first_line(os.str()) ==
              "x,y,f0,f1,f2,f3,f4,f5,f6,f7,f8,f9,f10,f11,f12,f13,f14,f15,ru_label,beam_label");
        std::istringstream is(os.str());
        const auto back = read_dataset_csv(is, 1.0);
        REQUIRE(back.size() == ds.size());
        for (std::size_t i = 0; i < ds.size(); ++i) {
            CHECK(back[i].features == ds[i].features);
            CHECK(back[i].label == ds[i].label);
            CHECK(back[i].position == ds[i].position);
        }
    }

    TEST_CASE("dataset CSV errors")
    {
        auto parse = [](const std::string &text) {
            std::istringstream is(text);
            return read_dataset_csv(is, 1.0);
        };
        CHECK_THROWS_AS(parse(""), ParseError);
        CHECK_THROWS_AS(parse("a,b,c\n"), ParseError);
        CHECK_THROWS_AS(parse("x,y,g0,ru_label,beam_label\n"), ParseError);
        CHECK_THROWS_AS(parse("x,y,f0,ru_label,beam_label\n1,2,3,4\n"), ParseError);
        CHECK_THROWS_AS(parse("x,y,f0,ru_label,beam_label\n1,2,zz,0,0\n"), ParseError);
        CHECK_THROWS_AS(parse("x,y,f0,ru_label,beam_label\n1,2,0.5,0.5,0\n"), ParseError);
        CHECK(parse("x,y,f0,ru_label,beam_label\n1,2,0.5,3,1\n").front().label == BeamLabel{3, 1});
    }

    TEST_CASE("figure drivers")
    {
        const auto cfg = default_scenario();
        const auto f3 = reproduce_fig3(cfg, 0.05);
        CHECK(f3.chain.taps.size() == 11);
        CHECK(f3.single_patch_db.size() == 301);
        std::ostringstream top;
        write_fig3_top_csv(top, f3);
        CHECK(first_line(top.str()) == "x_m,pg_distributed_db,serving_tx,pg_central_steered_db,"
                                       "pg_central_unsteered_db,los_blocked,pg_distributed_single_patch_db");

        const auto f4 = reproduce_fig4(cfg, 0.05);
        REQUIRE(f4.curves.size() == 3);
        std::ostringstream per_ru;
        write_fig4_per_ru_csv(per_ru, f4);
        CHECK(rows(per_ru.str()) == 10);
        CHECK(single_patch_variant(cfg).rus[4].tx_array.n_x == 1);
    }
}
