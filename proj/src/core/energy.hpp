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

#include "core/scenario.hpp"

#include <span>

namespace stripesim {

struct EnergyReport
{
    int n_active_rus = 0;
    double total_power_w = 0.0;
    double energy_per_bit_j = 0.0;

    double pj_per_bit() const { return energy_per_bit_j * 1e12; }
};

// Number of powered RUs. Disabled RUs must form a suffix of the chain;
// throws std::invalid_argument otherwise.
int active_set(std::span<const RuMode> modes);

EnergyReport report(const PowerModel &model, int n_active, double throughput_bps);

// Serving through RU k (0-based) keeps RUs 0..k powered and the rest disabled.
EnergyReport serving_report(const PowerModel &model, int serving_ru, int ru_count);

} // namespace stripesim
