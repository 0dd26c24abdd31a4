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

#include "core/energy.hpp"

#include <stdexcept>
#include <string>

namespace stripesim {

int active_set(std::span<const RuMode> modes)
{
    int active = static_cast<int>(modes.size());
    for (std::size_t i = 0; i < modes.size(); ++i) {
        if (modes[i] == RuMode::Disabled) {
            active = static_cast<int>(i);
            for (std::size_t j = i + 1; j < modes.size(); ++j)
                if (modes[j] != RuMode::Disabled)
                    throw std::invalid_argument("RU " + std::to_string(j) + " is active after disabled RU " +
                                                std::to_string(i));
            break;
        }
    }
    return active;
}

EnergyReport report(const PowerModel &model, int n_active, double throughput_bps)
{
    if (!(model.p_ru_active_w > 0.0 && model.p_cu_w > 0.0 && throughput_bps > 0.0))
        throw std::invalid_argument("power model values must be positive");
    if (n_active < 0)
        throw std::invalid_argument("active RU count must be >= 0");
    EnergyReport r;
    r.n_active_rus = n_active;
    r.total_power_w = model.p_cu_w + n_active * model.p_ru_active_w;
    r.energy_per_bit_j = r.total_power_w / throughput_bps;
    return r;
}

EnergyReport serving_report(const PowerModel &model, int serving_ru, int ru_count)
{
    if (serving_ru < 0 || serving_ru >= ru_count)
        throw std::invalid_argument("serving RU " + std::to_string(serving_ru) + " outside 0.." +
                                    std::to_string(ru_count - 1));
    return report(model, serving_ru + 1, model.throughput_bps);
}

} // namespace stripesim
