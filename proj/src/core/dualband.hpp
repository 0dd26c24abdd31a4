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

// Dual-band RU/beam selection: the sub-10 GHz uplink channel is the feature,
// the best sub-THz (RU, beam) pair is the label.
//
// Learning phase: every grid point gets an exhaustive sub-THz pilot sweep
// (N_RU * N_b slots) and a low-band channel estimate. Exploitation phase: the
// learned mapping shortlists k candidates which are the only ones measured.

#include "core/airlink.hpp"
#include "core/scenario.hpp"

#include <complex>
#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace stripesim {

struct BeamLabel
{
    int ru = 0;   // index into Codebook::ru_indices
    int beam = 0; // index into the RU's beam list

    friend auto operator<=>(const BeamLabel &, const BeamLabel &) = default;
};

struct Codebook
{
    std::vector<int> ru_indices;             // chain index of each candidate RU
    std::vector<std::vector<Vec3>> beam_dirs; // global unit vectors, per RU

    int n_ru() const { return static_cast<int>(ru_indices.size()); }
    int n_beams() const { return beam_dirs.empty() ? 0 : static_cast<int>(beam_dirs.front().size()); }
    int size() const { return n_ru() * n_beams(); }
};

// Candidate RUs are the Transmit-mode RUs; beam 0 is nadir, beams 1.. sit on
// a ring at codebook.ring_offnadir_deg, uniformly spaced in azimuth from +x.
Codebook make_codebook(const ScenarioConfig &cfg);

struct LowbandChannel
{
    std::vector<std::complex<double>> h;
    Vec3 ue_position{};
};

std::vector<Vec3> lowband_antenna_positions(const ScenarioConfig &cfg);

// Image-method channel at lowband_hz: line of sight plus one reflection off
// each of the four side walls (amplitude wall_reflectivity), each path with
// amplitude 1/d and phase exp(-j 2 pi d / lambda).
LowbandChannel lowband_channel(const ScenarioConfig &cfg, const Vec3 &ue);

// Rotates h so that antenna 0 has zero phase, stacks real then imaginary
// parts and scales to unit norm. Invariant to any complex scaling of h.
std::vector<double> channel_features(std::span<const std::complex<double>> h);

// Features as the network would observe them: adds seeded complex Gaussian
// estimation noise when lowband.csi_snr_db is finite. (stream, index) select
// an independent noise draw.
std::vector<double> observed_features(const ScenarioConfig &cfg, const Vec3 &ue, std::uint64_t stream,
                                      std::uint64_t index);

double beam_path_gain(const ScenarioConfig &cfg, const Codebook &cb, const BeamLabel &label, const Vec3 &ue,
                      std::span<const Blocker> blockers);

struct SweepResult
{
    BeamLabel best;
    double best_gain_db = 0.0;
    int slots_used = 0;
};

// Exhaustive pilot sweep; ties (within 1e-9 dB) go to the smallest (ru, beam).
SweepResult oracle_sweep(const ScenarioConfig &cfg, const Codebook &cb, const Vec3 &ue,
                         std::span<const Blocker> blockers = {});

struct DualBandSample
{
    std::vector<double> features;
    BeamLabel label;
    Vec3 position{};
};

// Regular grid over the floor at terminal height, x-major ordering. Point
// (i, j) sits at ((i + offset) s, (j + offset) s) for
// i < floor(length / s), j < floor(width / s).
std::vector<Vec3> floor_grid(const ScenarioConfig &cfg, double spacing_m, double offset = 0.0);

// Labels come from the blocker-free sweep.
std::vector<DualBandSample> build_dataset(const ScenarioConfig &cfg, double spacing_m);
std::vector<DualBandSample> build_dataset(const ScenarioConfig &cfg, std::span<const Vec3> points);

class MappingModel
{
  public:
    virtual ~MappingModel() = default;
    // Distinct candidates, most likely first; length min(k, codebook size).
    virtual std::vector<BeamLabel> predict_topk(std::span<const double> features, int k) const = 0;
    virtual int codebook_size() const = 0;
};

// Euclidean nearest neighbour over stored samples. Candidates are the labels
// of increasingly distant samples (ties by sample order), then any labels
// never seen in training, in (ru, beam) order.
class NearestNeighborModel final : public MappingModel
{
  public:
    NearestNeighborModel(std::vector<DualBandSample> samples, int n_ru, int n_beams);

    std::vector<BeamLabel> predict_topk(std::span<const double> features, int k) const override;
    int codebook_size() const override { return n_ru_ * n_beams_; }
    std::size_t sample_count() const { return samples_.size(); }

  private:
    std::vector<DualBandSample> samples_;
    int n_ru_;
    int n_beams_;
};

enum class ModelKind
{
    NearestNeighbor,
};

std::unique_ptr<MappingModel> train(ModelKind kind, std::vector<DualBandSample> dataset, const Codebook &cb);

struct SelectionOutcome
{
    int slots_used = 0;
    BeamLabel chosen;
    BeamLabel oracle;
    double gain_loss_db = 0.0;
};

// Shortlists k candidates from the low-band channel at ue and measures them
// (k slots). k == 1 uses the prediction directly. Achieved and oracle gains
// include the scenario's blockers.
SelectionOutcome exploit(const MappingModel &model, const ScenarioConfig &cfg, const Codebook &cb, const Vec3 &ue,
                         int k, std::uint64_t noise_index = 0);

struct MetricsRow
{
    int k = 0;
    double topk_rate = 0.0;
    double mean_gain_loss_db = 0.0;
    double p95_gain_loss_db = 0.0; // nearest-rank percentile
    double mean_slots = 0.0;
};

// Test points should be disjoint from the training grid (e.g. floor_grid with
// offset 0.5); on the training grid a nearest-neighbour model is exact.
std::vector<MetricsRow> evaluate(const MappingModel &model, const ScenarioConfig &cfg, const Codebook &cb,
                                 std::span<const Vec3> test_points, std::span<const int> k_list);

} // namespace stripesim
