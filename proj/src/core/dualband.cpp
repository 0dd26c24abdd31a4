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

#include "core/dualband.hpp"

#include "core/parallel.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace stripesim {

namespace {

constexpr double kTieToleranceDb = 1e-9;

} // namespace

Codebook make_codebook(const ScenarioConfig &cfg)
{
    Codebook cb;
    cb.ru_indices = transmitter_indices(cfg);
    const int nb = cfg.codebook.n_beams;
    const double off = cfg.codebook.ring_offnadir_deg * kPi / 180.0;
    std::vector<Vec3> dirs{{0.0, 0.0, -1.0}};
    for (int j = 0; j + 1 < nb; ++j) {
        const double az = 2.0 * kPi * j / (nb - 1);
        dirs.push_back({std::sin(off) * std::cos(az), std::sin(off) * std::sin(az), -std::cos(off)});
    }
    cb.beam_dirs.assign(cb.ru_indices.size(), dirs);
    return cb;
}

std::vector<Vec3> lowband_antenna_positions(const ScenarioConfig &cfg)
{
    const double d = wavelength_m(cfg.lowband_hz) / 2.0;
    const Vec3 centre = lowband_ap_position(cfg);
    const int nx = cfg.lowband.n_x;
    const int ny = cfg.lowband.n_y;
    std::vector<Vec3> out;
    out.reserve(static_cast<std::size_t>(nx) * ny);
    for (int n = 0; n < ny; ++n)
        for (int m = 0; m < nx; ++m)
            out.push_back(centre + Vec3{(m - 0.5 * (nx - 1)) * d, (n - 0.5 * (ny - 1)) * d, 0.0});
    return out;
}

LowbandChannel lowband_channel(const ScenarioConfig &cfg, const Vec3 &ue)
{
    if (!cfg.room.contains(ue))
        throw std::invalid_argument("terminal position lies outside the room");
    const double lambda = wavelength_m(cfg.lowband_hz);
    const double k = 2.0 * kPi / lambda;
    const double rho = cfg.room.wall_reflectivity;
    const double len = cfg.room.length_m;
    const double wid = cfg.room.width_m;

    struct Source
    {
        Vec3 pos;
        double amp;
    };
    const Source sources[] = {
        {ue, 1.0},
        {{-ue.x, ue.y, ue.z}, rho},
        {{2.0 * len - ue.x, ue.y, ue.z}, rho},
        {{ue.x, -ue.y, ue.z}, rho},
        {{ue.x, 2.0 * wid - ue.y, ue.z}, rho},
    };

    LowbandChannel ch;
    ch.ue_position = ue;
    for (const auto &ant : lowband_antenna_positions(cfg)) {
        std::complex<double> acc{0.0, 0.0};
        for (const auto &src : sources) {
            if (src.amp == 0.0)
                continue;
            const double d = distance(src.pos, ant);
            acc += src.amp / d * std::polar(1.0, -k * d);
        }
        ch.h.push_back(acc);
    }
    return ch;
}

std::vector<double> channel_features(std::span<const std::complex<double>> h)
{
    const std::size_t m = h.size();
    std::complex<double> rot{1.0, 0.0};
    if (m > 0 && std::abs(h[0]) > 0.0)
        rot = std::conj(h[0]) / std::abs(h[0]);
    std::vector<double> f(2 * m);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const auto v = h[i] * rot;
        f[i] = v.real();
        f[m + i] = v.imag();
        norm2 += std::norm(v);
    }
    const double norm = std::sqrt(norm2);
    if (norm > 0.0)
        for (auto &x : f)
            x /= norm;
    return f;
}

std::vector<double> observed_features(const ScenarioConfig &cfg, const Vec3 &ue, std::uint64_t stream,
                                      std::uint64_t index)
{
    auto ch = lowband_channel(cfg, ue);
    if (std::isfinite(cfg.lowband.csi_snr_db)) {
        double power = 0.0;
        for (const auto &v : ch.h)
            power += std::norm(v);
        power /= static_cast<double>(ch.h.size());
        const double sigma = std::sqrt(power / db_to_linear(cfg.lowband.csi_snr_db) / 2.0);
        std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                          static_cast<std::uint32_t>(index >> 32)};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> gauss(0.0, sigma);
        for (auto &v : ch.h) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            v += std::complex<double>{re, im};
        }
    }
    return channel_features(ch.h);
}

double beam_path_gain(const ScenarioConfig &cfg, const Codebook &cb, const BeamLabel &label, const Vec3 &ue,
                      std::span<const Blocker> blockers)
{
    Transmitter tx = ru_transmitter(cfg, cb.ru_indices.at(label.ru));
    tx.beam_dir = cb.beam_dirs.at(label.ru).at(label.beam);
    return link_path_gain(tx, ue, cfg, blockers).path_gain_db;
}

SweepResult oracle_sweep(const ScenarioConfig &cfg, const Codebook &cb, const Vec3 &ue,
                         std::span<const Blocker> blockers)
{
    if (cb.size() == 0)
        throw std::invalid_argument("codebook is empty");
    SweepResult res;
    res.best_gain_db = -INFINITY;
    bool first = true;
    for (int r = 0; r < cb.n_ru(); ++r) {
        for (int b = 0; b < cb.n_beams(); ++b) {
            const double g = beam_path_gain(cfg, cb, {r, b}, ue, blockers);
            ++res.slots_used;
            if (first || g > res.best_gain_db + kTieToleranceDb) {
                res.best = {r, b};
                res.best_gain_db = g;
                first = false;
            }
        }
    }
    return res;
}

std::vector<Vec3> floor_grid(const ScenarioConfig &cfg, double spacing_m, double offset)
{
    if (!(spacing_m > 0.0))
        throw std::invalid_argument("grid spacing must be > 0");
    const int nx = static_cast<int>(std::floor(cfg.room.length_m / spacing_m + 1e-9));
    const int ny = static_cast<int>(std::floor(cfg.room.width_m / spacing_m + 1e-9));
    std::vector<Vec3> pts;
    pts.reserve(static_cast<std::size_t>(std::max(nx, 0)) * std::max(ny, 0));
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            pts.push_back({(i + offset) * spacing_m, (j + offset) * spacing_m, cfg.terminal.position.z});
    return pts;
}

std::vector<DualBandSample> build_dataset(const ScenarioConfig &cfg, std::span<const Vec3> points)
{
    const Codebook cb = make_codebook(cfg);
    std::vector<DualBandSample> out(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
        out[i].position = points[i];
        out[i].features = observed_features(cfg, points[i], 0, i);
        out[i].label = oracle_sweep(cfg, cb, points[i]).best;
    });
    return out;
}

std::vector<DualBandSample> build_dataset(const ScenarioConfig &cfg, double spacing_m)
{
    const auto pts = floor_grid(cfg, spacing_m);
    return build_dataset(cfg, pts);
}

NearestNeighborModel::NearestNeighborModel(std::vector<DualBandSample> samples, int n_ru, int n_beams)
    : samples_(std::move(samples)), n_ru_(n_ru), n_beams_(n_beams)
{
    if (samples_.empty())
        throw std::invalid_argument("cannot train on an empty dataset");
    for (const auto &s : samples_) {
        if (s.label.ru < 0 || s.label.ru >= n_ru_ || s.label.beam < 0 || s.label.beam >= n_beams_)
            throw std::invalid_argument("sample label outside the codebook");
        if (s.features.size() != samples_.front().features.size())
            throw std::invalid_argument("inconsistent feature lengths in dataset");
    }
}

std::vector<BeamLabel> NearestNeighborModel::predict_topk(std::span<const double> features, int k) const
{
    if (k < 1)
        throw std::invalid_argument("k must be >= 1");
    if (features.size() != samples_.front().features.size())
        throw std::invalid_argument("feature length does not match the training data");
    const int want = std::min(k, codebook_size());

    std::vector<double> dist(samples_.size());
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        double acc = 0.0;
        const auto &f = samples_[i].features;
        for (std::size_t d = 0; d < f.size(); ++d) {
            const double diff = f[d] - features[d];
            acc += diff * diff;
        }
        dist[i] = acc;
    }
    std::vector<std::size_t> order(samples_.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });

    std::vector<char> seen(static_cast<std::size_t>(codebook_size()), 0);
    std::vector<BeamLabel> out;
    out.reserve(want);
    for (std::size_t idx : order) {
        if (static_cast<int>(out.size()) == want)
            break;
        const auto &l = samples_[idx].label;
        char &flag = seen[static_cast<std::size_t>(l.ru * n_beams_ + l.beam)];
        if (!flag) {
            flag = 1;
            out.push_back(l);
        }
    }
    for (int flat = 0; flat < codebook_size() && static_cast<int>(out.size()) < want; ++flat) {
        if (!seen[flat])
            out.push_back({flat / n_beams_, flat % n_beams_});
    }
    return out;
}

std::unique_ptr<MappingModel> train(ModelKind kind, std::vector<DualBandSample> dataset, const Codebook &cb)
{
    switch (kind) {
    case ModelKind::NearestNeighbor:
        return std::make_unique<NearestNeighborModel>(std::move(dataset), cb.n_ru(), cb.n_beams());
    }
    throw std::invalid_argument("unknown model kind");
}

namespace {

struct Shortlist
{
    std::vector<BeamLabel> candidates;
    std::vector<double> gains; // with blockers
    SweepResult oracle;
};

Shortlist shortlist(const MappingModel &model, const ScenarioConfig &cfg, const Codebook &cb, const Vec3 &ue,
                    int k, std::uint64_t stream, std::uint64_t index)
{
    Shortlist s;
    s.candidates = model.predict_topk(observed_features(cfg, ue, stream, index), k);
    for (const auto &c : s.candidates)
        s.gains.push_back(beam_path_gain(cfg, cb, c, ue, cfg.blockers));
    s.oracle = oracle_sweep(cfg, cb, ue, cfg.blockers);
    return s;
}

// Best of the first n measured candidates; ties to the smaller label.
SelectionOutcome select_prefix(const Shortlist &s, std::size_t n)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (s.gains[i] > s.gains[best] + kTieToleranceDb ||
            (std::abs(s.gains[i] - s.gains[best]) <= kTieToleranceDb && s.candidates[i] < s.candidates[best]))
            best = i;
    }
    SelectionOutcome out;
    out.slots_used = static_cast<int>(n);
    out.chosen = s.candidates[best];
    out.oracle = s.oracle.best;
    out.gain_loss_db = out.chosen == out.oracle ? 0.0 : std::max(0.0, s.oracle.best_gain_db - s.gains[best]);
    return out;
}

} // namespace

SelectionOutcome exploit(const MappingModel &model, const ScenarioConfig &cfg, const Codebook &cb, const Vec3 &ue,
                         int k, std::uint64_t noise_index)
{
    if (k < 1)
        throw std::invalid_argument("k must be >= 1");
    const auto s = shortlist(model, cfg, cb, ue, k, 1, noise_index);
    return select_prefix(s, s.candidates.size());
}

std::vector<MetricsRow> evaluate(const MappingModel &model, const ScenarioConfig &cfg, const Codebook &cb,
                                 std::span<const Vec3> test_points, std::span<const int> k_list)
{
    if (test_points.empty())
        throw std::invalid_argument("test grid is empty");
    if (k_list.empty())
        throw std::invalid_argument("k list is empty");
    int k_max = 0;
    for (int k : k_list) {
        if (k < 1)
            throw std::invalid_argument("k must be >= 1");
        k_max = std::max(k_max, k);
    }

    // Candidate lists are nested in k, so one shortlist per point serves all k.
    std::vector<Shortlist> lists(test_points.size());
    parallel_for(test_points.size(), [&](std::size_t i) {
        lists[i] = shortlist(model, cfg, cb, test_points[i], k_max, 1, i);
    });

    std::vector<MetricsRow> rows;
    for (int k : k_list) {
        MetricsRow row;
        row.k = k;
        std::vector<double> losses;
        losses.reserve(lists.size());
        std::size_t contained = 0;
        double slots = 0.0;
        for (const auto &s : lists) {
            const std::size_t n = std::min<std::size_t>(k, s.candidates.size());
            const auto out = select_prefix(s, n);
            if (std::find(s.candidates.begin(), s.candidates.begin() + n, s.oracle.best) != s.candidates.begin() + n)
                ++contained;
            losses.push_back(out.gain_loss_db);
            slots += out.slots_used;
        }
        const double count = static_cast<double>(lists.size());
        row.topk_rate = contained / count;
        row.mean_gain_loss_db = std::accumulate(losses.begin(), losses.end(), 0.0) / count;
        std::sort(losses.begin(), losses.end());
        const auto rank = static_cast<std::size_t>(std::ceil(0.95 * count));
        row.p95_gain_loss_db = losses[std::max<std::size_t>(rank, 1) - 1];
        row.mean_slots = slots / count;
        rows.push_back(row);
    }
    return rows;
}

} // namespace stripesim
