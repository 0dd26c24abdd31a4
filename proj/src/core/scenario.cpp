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

#include "core/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

namespace stripesim {

namespace {

int line_of(const YAML::Node &n) { return n.Mark().is_null() ? 0 : n.Mark().line + 1; }

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

// One mapping in the scenario file. Records which keys were consumed so that
// typos surface as errors instead of silently falling back to defaults.
class Section
{
  public:
    Section(YAML::Node node, std::string path) : node_(std::move(node)), path_(std::move(path))
    {
        if (node_ && !node_.IsNull() && !node_.IsMap())
            throw ParseError("'" + path_ + "' must be a mapping", line_of(node_));
    }

    bool has(const char *key) const { return node_ && node_.IsMap() && node_[key]; }

    YAML::Node raw(const char *key)
    {
        used_.insert(key);
        return node_[key];
    }

    template <typename T> void get(const char *key, T &out)
    {
        if (!has(key))
            return;
        out = convert<T>(raw(key), qualified(key));
    }

    template <typename T> void get(const char *key, std::optional<T> &out)
    {
        if (!has(key))
            return;
        out = convert<T>(raw(key), qualified(key));
    }

    Section child(const char *key)
    {
        if (!has(key))
            return Section(YAML::Node(), qualified(key));
        return Section(raw(key), qualified(key));
    }

    void finish() const
    {
        if (!node_ || !node_.IsMap())
            return;
        for (const auto &kv : node_) {
            const auto key = kv.first.as<std::string>();
            if (!used_.count(key))
                throw ParseError("unknown key '" + qualified(key.c_str()) + "'", line_of(kv.first));
        }
    }

    std::string qualified(const char *key) const { return path_.empty() ? key : path_ + "." + key; }

    template <typename T> static T convert(const YAML::Node &n, const std::string &name);

  private:
    YAML::Node node_;
    std::string path_;
    std::set<std::string> used_;
};

template <typename T> T Section::convert(const YAML::Node &n, const std::string &name)
{
    if constexpr (std::is_same_v<T, Vec3>) {
        if (!n.IsSequence() || n.size() != 3)
            throw ParseError("'" + name + "' must be a list of three numbers", line_of(n));
        return {convert<double>(n[0], name), convert<double>(n[1], name), convert<double>(n[2], name)};
    } else if constexpr (std::is_same_v<T, RuMode>) {
        const auto s = lower(convert<std::string>(n, name));
        if (s == "transmit")
            return RuMode::Transmit;
        if (s == "booster")
            return RuMode::Booster;
        if (s == "disabled")
            return RuMode::Disabled;
        throw ParseError("'" + name + "' must be transmit, booster or disabled", line_of(n));
    } else if constexpr (std::is_same_v<T, Steering>) {
        const auto s = lower(convert<std::string>(n, name));
        if (s == "fixed_broadside")
            return Steering::FixedBroadside;
        if (s == "steered")
            return Steering::SteeredToTarget;
        throw ParseError("'" + name + "' must be fixed_broadside or steered", line_of(n));
    } else {
        if (!n.IsScalar())
            throw ParseError("'" + name + "' must be a scalar", line_of(n));
        try {
            return n.as<T>();
        } catch (const YAML::BadConversion &) {
            throw ParseError("'" + name + "' has an invalid value '" + n.Scalar() + "'", line_of(n));
        }
    }
}

void read_antenna(Section s, AntennaSpec &a)
{
    s.get("n_x", a.n_x);
    s.get("n_y", a.n_y);
    s.get("element_gain_dbi", a.element_gain_dbi);
    s.get("element_rolloff", a.element_rolloff);
    s.get("steering", a.steering);
    s.finish();
}

// "stripe.length_m: 15" at top level is shorthand for a nested mapping.
YAML::Node expand_dotted_keys(const YAML::Node &root)
{
    if (!root.IsMap())
        return root;
    YAML::Node out(YAML::NodeType::Map);
    for (const auto &kv : root) {
        const auto key = kv.first.as<std::string>();
        if (key.find('.') == std::string::npos) {
            const YAML::Node existing = std::as_const(out)[key];
            if (existing && existing.IsMap() && kv.second.IsMap()) {
                for (const auto &inner : kv.second)
                    out[key][inner.first.as<std::string>()] = inner.second;
            } else {
                out[key] = kv.second;
            }
            continue;
        }
        std::vector<std::string> parts;
        std::stringstream ss(key);
        for (std::string p; std::getline(ss, p, '.');)
            parts.push_back(p);
        YAML::Node cursor = out;
        for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
            const YAML::Node existing = std::as_const(cursor)[parts[i]];
            if (!existing)
                cursor[parts[i]] = YAML::Node(YAML::NodeType::Map);
            else if (!existing.IsMap())
                throw ParseError("key '" + key + "' conflicts with a scalar", line_of(kv.first));
            cursor.reset(cursor[parts[i]]);
        }
        cursor[parts.back()] = kv.second;
    }
    return out;
}

void check(bool ok, const char *field, const std::string &what)
{
    if (!ok)
        throw ValidationError(field, what);
}

void check_antenna(const AntennaSpec &a, const std::string &prefix)
{
    if (a.n_x < 1 || a.n_y < 1)
        throw ValidationError(prefix + ".n_x", "element counts must be >= 1");
    if (!std::isfinite(a.element_gain_dbi))
        throw ValidationError(prefix + ".element_gain_dbi", "must be finite");
    if (!(a.element_rolloff >= 0.0) || !std::isfinite(a.element_rolloff))
        throw ValidationError(prefix + ".element_rolloff", "must be finite and >= 0");
}

void emit_vec(YAML::Emitter &e, const char *key, const Vec3 &v)
{
    e << YAML::Key << key << YAML::Value << YAML::Flow << YAML::BeginSeq << v.x << v.y << v.z << YAML::EndSeq;
}

void emit_antenna(YAML::Emitter &e, const char *key, const AntennaSpec &a)
{
    e << YAML::Key << key << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "n_x" << YAML::Value << a.n_x;
    e << YAML::Key << "n_y" << YAML::Value << a.n_y;
    e << YAML::Key << "element_gain_dbi" << YAML::Value << a.element_gain_dbi;
    e << YAML::Key << "element_rolloff" << YAML::Value << a.element_rolloff;
    e << YAML::Key << "steering" << YAML::Value << to_string(a.steering);
    e << YAML::EndMap;
}

} // namespace

const char *to_string(RuMode mode)
{
    switch (mode) {
    case RuMode::Transmit:
        return "transmit";
    case RuMode::Booster:
        return "booster";
    case RuMode::Disabled:
        return "disabled";
    }
    return "?";
}

const char *to_string(Steering steering)
{
    return steering == Steering::FixedBroadside ? "fixed_broadside" : "steered";
}

int ru_count(const StripePlacement &stripe)
{
    // The epsilon absorbs representation error in e.g. 4.5 / 1.5.
    return static_cast<int>(std::floor(stripe.length_m / stripe.ru_spacing_m + 1e-9));
}

std::vector<Vec3> ru_positions(const StripePlacement &stripe)
{
    const int n = ru_count(stripe);
    std::vector<Vec3> out;
    out.reserve(n);
    for (int k = 1; k <= n; ++k)
        out.push_back(stripe.start + stripe.direction * (k * stripe.ru_spacing_m));
    return out;
}

bool is_transmit_capable(const StripePlacement &stripe, int ru_index)
{
    return (ru_index + 1) % stripe.transmit_capable_every == 0;
}

std::vector<Vec3> transmit_capable_positions(const StripePlacement &stripe)
{
    const auto all = ru_positions(stripe);
    std::vector<Vec3> out;
    for (int k = 0; k < static_cast<int>(all.size()); ++k)
        if (is_transmit_capable(stripe, k))
            out.push_back(all[k]);
    return out;
}

std::vector<int> transmitter_indices(const ScenarioConfig &cfg)
{
    std::vector<int> out;
    for (const auto &ru : cfg.rus) {
        if (ru.mode == RuMode::Disabled)
            break;
        if (ru.mode == RuMode::Transmit)
            out.push_back(ru.index);
    }
    return out;
}

Vec3 central_ap_position(const ScenarioConfig &cfg)
{
    return {cfg.room.length_m / 2.0, cfg.room.width_m / 2.0, cfg.stripe.start.z};
}

Vec3 lowband_ap_position(const ScenarioConfig &cfg)
{
    return {cfg.room.length_m / 2.0, cfg.room.width_m / 2.0, cfg.room.height_m};
}

void resolve_radio_units(ScenarioConfig &cfg)
{
    const int n = ru_count(cfg.stripe);
    const double unity = cfg.fiber.hop_loss_db(cfg.stripe.ru_spacing_m);
    cfg.rus.clear();
    cfg.rus.reserve(std::max(n, 0));
    for (int k = 0; k < n; ++k) {
        RadioUnitSpec ru;
        ru.index = k;
        ru.mode = cfg.ru_defaults.mode.value_or(is_transmit_capable(cfg.stripe, k) ? RuMode::Transmit
                                                                                    : RuMode::Booster);
        ru.tx_array = cfg.ru_defaults.tx_array;
        ru.booster_gain_db = cfg.ru_defaults.booster_gain_db.value_or(unity);
        ru.noise_figure_db = cfg.ru_defaults.noise_figure_db;
        ru.oip3_dbm = cfg.ru_defaults.oip3_dbm;
        cfg.rus.push_back(ru);
    }
}

ScenarioConfig default_scenario()
{
    ScenarioConfig cfg;
    resolve_radio_units(cfg);
    return cfg;
}

void validate(const ScenarioConfig &cfg)
{
    const auto &r = cfg.room;
    check(r.length_m > 0.0 && std::isfinite(r.length_m), "room.length_m", "must be > 0");
    check(r.width_m > 0.0 && std::isfinite(r.width_m), "room.width_m", "must be > 0");
    check(r.height_m > 0.0 && std::isfinite(r.height_m), "room.height_m", "must be > 0");
    check(r.wall_reflectivity >= 0.0 && r.wall_reflectivity <= 1.0, "room.wall_reflectivity", "must be in [0, 1]");

    const auto &s = cfg.stripe;
    check(s.length_m > 0.0 && std::isfinite(s.length_m), "stripe.length_m", "must be > 0");
    check(s.ru_spacing_m > 0.0 && s.ru_spacing_m <= s.length_m, "stripe.ru_spacing_m",
          "must satisfy 0 < ru_spacing_m <= length_m");
    check(std::abs(s.direction.norm() - 1.0) <= 1e-9, "stripe.direction", "must be a unit vector");
    check(s.transmit_capable_every >= 1, "stripe.transmit_capable_every", "must be >= 1");
    check(r.contains(s.start), "stripe.start_xyz", "must lie inside the room");
    for (const auto &p : ru_positions(s))
        check(r.contains(p), "stripe.length_m", "stripe leaves the room");

    const auto &cu = cfg.cu;
    check(std::isfinite(cu.peak_power_dbm), "cu.peak_power_dbm", "must be finite");
    check(cu.backoff_db >= 0.0 && std::isfinite(cu.backoff_db), "cu.backoff_db", "must be >= 0");
    check(cu.implementation_margin_db >= 0.0 && std::isfinite(cu.implementation_margin_db),
          "cu.implementation_margin_db", "must be >= 0");
    check(!std::isnan(cu.phase_noise_floor_dbc) && cu.phase_noise_floor_dbc < 0.0, "cu.phase_noise_floor_dbc",
          "must be < 0 dBc (use -.inf to disable)");
    check(cu.noise_figure_db >= 0.0 && std::isfinite(cu.noise_figure_db), "cu.noise_figure_db", "must be >= 0");

    check(cfg.fiber.atten_db_per_m >= 0.0 && std::isfinite(cfg.fiber.atten_db_per_m), "fiber.atten_db_per_m",
          "must be >= 0");
    check(cfg.fiber.coupler_loss_db >= 0.0 && std::isfinite(cfg.fiber.coupler_loss_db), "fiber.coupler_loss_db",
          "must be >= 0");

    check_antenna(cfg.ru_defaults.tx_array, "ru_defaults.tx_array");
    check(static_cast<int>(cfg.rus.size()) == ru_count(s), "rus", "RU roster does not match the stripe");
    bool disabled_seen = false;
    for (std::size_t k = 0; k < cfg.rus.size(); ++k) {
        const auto &ru = cfg.rus[k];
        check(ru.index == static_cast<int>(k), "rus.index", "indices must be 0..N-1 in chain order");
        check_antenna(ru.tx_array, "rus.tx_array");
        check(ru.booster_gain_db > 0.0 && ru.booster_gain_db < 30.0, "rus.booster_gain_db",
              "must be in (0, 30) dB to avoid self-oscillation");
        check(ru.noise_figure_db >= 0.0 && std::isfinite(ru.noise_figure_db), "rus.noise_figure_db", "must be >= 0");
        check(std::isfinite(ru.oip3_dbm), "rus.oip3_dbm", "must be finite");
        if (ru.mode == RuMode::Disabled)
            disabled_seen = true;
        else
            check(!disabled_seen, "rus.mode",
                  "RU " + std::to_string(k) + " is active after a disabled RU; disabling an RU disables all later ones");
    }

    check_antenna(cfg.terminal.rx_array, "terminal.rx_array");
    check(r.contains(cfg.terminal.position), "terminal.position_xyz", "must lie inside the room");
    check(cfg.terminal.speed_mps >= 0.0, "terminal.speed_mps", "must be >= 0");
    check_antenna(cfg.central_array, "central_array");

    for (const auto &b : cfg.blockers) {
        check(b.radius_m > 0.0, "blockers.radius_m", "must be > 0");
        check(b.penetration_loss_db >= 0.0, "blockers.penetration_loss_db", "must be >= 0");
    }

    check(cfg.power.p_ru_active_w > 0.0, "power.p_ru_active_w", "must be > 0");
    check(cfg.power.p_cu_w > 0.0, "power.p_cu_w", "must be > 0");
    check(cfg.power.throughput_bps > 0.0, "power.throughput_bps", "must be > 0");

    check(cfg.lowband_hz > 0.0, "lowband_hz", "must be > 0");
    check(cfg.carrier_hz > cfg.lowband_hz && std::isfinite(cfg.carrier_hz), "carrier_hz", "must exceed lowband_hz");
    check(cfg.bandwidth_hz > 0.0 && std::isfinite(cfg.bandwidth_hz), "bandwidth_hz", "must be > 0");
    check(cfg.lowband.n_x >= 1 && cfg.lowband.n_y >= 1, "lowband.n_x", "antenna counts must be >= 1");
    check(!std::isnan(cfg.lowband.csi_snr_db), "lowband.csi_snr_db", "must be a number");
    check(cfg.codebook.n_beams >= 1, "codebook.n_beams", "must be >= 1");
    check(cfg.codebook.ring_offnadir_deg >= 0.0 && cfg.codebook.ring_offnadir_deg < 90.0,
          "codebook.ring_offnadir_deg", "must be in [0, 90)");
}

ScenarioConfig parse_scenario(const std::string &text)
{
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException &e) {
        throw ParseError(e.msg, e.mark.line + 1);
    }
    if (root && !root.IsNull() && !root.IsMap())
        throw ParseError("scenario must be a mapping", line_of(root));

    ScenarioConfig cfg;
    Section top(root.IsMap() ? expand_dotted_keys(root) : YAML::Node(), "");

    top.get("seed", cfg.seed);
    top.get("carrier_hz", cfg.carrier_hz);
    top.get("lowband_hz", cfg.lowband_hz);
    top.get("bandwidth_hz", cfg.bandwidth_hz);

    {
        auto s = top.child("room");
        s.get("length_m", cfg.room.length_m);
        s.get("width_m", cfg.room.width_m);
        s.get("height_m", cfg.room.height_m);
        s.get("wall_reflectivity", cfg.room.wall_reflectivity);
        s.finish();
    }
    {
        auto s = top.child("stripe");
        s.get("start_xyz", cfg.stripe.start);
        s.get("direction", cfg.stripe.direction);
        s.get("length_m", cfg.stripe.length_m);
        s.get("ru_spacing_m", cfg.stripe.ru_spacing_m);
        s.get("transmit_capable_every", cfg.stripe.transmit_capable_every);
        s.finish();
    }
    {
        auto s = top.child("cu");
        s.get("peak_power_dbm", cfg.cu.peak_power_dbm);
        s.get("backoff_db", cfg.cu.backoff_db);
        s.get("implementation_margin_db", cfg.cu.implementation_margin_db);
        s.get("phase_noise_floor_dbc", cfg.cu.phase_noise_floor_dbc);
        s.get("noise_figure_db", cfg.cu.noise_figure_db);
        s.finish();
    }
    {
        auto s = top.child("fiber");
        s.get("atten_db_per_m", cfg.fiber.atten_db_per_m);
        s.get("coupler_loss_db", cfg.fiber.coupler_loss_db);
        s.finish();
    }
    {
        auto s = top.child("ru_defaults");
        s.get("mode", cfg.ru_defaults.mode);
        s.get("booster_gain_db", cfg.ru_defaults.booster_gain_db);
        s.get("noise_figure_db", cfg.ru_defaults.noise_figure_db);
        s.get("oip3_dbm", cfg.ru_defaults.oip3_dbm);
        read_antenna(s.child("tx_array"), cfg.ru_defaults.tx_array);
        s.finish();
    }
    {
        auto s = top.child("terminal");
        s.get("position_xyz", cfg.terminal.position);
        s.get("speed_mps", cfg.terminal.speed_mps);
        read_antenna(s.child("rx_array"), cfg.terminal.rx_array);
        s.finish();
    }
    read_antenna(top.child("central_array"), cfg.central_array);
    {
        auto s = top.child("lowband");
        s.get("n_x", cfg.lowband.n_x);
        s.get("n_y", cfg.lowband.n_y);
        s.get("csi_snr_db", cfg.lowband.csi_snr_db);
        s.finish();
    }
    {
        auto s = top.child("codebook");
        s.get("n_beams", cfg.codebook.n_beams);
        s.get("ring_offnadir_deg", cfg.codebook.ring_offnadir_deg);
        s.finish();
    }

    {
        auto s = top.child("power");
        s.get("p_ru_active_w", cfg.power.p_ru_active_w);
        s.get("p_cu_w", cfg.power.p_cu_w);
        s.get("throughput_bps", cfg.power.throughput_bps);
        s.finish();
    }

    if (top.has("blockers")) {
        auto list = top.raw("blockers");
        if (!list.IsSequence())
            throw ParseError("'blockers' must be a list", line_of(list));
        for (std::size_t i = 0; i < list.size(); ++i) {
            Section s(list[i], "blockers[" + std::to_string(i) + "]");
            Blocker b;
            s.get("center_xyz", b.center);
            s.get("radius_m", b.radius_m);
            s.get("penetration_loss_db", b.penetration_loss_db);
            s.finish();
            cfg.blockers.push_back(b);
        }
    }

    // Spacing must be sane before the roster can be sized.
    check(cfg.stripe.ru_spacing_m > 0.0 && cfg.stripe.ru_spacing_m <= cfg.stripe.length_m, "stripe.ru_spacing_m",
          "must satisfy 0 < ru_spacing_m <= length_m");
    check(cfg.stripe.transmit_capable_every >= 1, "stripe.transmit_capable_every", "must be >= 1");
    resolve_radio_units(cfg);

    if (top.has("rus")) {
        auto list = top.raw("rus");
        if (!list.IsSequence())
            throw ParseError("'rus' must be a list", line_of(list));
        for (std::size_t i = 0; i < list.size(); ++i) {
            Section s(list[i], "rus[" + std::to_string(i) + "]");
            if (!s.has("index"))
                throw ParseError("RU override needs an 'index'", line_of(list[i]));
            int index = -1;
            s.get("index", index);
            if (index < 0 || index >= static_cast<int>(cfg.rus.size()))
                throw ValidationError("rus.index", "index " + std::to_string(index) + " outside 0.." +
                                                       std::to_string(static_cast<int>(cfg.rus.size()) - 1));
            auto &ru = cfg.rus[index];
            s.get("mode", ru.mode);
            s.get("booster_gain_db", ru.booster_gain_db);
            s.get("noise_figure_db", ru.noise_figure_db);
            s.get("oip3_dbm", ru.oip3_dbm);
            if (s.has("tx_array"))
                read_antenna(s.child("tx_array"), ru.tx_array);
            s.finish();
        }
    }
    top.finish();

    validate(cfg);
    return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path &path)
{
    std::error_code ec;
    if (std::filesystem::is_directory(path, ec))
        throw IoError("cannot open scenario file '" + path.string() + "': is a directory");
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open scenario file '" + path.string() + "': file not found or unreadable");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string serialize_scenario(const ScenarioConfig &cfg)
{
    YAML::Emitter e;
    e.SetDoublePrecision(17);
    e << YAML::BeginMap;
    e << YAML::Key << "seed" << YAML::Value << cfg.seed;
    e << YAML::Key << "carrier_hz" << YAML::Value << cfg.carrier_hz;
    e << YAML::Key << "lowband_hz" << YAML::Value << cfg.lowband_hz;
    e << YAML::Key << "bandwidth_hz" << YAML::Value << cfg.bandwidth_hz;

    e << YAML::Key << "room" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "length_m" << YAML::Value << cfg.room.length_m;
    e << YAML::Key << "width_m" << YAML::Value << cfg.room.width_m;
    e << YAML::Key << "height_m" << YAML::Value << cfg.room.height_m;
    e << YAML::Key << "wall_reflectivity" << YAML::Value << cfg.room.wall_reflectivity;
    e << YAML::EndMap;

    e << YAML::Key << "stripe" << YAML::Value << YAML::BeginMap;
    emit_vec(e, "start_xyz", cfg.stripe.start);
    emit_vec(e, "direction", cfg.stripe.direction);
    e << YAML::Key << "length_m" << YAML::Value << cfg.stripe.length_m;
    e << YAML::Key << "ru_spacing_m" << YAML::Value << cfg.stripe.ru_spacing_m;
    e << YAML::Key << "transmit_capable_every" << YAML::Value << cfg.stripe.transmit_capable_every;
    e << YAML::EndMap;

    e << YAML::Key << "cu" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "peak_power_dbm" << YAML::Value << cfg.cu.peak_power_dbm;
    e << YAML::Key << "backoff_db" << YAML::Value << cfg.cu.backoff_db;
    e << YAML::Key << "implementation_margin_db" << YAML::Value << cfg.cu.implementation_margin_db;
    e << YAML::Key << "phase_noise_floor_dbc" << YAML::Value << cfg.cu.phase_noise_floor_dbc;
    e << YAML::Key << "noise_figure_db" << YAML::Value << cfg.cu.noise_figure_db;
    e << YAML::EndMap;

    e << YAML::Key << "fiber" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "atten_db_per_m" << YAML::Value << cfg.fiber.atten_db_per_m;
    e << YAML::Key << "coupler_loss_db" << YAML::Value << cfg.fiber.coupler_loss_db;
    e << YAML::EndMap;

    e << YAML::Key << "ru_defaults" << YAML::Value << YAML::BeginMap;
    if (cfg.ru_defaults.mode)
        e << YAML::Key << "mode" << YAML::Value << to_string(*cfg.ru_defaults.mode);
    if (cfg.ru_defaults.booster_gain_db)
        e << YAML::Key << "booster_gain_db" << YAML::Value << *cfg.ru_defaults.booster_gain_db;
    e << YAML::Key << "noise_figure_db" << YAML::Value << cfg.ru_defaults.noise_figure_db;
    e << YAML::Key << "oip3_dbm" << YAML::Value << cfg.ru_defaults.oip3_dbm;
    emit_antenna(e, "tx_array", cfg.ru_defaults.tx_array);
    e << YAML::EndMap;

    e << YAML::Key << "rus" << YAML::Value << YAML::BeginSeq;
    for (const auto &ru : cfg.rus) {
        e << YAML::BeginMap;
        e << YAML::Key << "index" << YAML::Value << ru.index;
        e << YAML::Key << "mode" << YAML::Value << to_string(ru.mode);
        e << YAML::Key << "booster_gain_db" << YAML::Value << ru.booster_gain_db;
        e << YAML::Key << "noise_figure_db" << YAML::Value << ru.noise_figure_db;
        e << YAML::Key << "oip3_dbm" << YAML::Value << ru.oip3_dbm;
        emit_antenna(e, "tx_array", ru.tx_array);
        e << YAML::EndMap;
    }
    e << YAML::EndSeq;

    e << YAML::Key << "terminal" << YAML::Value << YAML::BeginMap;
    emit_vec(e, "position_xyz", cfg.terminal.position);
    e << YAML::Key << "speed_mps" << YAML::Value << cfg.terminal.speed_mps;
    emit_antenna(e, "rx_array", cfg.terminal.rx_array);
    e << YAML::EndMap;

    emit_antenna(e, "central_array", cfg.central_array);

    e << YAML::Key << "lowband" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "n_x" << YAML::Value << cfg.lowband.n_x;
    e << YAML::Key << "n_y" << YAML::Value << cfg.lowband.n_y;
    e << YAML::Key << "csi_snr_db" << YAML::Value << cfg.lowband.csi_snr_db;
    e << YAML::EndMap;

    e << YAML::Key << "codebook" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "n_beams" << YAML::Value << cfg.codebook.n_beams;
    e << YAML::Key << "ring_offnadir_deg" << YAML::Value << cfg.codebook.ring_offnadir_deg;
    e << YAML::EndMap;

    e << YAML::Key << "power" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "p_ru_active_w" << YAML::Value << cfg.power.p_ru_active_w;
    e << YAML::Key << "p_cu_w" << YAML::Value << cfg.power.p_cu_w;
    e << YAML::Key << "throughput_bps" << YAML::Value << cfg.power.throughput_bps;
    e << YAML::EndMap;

    e << YAML::Key << "blockers" << YAML::Value << YAML::BeginSeq;
    for (const auto &b : cfg.blockers) {
        e << YAML::BeginMap;
        emit_vec(e, "center_xyz", b.center);
        e << YAML::Key << "radius_m" << YAML::Value << b.radius_m;
        e << YAML::Key << "penetration_loss_db" << YAML::Value << b.penetration_loss_db;
        e << YAML::EndMap;
    }
    e << YAML::EndSeq;

    e << YAML::EndMap;
    return std::string(e.c_str()) + "\n";
}

} // namespace stripesim
