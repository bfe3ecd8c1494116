/*
 Copyright 2026 The s2track Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#ifndef S2TRACK_CLI_CONFIG_HPP
#define S2TRACK_CLI_CONFIG_HPP

#include <array>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "s2track/errors.hpp"
#include "s2track/sim.hpp"

namespace s2track::cli {

/// Configuration problem, reported with file/line context where possible.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Everything a config file can set. All blocks are optional and default
/// to the nominal setup (line reference, random initial conditions).
struct RunConfig {
  SimConfig sim;
  std::size_t runs = 100;
  std::uint64_t master_seed = 0;
};

namespace detail {

using nlohmann::json;

struct Source {
  std::string name;
  std::string text;

  /// "name:LINE: msg\n  <line text>" for the byte offset `pos`.
  std::string at(std::size_t pos, const std::string& msg) const {
    pos = std::min(pos, text.size());
    std::size_t line = 1, start = 0;
    for (std::size_t i = 0; i < pos; ++i) {
      if (text[i] == '\n') {
        ++line;
        start = i + 1;
      }
    }
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    return name + ":" + std::to_string(line) + ": " + msg + "\n  " +
           text.substr(start, end - start);
  }

  /// Best-effort location of a key: the first `"key"` after the parent's key.
  std::string at_key(std::string_view parent, std::string_view key,
                     const std::string& msg) const {
    std::size_t from = 0;
    if (!parent.empty()) {
      const auto p = text.find("\"" + std::string(parent) + "\"");
      if (p != std::string::npos) from = p;
    }
    const auto k = text.find("\"" + std::string(key) + "\"", from);
    if (k == std::string::npos) return name + ": " + msg;
    return at(k, msg);
  }
};

class Reader {
 public:
  Reader(const Source& src, const json& obj, std::string path)
      : src_(src), obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) fail(path_, "expected an object");
  }

  void allow(std::initializer_list<std::string_view> keys) const {
    for (const auto& [k, _] : obj_.items()) {
      bool ok = false;
      for (auto a : keys) ok = ok || (a == k);
      if (!ok) fail(k, "unknown key '" + qualified(k) + "'");
    }
  }

  bool has(const std::string& key) const { return obj_.contains(key); }
  const json& raw(const std::string& key) const { return obj_.at(key); }

  double number(const std::string& key, double dflt) const {
    if (!has(key)) return dflt;
    const json& v = obj_.at(key);
    if (!v.is_number()) fail(key, "'" + qualified(key) + "' must be a number");
    return v.get<double>();
  }

  std::uint64_t unsigned_int(const std::string& key, std::uint64_t dflt) const {
    if (!has(key)) return dflt;
    const json& v = obj_.at(key);
    if (!v.is_number_unsigned()) {
      fail(key, "'" + qualified(key) + "' must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }

  std::string string(const std::string& key, const std::string& dflt) const {
    if (!has(key)) return dflt;
    const json& v = obj_.at(key);
    if (!v.is_string()) fail(key, "'" + qualified(key) + "' must be a string");
    return v.get<std::string>();
  }

  std::array<double, 3> triple(const std::string& key,
                               const std::array<double, 3>& dflt) const {
    if (!has(key)) return dflt;
    const json& v = obj_.at(key);
    if (!v.is_array() || v.size() != 3) {
      fail(key, "'" + qualified(key) + "' must be an array of 3 numbers");
    }
    std::array<double, 3> out{};
    for (std::size_t i = 0; i < 3; ++i) {
      if (!v[i].is_number()) fail(key, "'" + qualified(key) + "' must hold numbers");
      out[i] = v[i].get<double>();
    }
    return out;
  }

  Vec3 vec3(const std::string& key, const Vec3& dflt) const {
    const auto t = triple(key, {dflt.x(), dflt.y(), dflt.z()});
    return {t[0], t[1], t[2]};
  }

  /// `[lo, hi]` (closed) or `{"lo":..,"hi":..,"open":bool}`.
  Interval interval(const std::string& key, const Interval& dflt) const {
    if (!has(key)) return dflt;
    const json& v = obj_.at(key);
    if (v.is_array()) {
      if (v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        fail(key, "'" + qualified(key) + "' must be [lo, hi]");
      }
      return {v[0].get<double>(), v[1].get<double>(), false};
    }
    Reader r = child(key);
    r.allow({"lo", "hi", "open"});
    Interval iv;
    iv.lo = r.number("lo", dflt.lo);
    iv.hi = r.number("hi", dflt.hi);
    iv.open = r.boolean("open", dflt.open);
    return iv;
  }

  bool boolean(const std::string& key, bool dflt) const {
    if (!has(key)) return dflt;
    const json& v = obj_.at(key);
    if (!v.is_boolean()) fail(key, "'" + qualified(key) + "' must be true or false");
    return v.get<bool>();
  }

  Reader child(const std::string& key) const {
    const json& v = obj_.at(key);
    if (!v.is_object()) fail(key, "'" + qualified(key) + "' must be an object");
    return Reader(src_, v, qualified(key));
  }

  [[noreturn]] void fail(std::string_view key, const std::string& msg) const {
    const auto dot = path_.rfind('.');
    const std::string parent = dot == std::string::npos ? path_ : path_.substr(dot + 1);
    throw ConfigError(src_.at_key(parent, key, msg));
  }

 private:
  std::string qualified(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  const Source& src_;
  const json& obj_;
  std::string path_;
};

inline reference::TrajectorySpec parse_trajectory(const Reader& r) {
  const std::string type = r.string("type", "paper_line");
  if (type == "hover") {
    r.allow({"type", "p"});
    return reference::Hover{r.vec3("p", reference::Hover{}.p)};
  }
  if (type == "paper_line") {
    r.allow({"type", "vx", "amp", "period", "alt"});
    reference::PaperLine s;
    s.vx = r.number("vx", s.vx);
    s.amp = r.number("amp", s.amp);
    s.period = r.number("period", s.period);
    s.alt = r.number("alt", s.alt);
    return s;
  }
  if (type == "figure8") {
    r.allow({"type", "amp_x", "amp_y", "period", "alt"});
    reference::Figure8 s;
    s.amp_x = r.number("amp_x", s.amp_x);
    s.amp_y = r.number("amp_y", s.amp_y);
    s.period = r.number("period", s.period);
    s.alt = r.number("alt", s.alt);
    return s;
  }
  r.fail("type", "unknown trajectory type '" + type +
                     "' (expected hover, paper_line or figure8)");
}

inline InitSpec parse_init(const Reader& r) {
  const std::string type = r.string("type", "random");
  if (type == "explicit") {
    r.allow({"type", "p0", "v0", "theta0", "phi0"});
    init::Explicit e;
    e.p0 = r.vec3("p0", e.p0);
    e.v0 = r.vec3("v0", e.v0);
    e.theta0 = r.number("theta0", e.theta0);
    e.phi0 = r.number("phi0", e.phi0);
    return e;
  }
  if (type == "random") {
    r.allow({"type", "x0", "y0", "z0", "theta0", "phi0"});
    init::Random d;
    d.x0 = r.interval("x0", d.x0);
    d.y0 = r.interval("y0", d.y0);
    d.z0 = r.interval("z0", d.z0);
    d.theta0 = r.interval("theta0", d.theta0);
    d.phi0 = r.interval("phi0", d.phi0);
    return d;
  }
  r.fail("type", "unknown init type '" + type + "' (expected explicit or random)");
}

inline ControllerVariant parse_variant(const std::string& s) {
  if (s == "proposed") return ControllerVariant::kProposed;
  if (s == "baseline") return ControllerVariant::kBaseline;
  throw ConfigError("controller must be 'proposed' or 'baseline', got '" + s + "'");
}

}  // namespace detail

/// Parses a JSON config document. Unknown keys are rejected.
inline RunConfig parse_config(const std::string& text, const std::string& name = "<config>") {
  using detail::json;
  const detail::Source src{name, text};
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(src.at(e.byte > 0 ? e.byte - 1 : 0, e.what()));
  }
  const detail::Reader root(src, doc, "");
  root.allow({"sim", "position_gains", "attitude_gains", "trajectory", "init", "campaign"});

  RunConfig out;
  SimConfig& cfg = out.sim;
  if (root.has("sim")) {
    const auto r = root.child("sim");
    r.allow({"duration", "ctrl_rate", "phys_substeps", "gravity", "controller", "seed"});
    cfg.duration = r.number("duration", cfg.duration);
    cfg.ctrl_rate = r.number("ctrl_rate", cfg.ctrl_rate);
    cfg.phys_substeps = static_cast<int>(r.unsigned_int("phys_substeps", 10));
    cfg.gravity = r.number("gravity", cfg.gravity);
    if (r.has("controller")) {
      try {
        cfg.variant = detail::parse_variant(r.string("controller", "proposed"));
      } catch (const ConfigError& e) {
        r.fail("controller", e.what());
      }
    }
    cfg.seed = r.unsigned_int("seed", cfg.seed);
  }
  std::array<double, 3> kp{4.0, 4.0, 4.5}, kd{2.0, 2.0, 3.0};
  if (root.has("position_gains")) {
    const auto r = root.child("position_gains");
    r.allow({"kp", "kd"});
    kp = r.triple("kp", kp);
    kd = r.triple("kd", kd);
  }
  try {
    cfg.gains.position = PositionGains::from_axes(kp, kd);
  } catch (const NonHurwitz& e) {
    root.fail("position_gains", e.what());
  }
  if (root.has("attitude_gains")) {
    const auto r = root.child("attitude_gains");
    r.allow({"k1", "k2", "c", "heading_rate"});
    auto& a = cfg.gains.attitude;
    a.k1 = r.number("k1", a.k1);
    a.k2 = r.number("k2", a.k2);
    a.c = r.number("c", a.c);
    a.heading_rate = r.number("heading_rate", a.heading_rate);
  }
  if (root.has("trajectory")) cfg.trajectory = detail::parse_trajectory(root.child("trajectory"));
  if (root.has("init")) cfg.init = detail::parse_init(root.child("init"));
  if (root.has("campaign")) {
    const auto r = root.child("campaign");
    r.allow({"runs", "master_seed"});
    out.runs = static_cast<std::size_t>(r.unsigned_int("runs", out.runs));
    out.master_seed = r.unsigned_int("master_seed", out.master_seed);
  }
  try {
    cfg.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(name + ": " + e.what());
  }
  return out;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

}  // namespace s2track::cli

#endif  // S2TRACK_CLI_CONFIG_HPP
