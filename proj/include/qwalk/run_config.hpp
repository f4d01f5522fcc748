#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "qwalk/config.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/state.hpp"
#include "qwalk/types.hpp"

namespace qwalk {

using nlohmann::json;

struct OmegaAxis {
  double min = -5.0;
  double max = 5.0;
  double step = 0.25;
};

enum class InitialKind { pure, ensemble, origin_mixed };

// Fully resolved run description: walk data plus the knobs every subcommand
// shares. `initial` is already expanded to an ensemble of pure states with
// positions on the internal lattice (physical position times L).
struct RunConfig {
  WalkConfig walk;
  InitialKind initial_kind = InitialKind::origin_mixed;
  Ensemble initial;
  long n = 0;
  long k_grid = 0;
  std::uint64_t seed = 0;
  std::vector<OmegaAxis> omega;
};

namespace detail {

inline const json& field(const json& j, const char* name) {
  const auto it = j.find(name);
  if (it == j.end()) throw ConfigError(std::string("missing field '") + name + "'");
  return *it;
}

inline Complex parse_complex(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(std::string(what) + " must be a [re, im] pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

inline Rational parse_rational(const json& j, const char* what) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den") || !j["num"].is_number_integer() ||
      !j["den"].is_number_integer())
    throw ConfigError(std::string(what) + " must be a {num, den} object with integer entries");
  return Rational{j["num"].get<std::int64_t>(), j["den"].get<std::int64_t>()};
}

inline PureState parse_pure_state(const json& j, const WalkConfig& cfg) {
  const json& amps = field(j, "amplitudes");
  if (!amps.is_array() || amps.empty()) throw ConfigError("'amplitudes' must be a nonempty array");
  const std::int64_t l = cfg.scale();
  PureState st;
  for (const json& entry : amps) {
    const json& pos_j = field(entry, "position");
    if (!pos_j.is_array() || static_cast<int>(pos_j.size()) != cfg.dimension)
      throw ConfigError("'position' must list one integer per axis");
    PosKey key(cfg.dimension);
    for (int a = 0; a < cfg.dimension; ++a) {
      if (!pos_j[a].is_number_integer()) throw ConfigError("'position' entries must be integers");
      key[a] = l * pos_j[a].get<std::int64_t>();
    }
    const json& coin_j = field(entry, "coin");
    if (!coin_j.is_array() || static_cast<int>(coin_j.size()) != cfg.coin_size)
      throw ConfigError("'coin' must list one amplitude per coin state");
    Vector amp(cfg.coin_size);
    for (int c = 0; c < cfg.coin_size; ++c) amp[c] = parse_complex(coin_j[c], "coin amplitude");
    if (!st.amplitudes.emplace(std::move(key), std::move(amp)).second)
      throw ConfigError("duplicate position in 'amplitudes'");
  }
  const double nrm = std::sqrt(st.norm_sq());
  if (std::abs(nrm - 1.0) > 1e-10)
    throw ConfigError("initial state norm is " + std::to_string(nrm) + ", expected 1");
  return st;
}

}  // namespace detail

inline RunConfig parse_run_config(const json& j) {
  if (!j.is_object()) throw ConfigError("configuration root must be a JSON object");
  RunConfig rc;

  const json& dim = detail::field(j, "dimension");
  const json& cs = detail::field(j, "coin_size");
  if (!dim.is_number_integer() || !cs.is_number_integer())
    throw ConfigError("'dimension' and 'coin_size' must be integers");
  rc.walk.dimension = dim.get<int>();
  rc.walk.coin_size = cs.get<int>();

  const json& shifts = detail::field(j, "shifts");
  if (!shifts.is_array()) throw ConfigError("'shifts' must be an array");
  for (const json& row : shifts) {
    if (!row.is_array()) throw ConfigError("each shift must be an array of rationals");
    RationalVec v;
    for (const json& c : row) v.push_back(detail::parse_rational(c, "shift coordinate"));
    for (auto& r : v)
      if (r.den != 0) r.reduce_in_place();
    rc.walk.shifts.push_back(std::move(v));
  }

  const json& coin = detail::field(j, "coin");
  if (!coin.is_array() || static_cast<int>(coin.size()) != rc.walk.coin_size)
    throw ConfigError("'coin' must be an s x s array");
  rc.walk.coin = Matrix(rc.walk.coin_size, rc.walk.coin_size);
  for (int r = 0; r < rc.walk.coin_size; ++r) {
    if (!coin[r].is_array() || static_cast<int>(coin[r].size()) != rc.walk.coin_size)
      throw ConfigError("'coin' must be an s x s array");
    for (int c = 0; c < rc.walk.coin_size; ++c)
      rc.walk.coin(r, c) = detail::parse_complex(coin[r][c], "coin entry");
  }

  require_valid(rc.walk);

  const json& init = detail::field(j, "initial");
  const std::string kind = detail::field(init, "type").get<std::string>();
  if (kind == "pure") {
    rc.initial_kind = InitialKind::pure;
    rc.initial = pure_ensemble(detail::parse_pure_state(init, rc.walk));
  } else if (kind == "ensemble") {
    rc.initial_kind = InitialKind::ensemble;
    const json& members = detail::field(init, "members");
    if (!members.is_array() || members.empty()) throw ConfigError("'members' must be a nonempty array");
    double wsum = 0.0;
    for (const json& m : members) {
      const json& w = detail::field(m, "weight");
      if (!w.is_number()) throw ConfigError("'weight' must be a number");
      const double weight = w.get<double>();
      if (weight < 0.0) throw ConfigError("ensemble weights must be nonnegative");
      wsum += weight;
      rc.initial.members.push_back({weight, detail::parse_pure_state(detail::field(m, "state"), rc.walk)});
    }
    if (std::abs(wsum - 1.0) > 1e-12)
      throw ConfigError("ensemble weights sum to " + std::to_string(wsum) + ", expected 1");
  } else if (kind == "origin_mixed") {
    rc.initial_kind = InitialKind::origin_mixed;
    rc.initial = origin_mixed_ensemble(rc.walk);
  } else {
    throw ConfigError("unknown initial state type '" + kind + "'");
  }

  if (j.contains("n")) {
    if (!j["n"].is_number_integer() || j["n"].get<long>() < 0)
      throw ConfigError("'n' must be a nonnegative integer");
    rc.n = j["n"].get<long>();
  }
  if (j.contains("k_grid")) {
    if (!j["k_grid"].is_number_integer() || j["k_grid"].get<long>() < 1)
      throw ConfigError("'k_grid' must be a positive integer");
    rc.k_grid = j["k_grid"].get<long>();
  } else {
    rc.k_grid = rc.walk.dimension == 1 ? 4096 : 256;
  }
  if (j.contains("seed")) {
    const json& sd = j["seed"];
    if (!sd.is_number_unsigned() && !(sd.is_number_integer() && sd.get<std::int64_t>() >= 0))
      throw ConfigError("'seed' must be a nonnegative integer");
    rc.seed = sd.get<std::uint64_t>();
  }
  if (j.contains("omega_grid")) {
    const json& og = j["omega_grid"];
    auto parse_axis = [](const json& a) {
      if (!a.is_object() || !a.contains("min") || !a.contains("max") || !a.contains("step"))
        throw ConfigError("'omega_grid' entries must be {min, max, step} objects");
      OmegaAxis ax{a["min"].get<double>(), a["max"].get<double>(), a["step"].get<double>()};
      if (!(ax.step > 0.0) || ax.max < ax.min) throw ConfigError("'omega_grid' needs step > 0 and max >= min");
      return ax;
    };
    if (og.is_array()) {
      for (const json& a : og) rc.omega.push_back(parse_axis(a));
      if (static_cast<int>(rc.omega.size()) != rc.walk.dimension)
        throw ConfigError("'omega_grid' must list one axis per dimension");
    } else {
      rc.omega.assign(rc.walk.dimension, parse_axis(og));
    }
  } else {
    const OmegaAxis dflt = rc.walk.dimension == 1 ? OmegaAxis{-5.0, 5.0, 0.25} : OmegaAxis{-3.0, 3.0, 0.5};
    rc.omega.assign(rc.walk.dimension, dflt);
  }
  return rc;
}

inline RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  return parse_run_config(j);
}

// Cartesian product of the per-axis frequency ladders. Grids built from the
// defaults contain omega = 0 exactly.
inline std::vector<RealVector> omega_grid_points(const RunConfig& rc) {
  const int d = rc.walk.dimension;
  std::vector<std::vector<double>> axes(d);
  for (int a = 0; a < d; ++a) {
    const OmegaAxis& ax = rc.omega[a];
    const long count = static_cast<long>(std::floor((ax.max - ax.min) / ax.step + 0.5)) + 1;
    for (long i = 0; i < count; ++i) axes[a].push_back(ax.min + static_cast<double>(i) * ax.step);
  }
  std::vector<RealVector> out;
  std::vector<std::size_t> idx(d, 0);
  for (;;) {
    RealVector w(d);
    for (int a = 0; a < d; ++a) w[a] = axes[a][idx[a]];
    out.push_back(std::move(w));
    int a = d - 1;
    for (; a >= 0; --a) {
      if (++idx[a] < axes[a].size()) break;
      idx[a] = 0;
    }
    if (a < 0) break;
  }
  return out;
}

// Canonical re-serialization: rationals in lowest terms, origin_mixed kept
// symbolic, positions back in physical units. nlohmann emits doubles with
// shortest round-trip formatting, which preserves 17 significant digits.
inline json to_json(const RunConfig& rc) {
  json j;
  j["dimension"] = rc.walk.dimension;
  j["coin_size"] = rc.walk.coin_size;
  json shifts = json::array();
  for (const auto& row : rc.walk.shifts) {
    json r = json::array();
    for (const auto& c : row) {
      const Rational red = Rational::reduced(c.num, c.den);
      r.push_back(json{{"num", red.num}, {"den", red.den}});
    }
    shifts.push_back(std::move(r));
  }
  j["shifts"] = std::move(shifts);
  json coin = json::array();
  for (int r = 0; r < rc.walk.coin_size; ++r) {
    json row = json::array();
    for (int c = 0; c < rc.walk.coin_size; ++c)
      row.push_back(json::array({rc.walk.coin(r, c).real(), rc.walk.coin(r, c).imag()}));
    coin.push_back(std::move(row));
  }
  j["coin"] = std::move(coin);

  const std::int64_t l = rc.walk.scale();
  auto state_json = [&](const PureState& st) {
    json amps = json::array();
    for (const auto& [key, amp] : st.amplitudes) {
      json pos = json::array();
      for (std::int64_t x : key) pos.push_back(x / l);
      json coin_amp = json::array();
      for (int c = 0; c < rc.walk.coin_size; ++c)
        coin_amp.push_back(json::array({amp[c].real(), amp[c].imag()}));
      amps.push_back(json{{"position", std::move(pos)}, {"coin", std::move(coin_amp)}});
    }
    return json{{"amplitudes", std::move(amps)}};
  };
  switch (rc.initial_kind) {
    case InitialKind::origin_mixed:
      j["initial"] = json{{"type", "origin_mixed"}};
      break;
    case InitialKind::pure: {
      json init = state_json(rc.initial.members.front().state);
      init["type"] = "pure";
      j["initial"] = std::move(init);
      break;
    }
    case InitialKind::ensemble: {
      json members = json::array();
      for (const auto& m : rc.initial.members) {
        members.push_back(json{{"weight", m.weight}, {"state", state_json(m.state)}});
      }
      j["initial"] = json{{"type", "ensemble"}, {"members", std::move(members)}};
      break;
    }
  }

  j["n"] = rc.n;
  j["k_grid"] = rc.k_grid;
  j["seed"] = rc.seed;
  json og = json::array();
  for (const auto& ax : rc.omega) og.push_back(json{{"min", ax.min}, {"max", ax.max}, {"step", ax.step}});
  j["omega_grid"] = std::move(og);
  return j;
}

// FNV-1a over the canonical serialization; 16 hex digits identify a config
// in output headers.
inline std::string config_hash(const RunConfig& rc) {
  const std::string dump = to_json(rc).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : dump) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace qwalk
