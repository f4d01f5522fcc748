#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "qwalk/errors.hpp"
#include "qwalk/rational.hpp"
#include "qwalk/types.hpp"

namespace qwalk {

// Static data of one walk: step operator U = T (I (x) C) with coin_size coin
// states and one rational shift vector per coin state. Positions are stored
// on the integer lattice scaled by L = lcm of all shift denominators, so a
// stored key m means physical position m / L.
struct WalkConfig {
  int dimension = 1;
  int coin_size = 2;
  std::vector<RationalVec> shifts;  // coin_size rows of dimension rationals
  Matrix coin;                      // coin_size x coin_size, unitary

  // common denominator L; L * v_j is integral for every shift
  std::int64_t scale() const {
    std::int64_t l = 1;
    for (const auto& row : shifts)
      for (const auto& c : row) {
        if (c.den == 0) throw ConfigError("zero denominator in shift");
        l = std::lcm(l, Rational::reduced(c.num, c.den).den);
      }
    return l;
  }

  // integer shifts w_j = L * v_j on the internal lattice
  std::vector<PosKey> integer_shifts() const {
    const std::int64_t l = scale();
    std::vector<PosKey> out(shifts.size());
    for (std::size_t j = 0; j < shifts.size(); ++j) {
      out[j].resize(shifts[j].size());
      for (std::size_t a = 0; a < shifts[j].size(); ++a) {
        const Rational r = Rational::reduced(shifts[j][a].num, shifts[j][a].den);
        out[j][a] = r.num * (l / r.den);
      }
    }
    return out;
  }

  // shift vectors v_j in physical units
  std::vector<RealVector> physical_shifts() const {
    std::vector<RealVector> out(shifts.size());
    for (std::size_t j = 0; j < shifts.size(); ++j) {
      out[j] = RealVector(shifts[j].size());
      for (std::size_t a = 0; a < shifts[j].size(); ++a) out[j][a] = shifts[j][a].value();
    }
    return out;
  }
};

// Collects every violation instead of stopping at the first, so the CLI can
// print them all before exiting.
inline std::vector<std::string> validate_config(const WalkConfig& cfg) {
  std::vector<std::string> bad;
  if (cfg.dimension < 1) bad.push_back("dimension must be at least 1");
  if (cfg.coin_size < 1) bad.push_back("coin size must be at least 1");
  if (cfg.coin.rows() != cfg.coin_size || cfg.coin.cols() != cfg.coin_size)
    bad.push_back("coin matrix shape does not match coin size");
  if (static_cast<int>(cfg.shifts.size()) != cfg.coin_size)
    bad.push_back("number of shift vectors does not match coin size");
  for (std::size_t j = 0; j < cfg.shifts.size(); ++j) {
    if (static_cast<int>(cfg.shifts[j].size()) != cfg.dimension)
      bad.push_back("shift " + std::to_string(j + 1) + " does not have one coordinate per axis");
    for (const auto& c : cfg.shifts[j])
      if (c.den == 0) bad.push_back("shift " + std::to_string(j + 1) + " has a zero denominator");
  }
  if (cfg.coin.rows() == cfg.coin.cols() && cfg.coin.rows() == cfg.coin_size && cfg.coin_size >= 1) {
    const Matrix gram = cfg.coin.adjoint() * cfg.coin;
    const double dev = (gram - Matrix::Identity(cfg.coin_size, cfg.coin_size)).cwiseAbs().maxCoeff();
    if (!(dev <= 1e-12)) bad.push_back("coin matrix is not unitary (deviation " + std::to_string(dev) + ")");
  }
  return bad;
}

inline void require_valid(const WalkConfig& cfg) {
  const auto bad = validate_config(cfg);
  if (bad.empty()) return;
  std::string msg = "invalid walk configuration:";
  for (const auto& b : bad) msg += "\n  " + b;
  throw ConfigError(msg);
}

}  // namespace qwalk
