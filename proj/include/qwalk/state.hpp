#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "qwalk/config.hpp"
#include "qwalk/types.hpp"

namespace qwalk {

// Pure state with finite support: internal lattice point -> coin amplitudes.
// The ordered map keeps iteration (and hence all accumulation and output
// order) deterministic. Amplitudes are never truncated by magnitude.
struct PureState {
  std::map<PosKey, Vector> amplitudes;

  double norm_sq() const {
    double s = 0.0;
    for (const auto& [pos, amp] : amplitudes) s += amp.squaredNorm();
    return s;
  }
};

// Point mass at a physical lattice position with a single coin component lit.
inline PureState basis_state(const WalkConfig& cfg, const PosKey& physical_position, int coin_index) {
  if (static_cast<int>(physical_position.size()) != cfg.dimension)
    throw std::invalid_argument("position dimension mismatch");
  if (coin_index < 0 || coin_index >= cfg.coin_size) throw std::invalid_argument("coin index out of range");
  const std::int64_t l = cfg.scale();
  PosKey key(physical_position.size());
  for (std::size_t a = 0; a < key.size(); ++a) key[a] = l * physical_position[a];
  Vector amp = Vector::Zero(cfg.coin_size);
  amp[coin_index] = Complex(1.0, 0.0);
  PureState st;
  st.amplitudes.emplace(std::move(key), std::move(amp));
  return st;
}

inline PureState coin_state_at_origin(const WalkConfig& cfg, const Vector& coin_amplitudes) {
  if (coin_amplitudes.size() != cfg.coin_size) throw std::invalid_argument("coin amplitude size mismatch");
  PureState st;
  st.amplitudes.emplace(PosKey(cfg.dimension, 0), coin_amplitudes);
  return st;
}

// Convex mixture of finitely many pure states. Weights are probabilities.
struct Ensemble {
  struct Member {
    double weight = 1.0;
    PureState state;
  };
  std::vector<Member> members;

  double total_weight() const {
    double s = 0.0;
    for (const auto& m : members) s += m.weight;
    return s;
  }
};

inline Ensemble pure_ensemble(PureState st) {
  Ensemble e;
  e.members.push_back({1.0, std::move(st)});
  return e;
}

// Origin point mass with the maximally mixed coin: s members of weight 1/s.
inline Ensemble origin_mixed_ensemble(const WalkConfig& cfg) {
  Ensemble e;
  const double w = 1.0 / static_cast<double>(cfg.coin_size);
  for (int j = 0; j < cfg.coin_size; ++j)
    e.members.push_back({w, basis_state(cfg, PosKey(cfg.dimension, 0), j)});
  return e;
}

}  // namespace qwalk
