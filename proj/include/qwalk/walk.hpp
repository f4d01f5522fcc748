#pragma once

#include <stdexcept>

#include "qwalk/config.hpp"
#include "qwalk/distribution.hpp"
#include "qwalk/state.hpp"
#include "qwalk/types.hpp"

namespace qwalk {

// I (x) C: the coin acts on every occupied position, support unchanged.
inline PureState apply_coin(const PureState& state, const WalkConfig& cfg) {
  PureState out;
  for (const auto& [pos, amp] : state.amplitudes) {
    if (amp.size() != cfg.coin_size) throw std::invalid_argument("coin amplitude size mismatch");
    out.amplitudes.emplace_hint(out.amplitudes.end(), pos, cfg.coin * amp);
  }
  return out;
}

// Conditional translation T: coin component j at key m moves to m + L*v_j.
// Components that are exactly zero carry nothing and create no support.
inline PureState apply_shift(const PureState& state, const WalkConfig& cfg) {
  const auto w = cfg.integer_shifts();
  PureState out;
  for (const auto& [pos, amp] : state.amplitudes) {
    if (amp.size() != cfg.coin_size) throw std::invalid_argument("coin amplitude size mismatch");
    for (int j = 0; j < cfg.coin_size; ++j) {
      if (amp[j] == Complex(0.0, 0.0)) continue;
      auto [it, fresh] = out.amplitudes.try_emplace(key_plus(pos, w[j]), Vector());
      if (fresh) it->second = Vector::Zero(cfg.coin_size);
      it->second[j] += amp[j];
    }
  }
  return out;
}

// One step U = T (I (x) C), fused into a single pass over the support.
// Each (target, j) pair has exactly one source, so the accumulation order
// matches apply_shift(apply_coin(.)) bit for bit.
inline PureState step(const PureState& state, const WalkConfig& cfg) {
  const auto w = cfg.integer_shifts();
  PureState out;
  for (const auto& [pos, amp] : state.amplitudes) {
    if (amp.size() != cfg.coin_size) throw std::invalid_argument("coin amplitude size mismatch");
    const Vector mixed = cfg.coin * amp;
    for (int j = 0; j < cfg.coin_size; ++j) {
      if (mixed[j] == Complex(0.0, 0.0)) continue;
      auto [it, fresh] = out.amplitudes.try_emplace(key_plus(pos, w[j]), Vector());
      if (fresh) it->second = Vector::Zero(cfg.coin_size);
      it->second[j] += mixed[j];
    }
  }
  return out;
}

inline PureState evolve(PureState state, const WalkConfig& cfg, long n) {
  if (n < 0) throw std::invalid_argument("step count must be nonnegative");
  for (long t = 0; t < n; ++t) state = step(state, cfg);
  return state;
}

inline Ensemble evolve(Ensemble ens, const WalkConfig& cfg, long n) {
  for (auto& m : ens.members) m.state = evolve(std::move(m.state), cfg, n);
  return ens;
}

// Traces out the coin: mass(m) = sum_i w_i * ||psi_i(m)||^2. Exact zeros are
// dropped; nothing else is truncated.
inline PositionDistribution position_distribution(const Ensemble& ens, const WalkConfig& cfg) {
  PositionDistribution out;
  out.dimension = cfg.dimension;
  out.scale = cfg.scale();
  out.steps = 0;
  for (const auto& m : ens.members)
    for (const auto& [pos, amp] : m.state.amplitudes) {
      const double mass = m.weight * amp.squaredNorm();
      if (mass != 0.0) out.masses[pos] += mass;
    }
  return out;
}

inline PositionDistribution position_distribution(const PureState& state, const WalkConfig& cfg) {
  PositionDistribution out;
  out.dimension = cfg.dimension;
  out.scale = cfg.scale();
  out.steps = 0;
  for (const auto& [pos, amp] : state.amplitudes) {
    const double mass = amp.squaredNorm();
    if (mass != 0.0) out.masses[pos] += mass;
  }
  return out;
}

}  // namespace qwalk
