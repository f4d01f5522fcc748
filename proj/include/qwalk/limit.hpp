#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwalk/config.hpp"
#include "qwalk/distribution.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/momentum.hpp"
#include "qwalk/rng.hpp"
#include "qwalk/state.hpp"
#include "qwalk/types.hpp"

namespace qwalk {

// Midpoint grid on the momentum torus [-pi, pi)^d. The fractional offset
// keeps grid points away from symmetry loci (k = 0, axes, diagonals) where
// band degeneracies like to sit.
struct KGrid {
  long points_per_axis = 0;
  std::vector<double> offsets;  // fractional cell shift per axis, in (0, 1)

  static KGrid regular(long n, int d) {
    KGrid g;
    g.points_per_axis = n;
    g.offsets.assign(d, 0.5 + 0.5 / static_cast<double>(n));
    return g;
  }

  double spacing() const { return two_pi / static_cast<double>(points_per_axis); }

  double point(long index, int axis) const {
    return -pi + (static_cast<double>(index) + offsets[axis]) * spacing();
  }

  double cell_volume(int d) const { return std::pow(spacing(), d); }
};

// One atom of the weak-limit measure: the image of a momentum cell and band
// under the group-velocity map, carrying that cell's spectral mass.
struct LimitAtom {
  RealVector velocity;  // physical units
  double mass = 0.0;
};

// Quadrature approximation of the limit law. Atoms are kept per (cell, band),
// unmerged, in lexicographic cell order then band order. raw_total records
// the quadrature's own mass so that normalization stays visible.
struct LimitMeasure {
  std::vector<LimitAtom> atoms;
  int dimension = 1;
  double raw_total = 0.0;
  long excluded_cells = 0;

  LimitMeasure normalized() const {
    LimitMeasure out = *this;
    if (raw_total <= 0.0) throw NumericalError("limit measure has no mass");
    for (auto& a : out.atoms) a.mass /= raw_total;
    out.raw_total = 1.0;
    return out;
  }
};

// Integrates tr[rho(k) P_kj] over the torus on a midpoint grid. Cells where
// the spectrum is flagged degenerate trigger a re-offset of the whole grid
// (three retries); cells still degenerate after that are excluded and show
// up as a raw_total deficit. A deficit beyond 10*mass_tol is an error.
inline LimitMeasure limit_measure(const WalkConfig& cfg, const Ensemble& ens, const KGrid& grid,
                                  double mass_tol = 1e-3) {
  if (grid.points_per_axis < 1) throw std::invalid_argument("grid needs at least one point per axis");
  if (ens.members.empty()) throw std::invalid_argument("empty ensemble");
  const int d = cfg.dimension;
  const int s = cfg.coin_size;
  const double cellvol = grid.cell_volume(d);

  long total = 1;
  for (int a = 0; a < d; ++a) total *= grid.points_per_axis;

  LimitMeasure lm;
  lm.dimension = d;
  KGrid g = grid;
  for (int attempt = 0;; ++attempt) {
    lm.atoms.clear();
    lm.raw_total = 0.0;
    lm.excluded_cells = 0;
    bool hit_degenerate = false;

    std::vector<long> idx(d, 0);
    RealVector k(d);
    for (long flat = 0; flat < total; ++flat) {
      for (int a = 0; a < d; ++a) k[a] = g.point(idx[a], a);
      const EigenSystem es = eigensystem(build_uk(cfg, k));
      if (es.degenerate) {
        hit_degenerate = true;
        ++lm.excluded_cells;
        if (attempt < 3) break;
      } else {
        std::vector<Vector> hats;
        hats.reserve(ens.members.size());
        for (const auto& m : ens.members) hats.push_back(fourier_state(m.state, cfg, k));
        for (int j = 0; j < s; ++j) {
          double mass = 0.0;
          for (std::size_t i = 0; i < ens.members.size(); ++i)
            mass += ens.members[i].weight * std::norm(es.eigenvectors.col(j).dot(hats[i]));
          mass *= cellvol;
          if (mass > 1e-18) {
            lm.atoms.push_back({group_velocity(cfg, es, j), mass});
            lm.raw_total += mass;
          }
        }
      }
      for (int a = d - 1; a >= 0; --a) {
        if (++idx[a] < grid.points_per_axis) break;
        idx[a] = 0;
      }
    }

    if (!hit_degenerate || attempt >= 3) break;
    // nudge each axis by a different sliver of a cell and rescan
    for (int a = 0; a < d; ++a)
      g.offsets[a] = grid.offsets[a] + (attempt + 1) * (a + 1) * 0.0561892 / static_cast<double>(grid.points_per_axis);
  }

  if (std::abs(lm.raw_total - 1.0) > 10.0 * mass_tol)
    throw NumericalError("limit quadrature mass " + std::to_string(lm.raw_total) +
                         " too far from 1 (excluded cells: " + std::to_string(lm.excluded_cells) + ")");
  return lm;
}

// Characteristic function of the (typically unnormalized) limit measure.
inline Complex limit_cf(const LimitMeasure& lm, const RealVector& omega) {
  if (omega.size() != lm.dimension) throw std::invalid_argument("omega dimension mismatch");
  Complex acc(0.0, 0.0);
  for (const auto& a : lm.atoms) acc += a.mass * std::polar(1.0, omega.dot(a.velocity));
  return acc;
}

// Direct sampler of the limit law for the origin-mixed initial state: under
// it the momentum is uniform on the torus and the band label uniform on
// {1..s}, so a sample is just pi(K, J). Degenerate draws are rejected.
inline std::vector<RealVector> sample_limit(const WalkConfig& cfg, long count, std::uint64_t seed) {
  if (count < 0) throw std::invalid_argument("sample count must be nonnegative");
  CounterRng rng(seed);
  std::vector<RealVector> out;
  out.reserve(count);
  RealVector k(cfg.dimension);
  for (long i = 0; i < count; ++i) {
    int tries = 0;
    for (;;) {
      for (int a = 0; a < cfg.dimension; ++a) k[a] = rng.uniform(-pi, pi);
      const int j = static_cast<int>(rng.next_below(cfg.coin_size));
      const EigenSystem es = eigensystem(build_uk(cfg, k));
      if (!es.degenerate) {
        out.push_back(group_velocity(cfg, es, j));
        break;
      }
      if (++tries > 100) throw NumericalError("degenerate momenta dominate the torus");
    }
  }
  return out;
}

// Categorical sampler over the atoms of a normalized limit measure, used for
// initial states with no direct sampling route. Inverse CDF in atom order.
inline std::vector<RealVector> sample_atoms(const LimitMeasure& lm, long count, std::uint64_t seed) {
  if (count < 0) throw std::invalid_argument("sample count must be nonnegative");
  if (lm.atoms.empty()) throw std::invalid_argument("no atoms to sample");
  std::vector<double> cdf(lm.atoms.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < lm.atoms.size(); ++i) {
    acc += lm.atoms[i].mass;
    cdf[i] = acc;
  }
  CounterRng rng(seed);
  std::vector<RealVector> out;
  out.reserve(count);
  for (long i = 0; i < count; ++i) {
    const double u = rng.next_double() * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t pick = std::min<std::size_t>(it - cdf.begin(), lm.atoms.size() - 1);
    out.push_back(lm.atoms[pick].velocity);
  }
  return out;
}

// Characteristic function of the rescaled empirical distribution: positions
// are read in units of 1 / (scale * steps).
inline Complex empirical_cf(const PositionDistribution& dist, const RealVector& omega) {
  if (omega.size() != dist.dimension) throw std::invalid_argument("omega dimension mismatch");
  if (dist.steps < 1) throw std::invalid_argument("empirical cf needs a rescaled distribution");
  const double divisor = static_cast<double>(dist.scale) * static_cast<double>(dist.steps);
  Complex acc(0.0, 0.0);
  for (const auto& [key, mass] : dist.masses) {
    double phase = 0.0;
    for (int a = 0; a < dist.dimension; ++a) phase += omega[a] * static_cast<double>(key[a]);
    acc += mass * std::polar(1.0, phase / divisor);
  }
  return acc;
}

}  // namespace qwalk
