#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qwalk/config.hpp"
#include "qwalk/distribution.hpp"
#include "qwalk/limit.hpp"
#include "qwalk/state.hpp"
#include "qwalk/types.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

// Atom of a probability measure on the real line.
struct Atom1 {
  double x = 0.0;
  double mass = 0.0;
};

using AtomCloud = std::vector<Atom1>;

inline AtomCloud to_atoms_1d(const PositionDistribution& dist) {
  if (dist.dimension != 1) throw std::invalid_argument("one-dimensional distribution required");
  AtomCloud out;
  out.reserve(dist.masses.size());
  for (const auto& [key, mass] : dist.masses) out.push_back({dist.coordinate(key, 0), mass});
  return out;
}

inline AtomCloud to_atoms_1d(const LimitMeasure& lm) {
  if (lm.dimension != 1) throw std::invalid_argument("one-dimensional measure required");
  AtomCloud out;
  out.reserve(lm.atoms.size());
  for (const auto& a : lm.atoms) out.push_back({a.velocity[0], a.mass});
  return out;
}

// Exact Kolmogorov distance between two atomic probability measures:
// sup_x |F_a(x) - F_b(x)| evaluated just after every atom of either measure,
// where both right-continuous CDFs have settled.
inline double ks_distance(AtomCloud a, AtomCloud b) {
  double ta = 0.0, tb = 0.0;
  for (const auto& p : a) ta += p.mass;
  for (const auto& p : b) tb += p.mass;
  if (std::abs(ta - 1.0) > 1e-6 || std::abs(tb - 1.0) > 1e-6)
    throw std::invalid_argument("ks_distance requires normalized measures");
  auto by_x = [](const Atom1& l, const Atom1& r) { return l.x < r.x; };
  std::sort(a.begin(), a.end(), by_x);
  std::sort(b.begin(), b.end(), by_x);
  std::size_t i = 0, j = 0;
  double fa = 0.0, fb = 0.0, sup = 0.0;
  while (i < a.size() || j < b.size()) {
    double x;
    if (j >= b.size() || (i < a.size() && a[i].x <= b[j].x))
      x = a[i].x;
    else
      x = b[j].x;
    while (i < a.size() && a[i].x == x) fa += a[i++].mass;
    while (j < b.size() && b[j].x == x) fb += b[j++].mass;
    sup = std::max(sup, std::abs(fa - fb));
  }
  return sup;
}

// Supremum over a finite frequency grid of the gap between the empirical and
// limit characteristic functions. The limit measure must be normalized.
inline double cf_sup_distance(const PositionDistribution& dist, const LimitMeasure& lm,
                              const std::vector<RealVector>& omega_grid) {
  if (omega_grid.empty()) throw std::invalid_argument("empty frequency grid");
  double sup = 0.0;
  for (const auto& omega : omega_grid)
    sup = std::max(sup, std::abs(empirical_cf(dist, omega) - limit_cf(lm, omega)));
  return sup;
}

struct MomentErrors {
  RealVector mean_error;          // componentwise difference of means
  double second_moment_error = 0.0;  // Frobenius gap of raw second moment matrices
};

inline MomentErrors moment_errors(const PositionDistribution& dist, const LimitMeasure& lm) {
  if (dist.dimension != lm.dimension) throw std::invalid_argument("dimension mismatch");
  if (dist.steps < 1) throw std::invalid_argument("moment comparison needs a rescaled distribution");
  const int d = dist.dimension;
  RealVector mean_d = RealVector::Zero(d), mean_l = RealVector::Zero(d);
  RealMatrix m2_d = RealMatrix::Zero(d, d), m2_l = RealMatrix::Zero(d, d);
  RealVector x(d);
  for (const auto& [key, mass] : dist.masses) {
    for (int a = 0; a < d; ++a) x[a] = dist.coordinate(key, a);
    mean_d += mass * x;
    m2_d += mass * x * x.transpose();
  }
  for (const auto& atom : lm.atoms) {
    mean_l += atom.mass * atom.velocity;
    m2_l += atom.mass * atom.velocity * atom.velocity.transpose();
  }
  MomentErrors out;
  out.mean_error = mean_d - mean_l;
  out.second_moment_error = (m2_d - m2_l).norm();
  return out;
}

struct ConvergenceRow {
  long n = 0;
  double ks = std::numeric_limits<double>::quiet_NaN();  // NaN when dimension > 1
  double cf_sup = 0.0;
  RealVector mean_error;
  double second_moment_error = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
};

// Runs one walk through an increasing list of horizons and measures, at each
// stop, the distance between the rescaled empirical law and the fixed
// quadrature limit. States advance incrementally between stops.
inline ConvergenceReport convergence_series(const WalkConfig& cfg, Ensemble ens,
                                            const std::vector<long>& n_list, const KGrid& grid,
                                            const std::vector<RealVector>& omega_grid,
                                            double mass_tol = 1e-3) {
  if (n_list.empty()) throw std::invalid_argument("empty horizon list");
  for (std::size_t i = 0; i < n_list.size(); ++i)
    if (n_list[i] < 1 || (i > 0 && n_list[i] <= n_list[i - 1]))
      throw std::invalid_argument("horizons must be positive and strictly increasing");

  const LimitMeasure lm = limit_measure(cfg, ens, grid, mass_tol).normalized();
  const AtomCloud limit_atoms = cfg.dimension == 1 ? to_atoms_1d(lm) : AtomCloud{};

  ConvergenceReport report;
  long done = 0;
  for (const long n : n_list) {
    ens = evolve(std::move(ens), cfg, n - done);
    done = n;
    const PositionDistribution dist = rescale(position_distribution(ens, cfg), n);
    ConvergenceRow row;
    row.n = n;
    if (cfg.dimension == 1) row.ks = ks_distance(to_atoms_1d(dist), limit_atoms);
    row.cf_sup = cf_sup_distance(dist, lm, omega_grid);
    const MomentErrors me = moment_errors(dist, lm);
    row.mean_error = me.mean_error;
    row.second_moment_error = me.second_moment_error;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace qwalk
