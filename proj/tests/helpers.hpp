#pragma once

// Shared fixtures and independent oracles for the test suites. The oracles
// deliberately avoid the code paths they are used to check: path enumeration
// multiplies coin entries directly, the velocity oracle differentiates the
// eigenvalue phase numerically.

#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <vector>

#include "qwalk/qwalk.hpp"

namespace qwalk::testing {

inline Matrix hadamard_matrix() {
  Matrix h(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  h << Complex(r, 0), Complex(r, 0), Complex(r, 0), Complex(-r, 0);
  return h;
}

// d=1, s=2, v = (+1, -1), Hadamard coin
inline WalkConfig hadamard_config() {
  WalkConfig cfg;
  cfg.dimension = 1;
  cfg.coin_size = 2;
  cfg.shifts = {{Rational{1, 1}}, {Rational{-1, 1}}};
  cfg.coin = hadamard_matrix();
  return cfg;
}

// d=1, s=2, v = (+1, -1), identity coin: purely ballistic
inline WalkConfig identity_config() {
  WalkConfig cfg = hadamard_config();
  cfg.coin = Matrix::Identity(2, 2);
  return cfg;
}

// d=1, s=2, v = (3/2, -1), Hadamard coin: non-lattice shifts, L = 2
inline WalkConfig half_shift_config() {
  WalkConfig cfg = hadamard_config();
  cfg.shifts = {{Rational{3, 2}}, {Rational{-1, 1}}};
  return cfg;
}

// d=2, s=4, shifts +-e_1, +-e_2, Grover coin 2/s J - I
inline WalkConfig grover2d_config() {
  WalkConfig cfg;
  cfg.dimension = 2;
  cfg.coin_size = 4;
  cfg.shifts = {{Rational{1, 1}, Rational{0, 1}},
                {Rational{-1, 1}, Rational{0, 1}},
                {Rational{0, 1}, Rational{1, 1}},
                {Rational{0, 1}, Rational{-1, 1}}};
  cfg.coin = Matrix::Constant(4, 4, Complex(0.5, 0.0)) - Matrix::Identity(4, 4);
  return cfg;
}

inline std::complex<double> gaussian_complex(std::mt19937_64& gen) {
  std::normal_distribution<double> nd(0.0, 1.0);
  return {nd(gen), nd(gen)};
}

// Haar-ish unitary: QR of a complex Gaussian matrix with column phases fixed
inline Matrix random_unitary(int s, std::mt19937_64& gen) {
  Matrix a(s, s);
  for (int r = 0; r < s; ++r)
    for (int c = 0; c < s; ++c) a(r, c) = gaussian_complex(gen);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ() * Matrix::Identity(s, s);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < s; ++c) {
    const Complex d = r(c, c);
    if (std::abs(d) > 0.0) q.col(c) *= d / std::abs(d);
  }
  return q;
}

inline WalkConfig random_walk_config(std::mt19937_64& gen) {
  std::uniform_int_distribution<int> dim_pick(1, 2);
  std::uniform_int_distribution<int> coin_pick(2, 4);
  std::uniform_int_distribution<int> num_pick(-3, 3);
  std::uniform_int_distribution<int> den_pick(1, 4);
  WalkConfig cfg;
  cfg.dimension = dim_pick(gen);
  cfg.coin_size = coin_pick(gen);
  cfg.shifts.resize(cfg.coin_size);
  for (auto& row : cfg.shifts) {
    row.resize(cfg.dimension);
    for (auto& r : row) r = Rational::reduced(num_pick(gen), den_pick(gen));
  }
  cfg.coin = random_unitary(cfg.coin_size, gen);
  return cfg;
}

inline PureState random_pure_state(const WalkConfig& cfg, std::mt19937_64& gen, int max_sites = 3) {
  std::uniform_int_distribution<int> count_pick(1, max_sites);
  std::uniform_int_distribution<std::int64_t> pos_pick(-2, 2);
  const std::int64_t l = cfg.scale();
  PureState st;
  const int sites = count_pick(gen);
  for (int i = 0; i < sites; ++i) {
    PosKey key(cfg.dimension);
    for (int a = 0; a < cfg.dimension; ++a) key[a] = l * pos_pick(gen);
    Vector amp(cfg.coin_size);
    for (int c = 0; c < cfg.coin_size; ++c) amp[c] = gaussian_complex(gen);
    auto [it, fresh] = st.amplitudes.try_emplace(std::move(key), Vector());
    if (fresh)
      it->second = amp;
    else
      it->second += amp;
  }
  const double nrm = std::sqrt(st.norm_sq());
  for (auto& [key, amp] : st.amplitudes) amp /= nrm;
  return st;
}

// Brute-force evolution by summing over all s^n coin paths. Amplitude of a
// path (j_1 .. j_n) from coin state c0 is prod_t C(j_t, j_{t-1}); it lands at
// pos0 + sum_t w_{j_t} in coin state j_n.
inline std::map<PosKey, Vector> path_sum_evolve(const WalkConfig& cfg, const PureState& init, int n) {
  const auto w = cfg.integer_shifts();
  const int s = cfg.coin_size;
  std::map<PosKey, Vector> out;
  for (const auto& [pos0, amp0] : init.amplitudes) {
    for (int c0 = 0; c0 < s; ++c0) {
      if (amp0[c0] == Complex(0.0, 0.0)) continue;
      std::vector<int> path(n, 0);
      for (;;) {
        Complex amp = amp0[c0];
        PosKey pos = pos0;
        int prev = c0;
        for (int t = 0; t < n; ++t) {
          amp *= cfg.coin(path[t], prev);
          pos = key_plus(pos, w[path[t]]);
          prev = path[t];
        }
        auto [it, fresh] = out.try_emplace(std::move(pos), Vector());
        if (fresh) it->second = Vector::Zero(s);
        it->second[prev] += amp;
        int t = 0;
        for (; t < n; ++t) {
          if (++path[t] < s) break;
          path[t] = 0;
        }
        if (t == n) break;
      }
    }
  }
  return out;
}

inline double max_state_diff(const PureState& a, const std::map<PosKey, Vector>& b) {
  double worst = 0.0;
  for (const auto& [pos, amp] : a.amplitudes) {
    const auto it = b.find(pos);
    if (it == b.end())
      worst = std::max(worst, amp.cwiseAbs().maxCoeff());
    else
      worst = std::max(worst, (amp - it->second).cwiseAbs().maxCoeff());
  }
  for (const auto& [pos, amp] : b) {
    if (!a.amplitudes.count(pos)) worst = std::max(worst, amp.cwiseAbs().maxCoeff());
  }
  return worst;
}

// Central difference of the eigenvalue phase along direction e, with bands at
// k +- h*e matched to the center bands by eigenvalue proximity. Valid when
// the gap dwarfs h * max|w|. Oracle for the eigenvector-weight velocity:
// the phase decreases along the direction of motion, fd = -e . (L * pi).
inline double phase_derivative_fd(const WalkConfig& cfg, const RealVector& k, const RealVector& e,
                                  int band, double h) {
  const EigenSystem center = eigensystem(build_uk(cfg, k));
  auto nearest = [&](const EigenSystem& es) {
    int best = 0;
    double dist = std::abs(es.eigenvalues[0] - center.eigenvalues[band]);
    for (int j = 1; j < es.eigenvalues.size(); ++j) {
      const double d = std::abs(es.eigenvalues[j] - center.eigenvalues[band]);
      if (d < dist) {
        dist = d;
        best = j;
      }
    }
    return es.eigenvalues[best];
  };
  const Complex lp = nearest(eigensystem(build_uk(cfg, RealVector(k + h * e))));
  const Complex lm = nearest(eigensystem(build_uk(cfg, RealVector(k - h * e))));
  return std::arg(lp * std::conj(lm)) / (2.0 * h);
}

// Kolmogorov distance between equal-weight scalar samples and a 1d measure
inline double samples_vs_atoms_ks(const std::vector<double>& xs, const LimitMeasure& lm) {
  AtomCloud cloud;
  cloud.reserve(xs.size());
  const double w = 1.0 / static_cast<double>(xs.size());
  for (const double x : xs) cloud.push_back({x, w});
  return ks_distance(std::move(cloud), to_atoms_1d(lm));
}

inline double mass_at(const PositionDistribution& dist, std::initializer_list<std::int64_t> key) {
  const auto it = dist.masses.find(PosKey(key));
  return it == dist.masses.end() ? 0.0 : it->second;
}

// half the L1 gap over the union of supports; keys must share one lattice
inline double tv_distance(const PositionDistribution& a, const PositionDistribution& b) {
  double sum = 0.0;
  for (const auto& [key, mass] : a.masses) {
    const auto it = b.masses.find(key);
    sum += std::abs(mass - (it == b.masses.end() ? 0.0 : it->second));
  }
  for (const auto& [key, mass] : b.masses)
    if (!a.masses.count(key)) sum += mass;
  return 0.5 * sum;
}

inline PureState add_states(const PureState& a, const PureState& b, Complex ca, Complex cb) {
  PureState out;
  for (const auto& [pos, amp] : a.amplitudes) out.amplitudes[pos] = ca * amp;
  for (const auto& [pos, amp] : b.amplitudes) {
    auto [it, fresh] = out.amplitudes.try_emplace(pos, Vector());
    if (fresh)
      it->second = cb * amp;
    else
      it->second += cb * amp;
  }
  return out;
}

}  // namespace qwalk::testing
