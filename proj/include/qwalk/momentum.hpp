#pragma once

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qwalk/config.hpp"
#include "qwalk/distribution.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/state.hpp"
#include "qwalk/types.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

// The walk in momentum space acts at each k as multiplication by the unitary
// U_k = diag(exp(-i k.w_1), ..., exp(-i k.w_s)) C, with k in [-pi, pi)^d of
// the internal lattice and w_j = L*v_j the integer shifts.
struct MomentumMatrix {
  RealVector k;   // internal momentum
  Matrix matrix;  // coin_size x coin_size unitary
};

inline MomentumMatrix build_uk(const WalkConfig& cfg, const RealVector& k) {
  if (k.size() != cfg.dimension) throw std::invalid_argument("momentum dimension mismatch");
  const auto w = cfg.integer_shifts();
  MomentumMatrix out{k, Matrix(cfg.coin_size, cfg.coin_size)};
  for (int j = 0; j < cfg.coin_size; ++j) {
    double phase = 0.0;
    for (int a = 0; a < cfg.dimension; ++a) phase += k[a] * static_cast<double>(w[j][a]);
    out.matrix.row(j) = std::polar(1.0, -phase) * cfg.coin.row(j);
  }
  return out;
}

// Spectral decomposition of one U_k. Columns of eigenvectors come from a
// complex Schur factorization, so they are orthonormal to machine precision
// no matter how close the eigenvalues are. Bands are ordered by eigenvalue
// phase in [0, 2pi).
struct EigenSystem {
  Vector eigenvalues;   // unit modulus, phase-sorted
  Matrix eigenvectors;  // orthonormal columns
  double min_gap = std::numeric_limits<double>::infinity();
  bool degenerate = false;

  Matrix projection(int j) const { return eigenvectors.col(j) * eigenvectors.col(j).adjoint(); }
};

inline EigenSystem eigensystem(const MomentumMatrix& um, double gap_tol = 1e-8) {
  const int s = static_cast<int>(um.matrix.rows());
  Eigen::ComplexSchur<Matrix> schur(um.matrix, true);
  if (schur.info() != Eigen::Success) throw NumericalError("Schur factorization did not converge");

  std::vector<int> order(s);
  std::iota(order.begin(), order.end(), 0);
  const Vector diag = schur.matrixT().diagonal();
  auto phase_of = [](const Complex& z) {
    double p = std::arg(z);
    if (p < 0.0) p += two_pi;
    return p;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return phase_of(diag[a]) < phase_of(diag[b]); });

  EigenSystem es;
  es.eigenvalues = Vector(s);
  es.eigenvectors = Matrix(s, s);
  for (int j = 0; j < s; ++j) {
    es.eigenvalues[j] = diag[order[j]];
    es.eigenvectors.col(j) = schur.matrixU().col(order[j]);
  }
  for (int a = 0; a < s; ++a)
    for (int b = a + 1; b < s; ++b)
      es.min_gap = std::min(es.min_gap, std::abs(es.eigenvalues[a] - es.eigenvalues[b]));
  es.degenerate = es.min_gap < gap_tol;
  return es;
}

// Group velocity of band j in physical units: the eigenvector weights average
// the shift vectors, pi(k, j) = sum_l |psi_j[l]|^2 v_l. Only meaningful away
// from degeneracies, where the band projections are unambiguous.
inline RealVector group_velocity(const WalkConfig& cfg, const EigenSystem& es, int band) {
  if (es.degenerate) throw std::invalid_argument("group velocity at a degenerate momentum");
  if (band < 0 || band >= es.eigenvalues.size()) throw std::invalid_argument("band index out of range");
  const auto v = cfg.physical_shifts();
  RealVector out = RealVector::Zero(cfg.dimension);
  for (int l = 0; l < cfg.coin_size; ++l) out += std::norm(es.eigenvectors(l, band)) * v[l];
  return out;
}

// Diagonal of D(omega): entries omega . v_j in physical units.
inline RealVector omega_dot_shifts(const WalkConfig& cfg, const RealVector& omega) {
  if (omega.size() != cfg.dimension) throw std::invalid_argument("omega dimension mismatch");
  const auto v = cfg.physical_shifts();
  RealVector out(cfg.coin_size);
  for (int j = 0; j < cfg.coin_size; ++j) out[j] = omega.dot(v[j]);
  return out;
}

// W_k(omega) assembled from the spectral data: sum_j (omega . pi(k,j)) P_kj.
inline Matrix w_matrix_spectral(const WalkConfig& cfg, const EigenSystem& es, const RealVector& omega) {
  if (es.degenerate) throw std::invalid_argument("spectral W at a degenerate momentum");
  Matrix w = Matrix::Zero(cfg.coin_size, cfg.coin_size);
  for (int j = 0; j < cfg.coin_size; ++j)
    w += omega.dot(group_velocity(cfg, es, j)) * es.projection(j);
  return w;
}

// Same matrix by the defining Cesaro average, without any eigen machinery:
// (1/n) sum_{m<n} U_k^{*m} (C^* D(omega) C) U_k^m. Converges like 1/(n*gap).
inline Matrix w_matrix_ergodic(const WalkConfig& cfg, const RealVector& k, const RealVector& omega,
                               long n_avg) {
  if (n_avg < 1) throw std::invalid_argument("average length must be positive");
  const Matrix uk = build_uk(cfg, k).matrix;
  const RealVector d = omega_dot_shifts(cfg, omega);
  Matrix term = cfg.coin.adjoint() * d.asDiagonal().toDenseMatrix().cast<Complex>() * cfg.coin;
  Matrix acc = Matrix::Zero(cfg.coin_size, cfg.coin_size);
  for (long m = 0; m < n_avg; ++m) {
    acc += term;
    term = uk.adjoint() * term * uk;
  }
  return acc / static_cast<double>(n_avg);
}

// Fourier transform of a finite-support state at one internal momentum,
// with the symmetric (2pi)^{-d/2} normalization.
inline Vector fourier_state(const PureState& state, const WalkConfig& cfg, const RealVector& k) {
  if (k.size() != cfg.dimension) throw std::invalid_argument("momentum dimension mismatch");
  Vector out = Vector::Zero(cfg.coin_size);
  for (const auto& [pos, amp] : state.amplitudes) {
    double phase = 0.0;
    for (int a = 0; a < cfg.dimension; ++a) phase += k[a] * static_cast<double>(pos[a]);
    out += std::polar(1.0, -phase) * amp;
  }
  return out * std::pow(two_pi, -0.5 * cfg.dimension);
}

namespace detail {

// U^n by repeated squaring; powers of one matrix commute, so order is free.
inline Matrix matrix_power(Matrix base, long n) {
  Matrix result = Matrix::Identity(base.rows(), base.cols());
  while (n > 0) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

// In-place complex FFT along every axis of a flattened d-dimensional cube
// with side g. Layout is row-major: flat = ((i_0*g + i_1)*g + ...) + i_{d-1}.
inline void fft_cube(std::vector<Vector>& components, int d, long g, bool inverse) {
  Eigen::FFT<double> fft;
  long total = 1;
  for (int a = 0; a < d; ++a) total *= g;
  std::vector<Complex> line(g), image(g);
  for (auto& comp : components) {
    for (int axis = d - 1; axis >= 0; --axis) {
      long stride = 1;
      for (int a = axis + 1; a < d; ++a) stride *= g;
      const long block = stride * g;
      for (long base = 0; base < total; base += block)
        for (long off = 0; off < stride; ++off) {
          for (long i = 0; i < g; ++i) line[i] = comp[base + off + i * stride];
          if (inverse)
            fft.inv(image, line);
          else
            fft.fwd(image, line);
          for (long i = 0; i < g; ++i) comp[base + off + i * stride] = image[i];
        }
    }
  }
}

}  // namespace detail

// Evolves n steps in momentum space: FFT, pointwise U_k^n on the discrete
// torus k = 2pi*f/g, inverse FFT. The grid must be wide enough that the
// evolved support fits in one period; otherwise positions would alias.
inline PositionDistribution evolve_momentum(const PureState& state, const WalkConfig& cfg, long n,
                                            long grid_size) {
  if (n < 0) throw std::invalid_argument("step count must be nonnegative");
  if (state.amplitudes.empty()) throw std::invalid_argument("empty state");
  const int d = cfg.dimension;
  const int s = cfg.coin_size;
  const long g = grid_size;
  const auto w = cfg.integer_shifts();

  std::int64_t max_shift = 0;
  for (const auto& wj : w)
    for (std::int64_t c : wj) max_shift = std::max(max_shift, c < 0 ? -c : c);
  std::int64_t diam = 0;
  std::vector<std::int64_t> lo(d, std::numeric_limits<std::int64_t>::max());
  std::vector<std::int64_t> hi(d, std::numeric_limits<std::int64_t>::min());
  for (const auto& [pos, amp] : state.amplitudes)
    for (int a = 0; a < d; ++a) {
      lo[a] = std::min(lo[a], pos[a]);
      hi[a] = std::max(hi[a], pos[a]);
    }
  for (int a = 0; a < d; ++a) diam = std::max(diam, hi[a] - lo[a]);
  if (g <= 2 * n * max_shift + diam)
    throw std::invalid_argument("momentum grid too small for the evolved support");

  long total = 1;
  for (int a = 0; a < d; ++a) total *= g;
  std::vector<Vector> comp(s, Vector::Zero(total));
  auto wrap = [g](std::int64_t x) { return static_cast<long>(((x % g) + g) % g); };
  for (const auto& [pos, amp] : state.amplitudes) {
    long flat = 0;
    for (int a = 0; a < d; ++a) flat = flat * g + wrap(pos[a]);
    for (int c = 0; c < s; ++c) comp[c][flat] = amp[c];
  }

  detail::fft_cube(comp, d, g, false);

  RealVector k(d);
  std::vector<long> idx(d, 0);
  for (long flat = 0; flat < total; ++flat) {
    for (int a = 0; a < d; ++a) k[a] = two_pi * static_cast<double>(idx[a]) / static_cast<double>(g);
    const Matrix un = detail::matrix_power(build_uk(cfg, k).matrix, n);
    Vector vec(s);
    for (int c = 0; c < s; ++c) vec[c] = comp[c][flat];
    vec = un * vec;
    for (int c = 0; c < s; ++c) comp[c][flat] = vec[c];
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < g) break;
      idx[a] = 0;
    }
  }

  detail::fft_cube(comp, d, g, true);

  // The support of the result lies per axis in a window of length <= g
  // starting at lo[a] + n * min_j w_j[a]; unfold grid residues into it.
  std::vector<std::int64_t> window_lo(d);
  for (int a = 0; a < d; ++a) {
    std::int64_t wmin = w[0][a];
    for (const auto& wj : w) wmin = std::min(wmin, wj[a]);
    window_lo[a] = lo[a] + n * wmin;
  }

  PositionDistribution out;
  out.dimension = d;
  out.scale = cfg.scale();
  out.steps = 0;
  std::fill(idx.begin(), idx.end(), 0L);
  PosKey key(d);
  for (long flat = 0; flat < total; ++flat) {
    double mass = 0.0;
    for (int c = 0; c < s; ++c) mass += std::norm(comp[c][flat]);
    if (mass != 0.0) {
      for (int a = 0; a < d; ++a) {
        const std::int64_t res = ((idx[a] - window_lo[a]) % g + g) % g;
        key[a] = window_lo[a] + res;
      }
      out.masses[key] += mass;
    }
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < g) break;
      idx[a] = 0;
    }
  }
  return out;
}

}  // namespace qwalk
