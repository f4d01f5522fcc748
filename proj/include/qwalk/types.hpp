#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace qwalk {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

// Point of the internal integer lattice (physical position times the scale L).
// std::vector compares lexicographically, which fixes every map ordering.
using PosKey = std::vector<std::int64_t>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline PosKey key_plus(const PosKey& a, const PosKey& b) {
  PosKey out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

}  // namespace qwalk
