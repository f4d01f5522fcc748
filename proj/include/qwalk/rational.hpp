#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qwalk {

// Exact rational coordinate of a shift vector. den == 0 stays representable
// so validate_config can report it instead of the parser crashing.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational reduced(std::int64_t num, std::int64_t den) {
    Rational r{num, den};
    r.reduce_in_place();
    return r;
  }

  // lowest terms, den > 0
  void reduce_in_place() {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

  friend bool operator==(const Rational&, const Rational&) = default;
};

using RationalVec = std::vector<Rational>;  // one entry per spatial axis

}  // namespace qwalk
