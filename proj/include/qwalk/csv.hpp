#pragma once

#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qwalk/distribution.hpp"
#include "qwalk/limit.hpp"
#include "qwalk/metrics.hpp"
#include "qwalk/types.hpp"

namespace qwalk {

// Dialect: comma separator, '.' decimal point, '\n' line endings, one
// '#'-prefixed header comment, then a column-name row. %.17g round-trips
// every double.
inline std::string csv_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

inline void write_distribution_csv(std::ostream& os, const PositionDistribution& dist,
                                   const std::string& header) {
  os << "# " << header << "\n";
  for (int a = 1; a <= dist.dimension; ++a) os << "coord_" << a << ",";
  os << "mass\n";
  for (const auto& [key, mass] : dist.masses) {
    for (int a = 0; a < dist.dimension; ++a) os << csv_num(dist.coordinate(key, a)) << ",";
    os << csv_num(mass) << "\n";
  }
}

struct SpectrumRow {
  RealVector k;  // internal momentum
  int band = 0;
  Complex eigenvalue;
  std::optional<RealVector> velocity;  // absent at degenerate momenta
  double min_gap = 0.0;
};

inline void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumRow>& rows, int dimension,
                               const std::string& header) {
  os << "# " << header << "\n";
  for (int a = 1; a <= dimension; ++a) os << "k_" << a << ",";
  os << "j,re_lambda,im_lambda,";
  for (int a = 1; a <= dimension; ++a) os << "pi_" << a << ",";
  os << "min_gap\n";
  for (const auto& r : rows) {
    for (int a = 0; a < dimension; ++a) os << csv_num(r.k[a]) << ",";
    os << r.band << "," << csv_num(r.eigenvalue.real()) << "," << csv_num(r.eigenvalue.imag()) << ",";
    for (int a = 0; a < dimension; ++a) {
      if (r.velocity) os << csv_num((*r.velocity)[a]);
      os << ",";
    }
    os << csv_num(r.min_gap) << "\n";
  }
}

// Export form of a limit measure: atoms with bitwise-equal velocities are
// merged and rows sorted by velocity. Internal atom lists stay unmerged; the
// merge only tidies the file.
inline void write_limit_csv(std::ostream& os, const LimitMeasure& lm, const std::string& header) {
  os << "# " << header << "\n";
  for (int a = 1; a <= lm.dimension; ++a) os << "v_" << a << ",";
  os << "mass\n";
  std::map<std::vector<double>, double> merged;
  for (const auto& atom : lm.atoms) {
    std::vector<double> v(atom.velocity.data(), atom.velocity.data() + atom.velocity.size());
    merged[std::move(v)] += atom.mass;
  }
  for (const auto& [v, mass] : merged) {
    for (const double c : v) os << csv_num(c) << ",";
    os << csv_num(mass) << "\n";
  }
}

inline void write_samples_csv(std::ostream& os, const std::vector<RealVector>& samples, int dimension,
                              const std::string& header) {
  os << "# " << header << "\n";
  for (int a = 1; a <= dimension; ++a) os << "v_" << a << (a == dimension ? "" : ",");
  os << "\n";
  for (const auto& s : samples) {
    for (int a = 0; a < dimension; ++a) os << csv_num(s[a]) << (a + 1 == dimension ? "" : ",");
    os << "\n";
  }
}

inline void write_report_csv(std::ostream& os, const ConvergenceReport& report, int dimension,
                             const std::string& header) {
  os << "# " << header << "\n";
  os << "n,ks,cf_sup,mean_err,m2_err\n";
  for (const auto& row : report.rows) {
    os << row.n << ",";
    if (dimension == 1) os << csv_num(row.ks);
    os << "," << csv_num(row.cf_sup) << "," << csv_num(row.mean_error.norm()) << ","
       << csv_num(row.second_moment_error) << "\n";
  }
}

}  // namespace qwalk
