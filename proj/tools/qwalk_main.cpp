// Command line front end: simulate | spectrum | limit | sample | converge.
// Exit codes: 0 success, 2 config/validation, 3 I/O, 4 numerical failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qwalk/qwalk.hpp"

namespace {

using namespace qwalk;

struct CommonArgs {
  std::string config_path;
  std::string out_path;
};

std::string base_header(const RunConfig& rc) {
  std::ostringstream os;
  os << "config=" << config_hash(rc) << " k_grid=" << rc.k_grid << " seed=" << rc.seed;
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file '" + path + "'");
  out << content;
  if (!out) throw IoError("failed writing output file '" + path + "'");
}

int run_simulate(const CommonArgs& args, long n_override, bool raw) {
  RunConfig rc = load_run_config(args.config_path);
  if (n_override >= 0) rc.n = n_override;
  const Ensemble evolved = evolve(rc.initial, rc.walk, rc.n);
  PositionDistribution dist = position_distribution(evolved, rc.walk);
  if (!raw && rc.n > 0) dist = rescale(dist, rc.n);
  std::ostringstream os;
  write_distribution_csv(os, dist, base_header(rc) + " n=" + std::to_string(rc.n) +
                                       (dist.steps > 0 ? " view=rescaled" : " view=raw"));
  write_file(args.out_path, os.str());
  return 0;
}

int run_spectrum(const CommonArgs& args, long k_grid_override) {
  RunConfig rc = load_run_config(args.config_path);
  const long npts = k_grid_override >= 1 ? k_grid_override : 256;
  const int d = rc.walk.dimension;
  std::vector<SpectrumRow> rows;
  rows.reserve(npts * rc.walk.coin_size);
  for (long i = 0; i < npts; ++i) {
    // diagonal path through the momentum torus; for d=1 the full circle
    const double t = -pi + two_pi * static_cast<double>(i) / static_cast<double>(npts);
    RealVector k = RealVector::Constant(d, t);
    const EigenSystem es = eigensystem(build_uk(rc.walk, k));
    for (int j = 0; j < rc.walk.coin_size; ++j) {
      SpectrumRow row;
      row.k = k;
      row.band = j + 1;
      row.eigenvalue = es.eigenvalues[j];
      row.min_gap = es.min_gap;
      if (!es.degenerate) row.velocity = group_velocity(rc.walk, es, j);
      rows.push_back(std::move(row));
    }
  }
  std::ostringstream os;
  write_spectrum_csv(os, rows, d, base_header(rc) + " k_path=diagonal points=" + std::to_string(npts));
  write_file(args.out_path, os.str());
  return 0;
}

int run_limit(const CommonArgs& args, long k_grid_override) {
  RunConfig rc = load_run_config(args.config_path);
  if (k_grid_override >= 1) rc.k_grid = k_grid_override;
  const KGrid grid = KGrid::regular(rc.k_grid, rc.walk.dimension);
  const LimitMeasure lm = limit_measure(rc.walk, rc.initial, grid);
  std::ostringstream os;
  std::ostringstream header;
  header << base_header(rc) << " raw_total=" << csv_num(lm.raw_total)
         << " excluded_cells=" << lm.excluded_cells;
  write_limit_csv(os, lm.normalized(), header.str());
  write_file(args.out_path, os.str());
  return 0;
}

int run_sample(const CommonArgs& args, long count, bool seed_set, std::uint64_t seed_override) {
  RunConfig rc = load_run_config(args.config_path);
  if (seed_set) rc.seed = seed_override;
  std::vector<RealVector> samples;
  std::string sampler;
  if (rc.initial_kind == InitialKind::origin_mixed) {
    sampler = "torus-direct";
    samples = sample_limit(rc.walk, count, rc.seed);
  } else {
    // no direct route for general states: draw from the quadrature atoms
    sampler = "quadrature-inverse-cdf";
    const KGrid grid = KGrid::regular(rc.k_grid, rc.walk.dimension);
    const LimitMeasure lm = limit_measure(rc.walk, rc.initial, grid).normalized();
    samples = sample_atoms(lm, count, rc.seed);
  }
  std::ostringstream os;
  write_samples_csv(os, samples, rc.walk.dimension,
                    base_header(rc) + " count=" + std::to_string(count) + " sampler=" + sampler);
  write_file(args.out_path, os.str());
  return 0;
}

int run_converge(const CommonArgs& args, const std::vector<long>& n_list, long k_grid_override) {
  RunConfig rc = load_run_config(args.config_path);
  if (k_grid_override >= 1) rc.k_grid = k_grid_override;
  if (n_list.empty()) throw ConfigError("converge requires --n-list");
  const KGrid grid = KGrid::regular(rc.k_grid, rc.walk.dimension);
  const ConvergenceReport report =
      convergence_series(rc.walk, rc.initial, n_list, grid, omega_grid_points(rc));
  std::ostringstream os;
  std::ostringstream header;
  header << base_header(rc) << " n_list=";
  for (std::size_t i = 0; i < n_list.size(); ++i) header << (i ? "|" : "") << n_list[i];
  write_report_csv(os, report, rc.walk.dimension, header.str());
  write_file(args.out_path, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coined quantum walk: simulation, band structure, weak-limit law, convergence"};
  app.require_subcommand(1);

  CommonArgs args;
  long n_override = -1;
  long k_grid_override = -1;
  long count = 10000;
  bool raw = false;
  bool seed_set = false;
  std::uint64_t seed_override = 0;
  std::vector<long> n_list;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", args.config_path, "JSON run configuration")->required();
    cmd->add_option("--out", args.out_path, "output CSV path")->required();
  };

  CLI::App* simulate = app.add_subcommand("simulate", "evolve the walk and export the position law");
  add_common(simulate);
  simulate->add_option("-n,--n", n_override, "step count override")->check(CLI::NonNegativeNumber);
  simulate->add_flag("--raw", raw, "unrescaled positions");

  CLI::App* spectrum = app.add_subcommand("spectrum", "bands and group velocities along a momentum path");
  add_common(spectrum);
  spectrum->add_option("--k-grid", k_grid_override, "points along the path (default 256)");

  CLI::App* limit = app.add_subcommand("limit", "quadrature weak-limit measure");
  add_common(limit);
  limit->add_option("--k-grid", k_grid_override, "quadrature points per axis");

  CLI::App* sample = app.add_subcommand("sample", "draw velocities from the limit law");
  add_common(sample);
  sample->add_option("--count", count, "number of samples")->check(CLI::PositiveNumber);
  CLI::Option* seed_opt = sample->add_option("--seed", seed_override, "seed override");

  CLI::App* converge = app.add_subcommand("converge", "distance to the limit along a horizon list");
  add_common(converge);
  converge->add_option("--n-list", n_list, "comma separated horizons")->delimiter(',');
  converge->add_option("--k-grid", k_grid_override, "quadrature points per axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }
  seed_set = seed_opt->count() > 0;

  try {
    if (simulate->parsed()) return run_simulate(args, n_override, raw);
    if (spectrum->parsed()) return run_spectrum(args, k_grid_override);
    if (limit->parsed()) return run_limit(args, k_grid_override);
    if (sample->parsed()) return run_sample(args, count, seed_set, seed_override);
    if (converge->parsed()) return run_converge(args, n_list, k_grid_override);
  } catch (const qwalk::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const qwalk::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 3;
  } catch (const qwalk::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
