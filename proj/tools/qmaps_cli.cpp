// Command-line front end: run, snapshot, sweep, toy, selftest.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical invariant
// violation, 1 anything else.

#include "qmaps/errors.hpp"
#include "qmaps/grid_io.hpp"
#include "qmaps/runner.hpp"
#include "qmaps/selftest.hpp"
#include "qmaps/toymodel.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace qmaps;

namespace {

constexpr int kPaperScaleN = 1594;

ExperimentConfig load(const std::string& path, bool paper_scale) {
  ExperimentConfig c = load_config(path);
  if (paper_scale) {
    c.N = kPaperScaleN;
    c.validate();
  }
  return c;
}

std::string stamp(int t) {
  std::ostringstream s;
  s << 't' << std::setw(4) << std::setfill('0') << t;
  return s.str();
}

void write_snapshots(const ExperimentResult& r, const fs::path& dir, bool csv) {
  fs::create_directories(dir);
  for (const auto& s : r.snapshots) {
    if (s.wigner) {
      save_wigner(dir / ("wigner_" + stamp(s.t) + ".wgrd"), *s.wigner);
      if (csv) {
        std::ofstream out(dir / ("wigner_" + stamp(s.t) + ".csv"));
        write_grid_csv(out, s.wigner->values());
      }
    }
    if (s.classical) {
      save_classical(dir / ("classical_" + stamp(s.t) + ".cgrd"), *s.classical);
      if (csv) {
        std::ofstream out(dir / ("classical_" + stamp(s.t) + ".csv"));
        write_grid_csv(out, s.classical->values());
      }
    }
  }
}

void report_fit(const SlopeFit& f) {
  if (f.found())
    std::cerr << std::setprecision(6) << "slope " << *f.slope << " over t = "
              << f.t_first << ".." << f.t_last << " (" << f.points << " points)\n";
  else
    std::cerr << f.note << '\n';
}

int run_command(const ExperimentConfig& c, const std::string& out_dir, bool csv) {
  const ExperimentResult r = run_experiment(c);
  if (out_dir.empty()) {
    if (c.entropy_series)
      write_series_csv(std::cout, r.series);
  } else {
    fs::create_directories(out_dir);
    if (c.entropy_series) {
      std::ofstream out(fs::path(out_dir) / "series.csv");
      write_series_csv(out, r.series);
    }
    write_snapshots(r, out_dir, csv);
  }
  if (r.fit)
    report_fit(*r.fit);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum maps on the torus with diffusive decoherence"};
  app.require_subcommand(1);
  bool paper_scale = false;
  app.add_flag("--paper-scale", paper_scale,
               "Override N with 1594 (slow; needs several GB of memory)");

  std::string config_path, out_dir, axis_text;
  bool csv = false;
  int every = 1;
  unsigned threads = 0;
  double toy_alpha = 0.5;
  int toy_tmax = 20;

  auto* run = app.add_subcommand("run", "Evolve one experiment and print its entropy series");
  run->add_option("config", config_path, "Experiment file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Directory for series.csv and snapshots");
  run->add_flag("--csv", csv, "Also write snapshots as CSV");

  auto* snapshot = app.add_subcommand("snapshot", "Dump Wigner (and classical) grids");
  snapshot->add_option("config", config_path, "Experiment file")->required()->check(CLI::ExistingFile);
  snapshot->add_option("--every", every, "Snapshot cadence in steps")->check(CLI::PositiveNumber);
  snapshot->add_option("--out", out_dir, "Output directory")->required();
  snapshot->add_flag("--csv", csv, "Also write CSV grids");

  auto* sweep_cmd = app.add_subcommand("sweep", "Fitted slopes over alpha, or rescaled curves over N");
  sweep_cmd->add_option("config", config_path, "Template experiment file")->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--axis", axis_text, "alpha=start:stop:step, alpha=a,b,... or N=n1,n2,...")->required();
  sweep_cmd->add_option("--threads", threads, "Parallel runs (0: all cores)");
  sweep_cmd->add_option("--out", out_dir, "CSV file (default stdout)");

  auto* toy = app.add_subcommand("toy", "Analytic element-counting model");
  toy->add_option("--alpha", toy_alpha, "Coupling")->check(CLI::Range(0.0, 1.0));
  toy->add_option("--tmax", toy_tmax, "Last iteration")->check(CLI::NonNegativeNumber);

  auto* selftest = app.add_subcommand("selftest", "Oracle equivalence checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run)
      return run_command(load(config_path, paper_scale), out_dir, csv);

    if (*snapshot) {
      ExperimentConfig c = load(config_path, paper_scale);
      c.wigner_every = every;
      c.entropy_series = true;
      c.validate();
      return run_command(c, out_dir, csv);
    }

    if (*sweep_cmd) {
      const ExperimentConfig c = load(config_path, paper_scale);
      const SweepAxis axis = SweepAxis::parse(axis_text);
      const auto rows = sweep(c, axis, threads);
      if (out_dir.empty()) {
        write_sweep_csv(std::cout, axis, rows);
      } else {
        std::ofstream out(out_dir);
        if (!out)
          throw ConfigError("--out", "cannot open " + out_dir);
        write_sweep_csv(out, axis, rows);
      }
      return 0;
    }

    if (*toy) {
      std::cout << "t,S,slope,asymptotic_slope\n" << std::setprecision(17);
      for (int t = 0; t <= toy_tmax; ++t)
        std::cout << t << ',' << toy_entropy({toy_alpha, t}) << ','
                  << toy_slope(toy_alpha, t) << ',' << asymptotic_slope(toy_alpha)
                  << '\n';
      return 0;
    }

    if (*selftest) {
      bool ok = true;
      for (const auto& check : run_selftest()) {
        std::printf("%-4s %-45s max error %.3e (tolerance %.0e, %d cases)\n",
                    check.passed() ? "ok" : "FAIL", check.name.c_str(), check.error,
                    check.tolerance, check.cases);
        ok = ok && check.passed();
      }
      return ok ? 0 : 3;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
