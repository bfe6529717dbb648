#pragma once

#include "qmaps/channel.hpp"
#include "qmaps/classical.hpp"
#include "qmaps/maps.hpp"
#include "qmaps/wigner.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qmaps {

/// Window selection for fit_slope.
struct FitPolicy {
  enum class Kind {
    band,          ///< first contiguous run with low < S/ln N < high
    plateau,       ///< steepest stretch of per-step increments
    explicit_range ///< t_first..t_last inclusive
  };
  Kind kind = Kind::band;
  double band_low = 0.1;
  double band_high = 0.75;
  // plateau: start from the largest increment whose endpoint is below
  // ceiling * ln N and extend while increments stay >= fraction of it.
  double plateau_fraction = 0.9;
  double plateau_ceiling = 0.9;
  int t_first = 0;
  int t_last = 0;
  int min_points = 4;
};

enum class MapKind { baker, harper };
enum class InitialKind { coherent, momentum, position };
enum class DirectionTag { alpha_q, alpha_p, custom };

/// One experiment. Loaded from flat `key = value` text; see parse_config.
struct ExperimentConfig {
  MapKind map = MapKind::baker;
  double gamma = 0.0;
  int N = 128;
  double chi_q = 0.5;
  double chi_p = 0.5;

  InitialKind initial = InitialKind::coherent;
  double q0 = 1.0 / 3.0;
  double p0 = 1.0 / 3.0;
  int index = 0;

  double alpha = 0.0;
  int M = 1;
  int M_divisor = 0; // "M = N/k": terms = max(1, N/k)
  DirectionTag direction = DirectionTag::alpha_p;
  long dq = 0;
  long dp = 1;

  int steps = 0;

  bool entropy_series = true;
  int wigner_every = 0;
  bool classical_parallel = false;
  std::optional<FitPolicy> slope_fit;

  StepMode step_mode = StepMode::automatic;
  DiffusionMode diffusion_mode = DiffusionMode::automatic;

  int terms() const;
  Displacement direction_vector() const;
  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Parses `key = value` lines; `#` starts a comment. Unknown or repeated keys
/// and malformed values are ConfigErrors. The result is validated.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

struct EntropyRecord {
  int t = 0;
  double s_quantum = 0.0;
  std::optional<double> s_classical;
  double trace_residual = 0.0;
};

struct EntropySeries {
  double log_dimension = 0.0;
  std::vector<EntropyRecord> records;
};

struct SlopeFit {
  std::optional<double> slope; ///< empty: no linear regime
  int t_first = -1;
  int t_last = -1;
  int points = 0;
  std::string note;

  bool found() const noexcept { return slope.has_value(); }
};

SlopeFit fit_slope(const EntropySeries& series, const FitPolicy& policy = {});

struct Snapshot {
  int t = 0;
  std::optional<WignerGrid> wigner;
  std::optional<ClassicalDensity> classical;
};

struct ExperimentResult {
  EntropySeries series;
  std::vector<Snapshot> snapshots;
  std::optional<SlopeFit> fit;
};

/// Per step: unitary half-step, then diffusion; entropies are recorded after
/// the diffusion. Throws InvariantError if the trace drifts by more than 1e-9
/// or S leaves [-1e-10, ln N + 1e-9].
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Initial state of a config as a density matrix.
DensityMatrix initial_density(const ExperimentConfig& config);
/// Classical counterpart of the initial state on a 2N grid.
ClassicalDensity initial_classical(const ExperimentConfig& config);

struct SweepAxis {
  enum class Kind { alpha, N };
  Kind kind = Kind::alpha;
  std::vector<double> values;

  /// "alpha=start:stop:step", "alpha=a,b,c", "N=64,128,256"; an empty value
  /// list is allowed.
  static SweepAxis parse(std::string_view text);
};

struct SweepRow {
  double value = 0.0;
  std::optional<EntropySeries> series;
  SlopeFit fit;
  std::string error;
};

/// Independent runs, executed on up to `threads` workers (0: hardware
/// concurrency). Row order follows the axis; a failing run is recorded in
/// its row and the sweep continues. Rows are fitted with the config's fit
/// policy, or the default band policy if none is set.
std::vector<SweepRow> sweep(const ExperimentConfig& base, const SweepAxis& axis,
                            unsigned threads = 0);

/// Largest pointwise spread of S/ln N between curves plotted against t/ln N,
/// over the region where every curve is below `ceiling`. Curves are linearly
/// interpolated on `samples` points of the common range.
double collapse_spread(const std::vector<EntropySeries>& curves,
                       double ceiling = 0.75, int samples = 400);

/// Where a slope-vs-alpha curve leaves the weak-coupling branch. The weak
/// branch kappa * (-2 ln(1-alpha)) is fitted over alpha <= weak_max, the
/// plateau is the mean slope over alpha >= strong_min, and the crossover is
/// their intersection.
struct Crossover {
  double alpha = 0.0;
  double kappa = 0.0;
  double plateau = 0.0;
};
std::optional<Crossover> branch_crossover(const std::vector<double>& alphas,
                                          const std::vector<double>& slopes,
                                          double weak_max = 0.2,
                                          double strong_min = 0.5);

void write_series_csv(std::ostream& out, const EntropySeries& series);
void write_sweep_csv(std::ostream& out, const SweepAxis& axis,
                     const std::vector<SweepRow>& rows);

} // namespace qmaps
