#include "qmaps/runner.hpp"

#include "qmaps/errors.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

namespace qmaps {

namespace {

PhaseSpaceSpec spec_of(const ExperimentConfig& c) {
  return PhaseSpaceSpec(c.N, c.chi_q, c.chi_p);
}

UnitaryPropagator propagator_of(const ExperimentConfig& c, const PhaseSpaceSpec& spec) {
  return c.map == MapKind::baker ? baker_propagator(spec)
                                 : harper_propagator(spec, c.gamma);
}

DiffusionChannel channel_of(const ExperimentConfig& c, const PhaseSpaceSpec& spec) {
  const auto d = c.direction_vector();
  return DiffusionChannel(spec, c.alpha, c.terms(), d.dq, d.dp);
}

double least_squares_slope(const std::vector<EntropyRecord>& r, std::size_t first,
                           std::size_t last) {
  const double n = static_cast<double>(last - first + 1);
  double st = 0, ss = 0;
  for (std::size_t i = first; i <= last; ++i) {
    st += r[i].t;
    ss += r[i].s_quantum;
  }
  const double mt = st / n, ms = ss / n;
  double num = 0, den = 0;
  for (std::size_t i = first; i <= last; ++i) {
    num += (r[i].t - mt) * (r[i].s_quantum - ms);
    den += (r[i].t - mt) * (r[i].t - mt);
  }
  return num / den;
}

SlopeFit no_regime(std::string why) {
  SlopeFit f;
  f.note = "no linear regime: " + std::move(why);
  return f;
}

std::string format_real(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

} // namespace

DensityMatrix initial_density(const ExperimentConfig& c) {
  const PhaseSpaceSpec spec = spec_of(c);
  switch (c.initial) {
  case InitialKind::coherent:
    return DensityMatrix::pure(coherent_state(spec, c.q0, c.p0));
  case InitialKind::momentum:
    return DensityMatrix::pure(basis_state(spec, Basis::momentum, c.index));
  case InitialKind::position:
    break;
  }
  return DensityMatrix::pure(basis_state(spec, Basis::position, c.index));
}

ClassicalDensity initial_classical(const ExperimentConfig& c) {
  const int side = 2 * c.N;
  if (c.initial == InitialKind::coherent)
    return ClassicalDensity::gaussian(side, c.N, c.q0, c.p0);
  // An eigenstate at (index + 1/2)/N sits on the boundary between cells
  // 2 index and 2 index + 1; spread it evenly over both and the other axis.
  RealMatrix w = RealMatrix::Zero(side, side);
  const double share = 1.0 / (2.0 * side);
  for (int k = 0; k < side; ++k)
    for (int cell = 2 * c.index; cell <= 2 * c.index + 1; ++cell) {
      if (c.initial == InitialKind::position)
        w(cell, k) = share;
      else
        w(k, cell) = share;
    }
  return ClassicalDensity(std::move(w));
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  const PhaseSpaceSpec spec = spec_of(config);
  const UnitaryPropagator u = propagator_of(config, spec);
  const DiffusionChannel channel = channel_of(config, spec);
  const double log_n = std::log(static_cast<double>(config.N));

  DensityMatrix rho = initial_density(config);
  std::optional<ClassicalDensity> classical;
  const ClassicalMap cmap = config.map == MapKind::baker
                                ? ClassicalMap::baker()
                                : ClassicalMap::harper(config.gamma);
  if (config.classical_parallel)
    classical = initial_classical(config);

  ExperimentResult result;
  result.series.log_dimension = log_n;
  result.series.records.reserve(config.steps + 1);

  auto record = [&](int t) {
    EntropyRecord r;
    r.t = t;
    r.s_quantum = linear_entropy(rho);
    r.trace_residual = std::abs(rho.trace() - 1.0);
    if (classical)
      r.s_classical = classical_linear_entropy(*classical);
    if (r.trace_residual > 1e-9)
      throw InvariantError("trace drifted by " + format_real(r.trace_residual) +
                           " at t = " + std::to_string(t));
    if (r.s_quantum < -1e-10 || r.s_quantum > log_n + 1e-9)
      throw InvariantError("linear entropy " + format_real(r.s_quantum) +
                           " outside [0, ln N] at t = " + std::to_string(t));
    result.series.records.push_back(r);

    if (config.wigner_every > 0 && t % config.wigner_every == 0) {
      Snapshot s;
      s.t = t;
      s.wigner = wigner_transform(rho, spec);
      if (classical)
        s.classical = *classical;
      result.snapshots.push_back(std::move(s));
    }
  };

  record(0);
  for (int t = 1; t <= config.steps; ++t) {
    rho = unitary_step(rho, u, config.step_mode);
    rho = apply_diffusion(rho, channel, config.diffusion_mode);
    if (classical)
      classical = classical_diffuse(classical_grid_step(*classical, cmap), channel);
    record(t);
  }

  if (config.slope_fit)
    result.fit = fit_slope(result.series, *config.slope_fit);
  return result;
}

SlopeFit fit_slope(const EntropySeries& series, const FitPolicy& policy) {
  const auto& r = series.records;
  const double ln_n = series.log_dimension;
  const auto min_points = static_cast<std::size_t>(std::max(2, policy.min_points));
  std::size_t first = 0, last = 0;

  switch (policy.kind) {
  case FitPolicy::Kind::band: {
    const double lo = policy.band_low * ln_n, hi = policy.band_high * ln_n;
    auto inside = [&](std::size_t i) {
      return r[i].s_quantum > lo && r[i].s_quantum < hi;
    };
    std::size_t i = 0;
    while (i < r.size() && !inside(i))
      ++i;
    if (i == r.size())
      return no_regime("S never enters the fit band");
    first = i;
    while (i + 1 < r.size() && inside(i + 1))
      ++i;
    last = i;
    break;
  }
  case FitPolicy::Kind::plateau: {
    if (r.size() < 2)
      return no_regime("series too short");
    // Increment i runs from record i to i + 1.
    const double ceiling = policy.plateau_ceiling * ln_n;
    auto usable = [&](std::size_t i) { return r[i + 1].s_quantum < ceiling; };
    std::optional<std::size_t> best;
    double d_max = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
      const double d = r[i + 1].s_quantum - r[i].s_quantum;
      if (usable(i) && d > d_max) {
        d_max = d;
        best = i;
      }
    }
    if (!best)
      return no_regime("S starts above the plateau ceiling");
    if (!(d_max > 0.0))
      return no_regime("S does not grow");
    const double floor = policy.plateau_fraction * d_max;
    std::size_t a = *best, b = *best;
    while (a > 0 && usable(a - 1) && r[a].s_quantum - r[a - 1].s_quantum >= floor)
      --a;
    while (b + 2 < r.size() && usable(b + 1) &&
           r[b + 2].s_quantum - r[b + 1].s_quantum >= floor)
      ++b;
    first = a;
    last = b + 1;
    break;
  }
  case FitPolicy::Kind::explicit_range: {
    auto it = std::find_if(r.begin(), r.end(),
                           [&](const EntropyRecord& e) { return e.t >= policy.t_first; });
    if (it == r.end() || it->t > policy.t_last)
      return no_regime("requested range holds no samples");
    first = static_cast<std::size_t>(it - r.begin());
    last = first;
    while (last + 1 < r.size() && r[last + 1].t <= policy.t_last)
      ++last;
    break;
  }
  }

  const std::size_t count = last - first + 1;
  if (count < min_points)
    return no_regime("window holds " + std::to_string(count) + " points, need " +
                     std::to_string(min_points));
  SlopeFit fit;
  fit.slope = least_squares_slope(r, first, last);
  fit.t_first = r[first].t;
  fit.t_last = r[last].t;
  fit.points = static_cast<int>(count);
  return fit;
}

SweepAxis SweepAxis::parse(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos)
    throw ConfigError("axis", "expected alpha=... or N=...");
  SweepAxis axis;
  const auto name = text.substr(0, eq);
  if (name == "alpha")
    axis.kind = Kind::alpha;
  else if (name == "N")
    axis.kind = Kind::N;
  else
    throw ConfigError("axis", "unknown axis '" + std::string(name) + "'");

  auto number = [](std::string_view s) {
    double v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw ConfigError("axis", "cannot parse '" + std::string(s) + "'");
    return v;
  };

  const auto list = text.substr(eq + 1);
  if (list.empty())
    return axis;
  if (list.find(':') != std::string_view::npos) {
    const auto c1 = list.find(':');
    const auto c2 = list.find(':', c1 + 1);
    if (c2 == std::string_view::npos)
      throw ConfigError("axis", "range must be start:stop:step");
    const double start = number(list.substr(0, c1));
    const double stop = number(list.substr(c1 + 1, c2 - c1 - 1));
    const double step = number(list.substr(c2 + 1));
    if (!(step > 0.0))
      throw ConfigError("axis", "step must be positive");
    if (stop >= start) {
      const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
      for (long i = 0; i < count; ++i)
        // Round away the accumulated binary error so 0.3 prints as 0.3.
        axis.values.push_back(std::round((start + i * step) * 1e12) / 1e12);
    }
  } else {
    std::size_t pos = 0;
    while (pos <= list.size()) {
      const auto comma = list.find(',', pos);
      const auto item =
          list.substr(pos, comma == std::string_view::npos ? list.npos : comma - pos);
      axis.values.push_back(number(item));
      pos = comma == std::string_view::npos ? list.size() + 1 : comma + 1;
    }
  }
  if (axis.kind == Kind::N)
    for (double v : axis.values)
      if (v != std::floor(v) || v < 1)
        throw ConfigError("axis", "N values must be positive integers");
  return axis;
}

std::vector<SweepRow> sweep(const ExperimentConfig& base, const SweepAxis& axis,
                            unsigned threads) {
  std::vector<SweepRow> rows(axis.values.size());
  const FitPolicy policy = base.slope_fit.value_or(FitPolicy{});

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      SweepRow& row = rows[i];
      row.value = axis.values[i];
      ExperimentConfig c = base;
      c.wigner_every = 0;
      c.classical_parallel = false;
      if (axis.kind == SweepAxis::Kind::alpha)
        c.alpha = row.value;
      else
        c.N = static_cast<int>(row.value);
      try {
        c.validate();
        ExperimentResult r = run_experiment(c);
        row.fit = fit_slope(r.series, policy);
        row.series = std::move(r.series);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };

  if (threads == 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(rows.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k)
      pool.emplace_back(worker);
  }
  return rows;
}

double collapse_spread(const std::vector<EntropySeries>& curves, double ceiling,
                       int samples) {
  if (curves.size() < 2 || samples < 2)
    return 0.0;
  double x_max = std::numeric_limits<double>::infinity();
  for (const auto& c : curves) {
    if (c.records.size() < 2)
      throw DomainError("collapse_spread: every curve needs two samples");
    x_max = std::min(x_max, c.records.back().t / c.log_dimension);
  }

  // Linear interpolation of S/ln N at x = t/ln N.
  auto sample = [](const EntropySeries& c, double x) {
    const double t = x * c.log_dimension;
    const auto& r = c.records;
    std::size_t i = 0;
    while (i + 2 < r.size() && r[i + 1].t < t)
      ++i;
    const double w = (t - r[i].t) / (r[i + 1].t - r[i].t);
    return ((1 - w) * r[i].s_quantum + w * r[i + 1].s_quantum) / c.log_dimension;
  };

  double spread = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double x = x_max * k / (samples - 1);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& c : curves) {
      const double y = sample(c, x);
      lo = std::min(lo, y);
      hi = std::max(hi, y);
    }
    if (hi <= ceiling)
      spread = std::max(spread, hi - lo);
  }
  return spread;
}

std::optional<Crossover> branch_crossover(const std::vector<double>& alphas,
                                          const std::vector<double>& slopes,
                                          double weak_max, double strong_min) {
  if (alphas.size() != slopes.size())
    throw DomainError("branch_crossover: alphas and slopes differ in length");
  double sxy = 0, sxx = 0, plateau = 0;
  int strong = 0;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!std::isfinite(slopes[i]))
      continue;
    if (alphas[i] <= weak_max && alphas[i] > 0.0) {
      const double x = -2.0 * std::log1p(-alphas[i]);
      sxy += x * slopes[i];
      sxx += x * x;
    }
    if (alphas[i] >= strong_min) {
      plateau += slopes[i];
      ++strong;
    }
  }
  if (sxx == 0.0 || strong == 0)
    return std::nullopt;
  Crossover c;
  c.kappa = sxy / sxx;
  c.plateau = plateau / strong;
  if (!(c.kappa > 0.0))
    return std::nullopt;
  c.alpha = 1.0 - std::exp(-c.plateau / (2.0 * c.kappa));
  return c;
}

void write_series_csv(std::ostream& out, const EntropySeries& series) {
  const auto precision = out.precision(17);
  out << "t,S_quantum,S_classical,trace_residual\n";
  for (const auto& r : series.records) {
    out << r.t << ',' << r.s_quantum << ',';
    if (r.s_classical)
      out << *r.s_classical;
    out << ',' << r.trace_residual << '\n';
  }
  out.precision(precision);
}

void write_sweep_csv(std::ostream& out, const SweepAxis& axis,
                     const std::vector<SweepRow>& rows) {
  const auto precision = out.precision(17);
  if (axis.kind == SweepAxis::Kind::alpha) {
    out << "alpha,slope,t_first,t_last,note\n";
    for (const auto& row : rows) {
      out << row.value << ',';
      if (row.fit.slope)
        out << *row.fit.slope << ',' << row.fit.t_first << ',' << row.fit.t_last << ',';
      else
        out << ",,,";
      out << '"' << (row.error.empty() ? row.fit.note : "error: " + row.error) << "\"\n";
    }
  } else {
    out << "N,t,t_over_lnN,S_over_lnN,note\n";
    for (const auto& row : rows) {
      if (!row.series) {
        out << row.value << ",,,,\"error: " << row.error << "\"\n";
        continue;
      }
      const double ln_n = row.series->log_dimension;
      for (const auto& r : row.series->records)
        out << row.value << ',' << r.t << ',' << r.t / ln_n << ','
            << r.s_quantum / ln_n << ",\"\"\n";
    }
  }
  out.precision(precision);
}

} // namespace qmaps
