#include "qmaps/errors.hpp"
#include "qmaps/runner.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

namespace qmaps {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end)
    throw ConfigError(std::string(key), "cannot parse '" + std::string(text) + "'");
  return value;
}

// Fractions such as 1/3 are accepted for coordinates.
double parse_real(std::string_view key, std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos)
    return parse_number<double>(key, text);
  const double num = parse_number<double>(key, trim(text.substr(0, slash)));
  const double den = parse_number<double>(key, trim(text.substr(slash + 1)));
  if (den == 0.0)
    throw ConfigError(std::string(key), "division by zero");
  return num / den;
}

template <typename E>
E parse_choice(std::string_view key, std::string_view text,
               std::initializer_list<std::pair<std::string_view, E>> choices) {
  std::string options;
  for (const auto& [name, value] : choices) {
    if (name == text)
      return value;
    options += options.empty() ? "" : "|";
    options += name;
  }
  throw ConfigError(std::string(key), "expected one of " + options + ", got '" +
                                          std::string(text) + "'");
}

FitPolicy parse_fit(std::string_view arg) {
  FitPolicy policy;
  if (arg.empty() || arg == "band") {
    policy.kind = FitPolicy::Kind::band;
  } else if (arg == "plateau") {
    policy.kind = FitPolicy::Kind::plateau;
  } else if (const auto colon = arg.find(':'); colon != std::string_view::npos) {
    policy.kind = FitPolicy::Kind::explicit_range;
    policy.t_first = parse_number<int>("outputs", trim(arg.substr(0, colon)));
    policy.t_last = parse_number<int>("outputs", trim(arg.substr(colon + 1)));
  } else {
    throw ConfigError("outputs", "slope_fit expects band, plateau or t0:t1");
  }
  return policy;
}

void parse_outputs(ExperimentConfig& c, std::string_view text) {
  c.entropy_series = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto token =
        trim(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos));
    pos = comma == std::string_view::npos ? text.size() + 1 : comma + 1;
    if (token.empty())
      continue;
    std::string_view name = token, arg;
    if (const auto open = token.find('('); open != std::string_view::npos) {
      if (token.back() != ')')
        throw ConfigError("outputs", "unbalanced parenthesis in '" + std::string(token) + "'");
      name = trim(token.substr(0, open));
      arg = trim(token.substr(open + 1, token.size() - open - 2));
    }
    if (name == "entropy_series") {
      c.entropy_series = true;
    } else if (name == "wigner_every") {
      c.wigner_every = parse_number<int>("outputs", arg);
    } else if (name == "classical_parallel") {
      c.classical_parallel = true;
    } else if (name == "slope_fit") {
      const FitPolicy keep = c.slope_fit.value_or(FitPolicy{});
      FitPolicy p = parse_fit(arg);
      p.band_low = keep.band_low;
      p.band_high = keep.band_high;
      p.plateau_fraction = keep.plateau_fraction;
      p.plateau_ceiling = keep.plateau_ceiling;
      p.min_points = keep.min_points;
      c.slope_fit = p;
    } else {
      throw ConfigError("outputs", "unknown output '" + std::string(name) + "'");
    }
  }
}

} // namespace

int ExperimentConfig::terms() const {
  return M_divisor > 0 ? std::max(1, N / M_divisor) : M;
}

Displacement ExperimentConfig::direction_vector() const {
  switch (direction) {
  case DirectionTag::alpha_q:
    return {1, 0};
  case DirectionTag::alpha_p:
    return {0, 1};
  case DirectionTag::custom:
    break;
  }
  return {dq, dp};
}

void ExperimentConfig::validate() const {
  if (N < 1)
    throw ConfigError("N", "must be positive");
  if (!(chi_q >= 0.0 && chi_q < 1.0))
    throw ConfigError("chi_q", "must lie in [0, 1)");
  if (!(chi_p >= 0.0 && chi_p < 1.0))
    throw ConfigError("chi_p", "must lie in [0, 1)");
  const bool antiperiodic = chi_q == 0.5 && chi_p == 0.5;
  if (map == MapKind::baker) {
    if (N % 2 != 0)
      throw ConfigError("N", "the baker map needs even N, got " + std::to_string(N));
    if (!antiperiodic)
      throw ConfigError("chi_q", "the baker map is quantized for chi_q = chi_p = 1/2 only");
  }
  if (initial == InitialKind::coherent) {
    if (!(q0 >= 0.0 && q0 < 1.0))
      throw ConfigError("q0", "must lie in [0, 1)");
    if (!(p0 >= 0.0 && p0 < 1.0))
      throw ConfigError("p0", "must lie in [0, 1)");
  } else if (index < 0 || index >= N) {
    throw ConfigError("index", "must lie in [0, N)");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw ConfigError("alpha", "must lie in [0, 1]");
  if (terms() < 1 || terms() > N)
    throw ConfigError("M", "must lie in [1, N], got " + std::to_string(terms()));
  const auto d = direction_vector();
  if (d.dq == 0 && d.dp == 0)
    throw ConfigError("direction", "displacement (dq, dp) must be nonzero");
  if (steps < 0)
    throw ConfigError("steps", "must be nonnegative");
  if (wigner_every < 0)
    throw ConfigError("outputs", "wigner_every must be nonnegative");
  if (wigner_every > 0 && !antiperiodic)
    throw ConfigError("outputs", "Wigner snapshots need chi_q = chi_p = 1/2");
  if (slope_fit) {
    const FitPolicy& f = *slope_fit;
    if (f.min_points < 2)
      throw ConfigError("fit_min_points", "must be at least 2");
    if (!(f.band_low < f.band_high))
      throw ConfigError("fit_band_low", "must be below fit_band_high");
    if (!(f.plateau_fraction > 0.0 && f.plateau_fraction <= 1.0))
      throw ConfigError("fit_plateau_fraction", "must lie in (0, 1]");
    if (f.kind == FitPolicy::Kind::explicit_range && f.t_last < f.t_first)
      throw ConfigError("outputs", "slope_fit range is empty");
  }
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig c;
  std::set<std::string, std::less<>> seen;
  // Fit parameters may precede or follow the slope_fit output entry.
  std::map<std::string, double, std::less<>> fit_params;

  std::istringstream lines{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(lines, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(lineno), "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second)
      throw ConfigError(key, "given more than once");

    if (key == "map") {
      c.map = parse_choice<MapKind>(key, value,
                                    {{"baker", MapKind::baker}, {"harper", MapKind::harper}});
    } else if (key == "gamma") {
      c.gamma = parse_real(key, value);
    } else if (key == "N") {
      c.N = parse_number<int>(key, value);
    } else if (key == "chi_q") {
      c.chi_q = parse_real(key, value);
    } else if (key == "chi_p") {
      c.chi_p = parse_real(key, value);
    } else if (key == "initial") {
      c.initial = parse_choice<InitialKind>(key, value,
                                            {{"coherent", InitialKind::coherent},
                                             {"momentum", InitialKind::momentum},
                                             {"position", InitialKind::position}});
    } else if (key == "q0") {
      c.q0 = parse_real(key, value);
    } else if (key == "p0") {
      c.p0 = parse_real(key, value);
    } else if (key == "index") {
      c.index = parse_number<int>(key, value);
    } else if (key == "alpha") {
      c.alpha = parse_real(key, value);
    } else if (key == "M") {
      if (value.starts_with("N/")) {
        c.M_divisor = parse_number<int>(key, trim(value.substr(2)));
        if (c.M_divisor < 1)
          throw ConfigError(key, "divisor must be positive");
      } else {
        c.M = parse_number<int>(key, value);
      }
    } else if (key == "direction") {
      c.direction = parse_choice<DirectionTag>(key, value,
                                               {{"alpha_q", DirectionTag::alpha_q},
                                                {"alpha_p", DirectionTag::alpha_p},
                                                {"custom", DirectionTag::custom}});
    } else if (key == "dq") {
      c.dq = parse_number<long>(key, value);
    } else if (key == "dp") {
      c.dp = parse_number<long>(key, value);
    } else if (key == "steps") {
      c.steps = parse_number<int>(key, value);
    } else if (key == "outputs") {
      parse_outputs(c, value);
    } else if (key == "step_mode") {
      c.step_mode = parse_choice<StepMode>(key, value,
                                           {{"automatic", StepMode::automatic},
                                            {"dense", StepMode::dense},
                                            {"factored", StepMode::factored}});
    } else if (key == "diffusion_mode") {
      c.diffusion_mode = parse_choice<DiffusionMode>(key, value,
                                                     {{"automatic", DiffusionMode::automatic},
                                                      {"kraus", DiffusionMode::kraus},
                                                      {"fast", DiffusionMode::fast}});
    } else if (key == "fit_band_low" || key == "fit_band_high" ||
               key == "fit_plateau_fraction" || key == "fit_plateau_ceiling" ||
               key == "fit_min_points") {
      fit_params[key] = parse_real(key, value);
    } else {
      throw ConfigError(key, "unknown key");
    }
  }

  if (!fit_params.empty()) {
    if (!c.slope_fit)
      throw ConfigError(fit_params.begin()->first, "needs slope_fit in outputs");
    FitPolicy& f = *c.slope_fit;
    for (const auto& [key, v] : fit_params) {
      if (key == "fit_band_low")
        f.band_low = v;
      else if (key == "fit_band_high")
        f.band_high = v;
      else if (key == "fit_plateau_fraction")
        f.plateau_fraction = v;
      else if (key == "fit_plateau_ceiling")
        f.plateau_ceiling = v;
      else
        f.min_points = static_cast<int>(v);
    }
  }
  if (c.direction != DirectionTag::custom && (seen.count("dq") || seen.count("dp")))
    throw ConfigError("dq", "only used with direction = custom");
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("config", "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

} // namespace qmaps
