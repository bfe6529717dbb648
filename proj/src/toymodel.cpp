#include "qmaps/toymodel.hpp"

#include "qmaps/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qmaps {

namespace {

void check(double alpha, int t) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw DomainError("toy model: alpha must lie in [0, 1]");
  if (t < 0)
    throw DomainError("toy model: t must be nonnegative, got " + std::to_string(t));
}

} // namespace

double toy_log_purity(const ToyModelParams& params) {
  check(params.alpha, params.t);
  const int t = params.t;
  const double ln2 = std::numbers::ln2;
  if (t == 0)
    return 0.0;
  if (params.alpha == 1.0)
    return -t * ln2;

  // ln of the geometric sum (x^t - 1)/(x - 1) and of (1-alpha)^2.
  const double lc = 2.0 * std::log1p(-params.alpha);
  const double lx = ln2 + lc;
  double log_bracket;
  if (lx > 0.0 && t * lx > 30.0) {
    const double lsum = t * lx + std::log1p(-std::exp(-t * lx)) - std::log(std::expm1(lx));
    const double a = lc + lsum;
    log_bracket = a + std::log1p(std::exp(-a));
  } else {
    const double sum = lx == 0.0 ? t : std::expm1(t * lx) / std::expm1(lx);
    log_bracket = std::log1p(std::exp(lc) * sum);
  }
  return -t * ln2 + log_bracket;
}

double toy_purity(const ToyModelParams& params) {
  return std::exp(toy_log_purity(params));
}

double toy_entropy(const ToyModelParams& params) { return 0.0 - toy_log_purity(params); }

double toy_slope(double alpha, int t) {
  return toy_entropy({alpha, t + 1}) - toy_entropy({alpha, t});
}

double asymptotic_slope(double alpha) {
  check(alpha, 0);
  if (alpha == 1.0)
    return std::numbers::ln2;
  return std::min(std::numbers::ln2, -2.0 * std::log1p(-alpha));
}

double alpha_critical() { return 1.0 - std::numbers::sqrt2 / 2.0; }

} // namespace qmaps
