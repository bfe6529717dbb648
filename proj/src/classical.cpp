#include "qmaps/classical.hpp"

#include "qmaps/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qmaps {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double x) {
  const double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

long mod(long a, long n) {
  const long r = a % n;
  return r < 0 ? r + n : r;
}

} // namespace

ClassicalDensity::ClassicalDensity(RealMatrix masses) : w_(std::move(masses)) {
  if (w_.rows() == 0 || w_.rows() != w_.cols())
    throw DomainError("ClassicalDensity: expected a non-empty square grid");
  if (w_.minCoeff() < 0.0)
    throw DomainError("ClassicalDensity: negative cell mass");
  if (std::abs(w_.sum() - 1.0) > 1e-9)
    throw DomainError("ClassicalDensity: total mass must be 1");
}

ClassicalDensity ClassicalDensity::uniform(int side) {
  if (side < 1)
    throw DomainError("ClassicalDensity::uniform: side must be positive");
  return ClassicalDensity(
      RealMatrix::Constant(side, side, 1.0 / (static_cast<double>(side) * side)),
      Unchecked{});
}

ClassicalDensity ClassicalDensity::delta(int side, int i, int j) {
  if (side < 1 || i < 0 || i >= side || j < 0 || j >= side)
    throw DomainError("ClassicalDensity::delta: cell outside the grid");
  RealMatrix w = RealMatrix::Zero(side, side);
  w(i, j) = 1.0;
  return ClassicalDensity(std::move(w), Unchecked{});
}

ClassicalDensity ClassicalDensity::gaussian(int side, int dimension, double q0,
                                            double p0) {
  if (side < 1 || dimension < 1)
    throw DomainError("ClassicalDensity::gaussian: sizes must be positive");
  RealVector gq = RealVector::Zero(side), gp = RealVector::Zero(side);
  for (int i = 0; i < side; ++i) {
    const double x = (i + 0.5) / side;
    for (int m = -2; m <= 2; ++m) {
      const double dq = x - q0 + m, dp = x - p0 + m;
      gq(i) += std::exp(-kTwoPi * dimension * dq * dq);
      gp(i) += std::exp(-kTwoPi * dimension * dp * dp);
    }
  }
  RealMatrix w = gq * gp.transpose();
  w /= w.sum();
  return ClassicalDensity(std::move(w), Unchecked{});
}

std::pair<double, double> classical_baker_point(double q, double p) {
  const double b = std::floor(2.0 * q);
  return {2.0 * q - b, (p + b) / 2.0};
}

std::pair<double, double> classical_baker_inverse_point(double q, double p) {
  const double b = std::floor(2.0 * p);
  return {(q + b) / 2.0, 2.0 * p - b};
}

std::pair<double, double> classical_harper_point(double q, double p,
                                                 double gamma) {
  const double qn = wrap(q - gamma * std::sin(kTwoPi * p));
  const double pn = wrap(p + gamma * std::sin(kTwoPi * qn));
  return {qn, pn};
}

std::pair<double, double> classical_harper_inverse_point(double q, double p,
                                                         double gamma) {
  const double pp = wrap(p - gamma * std::sin(kTwoPi * q));
  const double qp = wrap(q + gamma * std::sin(kTwoPi * pp));
  return {qp, pp};
}

ClassicalDensity classical_grid_step(const ClassicalDensity& rho,
                                     const ClassicalMap& map) {
  const int g = rho.side();
  const RealMatrix& in = rho.values();
  RealMatrix out = RealMatrix::Zero(g, g);

  if (map.kind == ClassicalMap::Kind::baker) {
    if (g % 2 != 0)
      throw DomainError("classical_grid_step: baker transport needs an even grid, G = " +
                        std::to_string(g));
    // Cell (i, j) stretches onto q-cells 2i, 2i+1 (mod G) and compresses
    // into p-cell floor((j + G b)/2), b = floor(2i/G).
    for (int j = 0; j < g; ++j)
      for (int i = 0; i < g; ++i) {
        const int b = (2 * i) / g;
        const int tp = (j + g * b) / 2;
        const double half = 0.5 * in(i, j);
        out((2 * i) % g, tp) += half;
        out((2 * i + 1) % g, tp) += half;
      }
    return ClassicalDensity(std::move(out), ClassicalDensity::Unchecked{});
  }

  for (int j = 0; j < g; ++j) {
    for (int i = 0; i < g; ++i) {
      const auto [q, p] = classical_harper_inverse_point((i + 0.5) / g,
                                                         (j + 0.5) / g, map.gamma);
      const double x = q * g - 0.5, y = p * g - 0.5;
      const double fx = std::floor(x), fy = std::floor(y);
      const double tx = x - fx, ty = y - fy;
      const long i0 = mod(static_cast<long>(fx), g), j0 = mod(static_cast<long>(fy), g);
      const long i1 = (i0 + 1) % g, j1 = (j0 + 1) % g;
      out(i, j) = (1 - tx) * (1 - ty) * in(i0, j0) + tx * (1 - ty) * in(i1, j0) +
                  (1 - tx) * ty * in(i0, j1) + tx * ty * in(i1, j1);
    }
  }
  const double total = out.sum();
  if (total > 0.0)
    out *= rho.mass() / total;
  return ClassicalDensity(std::move(out), ClassicalDensity::Unchecked{});
}

ClassicalDensity classical_diffuse(const ClassicalDensity& rho,
                                   const DiffusionChannel& channel) {
  if (!channel.collinear())
    throw UnsupportedOperation(
        "classical_diffuse: non-collinear mixtures have no stencil");
  const long g = rho.side();
  const long n = channel.spec().dimension();
  if (g % n != 0)
    throw DomainError("classical_diffuse: grid side " + std::to_string(g) +
                      " is not a multiple of N = " + std::to_string(n));
  const long cells = g / n;
  const double alpha = channel.alpha();
  const int m = channel.terms();
  const auto dir = channel.direction();
  const RealMatrix& in = rho.values();
  RealMatrix out = (1.0 - alpha) * in;
  const double weight = alpha / (2.0 * m);
  for (int k = 1; k <= m; ++k) {
    const long sq = mod(cells * k * dir.dq, g);
    const long sp = mod(cells * k * dir.dp, g);
    for (long p = 0; p < g; ++p)
      for (long q = 0; q < g; ++q)
        out(q, p) += weight * (in((q + sq) % g, (p + sp) % g) +
                               in((q - sq + g) % g, (p - sp + g) % g));
  }
  return ClassicalDensity(std::move(out), ClassicalDensity::Unchecked{});
}

double classical_linear_entropy(const ClassicalDensity& rho) {
  const double s = rho.values().squaredNorm();
  if (!(s > 0.0))
    throw InvariantError("classical_linear_entropy: empty density");
  return -std::log(s);
}

double l1_distance(const WignerGrid& w, const ClassicalDensity& rho) {
  if (w.side() != rho.side())
    throw DomainError("l1_distance: Wigner lattice is " + std::to_string(w.side()) +
                      " wide, classical grid " + std::to_string(rho.side()));
  return (w.values() - rho.values()).cwiseAbs().sum();
}

} // namespace qmaps
