#pragma once

// Classical counterparts on a G x G cell grid over the unit torus. Cell (i, j)
// covers [i/G, (i+1)/G) x [j/G, (j+1)/G); values are cell masses.

#include "qmaps/channel.hpp"
#include "qmaps/kinematics.hpp"
#include "qmaps/wigner.hpp"

#include <utility>

namespace qmaps {

struct ClassicalMap {
  enum class Kind { baker, harper };
  Kind kind = Kind::baker;
  double gamma = 0.0;

  static ClassicalMap baker() { return {Kind::baker, 0.0}; }
  static ClassicalMap harper(double gamma) { return {Kind::harper, gamma}; }
};

class ClassicalDensity {
public:
  /// Takes cell masses as given; they must be nonnegative and sum to 1.
  explicit ClassicalDensity(RealMatrix masses);

  static ClassicalDensity uniform(int side);
  static ClassicalDensity delta(int side, int i, int j);
  /// Periodized Gaussian of the coherent-state width 1/(4 pi N) in each
  /// direction, sampled at cell centres and normalized.
  static ClassicalDensity gaussian(int side, int dimension, double q0, double p0);

  int side() const noexcept { return static_cast<int>(w_.rows()); }
  const RealMatrix& values() const noexcept { return w_; }
  double mass() const { return w_.sum(); }

private:
  struct Unchecked {};
  ClassicalDensity(RealMatrix masses, Unchecked) : w_(std::move(masses)) {}

  friend ClassicalDensity classical_grid_step(const ClassicalDensity&,
                                              const ClassicalMap&);
  friend ClassicalDensity classical_diffuse(const ClassicalDensity&,
                                            const DiffusionChannel&);

  RealMatrix w_;
};

/// q' = 2q - floor(2q), p' = (p + floor(2q)) / 2.
std::pair<double, double> classical_baker_point(double q, double p);
std::pair<double, double> classical_baker_inverse_point(double q, double p);

/// q' = q - gamma sin(2 pi p) mod 1, then p' = p + gamma sin(2 pi q') mod 1.
std::pair<double, double> classical_harper_point(double q, double p, double gamma);
std::pair<double, double> classical_harper_inverse_point(double q, double p,
                                                         double gamma);

/// Baker: exact cell transport (needs even G). Harper: backward
/// semi-Lagrangian step with bilinear interpolation between cell centres,
/// renormalized to the incoming mass.
ClassicalDensity classical_grid_step(const ClassicalDensity& rho,
                                     const ClassicalMap& map);

/// Same stencil as wigner_diffuse with G/N cells per unit displacement
/// (G must be a multiple of N).
ClassicalDensity classical_diffuse(const ClassicalDensity& rho,
                                   const DiffusionChannel& channel);

/// S_c = -ln sum w^2: 0 for a single occupied cell, 2 ln G when uniform.
double classical_linear_entropy(const ClassicalDensity& rho);

/// sum |W(q,p) - w(q,p)| over the 2N lattice; needs G = 2N.
double l1_distance(const WignerGrid& w, const ClassicalDensity& rho);

} // namespace qmaps
