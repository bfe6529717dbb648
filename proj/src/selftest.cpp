#include "qmaps/selftest.hpp"

#include "qmaps/channel.hpp"
#include "qmaps/maps.hpp"
#include "qmaps/wigner.hpp"

#include <algorithm>
#include <array>

namespace qmaps {

DensityMatrix random_density(int dimension, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix x(dimension, dimension);
  for (Eigen::Index j = 0; j < x.cols(); ++j)
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      x(i, j) = Complex(normal(rng), normal(rng));
  ComplexMatrix rho = x * x.adjoint();
  rho /= rho.trace().real();
  DensityMatrix out(std::move(rho));
  out.hermitize();
  return out;
}

namespace {

constexpr std::array<Displacement, 7> kDirections{
    {{0, 1}, {1, 0}, {1, 1}, {2, 1}, {0, 2}, {1, -1}, {-3, 2}}};

SelftestCheck diffusion_vs_kraus(std::mt19937_64& rng) {
  SelftestCheck c{"fast diffusion vs Kraus sum (N <= 16)", 0.0, 1e-12, 50};
  std::uniform_int_distribution<int> dim(2, 16), dir(0, kDirections.size() - 1),
      step(0, 10);
  for (int k = 0; k < c.cases; ++k) {
    const int n = dim(rng);
    const int m = std::uniform_int_distribution<int>(1, n)(rng);
    const double alpha = 0.1 * step(rng);
    const auto d = kDirections[dir(rng)];
    const DiffusionChannel ch(PhaseSpaceSpec(n), alpha, m, d.dq, d.dp);
    const DensityMatrix rho = random_density(n, rng);
    const auto fast = apply_diffusion(rho, ch, DiffusionMode::fast);
    const auto kraus = apply_diffusion(rho, ch, DiffusionMode::kraus);
    c.error = std::max(c.error, (fast.matrix() - kraus.matrix()).cwiseAbs().maxCoeff());
  }
  return c;
}

SelftestCheck wigner_commuting(std::mt19937_64& rng) {
  SelftestCheck c{"Wigner commuting diagram (N <= 12)", 0.0, 1e-10, 0};
  std::uniform_int_distribution<int> dir(0, kDirections.size() - 1), step(1, 10);
  for (int n = 2; n <= 12; ++n) {
    const PhaseSpaceSpec spec(n);
    const int m = std::uniform_int_distribution<int>(1, n)(rng);
    const auto d = kDirections[dir(rng)];
    const DiffusionChannel ch(spec, 0.1 * step(rng), m, d.dq, d.dp);
    const DensityMatrix rho = random_density(n, rng);
    const auto lhs = wigner_transform(apply_diffusion(rho, ch), spec);
    const auto rhs = wigner_diffuse(wigner_transform(rho, spec), ch);
    c.error = std::max(c.error, (lhs.values() - rhs.values()).cwiseAbs().maxCoeff());
    ++c.cases;
  }
  return c;
}

SelftestCheck wigner_fast_vs_direct(std::mt19937_64& rng) {
  SelftestCheck c{"FFT Wigner vs -Re Tr(rho A) (N <= 10)", 0.0, 1e-10, 0};
  for (int n = 1; n <= 10; ++n) {
    const PhaseSpaceSpec spec(n);
    const DensityMatrix rho = random_density(n, rng);
    const auto fast = wigner_transform(rho, spec);
    const auto direct = wigner_transform_direct(rho, spec);
    c.error = std::max(c.error, (fast.values() - direct.values()).cwiseAbs().maxCoeff());
    ++c.cases;
  }
  return c;
}

SelftestCheck factored_vs_dense(std::mt19937_64& rng) {
  SelftestCheck c{"factored vs dense propagation (N <= 64)", 0.0, 1e-10, 0};
  for (int n = 2; n <= 64; n *= 2) {
    const PhaseSpaceSpec spec(n);
    const DensityMatrix rho = random_density(n, rng);
    for (const auto& u : {baker_propagator(spec), harper_propagator(spec, 0.45)}) {
      const auto f = unitary_step(rho, u, StepMode::factored);
      const auto d = unitary_step(rho, u, StepMode::dense);
      c.error = std::max(c.error, (f.matrix() - d.matrix()).cwiseAbs().maxCoeff());
      ++c.cases;
    }
  }
  return c;
}

} // namespace

std::vector<SelftestCheck> run_selftest(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<SelftestCheck> out;
  out.push_back(diffusion_vs_kraus(rng));
  out.push_back(wigner_commuting(rng));
  out.push_back(wigner_fast_vs_direct(rng));
  out.push_back(factored_vs_dense(rng));
  return out;
}

} // namespace qmaps
