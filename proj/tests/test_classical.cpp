#include "qmaps/classical.hpp"
#include "qmaps/errors.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace qmaps;

namespace {

double wrapped_difference(double a, double b) {
  double d = a - b;
  return d - std::round(d);
}

} // namespace

TEST_CASE("classical baker point map") {
  auto [q1, p1] = classical_baker_point(0.3, 0.6);
  CHECK(q1 == doctest::Approx(0.6));
  CHECK(p1 == doctest::Approx(0.3));
  auto [q2, p2] = classical_baker_point(0.7, 0.2);
  CHECK(q2 == doctest::Approx(0.4));
  CHECK(p2 == doctest::Approx(0.6));

  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const double q = u(rng), p = u(rng);
    const auto [qf, pf] = classical_baker_point(q, p);
    const auto [qb, pb] = classical_baker_inverse_point(qf, pf);
    CHECK(std::abs(qb - q) <= 1e-15);
    CHECK(std::abs(pb - p) <= 1e-15);
  }
}

TEST_CASE("classical Harper point map") {
  SUBCASE("gamma = 0 is the identity") {
    const auto [q, p] = classical_harper_point(0.37, 0.81, 0.0);
    CHECK(q == 0.37);
    CHECK(p == 0.81);
  }
  SUBCASE("(0.25, 0) with gamma = 0.2") {
    const auto [q, p] = classical_harper_point(0.25, 0.0, 0.2);
    CHECK(q == doctest::Approx(0.25));
    CHECK(p == doctest::Approx(0.2));
  }
  SUBCASE("area preserving and invertible") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double h = 1e-6, gamma = 0.45;
    for (int k = 0; k < 100; ++k) {
      const double q = u(rng), p = u(rng);
      const auto [qa, pa] = classical_harper_point(q + h, p, gamma);
      const auto [qb, pb] = classical_harper_point(q - h, p, gamma);
      const auto [qc, pc] = classical_harper_point(q, p + h, gamma);
      const auto [qd, pd] = classical_harper_point(q, p - h, gamma);
      const double jqq = wrapped_difference(qa, qb) / (2 * h);
      const double jpq = wrapped_difference(pa, pb) / (2 * h);
      const double jqp = wrapped_difference(qc, qd) / (2 * h);
      const double jpp = wrapped_difference(pc, pd) / (2 * h);
      CHECK(std::abs(jqq * jpp - jqp * jpq - 1.0) <= 1e-8);

      const auto [q1, p1] = classical_harper_point(q, p, gamma);
      const auto [q0, p0] = classical_harper_inverse_point(q1, p1, gamma);
      CHECK(std::abs(wrapped_difference(q0, q)) < 1e-12);
      CHECK(std::abs(wrapped_difference(p0, p)) < 1e-12);
    }
  }
}

TEST_CASE("classical grid transport") {
  SUBCASE("uniform density is stationary") {
    const auto flat = ClassicalDensity::uniform(16);
    for (const auto& map : {ClassicalMap::baker(), ClassicalMap::harper(0.45)}) {
      const auto out = classical_grid_step(flat, map);
      CHECK((out.values() - flat.values()).cwiseAbs().maxCoeff() < 1e-15);
    }
  }
  SUBCASE("baker on a 4 x 4 grid") {
    const auto a = classical_grid_step(ClassicalDensity::delta(4, 0, 0), ClassicalMap::baker());
    CHECK(a.values()(0, 0) == 0.5);
    CHECK(a.values()(1, 0) == 0.5);
    CHECK(a.values().sum() == 1.0);
    // Cell (3, 1) covers q in [3/4, 1), p in [1/4, 1/2); its image is
    // q in [1/2, 1), p in [5/8, 3/4).
    const auto b = classical_grid_step(ClassicalDensity::delta(4, 3, 1), ClassicalMap::baker());
    CHECK(b.values()(2, 2) == 0.5);
    CHECK(b.values()(3, 2) == 0.5);
  }
  SUBCASE("baker needs an even grid") {
    CHECK_THROWS_AS(classical_grid_step(ClassicalDensity::uniform(5), ClassicalMap::baker()),
                    DomainError);
  }
  SUBCASE("harper with gamma = 0 leaves the density unchanged") {
    const auto rho = ClassicalDensity::gaussian(32, 16, 0.3, 0.7);
    const auto out = classical_grid_step(rho, ClassicalMap::harper(0.0));
    CHECK((out.values() - rho.values()).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SUBCASE("mass conserved and nonnegative over many steps") {
    auto baker = ClassicalDensity::gaussian(64, 32, 1.0 / 3, 1.0 / 3);
    auto harper = baker;
    for (int t = 0; t < 6 * 6; ++t) {
      baker = classical_grid_step(baker, ClassicalMap::baker());
      harper = classical_grid_step(harper, ClassicalMap::harper(0.45));
      CHECK(baker.values().minCoeff() >= 0.0);
      CHECK(harper.values().minCoeff() >= 0.0);
      CHECK(std::abs(baker.mass() - 1.0) <= 1e-12);
      CHECK(std::abs(harper.mass() - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("classical diffusion") {
  const int n = 8, g = 2 * n;
  const PhaseSpaceSpec spec(n);
  SUBCASE("alpha = 0 leaves the density unchanged") {
    const auto rho = ClassicalDensity::gaussian(g, n, 0.2, 0.4);
    const auto out = classical_diffuse(rho, DiffusionChannel(spec, 0.0, 3, 1, 1));
    CHECK((out.values() - rho.values()).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("delta with M = 1, alpha = 0.5 spreads to three sites") {
    const auto out = classical_diffuse(ClassicalDensity::delta(g, 5, 6),
                                       DiffusionChannel(spec, 0.5, 1, 0, 1));
    CHECK(out.values()(5, 6) == 0.5);
    CHECK(out.values()(5, 8) == 0.25);
    CHECK(out.values()(5, 4) == 0.25);
    CHECK(out.values().sum() == 1.0);
  }
  SUBCASE("mass exact, entropy non-decreasing") {
    auto rho = ClassicalDensity::gaussian(g, n, 0.5, 0.5);
    const DiffusionChannel ch(spec, 0.4, 2, 1, 0);
    for (int t = 0; t < 10; ++t) {
      const auto next = classical_diffuse(rho, ch);
      CHECK(std::abs(next.mass() - 1.0) <= 1e-14);
      CHECK(classical_linear_entropy(next) >= classical_linear_entropy(rho) - 1e-12);
      rho = next;
    }
  }
  SUBCASE("grid must be a multiple of N") {
    CHECK_THROWS_AS(classical_diffuse(ClassicalDensity::uniform(12),
                                      DiffusionChannel(spec, 0.5, 1, 0, 1)),
                    DomainError);
  }
}

TEST_CASE("classical linear entropy") {
  CHECK(classical_linear_entropy(ClassicalDensity::delta(10, 3, 4)) == 0.0);
  CHECK(classical_linear_entropy(ClassicalDensity::uniform(10)) ==
        doctest::Approx(2 * std::log(10.0)));
  const auto rho = ClassicalDensity::gaussian(12, 6, 0.1, 0.9);
  double sum = 0;
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j)
      sum += rho.values()(i, j) * rho.values()(i, j);
  CHECK(classical_linear_entropy(rho) == doctest::Approx(-std::log(sum)));
}

TEST_CASE("classical density construction and comparison") {
  CHECK_THROWS_AS(ClassicalDensity(RealMatrix::Constant(2, 2, 0.3)), DomainError);
  RealMatrix negative = RealMatrix::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(ClassicalDensity{negative}, DomainError);

  const PhaseSpaceSpec spec(4);
  const WignerGrid w(spec, RealMatrix::Constant(8, 8, 1.0 / 64));
  CHECK(l1_distance(w, ClassicalDensity::uniform(8)) == doctest::Approx(0.0));
  CHECK_THROWS_AS(l1_distance(w, ClassicalDensity::uniform(6)), DomainError);
}
