#include "helpers.hpp"

#include "qmaps/errors.hpp"
#include "qmaps/kinematics.hpp"
#include "qmaps/maps.hpp"
#include "qmaps/selftest.hpp"

#include <doctest.h>

#include <numbers>

using namespace qmaps;
using testing::max_abs;

TEST_CASE("phase space spec validates and derives h_eff") {
  const PhaseSpaceSpec spec(8);
  CHECK(spec.antiperiodic());
  CHECK(spec.h_eff() == doctest::Approx(1.0 / 8));
  CHECK(spec.position_of(3) == doctest::Approx(3.5 / 8));
  CHECK_THROWS_AS(PhaseSpaceSpec(0), DomainError);
  CHECK_THROWS_AS(PhaseSpaceSpec(4, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(PhaseSpaceSpec(4, 0.5, -0.1), DomainError);
}

TEST_CASE("fourier kernel") {
  SUBCASE("N = 1 is -i") {
    const auto g = fourier_kernel(PhaseSpaceSpec(1)).elements;
    CHECK(std::abs(g(0, 0) - Complex(0, -1)) < 1e-15);
  }
  SUBCASE("unitary for N = 8") {
    CHECK(unitarity_error(fourier_kernel(PhaseSpaceSpec(8)).elements) < 1e-12);
  }
  SUBCASE("matches a scalar loop at N = 4 and at non-default angles") {
    for (const auto& spec : {PhaseSpaceSpec(4), PhaseSpaceSpec(5, 0.2, 0.7)}) {
      const int n = spec.dimension();
      const auto g = fourier_kernel(spec).elements;
      for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k) {
          const double arg = -2 * std::numbers::pi / n * (m + spec.chi_q()) *
                             (k + spec.chi_p());
          CHECK(std::abs(g(m, k) - std::polar(1 / std::sqrt(double(n)), arg)) < 1e-13);
        }
    }
  }
}

TEST_CASE("shift operators") {
  const PhaseSpaceSpec spec(3);
  const auto u = shift_operator(spec, Basis::position).elements;
  const auto v = shift_operator(spec, Basis::momentum).elements;

  SUBCASE("U moves position index n to n+1, picking up -1 at the wrap") {
    ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
    expected(1, 0) = 1;
    expected(2, 1) = 1;
    expected(0, 2) = -1; // exp(-2 pi i chi_q) for chi_q = 1/2
    CHECK(max_abs(u - expected) < 1e-15);
  }
  SUBCASE("V shifts momentum eigenstates") {
    for (int m = 0; m < 3; ++m) {
      const auto pm = basis_state(spec, Basis::momentum, m).amplitudes;
      const auto next = basis_state(spec, Basis::momentum, (m + 1) % 3).amplitudes;
      const Complex overlap = next.dot(v * pm);
      CHECK(std::abs(overlap) == doctest::Approx(1.0));
    }
  }
  SUBCASE("V U = exp(2 pi i / N) U V") {
    const Complex phase = std::polar(1.0, 2 * std::numbers::pi / 3);
    CHECK(max_abs(v * u - phase * u * v) < 1e-14);
  }
  SUBCASE("U^N and V^N are global phases") {
    for (int n = 1; n <= 8; ++n) {
      const PhaseSpaceSpec s(n);
      for (auto axis : {Basis::position, Basis::momentum}) {
        const auto p = testing::naive_power(shift_operator(s, axis).elements, n);
        CHECK(max_abs(p - p(0, 0) * ComplexMatrix::Identity(n, n)) < 1e-12);
        CHECK(std::abs(p(0, 0)) == doctest::Approx(1.0));
      }
    }
  }
  SUBCASE("unitary up to N = 512") {
    for (int n = 1; n <= 512; n *= 2) {
      const PhaseSpaceSpec s(n);
      CHECK(unitarity_error(shift_operator(s, Basis::position).elements) <= 1e-12);
      CHECK(unitarity_error(shift_operator(s, Basis::momentum).elements) <= 1e-12);
      CHECK(unitarity_error(fourier_kernel(s).elements) <= 1e-12);
      CHECK(unitarity_error(displacement(s, 3, -5).elements) <= 1e-12);
    }
  }
}

TEST_CASE("displacement operators") {
  SUBCASE("D(0,0) is the identity") {
    CHECK(max_abs(displacement(PhaseSpaceSpec(5), 0, 0).elements -
                  ComplexMatrix::Identity(5, 5)) == 0.0);
  }
  SUBCASE("D(1,0) is the position shift") {
    const PhaseSpaceSpec spec(6);
    CHECK(max_abs(displacement(spec, 1, 0).elements -
                  shift_operator(spec, Basis::position).elements) < 1e-15);
  }
  SUBCASE("N = 4, D(1,1) = U V exp(i pi / 4)") {
    const PhaseSpaceSpec spec(4);
    const auto u = shift_operator(spec, Basis::position).elements;
    const auto v = shift_operator(spec, Basis::momentum).elements;
    const ComplexMatrix expected = u * v * std::polar(1.0, std::numbers::pi / 4);
    CHECK(max_abs(displacement(spec, 1, 1).elements - expected) < 1e-14);
  }
  SUBCASE("arbitrary powers agree with repeated products") {
    const PhaseSpaceSpec spec(5, 0.3, 0.8);
    const auto u = shift_operator(spec, Basis::position).elements;
    const auto v = shift_operator(spec, Basis::momentum).elements;
    for (long dq = -7; dq <= 7; dq += 2)
      for (long dp = -6; dp <= 6; dp += 3) {
        const ComplexMatrix expected =
            testing::naive_power(u, dq) * testing::naive_power(v, dp) *
            std::polar(1.0, std::numbers::pi * dp * dq / 5);
        CHECK(max_abs(displacement(spec, dq, dp).elements - expected) < 1e-12);
      }
  }
  SUBCASE("D(dq,dp) D(-dq,-dp) is a global phase, N <= 32") {
    for (int n : {2, 3, 7, 16, 32}) {
      const PhaseSpaceSpec spec(n);
      for (long dq : {-3L, 0L, 1L, 5L})
        for (long dp : {-2L, 1L, 4L}) {
          const ComplexMatrix prod =
              displacement(spec, dq, dp).elements * displacement(spec, -dq, -dp).elements;
          CHECK(testing::phase_aligned_distance(prod, ComplexMatrix::Identity(n, n)) < 1e-12);
        }
    }
  }
}

TEST_CASE("basis states") {
  SUBCASE("position state is a unit vector with its location") {
    const auto psi = basis_state(PhaseSpaceSpec(4), Basis::position, 2);
    ComplexVector expected = ComplexVector::Zero(4);
    expected(2) = 1;
    CHECK((psi.amplitudes - expected).norm() == 0.0);
    REQUIRE(psi.label);
    CHECK(psi.label->location == doctest::Approx(2.5 / 4));
  }
  SUBCASE("momentum state is a column of G^dagger") {
    const PhaseSpaceSpec spec(4);
    const ComplexMatrix gd = fourier_kernel(spec).elements.adjoint();
    CHECK((basis_state(spec, Basis::momentum, 1).amplitudes - gd.col(1)).norm() < 1e-14);
  }
  SUBCASE("<p_m|q_n> = G_mn for N = 5") {
    const PhaseSpaceSpec spec(5);
    const auto g = fourier_kernel(spec).elements;
    for (int m = 0; m < 5; ++m)
      for (int n = 0; n < 5; ++n) {
        const Complex overlap = basis_state(spec, Basis::momentum, m)
                                    .amplitudes.dot(basis_state(spec, Basis::position, n).amplitudes);
        CHECK(std::abs(overlap - g(m, n)) < 1e-14);
      }
  }
  SUBCASE("orthonormal up to N = 64") {
    for (int n : {1, 3, 16, 64}) {
      const PhaseSpaceSpec spec(n);
      for (auto kind : {Basis::position, Basis::momentum}) {
        ComplexMatrix b(n, n);
        for (int i = 0; i < n; ++i)
          b.col(i) = basis_state(spec, kind, i).amplitudes;
        CHECK(max_abs(b.adjoint() * b - ComplexMatrix::Identity(n, n)) < 1e-12);
      }
    }
  }
  SUBCASE("index out of range") {
    CHECK_THROWS_AS(basis_state(PhaseSpaceSpec(4), Basis::position, 4), DomainError);
    CHECK_THROWS_AS(basis_state(PhaseSpaceSpec(4), Basis::momentum, -1), DomainError);
  }
}

TEST_CASE("coherent states") {
  SUBCASE("normalized") {
    for (double q0 : {0.0, 0.3, 0.99})
      for (double p0 : {0.1, 0.5})
        CHECK(coherent_state(PhaseSpaceSpec(32), q0, p0).squared_norm() ==
              doctest::Approx(1.0).epsilon(1e-12));
  }
  const PhaseSpaceSpec spec(64);
  const auto psi = coherent_state(spec, 0.5, 0.5);
  const Eigen::VectorXd prob = psi.amplitudes.cwiseAbs2();
  SUBCASE("position peak within one cell of q0") {
    Eigen::Index arg;
    prob.maxCoeff(&arg);
    CHECK(std::abs(spec.position_of(static_cast<int>(arg)) - 0.5) <= 1.0 / 64);
  }
  SUBCASE("position variance close to 1/(4 pi N)") {
    double var = 0;
    for (int n = 0; n < 64; ++n) {
      double d = spec.position_of(n) - 0.5;
      d -= std::round(d);
      var += prob(n) * d * d;
    }
    CHECK(var == doctest::Approx(1.0 / (4 * std::numbers::pi * 64)).epsilon(0.2));
  }
}

TEST_CASE("linear entropy") {
  SUBCASE("pure state") {
    const auto rho = DensityMatrix::pure(coherent_state(PhaseSpaceSpec(16), 0.2, 0.7));
    CHECK(std::abs(linear_entropy(rho)) < 1e-12);
  }
  SUBCASE("maximally mixed N = 8") {
    CHECK(linear_entropy(DensityMatrix::maximally_mixed(8)) ==
          doctest::Approx(std::log(8.0)).epsilon(1e-14));
  }
  SUBCASE("matches a double loop for random rho") {
    std::mt19937_64 rng(3);
    const auto rho = random_density(6, rng);
    double sum = 0;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        sum += std::norm(rho.matrix()(i, j));
    CHECK(linear_entropy(rho) == doctest::Approx(-std::log(sum)).epsilon(1e-14));
    CHECK(linear_entropy(rho) >= -1e-12);
    CHECK(linear_entropy(rho) <= std::log(6.0) + 1e-12);
  }
  SUBCASE("invariant under conjugation by module unitaries") {
    std::mt19937_64 rng(5);
    for (int n : {4, 16, 64}) {
      const PhaseSpaceSpec spec(n);
      const auto rho = random_density(n, rng);
      const double s = linear_entropy(rho);
      for (const ComplexMatrix& u :
           {fourier_kernel(spec).elements, shift_operator(spec, Basis::momentum).elements,
            displacement(spec, 2, -3).elements, baker_propagator(spec).dense().elements}) {
        const DensityMatrix conj(u * rho.matrix() * u.adjoint());
        CHECK(std::abs(linear_entropy(conj) - s) <= 1e-10);
      }
    }
  }
  SUBCASE("density checks flag broken invariants") {
    ComplexMatrix m = ComplexMatrix::Identity(3, 3) / 3.0;
    m(0, 1) = 0.1;
    CHECK_THROWS_AS(DensityMatrix(m).check(), InvariantError);
    CHECK_NOTHROW(DensityMatrix::maximally_mixed(3).check(1e-12, true));
  }
}
