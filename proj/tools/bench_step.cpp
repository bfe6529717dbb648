// Times one dense and one factored propagation step per dimension, to locate
// the crossover behind kFactoredThreshold.

#include "qmaps/maps.hpp"
#include "qmaps/selftest.hpp"

#include <chrono>
#include <cstdio>

using namespace qmaps;

namespace {

double seconds_per_step(const DensityMatrix& rho, const UnitaryPropagator& u,
                        StepMode mode) {
  using clock = std::chrono::steady_clock;
  int reps = 0;
  const auto start = clock::now();
  double elapsed = 0.0;
  do {
    const auto out = unitary_step(rho, u, mode);
    ++reps;
    elapsed = std::chrono::duration<double>(clock::now() - start).count();
  } while (elapsed < 0.2);
  return elapsed / reps;
}

} // namespace

int main() {
  std::mt19937_64 rng(7);
  std::printf("N,map,dense_s,factored_s\n");
  for (int n : {16, 32, 48, 64, 96, 128, 256}) {
    const PhaseSpaceSpec spec(n);
    const DensityMatrix rho = random_density(n, rng);
    for (const auto& [name, u] :
         {std::pair{"baker", baker_propagator(spec)},
          std::pair{"harper", harper_propagator(spec, 0.45)}})
      std::printf("%d,%s,%.3e,%.3e\n", n, name, seconds_per_step(rho, u, StepMode::dense),
                  seconds_per_step(rho, u, StepMode::factored));
  }
}
