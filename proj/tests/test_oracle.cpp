#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "roc/games.hpp"
#include "roc/oracle.hpp"
#include "roc/robustness.hpp"
#include "support.hpp"

using namespace roc;

TEST_CASE("descent oracle on qubits matches 2|rho01|") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const DensityMatrix rho = random_state(2, 2, seed);
    CHECK(std::abs(oracle::roc_descent_oracle(rho, 2, seed) - 2.0 * std::abs(rho(0, 1))) <= 1e-5);
  }
}

TEST_CASE("descent oracle on pure qutrits matches the amplitude formula") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const PureState psi = random_pure(3, seed);
    const double s = psi.amplitudes().cwiseAbs().sum();
    CHECK(std::abs(oracle::roc_descent_oracle(DensityMatrix(psi), 2, seed) - (s * s - 1.0)) <= 1e-4);
  }
}

TEST_CASE("descent oracle on a diagonal state is zero") {
  RealVector p(3);
  p << 0.5, 0.3, 0.2;
  CHECK(oracle::roc_descent_oracle(DensityMatrix::diagonal(p)) <= 1e-9);
}

TEST_CASE("descent oracle stays above the SDP value") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const DensityMatrix rho = random_state(3, 1 + static_cast<int>(seed % 3), seed + 40);
    const RocCertificate c = roc_exact(rho);
    // The SDP certificate's lower end bounds every feasible value from below.
    CHECK(oracle::roc_descent_oracle(rho, 3, seed) >= c.dual_value - 1e-7);
  }
}

TEST_CASE("Helstrom oracle examples") {
  const DensityMatrix zero = DensityMatrix::diagonal((RealVector(2) << 1.0, 0.0).finished());
  const DensityMatrix one = DensityMatrix::diagonal((RealVector(2) << 0.0, 1.0).finished());
  const Ensemble orth{{zero.hermitian() * 0.5, one.hermitian() * 0.5}};
  CHECK(oracle::helstrom(orth) == doctest::Approx(1.0));

  const DensityMatrix rho = random_state(2, 2, 3);
  const Ensemble same{{rho.hermitian() * 0.3, rho.hermitian() * 0.7}};
  CHECK(oracle::helstrom(same) == doctest::Approx(0.7));

  const DensityMatrix plus(maximally_coherent(2));
  const oracle::GridResult g = oracle::discrimination_grid_oracle(make_ensemble(canonical_game(2), plus));
  CHECK(g.helstrom == doctest::Approx(1.0));
  CHECK(g.grid_best <= g.helstrom + 1e-12);
  CHECK(g.grid_best == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("grid search never beats Helstrom and approaches it") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const DensityMatrix a = random_state(2, 2, seed);
    const DensityMatrix b = random_state(2, 1, seed + 9);
    const Ensemble e{{a.hermitian() * 0.4, b.hermitian() * 0.6}};
    const oracle::GridResult g = oracle::discrimination_grid_oracle(e, 128);
    CHECK(g.grid_best <= g.helstrom + 1e-12);
    CHECK(g.grid_best >= g.helstrom - 1e-3);
  }
}

TEST_CASE("grid oracle rejects unsupported ensembles") {
  const DensityMatrix rho = random_state(3, 3, 1);
  CHECK_THROWS_AS(oracle::discrimination_grid_oracle(make_ensemble(canonical_game(3), rho)), std::invalid_argument);
  const DensityMatrix q = random_state(2, 2, 1);
  const Ensemble three{{q.hermitian() * 0.2, q.hermitian() * 0.3, q.hermitian() * 0.5}};
  CHECK_THROWS_AS(oracle::helstrom(three), std::invalid_argument);
}
