#include <doctest.h>

#include <cmath>

#include "roc/errors.hpp"
#include "roc/robustness.hpp"
#include "roc/witness.hpp"
#include "support.hpp"

using namespace roc;

namespace {

std::vector<HermitianMatrix> paulis() {
  return {HermitianMatrix(test::pauli_x()), HermitianMatrix(test::pauli_y()), HermitianMatrix(test::pauli_z())};
}

}  // namespace

TEST_CASE("validate_witness examples") {
  CHECK(validate_witness(HermitianMatrix::zero(3)).valid);

  const DensityMatrix plus(maximally_coherent(2));
  const HermitianMatrix w = HermitianMatrix::identity(2) - plus.hermitian() * 2.0;
  const WitnessDiagnostics ok = validate_witness(w);
  CHECK(ok.valid);
  CHECK(std::abs(ok.min_diagonal) <= 1e-15);

  const WitnessDiagnostics big = validate_witness(HermitianMatrix::identity(2) * 2.0);
  CHECK_FALSE(big.valid);
  CHECK(big.max_eigenvalue == doctest::Approx(2.0));
  CHECK_FALSE(big.message.empty());

  RealVector v(2);
  v << -0.5, 0.5;
  CHECK_FALSE(validate_witness(HermitianMatrix::diagonal(v)).valid);
  CHECK_THROWS_AS(CoherenceWitness(HermitianMatrix::diagonal(v)), std::invalid_argument);
}

TEST_CASE("witness lower bound examples") {
  const DensityMatrix plus(maximally_coherent(2));
  const CoherenceWitness w(HermitianMatrix::identity(2) - plus.hermitian() * 2.0);
  CHECK(witness_lower_bound(plus, w) == doctest::Approx(1.0).epsilon(1e-12));

  RealVector p(2);
  p << 0.3, 0.7;
  CHECK(witness_lower_bound(DensityMatrix::diagonal(p), w) == 0.0);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DensityMatrix rho = random_state(3 + static_cast<int>(seed % 3), 2, seed);
    const double expected = (rho.matrix() - dephase(rho).matrix()).squaredNorm() /
                            rho.hermitian().diagonal_real().maxCoeff();
    CHECK(std::abs(witness_lower_bound(rho, faithful_witness(rho)) - expected) <= 1e-12);
    CHECK(std::abs(expected - roc_bounds(rho).faithful_1) <= 1e-12);
  }
}

TEST_CASE("witness bounds never exceed the robustness") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DensityMatrix rho = random_state(3, 3, seed);
    const RocCertificate c = roc_exact(rho);
    CHECK(witness_lower_bound(rho, faithful_witness(rho)) <= c.value + 1e-6);
    const CoherenceWitness optimal(c.witness, 1e-8);
    CHECK(std::abs(witness_lower_bound(rho, optimal) - c.value) <= 1e-6);
  }
}

TEST_CASE("best witness from the X expectation of |+>") {
  const json f = test::fixture("witness_x_plus.json");
  const DataWitness w = best_witness_from_data(dataset_from_json(f["input"]));
  CHECK(std::abs(w.bound - f["value"].get<double>()) <= f["tol"].get<double>());
  CHECK(w.coefficients[0] == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(std::abs(w.offset) <= 1e-6);
  CHECK_FALSE(w.box_active);
  CHECK(validate_witness(w.witness).valid);
}

TEST_CASE("diagonal observables carry no coherence information") {
  const DensityMatrix rho = random_state(3, 3, 5);
  RealVector a(3), b(3);
  a << 1.0, -1.0, 0.5;
  b << 0.0, 2.0, 1.0;
  const WitnessDataset data = dataset_from_state(rho, {HermitianMatrix::diagonal(a), HermitianMatrix::diagonal(b)});
  CHECK(best_witness_from_data(data).bound <= 1e-7);
  CHECK(min_roc_from_data(data).min_roc <= 1e-7);
}

TEST_CASE("maximally mixed data gives a zero bound") {
  const WitnessDataset data = dataset_from_state(DensityMatrix::maximally_mixed(2), paulis());
  CHECK(best_witness_from_data(data).bound <= 1e-7);
}

TEST_CASE("informationally complete qubit data recovers the robustness") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DensityMatrix rho = random_state(2, 1 + static_cast<int>(seed % 2), seed);
    const WitnessDataset data = dataset_from_state(rho, paulis());
    const double exact = roc_exact(rho).value;
    const DataRoc mr = min_roc_from_data(data);
    CHECK(std::abs(mr.min_roc - exact) <= 1e-6);
    CHECK(max_abs_diff(mr.state.matrix(), rho.matrix()) <= 1e-5);
    CHECK(best_witness_from_data(data).bound <= mr.min_roc + 1e-7);
  }
}

TEST_CASE("data chain on partial qutrit data") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const DensityMatrix rho = random_state(3, 2, seed);
    std::vector<HermitianMatrix> obs;
    for (std::uint64_t k = 0; k < 3; ++k) obs.emplace_back(test::random_hermitian(3, 100 * seed + k));
    const WitnessDataset data = dataset_from_state(rho, obs);
    const DataWitness bw = best_witness_from_data(data);
    const DataRoc mr = min_roc_from_data(data);
    CHECK(validate_witness(bw.witness).valid);
    CHECK(bw.bound <= mr.min_roc + 1e-7);
    CHECK(mr.min_roc <= roc_exact(rho).value + 1e-6);
    for (size_t i = 0; i < obs.size(); ++i) {
      CHECK(std::abs(trace_product(obs[i], mr.state.hermitian()) - data.expectations[i]) <= 1e-6);
    }
  }
}

TEST_CASE("inconsistent expectations are infeasible") {
  const WitnessDataset bad{2, {HermitianMatrix(test::pauli_x())}, {2.0}, {}};
  CHECK_THROWS_AS(min_roc_from_data(bad), InfeasibleData);
  CHECK_THROWS_AS(check_data_consistency(bad), InfeasibleData);
  const WitnessDataset clash{2, {HermitianMatrix(test::pauli_x()), HermitianMatrix(test::pauli_x())}, {0.5, 0.7}, {}};
  CHECK_THROWS_AS(min_roc_from_data(clash), InfeasibleData);
  CHECK(best_witness_from_data(clash).box_active);
}

TEST_CASE("duplicated consistent observables are harmless") {
  const DensityMatrix rho = random_state(2, 2, 3);
  const HermitianMatrix x(test::pauli_x());
  const WitnessDataset data = dataset_from_state(rho, {x, x, HermitianMatrix(test::pauli_y())});
  const DataWitness bw = best_witness_from_data(data);
  const DataRoc mr = min_roc_from_data(data);
  CHECK(bw.bound <= mr.min_roc + 1e-7);
  CHECK_FALSE(bw.box_active);
}

TEST_CASE("slack widens the data to intervals") {
  WitnessDataset data{2, {HermitianMatrix(test::pauli_x())}, {1.0}, {0.1}};
  CHECK(best_witness_from_data(data).bound == doctest::Approx(0.9).epsilon(1e-7));
  CHECK(min_roc_from_data(data).min_roc == doctest::Approx(0.9).epsilon(1e-7));
  data.slack = {1.5};
  CHECK(min_roc_from_data(data).min_roc <= 1e-7);
}

TEST_CASE("dataset validation and JSON") {
  const WitnessDataset mismatch{2, {HermitianMatrix(test::pauli_x())}, {0.1, 0.2}, {}};
  CHECK_THROWS_AS(mismatch.validate(), std::invalid_argument);
  const WitnessDataset wrong_dim{3, {HermitianMatrix(test::pauli_x())}, {0.1}, {}};
  CHECK_THROWS_AS(wrong_dim.validate(), std::invalid_argument);

  const WitnessDataset data = dataset_from_state(random_state(2, 2, 1), paulis());
  const WitnessDataset back = dataset_from_json(dataset_to_json(data));
  CHECK(back.dim == 2);
  CHECK(back.expectations == data.expectations);
  const json j = data_witness_to_json(best_witness_from_data(data));
  for (const char* key : {"bound", "coefficients", "offset"}) CHECK(j.contains(key));
}
