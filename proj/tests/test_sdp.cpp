#include <doctest.h>

#include <cmath>
#include <sstream>

#include "roc/matrix_json.hpp"
#include "roc/sdp.hpp"
#include "support.hpp"

using namespace roc;
using namespace roc::sdp;

namespace {

// max Tr[Y rho] s.t. diag(Y) = 1, Y PSD, written as min Tr[-rho Y].
ConicProblem unit_diagonal_problem(const DensityMatrix& rho) {
  const int d = rho.dim();
  ConicProblem p({{BlockKind::kPsd, d}});
  p.set_cost(-rho.hermitian(), 0);
  for (int j = 0; j < d; ++j) {
    p.add_constraint({{Term{0, {{j, j, 1.0}}}}, 1.0});
  }
  return p;
}

}  // namespace

TEST_CASE("scalar block: min x s.t. x = 1") {
  ConicProblem p({{BlockKind::kPsd, 1}});
  p.set_cost(HermitianMatrix::identity(1), 0);
  p.add_constraint({{Term{0, {{0, 0, 1.0}}}}, 1.0});
  const ConicSolution sol = solve(p);
  REQUIRE(sol.optimal());
  CHECK(sol.primal_value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(sol.dual_value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("unit-diagonal program on the maximally coherent qutrit") {
  const DensityMatrix rho(maximally_coherent(3));
  const ConicSolution sol = solve(unit_diagonal_problem(rho));
  REQUIRE(sol.optimal());
  CHECK(-sol.primal_value == doctest::Approx(3.0).epsilon(1e-8));
  MESSAGE("iterations " << sol.iterations);
}

TEST_CASE("unit-diagonal program on random qubits gives 1 + 2|rho01|") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DensityMatrix rho = random_state(2, 2, seed);
    const ConicSolution sol = solve(unit_diagonal_problem(rho));
    REQUIRE(sol.optimal());
    CHECK(std::abs(-sol.primal_value - (1.0 + 2.0 * std::abs(rho(0, 1)))) <= 1e-7);
  }
}

TEST_CASE("linear program over a nonnegative block") {
  // min x0 + 2 x1 s.t. x0 - x1 = 0.5, x0 + x1 = 3
  ConicProblem p({{BlockKind::kNonneg, 2}});
  RealVector c(2);
  c << 1.0, 2.0;
  p.set_cost(c, 0);
  p.add_constraint({{Term{0, {{0, 0, 1.0}, {1, 1, -1.0}}}}, 0.5});
  p.add_constraint({{Term{0, {{0, 0, 1.0}, {1, 1, 1.0}}}}, 3.0});
  const ConicSolution sol = solve(p);
  REQUIRE(sol.optimal());
  CHECK(sol.primal_value == doctest::Approx(4.25).epsilon(1e-8));
  CHECK(sol.x[0].nonneg(0) == doctest::Approx(1.75).epsilon(1e-7));
  CHECK(sol.x[0].nonneg(1) == doctest::Approx(1.25).epsilon(1e-7));
}

TEST_CASE("badly scaled costs still converge") {
  // max y s.t. y <= 1e6, y <= 1, as a primal with costs (1e6, 1).
  ConicProblem p({{BlockKind::kNonneg, 2}});
  RealVector c(2);
  c << 1e6, 1.0;
  p.set_cost(c, 0);
  p.add_constraint({{Term{0, {{0, 0, 1.0}, {1, 1, 1.0}}}}, 1.0});
  const ConicSolution sol = solve(p);
  REQUIRE(sol.optimal());
  CHECK(sol.dual_value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("realify examples") {
  const HermitianMatrix real_sym(test::random_hermitian(3, 5).real().cast<Complex>());
  const RealMatrix r = realify(real_sym);
  CHECK((r.topLeftCorner(3, 3) - r.bottomRightCorner(3, 3)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(r.topRightCorner(3, 3).cwiseAbs().maxCoeff() == 0.0);

  const RealMatrix y = realify(HermitianMatrix(test::pauli_y()));
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(y);
  CHECK(es.eigenvalues()(0) == doctest::Approx(-1.0));
  CHECK(es.eigenvalues()(1) == doctest::Approx(-1.0));
  CHECK(es.eigenvalues()(2) == doctest::Approx(1.0));
  CHECK(es.eigenvalues()(3) == doctest::Approx(1.0));

  const json f = test::fixture("hermitian_spectrum_d3.json");
  const HermitianMatrix h = hermitian_from_json(f["input"]);
  const RealVector ev = eigenvalues(HermitianMatrix(realify(h).cast<Complex>()));
  const auto expected = f["value"].get<std::vector<double>>();
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(ev(2 * i) - expected[i]) <= 1e-9);
    CHECK(std::abs(ev(2 * i + 1) - expected[i]) <= 1e-9);
  }
  CHECK(realify(h).trace() == doctest::Approx(2.0 * h.trace()));
}

TEST_CASE("optimal solutions satisfy the status invariants") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DensityMatrix rho = random_state(2 + static_cast<int>(seed % 5), 2, seed);
    const ConicSolution sol = solve(unit_diagonal_problem(rho));
    REQUIRE(sol.optimal());
    CHECK(sol.primal_infeasibility <= 1e-8);
    CHECK(sol.dual_infeasibility <= 1e-8);
    CHECK(sol.gap <= 1e-8);
    const HermitianMatrix x = sol.x_psd(0);
    const HermitianMatrix s = sol.s_psd(0);
    CHECK(min_eigenvalue(x) >= -1e-9);
    CHECK(min_eigenvalue(s) >= -1e-9);
    CHECK(std::abs(trace_product(x, s)) <= 1e-7);
  }
}

TEST_CASE("weak duality holds on feasible iterates") {
  SolverOptions opt;
  opt.record_history = true;
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ConicSolution sol = solve(unit_diagonal_problem(random_state(4, 4, seed)), opt);
    REQUIRE(sol.optimal());
    REQUIRE(sol.history.size() == static_cast<size_t>(sol.iterations) + 1);
    for (const IterateRecord& r : sol.history) {
      if (r.primal_infeasibility > 1e-12 || r.dual_infeasibility > 1e-12) continue;
      CHECK(r.primal >= r.dual - 1e-12 * (1.0 + std::abs(r.primal)));
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("scaling the cost scales the value and keeps the optimizer") {
  const DensityMatrix rho = random_state(3, 3, 8);
  const ConicSolution base = solve(unit_diagonal_problem(rho));
  REQUIRE(base.optimal());
  for (double lambda : {0.01, 3.0, 250.0}) {
    ConicProblem p(unit_diagonal_problem(rho).blocks());
    p.set_cost(-rho.hermitian() * lambda, 0);
    for (int j = 0; j < 3; ++j) p.add_constraint({{Term{0, {{j, j, 1.0}}}}, 1.0});
    const ConicSolution scaled = solve(p);
    REQUIRE(scaled.optimal());
    CHECK(std::abs(scaled.primal_value - lambda * base.primal_value) <= 1e-7 * lambda);
    // Low-rank optimizers are only resolved to about the square root of the tolerance.
    CHECK(max_abs_diff(scaled.x_psd(0).matrix(), base.x_psd(0).matrix()) <= 1e-4);
  }
}

TEST_CASE("constraint order does not change the value") {
  const DensityMatrix rho = random_state(5, 3, 2);
  const double base = solve(unit_diagonal_problem(rho)).primal_value;
  ConicProblem p({{BlockKind::kPsd, 5}});
  p.set_cost(-rho.hermitian(), 0);
  for (int j : {3, 0, 4, 2, 1}) p.add_constraint({{Term{0, {{j, j, 1.0}}}}, 1.0});
  const ConicSolution sol = solve(p);
  REQUIRE(sol.optimal());
  CHECK(std::abs(sol.primal_value - base) <= 1e-9);
}

TEST_CASE("malformed problems are rejected") {
  ConicProblem dep({{BlockKind::kPsd, 2}});
  dep.set_cost(HermitianMatrix::identity(2), 0);
  dep.add_constraint({{Term{0, {{0, 0, 1.0}}}}, 1.0});
  dep.add_constraint({{Term{0, {{0, 0, 2.0}}}}, 2.0});
  CHECK_THROWS_WITH_AS(solve(dep), doctest::Contains("dependent"), std::invalid_argument);

  ConicProblem none({{BlockKind::kPsd, 2}});
  CHECK_THROWS_AS(solve(none), std::invalid_argument);

  ConicProblem range({{BlockKind::kPsd, 2}});
  CHECK_THROWS_AS(range.add_constraint({{Term{0, {{0, 2, 1.0}}}}, 1.0}), std::invalid_argument);
}

TEST_CASE("iteration cap yields an honest status") {
  SolverOptions opt;
  opt.max_iterations = 2;
  const ConicSolution sol = solve(unit_diagonal_problem(random_state(4, 4, 1)), opt);
  CHECK(sol.status == Status::kMaxIter);
  CHECK_FALSE(sol.optimal());
  CHECK(to_string(sol.status) == "MAX_ITER");
}

TEST_CASE("iterate history is written as JSON lines") {
  SolverOptions opt;
  opt.record_history = true;
  const ConicSolution sol = solve(unit_diagonal_problem(random_state(3, 3, 1)), opt);
  std::ostringstream out;
  write_history_jsonl(sol, out);
  std::istringstream in(out.str());
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    const json j = json::parse(line);
    CHECK(j.contains("iteration"));
    CHECK(j.contains("primal"));
    CHECK(j.contains("dual"));
    CHECK(j.contains("gap"));
    ++n;
  }
  CHECK(n == sol.iterations + 1);
}
