// Writes the frozen test fixtures. Every stored value comes from the oracle
// module or from a direct dense computation, never from the SDP path.
//
// usage: make_fixtures <output-dir>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>

#include "roc/games.hpp"
#include "roc/oracle.hpp"

using namespace roc;

namespace {

std::filesystem::path out_dir;

void write(const std::string& name, std::uint64_t seed, const json& input, const json& value, double tol,
           const std::string& oracle_name) {
  const json j{{"seed", seed}, {"input", input}, {"value", value}, {"tol", tol}, {"oracle", oracle_name}};
  std::ofstream f(out_dir / name);
  f << j.dump(2) << "\n";
  std::cout << name << "\n";
}

// -sum lambda log2 lambda from Eigen's eigensolver.
double entropy_direct(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (double l : es.eigenvalues())
    if (l > 0.0) s -= l * std::log2(l);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <output-dir>\n";
    return 1;
  }
  out_dir = argv[1];
  std::filesystem::create_directories(out_dir);

  // Full-rank qutrits: descent oracle upper bound on the robustness.
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const DensityMatrix rho = random_state(3, 3, seed);
    write("roc_qutrit_" + std::to_string(seed) + ".json", seed, matrix_to_json(rho.matrix()),
          oracle::roc_descent_oracle(rho, 6, seed), 1e-6, "roc_descent_oracle");
  }

  // Maximally coherent d = 4 state for the command-line tests.
  {
    const DensityMatrix rho(maximally_coherent(4));
    write("max_coherent_d4.json", 0, matrix_to_json(rho.matrix()), oracle::roc_descent_oracle(rho, 4, 0), 1e-6,
          "roc_descent_oracle");
  }

  // Qutrit whose oracle upper bound already sits below C_l1 by more than 1e-4.
  for (std::uint64_t t = 0;; ++t) {
    const std::uint64_t seed = derive_seed(2024, t);
    const DensityMatrix rho = random_state(3, 3, seed);
    const double upper = oracle::roc_descent_oracle(rho, 4, seed);
    const double l1 = l1_coherence(rho);
    if (l1 - upper > 1e-3) {
      write("l1_gap_qutrit.json", seed, matrix_to_json(rho.matrix()), json{{"roc_upper", upper}, {"l1", l1}},
            1e-6, "roc_descent_oracle");
      break;
    }
  }

  // Relative entropy of coherence on a random qutrit, from two eigensolves.
  {
    const std::uint64_t seed = 11;
    const DensityMatrix rho = random_state(3, 3, seed);
    const ComplexMatrix diag = rho.matrix().diagonal().asDiagonal();
    write("relative_entropy_d3.json", seed, matrix_to_json(rho.matrix()),
          entropy_direct(diag) - entropy_direct(rho.matrix()), 1e-10, "eigen_direct_entropy");
  }

  // Swap identity on a random d = 4 state: purities by direct products.
  {
    const std::uint64_t seed = 12;
    const DensityMatrix rho = random_state(4, 4, seed);
    const ComplexMatrix& m = rho.matrix();
    const double purity = (m * m).trace().real();
    const double dephased = m.diagonal().cwiseAbs2().sum();
    write("swap_purity_d4.json", seed, matrix_to_json(m), json{{"purity", purity}, {"dephased_purity", dephased}},
          1e-10, "direct_matrix_product");
  }

  // Spectrum of a random Hermitian d = 3 matrix.
  {
    const std::uint64_t seed = 13;
    ComplexMatrix g = random_gaussian(3, 3, seed);
    const ComplexMatrix h = 0.5 * (g + g.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    std::vector<double> vals(es.eigenvalues().data(), es.eigenvalues().data() + 3);
    write("hermitian_spectrum_d3.json", seed, matrix_to_json(h), vals, 1e-10, "eigen_selfadjoint");
  }

  // Two-outcome qubit phase games on random states: Helstrom value.
  for (std::uint64_t seed = 21; seed <= 25; ++seed) {
    const DensityMatrix rho = random_state(2, 1 + seed % 2, seed);
    const double p0 = 0.2 + 0.1 * static_cast<double>(seed - 21);
    const double phase = 0.4 + 0.5 * static_cast<double>(seed - 21);
    const PhaseGame g(2, {{p0, 0.0}, {1.0 - p0, phase}});
    const double value = oracle::helstrom(make_ensemble(g, rho));
    write("helstrom_qubit_" + std::to_string(seed) + ".json", seed,
          json{{"state", matrix_to_json(rho.matrix())}, {"game", game_to_json(g)}}, value, 1e-7, "helstrom");
  }

  // Witness from the X expectation of |+>: brute scan over W = c X + m 1.
  {
    double best = -1e300;
    const int n = 400;
    for (int a = 0; a <= n; ++a) {
      for (int b = 0; b <= n; ++b) {
        const double c = -2.0 + 4.0 * a / n;
        const double m = -2.0 + 4.0 * b / n;
        // Eigenvalues of c X + m 1 are m +- c; diagonal is m.
        if (m < 0.0 || m + std::abs(c) > 1.0) continue;
        best = std::max(best, -(c * 1.0 + m));
      }
    }
    ComplexMatrix x(2, 2);
    x << 0, 1, 1, 0;
    write("witness_x_plus.json", 0,
          json{{"dim", 2}, {"observables", json::array({matrix_to_json(x)})}, {"expectations", {1.0}}}, best, 1e-7,
          "grid_scan_c_m");
  }
  return 0;
}
