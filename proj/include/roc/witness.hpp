#pragma once

// Coherence witnesses: Hermitian W with Delta(W) >= 0 and W <= 1. For every
// such W and state rho, max{0, -Tr[rho W]} <= C_R(rho).

#include <string>
#include <vector>

#include "roc/linalg.hpp"
#include "roc/matrix_json.hpp"
#include "roc/sdp.hpp"

namespace roc {

struct WitnessDiagnostics {
  bool valid = false;
  double min_diagonal = 0.0;    // smallest entry of Delta(W)
  double max_eigenvalue = 0.0;  // must not exceed 1
  std::string message;          // names the violated condition, empty when valid
};

constexpr double kWitnessTol = 1e-10;

WitnessDiagnostics validate_witness(const HermitianMatrix& w, double tol = kWitnessTol);

class CoherenceWitness {
 public:
  /// Throws std::invalid_argument with the diagnostics message when invalid.
  explicit CoherenceWitness(HermitianMatrix w, double tol = kWitnessTol);

  const HermitianMatrix& matrix() const { return w_; }
  int dim() const { return w_.dim(); }

 private:
  HermitianMatrix w_;
};

/// max{0, -Tr[rho W]}
double witness_lower_bound(const DensityMatrix& rho, const CoherenceWitness& w);

/// (Delta(rho) - rho) / |Delta(rho)|_inf; its bound equals
/// |rho - Delta(rho)|_2^2 / |Delta(rho)|_inf. Delta(rho) never vanishes for a state.
CoherenceWitness faithful_witness(const DensityMatrix& rho);

/// Observables O_i with measured expectations o_i. `slack` holds optional
/// absolute tolerances eps_i >= 0 (empty means all zero): the data then only
/// pins Tr[O_i rho] to [o_i - eps_i, o_i + eps_i].
struct WitnessDataset {
  int dim = 0;
  std::vector<HermitianMatrix> observables;
  std::vector<double> expectations;
  std::vector<double> slack;

  /// Throws std::invalid_argument on inconsistent sizes or dimensions.
  void validate() const;
  double slack_at(size_t i) const { return slack.empty() ? 0.0 : slack[i]; }
};

/// Exact expectations of `observables` on `rho`.
WitnessDataset dataset_from_state(const DensityMatrix& rho, std::vector<HermitianMatrix> observables);

struct DataWitness {
  double bound = 0.0;               // max{0, optimum}
  std::vector<double> coefficients; // c_i
  double offset = 0.0;              // m
  HermitianMatrix witness;          // sum c_i O_i + m 1, a valid witness
  bool box_active = false;          // a coefficient reached the |c| <= kCoefficientBox guard

  static constexpr double kCoefficientBox = 1e6;
};

/// maximize -(sum c_i o_i + m) over witnesses W = sum c_i O_i + m 1.
/// With slack, the objective is the worst case over the data intervals.
DataWitness best_witness_from_data(const WitnessDataset& data,
                                   const sdp::SolverOptions& options = {});

struct DataRoc {
  double min_roc = 0.0;
  DensityMatrix state;  // a minimizer: a state matching the data with C_R = min_roc
};

/// Throws InfeasibleData when no state reproduces the expectations (total
/// violation of the best-fitting state above 1e-6).
void check_data_consistency(const WitnessDataset& data, const sdp::SolverOptions& options = {});

/// Smallest C_R over all states reproducing the data. Throws InfeasibleData
/// when no state matches the expectations.
DataRoc min_roc_from_data(const WitnessDataset& data, const sdp::SolverOptions& options = {});

WitnessDataset dataset_from_json(const json& j);
json dataset_to_json(const WitnessDataset& data);
json data_witness_to_json(const DataWitness& w);

}  // namespace roc
