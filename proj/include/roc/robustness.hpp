#pragma once

// Robustness of coherence C_R(rho): the smallest s >= 0 such that
// (rho + s tau) / (1 + s) is diagonal for some state tau.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "roc/linalg.hpp"
#include "roc/matrix_json.hpp"
#include "roc/sdp.hpp"

namespace roc {

enum class RocMethod { kSdp, kFastPath };
std::string to_string(RocMethod m);

/// Optimal witness and pseudomixture rho = (1 + value) delta - value tau.
struct RocCertificate {
  double value = 0.0;         // certified upper end: Tr D* - 1
  double dual_value = 0.0;    // certified lower end: -Tr[W* rho]
  double gap = 0.0;           // value - dual_value
  HermitianMatrix witness;    // W* = 1 - Y*, with Delta(W*) = 0 and W* <= 1
  DensityMatrix incoherent_part;          // delta*
  std::optional<DensityMatrix> noise_part;  // tau*, absent when value <= kZeroThreshold
  RocMethod method = RocMethod::kSdp;
  int iterations = 0;

  static constexpr double kZeroThreshold = 1e-9;
};

/// Solves min Tr D s.t. D diagonal, D >= rho together with its dual
/// max Tr[Y rho] s.t. Y >= 0, diag(Y) = 1, and polishes both ends into
/// exactly feasible certificates. Throws SolverError on a non-optimal solve.
RocCertificate roc_exact(const DensityMatrix& rho, const sdp::SolverOptions& options = {});

/// C_l1(rho) when a diagonal unitary makes every entry of rho nonnegative,
/// in which case C_R = C_l1; std::nullopt otherwise.
std::optional<double> roc_fast_path(const DensityMatrix& rho);

/// Fast path when it applies, SDP otherwise.
double roc_value(const DensityMatrix& rho, const sdp::SolverOptions& options = {});

struct BoundReport {
  double l1_upper = 0.0;    // C_l1
  double l1_lower = 0.0;    // C_l1 / (d - 1)
  double faithful_1 = 0.0;  // |rho - Delta(rho)|_2^2 / |Delta(rho)|_inf
  double faithful_2 = 0.0;  // |rho - Delta(rho)|_2^2 / |Delta(rho)|_2
  double faithful_3 = 0.0;  // |rho - Delta(rho)|_2^2
  std::optional<double> exact;
  std::vector<std::string> violations;  // empty unless a chain link fails
};

/// Bound chain C_l1/(d-1) <= C_R <= C_l1 and C_R >= f1 >= f2 >= f3.
/// Violations are only checked against `exact` when it is supplied.
BoundReport roc_bounds(const DensityMatrix& rho, std::optional<double> exact = std::nullopt);

struct GapWitness {
  DensityMatrix state;
  double roc = 0.0;
  double l1 = 0.0;
  int trial = 0;
  std::uint64_t seed = 0;  // seed passed to random_state for `state`
};

/// Random search over full-rank states of dimension d for one whose exact
/// robustness is below C_l1 by more than 1e-4. Pure and phase-alignable
/// candidates are skipped. Throws NotFound when `trials` are exhausted.
GapWitness find_l1_gap_witness(int d, std::uint64_t seed, int trials);

json certificate_to_json(const RocCertificate& cert);
json bounds_to_json(const BoundReport& report);

}  // namespace roc
