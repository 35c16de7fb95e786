#pragma once

// Phase- and channel-discrimination games. A referee applies channel k with
// prior p_k to a probe state; the player measures and guesses k.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "roc/linalg.hpp"
#include "roc/matrix_json.hpp"
#include "roc/sdp.hpp"

namespace roc {

/// exp(i N phi) with N = sum_j j |j><j|.
ComplexMatrix phase_channel(int d, double phi);
/// Z^k with Z|j> = exp(2 pi i j / d)|j>.
ComplexMatrix generalized_phase(int d, int k);

struct PhaseEntry {
  double prior;
  double phase;  // in [0, 2 pi)
};

class PhaseGame {
 public:
  static constexpr double kPriorTol = 1e-12;
  static constexpr double kPhaseTol = 1e-12;

  /// Throws std::invalid_argument on unnormalized priors, phases outside
  /// [0, 2 pi) or two phases closer than kPhaseTol.
  PhaseGame(int d, std::vector<PhaseEntry> entries);

  int dim() const { return d_; }
  const std::vector<PhaseEntry>& entries() const { return entries_; }

 private:
  int d_;
  std::vector<PhaseEntry> entries_;
};

struct ChannelEntry {
  double prior;
  std::vector<ComplexMatrix> kraus;  // d x d, sum K^dag K = 1
};

class ChannelGame {
 public:
  static constexpr double kTraceTol = 1e-10;

  /// Throws std::invalid_argument on unnormalized priors, wrong Kraus shapes
  /// or a channel that is not trace preserving.
  ChannelGame(int d, std::vector<ChannelEntry> entries);

  int dim() const { return d_; }
  const std::vector<ChannelEntry>& entries() const { return entries_; }

 private:
  int d_;
  std::vector<ChannelEntry> entries_;
};

using Game = std::variant<PhaseGame, ChannelGame>;

int game_dim(const Game& g);
int game_size(const Game& g);

struct Povm {
  static constexpr double kTol = 1e-9;
  std::vector<HermitianMatrix> elements;

  /// Throws std::invalid_argument unless every element is PSD and they sum to 1.
  void validate() const;
};

/// Weighted outputs p_k Lambda_k(rho).
struct Ensemble {
  std::vector<HermitianMatrix> weighted;
};

Ensemble make_ensemble(const Game& g, const DensityMatrix& rho);

struct Discrimination {
  double p_succ = 0.0;      // attained by `povm`
  double dual_value = 0.0;  // min Tr Q with Q >= p_k rho_k
  Povm povm;
};

constexpr double kDualityCrossCheck = 1e-7;

/// Optimal guessing probability, solved as the POVM program and as the
/// min Tr Q program. Throws SolverError when either solve fails or the two
/// disagree by more than kDualityCrossCheck.
Discrimination success_probability(const Ensemble& e, const sdp::SolverOptions& options = {});
Discrimination success_probability(const Game& g, const DensityMatrix& rho,
                                   const sdp::SolverOptions& options = {});

/// {(1/d, 2 pi k / d)}, k = 0..d-1.
PhaseGame canonical_game(int d);

/// Best success probability with an incoherent probe.
double incoherent_baseline(const Game& g, const sdp::SolverOptions& options = {});

double advantage_ratio(const DensityMatrix& rho, const Game& g,
                       const sdp::SolverOptions& options = {});

PhaseGame random_phase_game(int d, std::uint64_t seed);
ChannelGame random_channel_game(int d, std::uint64_t seed);

struct TheoremReport {
  double roc = 0.0;
  double canonical_p_succ = 0.0;
  double canonical_ratio = 0.0;    // d * p_succ at the canonical game
  double canonical_error = 0.0;    // |canonical_ratio - (1 + roc)|
  int phase_games = 0;
  int channel_games = 0;
  double worst_phase_excess = 0.0;    // max ratio - (1 + roc)
  double worst_channel_excess = 0.0;  // max p_succ - (1 + roc) baseline
  bool holds = false;
  std::vector<std::string> failures;

  static constexpr double kEqualityTol = 1e-5;
  static constexpr double kInequalityTol = 1e-6;
};

TheoremReport verify_operational_theorem(const DensityMatrix& rho, std::uint64_t seed = 0,
                                         int phase_games = 20, int channel_games = 10,
                                         const sdp::SolverOptions& options = {});

/// Kraus operators with at most one nonzero entry per column.
class IncoherentInstrument {
 public:
  static constexpr double kTraceTol = 1e-10;

  explicit IncoherentInstrument(std::vector<ComplexMatrix> kraus);

  int dim() const { return static_cast<int>(kraus_.front().rows()); }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

 private:
  std::vector<ComplexMatrix> kraus_;
};

IncoherentInstrument random_incoherent_instrument(int d, int m, std::uint64_t seed);

struct Branch {
  double weight;
  DensityMatrix state;
};

constexpr double kBranchDropThreshold = 1e-12;

std::vector<Branch> apply_instrument(const IncoherentInstrument& instr, const DensityMatrix& rho);

Game game_from_json(const json& j);
json game_to_json(const Game& g);
json theorem_report_to_json(const TheoremReport& r);

}  // namespace roc
