#pragma once

// Brute-force reference computations. They share no code path with the SDP
// engine and are used to gate it and to produce the frozen test fixtures.

#include <cstdint>

#include "roc/games.hpp"
#include "roc/linalg.hpp"

namespace roc::oracle {

/// Upper bound on C_R(rho) from penalized quasi-Newton descent over
/// D = diag(exp(g)). The returned D is lifted to exact feasibility
/// (lambda_min(D - rho) >= -1e-10) before Tr D - 1 is reported.
double roc_descent_oracle(const DensityMatrix& rho, int restarts = 4, std::uint64_t seed = 0);

/// (1/2)(1 + |A_0 - A_1|_1) for a two-outcome ensemble A_k = p_k rho_k.
double helstrom(const Ensemble& e);

struct GridResult {
  double helstrom = 0.0;
  double grid_best = 0.0;  // best projective measurement on the Bloch-sphere grid
};

/// Two-outcome qubit ensembles only; throws std::invalid_argument otherwise.
GridResult discrimination_grid_oracle(const Ensemble& e, int resolution = 64);

}  // namespace roc::oracle
