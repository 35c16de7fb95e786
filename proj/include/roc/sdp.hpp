#pragma once

// Primal-dual interior-point solver for block-structured semidefinite
// programs over Hermitian PSD cones and nonnegative orthants.
//
// Primal:  minimize   sum_b <C_b, X_b>
//          subject to sum_b <A_ib, X_b> = b_i,   i = 1..m
//                     X_b PSD (Hermitian) or X_b >= 0 (entrywise)
// Dual:    maximize   b^T y
//          subject to S_b = C_b - sum_i y_i A_ib  in the same cones.
//
// <A, X> is Re Tr[A X] for Hermitian blocks and the dot product for
// nonnegative blocks. Hermitian blocks are solved through their real
// symmetric embedding (see realify); the reported values refer to the
// complex problem.

#include <iosfwd>
#include <string>
#include <vector>

#include "roc/linalg.hpp"

namespace roc::sdp {

enum class BlockKind { kPsd, kNonneg };

struct BlockSpec {
  BlockKind kind;
  int size;
};

/// One nonzero of a Hermitian coefficient. Stored for row <= col; the entry
/// (col, row) is implied as conj(value). Diagonal values must be real.
struct Entry {
  int row;
  int col;
  Complex value;
};

/// Coefficient of a single block inside a constraint or the objective.
struct Term {
  int block = 0;
  std::vector<Entry> entries;
};

Term dense_term(int block, const HermitianMatrix& m);
Term vector_term(int block, const RealVector& v);

struct Constraint {
  std::vector<Term> terms;
  double rhs = 0.0;
};

class ConicProblem {
 public:
  /// Relative threshold on the Gram matrix pivots below which constraints
  /// count as linearly dependent.
  static constexpr double kIndependenceTol = 1e-8;

  explicit ConicProblem(std::vector<BlockSpec> blocks);

  const std::vector<BlockSpec>& blocks() const { return blocks_; }
  const std::vector<Term>& cost() const { return cost_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }

  void set_cost(const HermitianMatrix& c, int block);
  void set_cost(const RealVector& c, int block);
  void set_cost(Term t);

  /// Appends a constraint and returns its index.
  int add_constraint(Constraint c);

  /// Throws std::invalid_argument when the problem is malformed: no
  /// constraints, out-of-range entries, non-real diagonal coefficients on
  /// nonnegative blocks, or linearly dependent constraint operators.
  void validate() const;

 private:
  void check_term(const Term& t) const;

  std::vector<BlockSpec> blocks_;
  std::vector<Term> cost_;
  std::vector<Constraint> constraints_;
};

enum class Status { kOptimal, kMaxIter, kNumericalFailure };
std::string to_string(Status s);

struct IterateRecord {
  int iteration;
  double primal;
  double dual;
  double gap;
  double primal_infeasibility;
  double dual_infeasibility;
};

struct SolverOptions {
  double tol = 1e-8;
  int max_iterations = 200;
  double step_fraction = 0.98;
  bool record_history = false;
};

/// Per public block: Hermitian blocks fill `psd`, nonnegative blocks fill
/// `nonneg`; the other member is empty.
struct BlockValue {
  ComplexMatrix psd;
  RealVector nonneg;
};

struct ConicSolution {
  std::vector<BlockValue> x;
  RealVector y;
  std::vector<BlockValue> s;
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;  // |primal - dual| / (1 + |primal|)
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  Status status = Status::kNumericalFailure;
  int iterations = 0;
  std::vector<IterateRecord> history;

  bool optimal() const { return status == Status::kOptimal; }
  HermitianMatrix x_psd(int block) const { return HermitianMatrix(x.at(block).psd); }
  HermitianMatrix s_psd(int block) const { return HermitianMatrix(s.at(block).psd); }
};

/// Solves with Nesterov-Todd scaling and Mehrotra predictor-corrector steps,
/// started from X = S = I, y = 0. Deterministic for identical inputs.
ConicSolution solve(const ConicProblem& problem, const SolverOptions& options = {});

/// Writes one JSON object per recorded iterate.
void write_history_jsonl(const ConicSolution& sol, std::ostream& out);

/// Real symmetric embedding [[A, -B], [B, A]] of H = A + iB.
RealMatrix realify(const HermitianMatrix& h);

}  // namespace roc::sdp
