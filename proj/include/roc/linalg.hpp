#pragma once

// Dense complex linear algebra for finite-dimensional quantum states.
//
// All matrices live in the computational ("incoherent") basis |0>,...,|d-1>.
// Hermitian and density matrices validate their invariants at construction
// and are immutable afterwards.

#include <complex>
#include <cstdint>
#include <Eigen/Dense>

namespace roc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Entrywise max |a_ij - b_ij|.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool all_finite(const ComplexMatrix& m);

/// Kronecker product a (x) b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

class HermitianMatrix {
 public:
  static constexpr double kSymmetryTol = 1e-12;

  HermitianMatrix() = default;
  /// Throws std::invalid_argument unless m is square, finite and
  /// conjugate-symmetric to within kSymmetryTol (relative to max(1, |m|_max)).
  /// The stored matrix is exactly (m + m^dagger)/2.
  explicit HermitianMatrix(const ComplexMatrix& m);

  static HermitianMatrix identity(int d);
  static HermitianMatrix zero(int d);
  static HermitianMatrix diagonal(const RealVector& diag);
  /// |v><v|
  static HermitianMatrix projector(const ComplexVector& v);

  int dim() const { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }
  double trace() const;
  RealVector diagonal_real() const;

  HermitianMatrix operator+(const HermitianMatrix& o) const;
  HermitianMatrix operator-(const HermitianMatrix& o) const;
  HermitianMatrix operator*(double s) const;
  HermitianMatrix operator-() const { return (*this) * -1.0; }

  /// U M U^dagger for arbitrary square U of matching size.
  HermitianMatrix conjugated(const ComplexMatrix& u) const;

 private:
  struct Trusted {};
  HermitianMatrix(ComplexMatrix m, Trusted) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

inline HermitianMatrix operator*(double s, const HermitianMatrix& m) { return m * s; }

/// Re Tr[a b] for Hermitian a, b.
double trace_product(const HermitianMatrix& a, const HermitianMatrix& b);

struct EigenDecomposition {
  RealVector values;     // ascending
  ComplexMatrix vectors; // columns are orthonormal eigenvectors
};

/// Cyclic complex Jacobi eigendecomposition, M = V diag(values) V^dagger.
EigenDecomposition eigh(const HermitianMatrix& m);
RealVector eigenvalues(const HermitianMatrix& m);
double min_eigenvalue(const HermitianMatrix& m);
double max_eigenvalue(const HermitianMatrix& m);

class PureState {
 public:
  static constexpr double kNormTol = 1e-12;

  explicit PureState(ComplexVector amplitudes);

  int dim() const { return static_cast<int>(psi_.size()); }
  const ComplexVector& amplitudes() const { return psi_; }

 private:
  ComplexVector psi_;
};

class DensityMatrix {
 public:
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kEigenTol = 1e-10;

  DensityMatrix() = default;
  /// Throws std::invalid_argument if |Tr - 1| > kTraceTol or the smallest
  /// eigenvalue is below -kEigenTol. Eigenvalues in [-kEigenTol, 0) are
  /// clamped to zero and the trace renormalized.
  explicit DensityMatrix(const HermitianMatrix& h);
  explicit DensityMatrix(const ComplexMatrix& m) : DensityMatrix(HermitianMatrix(m)) {}
  explicit DensityMatrix(const PureState& psi);

  static DensityMatrix maximally_mixed(int d);
  /// diag(p) for a probability vector p.
  static DensityMatrix diagonal(const RealVector& p);

  int dim() const { return h_.dim(); }
  const HermitianMatrix& hermitian() const { return h_; }
  const ComplexMatrix& matrix() const { return h_.matrix(); }
  Complex operator()(int i, int j) const { return h_(i, j); }

  /// p*this + (1-p)*other
  DensityMatrix mix(double p, const DensityMatrix& other) const;

 private:
  HermitianMatrix h_;
};

/// Maximally coherent state (1/sqrt d) sum_j |j>.
PureState maximally_coherent(int d);

/// Full dephasing: keeps the diagonal, zeroes every off-diagonal entry.
HermitianMatrix dephase(const HermitianMatrix& m);
DensityMatrix dephase(const DensityMatrix& rho);

/// 2 sum_{k<l} |rho_kl|
double l1_coherence(const DensityMatrix& rho);

/// -Tr[rho log2 rho] with 0 log 0 = 0.
double von_neumann_entropy(const DensityMatrix& rho);

/// S(Delta(rho)) - S(rho), base 2.
double relative_entropy_coherence(const DensityMatrix& rho);

struct Norms {
  double two_norm;  // Frobenius
  double op_norm;   // largest |eigenvalue|
  double max_abs;   // largest entry modulus
};
Norms norms(const HermitianMatrix& m);

/// Two-copy purity identities with the swap operator V|a>|b> = |b>|a>:
/// Tr[rho (x) rho V] = Tr[rho^2] and Tr[rho (x) rho (Delta (x) Delta)(V)] = Tr[Delta(rho)^2].
struct SwapPurity {
  double swap_expectation;           // Tr[rho (x) rho V]
  double purity;                     // Tr[rho^2]
  double dephased_swap_expectation;  // Tr[rho (x) rho (Delta (x) Delta)(V)]
  double dephased_purity;            // Tr[Delta(rho)^2]
};
constexpr int kMaxSwapDim2 = 4096;
/// Throws std::invalid_argument when d^2 > kMaxSwapDim2.
SwapPurity swap_purity_check(const DensityMatrix& rho);

/// Swap operator on C^d (x) C^d.
ComplexMatrix swap_operator(int d);

// Reproducible random generation. Identical arguments give bit-identical output.

/// SplitMix64 mix of (seed, stream); used to derive independent sub-seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);
DensityMatrix random_state(int d, int rank, std::uint64_t seed);
PureState random_pure(int d, std::uint64_t seed);
ComplexMatrix random_unitary(int d, std::uint64_t seed);
ComplexMatrix random_gaussian(int rows, int cols, std::uint64_t seed);

}  // namespace roc
