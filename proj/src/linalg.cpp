#include "roc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace roc {

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// HermitianMatrix

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument("HermitianMatrix: expected a non-empty square matrix, got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (!all_finite(m)) throw std::invalid_argument("HermitianMatrix: non-finite entry");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = max_abs_diff(m, m.adjoint());
  if (asym > kSymmetryTol * scale) {
    throw std::invalid_argument("HermitianMatrix: |M - M^dagger|_max = " + std::to_string(asym) +
                                " exceeds tolerance");
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::identity(int d) {
  return HermitianMatrix(ComplexMatrix::Identity(d, d), Trusted{});
}

HermitianMatrix HermitianMatrix::zero(int d) {
  return HermitianMatrix(ComplexMatrix::Zero(d, d), Trusted{});
}

HermitianMatrix HermitianMatrix::diagonal(const RealVector& diag) {
  if (diag.size() == 0) throw std::invalid_argument("HermitianMatrix::diagonal: empty");
  ComplexMatrix m = ComplexMatrix::Zero(diag.size(), diag.size());
  for (Eigen::Index i = 0; i < diag.size(); ++i) m(i, i) = diag(i);
  return HermitianMatrix(m);
}

HermitianMatrix HermitianMatrix::projector(const ComplexVector& v) {
  return HermitianMatrix(ComplexMatrix(v * v.adjoint()));
}

double HermitianMatrix::trace() const { return m_.trace().real(); }

RealVector HermitianMatrix::diagonal_real() const { return m_.diagonal().real(); }

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
  if (o.dim() != dim()) throw std::invalid_argument("HermitianMatrix +: dimension mismatch");
  return HermitianMatrix(ComplexMatrix(m_ + o.m_), Trusted{});
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
  if (o.dim() != dim()) throw std::invalid_argument("HermitianMatrix -: dimension mismatch");
  return HermitianMatrix(ComplexMatrix(m_ - o.m_), Trusted{});
}

HermitianMatrix HermitianMatrix::operator*(double s) const {
  return HermitianMatrix(ComplexMatrix(s * m_), Trusted{});
}

HermitianMatrix HermitianMatrix::conjugated(const ComplexMatrix& u) const {
  if (u.cols() != dim()) throw std::invalid_argument("conjugated: dimension mismatch");
  ComplexMatrix r = u * m_ * u.adjoint();
  return HermitianMatrix(ComplexMatrix(0.5 * (r + r.adjoint())), Trusted{});
}

double trace_product(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("trace_product: dimension mismatch");
  // Tr[AB] = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij) for Hermitian B.
  return (a.matrix().array() * b.matrix().conjugate().array()).sum().real();
}

// ---------------------------------------------------------------------------
// Cyclic Jacobi

EigenDecomposition eigh(const HermitianMatrix& h) {
  const int n = h.dim();
  ComplexMatrix a = h.matrix();
  ComplexMatrix v = ComplexMatrix::Identity(n, n);
  const double fro = std::max(a.norm(), 1e-300);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= 1e-15 * fro) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double g = std::abs(a(p, q));
        if (g <= 1e-300) continue;
        const Complex e = a(p, q) / g;
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * g);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex ec = std::conj(e);
        // Columns: A <- A U with U = [[c, s], [-s e*, c e*]] on (p, q).
        for (int k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * ec * akq;
          a(k, q) = s * akp + c * ec * akq;
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * ec * vkq;
          v(k, q) = s * vkp + c * ec * vkq;
        }
        // Rows: A <- U^dagger A.
        for (int k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * e * aqk;
          a(q, k) = s * apk + c * e * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });
  EigenDecomposition out{RealVector(n), ComplexMatrix(n, n)};
  for (int k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]).real();
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

RealVector eigenvalues(const HermitianMatrix& m) { return eigh(m).values; }

double min_eigenvalue(const HermitianMatrix& m) { return eigenvalues(m).minCoeff(); }

double max_eigenvalue(const HermitianMatrix& m) { return eigenvalues(m).maxCoeff(); }

// ---------------------------------------------------------------------------
// States

PureState::PureState(ComplexVector amplitudes) : psi_(std::move(amplitudes)) {
  if (psi_.size() == 0) throw std::invalid_argument("PureState: empty amplitude vector");
  if (!all_finite(psi_)) throw std::invalid_argument("PureState: non-finite amplitude");
  const double norm2 = psi_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTol) {
    throw std::invalid_argument("PureState: squared norm " + std::to_string(norm2) + " != 1");
  }
}

DensityMatrix::DensityMatrix(const HermitianMatrix& h) {
  const double tr = h.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw std::invalid_argument("DensityMatrix: trace " + std::to_string(tr) + " != 1");
  }
  const EigenDecomposition eig = eigh(h);
  const double lo = eig.values.minCoeff();
  if (lo < -kEigenTol) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue " + std::to_string(lo));
  }
  if (lo < 0.0) {
    RealVector clamped = eig.values.cwiseMax(0.0);
    clamped /= clamped.sum();
    h_ = HermitianMatrix(
        ComplexMatrix(eig.vectors * clamped.cast<Complex>().asDiagonal() * eig.vectors.adjoint()));
  } else {
    h_ = h;
  }
}

DensityMatrix::DensityMatrix(const PureState& psi)
    : DensityMatrix(HermitianMatrix::projector(psi.amplitudes())) {}

DensityMatrix DensityMatrix::maximally_mixed(int d) {
  return DensityMatrix(HermitianMatrix::identity(d) * (1.0 / d));
}

DensityMatrix DensityMatrix::diagonal(const RealVector& p) {
  return DensityMatrix(HermitianMatrix::diagonal(p));
}

DensityMatrix DensityMatrix::mix(double p, const DensityMatrix& other) const {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("DensityMatrix::mix: p outside [0,1]");
  return DensityMatrix(h_ * p + other.h_ * (1.0 - p));
}

PureState maximally_coherent(int d) {
  if (d < 1) throw std::invalid_argument("maximally_coherent: d < 1");
  return PureState(ComplexVector::Constant(d, Complex(1.0 / std::sqrt(double(d)), 0.0)));
}

// ---------------------------------------------------------------------------
// Coherence quantifiers

HermitianMatrix dephase(const HermitianMatrix& m) {
  ComplexMatrix out = ComplexMatrix::Zero(m.dim(), m.dim());
  out.diagonal() = m.matrix().diagonal();
  return HermitianMatrix(out);
}

DensityMatrix dephase(const DensityMatrix& rho) {
  return DensityMatrix(dephase(rho.hermitian()));
}

double l1_coherence(const DensityMatrix& rho) {
  double sum = 0.0;
  for (int k = 0; k < rho.dim(); ++k)
    for (int l = k + 1; l < rho.dim(); ++l) sum += std::abs(rho(k, l));
  return 2.0 * sum;
}

namespace {
double shannon_bits(const RealVector& p) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) > 0.0) s -= p(i) * std::log2(p(i));
  }
  return s;
}
}  // namespace

double von_neumann_entropy(const DensityMatrix& rho) {
  return shannon_bits(eigenvalues(rho.hermitian()));
}

double relative_entropy_coherence(const DensityMatrix& rho) {
  const double value = shannon_bits(rho.hermitian().diagonal_real()) - von_neumann_entropy(rho);
  return std::max(0.0, value);
}

Norms norms(const HermitianMatrix& m) {
  const RealVector ev = eigenvalues(m);
  return Norms{m.matrix().norm(), ev.cwiseAbs().maxCoeff(), m.matrix().cwiseAbs().maxCoeff()};
}

ComplexMatrix swap_operator(int d) {
  const int n = d * d;
  ComplexMatrix v = ComplexMatrix::Zero(n, n);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) v(b * d + a, a * d + b) = 1.0;
  return v;
}

SwapPurity swap_purity_check(const DensityMatrix& rho) {
  const int d = rho.dim();
  if (d * d > kMaxSwapDim2) {
    throw std::invalid_argument("swap_purity_check: d^2 = " + std::to_string(d * d) +
                                " exceeds " + std::to_string(kMaxSwapDim2));
  }
  const ComplexMatrix two_copies = kron(rho.matrix(), rho.matrix());
  const ComplexMatrix v = swap_operator(d);
  // (Delta (x) Delta)(V): keep entries diagonal in both tensor factors.
  ComplexMatrix dv = ComplexMatrix::Zero(d * d, d * d);
  for (int r = 0; r < d * d; ++r) {
    for (int c = 0; c < d * d; ++c) {
      if (r / d == c / d && r % d == c % d) dv(r, c) = v(r, c);
    }
  }
  auto tr_prod = [](const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a.array() * b.transpose().array()).sum().real();
  };
  const ComplexMatrix& m = rho.matrix();
  const RealVector diag = m.diagonal().real();
  return SwapPurity{tr_prod(two_copies, v), (m * m).trace().real(), tr_prod(two_copies, dv),
                    diag.squaredNorm()};
}

// ---------------------------------------------------------------------------
// Random generation

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ComplexMatrix random_gaussian(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double re = normal(gen);
      const double im = normal(gen);
      g(i, j) = Complex(re, im);
    }
  return g;
}

DensityMatrix random_state(int d, int rank, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("random_state: d < 1");
  if (rank < 1 || rank > d) {
    throw std::invalid_argument("random_state: rank " + std::to_string(rank) +
                                " outside [1, " + std::to_string(d) + "]");
  }
  const ComplexMatrix g = random_gaussian(d, rank, seed);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(ComplexMatrix(0.5 * (rho + rho.adjoint())));
}

PureState random_pure(int d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("random_pure: d < 1");
  ComplexVector v = random_gaussian(d, 1, seed).col(0);
  v.normalize();
  return PureState(v);
}

ComplexMatrix random_unitary(int d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("random_unitary: d < 1");
  ComplexMatrix q = random_gaussian(d, d, seed);
  // Modified Gram-Schmidt, two passes. Positive-diagonal QR of a Ginibre
  // matrix gives a Haar-distributed Q.
  for (int pass = 0; pass < 2; ++pass) {
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < j; ++k) {
        const Complex proj = q.col(k).dot(q.col(j));
        q.col(j) -= proj * q.col(k);
      }
      q.col(j).normalize();
    }
  }
  return q;
}

}  // namespace roc
