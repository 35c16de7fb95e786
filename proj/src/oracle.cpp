#include "roc/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace roc::oracle {

namespace {

using Eigen::SelfAdjointEigenSolver;

struct Penalized {
  const ComplexMatrix& rho;
  double mu;

  // f(g) = sum exp(g) + mu * sum_i min(0, lambda_i(diag(exp g) - rho))^2
  double operator()(const RealVector& g, RealVector& grad) const {
    const RealVector e = g.array().exp();
    ComplexMatrix m = -rho;
    m.diagonal() += e.cast<Complex>();
    SelfAdjointEigenSolver<ComplexMatrix> es(m);
    double f = e.sum();
    grad = e;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
      const double lam = es.eigenvalues()(i);
      if (lam >= 0.0) continue;
      f += mu * lam * lam;
      // d lambda_i / d g_j = exp(g_j) |v_ij|^2
      grad += (2.0 * mu * lam) * e.cwiseProduct(es.eigenvectors().col(i).cwiseAbs2());
    }
    return f;
  }
};

// BFGS with Armijo backtracking on the inverse Hessian approximation.
RealVector bfgs(const Penalized& f, RealVector g, int max_iter) {
  const int n = static_cast<int>(g.size());
  RealMatrix h = RealMatrix::Identity(n, n);
  RealVector grad;
  double val = f(g, grad);
  for (int it = 0; it < max_iter; ++it) {
    if (grad.norm() <= 1e-13 * (1.0 + std::abs(val))) break;
    RealVector p = -h * grad;
    double slope = grad.dot(p);
    if (slope >= 0.0) {
      h.setIdentity();
      p = -grad;
      slope = -grad.squaredNorm();
    }
    double t = 1.0;
    RealVector g_new, grad_new;
    double val_new = 0.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      g_new = g + t * p;
      val_new = f(g_new, grad_new);
      if (std::isfinite(val_new) && val_new <= val + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
    const RealVector s = g_new - g;
    const RealVector y = grad_new - grad;
    const double sy = s.dot(y);
    if (sy > 1e-300) {
      const double r = 1.0 / sy;
      const RealMatrix v = RealMatrix::Identity(n, n) - r * s * y.transpose();
      h = v * h * v.transpose() + r * s * s.transpose();
    }
    g = g_new;
    grad = grad_new;
    val = val_new;
  }
  return g;
}

double lifted_value(const ComplexMatrix& rho, const RealVector& g) {
  RealVector dvec = g.array().exp();
  ComplexMatrix m = -rho;
  m.diagonal() += dvec.cast<Complex>();
  SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  if (lo < 0.0) dvec.array() += -lo + 1e-15;
  return dvec.sum() - 1.0;
}

}  // namespace

double roc_descent_oracle(const DensityMatrix& rho, int restarts, std::uint64_t seed) {
  const int d = rho.dim();
  const ComplexMatrix& r = rho.matrix();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 0.3);

  // D_jj = sum_k |rho_jk| is feasible by diagonal dominance.
  RealVector base(d);
  for (int j = 0; j < d; ++j) base(j) = std::max(r.row(j).cwiseAbs().sum(), 1e-12);
  const RealVector log_base = base.array().log();

  double best = std::numeric_limits<double>::infinity();
  for (int start = 0; start < std::max(1, restarts); ++start) {
    RealVector g = log_base;
    if (start > 0)
      for (int j = 0; j < d; ++j) g(j) += noise(rng);
    for (double mu = 1e2; mu <= 1e10 * 1.000001; mu *= 10.0) g = bfgs(Penalized{r, mu}, g, 300);
    best = std::min(best, lifted_value(r, g));
  }
  return std::max(best, 0.0);
}

double helstrom(const Ensemble& e) {
  if (e.weighted.size() != 2) throw std::invalid_argument("helstrom: needs exactly two outcomes");
  const ComplexMatrix diff = e.weighted[0].matrix() - e.weighted[1].matrix();
  SelfAdjointEigenSolver<ComplexMatrix> es(diff, Eigen::EigenvaluesOnly);
  const double total = e.weighted[0].trace() + e.weighted[1].trace();
  return 0.5 * (total + es.eigenvalues().cwiseAbs().sum());
}

GridResult discrimination_grid_oracle(const Ensemble& e, int resolution) {
  if (e.weighted.size() != 2 || e.weighted[0].dim() != 2 || e.weighted[1].dim() != 2) {
    throw std::invalid_argument("discrimination_grid_oracle: only two-outcome qubit ensembles are supported");
  }
  if (resolution < 1) throw std::invalid_argument("discrimination_grid_oracle: resolution must be >= 1");
  GridResult out;
  out.helstrom = helstrom(e);
  const ComplexMatrix& a0 = e.weighted[0].matrix();
  const ComplexMatrix& a1 = e.weighted[1].matrix();
  double best = 0.0;
  for (int i = 0; i <= resolution; ++i) {
    const double theta = std::numbers::pi * i / resolution;
    for (int k = 0; k < 2 * resolution; ++k) {
      const double phi = std::numbers::pi * k / resolution;
      // Projector onto cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
      ComplexVector v(2);
      v << std::cos(theta / 2), std::polar(std::sin(theta / 2), phi);
      const ComplexMatrix p0 = v * v.adjoint();
      const ComplexMatrix p1 = ComplexMatrix::Identity(2, 2) - p0;
      const double p = (a0 * p0).trace().real() + (a1 * p1).trace().real();
      best = std::max(best, p);
    }
  }
  out.grid_best = best;
  return out;
}

}  // namespace roc::oracle
