#include "roc/robustness.hpp"

#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>

#include "roc/errors.hpp"

namespace roc {

std::string to_string(RocMethod m) { return m == RocMethod::kSdp ? "SDP" : "FAST_PATH"; }

namespace {

// min Tr[-rho Y] s.t. Y_jj = 1, Y PSD. Its dual slack is S = D - rho with
// D = -diag(y), so one solve yields both the witness and the pseudomixture.
sdp::ConicProblem unit_diagonal_program(const DensityMatrix& rho) {
  const int d = rho.dim();
  sdp::ConicProblem p({{sdp::BlockKind::kPsd, d}});
  p.set_cost(-rho.hermitian(), 0);
  for (int j = 0; j < d; ++j) p.add_constraint({{sdp::Term{0, {{j, j, 1.0}}}}, 1.0});
  return p;
}

}  // namespace

RocCertificate roc_exact(const DensityMatrix& rho, const sdp::SolverOptions& options) {
  const int d = rho.dim();
  RocCertificate cert;
  ComplexMatrix off = rho.matrix();
  off.diagonal().setZero();
  if (d == 1 || off.isZero(0.0)) {
    cert.witness = HermitianMatrix::zero(d);
    cert.incoherent_part = rho;
    return cert;
  }

  const sdp::ConicSolution sol = sdp::solve(unit_diagonal_program(rho), options);
  if (!sol.optimal()) {
    throw SolverError("roc_exact: solver returned " + sdp::to_string(sol.status));
  }
  cert.iterations = sol.iterations;

  // Witness side: rescale Y to an exactly unit diagonal (keeps Y PSD).
  ComplexMatrix y = sol.x[0].psd;
  const RealVector inv_sqrt = y.diagonal().real().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
  y = inv_sqrt.cast<Complex>().asDiagonal() * y * inv_sqrt.cast<Complex>().asDiagonal();
  for (int j = 0; j < d; ++j) y(j, j) = 1.0;
  const HermitianMatrix ymat(ComplexMatrix(0.5 * (y + y.adjoint())));
  cert.witness = HermitianMatrix::identity(d) - ymat;
  cert.dual_value = -trace_product(cert.witness, rho.hermitian());

  // Pseudomixture side: D = -diag(y), lifted until D - rho is PSD.
  RealVector dvec = -sol.y;
  const double lo = min_eigenvalue(HermitianMatrix::diagonal(dvec) - rho.hermitian());
  if (lo < 0.0) dvec.array() += -lo;
  const double s = dvec.sum() - 1.0;

  if (s <= RocCertificate::kZeroThreshold) {
    cert.value = 0.0;
    cert.incoherent_part = dephase(rho);
  } else {
    cert.value = s;
    cert.incoherent_part = DensityMatrix::diagonal(dvec / dvec.sum());
    const HermitianMatrix slack = HermitianMatrix::diagonal(dvec) - rho.hermitian();
    HermitianMatrix tau = slack * (1.0 / s);
    // Renormalize away the last bits of trace round-off.
    tau = tau * (1.0 / tau.trace());
    cert.noise_part = DensityMatrix(tau);
  }
  cert.gap = cert.value - cert.dual_value;
  cert.method = RocMethod::kSdp;
  return cert;
}

std::optional<double> roc_fast_path(const DensityMatrix& rho) {
  const int d = rho.dim();
  const double scale = rho.matrix().cwiseAbs().maxCoeff();
  const double zero = 1e-10 * scale;
  constexpr double kPhaseTol = 1e-8;

  auto wrap = [](double a) { return std::remainder(a, 2.0 * std::numbers::pi); };
  std::vector<double> phi(d, 0.0);
  std::vector<bool> seen(d, false);
  // Spanning forest: phi_l = phi_k + arg rho_kl along tree edges.
  for (int root = 0; root < d; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      const int k = q.front();
      q.pop();
      for (int l = 0; l < d; ++l) {
        if (seen[l] || std::abs(rho(k, l)) <= zero) continue;
        seen[l] = true;
        phi[l] = phi[k] + std::arg(rho(k, l));
        q.push(l);
      }
    }
  }
  // Every edge, tree or not, must agree with the assignment.
  for (int k = 0; k < d; ++k) {
    for (int l = k + 1; l < d; ++l) {
      if (std::abs(rho(k, l)) <= zero) continue;
      if (std::abs(wrap(phi[l] - phi[k] - std::arg(rho(k, l)))) > kPhaseTol) return std::nullopt;
    }
  }
  return l1_coherence(rho);
}

double roc_value(const DensityMatrix& rho, const sdp::SolverOptions& options) {
  if (auto fast = roc_fast_path(rho)) return *fast;
  return roc_exact(rho, options).value;
}

BoundReport roc_bounds(const DensityMatrix& rho, std::optional<double> exact) {
  const int d = rho.dim();
  if (d < 2) throw std::invalid_argument("roc_bounds: requires d >= 2");
  BoundReport r;
  r.l1_upper = l1_coherence(rho);
  r.l1_lower = r.l1_upper / (d - 1);
  const RealVector diag = rho.hermitian().diagonal_real();
  const double off2 = (rho.matrix().squaredNorm() - diag.squaredNorm());
  const double coh = std::max(0.0, off2);
  r.faithful_1 = coh / diag.maxCoeff();
  r.faithful_2 = coh / diag.norm();
  r.faithful_3 = coh;
  r.exact = exact;

  constexpr double kRocTol = 1e-7;
  constexpr double kChainTol = 1e-9;
  auto flag = [&](bool ok, const char* what) {
    if (!ok) r.violations.emplace_back(what);
  };
  flag(r.faithful_1 >= r.faithful_2 - kChainTol, "faithful_1 < faithful_2");
  flag(r.faithful_2 >= r.faithful_3 - kChainTol, "faithful_2 < faithful_3");
  if (exact) {
    flag(r.l1_lower <= *exact + kRocTol, "C_l1/(d-1) > C_R");
    flag(*exact <= r.l1_upper + kRocTol, "C_R > C_l1");
    flag(*exact >= r.faithful_1 - kRocTol, "C_R < faithful_1");
  }
  return r;
}

GapWitness find_l1_gap_witness(int d, std::uint64_t seed, int trials) {
  if (d != 3) throw std::invalid_argument("find_l1_gap_witness: only d = 3 is supported");
  if (trials < 1) throw std::invalid_argument("find_l1_gap_witness: trials must be >= 1");
  constexpr double kMinGap = 1e-4;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(t));
    DensityMatrix rho = random_state(d, d, s);
    const double purity = (rho.matrix() * rho.matrix()).trace().real();
    if (purity > 1.0 - 1e-9) continue;
    if (roc_fast_path(rho)) continue;
    const double l1 = l1_coherence(rho);
    const double roc = roc_exact(rho).value;
    if (l1 - roc > kMinGap) return GapWitness{std::move(rho), roc, l1, t, s};
  }
  throw NotFound("find_l1_gap_witness: no state with C_l1 - C_R > 1e-4 in " +
                 std::to_string(trials) + " trials");
}

json certificate_to_json(const RocCertificate& cert) {
  json j{{"value", cert.value},
         {"gap", cert.gap},
         {"method", to_string(cert.method)},
         {"witness", matrix_to_json(cert.witness.matrix())},
         {"delta_star", matrix_to_json(cert.incoherent_part.matrix())}};
  j["tau_star"] = cert.noise_part ? matrix_to_json(cert.noise_part->matrix()) : json(nullptr);
  return j;
}

json bounds_to_json(const BoundReport& r) {
  json j{{"l1_upper", r.l1_upper},     {"l1_lower", r.l1_lower},
         {"faithful_1", r.faithful_1}, {"faithful_2", r.faithful_2},
         {"faithful_3", r.faithful_3}, {"violations", r.violations}};
  j["exact"] = r.exact ? json(*r.exact) : json(nullptr);
  return j;
}

}  // namespace roc
