#include "roc/games.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "roc/errors.hpp"
#include "roc/robustness.hpp"

namespace roc {

using sdp::BlockKind;
using sdp::ConicProblem;
using sdp::Constraint;
using sdp::Term;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ComplexMatrix phase_channel(int d, double phi) {
  if (d < 1) throw std::invalid_argument("phase_channel: d must be >= 1");
  ComplexVector v(d);
  for (int j = 0; j < d; ++j) v(j) = std::polar(1.0, j * phi);
  return v.asDiagonal();
}

ComplexMatrix generalized_phase(int d, int k) {
  if (d < 1) throw std::invalid_argument("generalized_phase: d must be >= 1");
  ComplexVector v(d);
  for (int j = 0; j < d; ++j) {
    // Reduce j*k mod d first so large powers stay exact roots of unity.
    const long long e = ((static_cast<long long>(j) * k) % d + d) % d;
    v(j) = std::polar(1.0, kTwoPi * static_cast<double>(e) / d);
  }
  return v.asDiagonal();
}

namespace {

void check_priors(const std::vector<double>& p, double tol, const char* who) {
  if (p.empty()) throw std::invalid_argument(std::string(who) + ": no entries");
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument(std::string(who) + ": prior outside [0, 1]");
    sum += x;
  }
  if (std::abs(sum - 1.0) > tol) {
    std::ostringstream msg;
    msg << who << ": priors sum to " << sum;
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

PhaseGame::PhaseGame(int d, std::vector<PhaseEntry> entries) : d_(d), entries_(std::move(entries)) {
  if (d < 1) throw std::invalid_argument("PhaseGame: d must be >= 1");
  std::vector<double> p;
  for (const PhaseEntry& e : entries_) {
    if (!(e.phase >= 0.0 && e.phase < kTwoPi)) throw std::invalid_argument("PhaseGame: phase outside [0, 2 pi)");
    p.push_back(e.prior);
  }
  check_priors(p, kPriorTol, "PhaseGame");
  for (size_t a = 0; a < entries_.size(); ++a) {
    for (size_t b = a + 1; b < entries_.size(); ++b) {
      const double diff = std::abs(std::remainder(entries_[a].phase - entries_[b].phase, kTwoPi));
      if (diff <= kPhaseTol) throw std::invalid_argument("PhaseGame: two entries share a phase");
    }
  }
}

ChannelGame::ChannelGame(int d, std::vector<ChannelEntry> entries) : d_(d), entries_(std::move(entries)) {
  if (d < 1) throw std::invalid_argument("ChannelGame: d must be >= 1");
  std::vector<double> p;
  for (size_t k = 0; k < entries_.size(); ++k) {
    const ChannelEntry& e = entries_[k];
    p.push_back(e.prior);
    if (e.kraus.empty()) throw std::invalid_argument("ChannelGame: channel without Kraus operators");
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const ComplexMatrix& kr : e.kraus) {
      if (kr.rows() != d || kr.cols() != d) throw std::invalid_argument("ChannelGame: Kraus operator has wrong shape");
      sum += kr.adjoint() * kr;
    }
    const double err = max_abs_diff(sum, ComplexMatrix::Identity(d, d));
    if (err > kTraceTol) {
      std::ostringstream msg;
      msg << "ChannelGame: channel " << k << " is not trace preserving (deviation " << err << ")";
      throw std::invalid_argument(msg.str());
    }
  }
  check_priors(p, PhaseGame::kPriorTol, "ChannelGame");
}

int game_dim(const Game& g) {
  return std::visit([](const auto& x) { return x.dim(); }, g);
}

int game_size(const Game& g) {
  return std::visit([](const auto& x) { return static_cast<int>(x.entries().size()); }, g);
}

void Povm::validate() const {
  if (elements.empty()) throw std::invalid_argument("Povm: no elements");
  const int d = elements.front().dim();
  HermitianMatrix sum = HermitianMatrix::zero(d);
  for (size_t k = 0; k < elements.size(); ++k) {
    if (elements[k].dim() != d) throw std::invalid_argument("Povm: dimension mismatch");
    if (min_eigenvalue(elements[k]) < -kTol) {
      throw std::invalid_argument("Povm: element " + std::to_string(k) + " is not PSD");
    }
    sum = sum + elements[k];
  }
  if (max_abs_diff(sum.matrix(), ComplexMatrix::Identity(d, d)) > kTol) {
    throw std::invalid_argument("Povm: elements do not sum to the identity");
  }
}

Ensemble make_ensemble(const Game& g, const DensityMatrix& rho) {
  if (game_dim(g) != rho.dim()) throw std::invalid_argument("make_ensemble: dimension mismatch");
  const int d = rho.dim();
  Ensemble e;
  if (const auto* pg = std::get_if<PhaseGame>(&g)) {
    for (const PhaseEntry& x : pg->entries()) {
      e.weighted.push_back(rho.hermitian().conjugated(phase_channel(d, x.phase)) * x.prior);
    }
  } else {
    for (const ChannelEntry& x : std::get<ChannelGame>(g).entries()) {
      ComplexMatrix out = ComplexMatrix::Zero(d, d);
      for (const ComplexMatrix& k : x.kraus) out += k * rho.matrix() * k.adjoint();
      e.weighted.push_back(HermitianMatrix(ComplexMatrix(0.5 * (out + out.adjoint()))) * x.prior);
    }
  }
  return e;
}

namespace {

// Rows fixing Re and Im of every entry (r <= c) of a Hermitian block sum.
struct EntryRow {
  int r, c;
  bool imag;
};

std::vector<EntryRow> hermitian_rows(int d) {
  std::vector<EntryRow> rows;
  for (int r = 0; r < d; ++r) {
    for (int c = r; c < d; ++c) {
      rows.push_back({r, c, false});
      if (r != c) rows.push_back({r, c, true});
    }
  }
  return rows;
}

// Coefficient selecting Re X_rc (or Im X_rc) under <A, X> = Re Tr[A X].
sdp::Entry selector(const EntryRow& e) {
  if (e.r == e.c) return {e.r, e.c, 1.0};
  return {e.r, e.c, e.imag ? Complex(0.0, 0.5) : Complex(0.5, 0.0)};
}

double component(const HermitianMatrix& a, const EntryRow& e) {
  return e.imag ? a(e.r, e.c).imag() : a(e.r, e.c).real();
}

// maximize sum Tr[A_k M_k] s.t. sum M_k = 1.
sdp::ConicSolution solve_povm(const Ensemble& e, int d, const sdp::SolverOptions& options) {
  const int m = static_cast<int>(e.weighted.size());
  ConicProblem p(std::vector<sdp::BlockSpec>(m, {BlockKind::kPsd, d}));
  for (int k = 0; k < m; ++k) p.set_cost(-e.weighted[k], k);
  for (const EntryRow& row : hermitian_rows(d)) {
    Constraint c;
    for (int k = 0; k < m; ++k) c.terms.push_back(Term{k, {selector(row)}});
    c.rhs = (row.r == row.c && !row.imag) ? 1.0 : 0.0;
    p.add_constraint(std::move(c));
  }
  return sdp::solve(p, options);
}

// minimize Tr Q s.t. Q - Z_k = A_k, Z_k PSD.
sdp::ConicSolution solve_cover(const Ensemble& e, int d, const sdp::SolverOptions& options) {
  const int m = static_cast<int>(e.weighted.size());
  ConicProblem p(std::vector<sdp::BlockSpec>(m + 1, {BlockKind::kPsd, d}));
  p.set_cost(HermitianMatrix::identity(d), 0);
  const std::vector<EntryRow> rows = hermitian_rows(d);
  for (int k = 0; k < m; ++k) {
    for (const EntryRow& row : rows) {
      sdp::Entry neg = selector(row);
      neg.value = -neg.value;
      p.add_constraint({{Term{0, {selector(row)}}, Term{k + 1, {neg}}}, component(e.weighted[k], row)});
    }
  }
  return sdp::solve(p, options);
}

// Rescales M_k by S^{-1/2} . S^{-1/2}, S = sum M_k, so the POVM sums to 1 exactly.
Povm polish(std::vector<HermitianMatrix> m) {
  const int d = m.front().dim();
  HermitianMatrix sum = HermitianMatrix::zero(d);
  for (auto& x : m) {
    const EigenDecomposition ed = eigh(x);
    const RealVector lam = ed.values.cwiseMax(0.0);
    x = HermitianMatrix(ComplexMatrix(ed.vectors * lam.cast<Complex>().asDiagonal() * ed.vectors.adjoint()));
    sum = sum + x;
  }
  const EigenDecomposition ed = eigh(sum);
  const RealVector inv = ed.values.cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
  const ComplexMatrix t = ed.vectors * inv.cast<Complex>().asDiagonal() * ed.vectors.adjoint();
  Povm out;
  for (const auto& x : m) out.elements.push_back(x.conjugated(t));
  return out;
}

}  // namespace

Discrimination success_probability(const Ensemble& e, const sdp::SolverOptions& options) {
  if (e.weighted.empty()) throw std::invalid_argument("success_probability: empty ensemble");
  const int d = e.weighted.front().dim();
  for (const auto& a : e.weighted) {
    if (a.dim() != d) throw std::invalid_argument("success_probability: dimension mismatch");
  }

  const sdp::ConicSolution povm = solve_povm(e, d, options);
  if (!povm.optimal()) {
    throw SolverError("success_probability: POVM program returned " + sdp::to_string(povm.status));
  }
  const sdp::ConicSolution cover = solve_cover(e, d, options);
  if (!cover.optimal()) {
    throw SolverError("success_probability: cover program returned " + sdp::to_string(cover.status));
  }

  std::vector<HermitianMatrix> raw;
  for (size_t k = 0; k < e.weighted.size(); ++k) raw.emplace_back(povm.x_psd(static_cast<int>(k)));
  Discrimination out;
  out.povm = polish(std::move(raw));
  for (size_t k = 0; k < e.weighted.size(); ++k) out.p_succ += trace_product(e.weighted[k], out.povm.elements[k]);
  out.dual_value = cover.primal_value;

  const double diff = std::abs(-povm.primal_value - cover.primal_value);
  if (diff > kDualityCrossCheck) {
    std::ostringstream msg;
    msg << "success_probability: POVM and cover programs disagree by " << diff;
    throw SolverError(msg.str());
  }
  return out;
}

Discrimination success_probability(const Game& g, const DensityMatrix& rho, const sdp::SolverOptions& options) {
  return success_probability(make_ensemble(g, rho), options);
}

PhaseGame canonical_game(int d) {
  if (d < 2) throw std::invalid_argument("canonical_game: d must be >= 2");
  std::vector<PhaseEntry> e;
  for (int k = 0; k < d; ++k) e.push_back({1.0 / d, kTwoPi * k / d});
  return PhaseGame(d, std::move(e));
}

double incoherent_baseline(const Game& g, const sdp::SolverOptions& options) {
  if (const auto* pg = std::get_if<PhaseGame>(&g)) {
    double best = 0.0;
    for (const PhaseEntry& e : pg->entries()) best = std::max(best, e.prior);
    return best;
  }
  const int d = game_dim(g);
  double best = 0.0;
  for (int j = 0; j < d; ++j) {
    RealVector p = RealVector::Zero(d);
    p(j) = 1.0;
    best = std::max(best, success_probability(g, DensityMatrix::diagonal(p), options).p_succ);
  }
  return best;
}

double advantage_ratio(const DensityMatrix& rho, const Game& g, const sdp::SolverOptions& options) {
  return success_probability(g, rho, options).p_succ / incoherent_baseline(g, options);
}

namespace {

std::vector<double> random_priors(int m, std::mt19937_64& rng) {
  std::exponential_distribution<double> ex(1.0);
  std::vector<double> p(m);
  double sum = 0.0;
  for (double& x : p) sum += (x = ex(rng));
  for (double& x : p) x /= sum;
  return p;
}

}  // namespace

PhaseGame random_phase_game(int d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("random_phase_game: d must be >= 1");
  std::mt19937_64 rng(seed);
  const int m = std::uniform_int_distribution<int>(2, d + 2)(rng);
  const std::vector<double> p = random_priors(m, rng);
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  std::vector<PhaseEntry> e;
  while (static_cast<int>(e.size()) < m) {
    const double phi = phase(rng);
    const bool clash = std::any_of(e.begin(), e.end(), [&](const PhaseEntry& x) {
      return std::abs(std::remainder(x.phase - phi, kTwoPi)) <= 1e-6;
    });
    if (!clash) e.push_back({p[e.size()], phi});
  }
  return PhaseGame(d, std::move(e));
}

ChannelGame random_channel_game(int d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("random_channel_game: d must be >= 1");
  std::mt19937_64 rng(seed);
  const int m = std::uniform_int_distribution<int>(2, 4)(rng);
  const std::vector<double> p = random_priors(m, rng);
  std::vector<ChannelEntry> e;
  for (int k = 0; k < m; ++k) {
    const int a = std::uniform_int_distribution<int>(1, 3)(rng);
    // The first d columns of a unitary on C^{a d} form an isometry; its
    // d x d row blocks are Kraus operators of a channel.
    const ComplexMatrix u = random_unitary(a * d, derive_seed(seed, static_cast<std::uint64_t>(k)));
    ChannelEntry ch{p[k], {}};
    for (int b = 0; b < a; ++b) ch.kraus.push_back(u.block(b * d, 0, d, d));
    e.push_back(std::move(ch));
  }
  return ChannelGame(d, std::move(e));
}

TheoremReport verify_operational_theorem(const DensityMatrix& rho, std::uint64_t seed, int phase_games,
                                         int channel_games, const sdp::SolverOptions& options) {
  const int d = rho.dim();
  if (d < 2) throw std::invalid_argument("verify_operational_theorem: requires d >= 2");
  TheoremReport r;
  r.roc = roc_exact(rho, options).value;
  const Game canon = canonical_game(d);
  r.canonical_p_succ = success_probability(canon, rho, options).p_succ;
  r.canonical_ratio = d * r.canonical_p_succ;
  r.canonical_error = std::abs(r.canonical_ratio - (1.0 + r.roc));
  if (r.canonical_error > TheoremReport::kEqualityTol) {
    std::ostringstream msg;
    msg << "canonical game: d * p_succ = " << r.canonical_ratio << " but 1 + C_R = " << 1.0 + r.roc;
    r.failures.push_back(msg.str());
  }

  r.worst_phase_excess = -1e300;
  for (int i = 0; i < phase_games; ++i) {
    const Game g = random_phase_game(d, derive_seed(seed, 2 * static_cast<std::uint64_t>(i)));
    const double excess = advantage_ratio(rho, g, options) - (1.0 + r.roc);
    r.worst_phase_excess = std::max(r.worst_phase_excess, excess);
    ++r.phase_games;
    if (excess > TheoremReport::kInequalityTol) {
      r.failures.push_back("phase game " + std::to_string(i) + " beats 1 + C_R");
    }
  }
  r.worst_channel_excess = -1e300;
  for (int i = 0; i < channel_games; ++i) {
    const Game g = random_channel_game(d, derive_seed(seed, 2 * static_cast<std::uint64_t>(i) + 1));
    const double p = success_probability(g, rho, options).p_succ;
    const double excess = p - (1.0 + r.roc) * incoherent_baseline(g, options);
    r.worst_channel_excess = std::max(r.worst_channel_excess, excess);
    ++r.channel_games;
    if (excess > TheoremReport::kInequalityTol) {
      r.failures.push_back("channel game " + std::to_string(i) + " beats (1 + C_R) * baseline");
    }
  }
  if (phase_games == 0) r.worst_phase_excess = 0.0;
  if (channel_games == 0) r.worst_channel_excess = 0.0;
  r.holds = r.failures.empty();
  return r;
}

// ---------------------------------------------------------------------------
// Incoherent instruments

IncoherentInstrument::IncoherentInstrument(std::vector<ComplexMatrix> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw std::invalid_argument("IncoherentInstrument: no Kraus operators");
  const int d = static_cast<int>(kraus_.front().rows());
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (size_t l = 0; l < kraus_.size(); ++l) {
    const ComplexMatrix& k = kraus_[l];
    if (k.rows() != d || k.cols() != d) throw std::invalid_argument("IncoherentInstrument: Kraus operator has wrong shape");
    for (int j = 0; j < d; ++j) {
      int nonzero = 0;
      for (int r = 0; r < d; ++r) nonzero += std::abs(k(r, j)) > 1e-12;
      if (nonzero > 1) {
        throw std::invalid_argument("IncoherentInstrument: operator " + std::to_string(l) + " has column " +
                                    std::to_string(j) + " with more than one nonzero entry");
      }
    }
    sum += k.adjoint() * k;
  }
  if (max_abs_diff(sum, ComplexMatrix::Identity(d, d)) > kTraceTol) {
    throw std::invalid_argument("IncoherentInstrument: not trace preserving");
  }
}

IncoherentInstrument random_incoherent_instrument(int d, int m, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("random_incoherent_instrument: d must be >= 1");
  if (m < 1) throw std::invalid_argument("random_incoherent_instrument: m must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> row(0, d - 1);
  std::normal_distribution<double> gauss(0.0, 1.0);
  constexpr int kTargetAttempts = 8;

  // target[l][j] and amp[j][l]: column j of K_l is amp[j][l] |target[l][j]>.
  std::vector<std::vector<int>> target(m, std::vector<int>(d, 0));
  std::vector<ComplexVector> amp(d);

  // Column j of sum K^dag K against column j' < j is sum over l with a
  // shared target of conj(a_{l j'}) a_{l j}; a_j is drawn orthogonal to those
  // restricted vectors so the instrument stays trace preserving.
  auto try_column = [&](int j, const std::vector<int>& t) -> bool {
    std::vector<ComplexVector> basis;
    for (int jp = 0; jp < j; ++jp) {
      ComplexVector u = ComplexVector::Zero(m);
      for (int l = 0; l < m; ++l)
        if (t[l] == target[l][jp]) u(l) = amp[jp](l);
      for (int pass = 0; pass < 2; ++pass)
        for (const ComplexVector& q : basis) u -= q.dot(u) * q;
      const double n = u.norm();
      if (n > 1e-10) basis.push_back(u / n);
    }
    ComplexVector a(m);
    for (int l = 0; l < m; ++l) a(l) = Complex(gauss(rng), gauss(rng));
    for (int pass = 0; pass < 2; ++pass)
      for (const ComplexVector& q : basis) a -= q.dot(a) * q;
    const double n = a.norm();
    if (n < 1e-6) return false;
    amp[j] = a / n;
    for (int l = 0; l < m; ++l) target[l][j] = t[l];
    return true;
  };

  for (int j = 0; j < d; ++j) {
    bool done = false;
    for (int attempt = 0; attempt < kTargetAttempts && !done; ++attempt) {
      std::vector<int> t(m);
      for (int& x : t) x = row(rng);
      done = try_column(j, t);
    }
    if (!done) {
      // Targets unused by earlier columns leave nothing to be orthogonal to.
      std::vector<int> t(m);
      for (int l = 0; l < m; ++l) {
        std::vector<int> free;
        for (int r = 0; r < d; ++r) {
          bool used = false;
          for (int jp = 0; jp < j; ++jp) used |= target[l][jp] == r;
          if (!used) free.push_back(r);
        }
        t[l] = free[std::uniform_int_distribution<size_t>(0, free.size() - 1)(rng)];
      }
      if (!try_column(j, t)) throw std::logic_error("random_incoherent_instrument: fallback failed");
    }
  }

  std::vector<ComplexMatrix> kraus(m, ComplexMatrix::Zero(d, d));
  for (int l = 0; l < m; ++l)
    for (int j = 0; j < d; ++j) kraus[l](target[l][j], j) = amp[j](l);
  return IncoherentInstrument(std::move(kraus));
}

std::vector<Branch> apply_instrument(const IncoherentInstrument& instr, const DensityMatrix& rho) {
  if (instr.dim() != rho.dim()) throw std::invalid_argument("apply_instrument: dimension mismatch");
  std::vector<Branch> out;
  for (const ComplexMatrix& k : instr.kraus()) {
    const ComplexMatrix out_m = k * rho.matrix() * k.adjoint();
    const double w = out_m.trace().real();
    if (w < kBranchDropThreshold) continue;
    const ComplexMatrix h = 0.5 * (out_m + out_m.adjoint()) / w;
    out.push_back({w, DensityMatrix(h)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

Game game_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("game: expected an object");
  for (const char* key : {"dim", "type", "entries"}) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("game: missing field \"") + key + "\"");
  }
  if (!j["dim"].is_number_integer()) throw std::invalid_argument("game: \"dim\" must be an integer");
  const int d = j["dim"].get<int>();
  const std::string type = j["type"].is_string() ? j["type"].get<std::string>() : "";
  if (!j["entries"].is_array()) throw std::invalid_argument("game: \"entries\" must be an array");
  auto prior_of = [](const json& e, size_t i) {
    if (!e.contains("prior") || !e["prior"].is_number()) {
      throw std::invalid_argument("game: entry " + std::to_string(i) + " needs a numeric \"prior\"");
    }
    return e["prior"].get<double>();
  };
  if (type == "phase") {
    std::vector<PhaseEntry> entries;
    for (size_t i = 0; i < j["entries"].size(); ++i) {
      const json& e = j["entries"][i];
      if (!e.contains("phase") || !e["phase"].is_number()) {
        throw std::invalid_argument("game: entry " + std::to_string(i) + " needs a numeric \"phase\"");
      }
      entries.push_back({prior_of(e, i), e["phase"].get<double>()});
    }
    return PhaseGame(d, std::move(entries));
  }
  if (type == "channel") {
    std::vector<ChannelEntry> entries;
    for (size_t i = 0; i < j["entries"].size(); ++i) {
      const json& e = j["entries"][i];
      if (!e.contains("kraus") || !e["kraus"].is_array()) {
        throw std::invalid_argument("game: entry " + std::to_string(i) + " needs a \"kraus\" array");
      }
      ChannelEntry ch{prior_of(e, i), {}};
      for (const json& k : e["kraus"]) ch.kraus.push_back(matrix_from_json(k));
      entries.push_back(std::move(ch));
    }
    return ChannelGame(d, std::move(entries));
  }
  throw std::invalid_argument("game: \"type\" must be \"phase\" or \"channel\"");
}

json game_to_json(const Game& g) {
  json entries = json::array();
  if (const auto* pg = std::get_if<PhaseGame>(&g)) {
    for (const PhaseEntry& e : pg->entries()) entries.push_back({{"prior", e.prior}, {"phase", e.phase}});
    return {{"dim", pg->dim()}, {"type", "phase"}, {"entries", entries}};
  }
  const ChannelGame& cg = std::get<ChannelGame>(g);
  for (const ChannelEntry& e : cg.entries()) {
    json kraus = json::array();
    for (const ComplexMatrix& k : e.kraus) kraus.push_back(matrix_to_json(k));
    entries.push_back({{"prior", e.prior}, {"kraus", kraus}});
  }
  return {{"dim", cg.dim()}, {"type", "channel"}, {"entries", entries}};
}

json theorem_report_to_json(const TheoremReport& r) {
  return {{"roc", r.roc},
          {"canonical_p_succ", r.canonical_p_succ},
          {"canonical_ratio", r.canonical_ratio},
          {"canonical_error", r.canonical_error},
          {"phase_games", r.phase_games},
          {"channel_games", r.channel_games},
          {"worst_phase_excess", r.worst_phase_excess},
          {"worst_channel_excess", r.worst_channel_excess},
          {"holds", r.holds},
          {"failures", r.failures}};
}

}  // namespace roc
