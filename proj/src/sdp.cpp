#include "roc/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

#include <Eigen/Sparse>
#include <json.hpp>

namespace roc::sdp {

Term dense_term(int block, const HermitianMatrix& m) {
  Term t{block, {}};
  for (int r = 0; r < m.dim(); ++r) {
    for (int c = r; c < m.dim(); ++c) {
      const Complex v = m(r, c);
      if (v != Complex(0.0, 0.0)) t.entries.push_back({r, c, v});
    }
  }
  return t;
}

Term vector_term(int block, const RealVector& v) {
  Term t{block, {}};
  for (int i = 0; i < v.size(); ++i) {
    if (v(i) != 0.0) t.entries.push_back({i, i, Complex(v(i), 0.0)});
  }
  return t;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::kOptimal: return "OPTIMAL";
    case Status::kMaxIter: return "MAX_ITER";
    case Status::kNumericalFailure: return "NUMERICAL_FAILURE";
  }
  return "UNKNOWN";
}

RealMatrix realify(const HermitianMatrix& h) {
  const int n = h.dim();
  const RealMatrix a = h.matrix().real();
  const RealMatrix b = h.matrix().imag();
  RealMatrix out(2 * n, 2 * n);
  out << a, -b, b, a;
  return out;
}

// ---------------------------------------------------------------------------
// ConicProblem

ConicProblem::ConicProblem(std::vector<BlockSpec> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw std::invalid_argument("ConicProblem: no blocks");
  for (const BlockSpec& b : blocks_) {
    if (b.size < 1) throw std::invalid_argument("ConicProblem: block size must be positive");
  }
}

void ConicProblem::check_term(const Term& t) const {
  if (t.block < 0 || t.block >= static_cast<int>(blocks_.size())) {
    throw std::invalid_argument("ConicProblem: term refers to block " + std::to_string(t.block) +
                                " out of range");
  }
  const BlockSpec& spec = blocks_[t.block];
  for (const Entry& e : t.entries) {
    if (e.row < 0 || e.col < e.row || e.col >= spec.size) {
      throw std::invalid_argument("ConicProblem: entry (" + std::to_string(e.row) + "," +
                                  std::to_string(e.col) + ") invalid for block of size " +
                                  std::to_string(spec.size));
    }
    if (!std::isfinite(e.value.real()) || !std::isfinite(e.value.imag())) {
      throw std::invalid_argument("ConicProblem: non-finite coefficient");
    }
    if (e.row == e.col && e.value.imag() != 0.0) {
      throw std::invalid_argument("ConicProblem: diagonal coefficient must be real");
    }
    if (spec.kind == BlockKind::kNonneg && e.row != e.col) {
      throw std::invalid_argument("ConicProblem: nonnegative block coefficients are diagonal");
    }
  }
}

void ConicProblem::set_cost(const HermitianMatrix& c, int block) {
  if (blocks_.at(block).kind != BlockKind::kPsd || blocks_[block].size != c.dim()) {
    throw std::invalid_argument("ConicProblem::set_cost: block mismatch");
  }
  set_cost(dense_term(block, c));
}

void ConicProblem::set_cost(const RealVector& c, int block) {
  if (blocks_.at(block).kind != BlockKind::kNonneg || blocks_[block].size != c.size()) {
    throw std::invalid_argument("ConicProblem::set_cost: block mismatch");
  }
  set_cost(vector_term(block, c));
}

void ConicProblem::set_cost(Term t) {
  check_term(t);
  std::erase_if(cost_, [&](const Term& o) { return o.block == t.block; });
  cost_.push_back(std::move(t));
}

int ConicProblem::add_constraint(Constraint c) {
  for (const Term& t : c.terms) check_term(t);
  if (!std::isfinite(c.rhs)) throw std::invalid_argument("ConicProblem: non-finite rhs");
  constraints_.push_back(std::move(c));
  return static_cast<int>(constraints_.size()) - 1;
}

// ---------------------------------------------------------------------------
// Real embedding

namespace {

struct RealEntry {
  int r;
  int c;
  double v;
};

// Coefficient of one internal real block. Entries list both triangles.
struct RealTerm {
  int block = 0;
  std::vector<RealEntry> entries;
  bool dense = false;
  RealMatrix mat;  // set when dense
};

struct Model {
  std::vector<int> size;                     // internal block sizes
  std::vector<RealMatrix> cost;              // per internal block
  std::vector<std::vector<RealTerm>> rows;   // per constraint
  RealVector rhs;
  std::vector<std::vector<std::pair<int, int>>> by_block;  // (constraint, term) touching a block
  int degree = 0;                            // sum of internal sizes
  // Public block b maps to internal blocks [first[b], first[b] + count[b]).
  std::vector<int> first;
};

void push_sym(std::vector<RealEntry>& out, int r, int c, double v) {
  if (v == 0.0) return;
  out.push_back({r, c, v});
  if (r != c) out.push_back({c, r, v});
}

// Returns internal real terms for a public term. Every value is scaled so
// that <R, realify(X)> = 2 <A, X> holds for both cone kinds.
std::vector<RealTerm> embed(const Term& t, const std::vector<BlockSpec>& blocks,
                            const std::vector<int>& first) {
  const BlockSpec& spec = blocks[t.block];
  std::vector<RealTerm> out;
  if (spec.kind == BlockKind::kPsd) {
    const int n = spec.size;
    RealTerm rt;
    rt.block = first[t.block];
    for (const Entry& e : t.entries) {
      const double a = e.value.real();
      const double b = e.value.imag();
      push_sym(rt.entries, e.row, e.col, a);
      push_sym(rt.entries, n + e.row, n + e.col, a);
      if (e.row != e.col) {
        // -B in the upper-right block, B in the lower-left; B(r,c) = b, B(c,r) = -b.
        push_sym(rt.entries, e.row, n + e.col, -b);
        push_sym(rt.entries, e.col, n + e.row, b);
      }
    }
    const int m = 2 * n;
    if (static_cast<int>(rt.entries.size()) > 2 * m) {
      rt.dense = true;
      rt.mat = RealMatrix::Zero(m, m);
      for (const RealEntry& e : rt.entries) rt.mat(e.r, e.c) += e.v;
    }
    if (!rt.entries.empty()) out.push_back(std::move(rt));
  } else {
    for (const Entry& e : t.entries) {
      if (e.value.real() == 0.0) continue;
      RealTerm rt;
      rt.block = first[t.block] + e.row;
      rt.entries.push_back({0, 0, 2.0 * e.value.real()});
      out.push_back(std::move(rt));
    }
  }
  return out;
}

Model build_model(const ConicProblem& p) {
  Model m;
  const auto& blocks = p.blocks();
  for (const BlockSpec& b : blocks) {
    m.first.push_back(static_cast<int>(m.size.size()));
    if (b.kind == BlockKind::kPsd) {
      m.size.push_back(2 * b.size);
    } else {
      for (int i = 0; i < b.size; ++i) m.size.push_back(1);
    }
  }
  const int nb = static_cast<int>(m.size.size());
  for (int s : m.size) {
    m.cost.push_back(RealMatrix::Zero(s, s));
    m.degree += s;
  }
  for (const Term& t : p.cost()) {
    for (const RealTerm& rt : embed(t, blocks, m.first)) {
      for (const RealEntry& e : rt.entries) m.cost[rt.block](e.r, e.c) += e.v;
    }
  }
  const int mc = p.num_constraints();
  m.rows.resize(mc);
  m.rhs.resize(mc);
  m.by_block.resize(nb);
  for (int i = 0; i < mc; ++i) {
    const Constraint& c = p.constraints()[i];
    std::map<int, RealTerm> merged;
    for (const Term& t : c.terms) {
      for (RealTerm& rt : embed(t, blocks, m.first)) {
        auto it = merged.find(rt.block);
        if (it == merged.end()) {
          merged.emplace(rt.block, std::move(rt));
          continue;
        }
        RealTerm& dst = it->second;
        dst.entries.insert(dst.entries.end(), rt.entries.begin(), rt.entries.end());
        const int s = m.size[dst.block];
        dst.dense = static_cast<int>(dst.entries.size()) > 2 * s;
        if (dst.dense) {
          dst.mat = RealMatrix::Zero(s, s);
          for (const RealEntry& e : dst.entries) dst.mat(e.r, e.c) += e.v;
        }
      }
    }
    for (auto& [blk, rt] : merged) {
      m.by_block[blk].push_back({i, static_cast<int>(m.rows[i].size())});
      m.rows[i].push_back(std::move(rt));
    }
    m.rhs(i) = 2.0 * c.rhs;
  }
  return m;
}

double inner(const RealTerm& t, const RealMatrix& x) {
  if (t.dense) return (t.mat.array() * x.array()).sum();
  double s = 0.0;
  for (const RealEntry& e : t.entries) s += e.v * x(e.r, e.c);
  return s;
}

void accumulate(const RealTerm& t, double scale, RealMatrix& out) {
  if (t.dense) {
    out.noalias() += scale * t.mat;
    return;
  }
  for (const RealEntry& e : t.entries) out(e.r, e.c) += scale * e.v;
}

using Blocks = std::vector<RealMatrix>;

RealVector apply_a(const Model& m, const Blocks& x) {
  RealVector out = RealVector::Zero(static_cast<int>(m.rows.size()));
  for (size_t i = 0; i < m.rows.size(); ++i) {
    for (const RealTerm& t : m.rows[i]) out(i) += inner(t, x[t.block]);
  }
  return out;
}

Blocks apply_at(const Model& m, const RealVector& y) {
  Blocks out;
  for (int s : m.size) out.push_back(RealMatrix::Zero(s, s));
  for (size_t i = 0; i < m.rows.size(); ++i) {
    if (y(i) == 0.0) continue;
    for (const RealTerm& t : m.rows[i]) accumulate(t, y(i), out[t.block]);
  }
  return out;
}

double dot(const Blocks& a, const Blocks& b) {
  double s = 0.0;
  for (size_t k = 0; k < a.size(); ++k) s += (a[k].array() * b[k].array()).sum();
  return s;
}

double fro(const Blocks& a) { return std::sqrt(dot(a, a)); }

RealMatrix sym(const RealMatrix& a) { return 0.5 * (a + a.transpose()); }

// Nesterov-Todd scaling point of one block: W = G G^T with
// G^{-1} X G^{-T} = G^T S G = diag(lambda).
struct Scaling {
  RealMatrix lx;    // chol(X)
  RealMatrix ls;    // chol(S)
  RealMatrix g;
  RealMatrix ginv;
  RealMatrix w;
  RealVector lambda;
};

bool compute_scaling(const RealMatrix& x, const RealMatrix& s, Scaling& out) {
  const int n = static_cast<int>(x.rows());
  if (n == 1) {
    const double xv = x(0, 0), sv = s(0, 0);
    if (!(xv > 0.0) || !(sv > 0.0)) return false;
    out.lx = RealMatrix::Constant(1, 1, std::sqrt(xv));
    out.ls = RealMatrix::Constant(1, 1, std::sqrt(sv));
    out.g = RealMatrix::Constant(1, 1, std::sqrt(std::sqrt(xv / sv)));
    out.ginv = RealMatrix::Constant(1, 1, 1.0 / out.g(0, 0));
    out.w = RealMatrix::Constant(1, 1, std::sqrt(xv / sv));
    out.lambda = RealVector::Constant(1, std::sqrt(xv * sv));
    return true;
  }
  Eigen::LLT<RealMatrix> cx(x), cs(s);
  if (cx.info() != Eigen::Success || cs.info() != Eigen::Success) return false;
  out.lx = cx.matrixL();
  out.ls = cs.matrixL();
  Eigen::JacobiSVD<RealMatrix> svd(out.ls.transpose() * out.lx, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector sv = svd.singularValues();
  if (!(sv.minCoeff() > 0.0)) return false;
  const RealVector inv_sqrt = sv.cwiseSqrt().cwiseInverse();
  out.g = out.lx * svd.matrixV() * inv_sqrt.asDiagonal();
  const RealMatrix lx_inv = out.lx.triangularView<Eigen::Lower>().solve(RealMatrix::Identity(n, n));
  out.ginv = sv.cwiseSqrt().asDiagonal() * svd.matrixV().transpose() * lx_inv;
  out.w = sym(out.g * out.g.transpose());
  out.lambda = sv;
  return true;
}

// Largest alpha with L L^T + alpha D still PSD, given chol factor L.
double max_step(const RealMatrix& chol, const RealMatrix& dir) {
  const int n = static_cast<int>(chol.rows());
  double lo;
  if (n == 1) {
    lo = dir(0, 0) / (chol(0, 0) * chol(0, 0));
  } else {
    const auto tri = chol.triangularView<Eigen::Lower>();
    RealMatrix t = tri.solve(dir);
    t = tri.solve(t.transpose()).transpose();
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(sym(t), Eigen::EigenvaluesOnly);
    lo = es.eigenvalues().minCoeff();
  }
  return lo < 0.0 ? -1.0 / lo : std::numeric_limits<double>::infinity();
}

struct Direction {
  Blocks dx;
  RealVector dy;
  Blocks ds;
};

class SchurSystem {
 public:
  bool factor(RealMatrix m) {
    m_ = std::move(m);
    llt_.compute(m_);
    if (llt_.info() == Eigen::Success) return true;
    const double ridge = 1e-12 * std::max(1.0, m_.diagonal().cwiseAbs().maxCoeff());
    llt_.compute(m_ + ridge * RealMatrix::Identity(m_.rows(), m_.cols()));
    return llt_.info() == Eigen::Success;
  }
  // Two rounds of iterative refinement against the unregularized matrix.
  RealVector solve(const RealVector& r) const {
    RealVector x = llt_.solve(r);
    for (int k = 0; k < 2; ++k) x += llt_.solve(r - m_ * x);
    return x;
  }

 private:
  RealMatrix m_;
  Eigen::LLT<RealMatrix> llt_;
};

RealMatrix schur_matrix(const Model& m, const std::vector<Scaling>& sc) {
  const int mc = static_cast<int>(m.rows.size());
  RealMatrix out = RealMatrix::Zero(mc, mc);
  for (size_t blk = 0; blk < m.by_block.size(); ++blk) {
    const auto& touching = m.by_block[blk];
    if (touching.empty()) continue;
    const RealMatrix& w = sc[blk].w;
    for (const auto& [j, tj] : touching) {
      const RealTerm& aj = m.rows[j][tj];
      RealMatrix t;
      if (aj.dense) {
        t.noalias() = w * aj.mat * w;
      } else {
        t = RealMatrix::Zero(w.rows(), w.cols());
        for (const RealEntry& e : aj.entries) t.noalias() += e.v * w.col(e.r) * w.row(e.c);
      }
      for (const auto& [i, ti] : touching) {
        if (i < j) continue;
        const double v = inner(m.rows[i][ti], t);
        out(i, j) += v;
      }
    }
  }
  out.triangularView<Eigen::StrictlyUpper>() = out.transpose();
  return out;
}

// Factored A A*, used to project directions back onto A dx = rp when the
// Schur solve has lost accuracy near the boundary.
class FeasibilityProjector {
 public:
  explicit FeasibilityProjector(const Model& m) {
    const int mc = static_cast<int>(m.rows.size());
    RealMatrix g(mc, mc);
    RealVector e = RealVector::Zero(mc);
    for (int i = 0; i < mc; ++i) {
      e(i) = 1.0;
      g.col(i) = apply_a(m, apply_at(m, e));
      e(i) = 0.0;
    }
    ldlt_.compute(0.5 * (g + g.transpose()));
  }
  void correct(const Model& m, const RealVector& rp, Blocks& dx) const {
    const RealVector r = rp - apply_a(m, dx);
    const Blocks fix = apply_at(m, ldlt_.solve(r));
    for (size_t k = 0; k < dx.size(); ++k) dx[k] = sym(dx[k] + fix[k]);
  }

 private:
  Eigen::LDLT<RealMatrix> ldlt_;
};

Direction solve_direction(const Model& m, const std::vector<Scaling>& sc, const SchurSystem& schur,
                          const FeasibilityProjector& proj, const RealVector& rp, const Blocks& rd,
                          const Blocks& rc) {
  const size_t nb = m.size.size();
  Blocks q(nb);
  for (size_t k = 0; k < nb; ++k) q[k] = rc[k] - sc[k].w * rd[k] * sc[k].w;
  Direction d;
  d.dy = schur.solve(rp - apply_a(m, q));
  const Blocks aty = apply_at(m, d.dy);
  d.ds.resize(nb);
  d.dx.resize(nb);
  for (size_t k = 0; k < nb; ++k) {
    d.ds[k] = sym(rd[k] - aty[k]);
    d.dx[k] = sym(rc[k] - sc[k].w * d.ds[k] * sc[k].w);
  }
  proj.correct(m, rp, d.dx);
  return d;
}

}  // namespace

// ---------------------------------------------------------------------------
// Validation

void ConicProblem::validate() const {
  if (constraints_.empty()) throw std::invalid_argument("ConicProblem: needs at least one constraint");
  const Model m = build_model(*this);
  std::vector<int> offset(m.size.size() + 1, 0);
  for (size_t k = 0; k < m.size.size(); ++k) offset[k + 1] = offset[k] + m.size[k] * m.size[k];
  const int mc = num_constraints();
  Eigen::SparseMatrix<double, Eigen::RowMajor> k(mc, offset.back());
  std::vector<Eigen::Triplet<double>> trip;
  for (int i = 0; i < mc; ++i) {
    for (const RealTerm& t : m.rows[i]) {
      for (const RealEntry& e : t.entries) {
        trip.emplace_back(i, offset[t.block] + e.r * m.size[t.block] + e.c, e.v);
      }
    }
  }
  k.setFromTriplets(trip.begin(), trip.end());
  RealMatrix gram = RealMatrix(k * k.transpose());
  for (int i = 0; i < mc; ++i) {
    if (!(gram(i, i) > 0.0)) {
      throw std::invalid_argument("ConicProblem: constraint " + std::to_string(i) + " is zero");
    }
  }
  const RealVector inv = gram.diagonal().cwiseSqrt().cwiseInverse();
  gram = inv.asDiagonal() * gram * inv.asDiagonal();
  Eigen::LDLT<RealMatrix> ldlt(gram);
  if (ldlt.info() != Eigen::Success || ldlt.vectorD().minCoeff() <= kIndependenceTol) {
    throw std::invalid_argument("ConicProblem: constraint operators are linearly dependent");
  }
}

// ---------------------------------------------------------------------------
// Solver

ConicSolution solve(const ConicProblem& problem, const SolverOptions& opt) {
  problem.validate();
  const Model m = build_model(problem);
  const size_t nb = m.size.size();

  // Per-block starting point scaled to the data, so blocks whose cost or rows
  // are large relative to the rest do not stall the first iterations.
  std::vector<double> row_norm(nb, 0.0), row_ratio(nb, 0.0);
  for (size_t i = 0; i < m.rows.size(); ++i) {
    for (const RealTerm& t : m.rows[i]) {
      double n2 = 0.0;
      if (t.dense) {
        n2 = t.mat.squaredNorm();
      } else {
        RealMatrix a = RealMatrix::Zero(m.size[t.block], m.size[t.block]);
        accumulate(t, 1.0, a);
        n2 = a.squaredNorm();
      }
      const double n = std::sqrt(n2);
      row_norm[t.block] = std::max(row_norm[t.block], n);
      row_ratio[t.block] = std::max(row_ratio[t.block], (1.0 + std::abs(m.rhs(i))) / (1.0 + n));
    }
  }
  Blocks x, s;
  for (size_t k = 0; k < nb; ++k) {
    const double n = m.size[k];
    const double xi = std::max({10.0, std::sqrt(n), n * row_ratio[k]});
    const double eta =
        std::max({10.0, std::sqrt(n), (1.0 + std::max(row_norm[k], m.cost[k].norm())) / std::sqrt(n)});
    x.push_back(xi * RealMatrix::Identity(m.size[k], m.size[k]));
    s.push_back(eta * RealMatrix::Identity(m.size[k], m.size[k]));
  }
  RealVector y = RealVector::Zero(problem.num_constraints());

  double cost_norm = 0.0;
  for (const RealMatrix& c : m.cost) cost_norm += c.squaredNorm();
  cost_norm = std::sqrt(cost_norm);
  const double rhs_norm = m.rhs.norm();

  ConicSolution sol;
  std::vector<Scaling> sc(nb);
  SchurSystem schur;
  const FeasibilityProjector proj(m);

  for (int iter = 0;; ++iter) {
    const RealVector rp = m.rhs - apply_a(m, x);
    const Blocks aty = apply_at(m, y);
    Blocks rd(nb);
    for (size_t k = 0; k < nb; ++k) rd[k] = m.cost[k] - s[k] - aty[k];
    const double pobj = 0.5 * dot(m.cost, x);
    const double dobj = 0.5 * m.rhs.dot(y);
    const double mu = dot(x, s) / m.degree;

    sol.primal_value = pobj;
    sol.dual_value = dobj;
    sol.gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj));
    sol.primal_infeasibility = rp.norm() / (1.0 + rhs_norm);
    sol.dual_infeasibility = fro(rd) / (1.0 + cost_norm);
    sol.iterations = iter;
    if (opt.record_history) {
      sol.history.push_back({iter, pobj, dobj, sol.gap, sol.primal_infeasibility,
                             sol.dual_infeasibility});
    }
    if (sol.primal_infeasibility <= opt.tol && sol.dual_infeasibility <= opt.tol &&
        sol.gap <= opt.tol) {
      sol.status = Status::kOptimal;
      break;
    }
    if (iter >= opt.max_iterations) {
      sol.status = Status::kMaxIter;
      break;
    }

    bool ok = true;
    for (size_t k = 0; k < nb && ok; ++k) ok = compute_scaling(x[k], s[k], sc[k]);
    if (!ok || !schur.factor(schur_matrix(m, sc))) {
      sol.status = Status::kNumericalFailure;
      break;
    }

    // Predictor (affine scaling) direction.
    Blocks rc(nb);
    for (size_t k = 0; k < nb; ++k) rc[k] = -x[k];
    const Direction aff = solve_direction(m, sc, schur, proj, rp, rd, rc);
    double ap = 1.0, ad = 1.0;
    for (size_t k = 0; k < nb; ++k) {
      ap = std::min(ap, max_step(sc[k].lx, aff.dx[k]));
      ad = std::min(ad, max_step(sc[k].ls, aff.ds[k]));
    }
    double mu_aff = 0.0;
    for (size_t k = 0; k < nb; ++k) {
      mu_aff += ((x[k] + ap * aff.dx[k]).array() * (s[k] + ad * aff.ds[k]).array()).sum();
    }
    mu_aff /= m.degree;
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

    // Corrector: centering plus second-order term, in the scaled space.
    for (size_t k = 0; k < nb; ++k) {
      const Scaling& g = sc[k];
      const RealMatrix dxs = g.ginv * aff.dx[k] * g.ginv.transpose();
      const RealMatrix dss = g.g.transpose() * aff.ds[k] * g.g;
      RealMatrix rhs = -sym(dxs * dss);
      for (int i = 0; i < rhs.rows(); ++i) rhs(i, i) += sigma * mu - g.lambda(i) * g.lambda(i);
      RealMatrix r(rhs.rows(), rhs.cols());
      for (int i = 0; i < r.rows(); ++i)
        for (int j = 0; j < r.cols(); ++j) r(i, j) = 2.0 * rhs(i, j) / (g.lambda(i) + g.lambda(j));
      rc[k] = sym(g.g * r * g.g.transpose());
    }
    const Direction dir = solve_direction(m, sc, schur, proj, rp, rd, rc);
    ap = std::numeric_limits<double>::infinity();
    ad = ap;
    for (size_t k = 0; k < nb; ++k) {
      ap = std::min(ap, max_step(sc[k].lx, dir.dx[k]));
      ad = std::min(ad, max_step(sc[k].ls, dir.ds[k]));
    }
    ap = std::min(1.0, opt.step_fraction * ap);
    ad = std::min(1.0, opt.step_fraction * ad);
    if (std::max(ap, ad) < 1e-14) {
      sol.status = Status::kNumericalFailure;
      break;
    }
    for (size_t k = 0; k < nb; ++k) {
      x[k] = sym(x[k] + ap * dir.dx[k]);
      s[k] = sym(s[k] + ad * dir.ds[k]);
    }
    y += ad * dir.dy;
  }

  // Map the real iterate back onto the public blocks.
  const auto& blocks = problem.blocks();
  sol.y = y;
  for (size_t b = 0; b < blocks.size(); ++b) {
    const int f = m.first[b];
    BlockValue xv, sv;
    if (blocks[b].kind == BlockKind::kPsd) {
      const int n = blocks[b].size;
      auto extract = [n](const RealMatrix& r) {
        ComplexMatrix c(n, n);
        c.real() = 0.5 * (r.topLeftCorner(n, n) + r.bottomRightCorner(n, n));
        c.imag() = 0.5 * (r.bottomLeftCorner(n, n) - r.topRightCorner(n, n));
        return ComplexMatrix(0.5 * (c + c.adjoint()));
      };
      xv.psd = extract(x[f]);
      sv.psd = extract(s[f]);
    } else {
      xv.nonneg.resize(blocks[b].size);
      sv.nonneg.resize(blocks[b].size);
      for (int i = 0; i < blocks[b].size; ++i) {
        xv.nonneg(i) = x[f + i](0, 0);
        sv.nonneg(i) = 0.5 * s[f + i](0, 0);
      }
    }
    sol.x.push_back(std::move(xv));
    sol.s.push_back(std::move(sv));
  }
  return sol;
}

void write_history_jsonl(const ConicSolution& sol, std::ostream& out) {
  for (const IterateRecord& r : sol.history) {
    nlohmann::json j{{"iteration", r.iteration}, {"primal", r.primal}, {"dual", r.dual},
                     {"gap", r.gap}, {"primal_infeasibility", r.primal_infeasibility},
                     {"dual_infeasibility", r.dual_infeasibility}};
    out << j.dump() << '\n';
  }
}

}  // namespace roc::sdp
