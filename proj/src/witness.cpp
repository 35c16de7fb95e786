#include "roc/witness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "roc/errors.hpp"

namespace roc {

using sdp::BlockKind;
using sdp::Constraint;
using sdp::ConicProblem;
using sdp::Term;

WitnessDiagnostics validate_witness(const HermitianMatrix& w, double tol) {
  WitnessDiagnostics diag;
  diag.min_diagonal = w.diagonal_real().minCoeff();
  diag.max_eigenvalue = max_eigenvalue(w);
  std::ostringstream msg;
  if (diag.min_diagonal < -tol) {
    msg << "Delta(W) has a negative entry " << diag.min_diagonal;
  }
  if (diag.max_eigenvalue > 1.0 + tol) {
    if (msg.tellp() > 0) msg << "; ";
    msg << "largest eigenvalue " << diag.max_eigenvalue << " exceeds 1";
  }
  diag.message = msg.str();
  diag.valid = diag.message.empty();
  return diag;
}

CoherenceWitness::CoherenceWitness(HermitianMatrix w, double tol) : w_(std::move(w)) {
  const WitnessDiagnostics d = validate_witness(w_, tol);
  if (!d.valid) throw std::invalid_argument("invalid coherence witness: " + d.message);
}

double witness_lower_bound(const DensityMatrix& rho, const CoherenceWitness& w) {
  if (rho.dim() != w.dim()) throw std::invalid_argument("witness_lower_bound: dimension mismatch");
  return std::max(0.0, -trace_product(rho.hermitian(), w.matrix()));
}

CoherenceWitness faithful_witness(const DensityMatrix& rho) {
  const HermitianMatrix dr = dephase(rho.hermitian());
  const double op = dr.diagonal_real().maxCoeff();
  return CoherenceWitness((dr - rho.hermitian()) * (1.0 / op));
}

void WitnessDataset::validate() const {
  if (dim < 1) throw std::invalid_argument("WitnessDataset: dim must be positive");
  if (observables.empty()) throw std::invalid_argument("WitnessDataset: no observables");
  if (observables.size() != expectations.size()) {
    throw std::invalid_argument("WitnessDataset: " + std::to_string(observables.size()) +
                                " observables but " + std::to_string(expectations.size()) +
                                " expectations");
  }
  if (!slack.empty() && slack.size() != observables.size()) {
    throw std::invalid_argument("WitnessDataset: slack list length mismatch");
  }
  for (size_t i = 0; i < observables.size(); ++i) {
    if (observables[i].dim() != dim) {
      throw std::invalid_argument("WitnessDataset: observable " + std::to_string(i) +
                                  " has dimension " + std::to_string(observables[i].dim()));
    }
    if (!std::isfinite(expectations[i])) {
      throw std::invalid_argument("WitnessDataset: non-finite expectation");
    }
    if (slack_at(i) < 0.0 || !std::isfinite(slack_at(i))) {
      throw std::invalid_argument("WitnessDataset: slack must be finite and >= 0");
    }
  }
}

WitnessDataset dataset_from_state(const DensityMatrix& rho, std::vector<HermitianMatrix> observables) {
  WitnessDataset data;
  data.dim = rho.dim();
  for (const HermitianMatrix& o : observables) {
    data.expectations.push_back(trace_product(o, rho.hermitian()));
  }
  data.observables = std::move(observables);
  return data;
}

// ---------------------------------------------------------------------------
// Best witness in span{O_i, 1}

DataWitness best_witness_from_data(const WitnessDataset& data, const sdp::SolverOptions& options) {
  data.validate();
  const int d = data.dim;
  const int k = static_cast<int>(data.observables.size());
  std::vector<int> slack_index;  // observables with eps_i > 0
  for (int i = 0; i < k; ++i)
    if (data.slack_at(i) > 0.0) slack_index.push_back(i);
  const int ne = static_cast<int>(slack_index.size());
  constexpr double box = DataWitness::kCoefficientBox;

  // Written in dual form: y = (c, m, t), slacks
  //   block 0: 1 - W >= 0        block 1: diag(W) >= 0
  //   block 2: box |c_i|, |m| <= B   block 3: t_j >= |c_j| for slack observables.
  std::vector<sdp::BlockSpec> blocks{{BlockKind::kPsd, d}, {BlockKind::kNonneg, d},
                                     {BlockKind::kNonneg, 2 * (k + 1)}};
  if (ne > 0) blocks.push_back({BlockKind::kNonneg, 2 * ne});
  ConicProblem p(blocks);
  p.set_cost(HermitianMatrix::identity(d), 0);
  p.set_cost(RealVector::Constant(2 * (k + 1), box), 2);

  auto box_term = [&](int idx) {
    return Term{2, {{2 * idx, 2 * idx, 1.0}, {2 * idx + 1, 2 * idx + 1, -1.0}}};
  };
  for (int i = 0; i < k; ++i) {
    const HermitianMatrix& o = data.observables[i];
    Constraint c{{sdp::dense_term(0, o), sdp::vector_term(1, -o.diagonal_real()), box_term(i)},
                 -data.expectations[i]};
    const auto it = std::find(slack_index.begin(), slack_index.end(), i);
    if (it != slack_index.end()) {
      const int j = static_cast<int>(it - slack_index.begin());
      c.terms.push_back(Term{3, {{2 * j, 2 * j, 1.0}, {2 * j + 1, 2 * j + 1, -1.0}}});
    }
    p.add_constraint(std::move(c));
  }
  p.add_constraint({{sdp::dense_term(0, HermitianMatrix::identity(d)),
                     sdp::vector_term(1, RealVector::Constant(d, -1.0)), box_term(k)},
                    -1.0});
  for (int j = 0; j < ne; ++j) {
    p.add_constraint({{Term{3, {{2 * j, 2 * j, -1.0}, {2 * j + 1, 2 * j + 1, -1.0}}}},
                      -data.slack_at(slack_index[j])});
  }

  const sdp::ConicSolution sol = sdp::solve(p, options);
  if (!sol.optimal()) {
    throw SolverError("best_witness_from_data: solver returned " + sdp::to_string(sol.status));
  }

  DataWitness out;
  std::vector<double> c(sol.y.data(), sol.y.data() + k);
  double m = sol.y(k);
  for (double v : c) out.box_active |= std::abs(v) >= 0.999 * box;
  out.box_active |= std::abs(m) >= 0.999 * box;

  // Polish into an exactly valid witness: lift the diagonal, then shrink.
  auto assemble = [&](const std::vector<double>& cc, double mm) {
    HermitianMatrix w = HermitianMatrix::identity(d) * mm;
    for (int i = 0; i < k; ++i) w = w + data.observables[i] * cc[i];
    return w;
  };
  HermitianMatrix w = assemble(c, m);
  const double lift = std::max(0.0, -w.diagonal_real().minCoeff());
  m += lift;
  w = assemble(c, m);
  const double top = std::max(1.0, max_eigenvalue(w));
  for (double& v : c) v /= top;
  m /= top;
  out.witness = assemble(c, m);

  double value = -m;
  for (int i = 0; i < k; ++i) value -= c[i] * data.expectations[i] + data.slack_at(i) * std::abs(c[i]);
  out.bound = std::max(0.0, value);
  out.coefficients = std::move(c);
  out.offset = m;
  return out;
}

// ---------------------------------------------------------------------------
// Minimal robustness compatible with the data

namespace {

constexpr double kInfeasibleThreshold = 1e-6;

}  // namespace

void check_data_consistency(const WitnessDataset& data, const sdp::SolverOptions& options) {
  data.validate();
  const int d = data.dim;
  const int k = static_cast<int>(data.observables.size());
  std::vector<int> slack_index;
  for (int i = 0; i < k; ++i)
    if (data.slack_at(i) > 0.0) slack_index.push_back(i);
  const int ne = static_cast<int>(slack_index.size());

  // min sum(e+ + e-) s.t. Tr rho = 1, Tr[O_i rho] + e+_i - e-_i - v_i = o_i - eps_i,
  //                     v_i + w_i = 2 eps_i.
  std::vector<sdp::BlockSpec> blocks{{BlockKind::kPsd, d}, {BlockKind::kNonneg, 2 * k}};
  if (ne > 0) blocks.push_back({BlockKind::kNonneg, 2 * ne});
  ConicProblem p(blocks);
  p.set_cost(RealVector::Ones(2 * k), 1);
  p.add_constraint({{sdp::dense_term(0, HermitianMatrix::identity(d))}, 1.0});
  for (int i = 0; i < k; ++i) {
    Constraint c{{sdp::dense_term(0, data.observables[i]),
                  Term{1, {{2 * i, 2 * i, 1.0}, {2 * i + 1, 2 * i + 1, -1.0}}}},
                 data.expectations[i] - data.slack_at(i)};
    const auto it = std::find(slack_index.begin(), slack_index.end(), i);
    if (it != slack_index.end()) {
      const int j = static_cast<int>(it - slack_index.begin());
      c.terms.push_back(Term{2, {{2 * j, 2 * j, -1.0}}});
    }
    p.add_constraint(std::move(c));
  }
  for (int j = 0; j < ne; ++j) {
    p.add_constraint({{Term{2, {{2 * j, 2 * j, 1.0}, {2 * j + 1, 2 * j + 1, 1.0}}}},
                      2.0 * data.slack_at(slack_index[j])});
  }
  const sdp::ConicSolution sol = sdp::solve(p, options);
  if (!sol.optimal()) {
    throw SolverError("min_roc_from_data: feasibility check returned " + sdp::to_string(sol.status));
  }
  if (sol.primal_value > kInfeasibleThreshold) {
    std::ostringstream msg;
    msg << "no state reproduces the expectations (total violation " << sol.primal_value << ")";
    throw InfeasibleData(msg.str());
  }
}

namespace {

struct Row {
  HermitianMatrix a;
  double b;
};

// Orthonormalizes the equality rows under Re Tr[A B], dropping dependent ones.
std::vector<Row> independent_rows(const std::vector<Row>& rows) {
  std::vector<Row> basis;
  for (const Row& r : rows) {
    const double n0 = std::sqrt(trace_product(r.a, r.a));
    if (n0 == 0.0) continue;
    HermitianMatrix a = r.a;
    double b = r.b;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Row& q : basis) {
        const double coef = trace_product(q.a, a);
        a = a - q.a * coef;
        b -= coef * q.b;
      }
    }
    const double n = std::sqrt(trace_product(a, a));
    if (n <= 1e-9 * n0) continue;
    basis.push_back({a * (1.0 / n), b / n});
  }
  return basis;
}

}  // namespace

DataRoc min_roc_from_data(const WitnessDataset& data, const sdp::SolverOptions& options) {
  data.validate();
  check_data_consistency(data, options);

  const int d = data.dim;
  const int k = static_cast<int>(data.observables.size());
  std::vector<int> slack_index;
  std::vector<Row> equalities{{HermitianMatrix::identity(d), 1.0}};
  for (int i = 0; i < k; ++i) {
    if (data.slack_at(i) > 0.0) {
      slack_index.push_back(i);
    } else {
      equalities.push_back({data.observables[i], data.expectations[i]});
    }
  }
  const int ne = static_cast<int>(slack_index.size());

  // Blocks: rho' (0), Z = D - rho' (1), interval slacks (2).
  // min Tr Z s.t. Z + rho' diagonal, data rows on rho'.
  std::vector<sdp::BlockSpec> blocks{{BlockKind::kPsd, d}, {BlockKind::kPsd, d}};
  if (ne > 0) blocks.push_back({BlockKind::kNonneg, 2 * ne});
  ConicProblem p(blocks);
  p.set_cost(HermitianMatrix::identity(d), 1);
  for (int r = 0; r < d; ++r) {
    for (int c = r + 1; c < d; ++c) {
      for (Complex unit : {Complex(0.5, 0.0), Complex(0.0, 0.5)}) {
        p.add_constraint({{Term{0, {{r, c, unit}}}, Term{1, {{r, c, unit}}}}, 0.0});
      }
    }
  }
  for (const Row& row : independent_rows(equalities)) {
    p.add_constraint({{sdp::dense_term(0, row.a)}, row.b});
  }
  for (int j = 0; j < ne; ++j) {
    const int i = slack_index[j];
    p.add_constraint({{sdp::dense_term(0, data.observables[i]), Term{2, {{2 * j, 2 * j, -1.0}}}},
                      data.expectations[i] - data.slack_at(i)});
    p.add_constraint({{Term{2, {{2 * j, 2 * j, 1.0}, {2 * j + 1, 2 * j + 1, 1.0}}}},
                      2.0 * data.slack_at(i)});
  }

  const sdp::ConicSolution sol = sdp::solve(p, options);
  if (!sol.optimal()) {
    throw SolverError("min_roc_from_data: solver returned " + sdp::to_string(sol.status));
  }
  ComplexMatrix state = sol.x[0].psd;
  state /= state.trace().real();
  return DataRoc{std::max(0.0, sol.primal_value), DensityMatrix(state)};
}

// ---------------------------------------------------------------------------
// JSON

WitnessDataset dataset_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("dataset must be a JSON object");
  for (const char* key : {"dim", "observables", "expectations"}) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("dataset is missing '") + key + "'");
  }
  WitnessDataset data;
  data.dim = j.at("dim").get<int>();
  for (const json& o : j.at("observables")) data.observables.push_back(hermitian_from_json(o));
  data.expectations = j.at("expectations").get<std::vector<double>>();
  if (j.contains("slack")) data.slack = j.at("slack").get<std::vector<double>>();
  data.validate();
  return data;
}

json dataset_to_json(const WitnessDataset& data) {
  json obs = json::array();
  for (const HermitianMatrix& o : data.observables) obs.push_back(matrix_to_json(o.matrix()));
  json j{{"dim", data.dim}, {"observables", std::move(obs)}, {"expectations", data.expectations}};
  if (!data.slack.empty()) j["slack"] = data.slack;
  return j;
}

json data_witness_to_json(const DataWitness& w) {
  return json{{"bound", w.bound},
              {"coefficients", w.coefficients},
              {"offset", w.offset},
              {"box_active", w.box_active}};
}

}  // namespace roc
