// Command-line front end for the robustness-of-coherence toolkit.
//
// Exit codes: 0 ok, 1 bad input, 2 solver failure, 3 invalid witness,
// 4 infeasible data, 5 operational theorem mismatch, 6 audit failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "roc/errors.hpp"
#include "roc/games.hpp"
#include "roc/robustness.hpp"
#include "roc/witness.hpp"

using namespace roc;

namespace {

enum Exit { kOk = 0, kBadInput = 1, kSolver = 2, kBadWitness = 3, kInfeasible = 4, kTheorem = 5, kAudit = 6 };

struct Settings {
  bool json_mode = false;
  double tol = 1e-8;
  std::uint64_t seed = 0;
};

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

void print_matrix(std::ostream& out, const std::string& name, const ComplexMatrix& m) {
  out << name << ":\n";
  for (int r = 0; r < m.rows(); ++r) {
    out << " ";
    for (int c = 0; c < m.cols(); ++c) {
      const double im = m(r, c).imag();
      out << "  " << fixed6(m(r, c).real()) << (im < 0 && fixed6(im) != "0.000000" ? "-" : "+")
          << fixed6(std::abs(im)) << "i";
    }
    out << "\n";
  }
}

void print_kv(const std::string& key, double v) { std::cout << key << " " << fixed6(v) << "\n"; }

sdp::SolverOptions solver_options(const Settings& s) {
  sdp::SolverOptions o;
  o.tol = s.tol;
  return o;
}

DensityMatrix load_state(const std::string& path) { return state_from_json(read_json_file(path)); }

int cmd_roc(const Settings& s, const std::string& path, bool certificate, bool fast_only) {
  const DensityMatrix rho = load_state(path);
  if (fast_only) {
    const auto v = roc_fast_path(rho);
    if (s.json_mode) {
      std::cout << json{{"value", v ? json(*v) : json(nullptr)}, {"method", "FAST_PATH"}}.dump() << "\n";
    } else if (v) {
      std::cout << fixed6(*v) << "\n";
    } else {
      std::cout << "fast path not applicable\n";
    }
    return kOk;
  }
  if (!certificate) {
    if (auto v = roc_fast_path(rho)) {
      if (s.json_mode) {
        std::cout << json{{"value", *v}, {"method", "FAST_PATH"}}.dump() << "\n";
      } else {
        std::cout << fixed6(*v) << "\n";
      }
      return kOk;
    }
  }
  const RocCertificate cert = roc_exact(rho, solver_options(s));
  if (s.json_mode) {
    json j = certificate ? certificate_to_json(cert) : json{{"value", cert.value}, {"method", "SDP"}};
    std::cout << j.dump() << "\n";
    return kOk;
  }
  std::cout << fixed6(cert.value) << "\n";
  if (certificate) {
    print_kv("gap", cert.gap);
    std::cout << "method " << to_string(cert.method) << "\n";
    print_matrix(std::cout, "witness", cert.witness.matrix());
    print_matrix(std::cout, "delta_star", cert.incoherent_part.matrix());
    if (cert.noise_part) {
      print_matrix(std::cout, "tau_star", cert.noise_part->matrix());
    } else {
      std::cout << "tau_star: none\n";
    }
  }
  return kOk;
}

int cmd_bounds(const Settings& s, const std::string& path) {
  const DensityMatrix rho = load_state(path);
  const BoundReport r = roc_bounds(rho, roc_value(rho, solver_options(s)));
  if (s.json_mode) {
    std::cout << bounds_to_json(r).dump() << "\n";
    return kOk;
  }
  print_kv("exact", *r.exact);
  print_kv("l1_upper", r.l1_upper);
  print_kv("l1_lower", r.l1_lower);
  print_kv("faithful_1", r.faithful_1);
  print_kv("faithful_2", r.faithful_2);
  print_kv("faithful_3", r.faithful_3);
  for (const auto& v : r.violations) std::cout << "violation " << v << "\n";
  return kOk;
}

int cmd_witness_bound(const Settings& s, const std::string& state_path, const std::string& witness_path) {
  const DensityMatrix rho = load_state(state_path);
  const HermitianMatrix w = hermitian_from_json(read_json_file(witness_path));
  if (w.dim() != rho.dim()) throw std::invalid_argument("witness and state dimensions differ");
  const WitnessDiagnostics diag = validate_witness(w);
  if (!diag.valid) {
    std::cerr << "invalid witness: " << diag.message << "\n";
    return kBadWitness;
  }
  const double bound = witness_lower_bound(rho, CoherenceWitness(w));
  if (s.json_mode) {
    std::cout << json{{"bound", bound}}.dump() << "\n";
  } else {
    std::cout << fixed6(bound) << "\n";
  }
  return kOk;
}

int cmd_witness_from_data(const Settings& s, const std::string& path) {
  const WitnessDataset data = dataset_from_json(read_json_file(path));
  check_data_consistency(data, solver_options(s));
  const DataWitness w = best_witness_from_data(data, solver_options(s));
  if (s.json_mode) {
    std::cout << data_witness_to_json(w).dump() << "\n";
    return kOk;
  }
  print_kv("bound", w.bound);
  std::cout << "coefficients";
  for (double c : w.coefficients) std::cout << " " << fixed6(c);
  std::cout << "\n";
  print_kv("offset", w.offset);
  if (w.box_active) std::cout << "box_active true\n";
  return kOk;
}

int cmd_min_roc_from_data(const Settings& s, const std::string& path) {
  const WitnessDataset data = dataset_from_json(read_json_file(path));
  const DataRoc r = min_roc_from_data(data, solver_options(s));
  if (s.json_mode) {
    std::cout << json{{"min_roc", r.min_roc}, {"state", matrix_to_json(r.state.matrix())}}.dump() << "\n";
  } else {
    std::cout << fixed6(r.min_roc) << "\n";
  }
  return kOk;
}

int cmd_game(const Settings& s, const std::string& game_path, const std::string& state_path) {
  const Game g = game_from_json(read_json_file(game_path));
  const DensityMatrix rho = load_state(state_path);
  if (game_dim(g) != rho.dim()) throw std::invalid_argument("game and state dimensions differ");
  const double p = success_probability(g, rho, solver_options(s)).p_succ;
  const double base = incoherent_baseline(g, solver_options(s));
  if (s.json_mode) {
    std::cout << json{{"p_succ", p}, {"baseline", base}, {"ratio", p / base}}.dump() << "\n";
  } else {
    print_kv("p_succ", p);
    print_kv("baseline", base);
    print_kv("ratio", p / base);
  }
  return kOk;
}

int cmd_verify_teo(const Settings& s, const std::string& path) {
  const DensityMatrix rho = load_state(path);
  const TheoremReport r = verify_operational_theorem(rho, s.seed, 20, 10, solver_options(s));
  if (s.json_mode) {
    std::cout << theorem_report_to_json(r).dump() << "\n";
  } else {
    print_kv("roc", r.roc);
    print_kv("ratio", r.canonical_ratio);
    print_kv("expected", 1.0 + r.roc);
    print_kv("worst_phase_excess", r.worst_phase_excess);
    print_kv("worst_channel_excess", r.worst_channel_excess);
    std::cout << (r.holds ? "holds" : "MISMATCH") << "\n";
  }
  for (const auto& f : r.failures) std::cerr << f << "\n";
  return r.holds ? kOk : kTheorem;
}

int cmd_sweep(const Settings& s, int steps, const std::string& out_path) {
  if (steps < 1) throw std::invalid_argument("--steps must be >= 1");
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw std::invalid_argument("cannot open " + out_path + " for writing");
  }
  std::ostream& out = out_path.empty() ? std::cout : file;
  out << "r1,r2,r3,roc,l1\n";
  auto coord = [steps](int k) { return -1.0 + 2.0 * k / steps; };
  for (int a = 0; a <= steps; ++a) {
    for (int b = 0; b <= steps; ++b) {
      for (int c = 0; c <= steps; ++c) {
        const double r1 = coord(a), r2 = coord(b), r3 = coord(c);
        if (r1 * r1 + r2 * r2 + r3 * r3 > 1.0 + 1e-12) continue;
        ComplexMatrix m(2, 2);
        m << 0.5 * (1 + r3), Complex(0.5 * r1, -0.5 * r2), Complex(0.5 * r1, 0.5 * r2), 0.5 * (1 - r3);
        const DensityMatrix rho(m);
        const double roc = roc_exact(rho, solver_options(s)).value;
        out << fixed6(r1) << "," << fixed6(r2) << "," << fixed6(r3) << "," << fixed6(roc) << ","
            << fixed6(l1_coherence(rho)) << "\n";
      }
    }
  }
  return kOk;
}

int cmd_audit(const Settings& s, int dim, int samples) {
  if (dim < 2) throw std::invalid_argument("--dim must be >= 2");
  if (samples < 1) throw std::invalid_argument("--samples must be >= 1");
  const sdp::SolverOptions opt = solver_options(s);
  std::map<std::string, std::pair<int, int>> tally;  // name -> (passed, failed)
  auto record = [&](const std::string& name, bool ok) {
    auto& t = tally[name];
    (ok ? t.first : t.second)++;
  };

  std::optional<std::pair<DensityMatrix, double>> previous;
  for (int i = 0; i < samples; ++i) {
    const std::uint64_t seed = derive_seed(s.seed, static_cast<std::uint64_t>(i));
    const DensityMatrix rho = random_state(dim, 1 + i % dim, seed);
    const RocCertificate cert = roc_exact(rho, opt);
    const double v = cert.value;

    const WitnessDiagnostics wd = validate_witness(cert.witness, 1e-8);
    const double dmax = dephase(cert.witness).matrix().cwiseAbs().maxCoeff();
    record("certificate_witness", wd.valid && dmax <= 1e-8);
    record("certificate_value", std::abs(-trace_product(cert.witness, rho.hermitian()) - v) <= 1e-6 &&
                                    std::abs(cert.gap) <= 1e-7);
    ComplexMatrix recon = (1.0 + v) * cert.incoherent_part.matrix();
    if (cert.noise_part) recon -= v * cert.noise_part->matrix();
    record("pseudomixture", max_abs_diff(recon, rho.matrix()) <= 1e-7);

    record("bound_chain", roc_bounds(rho, v).violations.empty());
    if (auto fast = roc_fast_path(rho)) record("fast_path", std::abs(*fast - v) <= 1e-6);

    const double off = (rho.matrix() - dephase(rho).matrix()).cwiseAbs().maxCoeff();
    record("faithfulness", (v <= 1e-7) == (off <= 1e-9));
    const RealVector diag_rho = rho.hermitian().diagonal_real();
    record("faithfulness", roc_exact(DensityMatrix::diagonal(diag_rho), opt).value <= 1e-7);

    const ComplexMatrix u = phase_channel(dim, 0.7 + i);
    record("diagonal_unitary_covariance",
           std::abs(roc_exact(DensityMatrix(rho.hermitian().conjugated(u)), opt).value - v) <= 1e-7);

    if (dim * dim <= kMaxSwapDim2) {
      const SwapPurity sp = swap_purity_check(rho);
      record("swap_purity", std::abs(sp.swap_expectation - sp.purity) <= 1e-10 &&
                                std::abs(sp.dephased_swap_expectation - sp.dephased_purity) <= 1e-10);
    }
    const double lhs = (rho.matrix() - dephase(rho).matrix()).squaredNorm();
    const double purity = (rho.matrix() * rho.matrix()).trace().real();
    record("dephasing_identity", std::abs(lhs - (purity - diag_rho.squaredNorm())) <= 1e-10);

    if (previous) {
      const double p = 0.25 + 0.5 * ((i * 37) % 11) / 10.0;
      const DensityMatrix mix = rho.mix(p, previous->first);
      record("convexity", roc_exact(mix, opt).value <= p * v + (1 - p) * previous->second + 1e-7);
    }
    previous.emplace(rho, v);
  }

  bool all = true;
  for (const auto& [name, t] : tally) all &= t.second == 0;
  if (s.json_mode) {
    json checks = json::object();
    for (const auto& [name, t] : tally) checks[name] = {{"passed", t.first}, {"failed", t.second}};
    std::cout << json{{"dim", dim}, {"samples", samples}, {"seed", s.seed}, {"checks", checks}, {"passed", all}}
                     .dump()
              << "\n";
  } else {
    for (const auto& [name, t] : tally) {
      std::cout << name << " " << t.first << "/" << (t.first + t.second) << "\n";
    }
    std::cout << (all ? "PASS" : "FAIL") << "\n";
  }
  return all ? kOk : kAudit;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robustness of coherence toolkit"};
  app.require_subcommand(1);
  Settings s;
  if (const char* env = std::getenv("ROC_SEED")) {
    try {
      s.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "ROC_SEED must be a non-negative integer\n";
      return kBadInput;
    }
  }
  app.add_flag("--json", s.json_mode, "Machine-readable output with full precision");
  app.add_option("--tol", s.tol, "Solver tolerance (floor 1e-10)")->check(CLI::Range(1e-10, 1e-2));

  std::string a, b, out_path;
  bool certificate = false, fast_only = false;
  int steps = 10, dim = 3, samples = 20;
  std::uint64_t seed_opt = 0;

  auto* roc = app.add_subcommand("roc", "Robustness of coherence of a state");
  roc->add_option("state", a)->required();
  roc->add_flag("--certificate", certificate, "Also print the witness and pseudomixture");
  roc->add_flag("--fast-path-only", fast_only, "Only try the phase-alignment fast path");

  auto* bounds = app.add_subcommand("bounds", "Analytic bound chain");
  bounds->add_option("state", a)->required();

  auto* wb = app.add_subcommand("witness-bound", "Lower bound from a coherence witness");
  wb->add_option("state", a)->required();
  wb->add_option("witness", b)->required();

  auto* wfd = app.add_subcommand("witness-from-data", "Best witness built from measured observables");
  wfd->add_option("dataset", a)->required();

  auto* mrd = app.add_subcommand("min-roc-from-data", "Smallest robustness compatible with the data");
  mrd->add_option("dataset", a)->required();

  auto* game = app.add_subcommand("game", "Success probability and advantage in a discrimination game");
  game->add_option("game", a)->required();
  game->add_option("state", b)->required();

  auto* teo = app.add_subcommand("verify-teo", "Check the phase-discrimination characterization");
  teo->add_option("state", a)->required();

  auto* sweep = app.add_subcommand("sweep-qubit", "Robustness over a Bloch-ball grid as CSV");
  sweep->add_option("--steps", steps, "Grid points per axis minus one")->check(CLI::PositiveNumber);
  sweep->add_option("--out", out_path, "Output CSV file (stdout when omitted)");

  auto* audit = app.add_subcommand("audit", "Invariant suite on random states");
  audit->add_option("--dim", dim)->check(CLI::Range(2, 64));
  audit->add_option("--samples", samples)->check(CLI::PositiveNumber);
  auto* seed_flag = audit->add_option("--seed", seed_opt, "Overrides ROC_SEED");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kBadInput;
  }
  if (*seed_flag) s.seed = seed_opt;

  try {
    if (*roc) return cmd_roc(s, a, certificate, fast_only);
    if (*bounds) return cmd_bounds(s, a);
    if (*wb) return cmd_witness_bound(s, a, b);
    if (*wfd) return cmd_witness_from_data(s, a);
    if (*mrd) return cmd_min_roc_from_data(s, a);
    if (*game) return cmd_game(s, a, b);
    if (*teo) return cmd_verify_teo(s, a);
    if (*sweep) return cmd_sweep(s, steps, out_path);
    if (*audit) return cmd_audit(s, dim, samples);
  } catch (const InfeasibleData& e) {
    std::cerr << "infeasible data: " << e.what() << "\n";
    return kInfeasible;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolver;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kOk;
}
