#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "roc/games.hpp"
#include "roc/witness.hpp"
#include "support.hpp"

using namespace roc;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" + std::string(ROC_CLI) + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Run run_stderr(const std::string& args) {
  const std::string cmd = "'" + std::string(ROC_CLI) + "' " + args + " 2>&1 >/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "roc_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string state_file(const std::string& name, const DensityMatrix& rho) {
  return write_temp(name, matrix_to_json(rho.matrix()).dump());
}

}  // namespace

TEST_CASE("roc on the maximally coherent ququart") {
  const std::string path = write_temp("max4.json", test::fixture("max_coherent_d4.json")["input"].dump());
  const Run r = run("roc " + path);
  CHECK(r.code == 0);
  CHECK(r.out == "3.000000\n");

  const Run c = run("roc --certificate " + path);
  CHECK(c.code == 0);
  CHECK(c.out.rfind("3.000000\n", 0) == 0);
  CHECK(c.out.find("witness:") != std::string::npos);

  const Run j = run("--json roc " + path);
  CHECK(json::parse(j.out)["value"].get<double>() == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("fast-path-only reports when it does not apply") {
  ComplexMatrix m = ComplexMatrix::Identity(3, 3) / 3.0;
  m(0, 1) = 0.1;
  m(1, 2) = 0.1;
  m(0, 2) = Complex(0.0, 0.1);
  m(1, 0) = std::conj(m(0, 1));
  m(2, 1) = std::conj(m(1, 2));
  m(2, 0) = std::conj(m(0, 2));
  const Run r = run("roc --fast-path-only " + state_file("frustrated.json", DensityMatrix(m)));
  CHECK(r.code == 0);
  CHECK(r.out == "fast path not applicable\n");
}

TEST_CASE("bounds prints the chain") {
  const Run r = run("bounds " + state_file("bounds.json", random_state(3, 2, 4)));
  CHECK(r.code == 0);
  for (const char* key : {"exact", "l1_upper", "l1_lower", "faithful_1", "faithful_2", "faithful_3"})
    CHECK(r.out.find(key) != std::string::npos);
  CHECK(r.out.find("violation") == std::string::npos);
}

TEST_CASE("sweep-qubit CSV") {
  const std::string out = (fs::temp_directory_path() / "roc_cli_test" / "sweep.csv").string();
  fs::create_directories(fs::path(out).parent_path());
  const Run r = run("sweep-qubit --steps 10 --out " + out);
  CHECK(r.code == 0);
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "r1,r2,r3,roc,l1");
  bool found = false;
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    if (line.rfind("0.600000,0.000000,0.200000,", 0) == 0) {
      CHECK(line == "0.600000,0.000000,0.200000,0.600000,0.600000");
      found = true;
    }
  }
  CHECK(found);
  CHECK(rows > 0);
}

TEST_CASE("verify-teo on a diagonal state") {
  RealVector p(3);
  p << 0.2, 0.3, 0.5;
  const Run r = run("verify-teo " + state_file("diag.json", DensityMatrix::diagonal(p)));
  CHECK(r.code == 0);
  CHECK(r.out.find("ratio 1.000000") != std::string::npos);
  CHECK(r.out.find("holds") != std::string::npos);
}

TEST_CASE("game subcommand") {
  const std::string g = write_temp("game.json", game_to_json(Game(canonical_game(2))).dump());
  const Run r = run("--json game " + g + " " + state_file("plus.json", DensityMatrix(maximally_coherent(2))));
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["p_succ"].get<double>() == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(j["ratio"].get<double>() == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("data subcommands") {
  const std::string path = write_temp("xplus.json", test::fixture("witness_x_plus.json")["input"].dump());
  const Run w = run("witness-from-data " + path);
  CHECK(w.code == 0);
  CHECK(w.out.rfind("bound 1.000000\n", 0) == 0);
  const Run m = run("min-roc-from-data " + path);
  CHECK(m.code == 0);
  CHECK(m.out == "1.000000\n");
}

TEST_CASE("exit codes") {
  const std::string bad_json = write_temp("broken.json", "{\"dim\": 2,\n \"re\": [[1, 0], [0, 0]");
  const Run broken = run_stderr("roc " + bad_json);
  CHECK(broken.code == 1);
  CHECK(broken.out.find("line 2") != std::string::npos);
  CHECK(broken.out.find("column") != std::string::npos);

  CHECK(run("roc /nonexistent/state.json").code == 1);
  CHECK(run("--tol 1e-12 roc " + bad_json).code == 1);
  CHECK(run("").code == 1);

  const std::string plus = state_file("plus2.json", DensityMatrix(maximally_coherent(2)));
  const std::string big = write_temp("bigw.json", matrix_to_json(ComplexMatrix::Identity(2, 2) * 2.0).dump());
  CHECK(run("witness-bound " + plus + " " + big).code == 3);

  const WitnessDataset bad{2, {HermitianMatrix(test::pauli_x())}, {2.0}, {}};
  const std::string data = write_temp("bad_data.json", dataset_to_json(bad).dump());
  CHECK(run("min-roc-from-data " + data).code == 4);
  CHECK(run("witness-from-data " + data).code == 4);
}

TEST_CASE("audit is seeded and byte stable") {
  const Run a = run("audit --dim 3 --samples 4", "ROC_SEED=5");
  const Run b = run("audit --dim 3 --samples 4", "ROC_SEED=5");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("PASS") != std::string::npos);

  const Run j = run("--json audit --dim 3 --samples 3 --seed 9", "ROC_SEED=5");
  const json r = json::parse(j.out);
  CHECK(r["seed"] == 9);
  CHECK(r["passed"] == true);
  CHECK(run("audit --dim 2 --samples 1", "ROC_SEED=abc").code == 1);
}

TEST_CASE("verify-teo output is byte stable") {
  const std::string s = state_file("teo.json", random_state(3, 3, 12));
  const Run a = run("--json verify-teo " + s, "ROC_SEED=3");
  const Run b = run("--json verify-teo " + s, "ROC_SEED=3");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}
