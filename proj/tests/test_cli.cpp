// Copyright 2026 The qsynth authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include <algorithm>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qsynth/circuit.hpp"
#include "qsynth/resources.hpp"

#ifndef QSYNTH_CLI_PATH
#error "QSYNTH_CLI_PATH must point at the built command-line binary"
#endif

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string("\"") + QSYNTH_CLI_PATH + "\" " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.output.append(buf.data(), got);
  int status = pclose(pipe);
  r.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path work_dir() {
  fs::path dir = fs::temp_directory_path() / "qsynth_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
  fs::path p = work_dir() / name;
  std::ofstream out(p, std::ios::binary);
  out << text;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string toy_model() {
  return write_file(
      "toy.json",
      R"({"preset": {"name": "hopping_toy", "params": {"dims": 1, "L": 2, "Q": 1}}})");
}

std::string periodic_fermion_model() {
  return write_file(
      "fh_periodic.json",
      R"({"preset": {"name": "fermion_hopping", "params": {"dims": 2, "L": 3, "boundary": "periodic"}}})");
}

// Strips fields that legitimately vary between runs (output paths).
json parsed_without_paths(const std::string& line) {
  json j = json::parse(line);
  j.erase("wrote");
  return j;
}

}  // namespace

TEST_CASE("synth writes a parseable circuit file and reports its hash") {
  std::string model = toy_model();
  std::string out = (work_dir() / "step.qc").string();
  RunResult r = run_cli("synth --model " + model +
                        " --encoding jw --policy fused --epsilon 0.1 --out " +
                        out);
  REQUIRE(r.exit_code == 0);

  std::string text = slurp(out);
  std::istringstream is(text);
  qsynth::Circuit c = qsynth::Circuit::read(is);
  CHECK(c.num_qubits() == 4);
  CHECK(!c.gates().empty());

  json line = json::parse(r.output);
  CHECK(line.at("qubits") == 4);
  CHECK(line.at("circuit_hash") == qsynth::fnv1a_hex(text));
}

TEST_CASE("repeated runs are byte-identical") {
  std::string model = toy_model();
  std::string out1 = (work_dir() / "det1.qc").string();
  std::string out2 = (work_dir() / "det2.qc").string();
  std::string args = "synth --model " + model + " --epsilon 0.2 --out ";
  RunResult r1 = run_cli(args + out1);
  RunResult r2 = run_cli(args + out2);
  REQUIRE(r1.exit_code == 0);
  REQUIRE(r2.exit_code == 0);
  CHECK(slurp(out1) == slurp(out2));
  CHECK(parsed_without_paths(r1.output) == parsed_without_paths(r2.output));

  RunResult c1 = run_cli("count --model " + model + " --policy naive");
  RunResult c2 = run_cli("count --model " + model + " --policy naive");
  REQUIRE(c1.exit_code == 0);
  CHECK(c1.output == c2.output);
}

TEST_CASE("verify gates on the fused-vs-naive deviation") {
  std::string model = toy_model();
  RunResult r = run_cli("verify --model " + model + " --epsilon 0.1 --tol 1e-8");
  REQUIRE(r.exit_code == 0);
  json line = json::parse(r.output);
  CHECK(line.at("fused_vs_naive").get<double>() <= 1e-10);
  CHECK(line.at("trotter_vs_exact").get<double>() > 0.0);
  CHECK(line.at("pass") == true);
}

TEST_CASE("count embeds the circuit content hash in its metadata") {
  std::string model = toy_model();
  std::string out = (work_dir() / "hash.qc").string();
  RunResult s = run_cli("synth --model " + model + " --epsilon 0.1 --out " + out);
  REQUIRE(s.exit_code == 0);
  RunResult c = run_cli("count --model " + model + " --epsilon 0.1");
  REQUIRE(c.exit_code == 0);
  json line = json::parse(c.output);
  CHECK(line.at("meta").at("circuit_hash") == qsynth::fnv1a_hex(slurp(out)));
  CHECK(line.at("cnot").get<long long>() > 0);
  CHECK(line.at("t_estimate").get<double>() > 0.0);
}

TEST_CASE("scaling emits one JSON line per size plus a fit line") {
  RunResult r = run_cli(
      "scaling --d 2 --L 3,4,5 --family fermion --boundary periodic "
      "--policy fused --strategy pivot");
  REQUIRE(r.exit_code == 0);
  std::istringstream is(r.output);
  std::string line;
  int rows = 0;
  bool saw_fit = false;
  while (std::getline(is, line)) {
    json j = json::parse(line);
    if (j.contains("exponent")) {
      saw_fit = true;
      CHECK(j.at("exponent").get<double>() > 1.5);
    } else {
      CHECK(j.at("cnot").get<long long>() > 0);
      ++rows;
    }
  }
  CHECK(rows == 3);
  CHECK(saw_fit);
}

TEST_CASE("block-encode reports the encoding and gates on the deviation") {
  std::string model = toy_model();
  RunResult r = run_cli("block-encode --model " + model);
  REQUIRE(r.exit_code == 0);
  json line = json::parse(r.output);
  CHECK(line.at("lambda").get<double>() > 0.0);
  CHECK(line.at("verify_deviation").get<double>() <= 1e-10);
  CHECK(line.at("pass") == true);

  // An impossible tolerance flips the same run to a verification failure.
  RunResult fail = run_cli("block-encode --model " + model + " --tol 1e-300");
  CHECK(fail.exit_code == 1);
  CHECK(json::parse(fail.output).at("pass") == false);
}

TEST_CASE("vc-check passes on the reference lattice") {
  RunResult r = run_cli("vc-check --L 2 --d 2 --modes 1");
  REQUIRE(r.exit_code == 0);
  json line = json::parse(r.output);
  CHECK(line.at("symbolic_commute") == true);
  CHECK(line.at("dense_checked") == true);
  CHECK(line.at("spectrum_gap").get<double>() <= 1e-10);
}

TEST_CASE("vc with periodic boundary is rejected before any work") {
  std::string model = periodic_fermion_model();
  std::string out = (work_dir() / "never.qc").string();
  fs::remove(out);
  RunResult r = run_cli("synth --model " + model + " --encoding vc --out " + out);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("open boundary") != std::string::npos);
  CHECK(!fs::exists(out));
}

TEST_CASE("config errors exit 2 with a one-line diagnostic") {
  std::string bad = write_file(
      "bad.json",
      R"({"preset": {"name": "hopping_toy", "params": {"dims": 1, "L": 2, "Q": 1}}, "extra": 3})");
  std::string out = (work_dir() / "x.qc").string();
  RunResult r = run_cli("synth --model " + bad + " --out " + out);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("unknown field") != std::string::npos);
  CHECK(std::count(r.output.begin(), r.output.end(), '\n') == 1);

  RunResult missing = run_cli("verify --model /nonexistent/path.json");
  CHECK(missing.exit_code == 2);

  RunResult flag = run_cli("count --bogus");
  CHECK(flag.exit_code == 2);

  RunResult help = run_cli("--help");
  CHECK(help.exit_code == 0);
}

TEST_CASE("export round-trips a circuit file byte for byte") {
  std::string model = toy_model();
  std::string a = (work_dir() / "rt_a.qc").string();
  std::string b = (work_dir() / "rt_b.qc").string();
  REQUIRE(run_cli("synth --model " + model + " --out " + a).exit_code == 0);
  REQUIRE(run_cli("export --in " + a + " --out " + b).exit_code == 0);
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("oracle cap can be overridden per invocation") {
  std::string model = write_file(
      "fh22.json",
      R"({"preset": {"name": "fermion_hopping", "params": {"dims": 2, "L": 2}}})");
  RunResult r = run_cli("--oracle-limit 6 verify --model " + model +
                        " --encoding vc");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("too large") != std::string::npos);
  RunResult ok = run_cli("verify --model " + model + " --encoding vc");
  CHECK(ok.exit_code == 0);
}
