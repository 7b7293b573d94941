// Copyright 2026 The mrcuts Authors
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


// mrcuts: generate instances, run solve matrices and summarize results.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mrcuts/bb_solver.hpp"
#include "mrcuts/bench.hpp"
#include "mrcuts/generators.hpp"
#include "mrcuts/instance.hpp"

namespace fs = std::filesystem;
using namespace mrcuts;

namespace {

std::vector<std::uint64_t> parse_seeds(const std::string& spec) {
  std::vector<std::uint64_t> seeds;
  std::stringstream parts(spec);
  std::string part;
  while (std::getline(parts, part, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      seeds.push_back(std::stoull(part));
      continue;
    }
    const std::uint64_t lo = std::stoull(part.substr(0, dots));
    const std::uint64_t hi = std::stoull(part.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("empty seed range '" + part + "'");
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
  }
  if (seeds.empty()) throw std::invalid_argument("no seeds given");
  return seeds;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

struct GenerateArgs {
  std::string family;
  int n = 0;
  double eps = 0.05;
  double kappa = 0.2;
  double rho = 1.0;
  std::string seeds = "1";
  std::string out = ".";
};

int run_generate(const GenerateArgs& args) {
  const Family family = parse_family(args.family);
  const auto seeds = parse_seeds(args.seeds);
  fs::create_directories(args.out);
  std::string manifest;
  for (std::uint64_t seed : seeds) {
    Instance inst;
    double param = args.eps;
    switch (family) {
      case Family::kFixedCharge:
        inst = gen_fixed_charge(args.n, args.eps, seed);
        break;
      case Family::kCardinality:
        inst = gen_cardinality(args.n, args.kappa, args.eps, seed);
        param = args.kappa;
        break;
      case Family::kCorrelated:
        inst = gen_correlated(args.n, args.kappa, args.rho, args.eps, seed);
        param = args.rho;
        break;
    }
    const std::string name = instance_file_name(family, args.n, param, seed);
    const std::string text = write_instance(inst);
    write_file(fs::path(args.out) / name, text);
    manifest += sha256_hex(text) + "  " + name + "\n";
  }
  write_file(fs::path(args.out) / "manifest.sha256", manifest);
  std::cout << manifest;
  return 0;
}

struct SolveArgs {
  std::vector<std::string> files;
  std::string mode = "both";
  double time_limit_s = -1.0;
  std::string config;
  std::string out;
  int jobs = 1;
};

int run_solve(const SolveArgs& args) {
  SolverConfig cfg;
  if (!args.config.empty()) cfg = parse_solver_config(read_file(args.config));
  if (args.time_limit_s > 0.0) cfg.time_limit_s = args.time_limit_s;
  const BenchOutcome outcome = run_matrix(args.files, parse_mode(args.mode), cfg, args.jobs);
  const std::string csv = write_csv(outcome.rows);
  const std::string summary = markdown_summary(outcome.rows);
  std::cout << csv << '\n' << summary;
  if (!args.out.empty()) {
    fs::create_directories(args.out);
    write_file(fs::path(args.out) / "results.csv", csv);
    write_file(fs::path(args.out) / "summary.md", summary);
  }
  for (const auto& e : outcome.errors) std::cerr << "error: " << e << '\n';
  return outcome.errors.empty() ? 0 : 1;
}

int run_summarize(const std::string& csv_path, const std::string& out) {
  const auto rows = read_csv(read_file(csv_path));
  const std::string summary = markdown_summary(rows);
  std::cout << summary;
  if (!out.empty()) {
    fs::create_directories(out);
    write_file(fs::path(out) / "summary.md", summary);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cuts and branch and bound for mean-risk problems with indicators"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write random instances");
  generate->add_option("--family", gen.family, "fixed-charge | cardinality | correlated")
      ->required()
      ->check(CLI::IsMember({"fixed-charge", "cardinality", "correlated"}));
  generate->add_option("--n", gen.n, "Number of variables")->required()->check(CLI::PositiveNumber);
  generate->add_option("--eps", gen.eps, "Risk level epsilon")->check(CLI::Range(0.0, 1.0));
  generate->add_option("--kappa", gen.kappa, "Cardinality fraction")->check(CLI::Range(0.0, 1.0));
  generate->add_option("--rho", gen.rho, "Correlation scale")->check(CLI::PositiveNumber);
  generate->add_option("--seeds", gen.seeds, "Seeds, e.g. 1..5 or 1,3,7");
  generate->add_option("--out", gen.out, "Output directory");

  SolveArgs sol;
  auto* solve_cmd = app.add_subcommand("solve", "Solve instance files and report CSV");
  solve_cmd->add_option("files", sol.files, "Instance files")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--mode", sol.mode, "default | cuts | both")
      ->check(CLI::IsMember({"default", "cuts", "both"}));
  solve_cmd->add_option("--time-limit-s", sol.time_limit_s, "Per-solve time limit")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--config", sol.config, "Solver config JSON")->check(CLI::ExistingFile);
  solve_cmd->add_option("--out", sol.out, "Directory for results.csv and summary.md");
  solve_cmd->add_option("--jobs", sol.jobs, "Concurrent solves")->check(CLI::PositiveNumber);

  std::string csv_path, sum_out;
  auto* summarize = app.add_subcommand("summarize", "Markdown averages of a results CSV");
  summarize->add_option("csv", csv_path, "Results CSV")->required()->check(CLI::ExistingFile);
  summarize->add_option("--out", sum_out, "Directory for summary.md");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) return run_generate(gen);
    if (*solve_cmd) return run_solve(sol);
    if (*summarize) return run_summarize(csv_path, sum_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
