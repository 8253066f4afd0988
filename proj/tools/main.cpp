// Copyright 2026 The Unopt Authors
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

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "unopt/bench.hpp"
#include "unopt/decompose.hpp"
#include "unopt/error.hpp"
#include "unopt/qasm.hpp"
#include "unopt/recipe_io.hpp"
#include "unopt/serialize.hpp"
#include "unopt/simulate.hpp"
#include "unopt/synthesis.hpp"
#include "unopt/unoptimize.hpp"

namespace fs = std::filesystem;
using namespace unopt;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

bool is_qasm(const fs::path& p) { return p.extension() == ".qasm"; }

Circuit load_circuit(const fs::path& p) {
  return is_qasm(p) ? import_qasm(p) : circuit_from_json(read_json_file(p));
}

/// Writes JSON or QASM by extension; "-" or empty prints JSON to stdout.
void save_circuit(const Circuit& c, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << circuit_to_json(c).dump() << '\n';
  } else if (is_qasm(out)) {
    export_qasm(to_u3cx_basis(c), out);
  } else {
    write_text_file(out, circuit_to_json(c).dump() + "\n");
  }
}

Json verdict_json(const EquivalenceVerdict& v) {
  Json j = {{"verdict", to_string(v.verdict)}, {"fidelity", v.fidelity_estimate}};
  if (v.shots) j["shots"] = *v.shots;
  if (v.std_error) j["stderr"] = *v.std_error;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivalence-preserving quantum circuit unoptimization and compiler benchmarking"};
  app.require_subcommand(1);
  int exit_code = kExitOk;

  // generate
  auto* gen = app.add_subcommand("generate", "Random two-qubit-gate circuit of a given depth");
  int gen_n = 4;
  std::optional<int> gen_depth;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("-n,--qubits", gen_n, "Number of qubits")->required()->check(CLI::Range(2, 30));
  gen->add_option("--depth", gen_depth, "Target depth (default: number of qubits)");
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--out", gen_out, "Output file (.json or .qasm); stdout when omitted");
  gen->callback([&] {
    Rng rng(Seed{gen_seed});
    save_circuit(random_circuit(gen_n, gen_depth.value_or(gen_n), rng), gen_out);
  });

  // unoptimize
  auto* un = app.add_subcommand("unoptimize", "Apply k elementary recipe steps");
  std::string un_in, un_out, un_recipe, un_method = "random";
  std::optional<int> un_k;
  std::uint64_t un_seed = 0;
  un->add_option("input", un_in, "Circuit (.json or .qasm)")->required()->check(CLI::ExistingFile);
  un->add_option("--method", un_method, "Pair selection")->check(CLI::IsMember({"random", "concat"}));
  un->add_option("--k", un_k, "Number of steps (default: n^2)")->check(CLI::NonNegativeNumber);
  un->add_option("--seed", un_seed, "RNG seed");
  un->add_option("--out", un_out, "Unoptimized circuit (.json or .qasm); stdout when omitted");
  un->add_option("--recipe", un_recipe, "Write the recipe JSON here");
  un->callback([&] {
    Rng rng(Seed{un_seed});
    const Circuit u = load_circuit(un_in);
    const Unoptimized res = unoptimize(u, parse_pair_selection(un_method), un_k, rng);
    save_circuit(res.v, un_out);
    if (!un_recipe.empty()) write_recipe(un_recipe, res.recipe);
  });

  // verify
  auto* ver = app.add_subcommand("verify", "Decide whether two circuits are equivalent on |0...0>");
  std::string ver_u, ver_v, ver_recipe, ver_mode = "exact";
  double ver_gap = 0.05;
  std::optional<std::uint64_t> ver_shots;
  std::uint64_t ver_seed = 0;
  ver->add_option("u", ver_u, "Original circuit")->required()->check(CLI::ExistingFile);
  ver->add_option("v", ver_v, "Candidate circuit")->required()->check(CLI::ExistingFile);
  ver->add_option("--recipe", ver_recipe, "Also check this recipe as a witness (JSON circuits only)")
      ->check(CLI::ExistingFile);
  ver->add_option("--mode", ver_mode, "exact or sampled")->check(CLI::IsMember({"exact", "sampled"}));
  ver->add_option("--gap-eps", ver_gap, "Promise gap")->check(CLI::Range(0.0, 0.5));
  ver->add_option("--shots", ver_shots, "Shots in sampled mode (default: ceil(16/gap^2))")
      ->check(CLI::PositiveNumber);
  ver->add_option("--seed", ver_seed, "Sampling seed");
  ver->callback([&] {
    const Circuit u = load_circuit(ver_u);
    const Circuit v = load_circuit(ver_v);
    const EquivalenceVerdict verdict =
        decide_equivalence(u, v, ver_gap, parse_verify_mode(ver_mode), ver_shots, Seed{ver_seed});
    Json out = verdict_json(verdict);
    bool ok = verdict.verdict != Verdict::No;
    if (!ver_recipe.empty()) {
      const WitnessCheck w = verify_recipe_witness(u, v, read_recipe(ver_recipe));
      out["witness"] = {{"valid", w.valid}, {"reason", to_string(w.reason)}, {"detail", w.detail}};
      ok = ok && w.valid;
    }
    std::cout << out.dump() << '\n';
    if (!ok) exit_code = kExitNo;
  });

  // convert
  auto* conv = app.add_subcommand("convert", "Rewrite a circuit into u3/cx QASM");
  std::string conv_in, conv_out;
  conv->add_option("input", conv_in, "Circuit (.json or .qasm)")->required()->check(CLI::ExistingFile);
  conv->add_option("--out", conv_out, "Output .qasm; stdout when omitted");
  conv->callback([&] {
    const Circuit c = to_u3cx_basis(load_circuit(conv_in));
    if (conv_out.empty()) {
      std::cout << to_qasm(c);
    } else {
      export_qasm(c, conv_out);
    }
  });

  // merge3
  auto* m3 = app.add_subcommand("merge3", "Depth after greedy three-qubit merging");
  std::string m3_in;
  m3->add_option("input", m3_in, "Circuit (.json or .qasm)")->required()->check(CLI::ExistingFile);
  m3->callback([&] {
    const Circuit c = load_circuit(m3_in);
    std::cout << Json{{"depth", depth(c)}, {"merged_depth3", merged_depth3(c)}}.dump() << '\n';
  });

  // bench
  auto* bench = app.add_subcommand("bench", "Generate, unoptimize and measure a batch of circuits");
  BenchConfig cfg;
  int n_min = 4, n_max = 11;
  std::string bench_method = "random", bench_out;
  std::uint64_t bench_seed = 0;
  bench->add_option("--n-min", n_min, "Smallest qubit count")->check(CLI::Range(3, 24));
  bench->add_option("--n-max", n_max, "Largest qubit count")->check(CLI::Range(3, 24));
  bench->add_option("--samples", cfg.samples, "Samples per qubit count")->check(CLI::PositiveNumber);
  bench->add_option("--method", bench_method, "Pair selection")
      ->check(CLI::IsMember({"random", "concat"}));
  bench->add_option("--k", cfg.k, "Steps per circuit (default: n^2)")->check(CLI::NonNegativeNumber);
  bench->add_option("--seed", bench_seed, "Base seed");
  bench->add_option("--check-fraction", cfg.check_fraction, "Fraction of samples fidelity-checked")
      ->check(CLI::Range(0.0, 1.0));
  bench->add_flag("--save-recipes", cfg.save_recipes, "Also write circuits and recipes as JSON");
  bench->add_option("--out", bench_out, "Run directory")->required();
  bench->callback([&] {
    if (n_min > n_max) throw Error(ErrorKind::Usage, "--n-min must not exceed --n-max");
    cfg.n_range.clear();
    for (int n = n_min; n <= n_max; ++n) cfg.n_range.push_back(n);
    cfg.method = parse_pair_selection(bench_method);
    cfg.base_seed = Seed{bench_seed};
    cfg.out_dir = bench_out;
    const auto records = run_benchmark(cfg);
    std::cout << summary_to_json(summarize(records)).dump(2) << '\n';
  });

  // merge-results
  auto* mr = app.add_subcommand("merge-results", "Attach harness depths to a bench run");
  std::string mr_run, mr_harness, mr_compiler, mr_out;
  mr->add_option("run", mr_run, "Bench run directory")->required()->check(CLI::ExistingDirectory);
  mr->add_option("--harness", mr_harness, "Harness results JSON")->required()->check(CLI::ExistingFile);
  mr->add_option("--compiler", mr_compiler, "Compiler key, e.g. pytket-fullpeephole")->required();
  mr->add_option("--out", mr_out, "Output directory (default: <run>/<compiler>)");
  mr->callback([&] {
    auto records = records_from_json(read_json_file(fs::path(mr_run) / "records.json"));
    const MergeOutcome m =
        merge_harness_results(std::move(records), read_json_file(mr_harness), mr_compiler);
    for (const std::string& w : m.warnings) std::cerr << "warning: " << w << '\n';
    const fs::path out = mr_out.empty() ? fs::path(mr_run) / mr_compiler : fs::path(mr_out);
    write_run_outputs(out, m.records, Json{{"compiler", mr_compiler}});
    std::cout << summary_to_json(summarize(m.records)).dump(2) << '\n';
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return e.kind() == ErrorKind::Usage ? kExitUsage : kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return exit_code;
}
