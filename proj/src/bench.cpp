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

#include "unopt/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <map>
#include <sstream>

#include "unopt/decompose.hpp"
#include "unopt/error.hpp"
#include "unopt/qasm.hpp"
#include "unopt/recipe_io.hpp"
#include "unopt/simulate.hpp"
#include "unopt/synthesis.hpp"

namespace unopt {
namespace {

constexpr double kBenchFidelityTol = 1e-9;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void mean_std(const std::vector<double>& xs, double& mean, double& sd) {
  mean = sd = 0.0;
  if (xs.empty()) return;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

bool selected_for_check(Seed seed, double fraction) {
  if (fraction >= 1.0) return true;
  if (fraction <= 0.0) return false;
  std::uint64_t s = seed.value ^ 0x9e3779b97f4a7c15ULL;
  return static_cast<double>(splitmix64(s) >> 11) * 0x1.0p-53 < fraction;
}

}  // namespace

std::string record_id(int n, int sample) {
  return std::to_string(n) + "_" + std::to_string(sample);
}

BenchRecord compute_metrics(const Circuit& u, const Circuit& v) {
  if (u.empty() || v.empty()) {
    throw Error(ErrorKind::Validation, "compute_metrics: empty circuit, ratios undefined");
  }
  BenchRecord r;
  r.n = u.n_qubits();
  r.d_original = depth(to_u3cx_basis(u));
  r.d_unopt = depth(to_u3cx_basis(v));
  r.d3_original = merged_depth3(u);
  r.d3_unopt = merged_depth3(v);
  r.r_unopt = static_cast<double>(r.d_unopt) / r.d_original;
  r.r3_unopt = static_cast<double>(r.d3_unopt) / r.d3_original;
  return r;
}

BenchSample run_sample(int n, int sample, const BenchConfig& config) {
  const Seed seed = derive_seed(config.base_seed, static_cast<std::uint64_t>(n),
                                static_cast<std::uint64_t>(sample));
  Rng rng(seed);
  // a layout without any pair admits no step; draw again
  Circuit u = random_circuit(n, n, rng);
  for (int attempt = 1; find_pairs(u).empty(); ++attempt) {
    if (attempt == kPairRetryBudget) {
      throw Error(ErrorKind::Resource, "bench: no random circuit with a valid pair for n = " +
                                           std::to_string(n));
    }
    u = random_circuit(n, n, rng);
  }
  Unoptimized res = unoptimize(u, config.method, config.k, rng);
  BenchRecord rec = compute_metrics(u, res.v);
  rec.id = record_id(n, sample);
  rec.sample = sample;
  rec.seed = seed.value;
  rec.method = config.method;
  rec.k = static_cast<int>(res.recipe.steps.size());
  if (n <= config.check_max_qubits && selected_for_check(seed, config.check_fraction)) {
    rec.fidelity = fidelity_exact(u, res.v);
    if (*rec.fidelity < 1.0 - kBenchFidelityTol) {
      throw Error(ErrorKind::Numerical, "bench: sample " + rec.id + " lost equivalence, F = " +
                                            fmt(*rec.fidelity));
    }
  }
  return {std::move(u), std::move(res), std::move(rec)};
}

std::vector<BenchRecord> run_benchmark(const BenchConfig& config) {
  if (config.samples < 1) throw Error(ErrorKind::Validation, "run_benchmark: samples must be >= 1");
  std::vector<BenchRecord> records;
  Json manifest_records = Json::object();
  const bool write = !config.out_dir.empty();
  for (int n : config.n_range) {
    for (int s = 0; s < config.samples; ++s) {
      BenchSample bs = run_sample(n, s, config);
      if (write) {
        const std::string orig = bs.record.id + "_orig.qasm";
        const std::string unopt = bs.record.id + "_unopt.qasm";
        export_qasm(to_u3cx_basis(bs.u), config.out_dir / orig);
        export_qasm(to_u3cx_basis(bs.result.v), config.out_dir / unopt);
        Json entry = {{"n", n},
                      {"sample", s},
                      {"seed", bs.record.seed},
                      {"original", orig},
                      {"unoptimized", unopt},
                      {"d_original", bs.record.d_original},
                      {"d_unopt", bs.record.d_unopt}};
        if (config.save_recipes) {
          const std::string base = bs.record.id;
          write_text_file(config.out_dir / (base + "_orig.json"), circuit_to_json(bs.u).dump());
          write_text_file(config.out_dir / (base + "_unopt.json"),
                          circuit_to_json(bs.result.v).dump());
          write_recipe(config.out_dir / (base + "_recipe.json"), bs.result.recipe);
          entry["recipe"] = base + "_recipe.json";
        }
        manifest_records[bs.record.id] = std::move(entry);
      }
      records.push_back(std::move(bs.record));
    }
  }
  if (write) {
    const Json manifest = {{"format", kManifestFormat},
                           {"method", to_string(config.method)},
                           {"base_seed", config.base_seed.value},
                           {"records", std::move(manifest_records)}};
    write_text_file(config.out_dir / "manifest.json", manifest.dump(2) + "\n");
    write_run_outputs(config.out_dir, records,
                      Json{{"method", to_string(config.method)},
                           {"base_seed", config.base_seed.value},
                           {"samples", config.samples}});
  }
  return records;
}

std::vector<SummaryRow> summarize(const std::vector<BenchRecord>& records) {
  std::map<int, std::vector<const BenchRecord*>> by_n;
  for (const BenchRecord& r : records) by_n[r.n].push_back(&r);
  std::vector<SummaryRow> out;
  for (const auto& [n, rs] : by_n) {
    SummaryRow row;
    row.n = n;
    row.count = static_cast<int>(rs.size());
    std::vector<double> ru, r3, ro;
    for (const BenchRecord* r : rs) {
      ru.push_back(r->r_unopt);
      r3.push_back(r->r3_unopt);
      if (r->r_opt) ro.push_back(*r->r_opt);
    }
    mean_std(ru, row.r_unopt_mean, row.r_unopt_std);
    mean_std(r3, row.r3_unopt_mean, row.r3_unopt_std);
    row.r_opt_count = static_cast<int>(ro.size());
    mean_std(ro, row.r_opt_mean, row.r_opt_std);
    out.push_back(row);
  }
  return out;
}

std::string records_to_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << "id,n,sample,seed,method,k,d_original,d_unopt,d_opt,d3_original,d3_unopt,r_unopt,r_opt,"
         "r3_unopt\n";
  for (const BenchRecord& r : records) {
    out << r.id << ',' << r.n << ',' << r.sample << ',' << r.seed << ',' << to_string(r.method)
        << ',' << r.k << ',' << r.d_original << ',' << r.d_unopt << ','
        << (r.d_opt ? std::to_string(*r.d_opt) : "") << ',' << r.d3_original << ','
        << r.d3_unopt << ',' << fmt(r.r_unopt) << ',' << (r.r_opt ? fmt(*r.r_opt) : "") << ','
        << fmt(r.r3_unopt) << '\n';
  }
  return out.str();
}

Json record_to_json(const BenchRecord& r) {
  Json j = {{"id", r.id},
            {"n", r.n},
            {"sample", r.sample},
            {"seed", r.seed},
            {"method", to_string(r.method)},
            {"k", r.k},
            {"d_original", r.d_original},
            {"d_unopt", r.d_unopt},
            {"d3_original", r.d3_original},
            {"d3_unopt", r.d3_unopt},
            {"r_unopt", r.r_unopt},
            {"r3_unopt", r.r3_unopt}};
  if (r.d_opt) j["d_opt"] = *r.d_opt;
  if (r.r_opt) j["r_opt"] = *r.r_opt;
  if (r.fidelity) j["fidelity"] = *r.fidelity;
  return j;
}

BenchRecord record_from_json(const Json& j) {
  try {
    BenchRecord r;
    r.id = j.at("id").get<std::string>();
    r.n = j.at("n").get<int>();
    r.sample = j.at("sample").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.method = parse_pair_selection(j.at("method").get<std::string>());
    r.k = j.at("k").get<int>();
    r.d_original = j.at("d_original").get<int>();
    r.d_unopt = j.at("d_unopt").get<int>();
    r.d3_original = j.at("d3_original").get<int>();
    r.d3_unopt = j.at("d3_unopt").get<int>();
    r.r_unopt = j.at("r_unopt").get<double>();
    r.r3_unopt = j.at("r3_unopt").get<double>();
    if (j.contains("d_opt")) r.d_opt = j.at("d_opt").get<int>();
    if (j.contains("r_opt")) r.r_opt = j.at("r_opt").get<double>();
    if (j.contains("fidelity")) r.fidelity = j.at("fidelity").get<double>();
    return r;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("bench record: ") + e.what());
  }
}

Json records_to_json(const std::vector<BenchRecord>& records) {
  Json out = Json::array();
  for (const BenchRecord& r : records) out.push_back(record_to_json(r));
  return out;
}

std::vector<BenchRecord> records_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, "bench records must be a JSON array");
  std::vector<BenchRecord> out;
  for (const Json& r : j) out.push_back(record_from_json(r));
  return out;
}

Json summary_to_json(const std::vector<SummaryRow>& rows) {
  Json out = Json::array();
  for (const SummaryRow& r : rows) {
    Json j = {{"n", r.n},
              {"count", r.count},
              {"r_unopt_mean", r.r_unopt_mean},
              {"r_unopt_std", r.r_unopt_std},
              {"r3_unopt_mean", r.r3_unopt_mean},
              {"r3_unopt_std", r.r3_unopt_std}};
    if (r.r_opt_count > 0) {
      j["r_opt_count"] = r.r_opt_count;
      j["r_opt_mean"] = r.r_opt_mean;
      j["r_opt_std"] = r.r_opt_std;
    }
    out.push_back(std::move(j));
  }
  return out;
}

void write_run_outputs(const std::filesystem::path& dir, const std::vector<BenchRecord>& records,
                       const Json& extra) {
  write_text_file(dir / "records.csv", records_to_csv(records));
  write_text_file(dir / "records.json", records_to_json(records).dump(2) + "\n");
  Json summary = extra;
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  summary["generated_at"] = stamp;
  summary["per_n"] = summary_to_json(summarize(records));
  write_text_file(dir / "summary.json", summary.dump(2) + "\n");
}

MergeOutcome merge_harness_results(std::vector<BenchRecord> records, const Json& harness,
                                   const std::string& compiler) {
  if (!harness.is_object()) {
    throw Error(ErrorKind::Parse, "harness results must be a JSON object keyed by record id");
  }
  MergeOutcome out;
  for (BenchRecord& r : records) {
    const auto it = harness.find(r.id);
    if (it == harness.end() || !it->is_object() || !it->contains(compiler)) {
      out.warnings.push_back("record " + r.id + ": no result for " + compiler);
      r.d_opt.reset();
      r.r_opt.reset();
      continue;
    }
    const Json& entry = it->at(compiler);
    if (!entry.is_object()) throw Error(ErrorKind::Parse, "record " + r.id + ": malformed entry");
    if (!entry.contains("d_opt") || entry.at("d_opt").is_null()) {
      out.warnings.push_back("record " + r.id + ": " + compiler + " reported no d_opt");
      r.d_opt.reset();
      r.r_opt.reset();
      continue;
    }
    if (!entry.at("d_opt").is_number_integer()) {
      throw Error(ErrorKind::Parse, "record " + r.id + ": d_opt must be an integer");
    }
    r.d_opt = entry.at("d_opt").get<int>();
    r.r_opt = static_cast<double>(*r.d_opt) / r.d_original;
  }
  out.records = std::move(records);
  return out;
}

}  // namespace unopt
