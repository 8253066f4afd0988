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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "unopt/circuit.hpp"
#include "unopt/serialize.hpp"
#include "unopt/unoptimize.hpp"

namespace unopt {

struct BenchRecord {
  std::string id;
  int n = 0;
  int sample = 0;
  std::uint64_t seed = 0;
  PairSelection method = PairSelection::Random;
  int k = 0;
  int d_original = 0;
  int d_unopt = 0;
  std::optional<int> d_opt;
  int d3_original = 0;
  int d3_unopt = 0;
  double r_unopt = 0.0;
  std::optional<double> r_opt;
  double r3_unopt = 0.0;
  /// Exact fidelity of (u, v) when the run checked this sample.
  std::optional<double> fidelity;
};

/// `{n}_{sample}`, the key shared with the harness manifest.
std::string record_id(int n, int sample);

/// Depths of u and v after conversion to {U3, CX}, three-qubit merged depths
/// of the raw circuits, and their ratios. Throws on an empty circuit.
BenchRecord compute_metrics(const Circuit& u, const Circuit& v);

struct BenchConfig {
  std::vector<int> n_range{4, 5, 6, 7, 8, 9, 10, 11};
  int samples = 30;
  PairSelection method = PairSelection::Random;
  std::optional<int> k;
  Seed base_seed{0};
  /// Output directory; nothing is written when empty.
  std::filesystem::path out_dir;
  /// Fraction of samples whose (u, v) fidelity is checked exactly.
  double check_fraction = 1.0;
  int check_max_qubits = 10;
  bool save_recipes = false;
};

/// One sample: random circuit of depth n, unoptimized with k steps.
struct BenchSample {
  Circuit u;
  Unoptimized result;
  BenchRecord record;
};

BenchSample run_sample(int n, int sample, const BenchConfig& config);

std::vector<BenchRecord> run_benchmark(const BenchConfig& config);

struct SummaryRow {
  int n = 0;
  int count = 0;
  double r_unopt_mean = 0.0, r_unopt_std = 0.0;
  double r3_unopt_mean = 0.0, r3_unopt_std = 0.0;
  int r_opt_count = 0;
  double r_opt_mean = 0.0, r_opt_std = 0.0;
};

/// Per-n mean and sample standard deviation, n ascending.
std::vector<SummaryRow> summarize(const std::vector<BenchRecord>& records);

std::string records_to_csv(const std::vector<BenchRecord>& records);
Json record_to_json(const BenchRecord& r);
BenchRecord record_from_json(const Json& j);
Json records_to_json(const std::vector<BenchRecord>& records);
std::vector<BenchRecord> records_from_json(const Json& j);
Json summary_to_json(const std::vector<SummaryRow>& rows);

/// Writes records.csv, records.json and summary.json into `dir`.
void write_run_outputs(const std::filesystem::path& dir, const std::vector<BenchRecord>& records,
                       const Json& extra = Json::object());

inline constexpr const char* kManifestFormat = "unopt-manifest/1";

struct MergeOutcome {
  std::vector<BenchRecord> records;
  std::vector<std::string> warnings;
};

/// Fills d_opt and r_opt from harness output keyed
/// `{record_id: {compiler: {d_opt, wall_time, versions}}}`.
MergeOutcome merge_harness_results(std::vector<BenchRecord> records, const Json& harness,
                                   const std::string& compiler);

}  // namespace unopt
