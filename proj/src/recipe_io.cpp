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

#include "unopt/recipe_io.hpp"

#include <string>

#include "unopt/error.hpp"

namespace unopt {
namespace {

Json gates_to_json(const std::vector<Gate>& gates) {
  Json out = Json::array();
  for (const Gate& g : gates) out.push_back(gate_to_json(g));
  return out;
}

std::vector<Gate> gates_from_json(const Json& j) {
  std::vector<Gate> out;
  for (const Json& g : j) out.push_back(gate_from_json(g));
  return out;
}

Json step_to_json(const ErStep& s) {
  Json synth = Json::array();
  for (const SynthesisRecord& r : s.synthesis_map) {
    synth.push_back(Json{{"members", r.members}, {"gate", gate_to_json(r.merged)}});
  }
  return Json{{"pair", pair_to_json(s.pair)},
              {"inserted_a", matrix_to_json(s.inserted_a)},
              {"a_tilde", matrix_to_json(s.a_tilde)},
              {"decomposition", gates_to_json(s.decomposition_gates)},
              {"window_before", gates_to_json(s.window_before)},
              {"synthesis", std::move(synth)},
              {"pre_count", s.pre_count},
              {"post_count", s.post_count}};
}

ErStep step_from_json(const Json& j) {
  ErStep s;
  s.pair = pair_from_json(j.at("pair"));
  s.inserted_a = matrix_from_json(j.at("inserted_a"));
  s.a_tilde = matrix_from_json(j.at("a_tilde"));
  s.decomposition_gates = gates_from_json(j.at("decomposition"));
  s.window_before = gates_from_json(j.at("window_before"));
  for (const Json& r : j.at("synthesis")) {
    s.synthesis_map.push_back(SynthesisRecord{r.at("members").get<std::vector<std::size_t>>(),
                                              gate_from_json(r.at("gate"))});
  }
  s.pre_count = j.at("pre_count").get<std::size_t>();
  s.post_count = j.at("post_count").get<std::size_t>();
  return s;
}

}  // namespace

Json pair_to_json(const Pair& p) {
  return Json{{"b1_index", p.b1_index}, {"b2_index", p.b2_index}, {"shared_qubit", p.shared_qubit},
              {"b1_other", p.b1_other}, {"b2_other", p.b2_other}};
}

Pair pair_from_json(const Json& j) {
  return Pair{j.at("b1_index").get<std::size_t>(), j.at("b2_index").get<std::size_t>(),
              j.at("shared_qubit").get<Qubit>(), j.at("b1_other").get<Qubit>(),
              j.at("b2_other").get<Qubit>()};
}

Json recipe_to_json(const Recipe& r) {
  Json steps = Json::array();
  for (const ErStep& s : r.steps) steps.push_back(step_to_json(s));
  return Json{{"format", kRecipeFormat},
              {"fingerprint", r.source_fingerprint},
              {"result_fingerprint", r.result_fingerprint},
              {"steps", std::move(steps)}};
}

Recipe recipe_from_json(const Json& j) {
  try {
    if (!j.is_object() || j.value("format", std::string{}) != kRecipeFormat) {
      throw Error(ErrorKind::Parse, std::string("recipe: expected format '") + kRecipeFormat + "'");
    }
    Recipe r;
    r.source_fingerprint = j.at("fingerprint").get<std::string>();
    r.result_fingerprint = j.value("result_fingerprint", std::string{});
    for (const Json& s : j.at("steps")) r.steps.push_back(step_from_json(s));
    return r;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("recipe: ") + e.what());
  }
}

void write_recipe(const std::filesystem::path& path, const Recipe& r) {
  write_text_file(path, recipe_to_json(r).dump() + "\n");
}

Recipe read_recipe(const std::filesystem::path& path) { return recipe_from_json(read_json_file(path)); }

}  // namespace unopt
