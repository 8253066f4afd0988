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
#include <string>

#include "json.hpp"

#include "unopt/circuit.hpp"
#include "unopt/matrix.hpp"

namespace unopt {

using Json = nlohmann::json;

/// Row-major list of [re, im] pairs.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json gate_to_json(const Gate& g);
Gate gate_from_json(const Json& j);

/// { "n_qubits", "gates": [ { "qubits", "label", "matrix" [, "params"] } ] }
Json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const Json& j);

/// FNV-1a 64 over the compact JSON dump, as 16 hex digits.
std::string fingerprint(const Circuit& c);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace unopt
