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

#include <filesystem>
#include <string>

#include "unopt/circuit.hpp"

namespace unopt {

/// OpenQASM 2.0 text with u3/cx statements. Every gate must be labelled
/// "U3" (arity 1) or "CX" (arity 2).
std::string to_qasm(const Circuit& c);

/// Parses u3/cx text, plus u1/u2/id read as U3 and U/CX spellings.
/// Throws Parse naming the opcode and line on anything else.
Circuit from_qasm(const std::string& text);

void export_qasm(const Circuit& c, const std::filesystem::path& path);
Circuit import_qasm(const std::filesystem::path& path);

}  // namespace unopt
