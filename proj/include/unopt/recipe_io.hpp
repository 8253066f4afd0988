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

#include "unopt/serialize.hpp"
#include "unopt/unoptimize.hpp"

namespace unopt {

Json pair_to_json(const Pair& p);
Pair pair_from_json(const Json& j);

Json recipe_to_json(const Recipe& r);
/// Throws Parse on a missing or unknown format tag.
Recipe recipe_from_json(const Json& j);

void write_recipe(const std::filesystem::path& path, const Recipe& r);
Recipe read_recipe(const std::filesystem::path& path);

}  // namespace unopt
