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

#include "unopt/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "unopt/error.hpp"

namespace unopt {

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rows.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    }
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, "matrix must be a JSON array");
  const auto count = j.size();
  const auto dim = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(count))));
  if (dim == 0 || static_cast<std::size_t>(dim * dim) != count) {
    throw Error(ErrorKind::Parse, "matrix entry count " + std::to_string(count) +
                                      " is not a perfect square");
  }
  ComplexMatrix m(dim, dim);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c, ++k) {
      const Json& e = j[k];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw Error(ErrorKind::Parse, "matrix entries must be [re, im] pairs");
      }
      m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

Json gate_to_json(const Gate& g) {
  Json j;
  j["qubits"] = g.qubits;
  j["label"] = g.label;
  j["matrix"] = matrix_to_json(g.matrix);
  if (g.params) j["params"] = *g.params;
  return j;
}

Gate gate_from_json(const Json& j) {
  try {
    auto qubits = j.at("qubits").get<std::vector<Qubit>>();
    auto label = j.value("label", std::string{});
    Gate g = make_gate(std::move(qubits), matrix_from_json(j.at("matrix")), std::move(label));
    if (j.contains("params")) g.params = j.at("params").get<std::array<double, 3>>();
    return g;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("gate: ") + e.what());
  }
}

Json circuit_to_json(const Circuit& c) {
  Json gates = Json::array();
  for (const Gate& g : c.gates()) gates.push_back(gate_to_json(g));
  return Json{{"n_qubits", c.n_qubits()}, {"gates", std::move(gates)}};
}

Circuit circuit_from_json(const Json& j) {
  try {
    Circuit c(j.at("n_qubits").get<int>());
    for (const Json& g : j.at("gates")) c.append(gate_from_json(g));
    return c;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("circuit: ") + e.what());
  }
}

std::string fingerprint(const Circuit& c) {
  const std::string text = circuit_to_json(c).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::Parse, path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

}  // namespace unopt
