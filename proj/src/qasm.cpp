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

#include "unopt/qasm.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

#include "unopt/decompose.hpp"
#include "unopt/error.hpp"
#include "unopt/serialize.hpp"

namespace unopt {
namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

[[noreturn]] void parse_error(int line, const std::string& what) {
  throw Error(ErrorKind::Parse, "qasm line " + std::to_string(line) + ": " + what);
}

/// Arithmetic over numbers and `pi` with + - * / and parentheses.
class ExprParser {
 public:
  ExprParser(const std::string& text, int line) : s_(text), line_(line) {}

  double parse() {
    const double v = sum();
    skip();
    if (pos_ != s_.size()) parse_error(line_, "unexpected '" + s_.substr(pos_) + "' in expression");
    return v;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char ch) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }
  double sum() {
    double v = product();
    while (true) {
      if (eat('+')) {
        v += product();
      } else if (eat('-')) {
        v -= product();
      } else {
        return v;
      }
    }
  }
  double product() {
    double v = unary();
    while (true) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        v /= unary();
      } else {
        return v;
      }
    }
  }
  double unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return atom();
  }
  double atom() {
    skip();
    if (eat('(')) {
      const double v = sum();
      if (!eat(')')) parse_error(line_, "missing ')' in expression");
      return v;
    }
    if (s_.compare(pos_, 2, "pi") == 0) {
      pos_ += 2;
      return std::numbers::pi;
    }
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) parse_error(line_, "bad number in expression '" + s_ + "'");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

}  // namespace

std::string to_qasm(const Circuit& c) {
  std::ostringstream out;
  out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" << c.n_qubits() << "];\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Gate& g = c[i];
    if (g.label == "U3" && g.arity() == 1) {
      const std::array<double, 3> p = g.params ? *g.params : u3_angles(g.matrix);
      out << "u3(" << fmt(p[0]) << "," << fmt(p[1]) << "," << fmt(p[2]) << ") q[" << g.qubits[0]
          << "];\n";
    } else if (g.label == "CX" && g.arity() == 2) {
      out << "cx q[" << g.qubits[0] << "],q[" << g.qubits[1] << "];\n";
    } else {
      throw Error(ErrorKind::Validation, "to_qasm: gate " + std::to_string(i) + " labelled '" +
                                             g.label + "' is not U3/CX; convert first");
    }
  }
  return out.str();
}

Circuit from_qasm(const std::string& text) {
  // strip comments, keep line numbers for statements
  std::string clean;
  std::vector<int> line_of;
  int line = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text.compare(i, 2, "//") == 0) {
      while (i < text.size() && text[i] != '\n') ++i;
      if (i == text.size()) break;
    }
    clean += text[i];
    line_of.push_back(line);
    if (text[i] == '\n') ++line;
  }

  std::optional<Circuit> circuit;
  std::string reg;
  std::size_t start = 0;
  auto qubit = [&](const std::string& arg, int ln) {
    const auto open = arg.find('[');
    const auto close = arg.find(']');
    if (open == std::string::npos || close == std::string::npos || trim(arg.substr(0, open)) != reg) {
      parse_error(ln, "bad qubit argument '" + arg + "'");
    }
    const int q = std::stoi(arg.substr(open + 1, close - open - 1));
    if (q < 0 || q >= circuit->n_qubits()) parse_error(ln, "qubit index out of range");
    return q;
  };

  for (std::size_t i = 0; i < clean.size(); ++i) {
    if (clean[i] != ';') continue;
    const std::string stmt = trim(clean.substr(start, i - start));
    std::size_t first = start;
    while (first < i && std::isspace(static_cast<unsigned char>(clean[first]))) ++first;
    const int ln = line_of.empty() ? 1 : line_of[std::min(first, line_of.size() - 1)];
    start = i + 1;
    if (stmt.empty()) continue;

    std::size_t k = 0;
    while (k < stmt.size() && (std::isalnum(static_cast<unsigned char>(stmt[k])) || stmt[k] == '_')) ++k;
    const std::string op = stmt.substr(0, k);
    std::string rest = trim(stmt.substr(k));

    if (op == "OPENQASM") {
      if (rest != "2.0") parse_error(ln, "unsupported version " + rest);
      continue;
    }
    if (op == "include") continue;
    if (op == "qreg") {
      if (circuit) parse_error(ln, "only one qreg is supported");
      const auto open = rest.find('[');
      const auto close = rest.find(']');
      if (open == std::string::npos || close == std::string::npos) parse_error(ln, "bad qreg");
      reg = trim(rest.substr(0, open));
      circuit.emplace(std::stoi(rest.substr(open + 1, close - open - 1)));
      continue;
    }
    if (!circuit) parse_error(ln, "gate '" + op + "' before qreg");

    std::vector<double> params;
    if (!rest.empty() && rest.front() == '(') {
      int depth = 0;
      std::size_t e = 0;
      for (; e < rest.size(); ++e) {
        if (rest[e] == '(') ++depth;
        if (rest[e] == ')' && --depth == 0) break;
      }
      if (e == rest.size()) parse_error(ln, "unbalanced parentheses");
      for (const std::string& p : split_top(rest.substr(1, e - 1), ',')) {
        params.push_back(ExprParser(p, ln).parse());
      }
      rest = trim(rest.substr(e + 1));
    }
    const std::vector<std::string> args = split_top(rest, ',');
    auto expect = [&](std::size_t np, std::size_t nq) {
      if (params.size() != np || args.size() != nq) {
        parse_error(ln, "'" + op + "' expects " + std::to_string(np) + " parameters and " +
                            std::to_string(nq) + " qubits");
      }
    };
    if (op == "u3" || op == "U" || op == "u") {
      expect(3, 1);
      circuit->append(u3_gate(qubit(args[0], ln), params[0], params[1], params[2]));
    } else if (op == "u2") {
      expect(2, 1);
      circuit->append(u3_gate(qubit(args[0], ln), std::numbers::pi / 2, params[0], params[1]));
    } else if (op == "u1") {
      expect(1, 1);
      circuit->append(u3_gate(qubit(args[0], ln), 0.0, 0.0, params[0]));
    } else if (op == "id") {
      expect(0, 1);
      circuit->append(u3_gate(qubit(args[0], ln), 0.0, 0.0, 0.0));
    } else if (op == "cx" || op == "CX") {
      expect(0, 2);
      const int a = qubit(args[0], ln), b = qubit(args[1], ln);
      if (a == b) parse_error(ln, "cx needs two distinct qubits");
      circuit->append(cx_gate(a, b));
    } else {
      parse_error(ln, "unsupported opcode '" + op + "'");
    }
  }
  if (!trim(clean.substr(start)).empty()) parse_error(line, "missing ';' at end of input");
  if (!circuit) throw Error(ErrorKind::Parse, "qasm: no qreg declared");
  return *circuit;
}

void export_qasm(const Circuit& c, const std::filesystem::path& path) {
  write_text_file(path, to_qasm(c));
}

Circuit import_qasm(const std::filesystem::path& path) {
  try {
    return from_qasm(read_text_file(path));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Parse) throw;
    throw Error(ErrorKind::Parse, path.string() + ": " + e.what());
  }
}

}  // namespace unopt
