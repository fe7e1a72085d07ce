// Copyright 2026 The Authors.
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

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "matlift/errors.hpp"
#include "matlift/gf.hpp"
#include "matlift/group.hpp"
#include "matlift/lifts.hpp"
#include "matlift/matroid.hpp"

namespace matlift::io {

namespace detail {

// Nonempty lines with comments removed, paired with their 1-based line numbers.
inline std::vector<std::pair<int, std::vector<std::string>>> tokenize(const std::string& text) {
  std::vector<std::pair<int, std::vector<std::string>>> out;
  std::istringstream in(text);
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::vector<std::string> tokens;
    for (std::string w; words >> w;) tokens.push_back(w);
    if (!tokens.empty()) out.emplace_back(number, std::move(tokens));
  }
  return out;
}

inline long long to_int(const std::string& s, int line) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw ParseError("expected an integer, got '" + s + "'", line);
  return v;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path, 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

using Lines = std::vector<std::pair<int, std::vector<std::string>>>;

inline Matroid parse_matroid_lines(const Lines& lines, std::size_t begin, std::size_t end, Matroid::Check check) {
  if (begin >= end) throw ParseError("missing 'matroid <n> circuits' header", 0);
  const auto& [hline, header] = lines[begin];
  if (header.size() != 3 || header[0] != "matroid" || header[2] != "circuits") {
    throw ParseError("expected 'matroid <n> circuits'", hline);
  }
  const long long n = to_int(header[1], hline);
  if (n < 0 || n > kMaxElements) throw ParseError("element count must be between 0 and 64", hline);
  std::vector<Mask> circuits;
  for (std::size_t k = begin + 1; k < end; ++k) {
    const auto& [number, tokens] = lines[k];
    Mask c = 0;
    for (const std::string& t : tokens) {
      const long long e = to_int(t, number);
      if (e < 1 || e > n) throw ParseError("element " + t + " outside 1.." + std::to_string(n), number);
      if (has_element(c, static_cast<int>(e - 1))) throw ParseError("element " + t + " repeated", number);
      c |= bit(static_cast<int>(e - 1));
    }
    circuits.push_back(c);
  }
  return Matroid::from_circuits(static_cast<int>(n), std::move(circuits), check);
}

}  // namespace detail

/// .ckt: "matroid <n> circuits", then one 1-based circuit per line.
inline Matroid parse_matroid(const std::string& text, Matroid::Check check = Matroid::Check::validate) {
  const auto lines = detail::tokenize(text);
  return detail::parse_matroid_lines(lines, 0, lines.size(), check);
}

inline Matroid read_matroid(const std::string& path, Matroid::Check check = Matroid::Check::validate) {
  return parse_matroid(detail::slurp(path), check);
}

inline std::string format_circuit_line(Mask c) {
  std::string out;
  for_each_element(c, [&](int e) { out += (out.empty() ? "" : " ") + std::to_string(e + 1); });
  return out;
}

inline std::string write_matroid(const Matroid& m) {
  std::string out = "matroid " + std::to_string(m.size()) + " circuits\n";
  for (Mask c : m.circuits()) out += format_circuit_line(c) + "\n";
  return out;
}

/// .lift: a "base" line followed by a .ckt body, then an "overlay" line
/// followed by a .ckt body on the base circuits (1-based, canonical order).
inline LiftSpec parse_lift(const std::string& text) {
  const auto lines = detail::tokenize(text);
  std::size_t base = lines.size();
  std::size_t overlay = lines.size();
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const auto& tokens = lines[k].second;
    if (tokens.size() == 1 && tokens[0] == "base") base = k;
    if (tokens.size() == 1 && tokens[0] == "overlay") overlay = k;
  }
  if (base != 0) throw ParseError("a .lift file starts with a 'base' section", lines.empty() ? 0 : lines[0].first);
  if (overlay == lines.size()) throw ParseError("missing 'overlay' section", 0);
  Matroid m = detail::parse_matroid_lines(lines, base + 1, overlay, Matroid::Check::validate);
  Matroid n = detail::parse_matroid_lines(lines, overlay + 1, lines.size(), Matroid::Check::validate);
  if (static_cast<std::size_t>(n.size()) != m.circuits().size()) {
    throw ParseError("overlay has " + std::to_string(n.size()) + " elements but the base has " +
                         std::to_string(m.circuits().size()) + " circuits",
                     lines[overlay].first);
  }
  return LiftSpec(std::move(m), Overlay::from_matroid(n));
}

inline LiftSpec read_lift(const std::string& path) { return parse_lift(detail::slurp(path)); }

inline std::string write_lift(const LiftSpec& spec) {
  if (!spec.overlay.matroid()) throw PreconditionError("overlay has no circuit form to write");
  std::string out = "base\n" + write_matroid(spec.base);
  out += "overlay\n";
  const auto circuits = spec.base.circuits();
  for (std::size_t i = 0; i < circuits.size(); ++i) {
    out += "# " + std::to_string(i + 1) + " = " + format_set(circuits[i]) + "\n";
  }
  return out + write_matroid(*spec.overlay.matroid());
}

/// .gfm: "gf <p> <rows> <cols>", then the rows.
inline GfMatrix parse_matrix(const std::string& text) {
  const auto lines = detail::tokenize(text);
  if (lines.empty()) throw ParseError("missing 'gf <p> <rows> <cols>' header", 0);
  const auto& [hline, header] = lines[0];
  if (header.size() != 4 || header[0] != "gf") throw ParseError("expected 'gf <p> <rows> <cols>'", hline);
  const long long p = detail::to_int(header[1], hline);
  const long long rows = detail::to_int(header[2], hline);
  const long long cols = detail::to_int(header[3], hline);
  if (p < 2 || p > 251 || !is_prime(static_cast<int>(p))) throw ParseError("field order must be a prime <= 251", hline);
  if (rows < 0 || cols < 0 || cols > kMaxElements || rows > 4096) throw ParseError("bad matrix dimensions", hline);
  if (static_cast<long long>(lines.size()) - 1 != rows) {
    throw ParseError("expected " + std::to_string(rows) + " rows, found " + std::to_string(lines.size() - 1), hline);
  }
  GfMatrix a(static_cast<int>(p), static_cast<int>(rows), static_cast<int>(cols));
  for (int i = 0; i < rows; ++i) {
    const auto& [number, tokens] = lines[static_cast<std::size_t>(i) + 1];
    if (static_cast<long long>(tokens.size()) != cols) {
      throw ParseError("expected " + std::to_string(cols) + " entries", number);
    }
    for (int j = 0; j < cols; ++j) a.set(i, j, detail::to_int(tokens[static_cast<std::size_t>(j)], number));
  }
  return a;
}

inline GfMatrix read_matrix(const std::string& path) { return parse_matrix(detail::slurp(path)); }

inline std::string write_matrix(const GfMatrix& a) {
  std::string out = "gf " + std::to_string(a.prime()) + " " + std::to_string(a.rows()) + " " + std::to_string(a.cols()) + "\n";
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) out += (j ? " " : "") + std::to_string(a.at(i, j));
    out += "\n";
  }
  return out;
}

/// .grp: "group <k>", a line of k element names, then k table rows of names.
inline FinGroup parse_group(const std::string& text) {
  const auto lines = detail::tokenize(text);
  if (lines.empty()) throw ParseError("missing 'group <k>' header", 0);
  const auto& [hline, header] = lines[0];
  if (header.size() != 2 || header[0] != "group") throw ParseError("expected 'group <k>'", hline);
  const long long k = detail::to_int(header[1], hline);
  if (k < 1 || k > kMaxElements) throw ParseError("group order must be between 1 and 64", hline);
  if (static_cast<long long>(lines.size()) != k + 2) {
    throw ParseError("expected a names line and " + std::to_string(k) + " table rows", hline);
  }
  const auto& [nline, names] = lines[1];
  if (static_cast<long long>(names.size()) != k) throw ParseError("expected " + std::to_string(k) + " names", nline);
  for (std::size_t a = 0; a < names.size(); ++a) {
    for (std::size_t b = a + 1; b < names.size(); ++b) {
      if (names[a] == names[b]) throw ParseError("name '" + names[a] + "' repeated", nline);
    }
  }
  std::vector<std::vector<int>> table;
  for (long long i = 0; i < k; ++i) {
    const auto& [number, tokens] = lines[static_cast<std::size_t>(i) + 2];
    if (static_cast<long long>(tokens.size()) != k) throw ParseError("expected " + std::to_string(k) + " entries", number);
    std::vector<int> row;
    for (const std::string& t : tokens) {
      auto it = std::find(names.begin(), names.end(), t);
      if (it == names.end()) throw ParseError("unknown element '" + t + "'", number);
      row.push_back(static_cast<int>(it - names.begin()));
    }
    table.push_back(std::move(row));
  }
  return FinGroup(names, std::move(table));
}

inline FinGroup read_group(const std::string& path) { return parse_group(detail::slurp(path)); }

inline std::string write_group(const FinGroup& g) {
  std::string out = "group " + std::to_string(g.order()) + "\n";
  for (int a = 0; a < g.order(); ++a) out += (a ? " " : "") + g.name(a);
  out += "\n";
  for (int a = 0; a < g.order(); ++a) {
    for (int b = 0; b < g.order(); ++b) out += (b ? " " : "") + g.name(g.mul(a, b));
    out += "\n";
  }
  return out;
}

/// A 1-based element list: "1,2,7", "{1,2,7}", "1 2 7" or "{}".
inline Mask parse_set(const std::string& text, int n) {
  std::string s;
  for (char c : text) s += (c == ',' || c == '{' || c == '}') ? ' ' : c;
  std::istringstream in(s);
  Mask out = 0;
  for (std::string w; in >> w;) {
    const long long e = detail::to_int(w, 0);
    if (e < 1 || e > n) throw ParseError("element " + w + " outside 1.." + std::to_string(n), 0);
    out |= bit(static_cast<int>(e - 1));
  }
  return out;
}

}  // namespace matlift::io
