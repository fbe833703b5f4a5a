// Copyright 2026 The ccanc Authors
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
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccanc {

/** Number of bits needed to address `n` items (0 for n <= 1). */
inline int ceil_log2(std::uint64_t n) {
  int k = 0;
  while ((std::uint64_t{1} << k) < n) ++k;
  return k;
}

inline bool is_pow2(std::uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

/**
 * Classical word array read by a QROM. Word `i` is selected by the
 * integer `i` on the selection register.
 */
struct DataTable {
  std::vector<std::uint64_t> words;
  int m = 1;

  DataTable() = default;
  DataTable(std::vector<std::uint64_t> w, int width)
      : words(std::move(w)), m(width) {
    check();
  }

  std::size_t size() const { return words.size(); }
  int address_bits() const { return ceil_log2(words.size()); }
  std::uint64_t at(std::uint64_t i) const {
    return i < words.size() ? words[i] : 0;
  }

  void check() const {
    if (words.empty()) throw std::invalid_argument("DataTable: N must be >= 1");
    if (m < 1 || m > 63) throw std::invalid_argument("DataTable: bad width");
    for (auto w : words)
      if (w >> m) throw std::invalid_argument("DataTable: word exceeds width");
  }

  bool operator==(const DataTable&) const = default;
};

// File format: header `QROM N=<N> M=<m>` then one hex word per line.
inline std::string emit_table(const DataTable& d) {
  std::ostringstream os;
  os << "QROM N=" << d.size() << " M=" << d.m << "\n";
  for (auto w : d.words) os << std::hex << w << std::dec << "\n";
  return os.str();
}

inline DataTable parse_table(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::size_t n = 0;
  int m = 0;
  bool header = false;
  std::vector<std::uint64_t> words;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    line = line.substr(b);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (!header) {
      unsigned long long nn = 0;
      if (std::sscanf(line.c_str(), "QROM N=%llu M=%d", &nn, &m) != 2)
        throw std::runtime_error("line " + std::to_string(lineno) +
                                 ": expected `QROM N=<N> M=<m>` header");
      n = nn;
      header = true;
      continue;
    }
    std::size_t used = 0;
    std::uint64_t w = 0;
    try {
      w = std::stoull(line, &used, 16);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != line.size())
      throw std::runtime_error("line " + std::to_string(lineno) +
                               ": bad hex word");
    words.push_back(w);
  }
  if (!header) throw std::runtime_error("missing QROM header");
  if (words.size() != n)
    throw std::runtime_error("word count does not match N=" +
                             std::to_string(n));
  return DataTable(std::move(words), m);
}

}  // namespace ccanc
