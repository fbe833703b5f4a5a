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

// Shared generators for the property tests. Everything is seeded so a
// failure reproduces.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "ccanc/circuit.hpp"
#include "ccanc/data_table.hpp"

namespace ccanc::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t bits(int m) {
    return m >= 64 ? rng_() : rng_() & ((std::uint64_t{1} << m) - 1);
  }
  int below(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }
  bool coin() { return rng_() & 1; }

  DataTable table(std::uint64_t N, int m) {
    std::vector<std::uint64_t> w(N);
    for (auto& x : w) x = bits(m);
    return DataTable(std::move(w), m);
  }

  // `k` distinct qubits out of 0..n-1.
  std::vector<int> distinct(int n, int k) {
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    std::shuffle(all.begin(), all.end(), rng_);
    all.resize(k);
    return all;
  }

  // X/CX/CCX circuit on `n` system qubits (n >= 3).
  Circuit clifford_toffoli(int n, int gates) {
    Circuit c("random");
    c.add_qubits(n, Role::system);
    for (int i = 0; i < gates; ++i) {
      int kind = below(3);
      auto q = distinct(n, kind + 1);
      if (kind == 0)
        c.x(q[0]);
      else if (kind == 1)
        c.cx(Control{q[0], coin()}, q[1]);
      else
        c.ccx(Control{q[0], coin()}, Control{q[1], coin()}, q[2]);
    }
    return c;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace ccanc::testing
