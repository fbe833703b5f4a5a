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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccanc/circuit.hpp"

// Prefix-AND ladders. Elements are grouped into batches of size 2, 3, 5,
// 9, ... The AND of each batch is chained onto qubits of earlier batches,
// which are known to be 1 whenever the running prefix is 1. The batch
// holders form a much shorter element list, handled by the same routine
// one level up.

namespace ccanc {

/** Number of times log2 must be applied to n to reach a value <= 1. */
inline int log2_star(double n) {
  if (n < 1) throw std::invalid_argument("log2_star: n must be >= 1");
  int k = 0;
  while (n > 1.0) {
    n = std::log2(n);
    ++k;
  }
  return k;
}

class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Clean ancillae handed out on demand. Released qubits are reused, so the
 * number of clean_ancilla qubits in the circuit is the peak demand.
 */
class CleanPool {
 public:
  CleanPool(Circuit& c, int limit = -1) : c_(c), limit_(limit) {}

  int take() {
    if (!free_.empty()) {
      int q = free_.back();
      free_.pop_back();
      return q;
    }
    if (limit_ >= 0 && allocated_ >= limit_)
      throw BudgetError("clean ancilla budget of " + std::to_string(limit_) +
                        " exhausted");
    ++allocated_;
    return c_.add_qubit(Role::clean_ancilla);
  }
  void give(int q) { free_.push_back(q); }
  int allocated() const { return allocated_; }

 private:
  Circuit& c_;
  int limit_;
  int allocated_ = 0;
  std::vector<int> free_;
};

/**
 * Called once per prefix length j, from longest to shortest. `ctrls`
 * holds one or two qubits whose AND equals the prefix.
 */
using PrefixSink = std::function<void(int j, std::span<const int> ctrls)>;

namespace detail {

struct Batch {
  int start = 0;              // 0-based index of the first element
  std::vector<int> elems;     // u_1..u_r
  std::vector<int> work;      // w_1..w_{r-1}
  // Qubit that holds t_k, the AND of u_1..u_k, once the chain is computed.
  int holds(int k) const {
    return k == 1 ? elems[0] : work[work.size() - (k - 1)];
  }
};

// op k writes t_{k+1}: op 1 is (w_{r-1}; u_1, u_2), op k is
// (w_{r-k}; w_{r-k+1}, u_{k+1}). The CCX is followed by X since the
// workspace starts at 1.
inline void chain_op(Circuit& c, const Batch& b, int k) {
  int r = static_cast<int>(b.elems.size());
  int t = b.work[r - 1 - k];
  int x = k == 1 ? b.elems[0] : b.work[r - k];
  c.ccx(x, b.elems[k], t);
  c.x(t);
}
inline void chain_op_inverse(Circuit& c, const Batch& b, int k) {
  int r = static_cast<int>(b.elems.size());
  int t = b.work[r - 1 - k];
  int x = k == 1 ? b.elems[0] : b.work[r - k];
  c.x(t);
  c.ccx(x, b.elems[k], t);
}

}  // namespace detail

/**
 * Emits gates that expose every prefix AND of `elems` to `sink` and then
 * restore all qubits. Prefix j is AND(elems[0..j-1]).
 */
inline void emit_prefix_ladder(Circuit& c, std::span<const int> elems,
                               const PrefixSink& sink, CleanPool& pool) {
  const int L = static_cast<int>(elems.size());
  if (L == 0) return;
  if (L == 1) {
    sink(1, elems.first(1));
    return;
  }
  if (L == 2) {
    sink(2, elems.first(2));
    sink(1, elems.first(1));
    return;
  }
  const int a = pool.take();
  c.and_gate(elems[0], elems[1], a);

  // slots: slot 0 is `a`, slot k is elems[k-1]. Marked slots are 1
  // whenever the prefix up to the current batch is 1.
  std::vector<detail::Batch> batches;
  std::vector<int> ends{2};  // ends[i]: prefix length closing batch i
  int lo = 1, marked = 2, next = 2;
  while (next < L) {
    detail::Batch b;
    int r = std::min(marked + 1, L - next);
    b.start = next;
    b.elems.assign(elems.begin() + next, elems.begin() + next + r);
    for (int k = 0; k < r - 1; ++k) b.work.push_back(elems[lo - 1 + k]);
    for (int k = 1; k < r; ++k) detail::chain_op(c, b, k);
    if (r >= 2) {
      ++lo;
      marked = marked - 1 + r;
    }
    next += r;
    ends.push_back(next);
    batches.push_back(std::move(b));
  }
  const int K = static_cast<int>(batches.size()) + 1;

  // Holders: H[0] = a, H[i] = qubit with the AND of batch i.
  std::vector<int> H{a};
  for (const auto& b : batches)
    H.push_back(b.holds(static_cast<int>(b.elems.size())));

  // Runs the descending consumption of batch i given its prefix on q.
  auto process = [&](int i, int q) {
    const auto& b = batches[i - 1];
    int r = static_cast<int>(b.elems.size());
    for (int k = r; k >= 1; --k) {
      // The batch's full AND is the next batch's prefix, handled one
      // level up, except for the last batch.
      if (k < r || i == K - 1) {
        int cs[2] = {q, b.holds(k)};
        sink(b.start + k, cs);
      }
      if (k >= 2) detail::chain_op_inverse(c, b, k - 1);
    }
  };

  std::vector<int> upper(H.begin(), H.end() - 1);
  emit_prefix_ladder(
      c, upper,
      [&](int i, std::span<const int> q) {
        int z = -1;
        int single = q[0];
        if (q.size() == 2) {
          z = pool.take();
          c.and_gate(q[0], q[1], z);
          single = z;
        }
        process(i, single);
        if (z >= 0) {
          c.and_dagger(q[0], q[1], z);
          pool.give(z);
        }
        sink(ends[i - 1], q);
      },
      pool);

  c.and_dagger(elems[0], elems[1], a);
  pool.give(a);
  sink(1, elems.first(1));
}

enum class Direction { prefix, suffix };

/** Targets flipped by each prefix: flips[j - 1] lists target indices. */
struct PrefixConsumer {
  int width = 0;
  std::vector<std::vector<int>> flips;
};

/**
 * Circuit with n system qubits, `consumer.width` targets, then clean
 * ancillae. Target t ends XORed with every prefix (or suffix) AND that
 * lists it.
 */
inline Circuit prefix_and_ladder(int n, const PrefixConsumer& consumer,
                                 Direction dir = Direction::prefix,
                                 int clean_budget = -1) {
  if (n < 1) throw std::invalid_argument("prefix_and_ladder: n must be >= 1");
  if (static_cast<int>(consumer.flips.size()) > n)
    throw std::invalid_argument("prefix_and_ladder: more prefixes than bits");
  Circuit c(dir == Direction::prefix ? "prefix_and_ladder"
                                     : "suffix_and_ladder");
  auto sys = c.add_qubits(n, Role::system);
  auto tg = c.add_qubits(consumer.width, Role::target);
  for (const auto& f : consumer.flips)
    for (int t : f)
      if (t < 0 || t >= consumer.width)
        throw std::invalid_argument("prefix_and_ladder: bad target index");
  if (dir == Direction::suffix) std::reverse(sys.begin(), sys.end());
  sys.resize(consumer.flips.size());
  CleanPool pool(c, clean_budget);
  emit_prefix_ladder(
      c, sys,
      [&](int j, std::span<const int> q) {
        for (int t : consumer.flips[j - 1]) {
          if (q.size() == 1)
            c.cx(q[0], tg[t]);
          else
            c.ccx(q[0], q[1], tg[t]);
        }
      },
      pool);
  return c;
}

/** |x> -> |x + 1 mod 2^n> on qubits 0..n-1, bit 0 least significant. */
inline Circuit incrementer(int n, int clean_budget = -1) {
  if (n < 1) throw std::invalid_argument("incrementer: n must be >= 1");
  Circuit c("incrementer");
  auto x = c.add_qubits(n, Role::system);
  CleanPool pool(c, clean_budget);
  std::vector<int> elems(x.begin(), x.end() - 1);
  emit_prefix_ladder(
      c, elems,
      [&](int j, std::span<const int> q) {
        if (q.size() == 1)
          c.cx(q[0], x[j]);
        else
          c.ccx(q[0], q[1], x[j]);
      },
      pool);
  c.x(x[0]);
  return c;
}

/**
 * Flips the target (qubit n) iff x < c. Bit i of x is compared against
 * bit i of c, scanning from the top; every 1-bit of c at position j
 * contributes the suffix ANDs ending at j + 1 and at j, so equal
 * neighbours cancel.
 */
inline Circuit less_than_const(int n, std::uint64_t cst, int clean_budget = -1) {
  if (n < 1 || n > 63)
    throw std::invalid_argument("less_than_const: n must be in [1, 63]");
  if (cst >= (std::uint64_t{1} << n))
    throw std::invalid_argument("less_than_const: constant out of range");
  Circuit c("less_than_const");
  auto x = c.add_qubits(n, Role::system);
  int t = c.add_qubit(Role::target);
  // take[m]: suffix of length m (top m bits) feeds the target.
  std::vector<bool> take(n + 1, false);
  for (int j = 0; j < n; ++j) {
    if (!((cst >> j) & 1)) continue;
    take[n - 1 - j] = !take[n - 1 - j];
    take[n - j] = !take[n - j];
  }
  int L = 0;
  for (int m = 1; m <= n; ++m)
    if (take[m]) L = m;
  if (take[0]) c.x(t);
  if (L == 0) return c;
  // y_i = [x_i == c_i]: flip the bits where c is 0.
  std::vector<int> elems;
  for (int m = 0; m < L; ++m) elems.push_back(x[n - 1 - m]);
  auto flip = [&] {
    for (int m = 0; m < L; ++m)
      if (!((cst >> (n - 1 - m)) & 1)) c.x(elems[m]);
  };
  flip();
  CleanPool pool(c, clean_budget);
  emit_prefix_ladder(
      c, elems,
      [&](int j, std::span<const int> q) {
        if (!take[j]) return;
        if (q.size() == 1)
          c.cx(q[0], t);
        else
          c.ccx(q[0], q[1], t);
      },
      pool);
  flip();
  return c;
}

/** Oracle for incrementer(n) on its system slice. */
inline std::function<std::uint64_t(std::uint64_t)> increment_oracle(int n) {
  const std::uint64_t mask = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  return [mask](std::uint64_t v) { return (v + 1) & mask; };
}

/** Oracle for less_than_const(n, c): x in bits 0..n-1, target bit n. */
inline std::function<std::uint64_t(std::uint64_t)> less_than_oracle(
    int n, std::uint64_t cst) {
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  return [n, mask, cst](std::uint64_t v) {
    return (v & mask) < cst ? v ^ (std::uint64_t{1} << n) : v;
  };
}

}  // namespace ccanc
