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
#include <array>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccanc/circuit.hpp"

namespace ccanc {

/**
 * One move of the marking game: slot t (marked) is spent to mark the
 * unmarked slots x and y. In circuit form slot t receives x AND y.
 */
struct MarkingOp {
  int t = 0, x = 0, y = 0;
  bool operator==(const MarkingOp&) const = default;
  auto operator<=>(const MarkingOp&) const = default;
};

struct ScheduleStats {
  int K = 0;  // unmarked slots left at the end
  int T = 0;  // number of ops
  int D = 0;  // depth when ops on disjoint slots run in parallel
  bool operator==(const ScheduleStats&) const = default;
};

struct MarkingSchedule {
  int n = 0;  // slots 0..n; slot 0 starts marked
  std::vector<MarkingOp> ops;
  // End offsets of the timesteps, when the generator has any.
  std::vector<std::size_t> steps;
};

class ScheduleError : public std::runtime_error {
 public:
  ScheduleError(long op, const std::string& what)
      : std::runtime_error(op >= 0 ? "op " + std::to_string(op) + ": " + what
                                   : what),
        op_(op) {}
  long op() const { return op_; }

 private:
  long op_;
};

/** Marks after replaying ops[0, upto). */
inline std::vector<int> replay(const MarkingSchedule& s,
                               std::size_t upto = static_cast<std::size_t>(-1)) {
  if (s.n < 1) throw ScheduleError(-1, "n must be >= 1");
  std::vector<int> a(static_cast<std::size_t>(s.n) + 1, 0);
  a[0] = 1;
  upto = std::min(upto, s.ops.size());
  for (std::size_t i = 0; i < upto; ++i) {
    const auto& o = s.ops[i];
    long li = static_cast<long>(i);
    if (o.t < 0 || o.y > s.n) throw ScheduleError(li, "index out of range");
    if (!(o.t < o.x && o.x < o.y)) throw ScheduleError(li, "requires t < x < y");
    if (a[o.t] != 1) throw ScheduleError(li, "slot t is not marked");
    if (a[o.x] != 0 || a[o.y] != 0) throw ScheduleError(li, "slot x or y is marked");
    a[o.t] = 0;
    a[o.x] = 1;
    a[o.y] = 1;
  }
  return a;
}

/** ASAP layering depth of a list of ops. */
inline int schedule_depth(const std::vector<MarkingOp>& ops, int n) {
  std::vector<int> lv(static_cast<std::size_t>(n) + 1, 0);
  int d = 0;
  for (const auto& o : ops) {
    int l = std::max({lv[o.t], lv[o.x], lv[o.y]}) + 1;
    lv[o.t] = lv[o.x] = lv[o.y] = l;
    d = std::max(d, l);
  }
  return d;
}

inline ScheduleStats verify_schedule(const MarkingSchedule& s) {
  auto a = replay(s);
  ScheduleStats st;
  st.K = static_cast<int>(std::count(a.begin(), a.end(), 0));
  st.T = static_cast<int>(s.ops.size());
  st.D = schedule_depth(s.ops, s.n);
  return st;
}

/** Slots left unmarked at the end; each holds part of the accumulated AND. */
inline std::vector<int> survivors(const MarkingSchedule& s) {
  auto a = replay(s);
  std::vector<int> out;
  for (int i = 0; i <= s.n; ++i)
    if (!a[i]) out.push_back(i);
  return out;
}

/**
 * Greedy strategy: take the rightmost marked slot that still has two
 * unmarked slots to its right and spend it on the leftmost such pair.
 */
inline MarkingSchedule greedy_schedule(int n) {
  if (n < 3) throw std::invalid_argument("greedy_schedule: n must be >= 3");
  MarkingSchedule s{n, {}, {}};
  std::vector<int> a(static_cast<std::size_t>(n) + 1, 0);
  a[0] = 1;
  for (;;) {
    bool moved = false;
    for (int t = n; t >= 0 && !moved; --t) {
      if (a[t] != 1) continue;
      int x = -1, y = -1;
      for (int j = t + 1; j <= n; ++j) {
        if (a[j]) continue;
        if (x < 0) x = j;
        else {
          y = j;
          break;
        }
      }
      if (y < 0) continue;
      s.ops.push_back({t, x, y});
      a[t] = 0;
      a[x] = a[y] = 1;
      moved = true;
    }
    if (!moved) break;
  }
  return s;
}

/**
 * Doubling strategy. Before timestep i the marked block has M = 2^i
 * slots starting at slot i. The step spends that block on the next
 * M+1 unmarked slots: the first M-1 block slots and the new slots are
 * laid out as an implicit binary heap and every heap node with two
 * children marks them. Afterwards slot i is unmarked and the block has
 * doubled.
 */
inline MarkingSchedule log_schedule(int n) {
  if (n < 3) throw std::invalid_argument("log_schedule: n must be >= 3");
  MarkingSchedule s{n, {}, {}};
  int lo = 0, nxt = 1;
  long m = 1;
  while (nxt <= n) {
    int r = static_cast<int>(std::min<long>(m + 1, n + 1 - nxt));
    std::vector<int> region;
    for (int j = 0; j < r - 1; ++j) region.push_back(lo + j);
    for (int j = 0; j < r; ++j) region.push_back(nxt + j);
    int len = static_cast<int>(region.size());
    for (int k = len; k >= 1; --k)
      if (2 * k + 1 <= len)
        s.ops.push_back({region[k - 1], region[2 * k - 1], region[2 * k]});
    s.steps.push_back(s.ops.size());
    lo += 1;
    nxt += r;
    m *= 2;
    if (r < m / 2 + 1) break;
  }
  return s;
}

/** Maps slot i to qubit slots[i] and emits the ops as gates. */
inline void emit_schedule(Circuit& c, const std::vector<MarkingOp>& ops,
                          const std::vector<int>& slots, bool slot0_clean) {
  for (const auto& o : ops) {
    if (o.t == 0 && slot0_clean) {
      c.and_gate(Control{slots[o.x]}, Control{slots[o.y]}, slots[0]);
    } else {
      c.ccx(slots[o.x], slots[o.y], slots[o.t]);
      if (o.t != 0) c.x(slots[o.t]);
    }
  }
}

/**
 * Circuit for a schedule: slot 0 is a clean ancilla, slots 1..n are
 * system qubits. An op spending slot 0 becomes an AND; any other op is
 * CCX onto slot t followed by X on slot t.
 */
inline Circuit schedule_to_circuit(const MarkingSchedule& s) {
  verify_schedule(s);
  Circuit c("schedule");
  std::vector<int> slots(static_cast<std::size_t>(s.n) + 1);
  slots[0] = -1;
  for (int i = 1; i <= s.n; ++i) slots[i] = c.add_qubit(Role::system);
  slots[0] = c.add_qubit(Role::clean_ancilla);
  emit_schedule(c, s.ops, slots, true);
  return c;
}

enum class Objective { K, T, D };

/**
 * Exhaustive search for a best schedule at small n. Keys are compared
 * lexicographically starting with `objective`, then the remaining keys
 * in K, T, D order. Ties go to the lexicographically smallest op list.
 */
inline MarkingSchedule optimal_search(int n, Objective objective = Objective::K) {
  if (n < 1 || n > 8) throw std::invalid_argument("optimal_search: n must be in [1, 8]");
  const int slots = n + 1;
  const int nstates = 1 << slots;
  // All sets of pairwise disjoint legal ops, applied as one round.
  auto rounds_from = [&](int st) {
    std::vector<MarkingOp> legal;
    for (int t = 0; t < slots; ++t)
      if (st >> t & 1)
        for (int x = t + 1; x < slots; ++x)
          if (!(st >> x & 1))
            for (int y = x + 1; y < slots; ++y)
              if (!(st >> y & 1)) legal.push_back({t, x, y});
    std::vector<std::vector<MarkingOp>> out;
    std::vector<MarkingOp> cur;
    auto rec = [&](auto&& self, std::size_t from, int used) -> void {
      if (!cur.empty()) out.push_back(cur);
      for (std::size_t i = from; i < legal.size(); ++i) {
        int m = (1 << legal[i].t) | (1 << legal[i].x) | (1 << legal[i].y);
        if (used & m) continue;
        cur.push_back(legal[i]);
        self(self, i + 1, used | m);
        cur.pop_back();
      }
    };
    rec(rec, 0, 0);
    return out;
  };
  auto apply = [](int st, const std::vector<MarkingOp>& r) {
    for (const auto& o : r) st ^= (1 << o.t) | (1 << o.x) | (1 << o.y);
    return st;
  };
  // Rounds needed to reach each state, with the smallest op path.
  std::vector<int> dist(static_cast<std::size_t>(nstates), -1);
  std::vector<std::vector<MarkingOp>> path(static_cast<std::size_t>(nstates));
  dist[1] = 0;
  std::vector<int> frontier{1};
  for (int d = 0; !frontier.empty(); ++d) {
    std::map<int, std::vector<MarkingOp>> next;
    for (int st : frontier)
      for (const auto& r : rounds_from(st)) {
        int to = apply(st, r);
        if (dist[to] >= 0 && dist[to] <= d) continue;
        auto p = path[st];
        p.insert(p.end(), r.begin(), r.end());
        auto it = next.find(to);
        if (it == next.end() || p < it->second) next[to] = p;
      }
    frontier.clear();
    for (auto& [to, p] : next) {
      dist[to] = d + 1;
      path[to] = std::move(p);
      frontier.push_back(to);
    }
  }
  auto key = [&](int st) {
    int marked = __builtin_popcount(static_cast<unsigned>(st));
    std::array<int, 3> k{slots - marked, marked - 1, dist[st]};
    std::array<int, 3> order{0, 1, 2};
    if (objective == Objective::T) order = {1, 0, 2};
    if (objective == Objective::D) order = {2, 0, 1};
    return std::array<int, 3>{k[order[0]], k[order[1]], k[order[2]]};
  };
  int best = -1;
  for (int st = 0; st < nstates; ++st) {
    if (dist[st] < 0) continue;
    if (best < 0 || key(st) < key(best) ||
        (key(st) == key(best) && path[st] < path[best]))
      best = st;
  }
  return MarkingSchedule{n, path[best], {}};
}

// Text form: header `N <n>` then `OP t x y` per line.
inline std::string emit_schedule_text(const MarkingSchedule& s) {
  std::ostringstream os;
  os << "N " << s.n << "\n";
  for (const auto& o : s.ops) os << "OP " << o.t << " " << o.x << " " << o.y << "\n";
  return os.str();
}

inline MarkingSchedule parse_schedule_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  MarkingSchedule s;
  bool header = false;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw) || kw[0] == '#') continue;
    std::string extra;
    if (kw == "N" && !header) {
      if (!(ls >> s.n) || (ls >> extra))
        throw ScheduleError(-1, "line " + std::to_string(lineno) + ": bad header");
      header = true;
    } else if (kw == "OP" && header) {
      MarkingOp o;
      if (!(ls >> o.t >> o.x >> o.y) || (ls >> extra))
        throw ScheduleError(-1, "line " + std::to_string(lineno) + ": bad op");
      s.ops.push_back(o);
    } else {
      throw ScheduleError(-1, "line " + std::to_string(lineno) + ": unexpected `" + kw + "`");
    }
  }
  if (!header) throw ScheduleError(-1, "missing `N <n>` header");
  return s;
}

}  // namespace ccanc
