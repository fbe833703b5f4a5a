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

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccanc/circuit.hpp"
#include "ccanc/marking_game.hpp"
#include "ccanc/sim.hpp"

// Multi-controlled NOT constructions. Every builder lays out qubits the
// same way: controls 0..n-1 (system), target n, then ancillae.

namespace ccanc {

namespace detail {

/** Qubits of the slots left unmarked by a schedule over `slots`. */
inline std::vector<int> holder_qubits(const MarkingSchedule& s,
                                      const std::vector<int>& slots) {
  std::vector<int> out;
  for (int h : survivors(s)) out.push_back(slots[h]);
  return out;
}

}  // namespace detail

/**
 * Emits target ^= AND(ctrls) using one helper qubit `anc` as slot 0 of
 * the greedy ladder. With `anc_clean` the helper starts at 0 and the
 * slot-0 op becomes an AND; `measured` selects AND_DAGGER for its
 * uncompute. A non-clean helper must be paired by toggle detection.
 */
inline void emit_mcx_one(Circuit& c, const std::vector<int>& ctrls, int target,
                         int anc, bool anc_clean, bool measured) {
  const int n = static_cast<int>(ctrls.size());
  if (n == 0) {
    c.x(target);
    return;
  }
  if (n == 1) {
    c.cx(ctrls[0], target);
    return;
  }
  if (n == 2) {
    c.ccx(ctrls[0], ctrls[1], target);
    return;
  }
  auto s = greedy_schedule(n);
  std::vector<int> slots{anc};
  slots.insert(slots.end(), ctrls.begin(), ctrls.end());
  std::size_t from = c.size();
  emit_schedule(c, s.ops, slots, anc_clean && measured);
  std::size_t to = c.size();
  auto h = detail::holder_qubits(s, slots);
  c.ccx(h[0], h[1], target);
  append_inverse_of_range(c, from, to);
}

/**
 * Emits target ^= AND(ctrls) borrowing ctrls.size() - 2 qubits in any
 * state: the CCX staircase run twice around a toggle of the first
 * borrowed qubit. 4m - 8 CCX for m >= 3 controls.
 */
inline void emit_mcx_borrowed(Circuit& c, const std::vector<Control>& ctrls,
                              int target, std::span<const int> borrowed) {
  const int m = static_cast<int>(ctrls.size());
  if (m == 0) {
    c.x(target);
    return;
  }
  if (m == 1) {
    c.cx(ctrls[0], target);
    return;
  }
  if (m == 2) {
    c.ccx(ctrls[0], ctrls[1], target);
    return;
  }
  if (static_cast<int>(borrowed.size()) < m - 2)
    throw std::invalid_argument("emit_mcx_borrowed: need " +
                                std::to_string(m - 2) + " borrowed qubits");
  auto step = [&](int i) {
    int out = i + 1 < m - 2 ? borrowed[i + 1] : target;
    c.ccx(ctrls[i + 2], Control{borrowed[i]}, out);
  };
  for (int rep = 0; rep < 2; ++rep) {
    c.ccx(ctrls[0], ctrls[1], borrowed[0]);
    for (int i = 0; i < m - 2; ++i) step(i);
    for (int i = m - 4; i >= 0; --i) step(i);
  }
}

inline void check_n(int n, int min, const char* who) {
  if (n < min)
    throw std::invalid_argument(std::string(who) + ": n must be >= " +
                                std::to_string(min));
}

inline Circuit mcx_reference(int n) {
  check_n(n, 1, "mcx_reference");
  Circuit c("mcx_ref");
  auto ctl = c.add_qubits(n, Role::system);
  int t = c.add_qubit(Role::target);
  std::vector<Control> cs;
  for (int q : ctl) cs.push_back(Control{q});
  c.mcx_ref(cs, t);
  return c;
}

/** One clean ancilla: greedy up/down ladder, target CCX, uncompute. */
inline Circuit mcx_one_clean(int n) {
  check_n(n, 3, "mcx_one_clean");
  Circuit c("mcx_one_clean");
  auto ctl = c.add_qubits(n, Role::system);
  int t = c.add_qubit(Role::target);
  int anc = c.add_qubit(Role::clean_ancilla);
  emit_mcx_one(c, ctl, t, anc, true, true);
  return c;
}

/**
 * Two clean ancillae, logarithmic depth: the doubling schedule gathers
 * the controls on O(log n) holders (the first op is an AND onto clean
 * ancilla #1), then a one-clean MCX over the holders with clean
 * ancilla #2, then the schedule is undone.
 */
inline Circuit mcx_two_clean_logdepth(int n) {
  check_n(n, 4, "mcx_two_clean_logdepth");
  Circuit c("mcx_two_clean_logdepth");
  auto ctl = c.add_qubits(n, Role::system);
  int t = c.add_qubit(Role::target);
  int a1 = c.add_qubit(Role::clean_ancilla);
  int a2 = c.add_qubit(Role::clean_ancilla);
  auto s = log_schedule(n);
  std::vector<int> slots{a1};
  slots.insert(slots.end(), ctl.begin(), ctl.end());
  std::size_t from = c.size();
  emit_schedule(c, s.ops, slots, true);
  std::size_t to = c.size();
  emit_mcx_one(c, detail::holder_qubits(s, slots), t, a2, true, true);
  append_inverse_of_range(c, from, to);
  return c;
}

/**
 * Laddered toggle detection. `toggle` flips dirty[0] by the outer
 * condition; `inner` emits an operation controlled by its `root` line
 * that is self-inverse for a fixed root and may treat dirty[1..] as if
 * they were clean. The result is toggle, inner, toggle, inner.
 */
using InnerBuilder =
    std::function<void(Circuit&, int root, std::span<const int> borrowed)>;

inline void laddered_toggle_detection(Circuit& c, const std::vector<Gate>& toggle,
                                      const InnerBuilder& inner,
                                      const std::vector<int>& dirty,
                                      bool check_self_inverse = true) {
  if (dirty.empty())
    throw std::invalid_argument("laddered_toggle_detection: no dirty qubit");
  std::span<const int> rest(dirty.data() + 1, dirty.size() - 1);
  for (const auto& g : toggle) {
    for (int t : g.targets)
      if (t != dirty[0])
        throw std::invalid_argument("laddered_toggle_detection: toggle must only flip dirty[0]");
    for (const auto& ct : g.controls)
      for (int q : dirty)
        if (ct.qubit == q)
          throw std::invalid_argument(
              "laddered_toggle_detection: outer controls overlap the borrowed qubits");
  }
  Circuit probe;
  for (Role r : c.roles()) probe.add_qubit(r);
  inner(probe, dirty[0], rest);
  if (check_self_inverse && probe.num_qubits() <= 16) {
    Circuit twice;
    for (Role r : c.roles()) twice.add_qubit(r == Role::clean_ancilla ? r : Role::dirty_ancilla);
    twice.append(probe.gates());
    twice.append(probe.gates());
    auto perm = truth_permutation(twice);
    for (std::size_t s = 0; s < perm.size(); ++s) {
      bool clean_ok = true;
      for (int q = 0; q < twice.num_qubits(); ++q)
        if (twice.role(q) == Role::clean_ancilla && ((s >> q) & 1)) clean_ok = false;
      if (clean_ok && perm[s] != s)
        throw std::invalid_argument("laddered_toggle_detection: inner op is not self-inverse");
    }
  }
  for (int rep = 0; rep < 2; ++rep) {
    c.append(toggle);
    c.append(probe.gates());
  }
}

/**
 * One dirty ancilla: toggle detection around the greedy ladder, with
 * the dirty qubit as slot 0. 4n - 8 CCX.
 */
inline Circuit mcx_one_dirty(int n) {
  check_n(n, 4, "mcx_one_dirty");
  Circuit c("mcx_one_dirty");
  auto ctl = c.add_qubits(n, Role::system);
  int t = c.add_qubit(Role::target);
  int d = c.add_qubit(Role::dirty_ancilla);
  auto s = greedy_schedule(n);
  std::vector<int> slots{d};
  slots.insert(slots.end(), ctl.begin(), ctl.end());
  // The first greedy op, (0,1,2), is the toggle itself.
  std::vector<MarkingOp> rest(s.ops.begin() + 1, s.ops.end());
  auto h = detail::holder_qubits(s, slots);
  Gate tog{GateKind::CCX, {Control{ctl[0]}, Control{ctl[1]}}, {d}, nullptr};
  laddered_toggle_detection(
      c, {tog},
      [&](Circuit& k, int, std::span<const int>) {
        std::size_t from = k.size();
        emit_schedule(k, rest, slots, false);
        std::size_t to = k.size();
        k.ccx(h[0], h[1], t);
        append_inverse_of_range(k, from, to);
      },
      {d}, false);
  return c;
}

/**
 * Two dirty ancillae, logarithmic depth. Dirty #1 is slot 0 of the
 * doubling schedule and is handled by toggle detection; dirty #2 then
 * serves as the helper of the one-clean MCX over the holders.
 */
inline Circuit mcx_two_dirty_logdepth(int n) {
  check_n(n, 5, "mcx_two_dirty_logdepth");
  Circuit c("mcx_two_dirty_logdepth");
  auto ctl = c.add_qubits(n, Role::system);
  int t = c.add_qubit(Role::target);
  int d1 = c.add_qubit(Role::dirty_ancilla);
  int d2 = c.add_qubit(Role::dirty_ancilla);
  auto s = log_schedule(n);
  std::vector<int> slots{d1};
  slots.insert(slots.end(), ctl.begin(), ctl.end());
  std::vector<MarkingOp> rest(s.ops.begin() + 1, s.ops.end());
  // d1 must lead the holder list: it becomes slot 1 of the inner ladder.
  auto h = detail::holder_qubits(s, slots);
  Gate tog{GateKind::CCX, {Control{ctl[0]}, Control{ctl[1]}}, {d1}, nullptr};
  laddered_toggle_detection(
      c, {tog},
      [&](Circuit& k, int, std::span<const int> borrowed) {
        std::size_t from = k.size();
        emit_schedule(k, rest, slots, false);
        std::size_t to = k.size();
        emit_mcx_one(k, h, t, borrowed[0], false, false);
        append_inverse_of_range(k, from, to);
      },
      {d1, d2}, false);
  return c;
}

/**
 * n - 2 borrowed qubits: the CCX staircase pointing at the target, run
 * twice around a toggle of the first borrowed qubit. 4n - 8 CCX.
 */
inline Circuit mcx_borrowed_ladder(int n) {
  check_n(n, 3, "mcx_borrowed_ladder");
  Circuit c("mcx_borrowed_ladder");
  auto ctl = c.add_qubits(n, Role::system);
  int t = c.add_qubit(Role::target);
  auto d = c.add_qubits(n - 2, Role::dirty_ancilla);
  Gate tog{GateKind::CCX, {Control{ctl[0]}, Control{ctl[1]}}, {d[0]}, nullptr};
  laddered_toggle_detection(
      c, {tog},
      [&](Circuit& k, int, std::span<const int>) {
        auto step = [&](int i) {
          int out = i + 1 < n - 2 ? d[i + 1] : t;
          k.ccx(ctl[i + 2], d[i], out);
        };
        for (int i = 0; i < n - 2; ++i) step(i);
        for (int i = n - 4; i >= 0; --i) step(i);
      },
      d, false);
  return c;
}

}  // namespace ccanc
