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
#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ccanc/circuit.hpp"

namespace ccanc {

// Bit i of a basis state is qubit i (qubit 0 is the least significant bit).
using BasisState = std::uint64_t;

enum class Fault {
  none,
  dirty_and_target,    // AND applied to a target that was not 0
  uncompute_mismatch,  // AND_DAGGER target did not hold the conjunction
  output_mismatch,
  clean_not_restored,
  dirty_not_restored,
};

inline std::string_view fault_name(Fault f) {
  switch (f) {
    case Fault::none: return "none";
    case Fault::dirty_and_target: return "dirty_and_target";
    case Fault::uncompute_mismatch: return "uncompute_mismatch";
    case Fault::output_mismatch: return "output_mismatch";
    case Fault::clean_not_restored: return "clean_not_restored";
    case Fault::dirty_not_restored: return "dirty_not_restored";
  }
  return "?";
}

class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

struct Compiled {
  GateKind kind;
  std::uint64_t cmask = 0, cval = 0;
  std::uint64_t tmask = 0;
  std::vector<int> sel, tgts;
  std::shared_ptr<const DataTable> data;
};

inline std::vector<Compiled> compile(const Circuit& c) {
  if (c.num_qubits() > 64)
    throw LimitError("simulation supports at most 64 qubits");
  std::vector<Compiled> out;
  out.reserve(c.size());
  for (const auto& g : c.gates()) {
    Compiled k{g.kind};
    for (const auto& ct : g.controls) {
      k.cmask |= std::uint64_t{1} << ct.qubit;
      if (ct.positive) k.cval |= std::uint64_t{1} << ct.qubit;
      k.sel.push_back(ct.qubit);
    }
    for (int t : g.targets) k.tmask |= std::uint64_t{1} << t;
    k.tgts = g.targets;
    k.data = g.payload;
    out.push_back(std::move(k));
  }
  return out;
}

inline Fault step(const Compiled& g, BasisState& s) {
  bool on = (s & g.cmask) == g.cval;
  switch (g.kind) {
    case GateKind::X:
    case GateKind::CX:
    case GateKind::CCX:
    case GateKind::MCX_REF:
      if (on) s ^= g.tmask;
      return Fault::none;
    case GateKind::AND:
      if (s & g.tmask) return Fault::dirty_and_target;
      if (on) s |= g.tmask;
      return Fault::none;
    case GateKind::AND_DAGGER:
      if (bool(s & g.tmask) != on) return Fault::uncompute_mismatch;
      s &= ~g.tmask;
      return Fault::none;
    case GateKind::QROM_REF: {
      std::uint64_t idx = 0;
      for (std::size_t i = 0; i < g.sel.size(); ++i)
        idx |= ((s >> g.sel[i]) & 1) << i;
      std::uint64_t w = g.data->at(idx);
      for (std::size_t j = 0; j < g.tgts.size(); ++j)
        if ((w >> j) & 1) s ^= std::uint64_t{1} << g.tgts[j];
      return Fault::none;
    }
  }
  return Fault::none;
}

}  // namespace detail

struct RunResult {
  BasisState state = 0;
  Fault fault = Fault::none;
  long gate = -1;  // index of the faulting gate
  bool ok() const { return fault == Fault::none; }
};

inline Fault apply_gate(const Gate& g, BasisState& s) {
  Circuit tmp;
  int hi = 0;
  for (const auto& c : g.controls) hi = std::max(hi, c.qubit);
  for (int t : g.targets) hi = std::max(hi, t);
  for (int i = 0; i <= hi; ++i) tmp.add_qubit(Role::clean_ancilla);
  tmp.append(g);
  return detail::step(detail::compile(tmp)[0], s);
}

/** Runs an already compiled gate list. */
inline RunResult run_compiled(const std::vector<detail::Compiled>& gs,
                              BasisState s) {
  for (std::size_t i = 0; i < gs.size(); ++i) {
    Fault f = detail::step(gs[i], s);
    if (f != Fault::none) return {s, f, static_cast<long>(i)};
  }
  return {s, Fault::none, -1};
}

inline RunResult run(const Circuit& c, BasisState s0) {
  return run_compiled(detail::compile(c), s0);
}

/**
 * What a circuit must do. The oracle sees the packed system slice: all
 * system and target qubits, in index order, qubit with the lowest index
 * in bit 0.
 */
struct VerificationSpec {
  std::function<std::uint64_t(std::uint64_t)> oracle;
  bool dirty_universal = true;
  bool restore = true;
  // (qubit, flag): a borrowed qubit that is 0 whenever `flag` is 1.
  std::vector<std::pair<int, int>> conditionally_clean;
};

struct VerifyOptions {
  std::uint64_t max_states = std::uint64_t{1} << 24;
  unsigned jobs = 0;  // 0: hardware concurrency
};

struct Verdict {
  bool pass = true;
  BasisState state = 0;
  long gate = -1;
  Fault fault = Fault::none;
  int width = 0;
  std::uint64_t checked = 0;

  std::string to_string() const {
    if (pass) return "pass";
    std::string bits;
    for (int i = width - 1; i >= 0; --i) bits += ((state >> i) & 1) ? '1' : '0';
    return "fail state=" + bits + " gate=" + std::to_string(gate) +
           " fault=" + std::string(fault_name(fault));
  }
};

/** Positions of the system slice (system + target qubits). */
inline std::vector<int> system_slice(const Circuit& c) {
  std::vector<int> out;
  for (int i = 0; i < c.num_qubits(); ++i)
    if (c.role(i) == Role::system || c.role(i) == Role::target)
      out.push_back(i);
  return out;
}

inline std::uint64_t pack(BasisState s, const std::vector<int>& pos) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < pos.size(); ++i) v |= ((s >> pos[i]) & 1) << i;
  return v;
}

inline BasisState unpack(std::uint64_t v, const std::vector<int>& pos) {
  BasisState s = 0;
  for (std::size_t i = 0; i < pos.size(); ++i)
    s |= ((v >> i) & 1) << pos[i];
  return s;
}

/**
 * Exhaustive check over every system input and every dirty-ancilla
 * value, clean ancillae starting at 0. Deterministic: the failing state
 * with the lowest enumeration index is reported.
 */
inline Verdict verify(const Circuit& c, const VerificationSpec& spec,
                      const VerifyOptions& opt = {}) {
  auto gs = detail::compile(c);
  auto sys = system_slice(c);
  std::vector<int> free = sys;
  std::uint64_t clean_mask = 0, dirty_mask = 0;
  for (int i = 0; i < c.num_qubits(); ++i) {
    if (c.role(i) == Role::clean_ancilla) clean_mask |= std::uint64_t{1} << i;
    if (c.role(i) == Role::dirty_ancilla) {
      dirty_mask |= std::uint64_t{1} << i;
      if (spec.dirty_universal) free.push_back(i);
    }
  }
  if (free.size() >= 63 || (std::uint64_t{1} << free.size()) > opt.max_states)
    throw LimitError("enumeration of 2^" + std::to_string(free.size()) +
                     " states exceeds the limit of " +
                     std::to_string(opt.max_states));
  const std::uint64_t total = std::uint64_t{1} << free.size();

  auto check = [&](std::uint64_t k, Verdict& v) {
    BasisState s0 = unpack(k, free);
    for (auto [q, flag] : spec.conditionally_clean)
      if (((s0 >> flag) & 1) && ((s0 >> q) & 1)) return true;
    RunResult r = run_compiled(gs, s0);
    v.state = s0;
    if (!r.ok()) {
      v.fault = r.fault;
      v.gate = r.gate;
      return false;
    }
    v.gate = static_cast<long>(gs.size());
    std::uint64_t want = spec.oracle ? spec.oracle(pack(s0, sys)) : pack(s0, sys);
    if (pack(r.state, sys) != want) {
      v.fault = Fault::output_mismatch;
      return false;
    }
    if (spec.restore) {
      if (r.state & clean_mask) {
        v.fault = Fault::clean_not_restored;
        return false;
      }
      if ((r.state ^ s0) & dirty_mask) {
        v.fault = Fault::dirty_not_restored;
        return false;
      }
    }
    return true;
  };

  unsigned jobs = opt.jobs ? opt.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::uint64_t>(jobs, std::max<std::uint64_t>(1, total / 4096)));
  jobs = std::max(1u, jobs);
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
  std::vector<Verdict> found(jobs);
  auto worker = [&](unsigned w) {
    std::uint64_t lo = total * w / jobs, hi = total * (w + 1) / jobs;
    Verdict v;
    for (std::uint64_t k = lo; k < hi; ++k) {
      if ((k & 1023) == 0 && best.load(std::memory_order_relaxed) < k) return;
      if (!check(k, v)) {
        v.pass = false;
        found[w] = v;
        std::uint64_t cur = best.load();
        while (k < cur && !best.compare_exchange_weak(cur, k)) {
        }
        return;
      }
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }
  Verdict out;
  out.width = c.num_qubits();
  out.checked = total;
  std::uint64_t b = best.load();
  if (b != std::numeric_limits<std::uint64_t>::max()) {
    for (auto& v : found)
      if (!v.pass && v.state == unpack(b, free)) {
        out = v;
        out.width = c.num_qubits();
        out.checked = total;
      }
  }
  return out;
}

/** Full 2^w basis permutation. Faulting states throw. */
inline std::vector<std::uint32_t> truth_permutation(const Circuit& c) {
  if (c.num_qubits() > 20) throw LimitError("truth_permutation: more than 20 qubits");
  auto gs = detail::compile(c);
  std::vector<std::uint32_t> out(std::size_t{1} << c.num_qubits());
  for (std::uint64_t s = 0; s < out.size(); ++s) {
    RunResult r = run_compiled(gs, s);
    if (!r.ok())
      throw CircuitError("truth_permutation: fault " +
                         std::string(fault_name(r.fault)) + " at gate " +
                         std::to_string(r.gate));
    out[s] = static_cast<std::uint32_t>(r.state);
  }
  return out;
}

/**
 * Action on the system slice with every ancilla at 0. Entry k is the
 * packed output for packed input k.
 */
inline std::vector<std::uint32_t> slice_permutation(const Circuit& c) {
  auto sys = system_slice(c);
  if (sys.size() > 20) throw LimitError("slice_permutation: more than 20 system qubits");
  auto gs = detail::compile(c);
  std::vector<std::uint32_t> out(std::size_t{1} << sys.size());
  for (std::uint64_t k = 0; k < out.size(); ++k) {
    RunResult r = run_compiled(gs, unpack(k, sys));
    if (!r.ok())
      throw CircuitError("slice_permutation: fault " +
                         std::string(fault_name(r.fault)) + " at gate " +
                         std::to_string(r.gate));
    out[k] = static_cast<std::uint32_t>(pack(r.state, sys));
  }
  return out;
}

/** Oracle for an MCX: flips packed bit `tbit` iff all `cbits` are 1. */
inline std::function<std::uint64_t(std::uint64_t)> mcx_oracle(
    std::vector<int> cbits, int tbit) {
  std::uint64_t m = 0;
  for (int b : cbits) m |= std::uint64_t{1} << b;
  return [m, tbit](std::uint64_t v) {
    return (v & m) == m ? v ^ (std::uint64_t{1} << tbit) : v;
  };
}

}  // namespace ccanc
