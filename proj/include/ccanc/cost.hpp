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
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ccanc/circuit.hpp"

namespace ccanc {

/**
 * Costs of a circuit. Toffoli-equivalents count CCX and AND; AND_DAGGER
 * is free because it is uncomputed by measurement. One Toffoli is
 * charged as 4 T gates.
 */
struct ResourceReport {
  std::string name;
  long toffoli_count = 0;
  long t_count = 0;
  long toffoli_depth = 0;
  long ccx = 0;
  long and_count = 0;
  long and_dagger = 0;
  long clifford = 0;
  std::map<Role, int> qubit_counts;

  /** Cost if every AND_DAGGER had to be paid as a Toffoli. */
  long unmeasured_toffoli() const { return ccx + and_count + and_dagger; }
  int clean() const { return qc(Role::clean_ancilla); }
  int dirty() const { return qc(Role::dirty_ancilla); }

  std::string record() const {
    std::ostringstream os;
    os << "name=" << name << " toffoli=" << toffoli_count << " t=" << t_count
       << " depth=" << toffoli_depth << " clean=" << clean()
       << " dirty=" << dirty();
    return os.str();
  }

 private:
  int qc(Role r) const {
    auto it = qubit_counts.find(r);
    return it == qubit_counts.end() ? 0 : it->second;
  }
};

/**
 * Toffoli depth. Gates are layered as soon as possible along qubit
 * dependencies; X/CX/AND_DAGGER pass the dependency level through
 * without opening a layer.
 */
inline long toffoli_depth(const Circuit& c) {
  std::vector<long> level(static_cast<std::size_t>(c.num_qubits()), 0);
  long depth = 0;
  for (const auto& g : c.gates()) {
    long l = 0;
    for (const auto& ct : g.controls) l = std::max(l, level[ct.qubit]);
    for (int t : g.targets) l = std::max(l, level[t]);
    if (g.is_toffoli()) ++l;
    for (const auto& ct : g.controls) level[ct.qubit] = l;
    for (int t : g.targets) level[t] = l;
    depth = std::max(depth, l);
  }
  return depth;
}

inline ResourceReport count_resources(const Circuit& c) {
  ResourceReport r;
  r.name = c.name;
  for (const auto& g : c.gates()) {
    switch (g.kind) {
      case GateKind::CCX: ++r.ccx; break;
      case GateKind::AND: ++r.and_count; break;
      case GateKind::AND_DAGGER: ++r.and_dagger; break;
      case GateKind::X:
      case GateKind::CX: ++r.clifford; break;
      case GateKind::MCX_REF:
      case GateKind::QROM_REF:
        throw CircuitError("count_resources: reference gate " +
                           std::string(kind_name(g.kind)) + " is not costed");
    }
  }
  r.toffoli_count = r.ccx + r.and_count;
  r.t_count = 4 * r.toffoli_count;
  r.toffoli_depth = toffoli_depth(c);
  for (Role role : {Role::system, Role::target, Role::clean_ancilla,
                    Role::dirty_ancilla})
    r.qubit_counts[role] = c.count(role);
  return r;
}

inline bool toffoli_depth_bound_check(const Circuit& c, long bound) {
  return toffoli_depth(c) <= bound;
}

}  // namespace ccanc
