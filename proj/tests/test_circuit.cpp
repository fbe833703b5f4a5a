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

#include <gtest/gtest.h>

#include "ccanc/circuit.hpp"
#include "ccanc/sim.hpp"
#include "testing.hpp"

namespace ccanc {
namespace {

TEST(Circuit, RolesAndCounts) {
  Circuit c;
  auto s = c.add_qubits(3, Role::system);
  int t = c.add_qubit(Role::target);
  int a = c.add_qubit(Role::clean_ancilla);
  c.add_qubit(Role::dirty_ancilla);
  EXPECT_EQ(s, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(t, 3);
  EXPECT_EQ(a, 4);
  EXPECT_EQ(c.count(Role::system), 3);
  EXPECT_EQ(c.qubits_with(Role::dirty_ancilla), std::vector<int>{5});
}

TEST(Circuit, RejectsBadOperands) {
  Circuit c;
  c.add_qubits(3, Role::system);
  int a = c.add_qubit(Role::clean_ancilla);
  EXPECT_THROW(c.cx(0, 0), CircuitError);
  EXPECT_THROW(c.x(7), CircuitError);
  EXPECT_THROW(c.ccx(0, 1, 1), CircuitError);
  EXPECT_THROW(c.and_gate(0, 1, 2), CircuitError);  // target not clean
  EXPECT_NO_THROW(c.and_gate(0, 1, a));
  EXPECT_THROW(c.append(Gate{GateKind::CCX, {Control{0}}, {1}, nullptr}), CircuitError);
  EXPECT_THROW(c.append(Gate{GateKind::QROM_REF, {Control{0}}, {1}, nullptr}),
               CircuitError);
}

TEST(Circuit, QromRefChecksWidths) {
  Circuit c;
  auto s = c.add_qubits(1, Role::system);
  auto t = c.add_qubits(2, Role::target);
  DataTable d({1, 2, 3}, 2);
  EXPECT_THROW(c.qrom_ref(s, t, d), CircuitError);  // 3 words, 1 selection bit
  c.add_qubit(Role::system);
  EXPECT_NO_THROW(c.qrom_ref({0, 3}, t, d));
}

TEST(Circuit, InverseSwapsAndPair) {
  Circuit c;
  c.add_qubits(2, Role::system);
  int a = c.add_qubit(Role::clean_ancilla);
  c.and_gate(neg(0), Control{1}, a);
  c.cx(a, 0);
  auto inv = inverse(c);
  ASSERT_EQ(inv.size(), 2u);
  EXPECT_EQ(inv.gates()[0].kind, GateKind::CX);
  EXPECT_EQ(inv.gates()[1].kind, GateKind::AND_DAGGER);
  EXPECT_EQ(inv.gates()[1].controls[0], neg(0));
}

TEST(Circuit, InverseUndoesRandomCircuits) {
  testing::Gen g(11);
  for (int rep = 0; rep < 50; ++rep) {
    auto c = g.clifford_toffoli(5, 30);
    auto both = compose(c, inverse(c));
    auto perm = truth_permutation(both);
    for (std::size_t s = 0; s < perm.size(); ++s) ASSERT_EQ(perm[s], s);
  }
}

TEST(Circuit, AppendInverseOfRange) {
  Circuit c;
  c.add_qubits(3, Role::system);
  c.x(0);
  std::size_t from = c.size();
  c.cx(0, 1);
  c.ccx(0, 1, 2);
  std::size_t to = c.size();
  c.x(2);
  append_inverse_of_range(c, from, to);
  ASSERT_EQ(c.size(), 6u);
  EXPECT_EQ(c.gates()[4].kind, GateKind::CCX);
  EXPECT_EQ(c.gates()[5].kind, GateKind::CX);
}

TEST(Circuit, FanoutCostsOneToffoli) {
  Circuit c;
  c.add_qubits(2, Role::system);
  auto t = c.add_qubits(3, Role::target);
  c.ccx_fanout(Control{0}, neg(1), t);
  long tof = 0;
  for (const auto& g : c.gates()) tof += g.is_toffoli();
  EXPECT_EQ(tof, 1);
  auto perm = slice_permutation(c);
  for (std::uint64_t v = 0; v < perm.size(); ++v) {
    std::uint64_t want = ((v & 3) == 1) ? v ^ 0b11100 : v;
    ASSERT_EQ(perm[v], want);
  }
}

TEST(TextFormat, RoundTrip) {
  Circuit c("demo");
  c.add_qubits(2, Role::system);
  int t = c.add_qubit(Role::target);
  int a = c.add_qubit(Role::clean_ancilla);
  c.add_qubit(Role::dirty_ancilla);
  c.and_gate(Control{0}, neg(1), a);
  c.cx(a, t);
  c.and_dagger(Control{0}, neg(1), a);
  c.mcx_ref({Control{0}, neg(4)}, t);
  c.qrom_ref({0, 1}, {t}, DataTable({1, 0, 1, 1}, 1));
  auto text = emit_text(c);
  auto back = parse_text(text);
  EXPECT_EQ(back, c);
  EXPECT_EQ(back.name, "demo");
  EXPECT_EQ(emit_text(back), text);
}

TEST(TextFormat, RandomRoundTrip) {
  testing::Gen g(5);
  for (int rep = 0; rep < 40; ++rep) {
    auto c = g.clifford_toffoli(3 + g.below(6), g.below(40));
    EXPECT_EQ(parse_text(emit_text(c)), c);
  }
}

TEST(TextFormat, ErrorsCarryLineNumbers) {
  auto line_of = [](const std::string& text) {
    try {
      parse_text(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  EXPECT_EQ(line_of("QUBIT 0 system\nFOO 0 ;\n"), 2);
  EXPECT_EQ(line_of("QUBIT 0 system\nQUBIT 0 system\n"), 2);
  EXPECT_EQ(line_of("QUBIT 0 wizard\n"), 1);
  EXPECT_EQ(line_of("QUBIT 0 system\nQUBIT 1 system\nCX 0 1\n"), 3);
  EXPECT_EQ(line_of("QUBIT 0 system\nQUBIT 1 system\nCX 0 ; 5\n"), 3);
  EXPECT_EQ(line_of("QUBIT 0 system\nQUBIT 1 system\n\nAND 0 ; 1\n"), 4);
  EXPECT_EQ(line_of("QUBIT 0 system\nX ; 0\nQUBIT 1 system\n"), 3);
}

}  // namespace
}  // namespace ccanc
