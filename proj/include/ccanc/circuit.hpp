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
#include <cstdint>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ccanc/data_table.hpp"

namespace ccanc {

enum class Role { system, target, clean_ancilla, dirty_ancilla };

enum class GateKind { X, CX, CCX, AND, AND_DAGGER, MCX_REF, QROM_REF };

inline std::string_view role_name(Role r) {
  switch (r) {
    case Role::system: return "system";
    case Role::target: return "target";
    case Role::clean_ancilla: return "clean_ancilla";
    case Role::dirty_ancilla: return "dirty_ancilla";
  }
  return "?";
}

inline std::string_view kind_name(GateKind k) {
  switch (k) {
    case GateKind::X: return "X";
    case GateKind::CX: return "CX";
    case GateKind::CCX: return "CCX";
    case GateKind::AND: return "AND";
    case GateKind::AND_DAGGER: return "AND_DAGGER";
    case GateKind::MCX_REF: return "MCX_REF";
    case GateKind::QROM_REF: return "QROM_REF";
  }
  return "?";
}

struct QubitRef {
  int index = 0;
  Role role = Role::system;
  bool operator==(const QubitRef&) const = default;
};

/** A control line; `positive == false` is an open (negative) control. */
struct Control {
  int qubit = 0;
  bool positive = true;
  bool operator==(const Control&) const = default;
};

inline Control neg(int q) { return Control{q, false}; }
inline Control lit(int q, bool value) { return Control{q, value}; }

struct Gate {
  GateKind kind = GateKind::X;
  std::vector<Control> controls;
  std::vector<int> targets;
  // Only QROM_REF carries data. Selection bit i is controls[i].
  std::shared_ptr<const DataTable> payload;

  bool operator==(const Gate& o) const {
    if (kind != o.kind || controls != o.controls || targets != o.targets)
      return false;
    if (!payload || !o.payload) return !payload && !o.payload;
    return *payload == *o.payload;
  }

  /** Toffoli-class gate: counted by the cost model. */
  bool is_toffoli() const {
    return kind == GateKind::CCX || kind == GateKind::AND;
  }
};

class CircuitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public CircuitError {
 public:
  ParseError(int line, const std::string& what)
      : CircuitError("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/**
 * Ordered gate list over a register table. Qubit i has role roles[i].
 * Every append is checked against the gate invariants.
 */
class Circuit {
 public:
  std::string name;

  Circuit() = default;
  explicit Circuit(std::string n) : name(std::move(n)) {}

  int add_qubit(Role r) {
    roles_.push_back(r);
    return static_cast<int>(roles_.size()) - 1;
  }
  std::vector<int> add_qubits(int count, Role r) {
    std::vector<int> out;
    for (int i = 0; i < count; ++i) out.push_back(add_qubit(r));
    return out;
  }

  int num_qubits() const { return static_cast<int>(roles_.size()); }
  Role role(int q) const { return roles_.at(q); }
  const std::vector<Role>& roles() const { return roles_; }
  QubitRef qubit(int q) const { return {q, roles_.at(q)}; }
  std::vector<int> qubits_with(Role r) const {
    std::vector<int> out;
    for (int i = 0; i < num_qubits(); ++i)
      if (roles_[i] == r) out.push_back(i);
    return out;
  }
  int count(Role r) const {
    return static_cast<int>(std::count(roles_.begin(), roles_.end(), r));
  }

  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  void append(Gate g) {
    check_gate(g);
    gates_.push_back(std::move(g));
  }
  void append(const std::vector<Gate>& gs) {
    for (const auto& g : gs) append(g);
  }

  // Builder shorthands.
  void x(int t) { append(Gate{GateKind::X, {}, {t}, nullptr}); }
  void cx(Control c, int t) { append(Gate{GateKind::CX, {c}, {t}, nullptr}); }
  void cx(int c, int t) { cx(Control{c, true}, t); }
  void ccx(Control a, Control b, int t) {
    append(Gate{GateKind::CCX, {a, b}, {t}, nullptr});
  }
  void ccx(int a, int b, int t) { ccx(Control{a}, Control{b}, t); }
  void and_gate(Control a, Control b, int t) {
    append(Gate{GateKind::AND, {a, b}, {t}, nullptr});
  }
  void and_dagger(Control a, Control b, int t) {
    append(Gate{GateKind::AND_DAGGER, {a, b}, {t}, nullptr});
  }
  void and_gate(int a, int b, int t) { and_gate(Control{a}, Control{b}, t); }
  void and_dagger(int a, int b, int t) {
    and_dagger(Control{a}, Control{b}, t);
  }
  void mcx_ref(std::vector<Control> cs, int t) {
    append(Gate{GateKind::MCX_REF, std::move(cs), {t}, nullptr});
  }
  void qrom_ref(const std::vector<int>& sel, std::vector<int> tgts,
                const DataTable& d) {
    std::vector<Control> cs;
    for (int s : sel) cs.push_back(Control{s});
    append(Gate{GateKind::QROM_REF, std::move(cs), std::move(tgts),
                std::make_shared<const DataTable>(d)});
  }

  /** X on every target of `ts`, controlled by two lines. One Toffoli. */
  void ccx_fanout(Control a, Control b, const std::vector<int>& ts) {
    if (ts.empty()) return;
    for (std::size_t i = 1; i < ts.size(); ++i) cx(ts[0], ts[i]);
    ccx(a, b, ts[0]);
    for (std::size_t i = 1; i < ts.size(); ++i) cx(ts[0], ts[i]);
  }
  void cx_fanout(Control a, const std::vector<int>& ts) {
    for (int t : ts) cx(a, t);
  }

  bool operator==(const Circuit& o) const {
    return roles_ == o.roles_ && gates_ == o.gates_;
  }

  void check_gate(const Gate& g) const {
    auto bad = [&](const std::string& why) {
      throw CircuitError(std::string(kind_name(g.kind)) + ": " + why);
    };
    std::size_t nc = g.controls.size(), nt = g.targets.size();
    switch (g.kind) {
      case GateKind::X:
        if (nc != 0 || nt != 1) bad("expects 0 controls and 1 target");
        break;
      case GateKind::CX:
        if (nc != 1 || nt != 1) bad("expects 1 control and 1 target");
        break;
      case GateKind::CCX:
      case GateKind::AND:
      case GateKind::AND_DAGGER:
        if (nc != 2 || nt != 1) bad("expects 2 controls and 1 target");
        break;
      case GateKind::MCX_REF:
        if (nc < 1 || nt != 1) bad("expects >=1 controls and 1 target");
        break;
      case GateKind::QROM_REF:
        if (!g.payload) bad("missing data payload");
        if (nt != static_cast<std::size_t>(g.payload->m))
          bad("target count must equal word width");
        if ((std::size_t{1} << nc) < g.payload->size())
          bad("too few selection qubits for the table");
        for (const auto& c : g.controls)
          if (!c.positive) bad("selection controls must be positive");
        break;
    }
    std::set<int> seen;
    auto use = [&](int q) {
      if (q < 0 || q >= num_qubits()) bad("unregistered qubit " + std::to_string(q));
      if (!seen.insert(q).second) bad("non-disjoint operands");
    };
    for (const auto& c : g.controls) use(c.qubit);
    for (int t : g.targets) use(t);
    if (g.kind == GateKind::AND || g.kind == GateKind::AND_DAGGER)
      if (roles_[g.targets[0]] != Role::clean_ancilla)
        bad("target must be a clean ancilla");
  }

 private:
  std::vector<Role> roles_;
  std::vector<Gate> gates_;
};

inline Gate inverse_gate(const Gate& g) {
  Gate h = g;
  if (g.kind == GateKind::AND) h.kind = GateKind::AND_DAGGER;
  else if (g.kind == GateKind::AND_DAGGER) h.kind = GateKind::AND;
  return h;
}

/** Gates of a then gates of b over the union register table. */
inline Circuit compose(const Circuit& a, const Circuit& b) {
  Circuit out(a.name.empty() ? b.name : a.name);
  int n = std::max(a.num_qubits(), b.num_qubits());
  for (int i = 0; i < n; ++i) {
    bool ina = i < a.num_qubits(), inb = i < b.num_qubits();
    if (ina && inb && a.role(i) != b.role(i))
      throw CircuitError("compose: role conflict on qubit " + std::to_string(i));
    out.add_qubit(ina ? a.role(i) : b.role(i));
  }
  for (const auto& g : a.gates()) out.append(g);
  for (const auto& g : b.gates()) out.append(g);
  return out;
}

inline Circuit inverse(const Circuit& c) {
  Circuit out(c.name);
  for (Role r : c.roles()) out.add_qubit(r);
  for (auto it = c.gates().rbegin(); it != c.gates().rend(); ++it)
    out.append(inverse_gate(*it));
  return out;
}

/** Appends the inverse of gates [from, to) of c to c. */
inline void append_inverse_of_range(Circuit& c, std::size_t from,
                                    std::size_t to) {
  std::vector<Gate> part(c.gates().begin() + static_cast<long>(from),
                         c.gates().begin() + static_cast<long>(to));
  for (auto it = part.rbegin(); it != part.rend(); ++it)
    c.append(inverse_gate(*it));
}

inline void append_inverse_of_tail(Circuit& c, std::size_t from) {
  append_inverse_of_range(c, from, c.size());
}

// ---------------------------------------------------------------------------
// Text format.
//
//   QUBIT <index> <role>
//   KIND c0 c1~ ; t0 t1
//   QROM_REF s0 s1 ; t0 t1 | <m> <hex words...>
//
// `~` marks an open control. `#` starts a comment line.

inline std::string emit_text(const Circuit& c) {
  std::ostringstream os;
  if (!c.name.empty()) os << "# " << c.name << "\n";
  for (int i = 0; i < c.num_qubits(); ++i)
    os << "QUBIT " << i << " " << role_name(c.role(i)) << "\n";
  for (const auto& g : c.gates()) {
    os << kind_name(g.kind);
    for (const auto& ct : g.controls)
      os << " " << ct.qubit << (ct.positive ? "" : "~");
    os << " ;";
    for (int t : g.targets) os << " " << t;
    if (g.payload) {
      os << " | " << g.payload->m << std::hex;
      for (auto w : g.payload->words) os << " " << w;
      os << std::dec;
    }
    os << "\n";
  }
  return os.str();
}

inline Circuit parse_text(const std::string& text) {
  Circuit c;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  bool body = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto b = line.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    if (line[b] == '#') {
      if (!body && c.num_qubits() == 0 && c.name.empty()) {
        auto rest = line.substr(b + 1);
        auto nb = rest.find_first_not_of(' ');
        if (nb != std::string::npos) c.name = rest.substr(nb);
      }
      continue;
    }
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    if (kind == "QUBIT") {
      if (body) throw ParseError(lineno, "QUBIT after first gate");
      int idx = -1;
      std::string role, extra;
      if (!(ls >> idx >> role) || (ls >> extra))
        throw ParseError(lineno, "malformed QUBIT line");
      if (idx < c.num_qubits()) throw ParseError(lineno, "duplicate qubit index " + std::to_string(idx));
      if (idx != c.num_qubits())
        throw ParseError(lineno, "qubit indices must be consecutive");
      Role r;
      if (role == "system") r = Role::system;
      else if (role == "target") r = Role::target;
      else if (role == "clean_ancilla") r = Role::clean_ancilla;
      else if (role == "dirty_ancilla") r = Role::dirty_ancilla;
      else throw ParseError(lineno, "unknown role `" + role + "`");
      c.add_qubit(r);
      continue;
    }
    body = true;
    Gate g;
    if (kind == "X") g.kind = GateKind::X;
    else if (kind == "CX") g.kind = GateKind::CX;
    else if (kind == "CCX") g.kind = GateKind::CCX;
    else if (kind == "AND") g.kind = GateKind::AND;
    else if (kind == "AND_DAGGER") g.kind = GateKind::AND_DAGGER;
    else if (kind == "MCX_REF") g.kind = GateKind::MCX_REF;
    else if (kind == "QROM_REF") g.kind = GateKind::QROM_REF;
    else throw ParseError(lineno, "unknown gate kind `" + kind + "`");
    std::string tok;
    int stage = 0;  // 0 controls, 1 targets, 2 payload
    std::vector<std::uint64_t> words;
    int width = -1;
    auto as_int = [&](const std::string& s) {
      std::size_t used = 0;
      int v = -1;
      try {
        v = std::stoi(s, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != s.size() || v < 0)
        throw ParseError(lineno, "bad qubit index `" + s + "`");
      return v;
    };
    while (ls >> tok) {
      if (tok == ";") {
        if (stage != 0) throw ParseError(lineno, "unexpected `;`");
        stage = 1;
      } else if (tok == "|") {
        if (stage != 1) throw ParseError(lineno, "unexpected `|`");
        stage = 2;
      } else if (stage == 0) {
        bool pos = true;
        if (tok.back() == '~') {
          pos = false;
          tok.pop_back();
        }
        g.controls.push_back(Control{as_int(tok), pos});
      } else if (stage == 1) {
        g.targets.push_back(as_int(tok));
      } else {
        try {
          if (width < 0) width = std::stoi(tok);
          else words.push_back(std::stoull(tok, nullptr, 16));
        } catch (const std::exception&) {
          throw ParseError(lineno, "bad payload token `" + tok + "`");
        }
      }
    }
    if (stage == 0) throw ParseError(lineno, "missing `;` separator");
    if (stage == 2) {
      if (g.kind != GateKind::QROM_REF) throw ParseError(lineno, "payload on non-QROM gate");
      try {
        g.payload = std::make_shared<const DataTable>(words, width);
      } catch (const std::exception& e) {
        throw ParseError(lineno, e.what());
      }
    }
    try {
      c.append(std::move(g));
    } catch (const CircuitError& e) {
      throw ParseError(lineno, e.what());
    }
  }
  return c;
}

/** Qubit budget a construction may consume or borrow. */
struct AncillaBudget {
  int clean = 0;
  int dirty = 0;
  bool operator==(const AncillaBudget&) const = default;
};

}  // namespace ccanc
