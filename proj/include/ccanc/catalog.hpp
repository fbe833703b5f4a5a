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

#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccanc/and_ladder.hpp"
#include "ccanc/cost.hpp"
#include "ccanc/mcx.hpp"
#include "ccanc/sim.hpp"
#include "ccanc/unary_iteration.hpp"

// Named constructions with their canonical oracles, and the cost table.

namespace ccanc {

struct BuildParams {
  int n = 0;
  std::uint64_t N = 0;
  int m = 0;
  std::uint64_t c = 0;
  TreeKind kind = TreeKind::balanced;
  AncillaMode mode = AncillaMode::clean_measured;
  bool controlled = true;
  std::optional<DataTable> data;
  std::uint64_t seed = 1;
};

struct Built {
  Construction construction;
  VerificationSpec spec;
};

inline const std::vector<std::string>& construction_names() {
  static const std::vector<std::string> names = {
      "mcx-1c", "mcx-2c-log", "mcx-1d", "mcx-2d-log", "mcx-ladder",
      "incrementer", "ltc", "unary", "qrom", "qrom-dirty"};
  return names;
}

inline std::optional<AncillaMode> parse_mode(const std::string& s) {
  for (auto m : {AncillaMode::clean_measured, AncillaMode::clean_unmeasured,
                 AncillaMode::cca, AncillaMode::dirty})
    if (mode_name(m) == s) return m;
  return std::nullopt;
}

inline std::optional<TreeKind> parse_kind(const std::string& s) {
  if (s == "balanced") return TreeKind::balanced;
  if (s == "skew") return TreeKind::skew;
  return std::nullopt;
}

namespace detail {

inline std::uint64_t need_N(const BuildParams& p, const char* who) {
  if (p.data) return p.data->size();
  if (p.N >= 1) return p.N;
  if (p.n >= 1) return std::uint64_t{1} << p.n;
  throw std::invalid_argument(std::string(who) + ": needs --N, --n or --data");
}

// Table used when no data file is given: seeded random words, m bits.
inline DataTable default_table(const BuildParams& p, const char* who) {
  if (p.data) return *p.data;
  const std::uint64_t N = need_N(p, who);
  const int m = p.m > 0 ? p.m : 4;
  if (m > 63) throw std::invalid_argument(std::string(who) + ": m must be <= 63");
  std::mt19937_64 rng(p.seed);
  const std::uint64_t mask = (std::uint64_t{1} << m) - 1;
  std::vector<std::uint64_t> w(N);
  for (auto& x : w) x = rng() & mask;
  return DataTable(std::move(w), m);
}

inline std::vector<int> iota_bits(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace detail

/**
 * Builds a named construction. "unary" iterates over N selection values
 * and at value x flips the 1-bits of word x; without a data file the
 * word is x + 1, so every leaf acts.
 */
inline Built build(const std::string& name, const BuildParams& p) {
  Built b;
  auto mcx = [&](Circuit c, int n) {
    b.construction.circuit = std::move(c);
    b.spec.oracle = mcx_oracle(detail::iota_bits(n), n);
  };
  if (name == "mcx-1c") {
    mcx(mcx_one_clean(p.n), p.n);
  } else if (name == "mcx-2c-log") {
    mcx(mcx_two_clean_logdepth(p.n), p.n);
  } else if (name == "mcx-1d") {
    mcx(mcx_one_dirty(p.n), p.n);
  } else if (name == "mcx-2d-log") {
    mcx(mcx_two_dirty_logdepth(p.n), p.n);
  } else if (name == "mcx-ladder") {
    mcx(mcx_borrowed_ladder(p.n), p.n);
  } else if (name == "incrementer") {
    b.construction.circuit = incrementer(p.n);
    b.spec.oracle = increment_oracle(p.n);
  } else if (name == "ltc") {
    b.construction.circuit = less_than_const(p.n, p.c);
    b.spec.oracle = less_than_oracle(p.n, p.c);
  } else if (name == "unary") {
    DataTable d;
    if (p.data) {
      d = *p.data;
    } else {
      const std::uint64_t N = detail::need_N(p, "unary");
      if (N > (std::uint64_t{1} << 20))
        throw std::invalid_argument("unary: N must be <= 2^20");
      std::vector<std::uint64_t> w(N);
      for (std::uint64_t x = 0; x < N; ++x) w[x] = x + 1;
      d = DataTable(std::move(w), std::bit_width(N));
    }
    const int n = std::max(1, d.address_bits());
    b.construction =
        unary_iterate(n, p.kind, p.mode, LeafPlan::from_table(d), p.controlled);
    b.spec.oracle = qrom_oracle(d, n, p.controlled);
  } else if (name == "qrom" || name == "qrom-dirty") {
    auto d = detail::default_table(p, name.c_str());
    const int n = std::max(1, d.address_bits());
    if (name == "qrom-dirty")
      b.construction.circuit = qrom_dirty(d, p.kind);
    else
      b.construction = qrom(d, p.kind, p.mode);
    b.spec.oracle = qrom_oracle(d, n, false);
  } else {
    throw std::invalid_argument("unknown construction: " + name);
  }
  b.spec.conditionally_clean = b.construction.conditionally_clean;
  return b;
}

// ---------------------------------------------------------------------------
// Cost table

struct TableRow {
  std::string construction;
  std::string ancilla;
  std::string size;
  std::string formula;   // as printed
  long expected = 0;     // formula value at this size
  bool upper_bound = false;
  long toffoli = 0;
  long t_count = 0;
  long depth = 0;
  int clean = 0;
  int dirty = 0;
  std::string note;

  long delta() const { return toffoli - expected; }
  bool ok() const { return upper_bound ? toffoli <= expected : toffoli == expected; }
};

namespace detail {

// Every leaf acts: balanced trees get one flip per leaf, skew trees get
// data whose transform is all ones.
inline LeafPlan full_plan(std::uint64_t N, TreeKind kind) {
  LeafPlan p;
  p.width = 1;
  p.flips.assign(N, {});
  if (kind == TreeKind::balanced)
    for (auto& f : p.flips) f = {0};
  else
    p.flips[0] = {0};
  return p;
}

inline int log2n(std::uint64_t N) { return std::bit_width(N) - 1; }

}  // namespace detail

/** Rows of the comparison table. Counts are computed, not simulated. */
inline std::vector<TableRow> cost_table() {
  std::vector<TableRow> rows;
  auto fill = [](TableRow& r, const Circuit& c, bool unmeasured) {
    auto rep = count_resources(c);
    r.toffoli = unmeasured ? rep.unmeasured_toffoli() : rep.toffoli_count;
    r.t_count = 4 * r.toffoli;
    r.depth = rep.toffoli_depth;
    r.clean = rep.clean();
    r.dirty = rep.dirty();
  };
  for (int n : {19, 32, 64}) {
    struct M {
      const char* name;
      const char* anc;
      const char* f;
      long v;
      Circuit c;
    };
    std::vector<M> ms;
    ms.push_back({"mcx-1c", "1 clean", "2n-3", 2L * n - 3, mcx_one_clean(n)});
    ms.push_back({"mcx-2c-log", "2 clean", "2n-3", 2L * n - 3, mcx_two_clean_logdepth(n)});
    ms.push_back({"mcx-1d", "1 dirty", "4n-8", 4L * n - 8, mcx_one_dirty(n)});
    ms.push_back({"mcx-2d-log", "2 dirty", "4n-8", 4L * n - 8, mcx_two_dirty_logdepth(n)});
    for (auto& m : ms) {
      TableRow r{m.name, m.anc, "n=" + std::to_string(n), m.f, m.v};
      fill(r, m.c, true);
      r.note = "AND_DAGGER charged";
      rows.push_back(std::move(r));
    }
  }
  for (int n : {19, 32, 64}) {
    TableRow r{"incrementer", "log* clean", "n=" + std::to_string(n), "<=3n", 3L * n, true};
    fill(r, incrementer(n), false);
    rows.push_back(std::move(r));
  }
  for (int n : {19, 32, 63}) {
    // alternating bits: every comparison step is live
    std::uint64_t c = 0;
    for (int i = 0; i < n; i += 2) c |= std::uint64_t{1} << i;
    TableRow r{"ltc", "log* clean", "n=" + std::to_string(n), "<=3n", 3L * n, true};
    fill(r, less_than_const(n, c), false);
    r.note = "c=0b0101..";
    rows.push_back(std::move(r));
  }
  for (std::uint64_t N : {16u, 64u, 256u}) {
    const int n = detail::log2n(N);
    const long L = static_cast<long>(N);
    const std::string sz = "N=" + std::to_string(N);
    struct U {
      const char* name;
      const char* anc;
      const char* f;
      long v;
      TreeKind kind;
      AncillaMode mode;
      bool controlled;
    };
    const U us[] = {
        {"unary-balanced", "n clean", "N-1", L - 1, TreeKind::balanced,
         AncillaMode::clean_measured, true},
        {"unary-balanced", "n clean, no meas", "1.5N-1", 3 * L / 2 - 1,
         TreeKind::balanced, AncillaMode::clean_unmeasured, true},
        {"unary-balanced", "n clean, no meas", "1.5N-3", 3 * L / 2 - 3,
         TreeKind::balanced, AncillaMode::clean_unmeasured, false},
        {"unary-skew", "n clean, no meas", "1.25N-1", 5 * L / 4 - 1,
         TreeKind::skew, AncillaMode::clean_unmeasured, true},
        {"unary-balanced", "cca", "2.5N-1", 5 * L / 2 - 1, TreeKind::balanced,
         AncillaMode::cca, true},
        {"unary-skew", "cca", "2.25N-1", 9 * L / 4 - 1, TreeKind::skew,
         AncillaMode::cca, true},
    };
    for (const auto& u : us) {
      TableRow r{u.name, u.anc, sz + (u.controlled ? " ctl" : ""), u.f, u.v};
      auto c = unary_iterate(n, u.kind, u.mode, detail::full_plan(N, u.kind),
                             u.controlled);
      fill(r, c.circuit, false);
      if (!u.controlled)
        r.note = "root level is a selection bit; its bounce is Clifford";
      else if (u.mode == AncillaMode::cca && u.kind == TreeKind::skew)
        r.note = "node outputs on clean levels need no guard";
      rows.push_back(std::move(r));
    }
    for (auto kind : {TreeKind::balanced, TreeKind::skew}) {
      const bool bal = kind == TreeKind::balanced;
      const long base = bal ? 3 * L / 2 : 5 * L / 4;
      const long slack = static_cast<long>(8.0 * n * std::sqrt(static_cast<double>(N)));
      TableRow r{bal ? "qrom-dirty-balanced" : "qrom-dirty-skew", "n dirty", sz,
                 bal ? "<=1.5N+8n*sqrt(N)" : "<=1.25N+8n*sqrt(N)", base + slack,
                 true};
      std::mt19937_64 rng(N);
      std::vector<std::uint64_t> w(N);
      for (auto& x : w) x = rng() & 15;
      fill(r, qrom_dirty(DataTable(w, 4), kind), false);
      r.note = "random 4-bit data";
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

inline std::string format_table(const std::vector<TableRow>& rows, bool csv) {
  std::ostringstream os;
  const char* head[] = {"construction", "ancilla", "size", "formula", "expected",
                        "toffoli", "delta", "t", "depth", "clean", "dirty",
                        "status", "note"};
  auto cells = [](const TableRow& r) {
    return std::vector<std::string>{
        r.construction, r.ancilla, r.size, r.formula,
        std::to_string(r.expected), std::to_string(r.toffoli),
        (r.delta() > 0 ? "+" : "") + std::to_string(r.delta()),
        std::to_string(r.t_count), std::to_string(r.depth),
        std::to_string(r.clean), std::to_string(r.dirty),
        r.ok() ? "ok" : "MISMATCH", r.note};
  };
  if (csv) {
    for (std::size_t i = 0; i < std::size(head); ++i)
      os << (i ? "," : "") << head[i];
    os << "\n";
    for (const auto& r : rows) {
      auto cs = cells(r);
      for (std::size_t i = 0; i < cs.size(); ++i) os << (i ? "," : "") << cs[i];
      os << "\n";
    }
    return os.str();
  }
  std::vector<std::size_t> w(std::size(head));
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::string(head[i]).size();
  for (const auto& r : rows) {
    auto cs = cells(r);
    for (std::size_t i = 0; i < cs.size(); ++i) w[i] = std::max(w[i], cs[i].size());
  }
  auto line = [&](const std::vector<std::string>& cs) {
    std::string s;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      std::string cell = cs[i];
      if (i + 1 < cs.size()) cell.resize(w[i], ' ');
      s += (i ? "  " : "") + cell;
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    os << s << "\n";
  };
  line(std::vector<std::string>(std::begin(head), std::end(head)));
  for (const auto& r : rows) line(cells(r));
  return os.str();
}

}  // namespace ccanc
