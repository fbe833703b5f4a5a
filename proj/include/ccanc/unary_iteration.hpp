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
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ccanc/circuit.hpp"
#include "ccanc/data_table.hpp"
#include "ccanc/mcx.hpp"

// Unary iteration: for each selection value x, apply a product of X gates
// to the target register when the selection register holds x (and the
// control, if any, is 1). Selection bit 0 is the least significant; tree
// level k (1-based) reads bit n - k.

namespace ccanc {

enum class TreeKind { balanced, skew };
enum class AncillaMode { clean_measured, clean_unmeasured, cca, dirty };
enum class MoveKind { DOWN, UP, BOUNCE, LEAF };

inline std::string_view tree_kind_name(TreeKind k) {
  return k == TreeKind::balanced ? "balanced" : "skew";
}
inline std::string_view mode_name(AncillaMode m) {
  switch (m) {
    case AncillaMode::clean_measured: return "clean";
    case AncillaMode::clean_unmeasured: return "clean-um";
    case AncillaMode::cca: return "cca";
    case AncillaMode::dirty: return "dirty";
  }
  return "?";
}
inline std::string_view move_name(MoveKind m) {
  switch (m) {
    case MoveKind::DOWN: return "DOWN";
    case MoveKind::UP: return "UP";
    case MoveKind::BOUNCE: return "BOUNCE";
    case MoveKind::LEAF: return "LEAF";
  }
  return "?";
}

struct TraversalMove {
  MoveKind move;
  int node;
  bool operator==(const TraversalMove&) const = default;
};

/**
 * DFS over the iteration tree. Balanced nodes are heap numbered (root 1,
 * N/2 leaves); `controlled` adds the edge into the root as node 0. Skew
 * nodes are subsets of selection bits 1..n-1 given as bit masks.
 */
inline std::vector<TraversalMove> traversal(int n_sel, TreeKind kind,
                                            bool controlled = false) {
  if (n_sel < 1 || n_sel > 30)
    throw std::invalid_argument("traversal: n_sel must be in [1, 30]");
  std::vector<TraversalMove> out;
  if (kind == TreeKind::balanced) {
    const long leaves = 1L << (n_sel - 1);
    std::function<void(long)> visit = [&](long v) {
      if (v >= leaves) {
        out.push_back({MoveKind::LEAF, static_cast<int>(v)});
        return;
      }
      out.push_back({MoveKind::DOWN, static_cast<int>(v)});
      visit(2 * v);
      out.push_back({MoveKind::BOUNCE, static_cast<int>(v)});
      visit(2 * v + 1);
      out.push_back({MoveKind::UP, static_cast<int>(v)});
    };
    if (controlled) out.push_back({MoveKind::DOWN, 0});
    visit(1);
    if (controlled) out.push_back({MoveKind::UP, 0});
    return out;
  }
  std::function<void(int, int)> visit = [&](int J, int top) {
    if (top + 1 >= n_sel) {
      out.push_back({MoveKind::LEAF, J});
      return;
    }
    for (int b = top + 1; b < n_sel; ++b) {
      out.push_back({b == top + 1 ? MoveKind::DOWN : MoveKind::BOUNCE, J});
      visit(J | (1 << b), b);
    }
    out.push_back({MoveKind::UP, J});
  };
  visit(0, 0);
  return out;
}

/**
 * Ancilla levels a tree over N items needs: a balanced tree pads to the
 * next power of two, a skew tree only needs floor(log2 N).
 */
inline int tree_levels(std::uint64_t N, TreeKind kind) {
  if (N < 1) throw std::invalid_argument("tree_levels: N must be >= 1");
  if (kind == TreeKind::balanced) return ceil_log2(N);
  return std::bit_width(N) - 1;
}

/** skew[j] = XOR of data[i] over every i whose bits are a subset of j. */
inline DataTable skew_transform(const DataTable& d) {
  if (!is_pow2(d.size()))
    throw std::invalid_argument("skew_transform: N must be a power of 2");
  auto w = d.words;
  for (std::size_t bit = 1; bit < w.size(); bit <<= 1)
    for (std::size_t j = 0; j < w.size(); ++j)
      if (j & bit) w[j] ^= w[j ^ bit];
  return DataTable(std::move(w), d.m);
}

/** flips[x]: target indices toggled at selection value x. */
struct LeafPlan {
  int width = 0;
  std::vector<std::vector<int>> flips;

  static LeafPlan from_table(const DataTable& d) {
    LeafPlan p;
    p.width = d.m;
    for (auto w : d.words) {
      std::vector<int> f;
      for (int b = 0; b < d.m; ++b)
        if ((w >> b) & 1) f.push_back(b);
      p.flips.push_back(std::move(f));
    }
    return p;
  }
};

/** A circuit plus the borrowed qubits promised to be 0 when a flag is 1. */
struct Construction {
  Circuit circuit;
  std::vector<std::pair<int, int>> conditionally_clean;
};

namespace detail {

// A control line that may be the constant 1.
struct Lit {
  int q = -1;
  bool pos = true;
  static Lit one() { return {}; }
  bool is_one() const { return q < 0; }
  Control ctrl() const { return Control{q, pos}; }
  bool operator==(const Lit&) const = default;
};

inline Lit on(int q) { return Lit{q, true}; }

// t ^= P & L
inline void xor_and(Circuit& c, Lit P, Lit L, int t, bool use_and) {
  if (P.is_one()) std::swap(P, L);
  if (P.is_one()) {
    c.x(t);
  } else if (L.is_one()) {
    c.cx(P.ctrl(), t);
  } else if (use_and) {
    c.and_gate(P.ctrl(), L.ctrl(), t);
  } else {
    c.ccx(P.ctrl(), L.ctrl(), t);
  }
}

inline void fan(Circuit& c, Lit P, const std::vector<int>& ts) {
  for (int t : ts) {
    if (P.is_one())
      c.x(t);
    else
      c.cx(P.ctrl(), t);
  }
}

inline void fan2(Circuit& c, Lit P, Lit Q, const std::vector<int>& ts) {
  if (P.is_one()) return fan(c, Q, ts);
  if (Q.is_one()) return fan(c, P, ts);
  c.ccx_fanout(P.ctrl(), Q.ctrl(), ts);
}

using Flips = std::function<std::vector<int>(std::uint64_t)>;

struct BounceCfg {
  int n = 0;
  std::vector<int> sel;     // sel[i]: qubit of selection bit i
  Lit root;                 // level 0
  std::vector<int> level;   // level[k], k = 1..n; -1 marks a virtual level 1
  std::vector<bool> clean;  // level[k] is a clean ancilla
  Lit guard;                // leaves fire through CCX(guard, level n)
};

// Levels hold root & [top k bits == x's top k bits]. Moving from x to
// x + 1 with highest changed level j: levels below j + 1 are uncomputed,
// level j is toggled by a CX from its parent, level j + 1 jumps from the
// old subtree's last child to the new subtree's first child with one
// Toffoli on (parent of j, s_j xor s_{j+1}), and the lower levels are
// recomputed.
inline void emit_bounce(Circuit& c, const BounceCfg& g, std::uint64_t N,
                        const Flips& flips) {
  const int n = g.n;
  auto bits = [&](std::uint64_t x) {
    std::vector<int> b(n + 1, 0);
    for (int k = 1; k <= n; ++k) b[k] = static_cast<int>((x >> (n - k)) & 1);
    return b;
  };
  auto selq = [&](int k) { return g.sel[n - k]; };
  auto val = [&](int k, const std::vector<int>& b) -> Lit {
    if (k == 0) return g.root;
    if (g.level[k] < 0) return Lit{selq(k), b[k] == 1};
    return on(g.level[k]);
  };
  auto down = [&](int k, const std::vector<int>& b, bool compute) {
    if (g.level[k] < 0) return;
    xor_and(c, val(k - 1, b), Lit{selq(k), b[k] == 1}, g.level[k],
            compute && g.clean[k]);
  };
  auto leaf = [&](std::uint64_t x, const std::vector<int>& b) {
    auto ts = flips(x);
    if (ts.empty()) return;
    fan2(c, g.guard, val(n, b), ts);
  };
  auto b = bits(0);
  for (int k = 1; k <= n; ++k) down(k, b, true);
  for (std::uint64_t x = 0; x < N; ++x) {
    leaf(x, b);
    if (x + 1 == N) break;
    auto nb = bits(x + 1);
    int j = 1;
    while (nb[j] == b[j]) ++j;
    for (int k = n; k >= j + 2; --k) down(k, b, false);
    Lit P = val(j - 1, b);
    if (g.level[j] >= 0) xor_and(c, P, Lit::one(), g.level[j], false);
    if (j + 1 <= n) {
      int u = selq(j), v = selq(j + 1), t = g.level[j + 1];
      if (P.is_one()) {
        c.cx(u, t);
        c.cx(v, t);
      } else {
        c.cx(u, v);
        c.ccx(P.ctrl(), Control{v}, t);
        c.cx(u, v);
      }
    }
    b = nb;
    for (int k = j + 2; k <= n; ++k) down(k, b, true);
  }
  for (int k = n; k >= 1; --k) down(k, b, false);
}

struct BinaryCfg {
  int n = 0;
  std::vector<int> sel;
  Lit root;
  std::vector<int> level;  // level[k], k = 1..n; -1 at k = n: leaf pairs by CCX
  bool measured = false;   // AND in, AND_DAGGER out
};

// One ancilla per node, computed as parent & ~s, flipped to parent & s by
// a CX between the two subtrees, then uncomputed.
inline void emit_binary(Circuit& c, const BinaryCfg& g, std::uint64_t N,
                        const Flips& flips) {
  const int n = g.n;
  std::function<void(Lit, int, std::uint64_t)> rec = [&](Lit q, int k,
                                                         std::uint64_t lo) {
    if (k == n) {
      fan(c, q, flips(lo));
      return;
    }
    const std::uint64_t half = std::uint64_t{1} << (n - k - 1);
    const bool right = lo + half < N;
    const int s = g.sel[n - 1 - k];
    if (q.is_one()) {
      rec(Lit{s, false}, k + 1, lo);
      if (right) rec(Lit{s, true}, k + 1, lo + half);
      return;
    }
    if (g.level[k + 1] < 0) {
      fan2(c, q, Lit{s, false}, flips(lo));
      if (right) fan2(c, q, Lit{s, true}, flips(lo + half));
      return;
    }
    const int a = g.level[k + 1];
    xor_and(c, q, Lit{s, false}, a, g.measured);
    rec(on(a), k + 1, lo);
    if (right) {
      c.cx(q.ctrl(), a);
      rec(on(a), k + 1, lo + half);
    }
    if (g.measured)
      c.and_dagger(q.ctrl(), Control{s, right}, a);
    else
      c.ccx(q.ctrl(), Control{s, right}, a);
  };
  rec(g.root, 0, 0);
}

struct SkewCfg {
  int n = 0;
  std::vector<int> sel;
  Lit root;
  std::vector<int> host;     // host[d], d = 1..n-1; -1 where unused
  std::vector<bool> clean;   // host[d] is a clean ancilla
  std::vector<bool> trusted; // host[d] is valid on every branch
  bool measured = false;
  Lit guard;                 // untrusted node outputs go through CCX(guard, .)
  Lit pair;                  // guard & s_0 on its own qubit, or one()
};

// Selection x receives skew[j] for every j whose bits are a subset of x's.
// Node J (a subset of bits 1..n-1) holds root & AND(s_b, b in J); it feeds
// skew[J] directly and skew[J | 1] through one Toffoli with s_0. Children
// add one larger bit each; siblings are reached by one Toffoli on
// (node, s_b xor s_b').
inline void emit_skew(Circuit& c, const SkewCfg& g, const Flips& skew_flips) {
  const int n = g.n;
  std::function<void(std::uint64_t, Lit, int, int)> rec =
      [&](std::uint64_t J, Lit x, int d, int top) {
        auto node = skew_flips(J);
        bool trusted = x.is_one() || d == 0 || x.q != g.host[d] || g.trusted[d];
        if (!trusted && !g.guard.is_one())
          fan2(c, g.guard, x, node);
        else
          fan(c, x, node);
        auto pr = skew_flips(J | 1);
        if (!g.pair.is_one()) {
          if (x.is_one() || x == g.guard)
            fan(c, g.pair, pr);
          else
            fan2(c, x, g.pair, pr);
        } else {
          fan2(c, x, Lit{g.sel[0], true}, pr);
        }
        if (top + 1 >= n) return;
        if (x.is_one()) {
          for (int b = top + 1; b < n; ++b)
            rec(J | (std::uint64_t{1} << b), on(g.sel[b]), d + 1, b);
          return;
        }
        const int h = g.host[d + 1];
        int prev = -1;
        for (int b = top + 1; b < n; ++b) {
          if (prev < 0) {
            xor_and(c, x, on(g.sel[b]), h, g.clean[d + 1]);
          } else {
            c.cx(g.sel[prev], g.sel[b]);
            c.ccx(x.ctrl(), Control{g.sel[b]}, h);
            c.cx(g.sel[prev], g.sel[b]);
          }
          rec(J | (std::uint64_t{1} << b), on(h), d + 1, b);
          prev = b;
        }
        if (g.measured)
          c.and_dagger(x.ctrl(), Control{g.sel[prev]}, h);
        else
          c.ccx(x.ctrl(), Control{g.sel[prev]}, h);
      };
  rec(0, g.root, 0, 0);
}

// Skew-transformed flip sets: symmetric difference over subsets.
inline std::vector<std::vector<int>> skew_sets(
    const std::vector<std::vector<int>>& flips, int width) {
  std::vector<std::uint64_t> masks;
  std::vector<std::vector<std::uint64_t>> wide;
  const int words = (width + 63) / 64;
  for (const auto& f : flips) {
    std::vector<std::uint64_t> w(static_cast<std::size_t>(std::max(words, 1)));
    for (int t : f) w[t / 64] ^= std::uint64_t{1} << (t % 64);
    wide.push_back(std::move(w));
  }
  for (std::size_t bit = 1; bit < wide.size(); bit <<= 1)
    for (std::size_t j = 0; j < wide.size(); ++j)
      if (j & bit)
        for (std::size_t k = 0; k < wide[j].size(); ++k)
          wide[j][k] ^= wide[j ^ bit][k];
  std::vector<std::vector<int>> out;
  for (const auto& w : wide) {
    std::vector<int> f;
    for (int t = 0; t < width; ++t)
      if ((w[t / 64] >> (t % 64)) & 1) f.push_back(t);
    out.push_back(std::move(f));
  }
  return out;
}

inline void check_plan(int n_sel, TreeKind kind, const LeafPlan& plan) {
  if (n_sel < 1 || n_sel > 30)
    throw std::invalid_argument("unary_iterate: n_sel must be in [1, 30]");
  const std::uint64_t full = std::uint64_t{1} << n_sel;
  if (plan.flips.empty() || plan.flips.size() > full)
    throw std::invalid_argument("unary_iterate: plan size must be in [1, 2^n]");
  if (kind == TreeKind::skew && plan.flips.size() != full)
    throw std::invalid_argument("unary_iterate: skew trees need N = 2^n");
  for (const auto& f : plan.flips)
    for (int t : f)
      if (t < 0 || t >= plan.width)
        throw std::invalid_argument("unary_iterate: bad target index");
}

inline std::vector<std::vector<int>> padded(const LeafPlan& plan, int n) {
  auto f = plan.flips;
  f.resize(std::size_t{1} << n);
  return f;
}

// Uncontrolled constant-clean iteration. The top half of the selection
// picks a block through a flag f; inside a block the flag roots a tree
// over the bottom half whose deeper levels live on the top selection
// bits, which read 0 while f is 1.
inline void emit_split_cca(Circuit& c, TreeKind kind, const std::vector<int>& sel,
                           const std::vector<int>& tg, const LeafPlan& plan) {
  const int n = static_cast<int>(sel.size());
  const int t = n / 2, b = n - t;
  const std::uint64_t block = std::uint64_t{1} << b;
  auto flips = padded(plan, n);
  const int f = c.add_qubit(Role::clean_ancilla);
  const int a1 = c.add_qubit(Role::clean_ancilla);
  const int a2 = kind == TreeKind::skew && b >= 1
                     ? c.add_qubit(Role::clean_ancilla)
                     : -1;
  std::vector<int> top(sel.begin() + b, sel.end());
  std::vector<int> bottom(sel.begin(), sel.begin() + b);
  auto toggle = [&](std::uint64_t p, int skip) {
    std::vector<int> ctrls;
    std::vector<int> flipped;
    for (int i = 0; i < t; ++i) {
      if (i == skip) continue;
      ctrls.push_back(top[i]);
      if (!((p >> i) & 1)) flipped.push_back(top[i]);
    }
    for (int q : flipped) c.x(q);
    emit_mcx_one(c, ctrls, f, a1, true, false);
    for (int q : flipped) c.x(q);
  };
  auto map = [&](const std::vector<int>& idx) {
    std::vector<int> out;
    for (int i : idx) out.push_back(tg[i]);
    return out;
  };
  const std::uint64_t K = std::uint64_t{1} << t;
  for (std::uint64_t i = 0; i < K; ++i) {
    const std::uint64_t p = i ^ (i >> 1);
    if (i == 0)
      toggle(p, -1);
    else
      toggle(p, std::countr_zero(i));
    std::vector<int> conj;
    for (int k = 0; k < t; ++k)
      if ((p >> k) & 1) conj.push_back(top[k]);
    for (int q : conj) c.x(q);
    std::vector<std::vector<int>> part(flips.begin() + p * block,
                                       flips.begin() + (p + 1) * block);
    if (kind == TreeKind::balanced) {
      BounceCfg g;
      g.n = b;
      g.sel = bottom;
      g.root = on(f);
      g.level.assign(b + 1, -1);
      g.clean.assign(b + 1, false);
      g.level[1] = a1;
      g.clean[1] = true;
      for (int k = 2; k <= b; ++k) g.level[k] = top[k - 2];
      g.guard = on(f);
      emit_bounce(c, g, block, [&](std::uint64_t x) { return map(part[x]); });
    } else {
      auto sk = skew_sets(part, plan.width);
      SkewCfg g;
      g.n = b;
      g.sel = bottom;
      g.root = on(f);
      g.host.assign(b, -1);
      g.clean.assign(b, false);
      g.trusted.assign(b, false);
      if (b >= 2) {
        g.host[1] = a1;
        g.clean[1] = true;
        g.trusted[1] = true;
      }
      for (int d = 2; d < b; ++d) g.host[d] = top[d - 2];
      g.guard = on(f);
      g.pair = on(a2);
      c.and_gate(f, bottom[0], a2);
      emit_skew(c, g, [&](std::uint64_t j) { return map(sk[j]); });
      c.ccx(f, bottom[0], a2);
    }
    for (int q : conj) c.x(q);
  }
  toggle((K - 1) ^ ((K - 1) >> 1), -1);
}

}  // namespace detail

/**
 * Unary iteration over n_sel selection bits. Qubits: selection 0..n-1,
 * then the control (if any), then `plan.width` targets, then ancillae.
 */
inline Construction unary_iterate(int n_sel, TreeKind kind, AncillaMode mode,
                                  const LeafPlan& plan, bool controlled) {
  detail::check_plan(n_sel, kind, plan);
  using detail::Lit;
  using detail::on;
  Construction out;
  Circuit& c = out.circuit;
  c.name = std::string("unary_") + std::string(tree_kind_name(kind)) + "_" +
           std::string(mode_name(mode));
  const int n = n_sel;
  auto sel = c.add_qubits(n, Role::system);
  const int ctl = controlled ? c.add_qubit(Role::system) : -1;
  auto tg = c.add_qubits(plan.width, Role::target);
  const Lit root = controlled ? on(ctl) : Lit::one();
  const std::uint64_t N = plan.flips.size();
  auto map = [&](const std::vector<int>& idx) {
    std::vector<int> r;
    for (int i : idx) r.push_back(tg[i]);
    return r;
  };
  auto flips = [&](std::uint64_t x) {
    return x < N ? map(plan.flips[x]) : std::vector<int>{};
  };
  std::vector<std::vector<int>> sk;
  if (kind == TreeKind::skew) sk = detail::skew_sets(plan.flips, plan.width);
  auto skew_flips = [&](std::uint64_t j) { return map(sk[j]); };

  if (mode == AncillaMode::cca && !controlled) {
    if (n >= 2) {
      detail::emit_split_cca(c, kind, sel, tg, plan);
      return out;
    }
    mode = AncillaMode::clean_unmeasured;  // a single level needs no ancilla
  }

  if (mode == AncillaMode::dirty) {
    // Every host starts in an arbitrary state; the read is affine in the
    // root d, so running it for d and for d ^ control cancels the rest.
    const int d = c.add_qubit(Role::dirty_ancilla);
    std::function<void()> read;
    if (kind == TreeKind::balanced) {
      detail::BinaryCfg g;
      g.n = n;
      g.sel = sel;
      g.root = on(d);
      g.level.assign(n + 1, -1);
      for (int k = 1; k < n; ++k) g.level[k] = c.add_qubit(Role::dirty_ancilla);
      read = [&c, g, N, flips] { detail::emit_binary(c, g, N, flips); };
    } else {
      detail::SkewCfg g;
      g.n = n;
      g.sel = sel;
      g.root = on(d);
      g.host.assign(n, -1);
      g.clean.assign(n, false);
      g.trusted.assign(n, true);
      for (int k = 1; k < n; ++k) g.host[k] = c.add_qubit(Role::dirty_ancilla);
      read = [&c, g, skew_flips] { detail::emit_skew(c, g, skew_flips); };
    }
    auto tog = [&] {
      if (controlled)
        c.cx(ctl, d);
      else
        c.x(d);
    };
    read();
    tog();
    read();
    tog();
    return out;
  }

  const bool cca = mode == AncillaMode::cca;
  const bool measured = mode == AncillaMode::clean_measured;
  // Level k sits on a host that is only clean while the control is 1.
  auto host = [&](int k) {
    if (cca && k >= 2) {
      int h = c.add_qubit(Role::dirty_ancilla);
      out.conditionally_clean.push_back({h, ctl});
      return h;
    }
    return c.add_qubit(Role::clean_ancilla);
  };

  if (kind == TreeKind::balanced) {
    if (measured) {
      detail::BinaryCfg g;
      g.n = n;
      g.sel = sel;
      g.root = root;
      g.measured = true;
      g.level.assign(n + 1, -1);
      for (int k = controlled ? 1 : 2; k <= n; ++k)
        g.level[k] = c.add_qubit(Role::clean_ancilla);
      detail::emit_binary(c, g, N, flips);
      return out;
    }
    detail::BounceCfg g;
    g.n = n;
    g.sel = sel;
    g.root = root;
    g.level.assign(n + 1, -1);
    g.clean.assign(n + 1, false);
    for (int k = controlled ? 1 : 2; k <= n; ++k) {
      g.level[k] = host(k);
      g.clean[k] = c.role(g.level[k]) == Role::clean_ancilla;
    }
    g.guard = cca ? root : Lit::one();
    // Garbage on borrowed levels only cancels over the whole tree, so a
    // cca traversal pads to 2^n instead of stopping at N - 1.
    detail::emit_bounce(c, g, cca ? std::uint64_t{1} << n : N, flips);
    return out;
  }

  detail::SkewCfg g;
  g.n = n;
  g.sel = sel;
  g.root = root;
  g.measured = measured;
  g.host.assign(n, -1);
  g.clean.assign(n, false);
  g.trusted.assign(n, false);
  for (int d = controlled ? 1 : 2; d < n; ++d) {
    g.host[d] = host(d);
    g.clean[d] = g.trusted[d] = c.role(g.host[d]) == Role::clean_ancilla;
  }
  int a2 = -1;
  if (cca) {
    g.guard = root;
    a2 = c.add_qubit(Role::clean_ancilla);
    g.pair = on(a2);
    c.and_gate(ctl, sel[0], a2);
  }
  detail::emit_skew(c, g, skew_flips);
  if (cca) c.ccx(ctl, sel[0], a2);
  return out;
}

/** Reference QROM: one QROM_REF gate. Selection 0..n-1, targets after. */
inline Circuit qrom_reference(const DataTable& d) {
  Circuit c("qrom_reference");
  auto sel = c.add_qubits(std::max(1, d.address_bits()), Role::system);
  auto tg = c.add_qubits(d.m, Role::target);
  c.qrom_ref(sel, tg, d);
  return c;
}

/** Oracle on the packed system slice: targets ^= data[selection]. */
inline std::function<std::uint64_t(std::uint64_t)> qrom_oracle(
    const DataTable& d, int n_sel, bool controlled = false) {
  const std::uint64_t smask = (std::uint64_t{1} << n_sel) - 1;
  const int tshift = n_sel + (controlled ? 1 : 0);
  return [d, smask, tshift, n_sel, controlled](std::uint64_t v) {
    if (controlled && !((v >> n_sel) & 1)) return v;
    return v ^ (d.at(v & smask) << tshift);
  };
}

/**
 * Dirty-ancilla QROM. The top k selection bits pick one of K = 2^k
 * blocks; each block is read by an affine tree rooted at the borrowed
 * qubit d, after d has been toggled by [top == p]. One extra read of the
 * XOR of all blocks with d untoggled cancels everything that does not
 * depend on d.
 */
inline Circuit qrom_dirty(const DataTable& data, TreeKind kind,
                          std::optional<int> k_split = std::nullopt) {
  const int n = std::max(1, data.address_bits());
  const int k = k_split.value_or(std::min((n + 1) / 2, n - 1));
  if (k < 0 || k > n - 1)
    throw std::invalid_argument("qrom_dirty: k_split must be in [0, n-1]");
  if (kind == TreeKind::skew && !is_pow2(data.size()))
    throw std::invalid_argument("qrom_dirty: skew trees need N = 2^n");
  const int b = n - k;
  Circuit c(std::string("qrom_dirty_") + std::string(tree_kind_name(kind)));
  auto sel = c.add_qubits(n, Role::system);
  auto tg = c.add_qubits(data.m, Role::target);
  const int d = c.add_qubit(Role::dirty_ancilla);
  std::vector<int> hosts;
  for (int i = 1; i < b; ++i) hosts.push_back(c.add_qubit(Role::dirty_ancilla));
  std::vector<int> bottom(sel.begin(), sel.begin() + b);
  std::vector<int> top(sel.begin() + b, sel.end());
  const std::uint64_t block = std::uint64_t{1} << b;
  const std::uint64_t K = std::uint64_t{1} << k;

  auto words_of = [&](std::uint64_t p) {
    std::vector<std::uint64_t> w(block);
    for (std::uint64_t i = 0; i < block; ++i) w[i] = data.at(p * block + i);
    return w;
  };
  auto read = [&](const std::vector<std::uint64_t>& w) {
    auto plan = LeafPlan::from_table(DataTable(w, data.m));
    auto map = [&](const std::vector<int>& idx) {
      std::vector<int> r;
      for (int i : idx) r.push_back(tg[i]);
      return r;
    };
    if (kind == TreeKind::balanced) {
      detail::BinaryCfg g;
      g.n = b;
      g.sel = bottom;
      g.root = detail::on(d);
      g.level.assign(b + 1, -1);
      for (int i = 1; i < b; ++i) g.level[i] = hosts[i - 1];
      detail::emit_binary(c, g, block,
                          [&](std::uint64_t x) { return map(plan.flips[x]); });
    } else {
      auto sk = detail::skew_sets(plan.flips, plan.width);
      detail::SkewCfg g;
      g.n = b;
      g.sel = bottom;
      g.root = detail::on(d);
      g.host.assign(b, -1);
      g.clean.assign(b, false);
      g.trusted.assign(b, true);
      for (int i = 1; i < b; ++i) g.host[i] = hosts[i - 1];
      detail::emit_skew(c, g, [&](std::uint64_t j) { return map(sk[j]); });
    }
  };
  // d ^= [top bits other than `skip` equal p's]
  auto toggle = [&](std::uint64_t p, int skip) {
    std::vector<Control> ctrls;
    for (int i = 0; i < k; ++i)
      if (i != skip) ctrls.push_back(Control{top[i], ((p >> i) & 1) != 0});
    std::vector<int> borrowed(bottom);
    borrowed.insert(borrowed.end(), hosts.begin(), hosts.end());
    borrowed.insert(borrowed.end(), tg.begin(), tg.end());
    emit_mcx_borrowed(c, ctrls, d, borrowed);
  };

  std::vector<std::uint64_t> all(block, 0);
  for (std::uint64_t p = 0; p < K; ++p) {
    auto w = words_of(p);
    for (std::uint64_t i = 0; i < block; ++i) all[i] ^= w[i];
  }
  read(all);
  for (std::uint64_t i = 0; i < K; ++i) {
    const std::uint64_t p = i ^ (i >> 1);
    toggle(p, i == 0 ? -1 : std::countr_zero(i));
    read(words_of(p));
  }
  toggle((K - 1) ^ ((K - 1) >> 1), -1);
  return c;
}

/** Table lookup |s>|t> -> |s>|t ^ data[s]>, uncontrolled. */
inline Construction qrom(const DataTable& data, TreeKind kind,
                         AncillaMode mode) {
  if (mode == AncillaMode::dirty) return {qrom_dirty(data, kind), {}};
  const int n = std::max(1, data.address_bits());
  auto out = unary_iterate(n, kind, mode, LeafPlan::from_table(data), false);
  out.circuit.name = std::string("qrom_") + std::string(tree_kind_name(kind)) +
                     "_" + std::string(mode_name(mode));
  return out;
}

}  // namespace ccanc
