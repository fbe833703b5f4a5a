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

#include "ccanc/and_ladder.hpp"
#include "ccanc/cost.hpp"
#include "ccanc/sim.hpp"
#include "golden.hpp"
#include "testing.hpp"

namespace ccanc {
namespace {

TEST(Log2Star, Values) {
  EXPECT_EQ(log2_star(1), 0);
  EXPECT_EQ(log2_star(2), 1);
  EXPECT_EQ(log2_star(4), 2);
  EXPECT_EQ(log2_star(16), 3);
  EXPECT_EQ(log2_star(19), 4);
  EXPECT_EQ(log2_star(65536), 4);
  EXPECT_EQ(log2_star(65537), 5);
  EXPECT_LE(log2_star(1e300), 5);
}

TEST(CleanPool, ReusesAndLimits) {
  Circuit c;
  CleanPool pool(c, 2);
  int a = pool.take();
  int b = pool.take();
  EXPECT_THROW(pool.take(), BudgetError);
  pool.give(a);
  EXPECT_EQ(pool.take(), a);
  EXPECT_EQ(pool.allocated(), 2);
  EXPECT_NE(a, b);
}

TEST(Incrementer, Exhaustive) {
  for (int n = 1; n <= 12; ++n) {
    auto c = incrementer(n);
    auto v = verify(c, VerificationSpec{increment_oracle(n)});
    EXPECT_TRUE(v.pass) << "n=" << n << ": " << v.to_string();
  }
}

TEST(Incrementer, CostsAtScale) {
  for (int n : {2, 5, 19, 32, 100, 1000, 4096}) {
    auto r = count_resources(incrementer(n));
    EXPECT_LE(r.toffoli_count, 3L * n) << "n=" << n;
    EXPECT_LE(r.clean(), log2_star(n) + 2) << "n=" << n;
  }
}

TEST(Incrementer, BudgetIsEnforced) {
  EXPECT_THROW(incrementer(19, 2), BudgetError);
  EXPECT_NO_THROW(incrementer(19, 3));
}

TEST(Incrementer, CycleHasFullPeriod) {
  // Applying it 2^n times is the identity and no earlier power is.
  for (int n = 1; n <= 8; ++n) {
    auto gs = detail::compile(incrementer(n));
    const std::uint64_t N = std::uint64_t{1} << n;
    for (std::uint64_t x = 0; x < N; ++x) {
      BasisState s = x;
      for (std::uint64_t k = 1; k <= N; ++k) {
        auto r = run_compiled(gs, s);
        ASSERT_TRUE(r.ok());
        s = r.state;
        if (k < N) {
          ASSERT_NE(s, x);
        }
      }
      ASSERT_EQ(s, x);
    }
  }
}

TEST(LessThanConst, ExhaustiveSmall) {
  for (int n = 1; n <= 8; ++n)
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << n); ++c) {
      auto v = verify(less_than_const(n, c), VerificationSpec{less_than_oracle(n, c)});
      ASSERT_TRUE(v.pass) << "n=" << n << " c=" << c << ": " << v.to_string();
    }
}

TEST(LessThanConst, EdgeConstants) {
  EXPECT_EQ(less_than_const(4, 0).size(), 0u);
  auto r = count_resources(less_than_const(6, 63));
  EXPECT_LE(r.toffoli_count, 18);
  EXPECT_THROW(less_than_const(4, 16), std::invalid_argument);
}

TEST(LessThanConst, RandomConstantsAtScale) {
  testing::Gen g(41);
  for (int rep = 0; rep < 200; ++rep) {
    int n = 1 + g.below(62);
    auto c = g.bits(n);
    auto r = count_resources(less_than_const(n, c));
    EXPECT_LE(r.toffoli_count, 3L * n);
    EXPECT_LE(r.clean(), log2_star(n) + 2);
  }
}

TEST(LessThanConst, Golden) {
  auto g = testing::load_golden();
  auto r = count_resources(less_than_const(19, 349525));
  EXPECT_EQ(r.toffoli_count, g.at("less_than_const.n19.c349525.toffoli"));
  EXPECT_EQ(r.clean(), g.at("less_than_const.n19.c349525.clean"));
  auto inc = count_resources(incrementer(19));
  EXPECT_EQ(inc.toffoli_count, g.at("incrementer.n19.toffoli"));
  EXPECT_EQ(inc.clean(), g.at("incrementer.n19.clean"));
}

TEST(PrefixLadder, EveryPrefixIsDelivered) {
  // Prefix j flips target j - 1: the targets end up holding the prefix ANDs.
  for (int n = 1; n <= 9; ++n)
    for (auto dir : {Direction::prefix, Direction::suffix}) {
      PrefixConsumer pc;
      pc.width = n;
      for (int j = 1; j <= n; ++j) pc.flips.push_back({j - 1});
      auto c = prefix_and_ladder(n, pc, dir);
      auto oracle = [n, dir](std::uint64_t v) {
        std::uint64_t out = v;
        bool acc = true;
        for (int j = 1; j <= n; ++j) {
          int bit = dir == Direction::prefix ? j - 1 : n - j;
          acc = acc && ((v >> bit) & 1);
          if (acc) out ^= std::uint64_t{1} << (n + j - 1);
        }
        return out;
      };
      auto v = verify(c, VerificationSpec{oracle});
      EXPECT_TRUE(v.pass) << "n=" << n << ": " << v.to_string();
      EXPECT_LE(count_resources(c).toffoli_count, 3L * n);
    }
}

}  // namespace
}  // namespace ccanc
