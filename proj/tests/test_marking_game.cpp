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

#include <bit>

#include "ccanc/marking_game.hpp"
#include "ccanc/mcx.hpp"
#include "ccanc/sim.hpp"
#include "testing.hpp"

namespace ccanc {
namespace {

std::string marks(const MarkingSchedule& s, std::size_t upto) {
  std::string out;
  for (int v : replay(s, upto)) out += static_cast<char>('0' + v);
  return out;
}

TEST(MarkingGame, ReplayRejectsIllegalOps) {
  MarkingSchedule s{4, {{0, 1, 2}, {0, 3, 4}}, {}};
  EXPECT_THROW(verify_schedule(s), ScheduleError);
  s.ops = {{1, 2, 3}};
  EXPECT_THROW(verify_schedule(s), ScheduleError);
  s.ops = {{0, 2, 1}};
  EXPECT_THROW(verify_schedule(s), ScheduleError);
  s.ops = {{0, 1, 5}};
  EXPECT_THROW(verify_schedule(s), ScheduleError);
  try {
    verify_schedule(MarkingSchedule{4, {{0, 1, 2}, {0, 3, 4}}, {}});
  } catch (const ScheduleError& e) {
    EXPECT_EQ(e.op(), 1);
  }
}

TEST(MarkingGame, GreedyStats) {
  for (int n = 3; n <= 64; ++n) {
    auto st = verify_schedule(greedy_schedule(n));
    EXPECT_EQ(st, (ScheduleStats{2, n - 2, n - 2})) << "n=" << n;
  }
}

TEST(MarkingGame, LogScheduleTrace) {
  auto s = log_schedule(36);
  ASSERT_EQ(s.steps.size(), 5u);
  EXPECT_EQ(marks(s, 0), "1000000000000000000000000000000000000");
  EXPECT_EQ(marks(s, s.steps[0]), "0110000000000000000000000000000000000");
  EXPECT_EQ(marks(s, s.steps[1]), "0011110000000000000000000000000000000");
  EXPECT_EQ(marks(s, s.steps[2]), "0001111111100000000000000000000000000");
  EXPECT_EQ(marks(s, s.steps[3]), "0000111111111111111100000000000000000");
  EXPECT_EQ(marks(s, s.steps[4]), "0000011111111111111111111111111111111");
}

TEST(MarkingGame, LogScheduleShape) {
  for (int n = 3; n <= 300; ++n) {
    auto s = log_schedule(n);
    auto st = verify_schedule(s);
    const int steps = static_cast<int>(s.steps.size());
    EXPECT_EQ(st.T + st.K, n) << "n=" << n;  // every op marks one net slot
    EXPECT_LE(st.K, std::bit_width(static_cast<unsigned>(n)) + 1) << "n=" << n;
    // Steps pipeline: each one finishes at most two layers after the last.
    EXPECT_LE(st.D, 2 * steps - 1) << "n=" << n;
  }
}

TEST(MarkingGame, OptimalKIsTwo) {
  for (int n = 3; n <= 8; ++n) {
    auto s = optimal_search(n);
    EXPECT_EQ(verify_schedule(s).K, 2) << "n=" << n;
  }
}

TEST(MarkingGame, OptimalDepthBeatsGreedy) {
  for (int n = 4; n <= 8; ++n) {
    auto d = verify_schedule(optimal_search(n, Objective::D));
    EXPECT_LE(d.D, verify_schedule(greedy_schedule(n)).D);
  }
}

// Schedule, MCX over the survivors, undo: an n-controlled NOT.
void expect_mcx(const MarkingSchedule& s) {
  auto c = schedule_to_circuit(s);
  int t = c.add_qubit(Role::target);
  std::vector<int> slots{s.n};
  for (int i = 0; i < s.n; ++i) slots.push_back(i);
  std::vector<Control> hs;
  for (int h : survivors(s)) hs.push_back(Control{slots[h]});
  std::size_t to = c.size();
  c.mcx_ref(hs, t);
  append_inverse_of_range(c, 0, to);
  std::vector<int> bits;
  for (int i = 0; i < s.n; ++i) bits.push_back(i);
  EXPECT_TRUE(verify(c, VerificationSpec{mcx_oracle(bits, s.n)}).pass) << "n=" << s.n;
}

TEST(MarkingGame, SchedulesComputeTheAnd) {
  for (int n = 3; n <= 10; ++n) {
    expect_mcx(greedy_schedule(n));
    expect_mcx(log_schedule(n));
    if (n <= 7) expect_mcx(optimal_search(n));
  }
}

TEST(MarkingGame, RandomLegalSchedulesComputeTheAnd) {
  // Random walks through the game: any legal play yields a valid ladder.
  testing::Gen g(23);
  for (int rep = 0; rep < 60; ++rep) {
    int n = 3 + g.below(6);
    MarkingSchedule s{n, {}, {}};
    std::vector<int> a(n + 1, 0);
    a[0] = 1;
    for (int step = 0; step < 3 * n; ++step) {
      std::vector<MarkingOp> legal;
      for (int t = 0; t <= n; ++t)
        if (a[t])
          for (int x = t + 1; x <= n; ++x)
            if (!a[x])
              for (int y = x + 1; y <= n; ++y)
                if (!a[y]) legal.push_back({t, x, y});
      if (legal.empty() || g.below(8) == 0) break;
      auto o = legal[g.below(static_cast<int>(legal.size()))];
      a[o.t] = 0;
      a[o.x] = a[o.y] = 1;
      s.ops.push_back(o);
    }
    expect_mcx(s);
  }
}

TEST(MarkingGame, TextRoundTrip) {
  auto s = log_schedule(20);
  auto back = parse_schedule_text(emit_schedule_text(s));
  EXPECT_EQ(back.n, s.n);
  EXPECT_EQ(back.ops, s.ops);
  EXPECT_THROW(parse_schedule_text("N 4\nOP 1 2\n"), std::exception);
}

}  // namespace
}  // namespace ccanc
