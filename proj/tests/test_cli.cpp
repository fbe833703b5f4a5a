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
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>

#include "ccanc/circuit.hpp"
#include "ccanc/data_table.hpp"

namespace ccanc {
namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result cli(const std::string& args) {
  std::string cmd = std::string(CCANC_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "ccanc_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

int count_lines(const std::string& text, const std::string& prefix) {
  int n = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (text.compare(pos, prefix.size(), prefix) == 0) ++n;
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  return n;
}

TEST(Cli, SynthOneClean) {
  auto r = cli("synth mcx-1c --n 19");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(count_lines(r.out, "CCX "), 33);
  EXPECT_EQ(count_lines(r.out, "AND "), 1);
  EXPECT_EQ(count_lines(r.out, "AND_DAGGER "), 1);
}

TEST(Cli, SynthLtcZeroConstant) {
  auto r = cli("synth ltc --n 4 --c 0");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(count_lines(r.out, "CCX ") + count_lines(r.out, "AND "), 0);
}

TEST(Cli, SynthQromRoundTrips) {
  auto data = scratch("table.txt");
  std::vector<std::uint64_t> w;
  for (int i = 0; i < 16; ++i) w.push_back((i * 7 + 3) & 15);
  std::ofstream(data) << emit_table(DataTable(w, 4));
  auto out = scratch("qrom.txt");
  auto r = cli("synth qrom --N 16 --m 4 --kind skew --mode clean-um --data " +
               data.string() + " --out " + out.string());
  ASSERT_EQ(r.code, 0);
  std::ifstream in(out);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  auto c = parse_text(text);
  EXPECT_EQ(emit_text(c), text);
  EXPECT_EQ(c.count(Role::target), 4);
}

TEST(Cli, Verify) {
  auto r = cli("verify mcx-1d --n 8");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "mcx_one_dirty: pass\n");
  EXPECT_EQ(cli("verify incrementer --n 10").code, 0);
  EXPECT_EQ(cli("verify qrom-dirty --N 16 --m 2 --kind skew").code, 0);
  EXPECT_EQ(cli("verify unary --N 8 --mode cca --uncontrolled").code, 0);
}

TEST(Cli, VerifyCorruptedCircuit) {
  auto good = cli("synth mcx-1c --n 5");
  ASSERT_EQ(good.code, 0);
  auto path = scratch("bad.txt");
  std::ofstream(path) << good.out << "X ; 0\n";
  auto r = cli("verify mcx-1c --n 5 --circuit " + path.string());
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("fail state="), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("").code, 1);
  EXPECT_EQ(cli("synth nonsense --n 3").code, 1);
  EXPECT_EQ(cli("synth mcx-1c --n 2").code, 1);
  EXPECT_EQ(cli("verify mcx-1c --n 30 --max-states 1000").code, 2);
  EXPECT_EQ(cli("--help").code, 0);
}

TEST(Cli, CountAndTableAreDeterministic) {
  auto a = cli("count mcx-2c-log --n 32 --format csv");
  ASSERT_EQ(a.code, 0);
  EXPECT_NE(a.out.find("mcx_two_clean_logdepth,59,61,236,20"), std::string::npos);
  auto t1 = cli("table"), t2 = cli("table");
  EXPECT_EQ(t1.code, 0);
  EXPECT_EQ(t1.out, t2.out);
  auto csv = cli("table --format csv");
  EXPECT_EQ(csv.out.rfind("construction,", 0), 0u);
  auto j1 = cli("verify qrom --N 16 --m 3 --jobs 1");
  auto j4 = cli("verify qrom --N 16 --m 3 --jobs 4");
  EXPECT_EQ(j1.out, j4.out);
}

TEST(Cli, SkewData) {
  auto path = scratch("sk.txt");
  std::ofstream(path) << "QROM N=4 M=3\n1\n2\n3\n4\n";
  auto r = cli("skewdata --data " + path.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "QROM N=4 M=3\n1\n3\n2\n4\n");
  std::ofstream(path) << "QROM N=3 M=3\n1\n2\n3\n";
  EXPECT_EQ(cli("skewdata --data " + path.string()).code, 1);
}

}  // namespace
}  // namespace ccanc
