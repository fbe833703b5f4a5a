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

// ccanc: synthesize, cost and verify the constructions from the command line.
//
//   ccanc synth mcx-1c --n 19
//   ccanc verify incrementer --n 10
//   ccanc count qrom --N 16 --kind skew --mode clean-um
//   ccanc table --format csv
//   ccanc skewdata --data table.txt

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "ccanc/catalog.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kLimit = 2, kFail = 3 };

struct Args {
  std::string name;
  ccanc::BuildParams p;
  std::string kind = "balanced";
  std::string mode = "clean";
  std::string data;
  std::string out;
  std::string circuit;
  std::string format = "text";
  bool uncontrolled = false;
  std::uint64_t max_states = std::uint64_t{1} << 24;
  unsigned jobs = 0;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << text;
}

void add_params(CLI::App* sub, Args& a) {
  sub->add_option("construction", a.name, "construction name")
      ->required()
      ->check(CLI::IsMember(ccanc::construction_names()));
  sub->add_option("--n", a.p.n, "bit width / number of controls");
  sub->add_option("--N", a.p.N, "domain size for unary iteration and QROM");
  sub->add_option("--m", a.p.m, "word width of generated QROM data");
  sub->add_option("--c", a.p.c, "constant for ltc");
  sub->add_option("--kind", a.kind, "tree kind")
      ->check(CLI::IsMember({"balanced", "skew"}));
  sub->add_option("--mode", a.mode, "ancilla mode")
      ->check(CLI::IsMember({"clean", "clean-um", "cca", "dirty"}));
  sub->add_option("--data", a.data, "QROM data file");
  sub->add_option("--seed", a.p.seed, "seed for generated QROM data");
  sub->add_flag("--uncontrolled", a.uncontrolled,
                "unary iteration without a control qubit");
}

void resolve(Args& a) {
  a.p.kind = *ccanc::parse_kind(a.kind);
  a.p.mode = *ccanc::parse_mode(a.mode);
  a.p.controlled = !a.uncontrolled;
  if (!a.data.empty()) a.p.data = ccanc::parse_table(slurp(a.data));
}

int run_verify(Args& a) {
  auto b = ccanc::build(a.name, a.p);
  ccanc::Circuit c = b.construction.circuit;
  if (!a.circuit.empty()) c = ccanc::parse_text(slurp(a.circuit));
  ccanc::VerifyOptions opt;
  opt.max_states = a.max_states;
  opt.jobs = a.jobs;
  auto v = ccanc::verify(c, b.spec, opt);
  std::cout << c.name << ": " << v.to_string() << "\n";
  return v.pass ? kOk : kFail;
}

int run_count(Args& a) {
  auto b = ccanc::build(a.name, a.p);
  auto r = ccanc::count_resources(b.construction.circuit);
  if (a.format == "csv") {
    std::cout << "name,toffoli,unmeasured,t,depth,ccx,and,and_dagger,clean,dirty\n"
              << r.name << "," << r.toffoli_count << "," << r.unmeasured_toffoli()
              << "," << r.t_count << "," << r.toffoli_depth << "," << r.ccx << ","
              << r.and_count << "," << r.and_dagger << "," << r.clean() << ","
              << r.dirty() << "\n";
  } else {
    std::cout << r.record() << " unmeasured=" << r.unmeasured_toffoli() << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ccanc: ancilla-frugal reversible circuit constructions"};
  app.require_subcommand(1);
  Args a;

  auto* synth = app.add_subcommand("synth", "write a construction in text form");
  add_params(synth, a);
  synth->add_option("--out", a.out, "output path (default stdout)");

  auto* count = app.add_subcommand("count", "print resource counts");
  add_params(count, a);
  count->add_option("--format", a.format)->check(CLI::IsMember({"text", "csv"}));

  auto* verify = app.add_subcommand("verify", "exhaustively check against the oracle");
  add_params(verify, a);
  verify->add_option("--circuit", a.circuit, "check this circuit file instead");
  verify->add_option("--max-states", a.max_states, "enumeration limit");
  verify->add_option("--jobs", a.jobs, "worker threads (0: all cores)");

  auto* table = app.add_subcommand("table", "formula vs computed cost table");
  table->add_option("--format", a.format)->check(CLI::IsMember({"text", "csv"}));
  table->add_option("--out", a.out, "output path (default stdout)");

  auto* skew = app.add_subcommand("skewdata", "apply the skew transform to a table");
  skew->add_option("--data", a.data, "QROM data file")->required();
  skew->add_option("--out", a.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*table) {
      spill(a.out, ccanc::format_table(ccanc::cost_table(), a.format == "csv"));
      return kOk;
    }
    if (*skew) {
      auto d = ccanc::parse_table(slurp(a.data));
      spill(a.out, ccanc::emit_table(ccanc::skew_transform(d)));
      return kOk;
    }
    resolve(a);
    if (*synth) {
      spill(a.out, ccanc::emit_text(ccanc::build(a.name, a.p).construction.circuit));
      return kOk;
    }
    if (*count) return run_count(a);
    return run_verify(a);
  } catch (const ccanc::LimitError& e) {
    std::cerr << "limit: " << e.what() << "\n";
    return kLimit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
