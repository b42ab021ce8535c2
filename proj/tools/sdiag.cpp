// Copyright 2026 The sdiag Authors.
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

// Command-line front end. Exit status: 0 success, 1 a check or
// construction failed, 2 the input could not be read or parsed.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sdiag/io/dot.hpp"
#include "sdiag/io/json.hpp"
#include "sdiag/io/text.hpp"
#include "sdiag/sdiag.hpp"
#include "workloads.hpp"

namespace {

using namespace sdiag;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw UsageError("cannot write " + path);
}

io::DiagramFile load(const std::string& path) { return io::parse_diagram_json(read_file(path)); }

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError:
    case ErrorCode::SchemaError:
    case ErrorCode::DuplicateName:
    case ErrorCode::UnknownObject:
      return 2;
    default:
      return 1;
  }
}

int cmd_check(const std::string& path, bool mono, bool acyc, bool wf) {
  auto f = load(path);
  if (!mono && !acyc && !wf) mono = acyc = wf = true;
  bool ok = true;
  if (wf) {
    try {
      auto r = check_well_formed(f.d.G, f.sig);
      std::cout << "well-formed=true\n";
      for (const auto& w : r.warnings) std::cout << "warning: " << w << "\n";
    } catch (const Error& e) {
      std::cout << "well-formed=false\n";
      std::cerr << "error: " << e.what() << "\n";
      ok = false;
    }
  }
  if (mono) {
    bool m = check_monogamous(f.d);
    std::cout << "monogamous=" << (m ? "true" : "false") << "\n";
    ok = ok && m;
  }
  if (acyc) {
    bool a = check_acyclic(f.d);
    std::cout << "acyclic=" << (a ? "true" : "false") << "\n";
    ok = ok && a;
  }
  return ok ? 0 : 1;
}

std::vector<double> parse_inputs(const std::string& csv) {
  std::vector<double> r;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw UsageError("bad input value '" + item + "'");
    r.push_back(v);
  }
  return r;
}

int cmd_eval(const std::string& path, const std::string& inputs) {
  auto f = load(path);
  if (!arith::is_arith_signature(f.sig)) {
    fail(ErrorCode::UnsupportedGenerator, "eval only knows the arithmetic signature");
  }
  auto out = evaluate_ma(f.d, arith::interpretation<double>(), parse_inputs(inputs));
  std::ostringstream os;
  os.precision(17);
  for (Nat i = 0; i < out.size(); ++i) os << (i ? "," : "") << out[i];
  std::cout << os.str() << "\n";
  return 0;
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  return xs[xs.size() / 2];
}

int cmd_bench(Nat leaves, const std::string& shape, Nat repeat) {
  Signature sig = workloads::endo_signature();
  std::mt19937_64 rng(leaves);
  Term t = shape == "chain"      ? workloads::chain(leaves)
           : shape == "balanced" ? workloads::balanced(leaves)
                                 : workloads::random_shape(leaves, rng);
  using Clock = std::chrono::steady_clock;
  auto ms = [](Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
  };
  std::vector<double> tree, tens, anc, wire, coeq, total;
  for (Nat r = 0; r < repeat; ++r) {
    auto t0 = Clock::now();
    TreeArrays ta = tree_arrays(t);
    auto t1 = Clock::now();
    std::vector<OpInstance> ops(ta.m, OpInstance{0, 0});
    Diagram g = tensor_operations(sig, ops);
    auto t2 = Clock::now();
    AncestorMaps am = ancestor_maps_jump(ta);
    auto t3 = Clock::now();
    IntArray ones(ta.m, 1);
    WiringMaps wm = wiring_maps_sorted(ta, ones, ones, g.s, g.t);
    auto t4 = Clock::now();
    Diagram d = detail::glue(g.G, wm);
    auto t5 = Clock::now();
    Diagram d2 = to_diagram_fast(sig, t);
    auto t6 = Clock::now();
    if (d.G.W() != d2.G.W() || am.left.source() != ta.m) fail(ErrorCode::ShapeMismatch, "bench");
    tree.push_back(ms(t0, t1));
    tens.push_back(ms(t1, t2));
    anc.push_back(ms(t2, t3));
    wire.push_back(ms(t3, t4));
    coeq.push_back(ms(t4, t5));
    total.push_back(ms(t5, t6));
  }
  std::printf("leaves %zu shape %s repeat %zu (median ms)\n", leaves, shape.c_str(), repeat);
  std::printf("tree_arrays     %10.3f\n", median(tree));
  std::printf("tensor          %10.3f\n", median(tens));
  std::printf("ancestor_maps   %10.3f\n", median(anc));
  std::printf("wiring_maps     %10.3f\n", median(wire));
  std::printf("coequalizer     %10.3f\n", median(coeq));
  std::printf("to_diagram_fast %10.3f\n", median(total));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build, check and transform string diagrams."};
  app.require_subcommand(1);

  std::string sig_path, term_path, out_path, a_path, b_path, fun_path, sig_out_path, inputs, shape;
  bool slow = false, mono = false, acyc = false, wf = false;
  Nat leaves = 1024, repeat = 5;

  auto* build = app.add_subcommand("build", "Elaborate a term into a diagram");
  build->add_option("--sig", sig_path, "Signature file")->required();
  build->add_option("--term", term_path, "Term file")->required();
  build->add_flag("--slow", slow, "Use the compose/tensor fold instead of the one-shot path");
  build->add_option("--out", out_path, "Output JSON (default stdout)");

  auto* check = app.add_subcommand("check", "Validate a diagram");
  check->add_option("diagram", a_path, "Diagram JSON")->required();
  check->add_flag("--monogamous", mono);
  check->add_flag("--acyclic", acyc);
  check->add_flag("--well-formed", wf);

  auto* comp = app.add_subcommand("compose", "Sequential composite A ; B");
  auto* tens = app.add_subcommand("tensor", "Parallel composite A (x) B");
  for (auto* c : {comp, tens}) {
    c->add_option("a", a_path, "First diagram")->required();
    c->add_option("b", b_path, "Second diagram")->required();
    c->add_option("--out", out_path, "Output JSON (default stdout)");
  }
  auto* dag = app.add_subcommand("dagger", "Swap the legs of a diagram");
  dag->add_option("diagram", a_path)->required();
  dag->add_option("--out", out_path, "Output JSON (default stdout)");

  auto* map = app.add_subcommand("map", "Apply a functor");
  map->add_option("--functor", fun_path, "Functor file")->required();
  map->add_option("--sig-in", sig_path, "Source signature")->required();
  map->add_option("--sig-out", sig_out_path, "Target signature")->required();
  map->add_option("diagram", a_path)->required();
  map->add_option("--out", out_path, "Output JSON (default stdout)");

  auto* rd = app.add_subcommand("rdiff", "Reverse derivative of an arithmetic circuit");
  rd->add_option("--term", term_path, "Term over the arithmetic signature")->required();
  rd->add_option("--out", out_path, "Output JSON (default stdout)");

  auto* ev = app.add_subcommand("eval", "Evaluate an arithmetic diagram");
  ev->add_option("diagram", a_path)->required();
  ev->add_option("--inputs", inputs, "Comma-separated input values");

  auto* dot = app.add_subcommand("dot", "Graphviz rendering");
  dot->add_option("diagram", a_path)->required();
  dot->add_option("--out", out_path, "Output file (default stdout)");

  auto* sigcmd = app.add_subcommand("arith-sig", "Print the built-in arithmetic signature");

  auto* bench = app.add_subcommand("bench", "Time the one-shot term elaboration");
  bench->add_option("--leaves", leaves, "Number of leaves")->check(CLI::PositiveNumber);
  bench->add_option("--shape", shape, "chain, balanced or random")
      ->check(CLI::IsMember({"chain", "balanced", "random"}))
      ->default_val("balanced");
  bench->add_option("--repeat", repeat, "Repetitions")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: Usage: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*build) {
      Signature sig = io::parse_signature(read_file(sig_path));
      Term t = io::parse_term(read_file(term_path), sig);
      Diagram d = slow ? to_diagram_slow(sig, t) : to_diagram_fast(sig, t);
      write_output(out_path, io::diagram_json(sig, d));
    } else if (*check) {
      return cmd_check(a_path, mono, acyc, wf);
    } else if (*comp || *tens) {
      auto a = load(a_path), b = load(b_path);
      if (!(a.sig == b.sig))
        fail(ErrorCode::SignatureMismatch, "diagrams use different signatures");
      Diagram d = *comp ? compose(a.d, b.d) : tensor(a.d, b.d);
      write_output(out_path, io::diagram_json(a.sig, d));
    } else if (*dag) {
      auto a = load(a_path);
      write_output(out_path, io::diagram_json(a.sig, dagger(a.d)));
    } else if (*map) {
      Signature in = io::parse_signature(read_file(sig_path));
      Signature out = io::parse_signature(read_file(sig_out_path));
      auto enc = io::functor_encoding(io::parse_functor(read_file(fun_path), in, out), in, out);
      auto a = load(a_path);
      if (!(a.sig == in)) fail(ErrorCode::SignatureMismatch, "diagram is not over --sig-in");
      write_output(out_path, io::diagram_json(out, apply_functor(enc, a.d)));
    } else if (*rd) {
      const Signature& sig = arith::signature();
      Diagram d = to_diagram_fast(sig, io::parse_term(read_file(term_path), sig));
      write_output(out_path, io::diagram_json(sig, arith::rdiff(d)));
    } else if (*ev) {
      return cmd_eval(a_path, inputs);
    } else if (*dot) {
      auto a = load(a_path);
      write_output(out_path, io::to_dot(a.sig, a.d));
    } else if (*sigcmd) {
      std::cout << io::print_signature(arith::signature());
    } else if (*bench) {
      return cmd_bench(leaves, shape, repeat);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const UsageError& e) {
    std::cerr << "error: Usage: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
