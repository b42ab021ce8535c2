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

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

#include "expect.hpp"
#include "support.hpp"

namespace sdiag {
namespace {

using F = FiniteFunction;
using Q = boost::multiprecision::cpp_rational;
using testing::code_of;
using testing::Rng;
using testing::uniform;
using V = std::vector<double>;
using namespace arith;

const Interpretation<double>& reals() {
  static const Interpretation<double> in = interpretation<double>();
  return in;
}

V eval(const Diagram& d, V xs) { return evaluate_ma(d, reals(), xs); }

// Source objects A, B over target objects a, a2, b: fwd(A) = a, rev(A) = a2,
// fwd(B) = b, rev(B) = (). The op k : A -> B maps to kf : a -> b a and
// kr : a -> a2, with residual a.
OpticSpec labeled_spec() {
  Signature src, tgt;
  src.add_object("A");
  src.add_object("B");
  src.add_op("k", {{0}, {1}});
  for (const char* o : {"a", "a2", "b"}) tgt.add_object(o);
  tgt.add_op("kf", {{0}, {2, 0}});
  tgt.add_op("kr", {{0}, {1}});
  Diagram fwd = singleton(tgt, 0);
  Diagram rev = singleton(tgt, 1);
  return {src, tgt, {{0}, {2}}, {{1}, {}}, {OpticArrow{fwd, rev, {0}}}};
}

TEST(Interleave, Examples) {
  OpticSpec spec = optic_spec();
  IntArray one{0}, two{0, 0};
  EXPECT_EQ(interleave_permutation(spec, one), identity(2));
  EXPECT_EQ(interleave_permutation(spec, two), F(4, {0, 2, 1, 3}));
  Diagram d = interleave(spec, two);
  EXPECT_EQ(d.s, identity(4));
  EXPECT_EQ(d.t, F(4, {0, 2, 1, 3}));

  OpticSpec ls = labeled_spec();
  IntArray bb{1, 1};
  EXPECT_EQ(interleave_permutation(ls, bb), identity(2));
  IntArray ab{0, 1};
  Diagram mixed = interleave(ls, ab);
  EXPECT_EQ(mixed.source_type(), Labeling(3, {0, 2, 1}));
  EXPECT_EQ(mixed.target_type(), Labeling(3, {0, 1, 2}));
  EXPECT_EQ(interleave(spec, IntArray{}), identity_diagram(spec.target, Labeling(1, {})));
}

TEST(ToOptic, IdentityAndSingleGenerator) {
  OpticSpec ls = labeled_spec();
  Diagram id = identity_diagram(ls.source, Labeling(2, {0, 1}));
  Diagram o = to_optic(ls, id);
  EXPECT_TRUE(spider_equal(o, identity_diagram(ls.target, Labeling(3, {0, 1, 2}))));

  Diagram k = to_optic(ls, singleton(ls.source, 0));
  EXPECT_EQ(k.source_type(), Labeling(3, {0, 1}));
  EXPECT_EQ(k.target_type(), Labeling(3, {2}));
  EXPECT_EQ(k.G.X(), 2u);
  EXPECT_TRUE(is_well_formed(k.G, ls.target));
  // Reverse wires sit on the wrong side until the boundary is re-selected.
  EXPECT_FALSE(check_monogamous(k));
  IntArray a{0}, b{1};
  Diagram ma = adapt_ma(ls, k, a, b);
  EXPECT_TRUE(is_monogamous_acyclic(ma));
  EXPECT_EQ(ma.source_type(), Labeling(3, {0}));
  EXPECT_EQ(ma.target_type(), Labeling(3, {2, 1}));
}

TEST(ToOptic, Errors) {
  OpticSpec ls = labeled_spec();
  ls.arrows[0].reset();
  EXPECT_EQ(code_of([&] { to_optic(ls, singleton(ls.source, 0)); }), ErrorCode::MissingOpticSpec);
  OpticSpec wide = labeled_spec();
  wide.arrows[0]->residual = {0, 0};
  EXPECT_EQ(code_of([&] { optic_encoding(wide); }), ErrorCode::EncodingMismatch);
}

TEST(AdaptMa, Examples) {
  for (Nat n : {1u, 3u}) {
    Diagram id = rdiff(wires(n));
    EXPECT_TRUE(is_monogamous_acyclic(id));
    EXPECT_EQ(id.G.X(), 0u);
    V in(2 * n);
    for (Nat i = 0; i < in.size(); ++i) in[i] = static_cast<double>(i + 1);
    EXPECT_EQ(eval(id, in), in);
  }
  EXPECT_TRUE(is_monogamous_acyclic(rdiff(gen(kAdd))));
  Diagram chain = gen(kMul);
  for (int i = 1; i < 10; ++i) chain = compose(tensor(chain, wires(1)), gen(kMul));
  ASSERT_EQ(chain.s.source(), 11u);
  EXPECT_TRUE(is_monogamous_acyclic(rdiff(chain)));
}

TEST(AdaptMa, RejectsNonMonogamousReverse) {
  OpticSpec spec = optic_spec();
  spec.arrows[kNeg]->rev = compose(par({gen(kDiscard), spider(spec.target, F(1, {0}), F(1, {0, 0}),
                                                               Labeling(1, {0}))}),
                                   gen(kAdd));
  Diagram o = to_optic(spec, gen(kNeg));
  IntArray r{0};
  EXPECT_EQ(code_of([&] { adapt_ma(spec, o, r, r); }), ErrorCode::NotAdaptable);
}

TEST(EvaluateMa, Examples) {
  EXPECT_EQ(eval(wires(3), {1, 2, 3}), (V{1, 2, 3}));
  Diagram sw = twist_diagram(signature(), Labeling(1, {0}), Labeling(1, {0, 0}));
  EXPECT_EQ(eval(sw, {1, 2, 3}), (V{2, 3, 1}));
  EXPECT_EQ(eval(compose(gen(kDup), gen(kAdd)), {4}), (V{8}));
  EXPECT_EQ(eval(par({gen(kOne), gen(kZero)}), {}), (V{1, 0}));
  EXPECT_EQ(eval(permute({2, 0, 1}), {1, 2, 3}), (V{3, 1, 2}));
  EXPECT_EQ(eval(copy_all(2), {5, 6}), (V{5, 6, 5, 6}));
  EXPECT_EQ(code_of([] { eval(wires(2), {1}); }), ErrorCode::ArityMismatch);
  Diagram split = spider(signature(), F(1, {0}), F(1, {0, 0}), Labeling(1, {0}));
  EXPECT_EQ(code_of([&] { eval(split, {1}); }), ErrorCode::NotMonogamousAcyclic);
  Interpretation<double> partial;
  EXPECT_EQ(code_of([&] { evaluate_ma(gen(kNeg), partial, V{1}); }), ErrorCode::ArityMismatch);
}

TEST(Rdiff, ReverseOfEachGenerator) {
  // Inputs are x then dy; outputs are f(x) then dx.
  EXPECT_EQ(eval(rdiff(gen(kAdd)), {2, 3, 5}), (V{5, 5, 5}));
  EXPECT_EQ(eval(rdiff(gen(kMul)), {2, 3, 5}), (V{6, 15, 10}));
  EXPECT_EQ(eval(rdiff(gen(kNeg)), {2, 5}), (V{-2, -5}));
  EXPECT_EQ(eval(rdiff(gen(kDup)), {2, 5, 7}), (V{2, 2, 12}));
  EXPECT_EQ(eval(rdiff(gen(kZero)), {5}), (V{0}));
  EXPECT_EQ(eval(rdiff(gen(kOne)), {5}), (V{1}));
  EXPECT_EQ(eval(rdiff(gen(kDiscard)), {2}), (V{0}));
}

TEST(Rdiff, Square) {
  Diagram sq = compose(gen(kDup), gen(kMul));
  EXPECT_EQ(eval(rdiff(sq), {3, 1}), (V{9, 6}));
  EXPECT_EQ(eval(rdiff(sq), {-1.5, 2}), (V{2.25, -6}));
  double fd = testing::central_difference(sq, {3}, 0, 0);
  EXPECT_NEAR(fd, 6, 1e-9);
}

TEST(Rdiff, Errors) {
  Signature other;
  other.add_object("R");
  other.add_op("f", {{0}, {0}});
  EXPECT_EQ(code_of([&] { rdiff(singleton(other, 0)); }), ErrorCode::UnsupportedGenerator);
  Diagram split = spider(signature(), F(1, {0}), F(1, {0, 0}), Labeling(1, {0}));
  EXPECT_EQ(code_of([&] { rdiff(compose(split, gen(kMul))); }), ErrorCode::NotMonogamousAcyclic);
  EXPECT_EQ(code_of([] { reverse_of(kNumOps); }), ErrorCode::UnsupportedGenerator);
}

TEST(Rdiff, OpticSpecIsWellTyped) {
  OpticSpec spec = optic_spec();
  for (Nat op = 0; op < kNumOps; ++op) {
    const auto& a = *spec.arrows[op];
    EXPECT_TRUE(is_monogamous_acyclic(a.fwd));
    EXPECT_TRUE(is_monogamous_acyclic(a.rev));
    const Typing& ty = signature().typing_of(op, 0);
    EXPECT_EQ(a.residual, ty.source);
    EXPECT_EQ(a.fwd.s.source(), ty.source.size());
    EXPECT_EQ(a.fwd.t.source(), ty.target.size() + ty.source.size());
    EXPECT_EQ(a.rev.s.source(), ty.source.size() + ty.target.size());
    EXPECT_EQ(a.rev.t.source(), ty.source.size());
  }
  validate_encoding(optic_encoding(spec));
}

// Forward mode with exact dual numbers gives the Jacobian column by
// column; reverse mode through the diagram gives it row by row.
TEST(Rdiff, MatchesForwardModeExactly) {
  Rng rng(41);
  const auto rat = interpretation<Q>();
  const auto dual = interpretation<testing::Dual<Q>>();
  for (int trial = 0; trial < 60; ++trial) {
    auto c = testing::random_arith_circuit(rng);
    Diagram r = rdiff(c.d);
    ASSERT_TRUE(is_monogamous_acyclic(r));
    std::vector<Q> x(c.inputs);
    for (auto& v : x) v = Q(static_cast<long>(uniform(rng, 0, 40)) - 20, 7);
    for (Nat i = 0; i < c.outputs; ++i) {
      std::vector<Q> in = x;
      for (Nat k = 0; k < c.outputs; ++k) in.push_back(Q(k == i ? 1 : 0));
      std::vector<Q> out = evaluate_ma(r, rat, in);
      EXPECT_EQ(std::vector<Q>(out.begin(), out.begin() + c.outputs), evaluate_ma(c.d, rat, x));
      for (Nat j = 0; j < c.inputs; ++j) {
        std::vector<testing::Dual<Q>> dx;
        for (Nat k = 0; k < c.inputs; ++k) dx.push_back({x[k], Q(k == j ? 1 : 0)});
        Q expect = evaluate_ma(c.d, dual, dx)[i].dv;
        EXPECT_EQ(out[c.outputs + j], expect);
      }
    }
  }
}

TEST(Rdiff, MatchesFiniteDifferences) {
  Rng rng(42);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    auto c = testing::random_arith_circuit(rng);
    Diagram r = rdiff(c.d);
    V x(c.inputs);
    for (auto& v : x) v = coord(rng);
    V fx = eval(c.d, x);
    for (Nat i = 0; i < c.outputs; ++i) {
      V in = x;
      for (Nat k = 0; k < c.outputs; ++k) in.push_back(k == i ? 1.0 : 0.0);
      V out = eval(r, in);
      for (Nat k = 0; k < c.outputs; ++k) EXPECT_EQ(out[k], fx[k]);
      for (Nat j = 0; j < c.inputs; ++j) {
        double fd = testing::central_difference(c.d, x, i, j);
        EXPECT_LE(std::abs(out[c.outputs + j] - fd), 1e-6 * std::max(1.0, std::abs(fd)));
      }
    }
  }
}

// The reverse pass of f;g feeds g's reverse output into f's reverse input.
TEST(Rdiff, ComposesLikeOptics) {
  Rng rng(43);
  const auto rat = interpretation<Q>();
  for (int trial = 0; trial < 60; ++trial) {
    auto f = testing::random_arith_circuit(rng, 20);
    // Second circuit reads f's outputs.
    testing::ArithCircuit g;
    do {
      g = testing::random_arith_circuit(rng, 20);
    } while (g.inputs != f.outputs);
    Diagram fg = compose(f.d, g.d);
    std::vector<Q> x(f.inputs), dy(g.outputs);
    for (auto& v : x) v = Q(static_cast<long>(uniform(rng, 0, 20)) - 10, 3);
    for (auto& v : dy) v = Q(static_cast<long>(uniform(rng, 0, 20)) - 10, 5);
    std::vector<Q> fx = evaluate_ma(f.d, rat, x);
    std::vector<Q> g_in = fx;
    g_in.insert(g_in.end(), dy.begin(), dy.end());
    std::vector<Q> g_out = evaluate_ma(rdiff(g.d), rat, g_in);
    std::vector<Q> f_in = x;
    f_in.insert(f_in.end(), g_out.begin() + g.outputs, g_out.end());
    std::vector<Q> f_out = evaluate_ma(rdiff(f.d), rat, f_in);
    std::vector<Q> expect(g_out.begin(), g_out.begin() + g.outputs);
    expect.insert(expect.end(), f_out.begin() + f.outputs, f_out.end());
    std::vector<Q> in = x;
    in.insert(in.end(), dy.begin(), dy.end());
    EXPECT_EQ(evaluate_ma(rdiff(fg), rat, in), expect);
  }
}

}  // namespace
}  // namespace sdiag
