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

#include "support.hpp"

namespace sdiag {
namespace {

using testing::Rng;
using testing::uniform;

Signature abc() {
  Signature sig;
  sig.add_object("A");
  sig.add_object("B");
  sig.add_object("C");
  return sig;
}

TEST(Signature, AddsObjectsAndOps) {
  Signature sig;
  Nat a = sig.add_object("A");
  Nat f = sig.add_op("f", {{a}, {a, a}});
  EXPECT_EQ(sig.num_objects(), 1u);
  EXPECT_EQ(sig.num_ops(), 1u);
  EXPECT_EQ(sig.find_op("f"), f);
  EXPECT_EQ(sig.find_object("A"), a);
  EXPECT_FALSE(sig.find_op("g").has_value());
  EXPECT_TRUE(sig.is_monomorphic());
}

TEST(Signature, RepeatedOpNamesAccumulateTypings) {
  Signature sig = abc();
  Nat g = sig.add_op("g", {{0}, {}});
  EXPECT_EQ(sig.add_op("g", {{1, 2}, {0}}), g);
  EXPECT_EQ(sig.typings(g).size(), 2u);
  EXPECT_FALSE(sig.is_monomorphic());
}

TEST(Signature, Errors) {
  Signature sig = abc();
  try {
    sig.add_object("B");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicateName);
  }
  try {
    sig.add_op("f", {{7}, {}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownObject);
  }
}

TEST(TypingOf, Examples) {
  Signature sig = abc();
  Nat f = sig.add_op("f", {{0}, {1}});
  Nat g = sig.add_op("g", {{0}, {}});
  sig.add_op("g", {{1, 2}, {0}});
  EXPECT_EQ(typing_of(sig, f, 0), (Typing{{0}, {1}}));
  EXPECT_EQ(typing_of(sig, g, 1), (Typing{{1, 2}, {0}}));
  try {
    typing_of(sig, g, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IndexOutOfRange);
  }
}

TEST(CheckLabelPreserving, Examples) {
  Labeling ab(3, {0, 1});
  EXPECT_TRUE(check_label_preserving(identity(2), ab, ab));
  EXPECT_TRUE(
      check_label_preserving(FiniteFunction(3, {1}), Labeling(3, {0}), Labeling(3, {1, 0, 2})));
  EXPECT_FALSE(
      check_label_preserving(FiniteFunction(2, {0}), Labeling(3, {0}), Labeling(3, {1, 0})));
  try {
    check_label_preserving(identity(2), Labeling(3, {0}), ab);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ShapeMismatch);
  }
}

// A random wires morphism into `tgt`: any f, with source labels pulled back.
WiresMorphism random_wires_morphism(Rng& rng, const Labeling& tgt) {
  FiniteFunction f = testing::random_ff(rng, uniform(rng, 0, 6), tgt.source());
  return {f, compose(f, tgt), tgt};
}

TEST(WiresMorphism, ClosedUnderComposeCoproductTensor) {
  Rng rng(21);
  for (int rep = 0; rep < 300; ++rep) {
    Labeling c = testing::random_ff(rng, uniform(rng, 1, 6), 3);
    WiresMorphism g = random_wires_morphism(rng, c);
    if (g.f.source() == 0) continue;
    WiresMorphism f = random_wires_morphism(rng, g.source_labels);
    ASSERT_TRUE(f.valid() && g.valid());
    EXPECT_TRUE(check_label_preserving(compose(f.f, g.f), f.source_labels, c));
    WiresMorphism h = random_wires_morphism(rng, c);
    EXPECT_TRUE(check_label_preserving(coproduct(g.f, h.f),
                                       coproduct(g.source_labels, h.source_labels), c));
    EXPECT_TRUE(check_label_preserving(
        tensor(g.f, h.f), coproduct(g.source_labels, h.source_labels), coproduct(c, c)));
  }
}

}  // namespace
}  // namespace sdiag
