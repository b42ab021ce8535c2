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

#include <algorithm>

#include "support.hpp"

namespace sdiag {
namespace {

using testing::random_ff;
using testing::Rng;
using testing::uniform;

FiniteFunction ff(Nat target, IntArray table) { return FiniteFunction(target, std::move(table)); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::ParseError;
}

TEST(FiniteFunction, RejectsOutOfRangeEntries) {
  EXPECT_EQ(code_of([] { ff(2, {0, 2}); }), ErrorCode::ValueOutOfRange);
}

TEST(Identity, Examples) {
  EXPECT_EQ(identity(0), ff(0, {}));
  EXPECT_EQ(identity(3), ff(3, {0, 1, 2}));
}

TEST(Compose, Examples) {
  EXPECT_EQ(compose(ff(3, {2, 0}), ff(6, {5, 1, 1})), ff(6, {1, 5}));
  FiniteFunction f = ff(4, {3, 0, 0});
  EXPECT_EQ(compose(identity(3), f), f);
  EXPECT_EQ(compose(f, identity(4)), f);
  EXPECT_EQ(code_of([&] { compose(f, f); }), ErrorCode::TypeMismatch);
}

TEST(InitialTerminal, Examples) {
  EXPECT_EQ(initial(0), ff(0, {}));
  EXPECT_EQ(initial(5), ff(5, {}));
  EXPECT_EQ(compose(initial(3), ff(2, {1, 0, 1})), initial(2));
  EXPECT_EQ(terminal(0), ff(1, {}));
  EXPECT_EQ(terminal(3), ff(1, {0, 0, 0}));
  EXPECT_EQ(compose(ff(4, {3, 1}), terminal(4)), terminal(2));
}

TEST(Injections, Examples) {
  EXPECT_EQ(inj0(2, 3), ff(5, {0, 1}));
  EXPECT_EQ(inj1(2, 3), ff(5, {2, 3, 4}));
  EXPECT_EQ(inj0(0, 4), ff(4, {}));
}

TEST(Coproduct, Examples) {
  EXPECT_EQ(coproduct(ff(2, {1}), ff(2, {0, 0})), ff(2, {1, 0, 0}));
  EXPECT_EQ(coproduct(inj0(2, 3), inj1(2, 3)), identity(5));
  FiniteFunction f = ff(3, {2, 2});
  EXPECT_EQ(coproduct(f, initial(3)), f);
  EXPECT_EQ(code_of([] { coproduct(ff(2, {}), ff(3, {})); }), ErrorCode::TargetMismatch);
}

TEST(Tensor, Examples) {
  EXPECT_EQ(tensor(ff(2, {1}), ff(1, {0, 0})), ff(3, {1, 2, 2}));
  EXPECT_EQ(tensor(identity(2), identity(3)), identity(5));
  FiniteFunction f = ff(3, {2, 0});
  EXPECT_EQ(tensor(f, ff(0, {})), f);
}

TEST(Twist, Examples) {
  EXPECT_EQ(twist(1, 1), ff(2, {1, 0}));
  EXPECT_EQ(twist(3, 0), identity(3));
  EXPECT_EQ(twist(2, 3), ff(5, {3, 4, 0, 1, 2}));
  EXPECT_EQ(compose(twist(2, 3), twist(3, 2)), identity(5));
}

TEST(Coequalizer, Examples) {
  FiniteFunction f = ff(4, {3, 1, 1});
  EXPECT_EQ(coequalizer(f, f), identity(4));
  EXPECT_EQ(coequalizer(ff(3, {0, 1}), ff(3, {1, 2})), ff(1, {0, 0, 0}));
  EXPECT_EQ(coequalizer(initial(3), initial(3)), identity(3));
  EXPECT_EQ(code_of([] { coequalizer(ff(3, {0}), ff(2, {0})); }), ErrorCode::TypeMismatch);
}

TEST(Universal, Examples) {
  FiniteFunction f = ff(7, {6, 0, 3});
  EXPECT_EQ(universal(identity(3), f), f);
  EXPECT_EQ(universal(ff(1, {0, 0}), ff(5, {3, 3})), ff(5, {3}));
  EXPECT_EQ(universal(ff(2, {0, 1, 0}), ff(4, {2, 0, 2})), ff(4, {2, 0}));
  EXPECT_EQ(code_of([] { universal(ff(1, {0, 0}), ff(5, {3, 4})); }), ErrorCode::NotAFiber);
  EXPECT_EQ(code_of([] { universal(ff(3, {0, 0}), ff(5, {3, 3})); }), ErrorCode::NotSurjective);
}

TEST(Sorting, Examples) {
  EXPECT_EQ(sort_by_mono_key(ff(3, {2, 0, 1})), ff(3, {1, 2, 0}));
  EXPECT_EQ(sort_by_mono_key(ff(5, {0, 2, 4})), identity(3));
  EXPECT_EQ(stable_sort_by_key(ff(2, {1, 0, 1})), ff(3, {1, 0, 2}));
  EXPECT_EQ(code_of([] { sort_by_mono_key(ff(2, {1, 1})); }), ErrorCode::KeyNotMono);
}

TEST(Sorting, UniqueSortAgreesWithStableSortOnMonoKeys) {
  Rng rng(11);
  for (int rep = 0; rep < 300; ++rep) {
    Nat n = uniform(rng, 0, 30);
    IntArray keys = arange(n + uniform(rng, 0, 10));
    std::shuffle(keys.begin(), keys.end(), rng);
    FiniteFunction key(keys.size(), IntArray(keys.begin(), keys.begin() + n));
    FiniteFunction p = sort_by_mono_key(key);
    EXPECT_EQ(p, stable_sort_by_key(key));
    IntArray sorted = compose(p, key).table();
    EXPECT_TRUE(std::is_sorted(sorted.begin(), sorted.end()));
  }
}

TEST(Slice, PicksContiguousRange) {
  FiniteFunction f = ff(9, {4, 5, 6, 7});
  EXPECT_EQ(slice(f, 1, 2), ff(9, {5, 6}));
  EXPECT_EQ(slice(f, 4, 0), ff(9, {}));
}

TEST(Inverse, UndoesPermutation) {
  Rng rng(12);
  for (int rep = 0; rep < 100; ++rep) {
    FiniteFunction p = testing::random_perm(rng, uniform(rng, 0, 20));
    EXPECT_EQ(compose(p, inverse(p)), identity(p.source()));
    EXPECT_EQ(compose(inverse(p), p), identity(p.source()));
  }
}

// Smaller cousin of acceptance criterion 1, kept here for fast feedback.
TEST(FinFunLaws, RandomizedSmoke) {
  Rng rng(13);
  for (int rep = 0; rep < 500; ++rep) {
    Nat a = uniform(rng, 0, 12), b = uniform(rng, 1, 12), c = uniform(rng, 1, 12),
        d = uniform(rng, 1, 12);
    auto f = random_ff(rng, a, b), g = random_ff(rng, b, c), h = random_ff(rng, c, d);
    EXPECT_EQ(compose(compose(f, g), h), compose(f, compose(g, h)));
    auto g2 = random_ff(rng, uniform(rng, 0, 12), b);
    EXPECT_EQ(compose(inj0(a, g2.source()), coproduct(f, g2)), f);
    EXPECT_EQ(compose(inj1(a, g2.source()), coproduct(f, g2)), g2);
    EXPECT_EQ(tensor(f, g), coproduct(compose(f, inj0(b, c)), compose(g, inj1(b, c))));
    EXPECT_EQ(compose(tensor(f, g), twist(b, c)), compose(twist(a, b), tensor(g, f)));
  }
}

TEST(Coequalizer, CoforksFactorThroughQuotient) {
  Rng rng(14);
  for (int rep = 0; rep < 300; ++rep) {
    Nat a = uniform(rng, 0, 10), b = uniform(rng, 1, 16);
    auto f = random_ff(rng, a, b), g = random_ff(rng, a, b);
    FiniteFunction q = coequalizer(f, g);
    EXPECT_EQ(compose(f, q), compose(g, q));
    EXPECT_TRUE(is_surjective(q));
    // Any map out of the quotient gives a cofork.
    FiniteFunction u = random_ff(rng, q.target(), uniform(rng, 1, 5));
    FiniteFunction h = compose(q, u);
    EXPECT_EQ(universal(q, h), u);
  }
}

}  // namespace
}  // namespace sdiag
