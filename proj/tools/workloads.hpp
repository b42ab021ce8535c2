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

// Synthetic terms for benchmarks and scaling checks. Every leaf is the
// endomorphism f : A -> A, so any tree shape typechecks as long as seq nodes
// join subterms of equal width.

#pragma once

#include <random>
#include <string>
#include <vector>

#include "sdiag/term.hpp"

namespace sdiag::workloads {

inline Signature endo_signature() {
  Signature sig;
  Nat a = sig.add_object("A");
  sig.add_op("f", {{a}, {a}});
  return sig;
}

inline Nat add_f(Term& t) {
  Leaf l;
  l.kind = LeafKind::Gen;
  return t.add_leaf(std::move(l));
}

// f ; f ; ... ; f with n leaves, nested to the right.
inline Term chain(Nat n) {
  Term t;
  Nat acc = add_f(t);
  std::vector<Nat> leaves{acc};
  for (Nat i = 1; i < n; ++i) leaves.push_back(add_f(t));
  for (Nat i = n - 1; i-- > 0;) acc = t.add_seq(leaves[i], acc);
  t.set_root(acc);
  return t;
}

// Balanced tree over n leaves, par on even levels and seq on odd ones. When
// n is not a power of two the odd subterm out can force a par.
inline Term balanced(Nat n) {
  Term t;
  std::vector<std::pair<Nat, Nat>> level;  // (node, width)
  for (Nat i = 0; i < n; ++i) level.push_back({add_f(t), 1});
  for (bool par = true; level.size() > 1; par = !par) {
    std::vector<std::pair<Nat, Nat>> up;
    for (Nat i = 0; i + 1 < level.size(); i += 2) {
      auto [a, wa] = level[i];
      auto [b, wb] = level[i + 1];
      up.push_back(!par && wa == wb ? std::pair{t.add_seq(a, b), wa}
                                    : std::pair{t.add_par(a, b), wa + wb});
    }
    if (level.size() % 2) up.push_back(level.back());
    level = std::move(up);
  }
  t.set_root(level.front().first);
  return t;
}

// Random shape: repeatedly joins two random subterms, seq when widths agree
// and a coin says so.
inline Term random_shape(Nat n, std::mt19937_64& rng) {
  Term t;
  std::vector<std::pair<Nat, Nat>> pool;  // (node, width)
  for (Nat i = 0; i < n; ++i) pool.push_back({add_f(t), 1});
  while (pool.size() > 1) {
    std::uniform_int_distribution<Nat> pick(0, pool.size() - 1);
    Nat i = pick(rng);
    std::swap(pool[i], pool.back());
    auto a = pool.back();
    pool.pop_back();
    Nat j = pick(rng) % pool.size();
    auto b = pool[j];
    bool seq = a.second == b.second && (rng() & 1);
    pool[j] = seq ? std::pair{t.add_seq(a.first, b.first), a.second}
                  : std::pair{t.add_par(a.first, b.first), a.second + b.second};
  }
  t.set_root(pool.front().first);
  return t;
}

}  // namespace sdiag::workloads
