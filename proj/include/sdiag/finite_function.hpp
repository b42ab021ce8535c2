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

#pragma once

#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sdiag/array_kernel.hpp"

namespace sdiag {

// A function {0..source-1} -> {0..target-1} stored as its table.
// Invariant: every entry < target. The source is the table length.
class FiniteFunction {
 public:
  FiniteFunction() = default;

  FiniteFunction(Nat target, IntArray table)
      : target_(target), table_(std::move(table)) {
    for (Nat i = 0; i < table_.size(); ++i) {
      if (table_[i] >= target_) {
        fail(ErrorCode::ValueOutOfRange,
             "table[" + std::to_string(i) + "] = " +
                 std::to_string(table_[i]) + " >= target " +
                 std::to_string(target_));
      }
    }
  }

  // Caller guarantees the invariant.
  static FiniteFunction unchecked(Nat target, IntArray table) {
    FiniteFunction f;
    f.target_ = target;
    f.table_ = std::move(table);
    return f;
  }

  Nat source() const noexcept { return table_.size(); }
  Nat target() const noexcept { return target_; }
  const IntArray& table() const noexcept { return table_; }
  Nat operator()(Nat i) const { return table_[i]; }

  friend bool operator==(const FiniteFunction&, const FiniteFunction&) = default;

 private:
  Nat target_ = 0;
  IntArray table_;
};

inline std::ostream& operator<<(std::ostream& os, const FiniteFunction& f) {
  os << "(" << f.target() << ",[";
  for (Nat i = 0; i < f.source(); ++i) os << (i ? "," : "") << f(i);
  return os << "])";
}

inline FiniteFunction identity(Nat n) {
  return FiniteFunction::unchecked(n, arange(n));
}

inline FiniteFunction initial(Nat b) { return FiniteFunction::unchecked(b, {}); }

inline FiniteFunction terminal(Nat a) {
  return FiniteFunction::unchecked(1, zeros(a));
}

// Diagrammatic order: compose(f, g)(i) = g(f(i)).
inline FiniteFunction compose(const FiniteFunction& f, const FiniteFunction& g) {
  if (f.target() != g.source()) {
    fail(ErrorCode::TypeMismatch, "compose: target " +
                                      std::to_string(f.target()) +
                                      " != source " + std::to_string(g.source()));
  }
  IntArray r(f.source());
  const IntArray& gt = g.table();
  const IntArray& ft = f.table();
  for (Nat i = 0; i < r.size(); ++i) r[i] = gt[ft[i]];
  return FiniteFunction::unchecked(g.target(), std::move(r));
}

inline FiniteFunction inj0(Nat a, Nat b) {
  return FiniteFunction::unchecked(a + b, arange(a));
}

inline FiniteFunction inj1(Nat a, Nat b) {
  IntArray r = arange(b);
  for (auto& v : r) v += a;
  return FiniteFunction::unchecked(a + b, std::move(r));
}

// compose(f, inj1(offset, target - offset)) without building the injection;
// offset 0 gives compose(f, inj0(f.target(), target - f.target())).
inline FiniteFunction shift(const FiniteFunction& f, Nat offset, Nat target) {
  if (offset + f.target() > target) {
    fail(ErrorCode::TypeMismatch, "shift: image does not fit in the target");
  }
  IntArray r(f.table().begin(), f.table().end());
  if (offset) {
    for (auto& v : r) v += offset;
  }
  return FiniteFunction::unchecked(target, std::move(r));
}

// Copairing [f, g] : A0 + A1 -> B.
inline FiniteFunction coproduct(const FiniteFunction& f, const FiniteFunction& g) {
  if (f.target() != g.target()) {
    fail(ErrorCode::TargetMismatch, "coproduct: targets " +
                                        std::to_string(f.target()) + " and " +
                                        std::to_string(g.target()));
  }
  IntArray r;
  r.reserve(f.source() + g.source());
  r.insert(r.end(), f.table().begin(), f.table().end());
  r.insert(r.end(), g.table().begin(), g.table().end());
  return FiniteFunction::unchecked(f.target(), std::move(r));
}

inline FiniteFunction tensor(const FiniteFunction& f, const FiniteFunction& g) {
  IntArray r;
  r.reserve(f.source() + g.source());
  r.insert(r.end(), f.table().begin(), f.table().end());
  for (Nat v : g.table()) r.push_back(v + f.target());
  return FiniteFunction::unchecked(f.target() + g.target(), std::move(r));
}

// N-ary tensor in one pass.
inline FiniteFunction tensor_all(std::span<const FiniteFunction> fs) {
  Nat total = 0;
  for (const auto& f : fs) total += f.source();
  IntArray r;
  r.reserve(total);
  Nat offset = 0;
  for (const auto& f : fs) {
    for (Nat v : f.table()) r.push_back(v + offset);
    offset += f.target();
  }
  return FiniteFunction::unchecked(offset, std::move(r));
}

inline FiniteFunction twist(Nat a, Nat b) {
  return coproduct(inj1(b, a), inj0(b, a));
}

// Precondition p is a permutation.
inline FiniteFunction inverse(const FiniteFunction& p) {
  IntArray r(p.source());
  for (Nat i = 0; i < p.source(); ++i) r[p(i)] = i;
  return FiniteFunction::unchecked(p.source(), std::move(r));
}

inline bool is_injective(const FiniteFunction& f) {
  std::vector<bool> seen(f.target(), false);
  for (Nat v : f.table()) {
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

inline bool is_surjective(const FiniteFunction& f) {
  std::vector<bool> seen(f.target(), false);
  Nat hit = 0;
  for (Nat v : f.table()) {
    if (!seen[v]) ++hit;
    seen[v] = true;
  }
  return hit == f.target();
}

inline bool is_permutation(const FiniteFunction& f) {
  return f.source() == f.target() && is_injective(f);
}

// Contiguous restriction f restricted to [begin, begin+len).
inline FiniteFunction slice(const FiniteFunction& f, Nat begin, Nat len) {
  if (begin + len > f.source()) {
    fail(ErrorCode::IndexOutOfRange, "slice past end of table");
  }
  return FiniteFunction::unchecked(
      f.target(), IntArray(f.table().begin() + begin,
                           f.table().begin() + begin + len));
}

// Quotient of the target by the relation f(i) ~ g(i); labels follow the
// smallest element of each class.
inline FiniteFunction coequalizer(const FiniteFunction& f, const FiniteFunction& g) {
  if (f.source() != g.source() || f.target() != g.target()) {
    fail(ErrorCode::TypeMismatch, "coequalizer: not a parallel pair");
  }
  auto [q, labels] = connected_components(f.table(), g.table(), f.target());
  return FiniteFunction::unchecked(q, std::move(labels));
}

// The unique u with compose(q, u) = f, for surjective q.
inline FiniteFunction universal(const FiniteFunction& q, const FiniteFunction& f) {
  if (q.source() != f.source()) {
    fail(ErrorCode::TypeMismatch, "universal: sources differ");
  }
  constexpr Nat kUnset = static_cast<Nat>(-1);
  IntArray u(q.target(), kUnset);
  for (Nat i = 0; i < q.source(); ++i) {
    Nat& slot = u[q(i)];
    if (slot == kUnset) {
      slot = f(i);
    } else if (slot != f(i)) {
      fail(ErrorCode::NotAFiber, "fiber " + std::to_string(q(i)) +
                                     " maps to both " + std::to_string(slot) +
                                     " and " + std::to_string(f(i)));
    }
  }
  for (Nat j = 0; j < u.size(); ++j) {
    if (u[j] == kUnset) {
      fail(ErrorCode::NotSurjective, "label " + std::to_string(j) + " unused");
    }
  }
  return FiniteFunction::unchecked(f.target(), std::move(u));
}

// Permutation p such that compose(p, key) is increasing. key must be injective.
inline FiniteFunction sort_by_mono_key(const FiniteFunction& key) {
  if (!is_injective(key)) {
    fail(ErrorCode::KeyNotMono, "sort key is not injective");
  }
  return FiniteFunction::unchecked(key.source(),
                                   stable_argsort_dense(key.table(), key.target()));
}

inline FiniteFunction stable_sort_by_key(const FiniteFunction& key) {
  return FiniteFunction::unchecked(key.source(),
                                   stable_argsort_dense(key.table(), key.target()));
}

}  // namespace sdiag
