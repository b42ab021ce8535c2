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

// Reverse derivatives of arithmetic circuits as optics.
//
// The circuit signature has one object R and the operations below. Copying
// and deleting are ordinary generators (dup, discard), so circuits stay
// monogamous acyclic and can be evaluated directly.

#pragma once

#include <vector>

#include "sdiag/evaluate.hpp"
#include "sdiag/optics.hpp"

namespace sdiag::arith {

enum Op : Nat { kAdd = 0, kMul, kNeg, kDup, kZero, kOne, kDiscard, kNumOps };

inline const Signature& signature() {
  static const Signature sig = [] {
    Signature s;
    Nat r = s.add_object("R");
    s.add_op("add", {{r, r}, {r}});
    s.add_op("mul", {{r, r}, {r}});
    s.add_op("neg", {{r}, {r}});
    s.add_op("dup", {{r}, {r, r}});
    s.add_op("zero", {{}, {r}});
    s.add_op("one", {{}, {r}});
    s.add_op("discard", {{r}, {}});
    return s;
  }();
  return sig;
}

inline bool is_arith_signature(const Signature& s) { return s == signature(); }

template <class T>
Interpretation<T> interpretation() {
  Interpretation<T> in;
  in.ops.resize(kNumOps);
  using V = std::vector<T>;
  using A = std::span<const T>;
  in.ops[kAdd] = [](A x) { return V{x[0] + x[1]}; };
  in.ops[kMul] = [](A x) { return V{x[0] * x[1]}; };
  in.ops[kNeg] = [](A x) { return V{-x[0]}; };
  in.ops[kDup] = [](A x) { return V{x[0], x[0]}; };
  in.ops[kZero] = [](A) { return V{T(0)}; };
  in.ops[kOne] = [](A) { return V{T(1)}; };
  in.ops[kDiscard] = [](A) { return V{}; };
  return in;
}

inline Diagram gen(Nat op) { return singleton(signature(), op, 0); }

inline Diagram wires(Nat n) {
  return identity_diagram(signature(), Labeling(1, zeros(n)));
}

inline Diagram par(std::initializer_list<Diagram> ds) {
  return tensor_all(std::span<const Diagram>(ds.begin(), ds.size()), signature());
}

// Permutation on n wires: output k carries input perm[k].
inline Diagram permute(IntArray perm) {
  Nat n = perm.size();
  return spider(signature(), identity(n), FiniteFunction(n, std::move(perm)),
                Labeling(1, zeros(n)));
}

// x0..x{n-1} -> x0..x{n-1} x0..x{n-1}
inline Diagram copy_all(Nat n) {
  std::vector<Diagram> dups(n, gen(kDup));
  Diagram d = n ? tensor_all(dups, signature()) : wires(0);
  IntArray perm(2 * n);
  for (Nat k = 0; k < n; ++k) {
    perm[k] = 2 * k;
    perm[n + k] = 2 * k + 1;
  }
  return compose(d, permute(std::move(perm)));
}

inline Diagram reverse_of(Nat op) {
  switch (op) {
    case kAdd: return par({gen(kDiscard), gen(kDiscard), gen(kDup)});
    case kMul:
      // x, y, d -> x, y, d, d -> d, y, d, x -> d*y, d*x
      return compose(compose(par({wires(2), gen(kDup)}), permute({2, 1, 3, 0})),
                     par({gen(kMul), gen(kMul)}));
    case kNeg: return par({gen(kDiscard), gen(kNeg)});
    case kDup: return par({gen(kDiscard), gen(kAdd)});
    case kZero:
    case kOne: return gen(kDiscard);
    case kDiscard: return par({gen(kDiscard), gen(kZero)});
    default: break;
  }
  fail(ErrorCode::UnsupportedGenerator, "no reverse derivative for op " + std::to_string(op));
}

// Lens-shaped optics: the residual is the whole input.
inline OpticSpec optic_spec() {
  const Signature& sig = signature();
  OpticSpec spec{sig, sig, {{0}}, {{0}}, {}};
  for (Nat op = 0; op < kNumOps; ++op) {
    const Typing& ty = sig.typing_of(op, 0);
    Nat n = ty.source.size();
    Diagram fwd = compose(copy_all(n), tensor(gen(op), wires(n)));
    spec.arrows.push_back(OpticArrow{std::move(fwd), reverse_of(op), ty.source});
  }
  return spec;
}

// fwd(A) ⊗ rev(B) -> fwd(B) ⊗ rev(A): (x, dy) |-> (f(x), R[f](x, dy)).
inline Diagram rdiff(const Diagram& d) {
  if (d.G.wn.target() != 1 || d.G.xn.target() != kNumOps) {
    fail(ErrorCode::UnsupportedGenerator, "diagram is not over the arithmetic signature");
  }
  if (!is_monogamous_acyclic(d)) {
    fail(ErrorCode::NotMonogamousAcyclic, "reverse derivative needs a monogamous acyclic circuit");
  }
  static const OpticSpec spec = optic_spec();
  Diagram optic = to_optic(spec, d);
  return adapt_ma(spec, optic, d.source_type().table(), d.target_type().table());
}

}  // namespace sdiag::arith
