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

// Optic semantics: each object splits into a forward and a reverse part and
// each generator into a forward map A -> B ⊗ M and a reverse map M ⊗ B' -> A'.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sdiag/functor.hpp"

namespace sdiag {

struct OpticArrow {
  Diagram fwd;        // fwd(A) -> fwd(B) ⊗ M
  Diagram rev;        // M ⊗ rev(B) -> rev(A)
  IntArray residual;  // M
};

struct OpticSpec {
  Signature source;
  Signature target;
  std::vector<IntArray> fwd_objects;  // per source object
  std::vector<IntArray> rev_objects;  // per source object
  std::vector<std::optional<OpticArrow>> arrows;  // per source op
};

inline IntArray concat_images(const std::vector<IntArray>& images, std::span<const Nat> labels) {
  IntArray r;
  for (Nat o : labels) r.insert(r.end(), images.at(o).begin(), images.at(o).end());
  return r;
}

// Interleaved position -> blocked position, where blocked is
// fwd(A0) .. fwd(An-1) rev(A0) .. rev(An-1) and interleaved is
// fwd(A0) rev(A0) .. fwd(An-1) rev(An-1).
inline FiniteFunction interleave_permutation(const OpticSpec& spec, std::span<const Nat> labels) {
  const Nat n = labels.size();
  IntArray sizes(2 * n), pick(2 * n);
  for (Nat i = 0; i < n; ++i) {
    sizes[i] = spec.fwd_objects.at(labels[i]).size();
    sizes[n + i] = spec.rev_objects.at(labels[i]).size();
    pick[2 * i] = i;
    pick[2 * i + 1] = n + i;
  }
  return injections(sizes_function(std::move(sizes)),
                    FiniteFunction::unchecked(2 * n, std::move(pick)));
}

// The permutation spider from blocked to interleaved order.
inline Diagram interleave(const OpticSpec& spec, std::span<const Nat> labels) {
  IntArray blocked = concat_images(spec.fwd_objects, labels);
  IntArray rev = concat_images(spec.rev_objects, labels);
  blocked.insert(blocked.end(), rev.begin(), rev.end());
  FiniteFunction perm = interleave_permutation(spec, labels);
  FiniteFunction legs = identity(blocked.size());
  return spider(spec.target, legs, perm,
                Labeling(spec.target.num_objects(), std::move(blocked)));
}

// Image of one generator: fwd ⊗ rev with the residual wires glued, boundary
// reordered to the interleaved convention.
inline Diagram optic_segment(const OpticSpec& spec, Nat op) {
  if (op >= spec.arrows.size() || !spec.arrows[op]) {
    fail(ErrorCode::MissingOpticSpec, "no optic for " + spec.source.op_name(op));
  }
  const OpticArrow& oa = *spec.arrows[op];
  const Typing& ty = spec.source.typing_of(op, 0);
  const Nat fa = concat_images(spec.fwd_objects, ty.source).size();
  const Nat ra = concat_images(spec.rev_objects, ty.source).size();
  const Nat fb = concat_images(spec.fwd_objects, ty.target).size();
  const Nat rb = concat_images(spec.rev_objects, ty.target).size();
  const Nat m = oa.residual.size();
  if (oa.fwd.s.source() != fa || oa.fwd.t.source() != fb + m || oa.rev.s.source() != m + rb ||
      oa.rev.t.source() != ra) {
    fail(ErrorCode::EncodingMismatch, "optic for " + spec.source.op_name(op) + " has wrong widths");
  }
  const Nat wf = oa.fwd.G.W(), wr = oa.rev.G.W();
  FiniteFunction to_f = inj0(wf, wr), to_r = inj1(wf, wr);
  FiniteFunction q = coequalizer(compose(slice(oa.fwd.t, fb, m), to_f),
                                 compose(slice(oa.rev.s, 0, m), to_r));
  FiniteFunction src_blocked = coproduct(compose(oa.fwd.s, to_f), compose(oa.rev.t, to_r));
  FiniteFunction tgt_blocked = coproduct(compose(slice(oa.fwd.t, 0, fb), to_f),
                                         compose(slice(oa.rev.s, m, rb), to_r));
  FiniteFunction s = compose(compose(interleave_permutation(spec, ty.source), src_blocked), q);
  FiniteFunction t = compose(compose(interleave_permutation(spec, ty.target), tgt_blocked), q);
  return {std::move(s), std::move(t), coequalize_wires(coproduct(oa.fwd.G, oa.rev.G), q)};
}

inline FunctorEncoding optic_encoding(const OpticSpec& spec) {
  std::vector<IntArray> objs;
  for (Nat o = 0; o < spec.source.num_objects(); ++o) {
    IntArray img = spec.fwd_objects.at(o);
    img.insert(img.end(), spec.rev_objects.at(o).begin(), spec.rev_objects.at(o).end());
    objs.push_back(std::move(img));
  }
  std::vector<Diagram> arrows;
  for (Nat x = 0; x < spec.source.num_ops(); ++x) arrows.push_back(optic_segment(spec, x));
  return make_encoding(spec.source, spec.target, objs, arrows);
}

inline Diagram to_optic(const OpticSpec& spec, const Diagram& d) {
  return apply_functor(optic_encoding(spec), d);
}

// Re-selects the boundary of an optic image so that it reads
// fwd(A) ⊗ rev(B) -> fwd(B) ⊗ rev(A).
inline Diagram adapt_ma(const OpticSpec& spec, const Diagram& optic,
                        std::span<const Nat> src_labels, std::span<const Nat> tgt_labels) {
  for (Nat x = 0; x < spec.arrows.size(); ++x) {
    if (spec.arrows[x] && !is_monogamous_acyclic(spec.arrows[x]->rev)) {
      fail(ErrorCode::NotAdaptable, "reverse map of " + spec.source.op_name(x) +
                                        " is not monogamous acyclic");
    }
  }
  const Nat fa = concat_images(spec.fwd_objects, src_labels).size();
  const Nat fb = concat_images(spec.fwd_objects, tgt_labels).size();
  FiniteFunction pa = interleave_permutation(spec, src_labels);
  FiniteFunction pb = interleave_permutation(spec, tgt_labels);
  if (pa.source() != optic.s.source() || pb.source() != optic.t.source()) {
    fail(ErrorCode::ShapeMismatch, "boundary labels do not match the optic diagram");
  }
  FiniteFunction s_blocked = compose(inverse(pa), optic.s);
  FiniteFunction t_blocked = compose(inverse(pb), optic.t);
  const Nat ra = s_blocked.source() - fa, rb = t_blocked.source() - fb;
  return {coproduct(slice(s_blocked, 0, fa), slice(t_blocked, fb, rb)),
          coproduct(slice(t_blocked, 0, fb), slice(s_blocked, fa, ra)), optic.G};
}

}  // namespace sdiag
