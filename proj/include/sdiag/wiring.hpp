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

// One-shot elaboration of a whole term: tensor every leaf, then glue all
// ∘-bound boundaries with a single coequalizer.

#pragma once

#include <span>
#include <tuple>
#include <vector>

#include "sdiag/segmented.hpp"
#include "sdiag/tree.hpp"

namespace sdiag {

// es : A_S -> GW  boundary sources of the whole term
// et : A_T -> GW  boundary targets of the whole term
// es_prime, et_prime : A_I -> GW  the pairs glued by some ∘-node
struct WiringMaps {
  FiniteFunction es;
  FiniteFunction et;
  FiniteFunction es_prime;
  FiniteFunction et_prime;
  friend bool operator==(const WiringMaps&, const WiringMaps&) = default;
};

namespace detail {

inline WiringMaps wiring_rec(const TreeArrays& ta, std::span<const Diagram> leaves, Nat node,
                             Nat& next_leaf) {
  if (ta.left[node] == ta.n) {
    const Diagram& d = leaves[next_leaf++];
    Nat w = d.G.W();
    return {d.s, d.t, initial(w), initial(w)};
  }
  WiringMaps l = wiring_rec(ta, leaves, ta.left[node], next_leaf);
  WiringMaps r = wiring_rec(ta, leaves, ta.right[node], next_leaf);
  if (!ta.is_compose(node)) {
    return {tensor(l.es, r.es), tensor(l.et, r.et), tensor(l.es_prime, r.es_prime),
            tensor(l.et_prime, r.et_prime)};
  }
  Nat wl = l.es.target(), wr = r.es.target();
  return {compose(l.es, inj0(wl, wr)), compose(r.et, inj1(wl, wr)),
          tensor(l.es_prime, coproduct(r.es, r.es_prime)),
          tensor(coproduct(l.et_prime, l.et), r.et_prime)};
}

}  // namespace detail

// Structural recursion over the tree; leaves[i] is the diagram of leaf i.
inline WiringMaps wiring_maps_recursive(const TreeArrays& ta, std::span<const Diagram> leaves) {
  if (leaves.size() != ta.m) fail(ErrorCode::ShapeMismatch, "one diagram per leaf required");
  Nat next = 0;
  return detail::wiring_rec(ta, leaves, 0, next);
}

// Sort-based form. Leaf i contributes arity[i] sources and coarity[i]
// targets; all_s / all_t are the tensors of the leaf source / target legs.
inline WiringMaps wiring_maps_sorted(const TreeArrays& ta, const IntArray& arity,
                                     const IntArray& coarity, const FiniteFunction& all_s,
                                     const FiniteFunction& all_t) {
  AncestorMaps anc = ancestor_maps_jump(ta);
  const Nat m = ta.m;
  FiniteFunction by_left = stable_sort_by_key(anc.left);
  FiniteFunction by_right = stable_sort_by_key(anc.right);
  FiniteFunction a = sizes_function(arity);
  FiniteFunction b = sizes_function(coarity);
  FiniteFunction es_all = compose(injections(a, by_left), all_s);
  FiniteFunction et_all = compose(injections(b, by_right), all_t);
  Nat unbound_s = 0, unbound_t = 0;
  for (Nat i = 0; i < m; ++i) {
    if (anc.left(i) == 0) unbound_s += arity[i];
    if (anc.right(i) == m - 1) unbound_t += coarity[i];
  }
  Nat bound_t = et_all.source() - unbound_t;
  return {slice(es_all, 0, unbound_s), slice(et_all, bound_t, unbound_t),
          slice(es_all, unbound_s, es_all.source() - unbound_s), slice(et_all, 0, bound_t)};
}

inline WiringMaps wiring_maps_sorted(const TreeArrays& ta, std::span<const Diagram> leaves) {
  if (leaves.size() != ta.m) fail(ErrorCode::ShapeMismatch, "one diagram per leaf required");
  IntArray arity(ta.m), coarity(ta.m);
  std::vector<FiniteFunction> ss, ts;
  ss.reserve(ta.m);
  ts.reserve(ta.m);
  for (Nat i = 0; i < ta.m; ++i) {
    arity[i] = leaves[i].s.source();
    coarity[i] = leaves[i].t.source();
    ss.push_back(leaves[i].s);
    ts.push_back(leaves[i].t);
  }
  return wiring_maps_sorted(ta, arity, coarity, tensor_all(ss), tensor_all(ts));
}

namespace detail {

// Arity bookkeeping only: ∘-nodes need matching widths, or the single
// coequalizer would pair wires across the wrong boundaries.
inline void check_widths(const Term& t, const TreeArrays& ta, const IntArray& arity,
                         const IntArray& coarity) {
  IntArray in(ta.n), out(ta.n);
  Nat leaf = ta.m;
  for (Nat i = ta.n; i-- > 0;) {
    if (ta.left[i] == ta.n) {
      --leaf;
      in[i] = arity[leaf];
      out[i] = coarity[leaf];
      continue;
    }
    Nat l = ta.left[i], r = ta.right[i];
    if (ta.is_compose(i)) {
      if (out[l] != in[r]) {
        fail(ErrorCode::TypeError, node_path(t, ta.term_node[i]) + ": left has " +
                                       std::to_string(out[l]) + " outputs, right has " +
                                       std::to_string(in[r]) + " inputs");
      }
      in[i] = in[l];
      out[i] = out[r];
    } else {
      in[i] = in[l] + in[r];
      out[i] = out[l] + out[r];
    }
  }
}

inline Diagram glue(const BipartiteMultigraph& g, const WiringMaps& wm) {
  FiniteFunction q = coequalizer(wm.et_prime, wm.es_prime);
  return {compose(wm.es, q), compose(wm.et, q), coequalize_wires(g, q)};
}

}  // namespace detail

// Wires up existing diagrams along the shape of a tree.
inline Diagram to_diagram_fast(const Signature& sig, const TreeArrays& ta,
                               std::span<const Diagram> leaves) {
  Diagram all = tensor_all(leaves, sig);
  IntArray arity(ta.m), coarity(ta.m);
  for (Nat i = 0; i < ta.m; ++i) {
    arity[i] = leaves[i].s.source();
    coarity[i] = leaves[i].t.source();
  }
  return detail::glue(all.G, wiring_maps_sorted(ta, arity, coarity, all.s, all.t));
}

inline Diagram to_diagram_fast(const Signature& sig, const Term& t) {
  TreeArrays ta = tree_arrays(t);
  IntArray arity(ta.m), coarity(ta.m);
  bool all_generators = true;
  for (Nat i = 0; i < ta.m; ++i) {
    Nat tn = ta.term_node[ta.leaf_node[i]];
    const Leaf& lf = t.leaf_of(tn);
    try {
      std::tie(arity[i], coarity[i]) = leaf_widths(sig, lf);
    } catch (const Error& e) {
      fail(ErrorCode::TypeError, node_path(t, tn) + ": " + e.detail());
    }
    all_generators = all_generators && lf.kind == LeafKind::Gen;
  }
  detail::check_widths(t, ta, arity, coarity);
  if (all_generators) {
    std::vector<OpInstance> ops(ta.m);
    for (Nat i = 0; i < ta.m; ++i) {
      const Leaf& lf = t.leaf_of(ta.term_node[ta.leaf_node[i]]);
      ops[i] = {lf.op, lf.typing};
    }
    Diagram g = tensor_operations(sig, ops);
    return detail::glue(g.G, wiring_maps_sorted(ta, arity, coarity, g.s, g.t));
  }
  std::vector<Diagram> leaves;
  leaves.reserve(ta.m);
  for (Nat i = 0; i < ta.m; ++i) {
    leaves.push_back(leaf_diagram(sig, t.leaf_of(ta.term_node[ta.leaf_node[i]])));
  }
  return to_diagram_fast(sig, ta, leaves);
}

}  // namespace sdiag
