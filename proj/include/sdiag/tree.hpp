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

// Flat encodings of a term's shape and the per-leaf ancestor maps derived
// from it.

#pragma once

#include <algorithm>
#include <bit>
#include <utility>
#include <vector>

#include "sdiag/term.hpp"

namespace sdiag {

// Node i is the i-th node in preorder; leaves are numbered left to right.
// For m leaves there are n = 2m-1 nodes and m-1 internal nodes.
struct TreeArrays {
  Nat n = 0;
  Nat m = 0;
  FiniteFunction parent;      // n -> n+1, root -> n
  FiniteFunction is_left;     // n -> 2
  FiniteFunction is_right;    // n -> 2
  FiniteFunction is_compose;  // n -> 2
  IntArray left, right;       // children; n at leaves
  IntArray leaf_node;         // leaf -> node
  IntArray internal_inorder;  // node -> inorder rank among internal nodes (m-1 at leaves)
  IntArray term_node;         // node -> index in the source Term arena
};

inline TreeArrays tree_arrays(const Term& t) {
  if (t.empty()) fail(ErrorCode::TypeError, "empty term");
  constexpr Nat kNoParent = static_cast<Nat>(-1);
  TreeArrays ta;
  const Nat total = t.nodes().size();
  // Preorder walk from the root; children of a popped node get their index
  // when they are popped in turn.
  IntArray order, par, side;
  order.reserve(total);
  std::vector<std::pair<Nat, std::pair<Nat, Nat>>> stack{{t.root(), {kNoParent, 0}}};
  while (!stack.empty()) {
    auto [tn, link] = stack.back();
    stack.pop_back();
    order.push_back(tn);
    par.push_back(link.first);
    side.push_back(link.second);
    const auto& node = t.node(tn);
    if (node.kind != NodeKind::Leaf) {
      Nat me = order.size() - 1;
      stack.push_back({node.b, {me, 1}});
      stack.push_back({node.a, {me, 0}});
    }
  }
  const Nat n = order.size();
  ta.n = n;
  ta.term_node = order;
  IntArray parent(n), is_left(n, 0), is_right(n, 0), is_comp(n, 0);
  ta.left.assign(n, n);
  ta.right.assign(n, n);
  for (Nat i = 0; i < n; ++i) {
    const auto& node = t.node(order[i]);
    is_comp[i] = node.kind == NodeKind::Seq ? 1 : 0;
    if (par[i] == kNoParent) {
      parent[i] = n;
      continue;
    }
    parent[i] = par[i];
    if (side[i] == 0) {
      is_left[i] = 1;
      ta.left[par[i]] = i;
    } else {
      is_right[i] = 1;
      ta.right[par[i]] = i;
    }
  }
  for (Nat i = 0; i < n; ++i) {
    if (ta.left[i] == n) ta.leaf_node.push_back(i);
  }
  ta.m = ta.leaf_node.size();
  // Leaves under each node (children have larger preorder index).
  IntArray leaves_below(n, 1);
  for (Nat i = n; i-- > 0;) {
    if (ta.left[i] != n) leaves_below[i] = leaves_below[ta.left[i]] + leaves_below[ta.right[i]];
  }
  // Index of each subtree's first leaf, top down.
  IntArray first_leaf(n, 0);
  for (Nat i = 0; i < n; ++i) {
    if (ta.left[i] == n) continue;
    first_leaf[ta.left[i]] = first_leaf[i];
    first_leaf[ta.right[i]] = first_leaf[i] + leaves_below[ta.left[i]];
  }
  // Inorder alternates leaf, internal, leaf, ...: an internal node sits just
  // after the last leaf of its left subtree.
  ta.internal_inorder.assign(n, ta.m - 1);
  for (Nat i = 0; i < n; ++i) {
    if (ta.left[i] != n) ta.internal_inorder[i] = first_leaf[i] + leaves_below[ta.left[i]] - 1;
  }
  ta.parent = FiniteFunction::unchecked(n + 1, std::move(parent));
  ta.is_left = FiniteFunction::unchecked(2, std::move(is_left));
  ta.is_right = FiniteFunction::unchecked(2, std::move(is_right));
  ta.is_compose = FiniteFunction::unchecked(2, std::move(is_comp));
  return ta;
}

// aL(i): 0 if leaf i has no ∘-ancestor holding it in its right subtree,
// else 1 + inorder rank of the closest such ancestor.
// aR(i): inorder rank of the closest ∘-ancestor holding leaf i in its left
// subtree, else m-1.
struct AncestorMaps {
  FiniteFunction left;   // m -> m
  FiniteFunction right;  // m -> m
  friend bool operator==(const AncestorMaps&, const AncestorMaps&) = default;
};

namespace detail {

inline void ancestors_rec(const TreeArrays& ta, Nat node, Nat al, Nat ar, IntArray& out_l,
                          IntArray& out_r, Nat& next_leaf) {
  if (ta.left[node] == ta.n) {
    out_l[next_leaf] = al;
    out_r[next_leaf] = ar;
    ++next_leaf;
    return;
  }
  if (ta.is_compose(node)) {
    Nat rank = ta.internal_inorder[node];
    ancestors_rec(ta, ta.left[node], al, rank, out_l, out_r, next_leaf);
    ancestors_rec(ta, ta.right[node], rank + 1, ar, out_l, out_r, next_leaf);
  } else {
    ancestors_rec(ta, ta.left[node], al, ar, out_l, out_r, next_leaf);
    ancestors_rec(ta, ta.right[node], al, ar, out_l, out_r, next_leaf);
  }
}

}  // namespace detail

inline AncestorMaps ancestor_maps_recursive(const TreeArrays& ta) {
  IntArray l(ta.m), r(ta.m);
  Nat next = 0;
  detail::ancestors_rec(ta, 0, 0, ta.m - 1, l, r, next);
  return {FiniteFunction::unchecked(ta.m, std::move(l)),
          FiniteFunction::unchecked(ta.m, std::move(r))};
}

inline Nat squarings_for(Nat n) {
  Nat ceil_log = n <= 1 ? 0 : static_cast<Nat>(std::bit_width(n - 1));
  return ceil_log + 1;
}

// Pointer jumping on the ancestor graphs. Vertex 2i+1 means "entered node i
// from its right child", 2i "from its left child"; 2n is the sink above the
// root. A ∘-node entered from the wanted side is a fixed point.
inline AncestorMaps ancestor_maps_jump(const TreeArrays& ta) {
  const Nat n = ta.n, v = 2 * n + 1;
  IntArray rl(v), rr(v);
  for (Nat j = 0; j < 2 * n; ++j) {
    Nat i = j / 2;
    Nat up = 2 * ta.parent(i) + ta.is_right(i);
    bool stop = ta.is_compose(i) == 1;
    rl[j] = (stop && (j & 1)) ? j : up;
    rr[j] = (stop && !(j & 1)) ? j : up;
  }
  rl[2 * n] = 2 * n;
  rr[2 * n] = 2 * n;
  FiniteFunction fl = FiniteFunction::unchecked(v, std::move(rl));
  FiniteFunction fr = FiniteFunction::unchecked(v, std::move(rr));
  // Every walk ends at a fixed point within depth + 1 steps, so
  // bit_width(depth) squarings suffice; squarings_for(n) bounds that.
  Nat depth = 0;
  {
    IntArray d(n, 0);
    for (Nat i = 1; i < n; ++i) depth = std::max(depth, d[i] = d[ta.parent(i)] + 1);
  }
  for (Nat k = std::bit_width(depth); k > 0; --k) {
    fl = compose(fl, fl);
    fr = compose(fr, fr);
  }
  IntArray al(ta.m), ar(ta.m);
  for (Nat i = 0; i < ta.m; ++i) {
    Nat leaf = ta.leaf_node[i];
    Nat a = fl(2 * leaf) / 2;
    Nat b = fr(2 * leaf) / 2;
    al[i] = a == n ? 0 : ta.internal_inorder[a] + 1;
    ar[i] = b == n ? ta.m - 1 : ta.internal_inorder[b];
  }
  return {FiniteFunction::unchecked(ta.m, std::move(al)),
          FiniteFunction::unchecked(ta.m, std::move(ar))};
}

}  // namespace sdiag
