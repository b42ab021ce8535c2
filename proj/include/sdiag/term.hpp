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

#include <string>
#include <utility>
#include <vector>

#include "sdiag/diagram.hpp"

namespace sdiag {

enum class LeafKind { Id, Twist, Gen, Split, Join, Unit, Counit, Spider };

// Payload of a leaf. Which fields matter depends on kind:
//   Id: labels; Twist: labels ⊗ labels2; Gen: op, typing;
//   Split/Join/Unit/Counit: labels[0]; Spider: s, t, labels.
struct Leaf {
  LeafKind kind = LeafKind::Id;
  IntArray labels;
  IntArray labels2;
  Nat op = 0;
  Nat typing = 0;
  FiniteFunction s;
  FiniteFunction t;

  friend bool operator==(const Leaf&, const Leaf&) = default;
};

enum class NodeKind { Leaf, Seq, Par };

struct TermNode {
  NodeKind kind = NodeKind::Leaf;
  Nat a = 0;  // leaf index for leaves, left child otherwise
  Nat b = 0;  // right child
};

// A binary term stored as an arena. Children always precede their parent
// when built through add_*, but nothing relies on it.
class Term {
 public:
  Nat add_leaf(Leaf leaf) {
    leaves_.push_back(std::move(leaf));
    nodes_.push_back({NodeKind::Leaf, leaves_.size() - 1, 0});
    root_ = nodes_.size() - 1;
    return root_;
  }
  Nat add_seq(Nat l, Nat r) { return add_node(NodeKind::Seq, l, r); }
  Nat add_par(Nat l, Nat r) { return add_node(NodeKind::Par, l, r); }

  void set_root(Nat r) { root_ = r; }
  Nat root() const noexcept { return root_; }
  bool empty() const noexcept { return nodes_.empty(); }
  const TermNode& node(Nat i) const { return nodes_[i]; }
  const Leaf& leaf_of(Nat node_index) const { return leaves_[nodes_[node_index].a]; }
  const std::vector<TermNode>& nodes() const noexcept { return nodes_; }
  const std::vector<Leaf>& leaves() const noexcept { return leaves_; }

  // Copies another term's reachable nodes in; returns the new root index.
  Nat graft(const Term& other) {
    const Nat base_nodes = nodes_.size(), base_leaves = leaves_.size();
    for (const auto& lf : other.leaves_) leaves_.push_back(lf);
    for (const auto& n : other.nodes_) {
      if (n.kind == NodeKind::Leaf) {
        nodes_.push_back({n.kind, n.a + base_leaves, 0});
      } else {
        nodes_.push_back({n.kind, n.a + base_nodes, n.b + base_nodes});
      }
    }
    return other.root_ + base_nodes;
  }

 private:
  Nat add_node(NodeKind k, Nat l, Nat r) {
    if (l >= nodes_.size() || r >= nodes_.size()) {
      fail(ErrorCode::IndexOutOfRange, "term child index");
    }
    nodes_.push_back({k, l, r});
    root_ = nodes_.size() - 1;
    return root_;
  }

  std::vector<TermNode> nodes_;
  std::vector<Leaf> leaves_;
  Nat root_ = 0;
};

namespace term {

inline Term leaf(Leaf l) {
  Term t;
  t.add_leaf(std::move(l));
  return t;
}
inline Term id(IntArray labels) {
  Leaf l;
  l.labels = std::move(labels);
  return leaf(std::move(l));
}
inline Term twist(IntArray a, IntArray b) {
  Leaf l;
  l.kind = LeafKind::Twist;
  l.labels = std::move(a);
  l.labels2 = std::move(b);
  return leaf(std::move(l));
}
inline Term gen(Nat op, Nat typing = 0) {
  Leaf l;
  l.kind = LeafKind::Gen;
  l.op = op;
  l.typing = typing;
  return leaf(std::move(l));
}
inline Term frob(LeafKind kind, Nat label) {
  Leaf l;
  l.kind = kind;
  l.labels = {label};
  return leaf(std::move(l));
}
inline Term spider_leaf(FiniteFunction s, FiniteFunction t, IntArray labels) {
  Leaf l;
  l.kind = LeafKind::Spider;
  l.labels = std::move(labels);
  l.s = std::move(s);
  l.t = std::move(t);
  return leaf(std::move(l));
}

inline Term binary(NodeKind k, const Term& l, const Term& r) {
  Term t;
  Nat a = t.graft(l);
  Nat b = t.graft(r);
  t.set_root(k == NodeKind::Seq ? t.add_seq(a, b) : t.add_par(a, b));
  return t;
}
inline Term seq(const Term& l, const Term& r) { return binary(NodeKind::Seq, l, r); }
inline Term par(const Term& l, const Term& r) { return binary(NodeKind::Par, l, r); }

}  // namespace term

namespace detail {

inline void check_leaf_objects(const Signature& sig, const Leaf& l) {
  for (const IntArray* xs : {&l.labels, &l.labels2}) {
    for (Nat o : *xs) {
      if (o >= sig.num_objects()) fail(ErrorCode::TypeError, "unknown object index");
    }
  }
}

inline const Typing& generator_typing(const Signature& sig, const Leaf& l) {
  if (l.op >= sig.num_ops()) fail(ErrorCode::TypeError, "unknown op index");
  const auto& ts = sig.typings(l.op);
  if (l.typing >= ts.size()) {
    fail(ErrorCode::TypeError, sig.op_name(l.op) + " has no typing @" + std::to_string(l.typing));
  }
  return ts[l.typing];
}

}  // namespace detail

// Boundary types of a leaf, or TypeError.
inline std::pair<IntArray, IntArray> leaf_type(const Signature& sig, const Leaf& l) {
  detail::check_leaf_objects(sig, l);
  switch (l.kind) {
    case LeafKind::Id: return {l.labels, l.labels};
    case LeafKind::Twist: {
      IntArray ab = l.labels, ba = l.labels2;
      ab.insert(ab.end(), l.labels2.begin(), l.labels2.end());
      ba.insert(ba.end(), l.labels.begin(), l.labels.end());
      return {ab, ba};
    }
    case LeafKind::Gen: {
      const Typing& ty = detail::generator_typing(sig, l);
      return {ty.source, ty.target};
    }
    case LeafKind::Split:
    case LeafKind::Join:
    case LeafKind::Unit:
    case LeafKind::Counit: {
      if (l.labels.size() != 1) fail(ErrorCode::TypeError, "Frobenius leaf needs one object");
      Nat o = l.labels[0];
      if (l.kind == LeafKind::Split) return {{o}, {o, o}};
      if (l.kind == LeafKind::Join) return {{o, o}, {o}};
      if (l.kind == LeafKind::Unit) return {{}, {o}};
      return {{o}, {}};
    }
    case LeafKind::Spider: {
      if (l.s.target() != l.labels.size() || l.t.target() != l.labels.size()) {
        fail(ErrorCode::TypeError, "spider legs do not land in its labels");
      }
      IntArray a(l.s.source()), b(l.t.source());
      for (Nat i = 0; i < a.size(); ++i) a[i] = l.labels[l.s(i)];
      for (Nat i = 0; i < b.size(); ++i) b[i] = l.labels[l.t(i)];
      return {a, b};
    }
  }
  return {};
}

// Boundary widths of a leaf, with the checks of leaf_type but no copies
// for generators.
inline std::pair<Nat, Nat> leaf_widths(const Signature& sig, const Leaf& l) {
  if (l.kind != LeafKind::Gen) {
    auto [a, b] = leaf_type(sig, l);
    return {a.size(), b.size()};
  }
  detail::check_leaf_objects(sig, l);
  const Typing& ty = detail::generator_typing(sig, l);
  return {ty.source.size(), ty.target.size()};
}

inline Diagram leaf_diagram(const Signature& sig, const Leaf& l) {
  leaf_type(sig, l);
  const Nat no = sig.num_objects();
  switch (l.kind) {
    case LeafKind::Id: return identity_diagram(sig, Labeling(no, l.labels));
    case LeafKind::Twist:
      return twist_diagram(sig, Labeling(no, l.labels), Labeling(no, l.labels2));
    case LeafKind::Gen: return singleton(sig, l.op, l.typing);
    case LeafKind::Split: return frobenius_generator(sig, FrobeniusKind::Split, l.labels[0]);
    case LeafKind::Join: return frobenius_generator(sig, FrobeniusKind::Join, l.labels[0]);
    case LeafKind::Unit: return frobenius_generator(sig, FrobeniusKind::Unit, l.labels[0]);
    case LeafKind::Counit: return frobenius_generator(sig, FrobeniusKind::Counit, l.labels[0]);
    case LeafKind::Spider: return spider(sig, l.s, l.t, Labeling(no, l.labels));
  }
  return {};
}

// Path of node i from the root, e.g. "root.L.R".
inline std::string node_path(const Term& t, Nat target) {
  std::vector<std::pair<Nat, std::string>> stack{{t.root(), "root"}};
  while (!stack.empty()) {
    auto [n, path] = stack.back();
    stack.pop_back();
    if (n == target) return path;
    const auto& node = t.node(n);
    if (node.kind != NodeKind::Leaf) {
      stack.emplace_back(node.b, path + ".R");
      stack.emplace_back(node.a, path + ".L");
    }
  }
  return "?";
}

// Boundary types of every node; TypeError names the offending subterm.
// Iterative post-order so deep chains are fine.
inline std::vector<std::pair<IntArray, IntArray>> infer_types(const Signature& sig, const Term& t) {
  std::vector<std::pair<IntArray, IntArray>> ty(t.nodes().size());
  std::vector<std::pair<Nat, bool>> stack{{t.root(), false}};
  while (!stack.empty()) {
    auto [n, expanded] = stack.back();
    stack.pop_back();
    const auto& node = t.node(n);
    if (node.kind == NodeKind::Leaf) {
      try {
        ty[n] = leaf_type(sig, t.leaf_of(n));
      } catch (const Error& e) {
        fail(ErrorCode::TypeError, node_path(t, n) + ": " + e.detail());
      }
      continue;
    }
    if (!expanded) {
      stack.emplace_back(n, true);
      stack.emplace_back(node.b, false);
      stack.emplace_back(node.a, false);
      continue;
    }
    auto& l = ty[node.a];
    auto& r = ty[node.b];
    if (node.kind == NodeKind::Seq) {
      if (l.second != r.first) {
        fail(ErrorCode::TypeError,
             node_path(t, n) + ": left output type differs from right input type");
      }
      ty[n] = {l.first, r.second};
    } else {
      IntArray a = l.first, b = l.second;
      a.insert(a.end(), r.first.begin(), r.first.end());
      b.insert(b.end(), r.second.begin(), r.second.end());
      ty[n] = {std::move(a), std::move(b)};
    }
  }
  return ty;
}

// Reference elaboration: fold the tree with compose and tensor.
inline Diagram to_diagram_slow(const Signature& sig, const Term& t) {
  if (t.empty()) fail(ErrorCode::TypeError, "empty term");
  infer_types(sig, t);
  std::vector<Diagram> val(t.nodes().size());
  std::vector<std::pair<Nat, bool>> stack{{t.root(), false}};
  while (!stack.empty()) {
    auto [n, expanded] = stack.back();
    stack.pop_back();
    const auto& node = t.node(n);
    if (node.kind == NodeKind::Leaf) {
      val[n] = leaf_diagram(sig, t.leaf_of(n));
      continue;
    }
    if (!expanded) {
      stack.emplace_back(n, true);
      stack.emplace_back(node.b, false);
      stack.emplace_back(node.a, false);
      continue;
    }
    val[n] = node.kind == NodeKind::Seq ? compose(val[node.a], val[node.b])
                                        : tensor(val[node.a], val[node.b]);
    val[node.a] = {};
    val[node.b] = {};
  }
  return std::move(val[t.root()]);
}

}  // namespace sdiag
