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

// Random generators and independent oracles shared by the test binaries.

#pragma once

#include <algorithm>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sdiag/sdiag.hpp"

namespace sdiag::testing {

using Rng = std::mt19937_64;

// Uniform in [lo, hi].
inline Nat uniform(Rng& rng, Nat lo, Nat hi) {
  return std::uniform_int_distribution<Nat>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

// Any function source -> target; target must be nonzero unless source is.
inline FiniteFunction random_ff(Rng& rng, Nat source, Nat target) {
  IntArray t(source);
  for (auto& v : t) v = uniform(rng, 0, target - 1);
  return FiniteFunction(target, std::move(t));
}

inline FiniteFunction random_perm(Rng& rng, Nat n) {
  IntArray t = arange(n);
  std::shuffle(t.begin(), t.end(), rng);
  return FiniteFunction(n, std::move(t));
}

inline IntArray random_objects(Rng& rng, Nat num_objects, Nat lo, Nat hi) {
  IntArray r(uniform(rng, lo, hi));
  for (auto& o : r) o = uniform(rng, 0, num_objects - 1);
  return r;
}

// 1-3 objects, at most max_ops monomorphic ops with arity and coarity 0-2.
// Every object has at least one op consuming exactly it, so random terms
// find generators to place.
inline Signature random_signature(Rng& rng, Nat max_ops = 8) {
  Signature sig;
  Nat no = uniform(rng, 1, 3);
  for (Nat o = 0; o < no; ++o) sig.add_object("O" + std::to_string(o));
  Nat nops = uniform(rng, no, std::max(no, max_ops));
  for (Nat x = 0; x < nops; ++x) {
    IntArray src = x < no ? IntArray{x} : random_objects(rng, no, 0, 2);
    sig.add_op("x" + std::to_string(x), {std::move(src), random_objects(rng, no, 0, 2)});
  }
  return sig;
}

struct TermOptions {
  bool frobenius = false;  // allow split/join/unit/counit leaves
  bool twists = true;
  double gen_bias = 0.7;   // chance of a generator leaf when one fits
};

namespace detail {

struct TermGen {
  Rng& rng;
  const Signature& sig;
  TermOptions opt;
  Term t;

  std::pair<Nat, IntArray> leaf(const IntArray& a) {
    std::vector<std::pair<Nat, Nat>> gens;
    for (Nat x = 0; x < sig.num_ops(); ++x) {
      const auto& ts = sig.typings(x);
      for (Nat k = 0; k < ts.size(); ++k) {
        if (ts[k].source == a) gens.push_back({x, k});
      }
    }
    Leaf l;
    if (!gens.empty() && coin(rng, opt.gen_bias)) {
      auto [x, k] = gens[uniform(rng, 0, gens.size() - 1)];
      l.kind = LeafKind::Gen;
      l.op = x;
      l.typing = k;
      return {t.add_leaf(l), sig.typing_of(x, k).target};
    }
    if (opt.frobenius && coin(rng, 0.5)) {
      if (a.empty()) {
        Nat o = uniform(rng, 0, sig.num_objects() - 1);
        l.kind = LeafKind::Unit;
        l.labels = {o};
        return {t.add_leaf(l), {o}};
      }
      if (a.size() == 1) {
        bool split = coin(rng);
        l.kind = split ? LeafKind::Split : LeafKind::Counit;
        l.labels = a;
        return {t.add_leaf(l), split ? IntArray{a[0], a[0]} : IntArray{}};
      }
      if (a.size() == 2 && a[0] == a[1]) {
        l.kind = LeafKind::Join;
        l.labels = {a[0]};
        return {t.add_leaf(l), {a[0]}};
      }
    }
    if (opt.twists && !a.empty() && coin(rng)) {
      Nat k = uniform(rng, 0, a.size());
      l.kind = LeafKind::Twist;
      l.labels.assign(a.begin(), a.begin() + k);
      l.labels2.assign(a.begin() + k, a.end());
      IntArray b = l.labels2;
      b.insert(b.end(), l.labels.begin(), l.labels.end());
      return {t.add_leaf(l), b};
    }
    l.labels = a;
    return {t.add_leaf(l), a};
  }

  std::pair<Nat, IntArray> node(const IntArray& a, Nat leaves) {
    if (leaves <= 1) return leaf(a);
    Nat left = uniform(rng, 1, leaves - 1);
    if (coin(rng)) {
      auto [n1, b] = node(a, left);
      auto [n2, c] = node(b, leaves - left);
      return {t.add_seq(n1, n2), c};
    }
    Nat k = uniform(rng, 0, a.size());
    auto [n1, b1] = node(IntArray(a.begin(), a.begin() + k), left);
    auto [n2, b2] = node(IntArray(a.begin() + k, a.end()), leaves - left);
    b1.insert(b1.end(), b2.begin(), b2.end());
    return {t.add_par(n1, n2), b1};
  }
};

}  // namespace detail

// A well-typed term with exactly `leaves` leaves and the given source type.
inline Term random_term(Rng& rng, const Signature& sig, const IntArray& source, Nat leaves,
                        TermOptions opt = {}, IntArray* target = nullptr) {
  detail::TermGen g{rng, sig, opt, {}};
  auto [root, b] = g.node(source, leaves);
  g.t.set_root(root);
  if (target) *target = b;
  return std::move(g.t);
}

// Reference elaboration with caller-supplied leaf diagrams: a plain
// compose/tensor fold, sharing no code with the wiring-map path.
inline Diagram fold_term(const Term& t, const std::function<Diagram(const Leaf&)>& leaf) {
  std::function<Diagram(Nat)> go = [&](Nat n) -> Diagram {
    const TermNode& node = t.node(n);
    if (node.kind == NodeKind::Leaf) return leaf(t.leaf_of(n));
    Diagram a = go(node.a), b = go(node.b);
    return node.kind == NodeKind::Seq ? compose(a, b) : tensor(a, b);
  };
  return go(t.root());
}

// Equality of monogamous acyclic diagrams up to isomorphism.
inline bool ma_iso(const Diagram& a, const Diagram& b) {
  return canonicalize_ma(a) == canonicalize_ma(b);
}

struct Relabeled {
  Diagram d;
  FiniteFunction w, ei, eo, x;  // witness d -> relabeled d
};

// Renumbers wires, edges and operations by random permutations.
inline Relabeled random_relabel(Rng& rng, const Diagram& d) {
  const auto& g = d.G;
  FiniteFunction w = random_perm(rng, g.W()), ei = random_perm(rng, g.Ei()),
                 eo = random_perm(rng, g.Eo()), x = random_perm(rng, g.X());
  FiniteFunction iw = inverse(w), iei = inverse(ei), ieo = inverse(eo), ix = inverse(x);
  BipartiteMultigraph h{compose(iei, compose(g.wi, w)), compose(ieo, compose(g.wo, w)),
                        compose(iei, compose(g.xi, x)), compose(ieo, compose(g.xo, x)),
                        compose(iei, g.pi),            compose(ieo, g.po),
                        compose(iw, g.wn),             compose(ix, g.xn)};
  return {{compose(d.s, w), compose(d.t, w), std::move(h)}, w, ei, eo, x};
}

// Forward-mode dual numbers: value and derivative along one direction.
template <class T>
struct Dual {
  T v{0};
  T dv{0};
  Dual() = default;
  Dual(int c) : v(c), dv(0) {}  // NOLINT: constants from the interpretation
  Dual(T a, T b) : v(std::move(a)), dv(std::move(b)) {}
  friend Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.dv + b.dv}; }
  friend Dual operator*(const Dual& a, const Dual& b) {
    return {a.v * b.v, a.dv * b.v + a.v * b.dv};
  }
  friend Dual operator-(const Dual& a) { return {-a.v, -a.dv}; }
};

// Polynomial degree of each output, as an interpretation over degrees.
inline Interpretation<long> degree_interpretation() {
  Interpretation<long> in;
  in.ops.resize(arith::kNumOps);
  using V = std::vector<long>;
  using A = std::span<const long>;
  in.ops[arith::kAdd] = [](A x) { return V{std::max(x[0], x[1])}; };
  in.ops[arith::kMul] = [](A x) { return V{x[0] + x[1]}; };
  in.ops[arith::kNeg] = [](A x) { return V{x[0]}; };
  in.ops[arith::kDup] = [](A x) { return V{x[0], x[0]}; };
  in.ops[arith::kZero] = [](A) { return V{0}; };
  in.ops[arith::kOne] = [](A) { return V{0}; };
  in.ops[arith::kDiscard] = [](A) { return V{}; };
  return in;
}

// Random arithmetic circuit with 1-4 inputs and outputs, at most max_ops
// operations and polynomial degree at most max_degree in every output.
struct ArithCircuit {
  Diagram d;
  Nat inputs = 0;
  Nat outputs = 0;
};

inline ArithCircuit random_arith_circuit(Rng& rng, Nat max_ops = 50, long max_degree = 8) {
  const Signature& sig = arith::signature();
  const Interpretation<long> deg = degree_interpretation();
  for (;;) {
    Nat k = uniform(rng, 1, 4);
    IntArray b;
    Term t = random_term(rng, sig, IntArray(k, 0), uniform(rng, 1, max_ops), {}, &b);
    if (b.empty() || b.size() > 4) continue;
    Diagram d = to_diagram_fast(sig, t);
    if (d.G.X() > max_ops) continue;
    std::vector<long> out = evaluate_ma(d, deg, std::vector<long>(k, 1));
    if (*std::max_element(out.begin(), out.end()) > max_degree) continue;
    return {std::move(d), k, b.size()};
  }
}

// Five-point central difference of output i along input j.
inline double central_difference(const Diagram& d, const std::vector<double>& x, Nat i, Nat j,
                                 double h = 1e-3) {
  static const Interpretation<double> in = arith::interpretation<double>();
  auto at = [&](double step) {
    std::vector<double> y = x;
    y[j] += step;
    return evaluate_ma(d, in, y)[i];
  };
  return (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
}

// Iterated binary tensor keeps each op's inputs and outputs together;
// the closed form puts all inputs first. The wire witness is that exchange.
inline FiniteFunction block_exchange(const Signature& s, const std::vector<OpInstance>& ops) {
  IntArray in_pos, out_pos;
  Nat offset = 0;
  for (const auto& op : ops) {
    const Typing& ty = s.typing_of(op.op, op.typing);
    for (Nat j = 0; j < ty.source.size(); ++j) in_pos.push_back(offset + j);
    offset += ty.source.size();
    for (Nat j = 0; j < ty.target.size(); ++j) out_pos.push_back(offset + j);
    offset += ty.target.size();
  }
  in_pos.insert(in_pos.end(), out_pos.begin(), out_pos.end());
  return FiniteFunction(offset, std::move(in_pos));
}

inline Diagram iterated_tensor(const Signature& s, const std::vector<OpInstance>& ops) {
  Diagram acc = identity_diagram(s, Labeling(s.num_objects(), {}));
  for (const auto& op : ops) acc = tensor(acc, singleton(s, op.op, op.typing));
  return acc;
}

// Shape-only leaf; tree_arrays never looks at leaf payloads.
inline Term shape_leaf() { return term::gen(0); }

// Every binary tree with m leaves, each internal node tagged seq or par.
inline std::vector<Term> all_shapes(Nat m) {
  if (m == 1) return {shape_leaf()};
  std::vector<Term> out;
  for (Nat k = 1; k < m; ++k) {
    for (const Term& l : all_shapes(k)) {
      for (const Term& r : all_shapes(m - k)) {
        out.push_back(term::seq(l, r));
        out.push_back(term::par(l, r));
      }
    }
  }
  return out;
}

// Random shape with m leaves, from a random pairing of adjacent subtrees.
inline Term random_shape(Rng& rng, Nat m) {
  Term t;
  std::vector<Nat> pool;
  for (Nat i = 0; i < m; ++i) pool.push_back(t.add_leaf(Leaf{}));
  while (pool.size() > 1) {
    Nat i = uniform(rng, 0, pool.size() - 2);
    Nat node = coin(rng) ? t.add_seq(pool[i], pool[i + 1]) : t.add_par(pool[i], pool[i + 1]);
    pool[i] = node;
    pool.erase(pool.begin() + i + 1);
  }
  t.set_root(pool[0]);
  return t;
}

// Reference numbering by direct recursion over the term.
struct ShapeOracle {
  IntArray parent, side, kind_seq, inorder, leaves;
  IntArray term_index;
  Nat internal = 0;

  explicit ShapeOracle(const Term& t) {
    std::function<Nat(Nat, Nat, Nat)> pre = [&](Nat tn, Nat par, Nat sd) -> Nat {
      Nat me = parent.size();
      parent.push_back(par);
      side.push_back(sd);
      term_index.push_back(tn);
      const auto& node = t.node(tn);
      kind_seq.push_back(node.kind == NodeKind::Seq);
      inorder.push_back(0);
      if (node.kind == NodeKind::Leaf) {
        leaves.push_back(me);
        return me;
      }
      pre(node.a, me, 0);
      inorder[me] = internal++;
      pre(node.b, me, 1);
      return me;
    };
    pre(t.root(), static_cast<Nat>(-1), 0);
  }

  // Walks up from each leaf looking for the closest seq ancestor that holds
  // it on the requested side.
  AncestorMaps ancestors() const {
    const Nat n = parent.size(), m = leaves.size();
    IntArray l(m), r(m);
    for (Nat i = 0; i < m; ++i) {
      auto find = [&](Nat want) -> Nat {
        for (Nat c = leaves[i]; parent[c] != static_cast<Nat>(-1); c = parent[c]) {
          if (kind_seq[parent[c]] && side[c] == want) return parent[c];
        }
        return n;
      };
      Nat a = find(1), b = find(0);
      l[i] = a == n ? 0 : inorder[a] + 1;
      r[i] = b == n ? m - 1 : inorder[b];
    }
    return {FiniteFunction(m, l), FiniteFunction(m, r)};
  }
};

inline std::vector<Diagram> leaf_diagrams(const Signature& s, const Term& t, const TreeArrays& ta) {
  std::vector<Diagram> out;
  for (Nat i = 0; i < ta.m; ++i)
    out.push_back(leaf_diagram(s, t.leaf_of(ta.term_node[ta.leaf_node[i]])));
  return out;
}

// A richer encoding whose images are whole terms: each op x maps to a
// random prefix over base operations followed by a fresh op img_x.
struct TermEncoding {
  Signature src, tgt;
  std::vector<IntArray> objects;
  std::vector<Diagram> images;
  FunctorEncoding enc;
};

inline TermEncoding random_term_encoding(Rng& rng) {
  TermEncoding te;
  te.src = random_signature(rng, 6);
  te.tgt = random_signature(rng, 5);
  const Nat no = te.tgt.num_objects();
  for (Nat o = 0; o < te.src.num_objects(); ++o)
    te.objects.push_back(random_objects(rng, no, 0, 2));
  auto map_objs = [&](const IntArray& xs) {
    IntArray r;
    for (Nat o : xs) r.insert(r.end(), te.objects[o].begin(), te.objects[o].end());
    return r;
  };
  std::vector<Term> prefixes;
  std::vector<Typing> fresh;
  for (Nat x = 0; x < te.src.num_ops(); ++x) {
    const Typing& ty = te.src.typing_of(x, 0);
    IntArray mid;
    prefixes.push_back(random_term(rng, te.tgt, map_objs(ty.source), uniform(rng, 1, 4), {}, &mid));
    fresh.push_back({mid, map_objs(ty.target)});
  }
  const Nat base = te.tgt.num_ops();
  for (Nat x = 0; x < fresh.size(); ++x) te.tgt.add_op("img" + std::to_string(x), fresh[x]);
  for (Nat x = 0; x < prefixes.size(); ++x) {
    te.images.push_back(compose(to_diagram_slow(te.tgt, prefixes[x]), singleton(te.tgt, base + x)));
  }
  te.enc = make_encoding(te.src, te.tgt, te.objects, te.images);
  return te;
}

// Objects A, B, C; f : A -> B C, g : A A -> B B, p : A -> (), and a
// polymorphic q : A -> () | B C -> A.
inline Signature port_signature() {
  Signature s;
  for (const char* o : {"A", "B", "C"}) s.add_object(o);
  s.add_op("f", {{0}, {1, 2}});
  s.add_op("g", {{0, 0}, {1, 1}});
  s.add_op("p", {{0}, {}});
  s.add_op("q", {{0}, {}});
  s.add_op("q", {{1, 2}, {0}});
  return s;
}

// One g : A A -> B B whose two inputs both claim port 0 and whose only
// output sits at port 1.
inline BipartiteMultigraph ill_formed_graph(Nat second_input_port) {
  using F = FiniteFunction;
  return {F(3, {0, 1}), F(3, {2}), F(1, {0, 0}), F(1, {0}),
          F(2, {0, second_input_port}), F(2, {1}), Labeling(3, {0, 0, 1}), F(4, {1})};
}

}  // namespace sdiag::testing
