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

#include <algorithm>
#include <cstddef>
#include <deque>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sdiag/bipartite_multigraph.hpp"

namespace sdiag {

// A cospan A --s--> W <--t-- B whose apex W is the wire set of G.
struct Diagram {
  FiniteFunction s;
  FiniteFunction t;
  BipartiteMultigraph G;

  Labeling source_type() const { return compose(s, G.wn); }
  Labeling target_type() const { return compose(t, G.wn); }

  friend bool operator==(const Diagram&, const Diagram&) = default;
};

inline void check_shape(const Diagram& d) {
  check_shape(d.G);
  if (d.s.target() != d.G.W() || d.t.target() != d.G.W()) {
    fail(ErrorCode::ShapeMismatch, "boundary legs must land in W");
  }
}

inline Diagram identity_diagram(const Signature& sig, const Labeling& wn) {
  Nat w = wn.source();
  return {identity(w), identity(w), discrete(wn, sig.num_ops())};
}

// Target position k of B + A reads wire twist(|b|, |a|)(k) of A + B.
inline Diagram twist_diagram(const Signature& sig, const Labeling& a, const Labeling& b) {
  return {identity(a.source() + b.source()), twist(b.source(), a.source()),
          discrete(coproduct(a, b), sig.num_ops())};
}

inline Diagram spider(const Signature& sig, const FiniteFunction& s, const FiniteFunction& t,
                      const Labeling& wn) {
  if (s.target() != wn.source() || t.target() != wn.source()) {
    fail(ErrorCode::ShapeMismatch, "spider legs must land in the labeled wires");
  }
  return {s, t, discrete(wn, sig.num_ops())};
}

enum class FrobeniusKind { Split, Join, Unit, Counit };

inline Diagram frobenius_generator(const Signature& sig, FrobeniusKind kind, Nat label) {
  Labeling wn(sig.num_objects(), {label});
  FiniteFunction one = identity(1);
  FiniteFunction two(1, {0, 0});
  switch (kind) {
    case FrobeniusKind::Split: return spider(sig, one, two, wn);
    case FrobeniusKind::Join: return spider(sig, two, one, wn);
    case FrobeniusKind::Unit: return spider(sig, initial(1), one, wn);
    case FrobeniusKind::Counit: return spider(sig, one, initial(1), wn);
  }
  return spider(sig, one, one, wn);
}

inline Diagram dagger(const Diagram& d) { return {d.t, d.s, d.G}; }

inline Diagram singleton(const Signature& sig, const Labeling& a, const Labeling& b, Nat op) {
  if (op >= sig.num_ops()) fail(ErrorCode::IndexOutOfRange, "op " + std::to_string(op));
  bool typed = false;
  for (const auto& ty : sig.typings(op)) {
    typed = typed || (ty.source == a.table() && ty.target == b.table());
  }
  if (!typed || a.target() != sig.num_objects() || b.target() != sig.num_objects()) {
    fail(ErrorCode::TypingMismatch, "boundary is not a typing of " + sig.op_name(op));
  }
  Nat na = a.source(), nb = b.source();
  Nat p = std::max(na, nb);
  BipartiteMultigraph g{inj0(na, nb),
                        inj1(na, nb),
                        terminal(na),
                        terminal(nb),
                        FiniteFunction::unchecked(p, arange(na)),
                        FiniteFunction::unchecked(p, arange(nb)),
                        coproduct(a, b),
                        FiniteFunction(sig.num_ops(), {op})};
  return {inj0(na, nb), inj1(na, nb), std::move(g)};
}

inline Diagram singleton(const Signature& sig, Nat op, Nat typing_index = 0) {
  const Typing& ty = sig.typing_of(op, typing_index);
  return singleton(sig, Labeling(sig.num_objects(), ty.source),
                   Labeling(sig.num_objects(), ty.target), op);
}

inline Diagram tensor(const Diagram& d0, const Diagram& d1) {
  return {tensor(d0.s, d1.s), tensor(d0.t, d1.t), coproduct(d0.G, d1.G)};
}

inline Diagram tensor_all(std::span<const Diagram> ds, const Signature& sig) {
  std::vector<FiniteFunction> ss, ts;
  std::vector<BipartiteMultigraph> gs;
  ss.reserve(ds.size());
  ts.reserve(ds.size());
  gs.reserve(ds.size());
  for (const auto& d : ds) {
    ss.push_back(d.s);
    ts.push_back(d.t);
    gs.push_back(d.G);
  }
  return {tensor_all(ss), tensor_all(ts),
          coproduct_all(gs, sig.num_objects(), sig.num_ops())};
}

struct OpInstance {
  Nat op = 0;
  Nat typing = 0;
};

// Closed form of op_0 ⊗ ... ⊗ op_{N-1}: all input wires first, then all
// output wires, edges in op-major port order.
inline Diagram tensor_operations(const Signature& sig, std::span<const OpInstance> ops) {
  const Nat n = ops.size();
  IntArray arity(n), coarity(n), xn(n);
  std::vector<const Typing*> typing(n);
  for (Nat i = 0; i < n; ++i) {
    if (ops[i].op >= sig.num_ops()) fail(ErrorCode::TypingMismatch, "unknown op");
    const auto& ts = sig.typings(ops[i].op);
    if (ops[i].typing >= ts.size()) {
      fail(ErrorCode::TypingMismatch, "op " + sig.op_name(ops[i].op) + " has no typing @" +
                                          std::to_string(ops[i].typing));
    }
    typing[i] = &ts[ops[i].typing];
    arity[i] = typing[i]->source.size();
    coarity[i] = typing[i]->target.size();
    xn[i] = ops[i].op;
  }
  Nat ki = sum(arity), ko = sum(coarity);
  Nat p = std::max(max_or(arity, 0), max_or(coarity, 0));
  IntArray ids = arange(n);
  IntArray wn(ki + ko);
  auto in = wn.begin(), out = wn.begin() + static_cast<std::ptrdiff_t>(ki);
  for (const Typing* ty : typing) {
    in = std::copy(ty->source.begin(), ty->source.end(), in);
    out = std::copy(ty->target.begin(), ty->target.end(), out);
  }
  using F = FiniteFunction;
  BipartiteMultigraph g{inj0(ki, ko),
                        inj1(ki, ko),
                        F::unchecked(n, repeat(ids, arity)),
                        F::unchecked(n, repeat(ids, coarity)),
                        F::unchecked(p, segmented_arange(arity)),
                        F::unchecked(p, segmented_arange(coarity)),
                        F::unchecked(sig.num_objects(), std::move(wn)),
                        F::unchecked(sig.num_ops(), std::move(xn))};
  return {inj0(ki, ko), inj1(ki, ko), std::move(g)};
}

// Sequential composition: glue d0's target wires to d1's source wires.
inline Diagram compose(const Diagram& d0, const Diagram& d1) {
  if (d0.t.source() != d1.s.source() || d0.target_type() != d1.source_type()) {
    fail(ErrorCode::TypeMismatch, "boundary types differ between composed diagrams");
  }
  Nat w0 = d0.G.W(), w1 = d1.G.W();
  const Nat w = w0 + w1;
  FiniteFunction q = coequalizer(shift(d0.t, 0, w), shift(d1.s, w0, w));
  return {compose(shift(d0.s, 0, w), q), compose(shift(d1.t, w0, w), q),
          coequalize_wires(coproduct(d0.G, d1.G), q)};
}

// Fiber sizes of f.
inline IntArray fiber_sizes(const FiniteFunction& f) {
  IntArray c(f.target(), 0);
  for (Nat v : f.table()) ++c[v];
  return c;
}

inline bool check_monogamous(const Diagram& d) {
  if (!is_injective(d.s) || !is_injective(d.t)) return false;
  IntArray in_deg = fiber_sizes(d.G.wo);
  IntArray out_deg = fiber_sizes(d.G.wi);
  std::vector<bool> in_s(d.G.W(), false), in_t(d.G.W(), false);
  for (Nat w : d.s.table()) in_s[w] = true;
  for (Nat w : d.t.table()) in_t[w] = true;
  for (Nat w = 0; w < d.G.W(); ++w) {
    if (in_deg[w] != (in_s[w] ? 0u : 1u)) return false;
    if (out_deg[w] != (in_t[w] ? 0u : 1u)) return false;
  }
  return true;
}

// Kahn elimination over wires (0..W-1) and operations (W..W+X-1).
inline bool check_acyclic(const Diagram& d) {
  const auto& g = d.G;
  const Nat nw = g.W(), nx = g.X();
  IntArray indeg(nw + nx, 0);
  for (Nat e = 0; e < g.Ei(); ++e) ++indeg[nw + g.xi(e)];
  for (Nat e = 0; e < g.Eo(); ++e) ++indeg[g.wo(e)];
  // Adjacency via grouping edges by their tail.
  auto group = [](const FiniteFunction& tail) {
    IntArray order = stable_argsort_dense(tail.table(), tail.target());
    IntArray begin = prefix_sum(fiber_sizes(tail));
    begin.push_back(tail.source());
    return std::pair{std::move(order), std::move(begin)};
  };
  auto [wire_out, wire_begin] = group(g.wi);
  auto [op_out, op_begin] = group(g.xo);
  std::vector<Nat> stack;
  for (Nat v = 0; v < nw + nx; ++v) {
    if (indeg[v] == 0) stack.push_back(v);
  }
  Nat removed = 0;
  while (!stack.empty()) {
    Nat v = stack.back();
    stack.pop_back();
    ++removed;
    if (v < nw) {
      for (Nat j = wire_begin[v]; j < wire_begin[v + 1]; ++j) {
        Nat u = nw + g.xi(wire_out[j]);
        if (--indeg[u] == 0) stack.push_back(u);
      }
    } else {
      Nat x = v - nw;
      for (Nat j = op_begin[x]; j < op_begin[x + 1]; ++j) {
        Nat u = g.wo(op_out[j]);
        if (--indeg[u] == 0) stack.push_back(u);
      }
    }
  }
  return removed == nw + nx;
}

inline bool is_monogamous_acyclic(const Diagram& d) {
  return check_monogamous(d) && check_acyclic(d);
}

// Verifies that the given permutations form an isomorphism d0 -> d1.
inline bool check_iso_witness(const Diagram& d0, const Diagram& d1, const FiniteFunction& aW,
                              const FiniteFunction& aEi, const FiniteFunction& aEo,
                              const FiniteFunction& aX) {
  const auto& g0 = d0.G;
  const auto& g1 = d1.G;
  auto perm_between = [](const FiniteFunction& a, Nat from, Nat to) {
    return a.source() == from && a.target() == to && is_permutation(a);
  };
  if (!perm_between(aW, g0.W(), g1.W()) || !perm_between(aEi, g0.Ei(), g1.Ei()) ||
      !perm_between(aEo, g0.Eo(), g1.Eo()) || !perm_between(aX, g0.X(), g1.X())) {
    return false;
  }
  if (d0.s.source() != d1.s.source() || d0.t.source() != d1.t.source()) return false;
  if (g0.wn.target() != g1.wn.target() || g0.xn.target() != g1.xn.target()) return false;
  return compose(aEi, g1.wi) == compose(g0.wi, aW) &&
         compose(aEo, g1.wo) == compose(g0.wo, aW) &&
         compose(aEi, g1.xi) == compose(g0.xi, aX) &&
         compose(aEo, g1.xo) == compose(g0.xo, aX) &&
         compose(aEi, g1.pi).table() == g0.pi.table() &&
         compose(aEo, g1.po).table() == g0.po.table() && compose(aW, g1.wn) == g0.wn &&
         compose(aX, g1.xn) == g0.xn && compose(d0.s, aW) == d1.s && compose(d0.t, aW) == d1.t;
}

// Normal form of a diagram with discrete apex: wires renumbered by first
// appearance along s then t, unreached wires last sorted by label.
inline Diagram spider_normal_form(const Diagram& d) {
  if (d.G.X() != 0) fail(ErrorCode::ShapeMismatch, "not a spider: apex has operations");
  const Nat nw = d.G.W();
  constexpr Nat kUnset = static_cast<Nat>(-1);
  IntArray rank(nw, kUnset);
  Nat next = 0;
  for (Nat w : d.s.table()) {
    if (rank[w] == kUnset) rank[w] = next++;
  }
  for (Nat w : d.t.table()) {
    if (rank[w] == kUnset) rank[w] = next++;
  }
  IntArray loose;
  for (Nat w = 0; w < nw; ++w) {
    if (rank[w] == kUnset) loose.push_back(w);
  }
  std::stable_sort(loose.begin(), loose.end(),
                   [&](Nat a, Nat b) { return d.G.wn(a) < d.G.wn(b); });
  for (Nat w : loose) rank[w] = next++;
  FiniteFunction r = FiniteFunction::unchecked(nw, std::move(rank));
  IntArray wn(nw);
  for (Nat w = 0; w < nw; ++w) wn[r(w)] = d.G.wn(w);
  return {compose(d.s, r), compose(d.t, r),
          discrete(FiniteFunction::unchecked(d.G.wn.target(), std::move(wn)), d.G.xn.target())};
}

inline bool spider_equal(const Diagram& a, const Diagram& b) {
  return spider_normal_form(a) == spider_normal_form(b);
}

}  // namespace sdiag
