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

// Diagrams back to terms. Decomposition mode mirrors the seven factors of
// decompose with spider leaves; pure mode walks a monogamous acyclic diagram
// in topological order and emits only identities, twists and generators.

#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "sdiag/decompose.hpp"
#include "sdiag/term.hpp"

namespace sdiag {

enum class ReadbackMode { Decomposition, Pure };

namespace detail {

// Appends nodes to one arena; seq/par of an absent side returns the other.
class TermWriter {
 public:
  using Node = std::optional<Nat>;

  Nat leaf(Leaf l) { return term_.add_leaf(std::move(l)); }
  Nat id(IntArray labels) {
    Leaf l;
    l.labels = std::move(labels);
    return leaf(std::move(l));
  }
  Node id_or_none(IntArray labels) {
    if (labels.empty()) return std::nullopt;
    return id(std::move(labels));
  }
  Nat spider(const FiniteFunction& s, const FiniteFunction& t, const Labeling& wn) {
    Leaf l;
    l.kind = LeafKind::Spider;
    l.labels = wn.table();
    l.s = FiniteFunction::unchecked(wn.source(), s.table());
    l.t = FiniteFunction::unchecked(wn.source(), t.table());
    return leaf(std::move(l));
  }
  Nat gen(Nat op, Nat typing) {
    Leaf l;
    l.kind = LeafKind::Gen;
    l.op = op;
    l.typing = typing;
    return leaf(std::move(l));
  }
  Nat twist(IntArray a, IntArray b) {
    Leaf l;
    l.kind = LeafKind::Twist;
    l.labels = std::move(a);
    l.labels2 = std::move(b);
    return leaf(std::move(l));
  }
  Node par(Node a, Node b) {
    if (!a) return b;
    if (!b) return a;
    return term_.add_par(*a, *b);
  }
  Nat seq(Nat a, Nat b) { return term_.add_seq(a, b); }

  Term finish(Nat root) {
    term_.set_root(root);
    return std::move(term_);
  }

 private:
  Term term_;
};

inline IntArray labels_of(const IntArray& wires, const Labeling& wn) {
  IntArray r(wires.size());
  for (Nat i = 0; i < wires.size(); ++i) r[i] = wn(wires[i]);
  return r;
}

// Moves the wires `want` to the front of `cur` in that order, appending one
// layer per displaced wire to `acc`.
inline void bring_to_front(TermWriter& w, Nat& acc, IntArray& cur, const IntArray& want,
                           const Labeling& wn) {
  for (Nat i = 0; i < want.size(); ++i) {
    Nat j = i;
    while (cur[j] != want[i]) ++j;
    if (j == i) continue;
    IntArray prefix(cur.begin(), cur.begin() + i);
    IntArray block(cur.begin() + i, cur.begin() + j);
    IntArray rest(cur.begin() + j + 1, cur.end());
    auto layer = w.par(w.id_or_none(labels_of(prefix, wn)),
                       w.par(w.twist(labels_of(block, wn), {wn(cur[j])}),
                             w.id_or_none(labels_of(rest, wn))));
    acc = w.seq(acc, *layer);
    Nat moved = cur[j];
    cur.erase(cur.begin() + j);
    cur.insert(cur.begin() + i, moved);
  }
}

inline Term readback_decomposition(const Signature& sig, const Diagram& d) {
  FrobeniusDecomposition fd = decompose(sig, d);
  const Labeling& wn = fd.wires;
  const Nat nw = wn.source();
  Labeling in_labels = compose(fd.ei, wn);
  Labeling out_labels = compose(fd.eo, wn);
  const auto& h = fd.tensoring.G;
  ResolvedTypings ty = check_well_formed(h, sig);

  TermWriter w;
  TermWriter::Node gens;
  for (Nat x = h.X(); x-- > 0;) gens = w.par(w.gen(h.xn(x), ty.typing_index[x]), gens);
  Nat bus = w.id(wn.table());
  Nat f1 = w.spider(fd.s, identity(nw), wn);
  Nat f2 = w.spider(identity(nw), coproduct(identity(nw), fd.ei), wn);
  Nat f3 = *w.par(w.id(wn.table()), w.spider(identity(fd.ei.source()), fd.p, in_labels));
  Nat f4 = gens ? *w.par(bus, gens) : bus;
  Nat f5 = *w.par(w.id(wn.table()), w.spider(fd.q, identity(fd.eo.source()), out_labels));
  Nat f6 = w.spider(coproduct(identity(nw), fd.eo), identity(nw), wn);
  Nat f7 = w.spider(identity(nw), fd.t, wn);
  Nat root = f1;
  for (Nat f : {f2, f3, f4, f5, f6, f7}) root = w.seq(root, f);
  return w.finish(root);
}

inline Term readback_pure(const Signature& sig, const Diagram& d) {
  if (!check_monogamous(d) || !check_acyclic(d)) {
    fail(ErrorCode::NotMonogamousAcyclic, "pure readback needs a monogamous acyclic diagram");
  }
  ResolvedTypings ty;
  try {
    ty = check_well_formed(d.G, sig);
  } catch (const Error& e) {
    fail(ErrorCode::NotWellFormed, e.what());
  }
  const auto& g = d.G;
  const Labeling& wn = g.wn;
  auto in = group_ports(g.xi, g.pi, g.X());
  auto out = group_ports(g.xo, g.po, g.X());
  constexpr Nat kNone = static_cast<Nat>(-1);
  IntArray consumer(g.W(), kNone);
  for (Nat e = 0; e < g.Ei(); ++e) consumer[g.wi(e)] = g.xi(e);

  // Kahn order; smallest ready op first so the output is deterministic.
  IntArray pending(g.X());
  std::vector<Nat> ready;
  for (Nat x = 0; x < g.X(); ++x) {
    pending[x] = in.begin[x + 1] - in.begin[x];
    if (pending[x] == 0) ready.push_back(x);
  }
  auto release = [&](Nat wire) {
    Nat x = consumer[wire];
    if (x != kNone && --pending[x] == 0) ready.push_back(x);
  };
  IntArray cur = d.s.table();
  for (Nat wire : cur) release(wire);

  TermWriter w;
  Nat acc = w.id(labels_of(cur, wn));
  while (!ready.empty()) {
    auto it = std::min_element(ready.begin(), ready.end());
    Nat x = *it;
    ready.erase(it);
    IntArray args, results;
    for (Nat j = in.begin[x]; j < in.begin[x + 1]; ++j) args.push_back(g.wi(in.order[j]));
    for (Nat j = out.begin[x]; j < out.begin[x + 1]; ++j) results.push_back(g.wo(out.order[j]));
    bring_to_front(w, acc, cur, args, wn);
    IntArray rest(cur.begin() + args.size(), cur.end());
    acc = w.seq(acc, *w.par(w.gen(g.xn(x), ty.typing_index[x]), w.id_or_none(labels_of(rest, wn))));
    cur = results;
    cur.insert(cur.end(), rest.begin(), rest.end());
    for (Nat wire : results) release(wire);
  }
  bring_to_front(w, acc, cur, d.t.table(), wn);
  return w.finish(acc);
}

}  // namespace detail

inline Term readback(const Signature& sig, const Diagram& d,
                     ReadbackMode mode = ReadbackMode::Decomposition) {
  return mode == ReadbackMode::Pure ? detail::readback_pure(sig, d)
                                    : detail::readback_decomposition(sig, d);
}

}  // namespace sdiag
