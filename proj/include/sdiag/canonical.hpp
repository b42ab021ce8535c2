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

// Canonical representative of a monogamous acyclic diagram's iso class.
//
// Every wire has at most one producing and one consuming port, so a
// breadth-first walk that starts from the boundary (sources in order, then
// targets in order) and expands neighbours in port order visits the graph
// in an order fixed by its structure alone. Components that never touch
// the boundary are started from whichever operation yields the
// lexicographically least encoding, and are emitted in encoding order.

#pragma once

#include <algorithm>
#include <deque>
#include <vector>

#include "sdiag/diagram.hpp"

namespace sdiag {

namespace detail {

class MaWalker {
 public:
  static constexpr Nat kUnset = static_cast<Nat>(-1);

  explicit MaWalker(const Diagram& d)
      : d_(d),
        in_(group_ports(d.G.xi, d.G.pi, d.G.X())),
        out_(group_ports(d.G.xo, d.G.po, d.G.X())),
        producer_(d.G.W(), kUnset),
        consumer_(d.G.W(), kUnset),
        wire_rank(d.G.W(), kUnset),
        op_rank(d.G.X(), kUnset) {
    for (Nat e = 0; e < d.G.Eo(); ++e) producer_[d.G.wo(e)] = d.G.xo(e);
    for (Nat e = 0; e < d.G.Ei(); ++e) consumer_[d.G.wi(e)] = d.G.xi(e);
  }

  // Walks from the given seed items, ranking everything reached. When enc is
  // non-null, appends a structural encoding relative to the ranks on entry.
  void walk(const std::vector<Nat>& seed_wires, const std::vector<Nat>& seed_ops,
            std::vector<Nat>* enc) {
    const Nat base_w = next_wire;
    std::deque<std::pair<bool, Nat>> queue;
    auto visit_wire = [&](Nat w) {
      if (wire_rank[w] != kUnset) return;
      wire_rank[w] = next_wire++;
      touched_wires_.push_back(w);
      queue.emplace_back(false, w);
    };
    auto visit_op = [&](Nat x) {
      if (op_rank[x] != kUnset) return;
      op_rank[x] = next_op++;
      touched_ops_.push_back(x);
      queue.emplace_back(true, x);
    };
    for (Nat w : seed_wires) visit_wire(w);
    for (Nat x : seed_ops) visit_op(x);
    while (!queue.empty()) {
      auto [is_op, v] = queue.front();
      queue.pop_front();
      if (!is_op) {
        if (producer_[v] != kUnset) visit_op(producer_[v]);
        if (consumer_[v] != kUnset) visit_op(consumer_[v]);
        continue;
      }
      if (enc) {
        enc->push_back(d_.G.xn(v));
        enc->push_back(in_.begin[v + 1] - in_.begin[v]);
        enc->push_back(out_.begin[v + 1] - out_.begin[v]);
      }
      auto side = [&](const PortTable& t, const FiniteFunction& wire_of,
                      const FiniteFunction& port_of) {
        for (Nat j = t.begin[v]; j < t.begin[v + 1]; ++j) {
          Nat e = t.order[j];
          Nat w = wire_of(e);
          visit_wire(w);
          if (enc) {
            enc->push_back(port_of(e));
            enc->push_back(wire_rank[w] - base_w);
            enc->push_back(d_.G.wn(w));
          }
        }
      };
      side(in_, d_.G.wi, d_.G.pi);
      side(out_, d_.G.wo, d_.G.po);
    }
  }

  void commit() {
    touched_wires_.clear();
    touched_ops_.clear();
  }

  void rollback(Nat w0, Nat x0) {
    for (Nat w : touched_wires_) wire_rank[w] = kUnset;
    for (Nat x : touched_ops_) op_rank[x] = kUnset;
    touched_wires_.clear();
    touched_ops_.clear();
    next_wire = w0;
    next_op = x0;
  }

  const std::vector<Nat>& touched_ops() const { return touched_ops_; }

  const Diagram& d_;
  PortTable in_, out_;
  IntArray producer_, consumer_;
  IntArray wire_rank, op_rank;
  Nat next_wire = 0, next_op = 0;

 private:
  std::vector<Nat> touched_wires_, touched_ops_;
};

}  // namespace detail

inline Diagram canonicalize_ma(const Diagram& d) {
  if (!check_monogamous(d) || !check_acyclic(d)) {
    fail(ErrorCode::NotMonogamousAcyclic, "canonical form needs a monogamous acyclic diagram");
  }
  const auto& g = d.G;
  detail::MaWalker walker(d);
  constexpr Nat kUnset = detail::MaWalker::kUnset;

  std::vector<Nat> anchors(d.s.table());
  anchors.insert(anchors.end(), d.t.table().begin(), d.t.table().end());
  walker.walk(anchors, {}, nullptr);
  walker.commit();

  // Floating components: pick each one's least encoding start.
  struct Component {
    std::vector<Nat> encoding;
    Nat start;
  };
  std::vector<Component> floating;
  std::vector<bool> seen(g.X(), false);
  for (Nat x = 0; x < g.X(); ++x) {
    if (walker.op_rank[x] != kUnset || seen[x]) continue;
    const Nat w0 = walker.next_wire, x0 = walker.next_op;
    walker.walk({}, {x}, nullptr);
    std::vector<Nat> members = walker.touched_ops();
    walker.rollback(w0, x0);
    Component best{{}, kUnset};
    for (Nat start : members) {
      seen[start] = true;
      std::vector<Nat> enc;
      walker.walk({}, {start}, &enc);
      walker.rollback(w0, x0);
      if (best.start == kUnset || enc < best.encoding) best = {std::move(enc), start};
    }
    floating.push_back(std::move(best));
  }
  std::stable_sort(floating.begin(), floating.end(),
                   [](const Component& a, const Component& b) { return a.encoding < b.encoding; });
  for (const auto& c : floating) {
    walker.walk({}, {c.start}, nullptr);
    walker.commit();
  }

  const Nat nw = g.W(), nx = g.X();
  IntArray op_by_rank(nx);
  for (Nat x = 0; x < nx; ++x) op_by_rank[walker.op_rank[x]] = x;
  IntArray new_wn(nw), new_xn(nx);
  for (Nat w = 0; w < nw; ++w) new_wn[walker.wire_rank[w]] = g.wn(w);
  for (Nat x = 0; x < nx; ++x) new_xn[walker.op_rank[x]] = g.xn(x);

  Nat max_port = 0;
  bool any_port = false;
  auto rebuild = [&](const detail::PortTable& t, const FiniteFunction& wire_of,
                     const FiniteFunction& port_of, IntArray& wires, IntArray& ops,
                     IntArray& ports) {
    for (Nat r = 0; r < nx; ++r) {
      Nat x = op_by_rank[r];
      for (Nat j = t.begin[x]; j < t.begin[x + 1]; ++j) {
        Nat e = t.order[j];
        wires.push_back(walker.wire_rank[wire_of(e)]);
        ops.push_back(r);
        ports.push_back(port_of(e));
        max_port = std::max(max_port, port_of(e));
        any_port = true;
      }
    }
  };
  IntArray wi, xi, pi, wo, xo, po;
  rebuild(walker.in_, g.wi, g.pi, wi, xi, pi);
  rebuild(walker.out_, g.wo, g.po, wo, xo, po);
  Nat p = any_port ? max_port + 1 : 0;

  auto relabel = [&](const FiniteFunction& leg) {
    IntArray r(leg.source());
    for (Nat i = 0; i < r.size(); ++i) r[i] = walker.wire_rank[leg(i)];
    return FiniteFunction::unchecked(nw, std::move(r));
  };
  using F = FiniteFunction;
  BipartiteMultigraph cg{F::unchecked(nw, std::move(wi)),
                         F::unchecked(nw, std::move(wo)),
                         F::unchecked(nx, std::move(xi)),
                         F::unchecked(nx, std::move(xo)),
                         F::unchecked(p, std::move(pi)),
                         F::unchecked(p, std::move(po)),
                         F::unchecked(g.wn.target(), std::move(new_wn)),
                         F::unchecked(g.xn.target(), std::move(new_xn))};
  return {relabel(d.s), relabel(d.t), std::move(cg)};
}

}  // namespace sdiag
