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

#include <span>
#include <string>
#include <vector>

#include "sdiag/signature.hpp"

namespace sdiag {

// Wires W and operations X joined by input edges Ei (wire -> op) and output
// edges Eo (op -> wire). Each edge carries a port number; pi/po share a
// finite port bound P as their target.
struct BipartiteMultigraph {
  FiniteFunction wi;  // Ei -> W
  FiniteFunction wo;  // Eo -> W
  FiniteFunction xi;  // Ei -> X
  FiniteFunction xo;  // Eo -> X
  FiniteFunction pi;  // Ei -> P
  FiniteFunction po;  // Eo -> P
  Labeling wn;        // W -> objects
  FiniteFunction xn;  // X -> ops

  Nat W() const noexcept { return wn.source(); }
  Nat Ei() const noexcept { return wi.source(); }
  Nat Eo() const noexcept { return wo.source(); }
  Nat X() const noexcept { return xn.source(); }
  Nat port_bound() const noexcept { return pi.target(); }

  friend bool operator==(const BipartiteMultigraph&, const BipartiteMultigraph&) = default;
};

inline void check_shape(const BipartiteMultigraph& g) {
  auto need = [](bool ok, const char* what) {
    if (!ok) fail(ErrorCode::ShapeMismatch, what);
  };
  need(g.wi.target() == g.W() && g.wo.target() == g.W(), "wi/wo must land in W");
  need(g.xi.target() == g.X() && g.xo.target() == g.X(), "xi/xo must land in X");
  need(g.xi.source() == g.Ei() && g.pi.source() == g.Ei(), "xi/pi must start at Ei");
  need(g.xo.source() == g.Eo() && g.po.source() == g.Eo(), "xo/po must start at Eo");
  need(g.pi.target() == g.po.target(), "pi/po must share a port bound");
}

// W = |wn|, no operations or edges.
inline BipartiteMultigraph discrete(const Labeling& wn, Nat num_ops) {
  Nat w = wn.source();
  return {initial(w), initial(w), initial(0), initial(0),
          initial(0), initial(0), wn,         initial(num_ops)};
}

namespace detail {

inline FiniteFunction retarget(const FiniteFunction& f, Nat target) {
  return FiniteFunction::unchecked(target, f.table());
}

inline void same_signature(const BipartiteMultigraph& a, const BipartiteMultigraph& b) {
  if (a.wn.target() != b.wn.target() || a.xn.target() != b.xn.target()) {
    fail(ErrorCode::SignatureMismatch, "graphs label over different signatures");
  }
}

}  // namespace detail

inline BipartiteMultigraph coproduct(const BipartiteMultigraph& a,
                                     const BipartiteMultigraph& b) {
  detail::same_signature(a, b);
  Nat p = std::max(a.port_bound(), b.port_bound());
  using detail::retarget;
  return {tensor(a.wi, b.wi),
          tensor(a.wo, b.wo),
          tensor(a.xi, b.xi),
          tensor(a.xo, b.xo),
          coproduct(retarget(a.pi, p), retarget(b.pi, p)),
          coproduct(retarget(a.po, p), retarget(b.po, p)),
          coproduct(a.wn, b.wn),
          coproduct(a.xn, b.xn)};
}

// N-ary coproduct in one pass; gs must be nonempty or num_objects/num_ops given.
inline BipartiteMultigraph coproduct_all(std::span<const BipartiteMultigraph> gs,
                                         Nat num_objects, Nat num_ops) {
  std::vector<FiniteFunction> wi, wo, xi, xo;
  wi.reserve(gs.size());
  wo.reserve(gs.size());
  xi.reserve(gs.size());
  xo.reserve(gs.size());
  Nat p = 0;
  for (const auto& g : gs) {
    if (g.wn.target() != num_objects || g.xn.target() != num_ops) {
      fail(ErrorCode::SignatureMismatch, "graphs label over different signatures");
    }
    wi.push_back(g.wi);
    wo.push_back(g.wo);
    xi.push_back(g.xi);
    xo.push_back(g.xo);
    p = std::max(p, g.port_bound());
  }
  IntArray pi, po, wn, xn;
  for (const auto& g : gs) {
    pi.insert(pi.end(), g.pi.table().begin(), g.pi.table().end());
    po.insert(po.end(), g.po.table().begin(), g.po.table().end());
    wn.insert(wn.end(), g.wn.table().begin(), g.wn.table().end());
    xn.insert(xn.end(), g.xn.table().begin(), g.xn.table().end());
  }
  using F = FiniteFunction;
  return {tensor_all(wi),
          tensor_all(wo),
          tensor_all(xi),
          tensor_all(xo),
          F::unchecked(p, std::move(pi)),
          F::unchecked(p, std::move(po)),
          F::unchecked(num_objects, std::move(wn)),
          F::unchecked(num_ops, std::move(xn))};
}

// Pushes the graph forward along a quotient q of its wires.
inline BipartiteMultigraph coequalize_wires(BipartiteMultigraph g, const FiniteFunction& q) {
  if (q.source() != g.W()) fail(ErrorCode::ShapeMismatch, "quotient does not start at W");
  Labeling wn;
  try {
    wn = universal(q, g.wn);
  } catch (const Error& e) {
    fail(ErrorCode::LabelClash, "merged wires carry different labels (" + e.detail() + ")");
  }
  return {compose(g.wi, q), compose(g.wo, q), std::move(g.xi), std::move(g.xo), std::move(g.pi),
          std::move(g.po),     std::move(wn),     std::move(g.xn)};
}

struct ResolvedTypings {
  IntArray typing_index;  // per operation
  std::vector<std::string> warnings;
};

namespace detail {

// Edges of one side (inputs or outputs) grouped by operation and sorted by
// port: order[begin[x] .. begin[x+1]) lists the edges of op x.
struct PortTable {
  IntArray order;
  IntArray begin;
};

inline PortTable group_ports(const FiniteFunction& edge_op,
                             const FiniteFunction& edge_port, Nat num_ops) {
  Nat p = edge_port.target();
  IntArray key(edge_op.source());
  for (Nat e = 0; e < key.size(); ++e) key[e] = edge_op(e) * p + edge_port(e);
  PortTable t;
  t.order = stable_argsort_dense(key, num_ops * p);
  IntArray count(num_ops, 0);
  for (Nat x : edge_op.table()) ++count[x];
  t.begin = prefix_sum(count);
  t.begin.push_back(edge_op.source());
  return t;
}

struct SideCheck {
  enum Kind { Ok, Missing, Extra, Label } kind = Ok;
  Nat edge = 0;
  Nat port = 0;
};

// Ports of op x on one side must be exactly 0..|want|-1 with matching labels.
inline SideCheck check_side(const PortTable& t, Nat x, const FiniteFunction& edge_wire,
                            const FiniteFunction& edge_port, const Labeling& wn,
                            const IntArray& want) {
  Nat lo = t.begin[x], hi = t.begin[x + 1];
  Nat k = 0;
  for (Nat j = lo; j < hi; ++j) {
    Nat e = t.order[j];
    Nat port = edge_port(e);
    if (port >= want.size()) return {SideCheck::Extra, e, port};
    if (port != k) return {SideCheck::Missing, e, k};
    if (wn(edge_wire(e)) != want[port]) return {SideCheck::Label, e, port};
    ++k;
  }
  if (k < want.size()) return {SideCheck::Missing, 0, k};
  return {};
}

}  // namespace detail

// Resolves, per operation, the first typing of its label that fits its edges.
inline ResolvedTypings check_well_formed(const BipartiteMultigraph& g, const Signature& sig) {
  check_shape(g);
  if (g.wn.target() != sig.num_objects() || g.xn.target() != sig.num_ops()) {
    fail(ErrorCode::SignatureMismatch, "graph labels do not match the signature");
  }
  const Nat nx = g.X();
  auto in = detail::group_ports(g.xi, g.pi, nx);
  auto out = detail::group_ports(g.xo, g.po, nx);

  auto dup_check = [&](const detail::PortTable& t, const FiniteFunction& edge_op,
                       const FiniteFunction& edge_port, const char* side) {
    for (Nat j = 1; j < t.order.size(); ++j) {
      Nat a = t.order[j - 1], b = t.order[j];
      if (edge_op(a) == edge_op(b) && edge_port(a) == edge_port(b)) {
        fail(ErrorCode::DuplicatePort,
             std::string(side) + " edges " + std::to_string(a) + " and " + std::to_string(b) +
                 " both attach to port " + std::to_string(edge_port(a)) + " of operation " +
                 std::to_string(edge_op(a)) + " (" + sig.op_name(g.xn(edge_op(a))) + ")");
      }
    }
  };
  dup_check(in, g.xi, g.pi, "input");
  dup_check(out, g.xo, g.po, "output");

  ResolvedTypings result;
  result.typing_index.resize(nx);
  Nat total_in = 0, total_out = 0;
  for (Nat x = 0; x < nx; ++x) {
    const auto& ts = sig.typings(g.xn(x));
    const std::string who = "operation " + std::to_string(x) + " (" + sig.op_name(g.xn(x)) + ")";
    Nat chosen = ts.size();
    detail::SideCheck first_in, first_out;
    for (Nat k = 0; k < ts.size(); ++k) {
      auto ci = detail::check_side(in, x, g.wi, g.pi, g.wn, ts[k].source);
      auto co = detail::check_side(out, x, g.wo, g.po, g.wn, ts[k].target);
      if (k == 0) {
        first_in = ci;
        first_out = co;
      }
      if (ci.kind == detail::SideCheck::Ok && co.kind == detail::SideCheck::Ok) {
        if (chosen == ts.size()) {
          chosen = k;
        } else {
          result.warnings.push_back(who + " also matches typing @" + std::to_string(k));
        }
      }
    }
    if (chosen == ts.size()) {
      if (ts.size() > 1) fail(ErrorCode::NoMatchingTyping, who + " fits none of its typings");
      auto report = [&](const detail::SideCheck& c, const char* side) {
        switch (c.kind) {
          case detail::SideCheck::Missing:
            fail(ErrorCode::MissingPort, who + " has no " + side + " edge at port " +
                                             std::to_string(c.port));
          case detail::SideCheck::Label:
            fail(ErrorCode::LabelMismatch, std::string(side) + " edge " + std::to_string(c.edge) +
                                               " of " + who + " carries the wrong object at port " +
                                               std::to_string(c.port));
          case detail::SideCheck::Extra:
            fail(ErrorCode::NoMatchingTyping, std::string(side) + " edge " +
                                                  std::to_string(c.edge) + " of " + who +
                                                  " uses port " + std::to_string(c.port) +
                                                  " beyond its arity");
          case detail::SideCheck::Ok:
            break;
        }
      };
      report(first_in, "input");
      report(first_out, "output");
    }
    result.typing_index[x] = chosen;
    total_in += ts[chosen].source.size();
    total_out += ts[chosen].target.size();
  }
  if (total_in != g.Ei() || total_out != g.Eo()) {
    fail(ErrorCode::MissingPort, "edge counts differ from total arity/coarity");
  }
  return result;
}

inline bool is_well_formed(const BipartiteMultigraph& g, const Signature& sig) {
  try {
    check_well_formed(g, sig);
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace sdiag
