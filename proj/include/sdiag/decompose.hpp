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

#include <vector>

#include "sdiag/diagram.hpp"

namespace sdiag {

// Splits a well-formed diagram into a bus of its W wires plus a tensoring
// of its operations:
//
//   A --s--> W --[id,ei]^T--> W+Ei --id+p--> W+Ki --id+g--> W+Ko --id+q--> W+Eo
//     --[id,eo]--> W --t^T--> B
//
// Every factor except id+g is a spider. p[k] is the input edge plugged into
// tensoring input k; q[k] likewise for outputs.
struct FrobeniusDecomposition {
  FiniteFunction s;   // A -> W
  FiniteFunction t;   // B -> W
  FiniteFunction ei;  // Ei -> W
  FiniteFunction eo;  // Eo -> W
  FiniteFunction p;   // Ki -> Ei
  FiniteFunction q;   // Ko -> Eo
  Labeling wires;     // W -> objects
  Diagram tensoring;
};

inline FrobeniusDecomposition decompose(const Signature& sig, const Diagram& d) {
  check_shape(d);
  ResolvedTypings typings;
  try {
    typings = check_well_formed(d.G, sig);
  } catch (const Error& e) {
    fail(ErrorCode::NotWellFormed, e.what());
  }
  const auto& g = d.G;
  const Nat bound = g.port_bound();
  auto sort_edges = [&](const FiniteFunction& op, const FiniteFunction& port) {
    IntArray key(op.source());
    for (Nat e = 0; e < key.size(); ++e) key[e] = op(e) * bound + port(e);
    return sort_by_mono_key(FiniteFunction::unchecked(g.X() * bound, std::move(key)));
  };
  std::vector<OpInstance> ops(g.X());
  for (Nat x = 0; x < g.X(); ++x) ops[x] = {g.xn(x), typings.typing_index[x]};
  return {d.s,
          d.t,
          g.wi,
          g.wo,
          sort_edges(g.xi, g.pi),
          sort_edges(g.xo, g.po),
          g.wn,
          tensor_operations(sig, ops)};
}

// The seven factors as diagrams, in composition order.
inline std::vector<Diagram> decomposition_factors(const Signature& sig,
                                                  const FrobeniusDecomposition& fd) {
  const Labeling& wn = fd.wires;
  const Nat nw = wn.source();
  if (fd.s.target() != nw || fd.t.target() != nw || fd.ei.target() != nw ||
      fd.eo.target() != nw || fd.p.target() != fd.ei.source() ||
      fd.q.target() != fd.eo.source() || fd.tensoring.s.source() != fd.p.source() ||
      fd.tensoring.t.source() != fd.q.source()) {
    fail(ErrorCode::ShapeMismatch, "decomposition factors do not line up");
  }
  Labeling in_labels = compose(fd.ei, wn);
  Labeling out_labels = compose(fd.eo, wn);
  Diagram bus = identity_diagram(sig, wn);
  return {spider(sig, fd.s, identity(nw), wn),
          spider(sig, identity(nw), coproduct(identity(nw), fd.ei), wn),
          tensor(bus, spider(sig, identity(fd.ei.source()), fd.p, in_labels)),
          tensor(bus, fd.tensoring),
          tensor(bus, spider(sig, fd.q, identity(fd.eo.source()), out_labels)),
          spider(sig, coproduct(identity(nw), fd.eo), identity(nw), wn),
          spider(sig, identity(nw), fd.t, wn)};
}

inline Diagram recompose(const Signature& sig, const FrobeniusDecomposition& fd) {
  auto factors = decomposition_factors(sig, fd);
  Diagram d = factors[0];
  for (Nat i = 1; i < factors.size(); ++i) d = compose(d, factors[i]);
  return d;
}

}  // namespace sdiag
