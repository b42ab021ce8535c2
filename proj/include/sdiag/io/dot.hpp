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

// Graphviz rendering of the internal graph: wires are circles, operations
// are boxes, edges carry their port number. Boundary legs hang off two
// invisible-ish point nodes per side.

#pragma once

#include <sstream>
#include <string>

#include "sdiag/diagram.hpp"

namespace sdiag::io {

inline std::string dot_escape(const std::string& s) {
  std::string r;
  for (char c : s) {
    if (c == '"' || c == '\\') r += '\\';
    r += c;
  }
  return r;
}

inline std::string to_dot(const Signature& sig, const Diagram& d) {
  const auto& g = d.G;
  std::ostringstream os;
  os << "digraph diagram {\n  rankdir=LR;\n";
  for (Nat w = 0; w < g.W(); ++w) {
    os << "  w" << w << " [shape=circle, label=\"" << dot_escape(sig.object_name(g.wn(w)))
       << "\"];\n";
  }
  for (Nat x = 0; x < g.X(); ++x) {
    os << "  x" << x << " [shape=box, label=\"" << dot_escape(sig.op_name(g.xn(x))) << "\"];\n";
  }
  for (Nat i = 0; i < d.s.source(); ++i) {
    os << "  s" << i << " [shape=point, xlabel=\"in " << i << "\"];\n";
    os << "  s" << i << " -> w" << d.s(i) << " [style=dashed];\n";
  }
  for (Nat i = 0; i < d.t.source(); ++i) {
    os << "  t" << i << " [shape=point, xlabel=\"out " << i << "\"];\n";
    os << "  w" << d.t(i) << " -> t" << i << " [style=dashed];\n";
  }
  for (Nat e = 0; e < g.Ei(); ++e) {
    os << "  w" << g.wi(e) << " -> x" << g.xi(e) << " [label=\"" << g.pi(e) << "\"];\n";
  }
  for (Nat e = 0; e < g.Eo(); ++e) {
    os << "  x" << g.xo(e) << " -> w" << g.wo(e) << " [label=\"" << g.po(e) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace sdiag::io
