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

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sdiag/diagram.hpp"

namespace sdiag {

// Values for each generator, indexed by operation label.
template <class T>
struct Interpretation {
  std::vector<std::function<std::vector<T>(std::span<const T>)>> ops;
};

// Runs a monogamous acyclic diagram: each operation fires once all of its
// input wires hold a value.
template <class T>
std::vector<T> evaluate_ma(const Diagram& d, const Interpretation<T>& interp,
                           std::span<const T> inputs) {
  if (!check_monogamous(d) || !check_acyclic(d)) {
    fail(ErrorCode::NotMonogamousAcyclic, "evaluation needs a monogamous acyclic diagram");
  }
  if (inputs.size() != d.s.source()) {
    fail(ErrorCode::ArityMismatch, "expected " + std::to_string(d.s.source()) + " inputs, got " +
                                       std::to_string(inputs.size()));
  }
  const auto& g = d.G;
  const Nat nx = g.X();
  auto in = detail::group_ports(g.xi, g.pi, nx);
  auto out = detail::group_ports(g.xo, g.po, nx);
  constexpr Nat kNone = static_cast<Nat>(-1);
  IntArray consumer(g.W(), kNone);
  for (Nat e = 0; e < g.Ei(); ++e) consumer[g.wi(e)] = g.xi(e);

  std::vector<std::optional<T>> value(g.W());
  IntArray pending(nx);
  std::vector<Nat> ready;
  for (Nat x = 0; x < nx; ++x) {
    pending[x] = in.begin[x + 1] - in.begin[x];
    if (pending[x] == 0) ready.push_back(x);
  }
  auto assign = [&](Nat w, const T& v) {
    value[w] = v;
    Nat x = consumer[w];
    if (x != kNone && --pending[x] == 0) ready.push_back(x);
  };
  for (Nat i = 0; i < inputs.size(); ++i) assign(d.s(i), inputs[i]);
  std::vector<T> args;
  while (!ready.empty()) {
    Nat x = ready.back();
    ready.pop_back();
    Nat op = g.xn(x);
    if (op >= interp.ops.size() || !interp.ops[op]) {
      fail(ErrorCode::ArityMismatch, "no interpretation for operation label " + std::to_string(op));
    }
    args.clear();
    for (Nat j = in.begin[x]; j < in.begin[x + 1]; ++j) args.push_back(*value[g.wi(in.order[j])]);
    std::vector<T> res = interp.ops[op](args);
    Nat n_out = out.begin[x + 1] - out.begin[x];
    if (res.size() != n_out) {
      fail(ErrorCode::ArityMismatch, "operation " + std::to_string(x) + " returned " +
                                         std::to_string(res.size()) + " values for " +
                                         std::to_string(n_out) + " outputs");
    }
    for (Nat k = 0; k < n_out; ++k) assign(g.wo(out.order[out.begin[x] + k]), res[k]);
  }
  std::vector<T> result;
  result.reserve(d.t.source());
  for (Nat i = 0; i < d.t.source(); ++i) result.push_back(*value[d.t(i)]);
  return result;
}

template <class T>
std::vector<T> evaluate_ma(const Diagram& d, const Interpretation<T>& interp,
                           const std::vector<T>& inputs) {
  return evaluate_ma(d, interp, std::span<const T>(inputs));
}

}  // namespace sdiag
