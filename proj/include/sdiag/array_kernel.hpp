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

// Bulk integer-array primitives. Every routine is linear in its input plus
// output size; nothing here knows about categories.

#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sdiag/error.hpp"

namespace sdiag {

using Nat = std::size_t;
using IntArray = std::vector<Nat>;

inline IntArray arange(Nat n) {
  IntArray r(n);
  std::iota(r.begin(), r.end(), Nat{0});
  return r;
}

inline IntArray zeros(Nat n) { return IntArray(n, 0); }

inline Nat sum(std::span<const Nat> x) {
  return std::accumulate(x.begin(), x.end(), Nat{0});
}

// Exclusive scan: r[i] = x[0] + ... + x[i-1].
inline IntArray prefix_sum(std::span<const Nat> x) {
  IntArray r(x.size());
  std::exclusive_scan(x.begin(), x.end(), r.begin(), Nat{0});
  return r;
}

inline Nat max_or(std::span<const Nat> x, Nat fallback) {
  return x.empty() ? fallback : *std::max_element(x.begin(), x.end());
}

// Counting sort. Returns p with x[p[0]] <= x[p[1]] <= ..., ties in input order.
inline IntArray stable_argsort_dense(std::span<const Nat> x, Nat bound) {
  IntArray count(bound + 1, 0);
  for (Nat i = 0; i < x.size(); ++i) {
    if (x[i] >= bound) {
      fail(ErrorCode::KeyOutOfRange, "key " + std::to_string(x[i]) +
                                         " at " + std::to_string(i) +
                                         " >= bound " + std::to_string(bound));
    }
    ++count[x[i] + 1];
  }
  std::partial_sum(count.begin(), count.end(), count.begin());
  IntArray p(x.size());
  for (Nat i = 0; i < x.size(); ++i) p[count[x[i]]++] = i;
  return p;
}

inline IntArray concatenate(std::span<const IntArray> xs) {
  Nat total = 0;
  for (const auto& x : xs) total += x.size();
  IntArray r;
  r.reserve(total);
  for (const auto& x : xs) r.insert(r.end(), x.begin(), x.end());
  return r;
}

inline IntArray concatenate(std::initializer_list<IntArray> xs) {
  return concatenate(std::span<const IntArray>(xs.begin(), xs.size()));
}

// x[0] repeated s[0] times, then x[1] repeated s[1] times, ...
inline IntArray repeat(std::span<const Nat> x, std::span<const Nat> s) {
  if (x.size() != s.size()) {
    fail(ErrorCode::LengthMismatch, "repeat: " + std::to_string(x.size()) +
                                        " values vs " +
                                        std::to_string(s.size()) + " counts");
  }
  IntArray r;
  r.reserve(sum(s));
  for (Nat i = 0; i < x.size(); ++i) r.insert(r.end(), s[i], x[i]);
  return r;
}

// concatenate(arange(s[0]), arange(s[1]), ...)
inline IntArray segmented_arange(std::span<const Nat> s) {
  IntArray r = arange(sum(s));
  IntArray offsets = repeat(prefix_sum(s), s);
  for (Nat i = 0; i < r.size(); ++i) r[i] -= offsets[i];
  return r;
}

namespace detail {

struct UnionFind {
  IntArray parent;
  explicit UnionFind(Nat n) : parent(arange(n)) {}
  Nat find(Nat v) {
    Nat root = v;
    while (parent[root] != root) root = parent[root];
    while (parent[v] != root) {
      Nat next = parent[v];
      parent[v] = root;
      v = next;
    }
    return root;
  }
  // The smaller root wins, so each root is its component's minimum vertex.
  void unite(Nat a, Nat b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent[a] = b;
  }
};

}  // namespace detail

// Labels are numbered in order of each component's smallest vertex.
inline std::pair<Nat, IntArray> connected_components(
    std::span<const Nat> sources, std::span<const Nat> targets,
    Nat n_vertices) {
  if (sources.size() != targets.size()) {
    fail(ErrorCode::LengthMismatch, "connected_components: edge arrays differ");
  }
  detail::UnionFind uf(n_vertices);
  for (Nat i = 0; i < sources.size(); ++i) {
    if (sources[i] >= n_vertices || targets[i] >= n_vertices) {
      fail(ErrorCode::VertexOutOfRange,
           "edge " + std::to_string(i) + " leaves [0," +
               std::to_string(n_vertices) + ")");
    }
    uf.unite(sources[i], targets[i]);
  }
  IntArray labels(n_vertices);
  Nat q = 0;
  for (Nat v = 0; v < n_vertices; ++v) {
    Nat root = uf.find(v);
    labels[v] = (root == v) ? q++ : labels[root];
  }
  return {q, std::move(labels)};
}

}  // namespace sdiag
