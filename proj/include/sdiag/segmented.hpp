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

#include "sdiag/finite_function.hpp"

namespace sdiag {

// For segment sizes s (N of them) and a selection x : X -> N, the copairing
// of the injections inj_{x(0)}, ..., inj_{x(X-1)} into sum(s).
inline FiniteFunction injections(const FiniteFunction& s, const FiniteFunction& x) {
  if (x.target() != s.source()) {
    fail(ErrorCode::ShapeMismatch, "injections: selection targets " + std::to_string(x.target()) +
                                       " segments, have " + std::to_string(s.source()));
  }
  IntArray sizes = compose(x, s).table();
  IntArray starts = prefix_sum(s.table());
  IntArray chosen(x.source());
  for (Nat i = 0; i < chosen.size(); ++i) chosen[i] = starts[x(i)];
  IntArray r = segmented_arange(sizes);
  IntArray offset = repeat(chosen, sizes);
  for (Nat i = 0; i < r.size(); ++i) r[i] += offset[i];
  return FiniteFunction::unchecked(sum(s.table()), std::move(r));
}

// Segment sizes as a finite function into max+1.
inline FiniteFunction sizes_function(IntArray sizes) {
  Nat bound = max_or(sizes, 0) + 1;
  return FiniteFunction::unchecked(bound, std::move(sizes));
}

// A family of finite functions f_i : sources(i) -> targets(i), stored flat.
struct SegmentedFiniteFunction {
  FiniteFunction sources;
  FiniteFunction targets;
  FiniteFunction values;

  Nat size() const noexcept { return sources.source(); }

  static SegmentedFiniteFunction from(std::span<const FiniteFunction> fs) {
    IntArray src(fs.size()), tgt(fs.size());
    std::vector<IntArray> tables;
    tables.reserve(fs.size());
    for (Nat i = 0; i < fs.size(); ++i) {
      src[i] = fs[i].source();
      tgt[i] = fs[i].target();
      tables.push_back(fs[i].table());
    }
    Nat vt = max_or(tgt, 0);
    return {sizes_function(std::move(src)), sizes_function(std::move(tgt)),
            FiniteFunction::unchecked(vt, concatenate(tables))};
  }

  friend bool operator==(const SegmentedFiniteFunction&, const SegmentedFiniteFunction&) = default;
};

inline void check_sff(const SegmentedFiniteFunction& f) {
  if (f.sources.source() != f.targets.source()) {
    fail(ErrorCode::SFFInvariant, "sources and targets have different lengths");
  }
  if (sum(f.sources.table()) != f.values.source()) {
    fail(ErrorCode::SFFInvariant, "values length differs from total segment size");
  }
  Nat k = 0;
  for (Nat i = 0; i < f.size(); ++i) {
    for (Nat j = 0; j < f.sources(i); ++j, ++k) {
      if (f.values(k) >= f.targets(i)) {
        fail(ErrorCode::SFFInvariant, "segment " + std::to_string(i) + " entry " +
                                          std::to_string(j) + " exceeds its target");
      }
    }
  }
}

inline FiniteFunction sff_slice(const SegmentedFiniteFunction& f, Nat i) {
  if (i >= f.size()) fail(ErrorCode::IndexOutOfRange, "segment " + std::to_string(i));
  Nat begin = 0;
  for (Nat j = 0; j < i; ++j) begin += f.sources(j);
  const auto& v = f.values.table();
  return FiniteFunction::unchecked(f.targets(i), IntArray(v.begin() + begin,
                                                          v.begin() + begin + f.sources(i)));
}

// Copairing of the selected segments; they must share a target.
inline FiniteFunction indexed_coproduct(const SegmentedFiniteFunction& f,
                                        const FiniteFunction& x) {
  Nat target = f.values.target();
  for (Nat i = 0; i < x.source(); ++i) {
    Nat ti = f.targets(x(i));
    if (i == 0) target = ti;
    if (ti != target) {
      fail(ErrorCode::TargetMismatch, "indexed coproduct of segments with targets " +
                                          std::to_string(target) + " and " + std::to_string(ti));
    }
  }
  FiniteFunction inj = injections(f.sources, x);
  IntArray r(inj.source());
  for (Nat i = 0; i < r.size(); ++i) r[i] = f.values(inj(i));
  return FiniteFunction::unchecked(target, std::move(r));
}

// Tensor of the selected segments.
inline FiniteFunction indexed_tensor(const SegmentedFiniteFunction& f, const FiniteFunction& x) {
  FiniteFunction inj = injections(f.sources, x);
  IntArray tgt = compose(x, f.targets).table();
  IntArray offsets = repeat(prefix_sum(tgt), compose(x, f.sources).table());
  IntArray r(inj.source());
  for (Nat i = 0; i < r.size(); ++i) r[i] = f.values(inj(i)) + offsets[i];
  return FiniteFunction::unchecked(sum(tgt), std::move(r));
}

}  // namespace sdiag
