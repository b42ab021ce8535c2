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

// Strict symmetric monoidal hypergraph functors given by their action on
// generators, applied to whole diagrams in work linear in the result.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "sdiag/decompose.hpp"
#include "sdiag/segmented.hpp"

namespace sdiag {

// One segmented function per diagram component; segment i belongs to the
// image of source operation i.
struct ArrowSegments {
  SegmentedFiniteFunction s, t, wi, wo, xi, xo, pi, po, wn, xn;
};

struct FunctorEncoding {
  Signature source;
  Signature target;
  SegmentedFiniteFunction objects;  // object o -> list of target objects
  ArrowSegments arrows;
};

// Reassembles the image of source operation i.
inline Diagram arrow_image(const FunctorEncoding& enc, Nat i) {
  const auto& a = enc.arrows;
  return {sff_slice(a.s, i),
          sff_slice(a.t, i),
          {sff_slice(a.wi, i), sff_slice(a.wo, i), sff_slice(a.xi, i), sff_slice(a.xo, i),
           sff_slice(a.pi, i), sff_slice(a.po, i), sff_slice(a.wn, i), sff_slice(a.xn, i)}};
}

inline IntArray map_objects(const FunctorEncoding& enc, std::span<const Nat> labels) {
  IntArray r;
  for (Nat o : labels) {
    FiniteFunction img = sff_slice(enc.objects, o);
    r.insert(r.end(), img.table().begin(), img.table().end());
  }
  return r;
}

// Checks everything an encoding promises; throws on the first violation.
inline void validate_encoding(const FunctorEncoding& enc) {
  const Signature& src = enc.source;
  const Signature& tgt = enc.target;
  if (!src.is_monomorphic()) {
    fail(ErrorCode::EncodingMismatch, "source signature has polymorphic operations");
  }
  check_sff(enc.objects);
  if (enc.objects.size() != src.num_objects()) {
    fail(ErrorCode::EncodingMismatch, "object map must cover every source object");
  }
  for (Nat o = 0; o < src.num_objects(); ++o) {
    if (enc.objects.targets(o) != tgt.num_objects()) {
      fail(ErrorCode::SFFInvariant, "object segment " + std::to_string(o) + " has wrong target");
    }
  }
  const auto& a = enc.arrows;
  for (const auto* f : {&a.s, &a.t, &a.wi, &a.wo, &a.xi, &a.xo, &a.pi, &a.po, &a.wn, &a.xn}) {
    check_sff(*f);
    if (f->size() != src.num_ops()) {
      fail(ErrorCode::EncodingMismatch, "arrow map must cover every source operation");
    }
  }
  for (Nat i = 0; i < src.num_ops(); ++i) {
    const std::string who = "image of " + src.op_name(i);
    Diagram d;
    try {
      d = arrow_image(enc, i);
      check_shape(d);
    } catch (const Error& e) {
      fail(ErrorCode::EncodingMismatch, who + ": " + e.what());
    }
    if (d.G.wn.target() != tgt.num_objects() || d.G.xn.target() != tgt.num_ops()) {
      fail(ErrorCode::EncodingMismatch, who + " is not labeled over the target signature");
    }
    try {
      check_well_formed(d.G, tgt);
    } catch (const Error& e) {
      fail(ErrorCode::NotWellFormed, who + ": " + e.what());
    }
    const Typing& ty = src.typing_of(i, 0);
    if (d.source_type().table() != map_objects(enc, ty.source) ||
        d.target_type().table() != map_objects(enc, ty.target)) {
      fail(ErrorCode::EncodingMismatch, who + " has boundary types other than the object map's");
    }
  }
}

// Builds and validates an encoding from explicit images.
inline FunctorEncoding make_encoding(const Signature& source, const Signature& target,
                                     const std::vector<IntArray>& object_images,
                                     const std::vector<Diagram>& arrow_images) {
  if (object_images.size() != source.num_objects() || arrow_images.size() != source.num_ops()) {
    fail(ErrorCode::EncodingMismatch, "need one image per source object and operation");
  }
  std::vector<FiniteFunction> objs;
  for (const auto& img : object_images) objs.emplace_back(target.num_objects(), img);
  Nat p = 0;
  for (const auto& d : arrow_images) p = std::max(p, d.G.port_bound());
  auto collect = [&](auto pick) {
    std::vector<FiniteFunction> fs;
    fs.reserve(arrow_images.size());
    for (const auto& d : arrow_images) fs.push_back(pick(d));
    return SegmentedFiniteFunction::from(fs);
  };
  auto widen = [p](const FiniteFunction& f) { return FiniteFunction::unchecked(p, f.table()); };
  FunctorEncoding enc{source, target, SegmentedFiniteFunction::from(objs),
                      {collect([](const Diagram& d) { return d.s; }),
                       collect([](const Diagram& d) { return d.t; }),
                       collect([](const Diagram& d) { return d.G.wi; }),
                       collect([](const Diagram& d) { return d.G.wo; }),
                       collect([](const Diagram& d) { return d.G.xi; }),
                       collect([](const Diagram& d) { return d.G.xo; }),
                       collect([&](const Diagram& d) { return widen(d.G.pi); }),
                       collect([&](const Diagram& d) { return widen(d.G.po); }),
                       collect([](const Diagram& d) { return d.G.wn; }),
                       collect([](const Diagram& d) { return d.G.xn; })}};
  validate_encoding(enc);
  return enc;
}

// Every generator to its own singleton, every object to itself.
inline FunctorEncoding identity_encoding(const Signature& sig) {
  std::vector<IntArray> objs;
  for (Nat o = 0; o < sig.num_objects(); ++o) objs.push_back({o});
  std::vector<Diagram> arrows;
  for (Nat x = 0; x < sig.num_ops(); ++x) arrows.push_back(singleton(sig, x, 0));
  return make_encoding(sig, sig, objs, arrows);
}

struct MappedHalfSpider {
  FiniteFunction f;
  Labeling source_labels;
  Labeling target_labels;
};

// Image of the half-spider of a label-preserving f : A -> B.
inline MappedHalfSpider map_half_spider(const FunctorEncoding& enc, const FiniteFunction& f,
                                        const Labeling& src_labels, const Labeling& tgt_labels) {
  if (!check_label_preserving(f, src_labels, tgt_labels)) {
    fail(ErrorCode::NotLabelPreserving, "half-spider map does not preserve labels");
  }
  const Nat no = enc.target.num_objects();
  FiniteFunction tgt_mapped = compose(injections(enc.objects.sources, tgt_labels),
                                      enc.objects.values);
  FiniteFunction block_sizes = compose(tgt_labels, enc.objects.sources);
  FiniteFunction f_mapped = injections(block_sizes, f);
  FiniteFunction src_mapped = compose(f_mapped, tgt_mapped);
  FiniteFunction src_direct = compose(injections(enc.objects.sources, src_labels),
                                      enc.objects.values);
  if (src_mapped.table() != src_direct.table()) {
    fail(ErrorCode::NotLabelPreserving, "mapped half-spider is not natural in its labels");
  }
  return {std::move(f_mapped), FiniteFunction::unchecked(no, src_mapped.table()),
          FiniteFunction::unchecked(no, tgt_mapped.table())};
}

inline Diagram map_tensoring(const FunctorEncoding& enc, const Diagram& d) {
  const auto& g = d.G;
  FiniteFunction ins = inj0(g.Ei(), g.Eo()), outs = inj1(g.Ei(), g.Eo());
  if (g.W() != g.Ei() + g.Eo() || g.wi != ins || g.wo != outs || d.s != ins || d.t != outs) {
    fail(ErrorCode::NotATensoring, "diagram is not (inj0, inj1, G) over its edges");
  }
  const auto& a = enc.arrows;
  const FiniteFunction& x = g.xn;
  auto retarget = [](const FiniteFunction& f, Nat target) {
    return FiniteFunction::unchecked(target, f.table());
  };
  BipartiteMultigraph h{indexed_tensor(a.wi, x),
                        indexed_tensor(a.wo, x),
                        indexed_tensor(a.xi, x),
                        indexed_tensor(a.xo, x),
                        retarget(indexed_coproduct(a.pi, x), a.pi.values.target()),
                        retarget(indexed_coproduct(a.po, x), a.po.values.target()),
                        retarget(indexed_coproduct(a.wn, x), enc.target.num_objects()),
                        retarget(indexed_coproduct(a.xn, x), enc.target.num_ops())};
  return {indexed_tensor(a.s, x), indexed_tensor(a.t, x), std::move(h)};
}

// Image of each factor of a decomposition, ready for recompose over the
// target signature.
inline FrobeniusDecomposition map_decomposition(const FunctorEncoding& enc,
                                                const FrobeniusDecomposition& fd) {
  const Labeling& wn = fd.wires;
  Labeling in_labels = compose(fd.ei, wn);
  Labeling out_labels = compose(fd.eo, wn);
  auto s = map_half_spider(enc, fd.s, compose(fd.s, wn), wn);
  auto t = map_half_spider(enc, fd.t, compose(fd.t, wn), wn);
  auto ei = map_half_spider(enc, fd.ei, in_labels, wn);
  auto eo = map_half_spider(enc, fd.eo, out_labels, wn);
  auto p = map_half_spider(enc, fd.p, compose(fd.p, in_labels), in_labels);
  auto q = map_half_spider(enc, fd.q, compose(fd.q, out_labels), out_labels);
  return {s.f, t.f, ei.f, eo.f, p.f, q.f, s.target_labels, map_tensoring(enc, fd.tensoring)};
}

inline Diagram apply_functor(const FunctorEncoding& enc, const Diagram& d) {
  return recompose(enc.target, map_decomposition(enc, decompose(enc.source, d)));
}

}  // namespace sdiag
