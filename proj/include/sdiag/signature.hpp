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

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sdiag/finite_function.hpp"

namespace sdiag {

// A labeling assigns each element an object index: target = number of objects.
using Labeling = FiniteFunction;

struct Typing {
  IntArray source;
  IntArray target;
  friend bool operator==(const Typing&, const Typing&) = default;
};

// Generating objects and operations. Each op has one or more typings; a
// polymorphic op keeps them in declaration order.
class Signature {
 public:
  Nat add_object(const std::string& name) {
    if (object_index_.count(name)) fail(ErrorCode::DuplicateName, "object " + name);
    object_index_.emplace(name, objects_.size());
    objects_.push_back(name);
    return objects_.size() - 1;
  }

  // Repeated names accumulate typings.
  Nat add_op(const std::string& name, Typing typing) {
    for (Nat o : typing.source) check_object(o);
    for (Nat o : typing.target) check_object(o);
    if (object_index_.count(name))
      fail(ErrorCode::DuplicateName, "op " + name + " shadows an object");
    auto it = op_index_.find(name);
    if (it != op_index_.end()) {
      typings_[it->second].push_back(std::move(typing));
      return it->second;
    }
    op_index_.emplace(name, ops_.size());
    ops_.push_back(name);
    typings_.push_back({std::move(typing)});
    return ops_.size() - 1;
  }

  Nat num_objects() const noexcept { return objects_.size(); }
  Nat num_ops() const noexcept { return ops_.size(); }
  const std::string& object_name(Nat o) const { return objects_.at(o); }
  const std::string& op_name(Nat x) const { return ops_.at(x); }
  const std::vector<std::string>& object_names() const noexcept { return objects_; }
  const std::vector<std::string>& op_names() const noexcept { return ops_; }

  std::optional<Nat> find_object(const std::string& name) const {
    auto it = object_index_.find(name);
    if (it == object_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<Nat> find_op(const std::string& name) const {
    auto it = op_index_.find(name);
    if (it == op_index_.end()) return std::nullopt;
    return it->second;
  }

  const std::vector<Typing>& typings(Nat op) const {
    if (op >= ops_.size()) fail(ErrorCode::IndexOutOfRange, "op " + std::to_string(op));
    return typings_[op];
  }

  const Typing& typing_of(Nat op, Nat k) const {
    const auto& ts = typings(op);
    if (k >= ts.size()) {
      fail(ErrorCode::IndexOutOfRange,
           "op " + ops_[op] + " has no typing @" + std::to_string(k));
    }
    return ts[k];
  }

  bool is_monomorphic() const {
    for (const auto& ts : typings_) {
      if (ts.size() != 1) return false;
    }
    return true;
  }

  friend bool operator==(const Signature& a, const Signature& b) {
    return a.objects_ == b.objects_ && a.ops_ == b.ops_ && a.typings_ == b.typings_;
  }

 private:
  void check_object(Nat o) const {
    if (o >= objects_.size()) fail(ErrorCode::UnknownObject, "object index " + std::to_string(o));
  }

  std::vector<std::string> objects_;
  std::vector<std::string> ops_;
  std::vector<std::vector<Typing>> typings_;
  std::unordered_map<std::string, Nat> object_index_;
  std::unordered_map<std::string, Nat> op_index_;
};

inline const Typing& typing_of(const Signature& sig, Nat op, Nat k) {
  return sig.typing_of(op, k);
}

inline Labeling labeling(const Signature& sig, IntArray objects) {
  return Labeling(sig.num_objects(), std::move(objects));
}

// f : W(src) -> W(tgt) is a wires morphism iff compose(f, tgt) = src.
inline bool check_label_preserving(const FiniteFunction& f,
                                   const Labeling& src_labels,
                                   const Labeling& tgt_labels) {
  if (f.source() != src_labels.source() || f.target() != tgt_labels.source() ||
      src_labels.target() != tgt_labels.target()) {
    fail(ErrorCode::ShapeMismatch, "label-preservation check on incompatible shapes");
  }
  return compose(f, tgt_labels) == src_labels;
}

struct WiresMorphism {
  FiniteFunction f;
  Labeling source_labels;
  Labeling target_labels;

  bool valid() const { return check_label_preserving(f, source_labels, target_labels); }
};

}  // namespace sdiag
