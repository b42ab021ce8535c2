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

// Diagram interchange as JSON. Keys come out sorted; every finite function
// is {"target": n, "table": [...]}, and the signature travels with it.

#pragma once

#include <algorithm>
#include <string>

#include <nlohmann/json.hpp>

#include "sdiag/bipartite_multigraph.hpp"
#include "sdiag/diagram.hpp"

namespace sdiag::io {

using Json = nlohmann::json;

struct DiagramFile {
  Signature sig;
  Diagram d;
};

inline Json to_json(const FiniteFunction& f) {
  return Json{{"target", f.target()}, {"table", f.table()}};
}

inline Json to_json(const Signature& sig) {
  Json ops = Json::array();
  for (Nat x = 0; x < sig.num_ops(); ++x) {
    Json typings = Json::array();
    for (const auto& ty : sig.typings(x)) {
      typings.push_back({{"source", ty.source}, {"target", ty.target}});
    }
    ops.push_back({{"name", sig.op_name(x)}, {"typings", std::move(typings)}});
  }
  return Json{{"objects", sig.object_names()}, {"ops", std::move(ops)}};
}

namespace detail {

// Objects one key per line, arrays of scalars on one line.
inline void write_json(const Json& j, std::string& out, int depth) {
  if (j.is_object()) {
    out += "{";
    bool first = true;
    for (const auto& [k, v] : j.items()) {
      out += first ? "\n" : ",\n";
      first = false;
      out.append(2 * (depth + 1), ' ');
      out += Json(k).dump() + ": ";
      write_json(v, out, depth + 1);
    }
    out += "\n";
    out.append(2 * depth, ' ');
    out += "}";
    return;
  }
  if (j.is_array() &&
      std::any_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); })) {
    out += "[";
    for (Nat i = 0; i < j.size(); ++i) {
      out += i ? ",\n" : "\n";
      out.append(2 * (depth + 1), ' ');
      write_json(j[i], out, depth + 1);
    }
    out += "\n";
    out.append(2 * depth, ' ');
    out += "]";
    return;
  }
  out += j.dump();
}

}  // namespace detail

inline std::string diagram_json(const Signature& sig, const Diagram& d) {
  const auto& g = d.G;
  Json j{{"sig", to_json(sig)},
         {"s", to_json(d.s)},
         {"t", to_json(d.t)},
         {"G",
          {{"W", g.W()},
           {"wi", to_json(g.wi)},
           {"wo", to_json(g.wo)},
           {"xi", to_json(g.xi)},
           {"xo", to_json(g.xo)},
           {"pi", to_json(g.pi)},
           {"po", to_json(g.po)},
           {"wn", to_json(g.wn)},
           {"xn", to_json(g.xn)}}}};
  std::string out;
  detail::write_json(j, out, 0);
  return out + "\n";
}

namespace detail {

[[noreturn]] inline void schema_fail(const std::string& where, const std::string& msg) {
  fail(ErrorCode::SchemaError, where + ": " + msg);
}

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) schema_fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_fail(where, std::string("missing key '") + key + "'");
  return *it;
}

inline Nat natural(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned()) schema_fail(where, "expected a natural number");
  return j.get<Nat>();
}

inline IntArray naturals(const Json& j, const std::string& where) {
  if (!j.is_array()) schema_fail(where, "expected an array");
  IntArray r;
  r.reserve(j.size());
  for (Nat i = 0; i < j.size(); ++i)
    r.push_back(natural(j[i], where + "[" + std::to_string(i) + "]"));
  return r;
}

inline FiniteFunction finite_function(const Json& j, const std::string& where) {
  Nat target = natural(field(j, "target", where), where + ".target");
  IntArray table = naturals(field(j, "table", where), where + ".table");
  for (Nat i = 0; i < table.size(); ++i) {
    if (table[i] >= target) {
      schema_fail(where, "table[" + std::to_string(i) + "] = " + std::to_string(table[i]) +
                             " is not below target " + std::to_string(target));
    }
  }
  return FiniteFunction::unchecked(target, std::move(table));
}

inline Signature signature(const Json& j) {
  Signature sig;
  try {
    const Json& objects = field(j, "objects", "sig");
    if (!objects.is_array()) schema_fail("sig.objects", "expected an array");
    for (const auto& o : objects) {
      if (!o.is_string()) schema_fail("sig.objects", "expected strings");
      sig.add_object(o.get<std::string>());
    }
    const Json& ops = field(j, "ops", "sig");
    if (!ops.is_array()) schema_fail("sig.ops", "expected an array");
    for (Nat x = 0; x < ops.size(); ++x) {
      std::string where = "sig.ops[" + std::to_string(x) + "]";
      const Json& name = field(ops[x], "name", where);
      if (!name.is_string()) schema_fail(where + ".name", "expected a string");
      const Json& typings = field(ops[x], "typings", where);
      if (!typings.is_array() || typings.empty()) schema_fail(where, "needs at least one typing");
      for (const auto& ty : typings) {
        sig.add_op(name.get<std::string>(), {naturals(field(ty, "source", where), where),
                                             naturals(field(ty, "target", where), where)});
      }
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SchemaError) throw;
    schema_fail("sig", e.what());
  }
  return sig;
}

}  // namespace detail

inline DiagramFile parse_diagram_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::SchemaError, std::string("not JSON: ") + e.what());
  }
  using detail::field;
  using detail::finite_function;
  DiagramFile out{detail::signature(field(j, "sig", "root")), {}};
  const Json& g = field(j, "G", "root");
  out.d.s = finite_function(field(j, "s", "root"), "s");
  out.d.t = finite_function(field(j, "t", "root"), "t");
  auto& h = out.d.G;
  h.wi = finite_function(field(g, "wi", "G"), "G.wi");
  h.wo = finite_function(field(g, "wo", "G"), "G.wo");
  h.xi = finite_function(field(g, "xi", "G"), "G.xi");
  h.xo = finite_function(field(g, "xo", "G"), "G.xo");
  h.pi = finite_function(field(g, "pi", "G"), "G.pi");
  h.po = finite_function(field(g, "po", "G"), "G.po");
  h.wn = finite_function(field(g, "wn", "G"), "G.wn");
  h.xn = finite_function(field(g, "xn", "G"), "G.xn");
  if (detail::natural(field(g, "W", "G"), "G.W") != h.W()) {
    detail::schema_fail("G.W", "disagrees with the length of G.wn");
  }
  if (h.wn.target() != out.sig.num_objects() || h.xn.target() != out.sig.num_ops()) {
    detail::schema_fail("G", "labels do not range over the signature");
  }
  try {
    check_shape(out.d);
  } catch (const Error& e) {
    detail::schema_fail("root", e.what());
  }
  return out;
}

}  // namespace sdiag::io
