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

// Text formats. Signatures are line based:
//
//   object A
//   op f : A -> A A      # repeat a name to add a typing; pick it with f@1
//
// Terms are s-expressions over seq, par, id, twist, gen, split, join, unit,
// counit and spider. Functor files map each source object to a list of
// target objects and each source op to a term over the target signature:
//
//   object A -> X Y
//   op f = (par (gen g) (id Y))

#pragma once

#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sdiag/functor.hpp"
#include "sdiag/term.hpp"
#include "sdiag/wiring.hpp"

namespace sdiag::io {

struct Token {
  enum Kind { Open, Close, Colon, Atom, End } kind;
  std::string text;
  Nat line;
  Nat col;
};

[[noreturn]] inline void parse_fail(Nat line, Nat col, const std::string& msg) {
  fail(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) +
                                  ": " + msg);
}

// '#' runs to end of line. Atoms are maximal runs of anything else that is
// not whitespace, a parenthesis or ':'.
inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  Nat line = 1, col = 1;
  for (Nat i = 0; i < text.size();) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == '(' || c == ')' || c == ':') {
      out.push_back({c == '(' ? Token::Open : c == ')' ? Token::Close : Token::Colon,
                     std::string(1, c), line, col});
      ++col;
      ++i;
    } else {
      Nat start = i, start_col = col;
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
             text[i] != '(' && text[i] != ')' && text[i] != ':' && text[i] != '#') {
        ++i;
        ++col;
      }
      out.push_back({Token::Atom, std::string(text.substr(start, i - start)), line, start_col});
    }
  }
  out.push_back({Token::End, "", line, col});
  return out;
}

// Reruns f, prefixing non-parse errors with the position they arose at.
template <class F>
auto at_position(const Token& tok, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    fail(e.code(), "line " + std::to_string(tok.line) + ", column " + std::to_string(tok.col) +
                       ": " + e.detail());
  }
}

inline Signature parse_signature(std::string_view text) {
  auto toks = tokenize(text);
  Signature sig;
  auto object_at = [&](const Token& t) {
    auto o = sig.find_object(t.text);
    if (!o) {
      fail(ErrorCode::UnknownObject, "line " + std::to_string(t.line) + ", column " +
                                         std::to_string(t.col) + ": unknown object '" + t.text +
                                         "'");
    }
    return *o;
  };
  for (Nat i = 0; toks[i].kind != Token::End;) {
    const Token& kw = toks[i];
    if (kw.kind != Token::Atom || (kw.text != "object" && kw.text != "op")) {
      parse_fail(kw.line, kw.col, "expected 'object' or 'op', found '" + kw.text + "'");
    }
    const Token& name = toks[i + 1];
    if (name.kind != Token::Atom || name.line != kw.line) {
      parse_fail(kw.line, kw.col, "missing name after '" + kw.text + "'");
    }
    if (name.text.find('@') != std::string::npos) {
      parse_fail(name.line, name.col, "'@' is reserved for typing selection");
    }
    i += 2;
    if (kw.text == "object") {
      at_position(name, [&] { return sig.add_object(name.text); });
      continue;
    }
    if (toks[i].kind != Token::Colon || toks[i].line != kw.line) {
      parse_fail(name.line, name.col, "expected ':' after op name");
    }
    ++i;
    Typing ty;
    bool arrow = false;
    for (; toks[i].kind == Token::Atom && toks[i].line == kw.line; ++i) {
      if (toks[i].text == "->") {
        if (arrow) parse_fail(toks[i].line, toks[i].col, "second '->'");
        arrow = true;
        continue;
      }
      (arrow ? ty.target : ty.source).push_back(object_at(toks[i]));
    }
    if (!arrow) parse_fail(kw.line, kw.col, "op line needs '->'");
    if (toks[i].line == kw.line && toks[i].kind != Token::End) {
      parse_fail(toks[i].line, toks[i].col, "unexpected '" + toks[i].text + "'");
    }
    at_position(name, [&] { return sig.add_op(name.text, std::move(ty)); });
  }
  return sig;
}

inline std::string print_signature(const Signature& sig) {
  std::ostringstream os;
  for (const auto& o : sig.object_names()) os << "object " << o << "\n";
  for (Nat x = 0; x < sig.num_ops(); ++x) {
    for (const auto& ty : sig.typings(x)) {
      os << "op " << sig.op_name(x) << " :";
      for (Nat o : ty.source) os << " " << sig.object_name(o);
      os << " ->";
      for (Nat o : ty.target) os << " " << sig.object_name(o);
      os << "\n";
    }
  }
  return os.str();
}

namespace detail {

class TermParser {
 public:
  TermParser(const std::vector<Token>& toks, Nat pos, const Signature& sig)
      : toks_(toks), pos_(pos), sig_(sig) {}

  Nat pos() const { return pos_; }

  Term parse() {
    Nat root = node();
    term_.set_root(root);
    return std::move(term_);
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  void expect(Token::Kind k, const char* what) {
    const Token& t = next();
    if (t.kind != k) parse_fail(t.line, t.col, std::string("expected ") + what);
  }

  Nat object(const Token& t) {
    if (t.kind != Token::Atom) parse_fail(t.line, t.col, "expected an object name");
    auto o = sig_.find_object(t.text);
    if (!o) parse_fail(t.line, t.col, "unknown object '" + t.text + "'");
    return *o;
  }

  IntArray objects_until_close() {
    IntArray r;
    while (peek().kind == Token::Atom) r.push_back(object(next()));
    expect(Token::Close, "')'");
    return r;
  }

  IntArray parenthesized_objects() {
    expect(Token::Open, "'('");
    return objects_until_close();
  }

  IntArray parenthesized_indices() {
    expect(Token::Open, "'('");
    IntArray r;
    while (peek().kind == Token::Atom) {
      const Token& t = next();
      std::size_t used = 0;
      unsigned long long v = 0;
      try {
        v = std::stoull(t.text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != t.text.size()) parse_fail(t.line, t.col, "expected an index");
      r.push_back(static_cast<Nat>(v));
    }
    expect(Token::Close, "')'");
    return r;
  }

  Nat node() {
    const Token& open = next();
    if (open.kind != Token::Open) parse_fail(open.line, open.col, "expected '('");
    const Token& head = next();
    if (head.kind != Token::Atom) parse_fail(head.line, head.col, "expected a term constructor");
    const std::string& h = head.text;
    if (h == "seq" || h == "par") {
      Nat a = node();
      Nat b = node();
      expect(Token::Close, "')' after two subterms");
      return h == "seq" ? term_.add_seq(a, b) : term_.add_par(a, b);
    }
    Leaf l;
    if (h == "id") {
      l.labels = objects_until_close();
    } else if (h == "twist") {
      l.kind = LeafKind::Twist;
      l.labels = parenthesized_objects();
      l.labels2 = parenthesized_objects();
      expect(Token::Close, "')'");
    } else if (h == "gen") {
      const Token& t = next();
      if (t.kind != Token::Atom) parse_fail(t.line, t.col, "expected an operation name");
      std::string name = t.text;
      Nat typing = 0;
      if (auto at = name.find('@'); at != std::string::npos) {
        std::string k = name.substr(at + 1);
        if (k.empty() || k.find_first_not_of("0123456789") != std::string::npos) {
          parse_fail(t.line, t.col, "bad typing index in '" + name + "'");
        }
        typing = static_cast<Nat>(std::stoull(k));
        name = name.substr(0, at);
      }
      auto op = sig_.find_op(name);
      if (!op) parse_fail(t.line, t.col, "unknown operation '" + name + "'");
      l.kind = LeafKind::Gen;
      l.op = *op;
      l.typing = typing;
      expect(Token::Close, "')'");
    } else if (h == "split" || h == "join" || h == "unit" || h == "counit") {
      l.kind = h == "split"  ? LeafKind::Split
               : h == "join" ? LeafKind::Join
               : h == "unit" ? LeafKind::Unit
                             : LeafKind::Counit;
      l.labels = {object(next())};
      expect(Token::Close, "')'");
    } else if (h == "spider") {
      l.kind = LeafKind::Spider;
      IntArray s = parenthesized_indices();
      IntArray t = parenthesized_indices();
      l.labels = parenthesized_objects();
      expect(Token::Close, "')'");
      for (Nat v : s) {
        if (v >= l.labels.size()) parse_fail(head.line, head.col, "spider leg out of range");
      }
      for (Nat v : t) {
        if (v >= l.labels.size()) parse_fail(head.line, head.col, "spider leg out of range");
      }
      l.s = FiniteFunction::unchecked(l.labels.size(), std::move(s));
      l.t = FiniteFunction::unchecked(l.labels.size(), std::move(t));
    } else {
      parse_fail(head.line, head.col, "unknown term constructor '" + h + "'");
    }
    return term_.add_leaf(std::move(l));
  }

  const std::vector<Token>& toks_;
  Nat pos_;
  const Signature& sig_;
  Term term_;
};

}  // namespace detail

// Parses and type checks; TypeError names the offending subterm.
inline Term parse_term(std::string_view text, const Signature& sig) {
  auto toks = tokenize(text);
  detail::TermParser p(toks, 0, sig);
  Term t = p.parse();
  const Token& rest = toks[p.pos()];
  if (rest.kind != Token::End) parse_fail(rest.line, rest.col, "trailing input after term");
  infer_types(sig, t);
  return t;
}

inline std::string print_term(const Term& t, const Signature& sig) {
  std::string out;
  auto objs = [&](const IntArray& xs) {
    std::string r;
    for (Nat i = 0; i < xs.size(); ++i) r += (i ? " " : "") + sig.object_name(xs[i]);
    return r;
  };
  auto nums = [](const IntArray& xs) {
    std::string r;
    for (Nat i = 0; i < xs.size(); ++i) r += (i ? " " : "") + std::to_string(xs[i]);
    return r;
  };
  // Explicit stack: readback chains can be deeper than the call stack likes.
  std::vector<std::pair<Nat, int>> stack{{t.root(), 0}};
  while (!stack.empty()) {
    auto [n, state] = stack.back();
    stack.pop_back();
    const TermNode& node = t.node(n);
    if (node.kind != NodeKind::Leaf) {
      if (state == 0) {
        out += node.kind == NodeKind::Seq ? "(seq " : "(par ";
        stack.push_back({n, 1});
        stack.push_back({node.a, 0});
      } else if (state == 1) {
        out += " ";
        stack.push_back({n, 2});
        stack.push_back({node.b, 0});
      } else {
        out += ")";
      }
      continue;
    }
    const Leaf& l = t.leaf_of(n);
    switch (l.kind) {
      case LeafKind::Id: out += l.labels.empty() ? "(id)" : "(id " + objs(l.labels) + ")"; break;
      case LeafKind::Twist:
        out += "(twist (" + objs(l.labels) + ") (" + objs(l.labels2) + "))";
        break;
      case LeafKind::Gen:
        out += "(gen " + sig.op_name(l.op) + (l.typing ? "@" + std::to_string(l.typing) : "") + ")";
        break;
      case LeafKind::Split: out += "(split " + objs(l.labels) + ")"; break;
      case LeafKind::Join: out += "(join " + objs(l.labels) + ")"; break;
      case LeafKind::Unit: out += "(unit " + objs(l.labels) + ")"; break;
      case LeafKind::Counit: out += "(counit " + objs(l.labels) + ")"; break;
      case LeafKind::Spider:
        out += "(spider (" + nums(l.s.table()) + ") (" + nums(l.t.table()) + ") (" +
               objs(l.labels) + "))";
        break;
    }
  }
  return out;
}

// Images of source objects and ops, as read from a functor file.
struct FunctorFile {
  std::vector<IntArray> objects;
  std::vector<Term> ops;
};

inline FunctorFile parse_functor(std::string_view text, const Signature& source,
                                 const Signature& target) {
  auto toks = tokenize(text);
  std::vector<std::optional<IntArray>> objs(source.num_objects());
  std::vector<std::optional<Term>> ops(source.num_ops());
  Nat i = 0;
  while (toks[i].kind != Token::End) {
    const Token& kw = toks[i];
    const Token& name = toks[i + 1];
    if (kw.kind != Token::Atom || (kw.text != "object" && kw.text != "op")) {
      parse_fail(kw.line, kw.col, "expected 'object' or 'op'");
    }
    if (name.kind != Token::Atom) parse_fail(name.line, name.col, "expected a name");
    i += 2;
    if (kw.text == "object") {
      auto o = source.find_object(name.text);
      if (!o) parse_fail(name.line, name.col, "unknown source object '" + name.text + "'");
      if (objs[*o]) parse_fail(name.line, name.col, "object '" + name.text + "' mapped twice");
      if (toks[i].kind != Token::Atom || toks[i].text != "->") {
        parse_fail(name.line, name.col, "expected '->'");
      }
      Nat line = toks[i++].line;
      IntArray img;
      for (; toks[i].kind == Token::Atom && toks[i].line == line; ++i) {
        auto t = target.find_object(toks[i].text);
        if (!t)
          parse_fail(toks[i].line, toks[i].col, "unknown target object '" + toks[i].text + "'");
        img.push_back(*t);
      }
      objs[*o] = std::move(img);
      continue;
    }
    auto x = source.find_op(name.text);
    if (!x) parse_fail(name.line, name.col, "unknown source op '" + name.text + "'");
    if (ops[*x]) parse_fail(name.line, name.col, "op '" + name.text + "' mapped twice");
    if (toks[i].kind != Token::Atom || toks[i].text != "=")
      parse_fail(name.line, name.col, "expected '='");
    detail::TermParser p(toks, i + 1, target);
    Term t = p.parse();
    i = p.pos();
    at_position(name, [&] { return infer_types(target, t); });
    ops[*x] = std::move(t);
  }
  FunctorFile f;
  for (Nat o = 0; o < objs.size(); ++o) {
    if (!objs[o]) fail(ErrorCode::EncodingMismatch, "no image for object " + source.object_name(o));
    f.objects.push_back(std::move(*objs[o]));
  }
  for (Nat x = 0; x < ops.size(); ++x) {
    if (!ops[x]) fail(ErrorCode::EncodingMismatch, "no image for op " + source.op_name(x));
    f.ops.push_back(std::move(*ops[x]));
  }
  return f;
}

inline FunctorEncoding functor_encoding(const FunctorFile& f, const Signature& source,
                                        const Signature& target) {
  std::vector<Diagram> arrows;
  arrows.reserve(f.ops.size());
  for (const Term& t : f.ops) arrows.push_back(to_diagram_fast(target, t));
  return make_encoding(source, target, f.objects, arrows);
}

}  // namespace sdiag::io
