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

#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sdiag {

enum class ErrorCode {
  KeyOutOfRange,
  VertexOutOfRange,
  LengthMismatch,
  ValueOutOfRange,
  TypeMismatch,
  TargetMismatch,
  NotAFiber,
  NotSurjective,
  KeyNotMono,
  ShapeMismatch,
  IndexOutOfRange,
  SignatureMismatch,
  LabelClash,
  DuplicatePort,
  MissingPort,
  LabelMismatch,
  NoMatchingTyping,
  TypingMismatch,
  NotWellFormed,
  NotMonogamousAcyclic,
  TypeError,
  NotLabelPreserving,
  NotATensoring,
  EncodingMismatch,
  SFFInvariant,
  MissingOpticSpec,
  NotAdaptable,
  ArityMismatch,
  UnsupportedGenerator,
  ParseError,
  DuplicateName,
  UnknownObject,
  SchemaError,
};

inline std::string_view error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::KeyOutOfRange: return "KeyOutOfRange";
    case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ValueOutOfRange: return "ValueOutOfRange";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::TargetMismatch: return "TargetMismatch";
    case ErrorCode::NotAFiber: return "NotAFiber";
    case ErrorCode::NotSurjective: return "NotSurjective";
    case ErrorCode::KeyNotMono: return "KeyNotMono";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SignatureMismatch: return "SignatureMismatch";
    case ErrorCode::LabelClash: return "LabelClash";
    case ErrorCode::DuplicatePort: return "DuplicatePort";
    case ErrorCode::MissingPort: return "MissingPort";
    case ErrorCode::LabelMismatch: return "LabelMismatch";
    case ErrorCode::NoMatchingTyping: return "NoMatchingTyping";
    case ErrorCode::TypingMismatch: return "TypingMismatch";
    case ErrorCode::NotWellFormed: return "NotWellFormed";
    case ErrorCode::NotMonogamousAcyclic: return "NotMonogamousAcyclic";
    case ErrorCode::TypeError: return "TypeError";
    case ErrorCode::NotLabelPreserving: return "NotLabelPreserving";
    case ErrorCode::NotATensoring: return "NotATensoring";
    case ErrorCode::EncodingMismatch: return "EncodingMismatch";
    case ErrorCode::SFFInvariant: return "SFFInvariant";
    case ErrorCode::MissingOpticSpec: return "MissingOpticSpec";
    case ErrorCode::NotAdaptable: return "NotAdaptable";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::UnsupportedGenerator: return "UnsupportedGenerator";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::UnknownObject: return "UnknownObject";
    case ErrorCode::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

inline std::ostream& operator<<(std::ostream& os, ErrorCode c) { return os << error_name(c); }

// what() is "<Code>: <detail>" so callers can print it verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) {
  throw Error(code, detail);
}

}  // namespace sdiag
