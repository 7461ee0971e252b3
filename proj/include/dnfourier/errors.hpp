// Copyright 2026 The dnfourier Authors.
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

#include <stdexcept>
#include <string>

namespace dnfourier {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A size limit (variable cap, decision-tree cap, enumeration cap) was exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// Operands disagree on the number of variables.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Malformed text or JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// The decoder was handed something that no encoding run produced.
class DecodeError : public Error {
 public:
  using Error::Error;
};

// An internal correctness assertion fired. Never expected in practice; a
// throw means the implementation (or the math it encodes) is wrong.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace dnfourier
