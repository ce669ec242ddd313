/*
 * Copyright 2026 the scrollforge authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace scrollforge {

/// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FieldErrc : uint8_t {
  not_prime_power,
  q_too_small,
  q_too_large,
  mixed_fields,
  zero_inverse,
  not_extension_element,
};

class FieldError : public Error {
 public:
  FieldError(FieldErrc c, const std::string& what) : Error(what), code(c) {}
  FieldErrc code;
};

/// Bad geometric input: empty spans, mixed ambient dimensions, degenerate
/// frames, points where none expected, and the like.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// A state the underlying theorems say cannot happen.  Raised loudly: it
/// falsifies either the code or the theorem, and is never a value.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

/// An exact counting identity failed.  Carries both sides.
class TheoremViolation : public Error {
 public:
  TheoremViolation(std::string name, long long expected_, long long actual_)
      : Error("theorem violation [" + name + "]: expected " +
              std::to_string(expected_) + ", got " + std::to_string(actual_)),
        theorem(std::move(name)),
        expected(expected_),
        actual(actual_) {}

  std::string theorem;
  long long expected;
  long long actual;
};

}  // namespace scrollforge
