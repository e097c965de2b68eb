// Copyright 2026 The setsize Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SETSIZE_ERRORS_H_
#define SETSIZE_ERRORS_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace setsize {

// Elements of the universe are 1-indexed linear positions.
using Index = std::int64_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A subset spec that is malformed for the domain it is used on.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

// A well-formed spec outside the session's allowed subset family.
class FamilyViolation : public Error {
 public:
  using Error::Error;
};

// Bad parameters passed to a generator or estimator.
class InvalidParams : public Error {
 public:
  using Error::Error;
};

// Bad benchmark / CLI configuration. Raised before any trial runs.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace setsize

#endif  // SETSIZE_ERRORS_H_
