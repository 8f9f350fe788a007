// Copyright 2026 The catq Authors.
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

namespace catq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes or layouts that do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// An argument violates a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A requested joint dimension exceeds the configured cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// A state does not have the structure an operation relies on, e.g. a key
// register that is not a product of Bell states.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

}  // namespace catq
