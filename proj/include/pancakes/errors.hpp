//
// Copyright 2026 The pancakes Authors
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
//

#ifndef PANCAKES_ERRORS_HPP
#define PANCAKES_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pancakes {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// Every weight of a log-space normalization was -inf.
class UnderflowError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

// Two intervals that must be disjoint intersect.
class OverlapError : public Error {
 public:
  using Error::Error;
};

// An internal invariant failed (root interlacing, interval layout, ...).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class UnsupportedQuery : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidParameter(message);
}

}  // namespace detail
}  // namespace pancakes

#endif  // PANCAKES_ERRORS_HPP
