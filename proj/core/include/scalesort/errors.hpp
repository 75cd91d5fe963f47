// Copyright 2026 The scalesort Authors.
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

#ifndef SCALESORT_ERRORS_HPP_
#define SCALESORT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace scalesort {

// A caller violated an operation's documented precondition (n too small,
// unsupported scale shape, malformed input file, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class QueryErrorKind { kWrongSize, kDuplicateId, kUnknownId };

// Raised by the oracle when a query is malformed. The oracle state is left
// untouched.
class QueryError : public std::invalid_argument {
 public:
  QueryError(QueryErrorKind kind, const std::string& what)
      : std::invalid_argument(what), kind_(kind) {}
  QueryErrorKind kind() const { return kind_; }

 private:
  QueryErrorKind kind_;
};

// Answers that no hidden order could have produced, or an algorithm reaching
// a state its invariants rule out.
class InconsistentAnswers : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace scalesort

#endif  // SCALESORT_ERRORS_HPP_
