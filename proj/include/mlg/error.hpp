// Copyright 2026 The mlgdesign Authors
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

#ifndef MLG_ERROR_HPP
#define MLG_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace mlg {

enum class ErrorKind {
  DuplicateId,
  MissingNode,
  SelfLoop,
  ParallelEdge,
  InvalidValue,
  LayerOrder,
  NoRealization,
  MissingRealization,
  ProductivityMismatch,
  EmptyServerSet,
  UncoveredCommodity,
  Infeasible,
  MalformedProgram,
  SolverLimit,
  LimitsExceeded,
  InvalidInput,
  Io,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so that front-ends can
// map it onto an exit class without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mlg

#endif  // MLG_ERROR_HPP
