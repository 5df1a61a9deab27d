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

// Exhaustive reference solver for small instances.
//
// Enumerates every simple server-to-subscriber path by depth-first search
// and solves the path-flow LP in exact rational arithmetic.  Single-homing
// and channel opening are handled by enumerating every assignment and every
// channel subset.  Shares no code with the simplex or path generators.

#ifndef MLG_ORACLE_HPP
#define MLG_ORACLE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "mlg/design.hpp"

namespace mlg {

struct OracleLimits {
  std::size_t max_commodities = 3;
  std::size_t max_channels = 8;
  std::size_t max_physical_nodes = 8;
};

// Every simple path from `from` to `to` on one layer, as node-id sequences in
// lexicographic order.
std::vector<std::vector<std::string>> all_simple_paths(const MultiLayerGraph& graph,
                                                       int layer,
                                                       const std::string& from,
                                                       const std::string& to);

// Honours options.mode, options.single_homing and options.fixed_costs.
// Throws Error{LimitsExceeded} when the instance is larger than `limits`.
DesignSolution brute_force_oracle(const BuiltInstance& instance,
                                  const DesignOptions& options = {},
                                  const OracleLimits& limits = {});

}  // namespace mlg

#endif  // MLG_ORACLE_HPP
