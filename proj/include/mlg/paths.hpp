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

#ifndef MLG_PATHS_HPP
#define MLG_PATHS_HPP

#include <cstddef>
#include <map>
#include <tuple>
#include <string>
#include <vector>

#include "mlg/graph.hpp"
#include "mlg/problem.hpp"

namespace mlg {

struct CandidatePath {
  std::string server;
  std::vector<std::string> nodes;  // layer-1 ids, server first
  std::vector<EdgeRef> edges;
  double cost = 0.0;

  auto key() const { return std::tie(cost, nodes); }
};

// commodity id -> candidates ordered by (cost, node sequence)
using CandidatePathSet = std::map<std::string, std::vector<CandidatePath>>;

// Up to k loop-free paths on one layer in (cost, node sequence) order, by
// Yen's deviation scheme.  Edge cost is the intra-edge cost.
std::vector<CandidatePath> k_shortest_paths(const MultiLayerGraph& graph,
                                            int layer, const std::string& from,
                                            const std::string& to,
                                            std::size_t k);

// Up to k paths from every server to the commodity's access node.
std::vector<CandidatePath> enumerate_candidate_paths(
    const BuiltInstance& instance, const Commodity& commodity, std::size_t k);

CandidatePathSet enumerate_candidate_paths(const BuiltInstance& instance,
                                           std::size_t k);

}  // namespace mlg

#endif  // MLG_PATHS_HPP
