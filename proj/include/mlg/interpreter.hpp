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

// Turns an optimal sub-graph back into design terms: which channels to
// build, which server feeds which subscriber, and along which routes.

#ifndef MLG_INTERPRETER_HPP
#define MLG_INTERPRETER_HPP

#include <map>
#include <string>
#include <vector>

#include "mlg/design.hpp"

namespace mlg {

struct ChannelUse {
  std::string id;
  double flow = 0.0;
  double capacity = 0.0;
  double utilization = 0.0;

  bool operator==(const ChannelUse&) const = default;
};

struct ServerAssignment {
  std::string server;
  std::vector<ServedVolume> served;
  double load = 0.0;
  double productivity = 0.0;
  double residual = 0.0;

  bool operator==(const ServerAssignment&) const = default;
};

struct ValidationSummary {
  bool ok = true;
  bool conservation_ok = true;
  bool capacity_ok = true;
  bool productivity_ok = true;
  std::vector<std::string> messages;

  bool operator==(const ValidationSummary&) const = default;
};

struct ProjectReport {
  std::string status;
  double objective = 0.0;
  std::vector<ChannelUse> channels;          // channels carrying traffic, sorted by id
  std::vector<ServerAssignment> assignments;  // sorted by server id
  std::vector<Route> routes;
  std::map<std::string, double> per_edge_flow;  // edge label -> flow
  ValidationSummary validation;
  std::vector<std::string> certificate;      // infeasible runs only

  bool operator==(const ProjectReport&) const = default;
};

// Channels whose total flow exceeds eps, sorted by id.
std::vector<std::string> extract_topology(const DesignSolution& solution,
                                          double eps = kTrafficEps);

// Server -> (subscriber, volume) read off the service-to-server arcs.
// Every server appears, possibly with an empty list.
std::map<std::string, std::vector<ServedVolume>> extract_assignment(
    const DesignSolution& solution, double eps = kTrafficEps);

// Throws Error{Infeasible} when the solution is not optimal.
ProjectReport render_report(const DesignSolution& solution,
                            const BuiltInstance& instance);

// Report for a run that found no feasible design.
ProjectReport render_failure(const DesignSolution& solution);

// Stable text label of an edge, e.g. "L1:b3" or "v0@3~s1@2".
std::string edge_label(const MultiLayerGraph& graph, const EdgeRef& edge);

}  // namespace mlg

#endif  // MLG_INTERPRETER_HPP
