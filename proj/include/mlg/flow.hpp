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

// Flow model over a multi-layer graph.  Commodity flows are kept path-wise
// with per-commodity directed arc totals; undirected edges accumulate the
// magnitude of both directions.

#ifndef MLG_FLOW_HPP
#define MLG_FLOW_HPP

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mlg/graph.hpp"

namespace mlg {

inline constexpr double kFeasibilityTol = 1e-6;
inline constexpr double kProjectionTol = 1e-9;

struct Session {
  std::string subscriber;
  double volume = 0.0;
};

struct Commodity {
  std::string id;
  NodeRef source;
  NodeRef sink;
  double demand = 0.0;
};

using EdgeFlows = std::map<EdgeRef, double>;
using Arc = std::pair<NodeRef, NodeRef>;

struct PathFlow {
  std::vector<NodeRef> nodes;
  double flow = 0.0;
};

struct CommodityFlow {
  std::vector<PathFlow> paths;
  std::map<Arc, double> arcs;
};

class FlowAssignment {
 public:
  // Records a path and adds its flow to every arc along it.
  void add_path(const std::string& commodity, std::vector<NodeRef> nodes,
                double flow);
  // Overwrites one arc total (used for hand-built or perturbed assignments).
  void set_arc(const std::string& commodity, const NodeRef& from,
               const NodeRef& to, double flow);

  const std::map<std::string, CommodityFlow>& commodities() const {
    return flows_;
  }

  // Per-edge totals; throws Error{MissingNode} for an arc with no edge.
  EdgeFlows edge_totals(const MultiLayerGraph& graph) const;

 private:
  std::map<std::string, CommodityFlow> flows_;
};

// Subscriber -> total session volume.
std::map<std::string, double> aggregate_service_flows(
    std::span<const Session> sessions);

enum class ProductivityRule { Equal, AtLeast };

struct ProductivityReport {
  bool ok = true;
  double servers_total = 0.0;
  double service = 0.0;
  // service minus the server total; positive when servers fall short
  double deficit = 0.0;
};

ProductivityReport check_productivity_projection(
    std::span<const double> server_productivities, double service_productivity,
    double tol, ProductivityRule rule = ProductivityRule::Equal);

struct ConservationViolation {
  std::string commodity;
  NodeRef node;
  // expected net outflow minus actual net outflow
  double residual = 0.0;
};

struct ConservationReport {
  bool ok = true;
  std::vector<ConservationViolation> violations;
  std::vector<std::string> unknown_arcs;
};

ConservationReport check_conservation(const MultiLayerGraph& graph,
                                      const FlowAssignment& flows,
                                      std::span<const Commodity> commodities,
                                      double tol = kFeasibilityTol);

struct CapacityViolation {
  EdgeRef edge;
  double flow = 0.0;
  double capacity = 0.0;
  double excess = 0.0;
};

struct CapacityReport {
  bool ok = true;
  std::vector<CapacityViolation> violations;
};

CapacityReport check_capacities(const MultiLayerGraph& graph,
                                const EdgeFlows& flows,
                                double tol = kFeasibilityTol);

// Pushes the flow of each upper edge onto the hop edges and both inter-edges
// of its realization.  Returns the increment only.
EdgeFlows project_flows_down(
    const MultiLayerGraph& graph, const EdgeFlows& upper_flows,
    const std::map<EdgeRef, RealizationPath>& realizations);

void annotate_flows(MultiLayerGraph& graph, const EdgeFlows& flows);

}  // namespace mlg

#endif  // MLG_FLOW_HPP
