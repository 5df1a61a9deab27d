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

#include "mlg/flow.hpp"

#include <cmath>
#include <set>

#include "mlg/error.hpp"

namespace mlg {

void FlowAssignment::add_path(const std::string& commodity,
                              std::vector<NodeRef> nodes, double flow) {
  if (!(flow >= 0.0)) {
    throw Error(ErrorKind::InvalidValue, "path flow must be non-negative");
  }
  CommodityFlow& target = flows_[commodity];
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    target.arcs[{nodes[i], nodes[i + 1]}] += flow;
  }
  target.paths.push_back({std::move(nodes), flow});
}

void FlowAssignment::set_arc(const std::string& commodity, const NodeRef& from,
                             const NodeRef& to, double flow) {
  if (!(flow >= 0.0)) {
    throw Error(ErrorKind::InvalidValue, "arc flow must be non-negative");
  }
  flows_[commodity].arcs[{from, to}] = flow;
}

namespace {

std::optional<EdgeRef> edge_for_arc(const MultiLayerGraph& graph,
                                    const Arc& arc) {
  const auto& [from, to] = arc;
  if (from.layer == to.layer) return graph.find_intra_edge(from.layer, from.id, to.id);
  return graph.find_inter_edge(from, to);
}

}  // namespace

EdgeFlows FlowAssignment::edge_totals(const MultiLayerGraph& graph) const {
  EdgeFlows totals;
  for (const auto& [id, flow] : flows_) {
    for (const auto& [arc, value] : flow.arcs) {
      auto edge = edge_for_arc(graph, arc);
      if (!edge) {
        throw Error(ErrorKind::MissingNode, "arc " + to_string(arc.first) +
                                                "->" + to_string(arc.second) +
                                                " has no edge");
      }
      totals[*edge] += value;
    }
  }
  return totals;
}

std::map<std::string, double> aggregate_service_flows(
    std::span<const Session> sessions) {
  std::map<std::string, double> totals;
  for (const auto& s : sessions) {
    if (!(s.volume >= 0.0)) {
      throw Error(ErrorKind::InvalidValue,
                  "session volume for '" + s.subscriber + "' is negative");
    }
    totals[s.subscriber] += s.volume;
  }
  return totals;
}

ProductivityReport check_productivity_projection(
    std::span<const double> server_productivities, double service_productivity,
    double tol, ProductivityRule rule) {
  ProductivityReport report;
  for (double p : server_productivities) report.servers_total += p;
  report.service = service_productivity;
  report.deficit = service_productivity - report.servers_total;
  report.ok = rule == ProductivityRule::Equal ? std::abs(report.deficit) <= tol
                                              : report.deficit <= tol;
  return report;
}

ConservationReport check_conservation(const MultiLayerGraph& graph,
                                      const FlowAssignment& flows,
                                      std::span<const Commodity> commodities,
                                      double tol) {
  ConservationReport report;
  const auto& all = flows.commodities();
  for (const auto& commodity : commodities) {
    std::map<NodeRef, double> net_out;
    net_out[commodity.source];
    net_out[commodity.sink];
    if (auto it = all.find(commodity.id); it != all.end()) {
      for (const auto& [arc, value] : it->second.arcs) {
        if (!edge_for_arc(graph, arc)) {
          report.unknown_arcs.push_back(commodity.id + ":" +
                                        to_string(arc.first) + "->" +
                                        to_string(arc.second));
        }
        net_out[arc.first] += value;
        net_out[arc.second] -= value;
      }
    }
    for (const auto& [node, net] : net_out) {
      double expected = 0.0;
      if (node == commodity.source) expected += commodity.demand;
      if (node == commodity.sink) expected -= commodity.demand;
      const double residual = expected - net;
      if (std::abs(residual) > tol) {
        report.violations.push_back({commodity.id, node, residual});
      }
    }
  }
  report.ok = report.violations.empty() && report.unknown_arcs.empty();
  return report;
}

CapacityReport check_capacities(const MultiLayerGraph& graph,
                                const EdgeFlows& flows, double tol) {
  CapacityReport report;
  for (const auto& [edge, flow] : flows) {
    const double capacity = graph.capacity(edge);
    if (std::isinf(capacity)) continue;
    if (flow > capacity + tol) {
      report.violations.push_back({edge, flow, capacity, flow - capacity});
    }
  }
  report.ok = report.violations.empty();
  return report;
}

EdgeFlows project_flows_down(
    const MultiLayerGraph& graph, const EdgeFlows& upper_flows,
    const std::map<EdgeRef, RealizationPath>& realizations) {
  EdgeFlows increment;
  for (const auto& [edge, flow] : upper_flows) {
    if (flow == 0.0) continue;
    auto it = realizations.find(edge);
    if (it == realizations.end()) {
      throw Error(ErrorKind::MissingRealization,
                  "edge " + describe_edge(graph, edge) +
                      " carries flow but has no realization");
    }
    const RealizationPath& path = it->second;
    const auto& seq = path.sequence;
    auto entry = graph.find_inter_edge(seq.front(), seq[1]);
    auto exit = graph.find_inter_edge(seq[seq.size() - 2], seq.back());
    if (!entry || !exit) {
      throw Error(ErrorKind::MissingRealization,
                  "realization of " + describe_edge(graph, edge) +
                      " does not start and end on inter-edges");
    }
    increment[*entry] += flow;
    for (const auto& hop : path.hop_edges) increment[hop] += flow;
    increment[*exit] += flow;
  }
  return increment;
}

void annotate_flows(MultiLayerGraph& graph, const EdgeFlows& flows) {
  graph.clear_flows();
  for (const auto& [edge, flow] : flows) {
    if (edge.kind == EdgeKind::Intra) {
      graph.intra_edge(edge).flow = flow;
    } else {
      graph.inter_edge(edge).flow = flow;
    }
  }
}

}  // namespace mlg
