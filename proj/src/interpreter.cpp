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

#include "mlg/interpreter.hpp"

#include <algorithm>
#include <cmath>

#include "mlg/error.hpp"

namespace mlg {

std::string edge_label(const MultiLayerGraph& graph, const EdgeRef& edge) {
  if (edge.kind == EdgeKind::Intra) {
    return "L" + std::to_string(edge.layer) + ":" + graph.intra_edge(edge).name;
  }
  const InterEdge& e = graph.inter_edge(edge);
  return to_string(e.upper) + "~" + to_string(e.lower);
}

std::vector<std::string> extract_topology(const DesignSolution& solution,
                                          double eps) {
  std::vector<std::string> out;
  for (const auto& [id, flow] : solution.channel_flows) {
    if (flow > eps) out.push_back(id);
  }
  return out;
}

std::map<std::string, std::vector<ServedVolume>> extract_assignment(
    const DesignSolution& solution, double eps) {
  std::map<std::string, std::map<std::string, double>> served;
  for (const auto& s : solution.server_ids) served[s];
  for (const auto& [commodity, flow] : solution.flows.commodities()) {
    for (const auto& [arc, value] : flow.arcs) {
      const auto& [from, to] = arc;
      if (from.layer == kServiceLayer && to.layer == kOverlayLayer &&
          served.contains(to.id) && value > eps) {
        served[to.id][commodity] += value;
      }
    }
  }
  std::map<std::string, std::vector<ServedVolume>> out;
  for (const auto& [server, volumes] : served) {
    auto& list = out[server];
    for (const auto& [subscriber, volume] : volumes) list.push_back({subscriber, volume});
  }
  return out;
}

ProjectReport render_failure(const DesignSolution& solution) {
  ProjectReport report;
  report.status = std::string(to_string(solution.status));
  report.objective = 0.0;
  report.validation.ok = false;
  if (solution.certificate) {
    for (const auto& g : solution.certificate->groups) {
      report.certificate.push_back(solution.certificate->phase + ":" + g);
    }
    for (const auto& r : solution.certificate->rows) report.certificate.push_back(r);
  }
  return report;
}

ProjectReport render_report(const DesignSolution& solution,
                            const BuiltInstance& instance) {
  if (!solution.optimal()) {
    throw Error(ErrorKind::Infeasible,
                "no design to report: solver status " +
                    std::string(to_string(solution.status)));
  }
  ProjectReport report;
  report.status = "optimal";
  report.objective = solution.objective;

  for (const auto& id : extract_topology(solution, kTrafficEps)) {
    ChannelUse use;
    use.id = id;
    use.flow = solution.channel_flows.at(id);
    use.capacity = instance.channel(id).capacity;
    use.utilization = use.flow / use.capacity;
    report.channels.push_back(use);
  }

  for (const auto& [server, served] : extract_assignment(solution)) {
    ServerAssignment a;
    a.server = server;
    a.served = served;
    for (const auto& v : served) a.load += v.volume;
    a.productivity = instance.server_productivity(server);
    a.residual = a.productivity - a.load;
    report.assignments.push_back(std::move(a));
  }
  report.routes = solution.routes;
  for (const auto& [edge, flow] : solution.edge_flows) {
    report.per_edge_flow[edge_label(instance.graph, edge)] = flow;
  }

  auto& v = report.validation;
  const auto conservation =
      check_conservation(instance.graph, solution.flows, instance.commodities);
  const auto capacity = check_capacities(instance.graph, solution.edge_flows);
  v.conservation_ok = conservation.ok;
  v.capacity_ok = capacity.ok;
  for (const auto& c : conservation.violations) {
    v.messages.push_back("conservation " + c.commodity + " at " + to_string(c.node));
  }
  for (const auto& c : capacity.violations) {
    v.messages.push_back("capacity " + edge_label(instance.graph, c.edge));
  }
  for (const auto& a : report.assignments) {
    if (a.load > a.productivity + kFeasibilityTol) {
      v.productivity_ok = false;
      v.messages.push_back("productivity " + a.server);
    }
  }
  for (const auto& c : instance.commodities) {
    double served = 0.0;
    for (const auto& a : report.assignments) {
      for (const auto& s : a.served) {
        if (s.subscriber == c.id) served += s.volume;
      }
    }
    if (std::abs(served - c.demand) > kFeasibilityTol) {
      v.conservation_ok = false;
      v.messages.push_back("assignment " + c.id);
    }
  }
  v.ok = v.conservation_ok && v.capacity_ok && v.productivity_ok;
  return report;
}

}  // namespace mlg
