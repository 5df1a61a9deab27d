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

#include "mlg/design.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "mlg/error.hpp"
#include "mlg/interpreter.hpp"

namespace mlg {

std::string_view to_string(Formulation formulation) {
  return formulation == Formulation::NodeLink ? "node-link" : "link-path";
}

std::string_view to_string(DesignMode mode) {
  return mode == DesignMode::Capacitated ? "capacitated" : "uncapacitated";
}

namespace {

using Terms = std::vector<std::pair<std::size_t, double>>;

std::string tag(std::initializer_list<std::string> parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ",";
    out += p;
  }
  return "[" + out + "]";
}

double total_demand(const BuiltInstance& instance) {
  double total = 0.0;
  for (const auto& c : instance.commodities) total += c.demand;
  return total;
}

// Channel ids in id order with their layer-1 edges.
std::vector<std::pair<std::string, EdgeRef>> sorted_channels(
    const BuiltInstance& instance) {
  return {instance.channel_edges.begin(), instance.channel_edges.end()};
}

// Columns and rows shared by both formulations: channel-open flags, channel
// capacity (or coupling) rows, server productivity rows and single-homing
// assignment rows.
struct SharedRows {
  std::map<std::string, Terms> channel;        // channel id -> flow terms
  std::vector<Terms> server;                   // per server
  std::vector<std::vector<Terms>> per_server;  // [commodity][server] flow terms
};

void add_assignment_columns(const BuiltInstance& instance,
                            const DesignOptions& options,
                            FormulatedProgram& fp) {
  if (!options.single_homing) return;
  for (std::size_t k = 0; k < instance.commodities.size(); ++k) {
    std::vector<std::size_t> cols;
    for (const auto& s : instance.server_ids) {
      const std::size_t col = fp.lp.add_variable(
          "y" + tag({instance.commodities[k].id, s}), 0.0, 1.0, true);
      ColumnInfo info;
      info.kind = ColumnInfo::Kind::Assignment;
      info.commodity = k;
      info.server = s;
      fp.columns.push_back(info);
      cols.push_back(col);
    }
    fp.assignment_columns.push_back(std::move(cols));
  }
}

void add_open_columns(const BuiltInstance& instance,
                      const DesignOptions& options, FormulatedProgram& fp) {
  if (options.mode != DesignMode::Uncapacitated) return;
  for (const auto& [id, edge] : sorted_channels(instance)) {
    double fixed = 0.0;
    if (auto it = options.fixed_costs.find(id); it != options.fixed_costs.end()) {
      fixed = it->second;
    }
    if (!(std::isfinite(fixed) && fixed >= 0.0)) {
      throw Error(ErrorKind::InvalidInput,
                  "fixed cost of channel '" + id + "' must be non-negative");
    }
    fp.open_columns.push_back(fp.lp.add_variable("open" + tag({id}), fixed, 1.0, true));
    ColumnInfo info;
    info.kind = ColumnInfo::Kind::ChannelOpen;
    info.channel = id;
    fp.columns.push_back(info);
  }
}

void add_shared_rows(const BuiltInstance& instance, const DesignOptions& options,
                     const SharedRows& shared, FormulatedProgram& fp) {
  auto& lp = fp.lp;
  const double big_m = total_demand(instance);
  std::size_t open_index = 0;
  for (const auto& [id, edge] : sorted_channels(instance)) {
    Terms terms = shared.channel.count(id) ? shared.channel.at(id) : Terms{};
    const double capacity = instance.graph.intra_edge(edge).capacity;
    if (terms.empty()) {
      if (options.mode == DesignMode::Uncapacitated) ++open_index;
      continue;
    }
    lp.add_constraint("capacity" + tag({id}), "capacity", terms, Relation::LessEqual,
                      capacity);
    if (options.mode == DesignMode::Uncapacitated) {
      // flow only on opened channels; no channel carries more than the total demand
      terms.emplace_back(fp.open_columns[open_index++], -big_m);
      lp.add_constraint("open" + tag({id}), "coupling", std::move(terms),
                        Relation::LessEqual, 0.0);
    }
  }
  for (std::size_t s = 0; s < instance.server_ids.size(); ++s) {
    if (shared.server[s].empty()) continue;
    const std::string& id = instance.server_ids[s];
    lp.add_constraint("productivity" + tag({id}), "productivity", shared.server[s],
                      Relation::LessEqual, instance.server_capacity(id));
  }
  if (!options.single_homing) return;
  for (std::size_t k = 0; k < instance.commodities.size(); ++k) {
    const auto& commodity = instance.commodities[k];
    Terms pick;
    for (std::size_t s = 0; s < instance.server_ids.size(); ++s) {
      const std::size_t y = fp.assignment_columns[k][s];
      pick.emplace_back(y, 1.0);
      Terms couple = shared.per_server[k][s];
      couple.emplace_back(y, -commodity.demand);
      lp.add_constraint("single" + tag({commodity.id, instance.server_ids[s]}),
                        "assignment", std::move(couple), Relation::LessEqual, 0.0);
    }
    lp.add_constraint("assign" + tag({commodity.id}), "assignment", std::move(pick),
                      Relation::Equal, 1.0);
  }
}

}  // namespace

std::vector<std::vector<std::pair<std::size_t, double>>> FormulatedProgram::tie_forms() const {
  std::vector<Terms> forms;
  for (const auto& cols : assignment_columns) {
    Terms form;
    for (std::size_t s = 1; s < cols.size(); ++s) form.emplace_back(cols[s], static_cast<double>(s));
    if (!form.empty()) forms.push_back(std::move(form));
  }
  for (std::size_t col : open_columns) forms.push_back({{col, 1.0}});
  return forms;
}

FormulatedProgram formulate_node_link(const BuiltInstance& instance,
                                      const DesignOptions& options) {
  FormulatedProgram fp;
  auto& lp = fp.lp;
  const auto& graph = instance.graph;
  const auto channels = sorted_channels(instance);
  const auto physical_nodes = graph.nodes(kPhysicalLayer);
  const std::size_t servers = instance.server_ids.size();

  add_assignment_columns(instance, options, fp);
  add_open_columns(instance, options, fp);

  SharedRows shared;
  shared.server.resize(servers);
  for (std::size_t k = 0; k < instance.commodities.size(); ++k) {
    const Commodity& commodity = instance.commodities[k];
    const std::string& subscriber = instance.image_subscriber.at(commodity.sink.id);
    std::map<std::string, Terms> balance;  // layer-1 node -> inflow - outflow
    Terms demand;
    shared.per_server.emplace_back(servers);

    for (std::size_t s = 0; s < servers; ++s) {
      const std::string& server = instance.server_ids[s];
      const std::size_t col = lp.add_variable("inject" + tag({commodity.id, server}), 0.0);
      ColumnInfo info;
      info.kind = ColumnInfo::Kind::Injection;
      info.commodity = k;
      info.server = server;
      fp.columns.push_back(info);
      demand.emplace_back(col, 1.0);
      balance[server].emplace_back(col, 1.0);
      shared.server[s].emplace_back(col, 1.0);
      shared.per_server.back()[s].emplace_back(col, 1.0);
    }
    for (const auto& [id, edge] : channels) {
      const IntraEdge& e = graph.intra_edge(edge);
      for (const auto& [from, to] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
        const std::size_t col =
            lp.add_variable("arc" + tag({commodity.id, id, from, to}), e.cost);
        ColumnInfo info;
        info.kind = ColumnInfo::Kind::ChannelArc;
        info.commodity = k;
        info.channel = id;
        info.from = from;
        info.to = to;
        fp.columns.push_back(info);
        balance[from].emplace_back(col, -1.0);
        balance[to].emplace_back(col, 1.0);
        shared.channel[id].emplace_back(col, 1.0);
      }
    }
    const std::size_t access = lp.add_variable("access" + tag({commodity.id}), 0.0);
    ColumnInfo info;
    info.kind = ColumnInfo::Kind::Access;
    info.commodity = k;
    fp.columns.push_back(info);
    balance[subscriber].emplace_back(access, -1.0);

    lp.add_constraint("demand" + tag({commodity.id}), "demand", std::move(demand),
                      Relation::Equal, commodity.demand);
    // The sink balance is implied by the others and left out.
    for (const auto& node : physical_nodes) {
      auto it = balance.find(node);
      if (it == balance.end()) continue;
      lp.add_constraint("balance" + tag({commodity.id, node}), "conservation",
                        std::move(it->second), Relation::Equal, 0.0);
    }
  }
  add_shared_rows(instance, options, shared, fp);
  return fp;
}

FormulatedProgram formulate_link_path(const BuiltInstance& instance,
                                      const CandidatePathSet& paths,
                                      const DesignOptions& options) {
  FormulatedProgram fp;
  fp.paths = paths;
  auto& lp = fp.lp;
  const std::size_t servers = instance.server_ids.size();
  std::map<std::string, std::size_t> server_index;
  for (std::size_t s = 0; s < servers; ++s) server_index[instance.server_ids[s]] = s;

  add_assignment_columns(instance, options, fp);
  add_open_columns(instance, options, fp);

  SharedRows shared;
  shared.server.resize(servers);
  for (std::size_t k = 0; k < instance.commodities.size(); ++k) {
    const Commodity& commodity = instance.commodities[k];
    auto it = paths.find(commodity.id);
    if (it == paths.end() || it->second.empty()) {
      throw Error(ErrorKind::UncoveredCommodity,
                  "commodity '" + commodity.id + "' has no candidate path");
    }
    shared.per_server.emplace_back(servers);
    Terms demand;
    for (std::size_t p = 0; p < it->second.size(); ++p) {
      const CandidatePath& path = it->second[p];
      const std::size_t col =
          lp.add_variable("path" + tag({commodity.id, std::to_string(p)}), path.cost);
      ColumnInfo info;
      info.kind = ColumnInfo::Kind::PathFlow;
      info.commodity = k;
      info.server = path.server;
      info.path = p;
      fp.columns.push_back(info);
      demand.emplace_back(col, 1.0);
      for (const auto& edge : path.edges) {
        shared.channel[instance.graph.intra_edge(edge).name].emplace_back(col, 1.0);
      }
      const std::size_t s = server_index.at(path.server);
      shared.server[s].emplace_back(col, 1.0);
      shared.per_server.back()[s].emplace_back(col, 1.0);
    }
    lp.add_constraint("demand" + tag({commodity.id}), "demand", std::move(demand),
                      Relation::Equal, commodity.demand);
  }
  add_shared_rows(instance, options, shared, fp);
  return fp;
}

namespace {

// Splits one commodity's arc flows into source-to-sink paths, cancelling any
// circulation met on the way.
std::vector<std::pair<std::vector<NodeRef>, double>> decompose(
    std::map<Arc, double> arcs, const NodeRef& source, const NodeRef& sink) {
  std::map<NodeRef, std::vector<NodeRef>> out;
  for (const auto& [arc, value] : arcs) out[arc.first].push_back(arc.second);
  auto next_hop = [&](const NodeRef& node) -> std::optional<NodeRef> {
    auto it = out.find(node);
    if (it == out.end()) return std::nullopt;
    for (const auto& to : it->second) {
      if (arcs[{node, to}] > kTrafficEps) return to;
    }
    return std::nullopt;
  };

  std::vector<std::pair<std::vector<NodeRef>, double>> paths;
  while (next_hop(source)) {
    std::vector<NodeRef> walk{source};
    std::map<NodeRef, std::size_t> position{{source, 0}};
    bool restarted = false;
    while (walk.back() != sink) {
      auto next = next_hop(walk.back());
      if (!next) break;  // flow not conserved; stop at what we have
      if (auto seen = position.find(*next); seen != position.end()) {
        double cycle = std::numeric_limits<double>::infinity();
        std::vector<NodeRef> loop(walk.begin() + static_cast<std::ptrdiff_t>(seen->second), walk.end());
        loop.push_back(*next);
        for (std::size_t i = 0; i + 1 < loop.size(); ++i) {
          cycle = std::min(cycle, arcs[{loop[i], loop[i + 1]}]);
        }
        for (std::size_t i = 0; i + 1 < loop.size(); ++i) arcs[{loop[i], loop[i + 1]}] -= cycle;
        restarted = true;
        break;
      }
      position.emplace(*next, walk.size());
      walk.push_back(*next);
    }
    if (restarted) continue;
    if (walk.back() != sink) break;
    double flow = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
      flow = std::min(flow, arcs[{walk[i], walk[i + 1]}]);
    }
    for (std::size_t i = 0; i + 1 < walk.size(); ++i) arcs[{walk[i], walk[i + 1]}] -= flow;
    paths.emplace_back(std::move(walk), flow);
  }
  return paths;
}

std::vector<Route> node_link_routes(const BuiltInstance& instance,
                                    const FormulatedProgram& fp,
                                    const std::vector<double>& x) {
  std::vector<std::map<Arc, double>> arcs(instance.commodities.size());
  for (std::size_t j = 0; j < fp.columns.size(); ++j) {
    const ColumnInfo& info = fp.columns[j];
    if (x[j] <= 0.0) continue;
    const Commodity& c = instance.commodities[info.commodity];
    const std::string& subscriber = instance.image_subscriber.at(c.sink.id);
    switch (info.kind) {
      case ColumnInfo::Kind::Injection:
        arcs[info.commodity][{c.source, {kPhysicalLayer, info.server}}] += x[j];
        break;
      case ColumnInfo::Kind::ChannelArc:
        arcs[info.commodity][{{kPhysicalLayer, info.from}, {kPhysicalLayer, info.to}}] += x[j];
        break;
      case ColumnInfo::Kind::Access:
        arcs[info.commodity][{{kPhysicalLayer, subscriber}, c.sink}] += x[j];
        break;
      default:
        break;
    }
  }
  std::vector<Route> routes;
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    const Commodity& c = instance.commodities[k];
    for (auto& [walk, flow] : decompose(arcs[k], c.source, c.sink)) {
      Route route;
      route.commodity = c.id;
      route.server = walk[1].id;
      for (std::size_t i = 1; i + 1 < walk.size(); ++i) route.nodes.push_back(walk[i].id);
      route.flow = flow;
      routes.push_back(std::move(route));
    }
  }
  return routes;
}

std::vector<Route> link_path_routes(const BuiltInstance& instance,
                                    const FormulatedProgram& fp,
                                    const std::vector<double>& x) {
  std::vector<Route> routes;
  for (std::size_t j = 0; j < fp.columns.size(); ++j) {
    const ColumnInfo& info = fp.columns[j];
    if (info.kind != ColumnInfo::Kind::PathFlow || x[j] <= kTrafficEps) continue;
    const Commodity& c = instance.commodities[info.commodity];
    const CandidatePath& path = fp.paths.at(c.id)[info.path];
    routes.push_back(Route{c.id, path.server, path.nodes, x[j]});
  }
  return routes;
}

DesignSolution solve_formulated(const BuiltInstance& instance,
                                const FormulatedProgram& fp,
                                const DesignOptions& options) {
  LpSolution lp;
  const bool integral = fp.lp.has_integer_variables();
  if (integral) {
    BranchAndBoundOptions bnb;
    bnb.simplex = options.simplex;
    bnb.int_tol = options.int_tol;
    bnb.tie_forms = fp.tie_forms();
    lp = branch_and_bound(fp.lp, bnb);
  } else {
    lp = simplex_solve(fp.lp, options.simplex);
  }

  if (lp.status != LpStatus::Optimal) {
    DesignSolution out;
    out.status = lp.status;
    out.integral = integral;
    out.server_ids = instance.server_ids;
    out.iterations = lp.iterations;
    out.nodes = lp.nodes;
    out.branches = lp.branches;
    if (lp.status == LpStatus::Infeasible) {
      InfeasibilityCertificate cert;
      cert.phase = lp.certificate_rows.empty() && integral ? "branch-and-bound" : "phase-1";
      std::set<std::string> groups;
      for (std::size_t row : lp.certificate_rows) {
        const auto& c = fp.lp.constraints()[row];
        groups.insert(c.group);
        cert.rows.push_back(c.name);
      }
      cert.groups.assign(groups.begin(), groups.end());
      out.certificate = std::move(cert);
    }
    return out;
  }

  const auto routes = options.formulation == Formulation::NodeLink
                          ? node_link_routes(instance, fp, lp.values)
                          : link_path_routes(instance, fp, lp.values);
  DesignSolution out = assemble_solution(instance, routes, lp.objective);
  out.integral = integral;
  out.relaxation_objective = integral ? lp.relaxation_objective : lp.objective;
  out.iterations = lp.iterations;
  out.nodes = lp.nodes;
  out.branches = lp.branches;
  if (options.mode == DesignMode::Uncapacitated) {
    out.selected_channels.clear();
    for (std::size_t col : fp.open_columns) {
      if (lp.values[col] > 0.5) out.selected_channels.push_back(fp.columns[col].channel);
    }
  }
  return out;
}

FormulatedProgram formulate(const BuiltInstance& instance,
                            const DesignOptions& options) {
  if (options.formulation == Formulation::NodeLink) {
    return formulate_node_link(instance, options);
  }
  return formulate_link_path(instance, enumerate_candidate_paths(instance, options.k),
                             options);
}

}  // namespace

DesignSolution assemble_solution(const BuiltInstance& instance,
                                 const std::vector<Route>& routes,
                                 double objective) {
  DesignSolution out;
  out.status = LpStatus::Optimal;
  out.objective = objective;
  out.server_ids = instance.server_ids;

  std::map<std::tuple<std::string, std::string, std::vector<std::string>>, double> merged;
  for (const auto& r : routes) {
    if (r.flow > 0.0) merged[{r.commodity, r.server, r.nodes}] += r.flow;
  }
  std::map<std::string, const Commodity*> commodity;
  for (const auto& c : instance.commodities) commodity[c.id] = &c;

  const auto& graph = instance.graph;
  EdgeFlows overlay;
  for (const auto& [key, flow] : merged) {
    const auto& [id, server, nodes] = key;
    out.routes.push_back(Route{id, server, nodes, flow});
    const Commodity& c = *commodity.at(id);
    std::vector<NodeRef> walk{c.source, {kOverlayLayer, server}};
    for (const auto& n : nodes) walk.push_back({kPhysicalLayer, n});
    walk.push_back({kOverlayLayer, c.sink.id});
    walk.push_back(c.sink);
    out.flows.add_path(id, std::move(walk), flow);
    overlay[*graph.find_intra_edge(kOverlayLayer, server, c.sink.id)] += flow;
    overlay[*graph.find_intra_edge(kServiceLayer, c.source.id, c.sink.id)] += flow;
  }
  out.edge_flows = out.flows.edge_totals(graph);
  for (const auto& [edge, flow] : overlay) out.edge_flows[edge] += flow;

  for (const auto& [id, edge] : instance.channel_edges) {
    auto it = out.edge_flows.find(edge);
    out.channel_flows[id] = it == out.edge_flows.end() ? 0.0 : it->second;
  }
  out.selected_channels = extract_topology(out, kTrafficEps);
  out.assignment = extract_assignment(out);
  for (const auto& s : out.server_ids) {
    double load = 0.0;
    for (const auto& served : out.assignment[s]) load += served.volume;
    out.server_loads[s] = load;
  }
  return out;
}

DesignSolution solve_capacitated(const BuiltInstance& instance,
                                 const DesignOptions& options) {
  DesignOptions capacitated = options;
  capacitated.mode = DesignMode::Capacitated;
  return solve_formulated(instance, formulate(instance, capacitated), capacitated);
}

DesignSolution solve_uncapacitated(const BuiltInstance& instance,
                                   const std::map<std::string, double>& fixed_costs,
                                   const DesignOptions& options) {
  DesignOptions uncapacitated = options;
  uncapacitated.mode = DesignMode::Uncapacitated;
  uncapacitated.fixed_costs = fixed_costs;
  for (const auto& [id, cost] : fixed_costs) {
    if (!instance.channel_edges.contains(id)) {
      throw Error(ErrorKind::InvalidInput, "fixed cost given for unknown channel '" + id + "'");
    }
  }
  return solve_formulated(instance, formulate(instance, uncapacitated), uncapacitated);
}

DesignSolution solve_design(const BuiltInstance& instance,
                            const DesignOptions& options) {
  if (options.mode == DesignMode::Uncapacitated) {
    return solve_uncapacitated(instance, options.fixed_costs, options);
  }
  return solve_capacitated(instance, options);
}

}  // namespace mlg
