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

// Network-design formulations over a built three-layer instance.
//
// Both formulations route every commodity from the service node through one
// of the servers (the service-to-server inter-edge carries the server's
// productivity as capacity) and over the physical channels to the
// subscriber.  The objective is the carried flow summed over channels,
// weighted by channel cost, plus channel fixed costs in uncapacitated mode.
// Layer-2 and layer-3 flows are derived from the physical routing.

#ifndef MLG_DESIGN_HPP
#define MLG_DESIGN_HPP

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mlg/flow.hpp"
#include "mlg/lp.hpp"
#include "mlg/paths.hpp"
#include "mlg/problem.hpp"

namespace mlg {

enum class Formulation { NodeLink, LinkPath };
enum class DesignMode { Capacitated, Uncapacitated };

std::string_view to_string(Formulation formulation);
std::string_view to_string(DesignMode mode);

// Flow below this is treated as no traffic.
inline constexpr double kTrafficEps = 1e-9;

struct DesignOptions {
  Formulation formulation = Formulation::NodeLink;
  DesignMode mode = DesignMode::Capacitated;
  std::size_t k = 4;
  bool single_homing = false;
  // channel id -> fixed cost of opening it; missing channels cost 0
  std::map<std::string, double> fixed_costs;
  SimplexOptions simplex;
  double int_tol = 1e-6;
};

// Meaning of one LP column.
struct ColumnInfo {
  enum class Kind { Injection, ChannelArc, Access, PathFlow, Assignment, ChannelOpen };
  Kind kind = Kind::Injection;
  std::size_t commodity = 0;  // index into instance.commodities
  std::string server;
  std::string channel;
  std::string from;  // ChannelArc direction
  std::string to;
  std::size_t path = 0;  // PathFlow: index into the commodity's candidates
};

struct FormulatedProgram {
  LinearProgram lp;
  std::vector<ColumnInfo> columns;
  CandidatePathSet paths;  // link-path only
  // Lexicographic tie-break over optimal designs: assigned server index per
  // commodity, then channel open flags in channel-id order.
  std::vector<std::vector<std::pair<std::size_t, double>>> tie_forms() const;

  std::vector<std::vector<std::size_t>> assignment_columns;  // [commodity][server]
  std::vector<std::size_t> open_columns;                     // channel-id order
};

FormulatedProgram formulate_node_link(const BuiltInstance& instance,
                                      const DesignOptions& options);
// Throws Error{UncoveredCommodity} when some commodity has no candidate.
FormulatedProgram formulate_link_path(const BuiltInstance& instance,
                                      const CandidatePathSet& paths,
                                      const DesignOptions& options);

struct Route {
  std::string commodity;
  std::string server;
  std::vector<std::string> nodes;  // layer-1 ids from server to subscriber
  double flow = 0.0;

  bool operator==(const Route&) const = default;
};

struct ServedVolume {
  std::string subscriber;
  double volume = 0.0;

  bool operator==(const ServedVolume&) const = default;
};

struct InfeasibilityCertificate {
  std::string phase;                // "phase-1"
  std::vector<std::string> groups;  // sorted row families, e.g. "productivity"
  std::vector<std::string> rows;    // constraint names
};

struct DesignSolution {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  double relaxation_objective = std::numeric_limits<double>::quiet_NaN();
  bool integral = false;  // solved by branch-and-bound

  std::vector<std::string> selected_channels;      // channels carrying traffic, sorted
  std::map<std::string, double> channel_flows;     // every channel
  EdgeFlows edge_flows;                            // all layers + inter-edges
  FlowAssignment flows;                            // per-commodity MLG paths
  std::vector<Route> routes;
  std::vector<std::string> server_ids;
  std::map<std::string, std::vector<ServedVolume>> assignment;  // server -> served subscribers
  std::map<std::string, double> server_loads;

  std::optional<InfeasibilityCertificate> certificate;
  std::size_t iterations = 0;
  std::size_t nodes = 0;
  std::size_t branches = 0;

  bool optimal() const { return status == LpStatus::Optimal; }
};

// Builds the per-layer flows, assignment and channel totals from physical
// routes.  Used by both drivers and by the oracle.
DesignSolution assemble_solution(const BuiltInstance& instance,
                                 const std::vector<Route>& routes,
                                 double objective);

DesignSolution solve_capacitated(const BuiltInstance& instance,
                                 const DesignOptions& options = {});

DesignSolution solve_uncapacitated(const BuiltInstance& instance,
                                   const std::map<std::string, double>& fixed_costs,
                                   const DesignOptions& options = {});

// Dispatches on options.mode.
DesignSolution solve_design(const BuiltInstance& instance,
                            const DesignOptions& options);

}  // namespace mlg

#endif  // MLG_DESIGN_HPP
