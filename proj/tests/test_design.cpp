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

#include <cmath>
#include <map>

#include "doctest.h"
#include "expect_error.hpp"
#include "mlg/design.hpp"
#include "mlg/oracle.hpp"
#include "random_instance.hpp"

using namespace mlg;

namespace {

std::map<std::string, std::size_t> group_counts(const LinearProgram& lp) {
  std::map<std::string, std::size_t> out;
  for (const auto& c : lp.constraints()) ++out[c.group];
  return out;
}

std::vector<std::string> served_by(const DesignSolution& s, const std::string& server) {
  std::vector<std::string> out;
  for (const auto& v : s.assignment.at(server)) out.push_back(v.subscriber);
  return out;
}

void check_feasible(const BuiltInstance& inst, const DesignSolution& s) {
  REQUIRE(s.optimal());
  CHECK(check_conservation(inst.graph, s.flows, inst.commodities).ok);
  CHECK(check_capacities(inst.graph, s.edge_flows).ok);
  for (const auto& [server, load] : s.server_loads) {
    CHECK(load <= inst.server_productivity(server) + 1e-6);
  }
}

mlg::testing::RandomSpec small_spec() {
  mlg::testing::RandomSpec spec;
  spec.max_subscribers = 3;
  spec.max_servers = 2;
  spec.max_intermediates = 2;
  spec.max_channels = 8;
  return spec;
}

DesignOptions link_path_covering_all() {
  DesignOptions o;
  o.formulation = Formulation::LinkPath;
  o.k = 1000;
  return o;
}

}  // namespace

TEST_CASE("node-link program shape on T1") {
  const auto inst = build_redundant_mlg(mlg::testing::t1_problem());
  const auto fp = formulate_node_link(inst, {});
  CHECK(fp.lp.variable_count() == 2 * (5 * 2 + 2 + 1));
  const auto groups = group_counts(fp.lp);
  CHECK(groups.at("demand") == 2);
  CHECK(groups.at("capacity") == 5);
  CHECK(groups.at("productivity") == 2);
  const auto sol = simplex_solve(fp.lp);
  CHECK(sol.objective == doctest::Approx(14.0));
}

TEST_CASE("link-path program shape on T1 with k = 2") {
  const auto inst = build_redundant_mlg(mlg::testing::t1_problem());
  const auto paths = enumerate_candidate_paths(inst, 2);
  const auto fp = formulate_link_path(inst, paths, {});
  CHECK(fp.lp.variable_count() <= 8);
  const auto groups = group_counts(fp.lp);
  CHECK(groups.at("demand") == 2);
  CHECK(groups.at("capacity") == 5);
  CHECK(groups.at("productivity") == 2);
  CHECK(simplex_solve(fp.lp).objective == doctest::Approx(14.0));
}

TEST_CASE("single commodity on a single path") {
  DesignProblem p;
  p.subscribers = {{"u1", {3.0}}};
  p.servers = {{"s1", 3.0}};
  p.service = {"v0", 3.0};
  p.intermediates = {"z1"};
  p.channels = {{"b1", "s1", "z1", 10.0, 1.0}, {"b2", "z1", "u1", 10.0, 1.0}};
  const auto inst = build_redundant_mlg(p);
  const auto paths = enumerate_candidate_paths(inst, 4);
  REQUIRE(paths.at("u1").size() == 1);
  const auto sol = solve_capacitated(inst, link_path_covering_all());
  CHECK(sol.objective == doctest::Approx(6.0));
  REQUIRE(sol.routes.size() == 1);
  CHECK(sol.routes[0].nodes == std::vector<std::string>{"s1", "z1", "u1"});
}

TEST_CASE("zero demand gives an empty design") {
  auto p = mlg::testing::t1_problem();
  for (auto& u : p.subscribers) u.sessions = {0.0};
  p.servers = {{"s1", 0.0}, {"s2", 0.0}};
  p.service.productivity = 0.0;
  const auto inst = build_redundant_mlg(p);
  for (auto f : {Formulation::NodeLink, Formulation::LinkPath}) {
    DesignOptions o;
    o.formulation = f;
    const auto sol = solve_capacitated(inst, o);
    REQUIRE(sol.optimal());
    CHECK(sol.objective == 0.0);
    CHECK(sol.selected_channels.empty());
    CHECK(sol.routes.empty());
  }
  const auto fp = formulate_link_path(inst, {}, {});
  CHECK(fp.lp.variable_count() == 0);
}

TEST_CASE("T1 capacitated optimum") {
  const auto inst = build_redundant_mlg(mlg::testing::t1_problem());
  for (auto f : {Formulation::NodeLink, Formulation::LinkPath}) {
    DesignOptions o;
    o.formulation = f;
    const auto sol = solve_capacitated(inst, o);
    check_feasible(inst, sol);
    CHECK(sol.objective == doctest::Approx(14.0).epsilon(1e-9));
    CHECK(sol.channel_flows.at("b1") == doctest::Approx(3.0));
    CHECK(sol.channel_flows.at("b2") == doctest::Approx(4.0));
    CHECK(sol.channel_flows.at("b3") + sol.channel_flows.at("b4") == doctest::Approx(7.0));
    CHECK(sol.channel_flows.at("b5") == doctest::Approx(0.0));
    CHECK(sol.selected_channels == std::vector<std::string>{"b1", "b2", "b3", "b4"});
  }
}

TEST_CASE("T1 single-homing takes the smallest assignment") {
  const auto inst = build_redundant_mlg(mlg::testing::t1_problem());
  for (auto f : {Formulation::NodeLink, Formulation::LinkPath}) {
    DesignOptions o;
    o.formulation = f;
    o.single_homing = true;
    const auto sol = solve_capacitated(inst, o);
    check_feasible(inst, sol);
    CHECK(sol.integral);
    CHECK(sol.objective == doctest::Approx(14.0));
    CHECK(served_by(sol, "s1") == std::vector<std::string>{"u1"});
    CHECK(served_by(sol, "s2") == std::vector<std::string>{"u2"});
    CHECK(sol.objective >= sol.relaxation_objective - 1e-9);
  }
}

TEST_CASE("overloaded servers are infeasible with a productivity certificate") {
  auto p = mlg::testing::t1_problem();
  p.subscribers = {{"u1", {6.0}}, {"u2", {6.0}}};
  const auto inst = build_redundant_mlg(p);
  for (auto f : {Formulation::NodeLink, Formulation::LinkPath}) {
    for (bool single : {false, true}) {
      DesignOptions o;
      o.formulation = f;
      o.single_homing = single;
      const auto sol = solve_capacitated(inst, o);
      CHECK(sol.status == LpStatus::Infeasible);
      REQUIRE(sol.certificate);
      CHECK(sol.certificate->phase == "phase-1");
      const auto& g = sol.certificate->groups;
      CHECK(std::find(g.begin(), g.end(), "productivity") != g.end());
    }
  }
}

TEST_CASE("T1 uncapacitated design") {
  const auto inst = build_redundant_mlg(mlg::testing::t1_problem());
  std::map<std::string, double> unit;
  for (const auto& c : inst.problem.channels) unit[c.id] = 1.0;
  for (auto f : {Formulation::NodeLink, Formulation::LinkPath}) {
    DesignOptions o;
    o.formulation = f;
    const auto sol = solve_uncapacitated(inst, unit, o);
    check_feasible(inst, sol);
    CHECK(sol.objective == doctest::Approx(18.0));
    CHECK(sol.selected_channels == std::vector<std::string>{"b1", "b2", "b3", "b4"});
    CHECK(sol.objective >= sol.relaxation_objective - 1e-9);

    const auto free = solve_uncapacitated(inst, {}, o);
    CHECK(free.objective == doctest::Approx(14.0));

    auto pricey = unit;
    pricey["b1"] = 1e6;
    const auto forced = solve_uncapacitated(inst, pricey, o);
    REQUIRE(forced.optimal());
    CHECK(std::find(forced.selected_channels.begin(), forced.selected_channels.end(), "b1") !=
          forced.selected_channels.end());
    CHECK(forced.objective == doctest::Approx(1e6 + 3 + 14.0));
  }
  CHECK(mlg::testing::raised([&] { solve_uncapacitated(inst, {{"nope", 1.0}}, {}); }));
}

TEST_CASE("uncapacitated coupling uses the total demand") {
  const auto inst = build_redundant_mlg(mlg::testing::t1_problem());
  DesignOptions o;
  o.mode = DesignMode::Uncapacitated;
  const auto fp = formulate_node_link(inst, o);
  bool seen = false;
  for (const auto& c : fp.lp.constraints()) {
    if (c.group != "coupling") continue;
    seen = true;
    CHECK(c.terms.back().second == -7.0);
  }
  CHECK(seen);
}

TEST_CASE("random instances: feasibility, bounds, equivalence, determinism") {
  const auto spec = small_spec();
  int optimal = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto inst = build_redundant_mlg(mlg::testing::random_problem(spec, seed));
    const auto nl = solve_capacitated(inst, {});
    const auto lp = solve_capacitated(inst, link_path_covering_all());
    REQUIRE(nl.status == lp.status);
    if (!nl.optimal()) continue;
    ++optimal;
    check_feasible(inst, nl);
    check_feasible(inst, lp);
    CHECK(std::abs(nl.objective - lp.objective) <= 1e-6);

    const auto again = solve_capacitated(inst, {});
    CHECK(again.objective == nl.objective);
    CHECK(again.routes == nl.routes);

    DesignOptions single;
    single.single_homing = true;
    const auto sh = solve_capacitated(inst, single);
    if (sh.optimal()) {
      check_feasible(inst, sh);
      CHECK(sh.objective >= sh.relaxation_objective - 1e-9);
      CHECK(sh.objective >= nl.objective - 1e-6);
      for (const auto& c : inst.commodities) {
        int servers = 0;
        for (const auto& [s, list] : sh.assignment) {
          for (const auto& v : list) servers += v.subscriber == c.id;
        }
        CHECK(servers == 1);
      }
    }
  }
  CHECK(optimal > 30);
}

TEST_CASE("scale instance solves") {
  const auto inst = build_redundant_mlg(mlg::testing::scale_problem(1));
  const auto sol = solve_capacitated(inst, {});
  check_feasible(inst, sol);
}
