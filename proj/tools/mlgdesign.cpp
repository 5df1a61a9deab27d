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

// mlgdesign: command-line front-end.
//
//   mlgdesign validate   <problem>
//   mlgdesign solve      <problem> [--mode ...] [--formulation ...] [--k N]
//                        [--single-homing] [--fixed-costs FILE] [--tol X]
//                        [--productivity-at-least] [-o OUT]
//   mlgdesign export-dot <problem> -o OUT
//   mlgdesign oracle     <problem> [-o OUT]
//
// Exit codes: 0 success, 1 infeasible, 2 invalid input, 3 internal or I/O
// failure, 4 instance too large for the oracle.

#include <exception>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "mlg/design.hpp"
#include "mlg/error.hpp"
#include "mlg/interpreter.hpp"
#include "mlg/io.hpp"
#include "mlg/oracle.hpp"
#include "mlg/problem.hpp"

namespace {

enum Exit { kOk = 0, kInfeasible = 1, kInvalid = 2, kInternal = 3, kLimits = 4 };

int exit_code(mlg::ErrorKind kind) {
  using mlg::ErrorKind;
  switch (kind) {
    case ErrorKind::Infeasible:
      return kInfeasible;
    case ErrorKind::LimitsExceeded:
      return kLimits;
    case ErrorKind::Io:
    case ErrorKind::MalformedProgram:
    case ErrorKind::SolverLimit:
    case ErrorKind::MissingRealization:
      return kInternal;
    default:
      return kInvalid;
  }
}

struct SolveArgs {
  std::string problem;
  std::string mode;
  std::string formulation;
  std::size_t k = 0;
  bool single_homing = false;
  std::string fixed_costs;
  double tol = 0.0;
  bool productivity_at_least = false;
  std::string output;
};

// Command-line flags override the problem file's "options" block.
mlg::DesignOptions design_options(const mlg::ProblemFile& file, const SolveArgs& args) {
  mlg::DesignOptions o;
  const auto& f = file.options;
  if (f.mode) o.mode = *f.mode;
  if (f.formulation) o.formulation = *f.formulation;
  if (f.k) o.k = *f.k;
  if (f.single_homing) o.single_homing = *f.single_homing;
  o.fixed_costs = f.fixed_costs;
  if (f.tol) o.simplex.tol = *f.tol;

  if (args.mode == "capacitated") o.mode = mlg::DesignMode::Capacitated;
  if (args.mode == "uncapacitated") o.mode = mlg::DesignMode::Uncapacitated;
  if (args.formulation == "node-link") o.formulation = mlg::Formulation::NodeLink;
  if (args.formulation == "link-path") o.formulation = mlg::Formulation::LinkPath;
  if (args.k > 0) o.k = args.k;
  if (args.single_homing) o.single_homing = true;
  if (!args.fixed_costs.empty()) o.fixed_costs = mlg::parse_fixed_costs(args.fixed_costs);
  if (args.tol > 0.0) o.simplex.tol = args.tol;
  return o;
}

mlg::BuildOptions build_options(const mlg::ProblemFile& file, const SolveArgs& args) {
  mlg::BuildOptions o;
  if (file.options.productivity) o.productivity_rule = *file.options.productivity;
  if (args.productivity_at_least) o.productivity_rule = mlg::ProductivityRule::AtLeast;
  return o;
}

void print_report(const mlg::ProjectReport& report) {
  std::cout << "status: " << report.status << "\n";
  std::cout << "objective: " << report.objective << "\n";
  std::cout << "channels:";
  for (const auto& c : report.channels) std::cout << " " << c.id;
  std::cout << "\n";
  for (const auto& a : report.assignments) {
    std::cout << "server " << a.server << " load " << a.load << "/" << a.productivity << ":";
    for (const auto& s : a.served) std::cout << " " << s.subscriber << "=" << s.volume;
    std::cout << "\n";
  }
  if (!report.validation.ok) {
    for (const auto& m : report.validation.messages) std::cout << "violation: " << m << "\n";
  }
}

int report_solution(const mlg::DesignSolution& solution, const mlg::BuiltInstance& instance,
                    const std::string& output) {
  if (!solution.optimal()) {
    const auto failure = mlg::render_failure(solution);
    std::cout << "status: " << failure.status << "\n";
    for (const auto& line : failure.certificate) std::cout << "certificate: " << line << "\n";
    if (!output.empty()) mlg::write_solution(failure, output);
    return kInfeasible;
  }
  const auto report = mlg::render_report(solution, instance);
  print_report(report);
  if (!output.empty()) mlg::write_solution(report, output);
  return report.validation.ok ? kOk : kInternal;
}

int run_validate(const SolveArgs& args) {
  const auto file = mlg::parse_problem_file(args.problem);
  const auto instance = mlg::build_redundant_mlg(file.problem, build_options(file, args));
  const auto check = mlg::validate_overlay(instance.graph);
  if (check.ok) {
    std::cout << "ok:";
    for (int l = 1; l <= instance.graph.layer_count(); ++l) {
      std::cout << " layer " << l << " " << instance.graph.node_count(l) << " nodes,";
    }
    std::cout << " " << instance.commodities.size() << " commodities\n";
    return kOk;
  }
  for (const auto& v : check.violations) {
    std::cerr << "unrealizable " << mlg::describe_edge(instance.graph, v.edge) << ": "
              << v.reason << "\n";
  }
  return kInvalid;
}

int run_solve(const SolveArgs& args) {
  const auto file = mlg::parse_problem_file(args.problem);
  const auto instance = mlg::build_redundant_mlg(file.problem, build_options(file, args));
  const auto solution = mlg::solve_design(instance, design_options(file, args));
  return report_solution(solution, instance, args.output);
}

int run_oracle(const SolveArgs& args) {
  const auto file = mlg::parse_problem_file(args.problem);
  const auto instance = mlg::build_redundant_mlg(file.problem, build_options(file, args));
  const auto solution = mlg::brute_force_oracle(instance, design_options(file, args));
  return report_solution(solution, instance, args.output);
}

int run_export_dot(const SolveArgs& args) {
  const auto file = mlg::parse_problem_file(args.problem);
  const auto instance = mlg::build_redundant_mlg(file.problem, build_options(file, args));
  mlg::export_dot(instance.graph, args.output);
  return kOk;
}

void add_design_flags(CLI::App* cmd, SolveArgs& args) {
  cmd->add_option("--mode", args.mode, "capacitated or uncapacitated")
      ->check(CLI::IsMember({"capacitated", "uncapacitated"}));
  cmd->add_option("--formulation", args.formulation, "node-link or link-path")
      ->check(CLI::IsMember({"node-link", "link-path"}));
  cmd->add_flag("--single-homing", args.single_homing, "serve each subscriber from one server");
  cmd->add_option("--fixed-costs", args.fixed_costs, "JSON object of channel fixed costs");
  cmd->add_option("--tol", args.tol, "feasibility tolerance (default 1e-6)")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--productivity-at-least", args.productivity_at_least,
                "accept a server total above the service productivity");
  cmd->add_option("-o,--output", args.output, "solution file to write");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-layer network design"};
  app.require_subcommand(1);
  SolveArgs args;

  auto* validate = app.add_subcommand("validate", "build the layered graph and check realizability");
  validate->add_option("problem", args.problem)->required();
  validate->add_flag("--productivity-at-least", args.productivity_at_least);

  auto* solve = app.add_subcommand("solve", "compute an optimal design");
  solve->add_option("problem", args.problem)->required();
  solve->add_option("--k", args.k, "candidate paths per server (link-path)")
      ->check(CLI::PositiveNumber);
  add_design_flags(solve, args);

  auto* dot = app.add_subcommand("export-dot", "write the layered graph in Graphviz format");
  dot->add_option("problem", args.problem)->required();
  dot->add_option("-o,--output", args.output)->required();
  dot->add_flag("--productivity-at-least", args.productivity_at_least);

  auto* oracle = app.add_subcommand("oracle", "exhaustive search on a small instance");
  oracle->add_option("problem", args.problem)->required();
  add_design_flags(oracle, args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (validate->parsed()) return run_validate(args);
    if (solve->parsed()) return run_solve(args);
    if (dot->parsed()) return run_export_dot(args);
    return run_oracle(args);
  } catch (const mlg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
