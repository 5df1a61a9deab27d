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

// Problem and solution files (JSON) and Graphviz export.
//
// Problem file:
//
//   {
//     "subscribers":  [{"id": "u1", "sessions": [1.5, 1.5]}],
//     "servers":      [{"id": "s1", "productivity": 5}],
//     "service":      {"id": "v0", "productivity": 5},
//     "intermediate": [{"id": "z1"}],
//     "channels":     [{"id": "b1", "ends": ["u1", "z1"], "capacity": 10, "cost": 1}],
//     "options":      {"mode": "capacitated", "formulation": "node-link", "k": 4,
//                      "single_homing": false, "fixed_costs": {"b1": 1},
//                      "tol": 1e-6, "productivity": "equal"}
//   }
//
// Unknown keys are rejected at every level.

#ifndef MLG_IO_HPP
#define MLG_IO_HPP

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "mlg/design.hpp"
#include "mlg/graph.hpp"
#include "mlg/interpreter.hpp"
#include "mlg/problem.hpp"

namespace mlg {

struct ProblemOptions {
  std::optional<DesignMode> mode;
  std::optional<Formulation> formulation;
  std::optional<std::size_t> k;
  std::optional<bool> single_homing;
  std::map<std::string, double> fixed_costs;
  std::optional<double> tol;
  std::optional<ProductivityRule> productivity;

  bool operator==(const ProblemOptions&) const = default;
};

struct ProblemFile {
  DesignProblem problem;
  ProblemOptions options;

  bool operator==(const ProblemFile&) const = default;
};

// All parsers throw Error{InvalidInput} with the source name, the line for
// syntax errors and the field path (e.g. "channels[2].capacity") for schema
// errors.  Unreadable files throw Error{Io}.
ProblemFile parse_problem_text(std::string_view text, std::string_view source = "<input>");
ProblemFile parse_problem_file(const std::filesystem::path& path);
DesignProblem parse_problem(const std::filesystem::path& path);

// Channel id -> fixed cost, from a flat JSON object.
std::map<std::string, double> parse_fixed_costs_text(std::string_view text,
                                                     std::string_view source = "<input>");
std::map<std::string, double> parse_fixed_costs(const std::filesystem::path& path);

// Canonical form: records sorted by id, object keys sorted.
std::string serialize_problem(const ProblemFile& file);
void write_problem(const ProblemFile& file, const std::filesystem::path& path);

std::string serialize_solution(const ProjectReport& report);
ProjectReport parse_solution_text(std::string_view text, std::string_view source = "<input>");
// Throws Error{Io} when the file cannot be written.
void write_solution(const ProjectReport& report, const std::filesystem::path& path);

struct DotOptions {
  std::string name = "mlg";
  bool show_flow = true;  // "flow/capacity" labels; capacity only otherwise
};

std::string render_dot(const MultiLayerGraph& graph, const DotOptions& options = {});
void export_dot(const MultiLayerGraph& graph, const std::filesystem::path& path,
                const DotOptions& options = {});

}  // namespace mlg

#endif  // MLG_IO_HPP
