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

// Minimization linear programs with a dense two-phase tableau simplex and a
// depth-first branch-and-bound on top of it.

#ifndef MLG_LP_HPP
#define MLG_LP_HPP

#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "mlg/kernels.hpp"

namespace mlg {

enum class Relation { LessEqual, Equal, GreaterEqual };
enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string_view to_string(LpStatus status);

struct LpVariable {
  std::string name;
  double cost = 0.0;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  bool integer = false;
};

struct LpConstraint {
  std::string name;
  // Row family, e.g. "demand", "capacity", "productivity".  Used to label
  // infeasibility certificates.
  std::string group;
  std::vector<std::pair<std::size_t, double>> terms;
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
};

class LinearProgram {
 public:
  std::size_t add_variable(std::string name, double cost,
                           double upper = std::numeric_limits<double>::infinity(),
                           bool integer = false);
  std::size_t add_constraint(std::string name, std::string group,
                             std::vector<std::pair<std::size_t, double>> terms,
                             Relation relation, double rhs);

  const std::vector<LpVariable>& variables() const { return variables_; }
  const std::vector<LpConstraint>& constraints() const { return constraints_; }
  LpVariable& variable(std::size_t index) { return variables_.at(index); }

  std::size_t variable_count() const { return variables_.size(); }
  std::size_t constraint_count() const { return constraints_.size(); }
  bool has_integer_variables() const;

  // Throws Error{MalformedProgram} on non-finite data or dangling indices.
  void validate() const;

  double evaluate(const std::vector<double>& x) const;
  // Largest violation over constraints and bounds.
  double max_violation(const std::vector<double>& x) const;

 private:
  std::vector<LpVariable> variables_;
  std::vector<LpConstraint> constraints_;
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> values;
  double objective = 0.0;
  std::size_t iterations = 0;
  // Optimal: one multiplier per constraint, sign convention of a
  // minimization (<= rows nonpositive, >= rows nonnegative).
  // Infeasible: phase-1 Farkas multipliers.
  std::vector<double> duals;
  // Infeasible only: constraints with a nonzero Farkas multiplier.
  std::vector<std::size_t> certificate_rows;
  // Branch-and-bound statistics.
  std::size_t nodes = 0;
  std::size_t branches = 0;
  double relaxation_objective = std::numeric_limits<double>::quiet_NaN();
};

enum class PricingRule {
  // Smallest eligible index enters; smallest basic index leaves on ties.
  Bland,
  // Most negative reduced cost, switching to Bland after a run of
  // degenerate pivots.
  DantzigWithBlandFallback,
};

struct SimplexOptions {
  double tol = 1e-6;         // feasibility reporting
  double pivot_tol = 1e-9;   // smallest usable pivot / reduced cost
  PricingRule pricing = PricingRule::Bland;
  PivotKernel kernel = PivotKernel::Parallel;
  std::size_t max_iterations = 10'000'000;
  std::size_t degenerate_run = 50;  // fallback trigger for Dantzig pricing
};

LpSolution simplex_solve(const LinearProgram& lp,
                         const SimplexOptions& options = {});

struct BranchAndBoundOptions {
  SimplexOptions simplex;
  double int_tol = 1e-6;
  std::size_t max_nodes = 500'000;
  // Lexicographic tie-break over optimal solutions: once the optimum z* is
  // known, each linear form is minimized in turn subject to objective <=
  // z* + tol and the earlier forms held at their minima.  Empty: the first
  // optimum found wins.
  std::vector<std::vector<std::pair<std::size_t, double>>> tie_forms;
};

LpSolution branch_and_bound(const LinearProgram& lp,
                            const BranchAndBoundOptions& options = {});

}  // namespace mlg

#endif  // MLG_LP_HPP
