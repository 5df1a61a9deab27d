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

#include <algorithm>
#include <cmath>
#include <optional>

#include "mlg/error.hpp"
#include "mlg/lp.hpp"

namespace mlg {

namespace {

struct Node {
  std::vector<double> lower;
  std::vector<double> upper;
};

// Most fractional integer variable; lowest index on ties.
std::optional<std::size_t> branching_variable(const LinearProgram& lp,
                                              const std::vector<double>& x,
                                              double int_tol) {
  std::optional<std::size_t> pick;
  double best = 1.0;
  for (std::size_t j = 0; j < lp.variable_count(); ++j) {
    if (!lp.variables()[j].integer) continue;
    const double frac = x[j] - std::floor(x[j]);
    if (frac <= int_tol || frac >= 1.0 - int_tol) continue;
    const double distance = std::abs(frac - 0.5);
    if (!pick || distance < best) {
      pick = j;
      best = distance;
    }
  }
  return pick;
}

// Depth-first search for one optimum.
LpSolution search(const LinearProgram& lp, const BranchAndBoundOptions& options) {
  const double tol = options.simplex.pivot_tol;

  LinearProgram work = lp;
  Node root;
  for (const auto& v : lp.variables()) {
    root.lower.push_back(v.lower);
    root.upper.push_back(v.integer && std::isfinite(v.upper) ? std::floor(v.upper + options.int_tol)
                                                            : v.upper);
  }

  std::optional<LpSolution> incumbent;
  LpSolution stats;
  std::vector<Node> stack{root};
  bool first = true;

  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    for (std::size_t j = 0; j < work.variable_count(); ++j) {
      work.variable(j).lower = node.lower[j];
      work.variable(j).upper = node.upper[j];
    }
    LpSolution relaxed = simplex_solve(work, options.simplex);
    ++stats.nodes;
    stats.iterations += relaxed.iterations;
    if (first) {
      first = false;
      stats.relaxation_objective = relaxed.objective;
      if (relaxed.status != LpStatus::Optimal) {
        relaxed.nodes = stats.nodes;
        relaxed.relaxation_objective = relaxed.objective;
        return relaxed;
      }
    }
    if (relaxed.status != LpStatus::Optimal) continue;
    if (incumbent && relaxed.objective >= incumbent->objective - tol) continue;

    auto branch = branching_variable(lp, relaxed.values, options.int_tol);
    if (!branch) {
      // Re-solve with the integers pinned so continuous columns do not ride
      // on int_tol-sized residues of the binaries.
      bool residue = false;
      for (std::size_t j = 0; j < lp.variable_count(); ++j) {
        if (!lp.variables()[j].integer) continue;
        const double v = std::round(relaxed.values[j]);
        residue = residue || v != relaxed.values[j];
        work.variable(j).lower = v;
        work.variable(j).upper = v;
      }
      if (residue) {
        LpSolution pinned = simplex_solve(work, options.simplex);
        stats.iterations += pinned.iterations;
        if (pinned.status == LpStatus::Optimal) relaxed = std::move(pinned);
      }
      for (std::size_t j = 0; j < lp.variable_count(); ++j) {
        if (lp.variables()[j].integer) relaxed.values[j] = std::round(relaxed.values[j]);
      }
      relaxed.objective = lp.evaluate(relaxed.values);
      if (incumbent && relaxed.objective >= incumbent->objective - tol) continue;
      incumbent = std::move(relaxed);
      continue;
    }

    if (stats.nodes >= options.max_nodes) {
      throw Error(ErrorKind::SolverLimit, "branch-and-bound node limit reached");
    }
    ++stats.branches;
    const std::size_t j = *branch;
    const double value = relaxed.values[j];
    Node down = node;
    down.upper[j] = std::floor(value);
    Node up = std::move(node);
    up.lower[j] = std::ceil(value);
    // The child nearer the relaxed value is explored first; up on a tie.
    if (value - std::floor(value) < 0.5) {
      stack.push_back(std::move(up));
      stack.push_back(std::move(down));
    } else {
      stack.push_back(std::move(down));
      stack.push_back(std::move(up));
    }
  }

  LpSolution out;
  if (incumbent) {
    out = std::move(*incumbent);
  } else {
    out.status = LpStatus::Infeasible;
    out.objective = std::numeric_limits<double>::quiet_NaN();
  }
  out.iterations = stats.iterations;
  out.nodes = stats.nodes;
  out.branches = stats.branches;
  out.relaxation_objective = stats.relaxation_objective;
  return out;
}

}  // namespace

LpSolution branch_and_bound(const LinearProgram& lp,
                            const BranchAndBoundOptions& options) {
  lp.validate();
  LpSolution best = search(lp, options);
  if (best.status != LpStatus::Optimal || options.tie_forms.empty()) return best;

  const double tol = options.simplex.pivot_tol;
  LinearProgram work = lp;
  std::vector<std::pair<std::size_t, double>> objective;
  for (std::size_t j = 0; j < lp.variable_count(); ++j) {
    if (lp.variables()[j].cost != 0.0) objective.emplace_back(j, lp.variables()[j].cost);
    work.variable(j).cost = 0.0;
  }
  work.add_constraint("optimum", "tie-break", std::move(objective), Relation::LessEqual,
                      best.objective + tol * std::max(1.0, std::abs(best.objective)));

  std::size_t nodes = best.nodes;
  std::size_t branches = best.branches;
  std::size_t iterations = best.iterations;
  std::vector<double> values = best.values;
  for (std::size_t f = 0; f < options.tie_forms.size(); ++f) {
    const auto& form = options.tie_forms[f];
    for (const auto& [j, a] : form) work.variable(j).cost += a;
    LpSolution refined = search(work, options);
    nodes += refined.nodes;
    branches += refined.branches;
    iterations += refined.iterations;
    for (const auto& [j, a] : form) work.variable(j).cost = 0.0;
    if (refined.status != LpStatus::Optimal) break;
    values = refined.values;
    work.add_constraint("tie[" + std::to_string(f) + "]", "tie-break", form,
                        Relation::LessEqual, refined.objective + tol);
  }
  best.values = std::move(values);
  best.objective = lp.evaluate(best.values);
  best.nodes = nodes;
  best.branches = branches;
  best.iterations = iterations;
  return best;
}

}  // namespace mlg
