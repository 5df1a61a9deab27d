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

std::string_view to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "unknown";
}

std::size_t LinearProgram::add_variable(std::string name, double cost,
                                        double upper, bool integer) {
  variables_.push_back(LpVariable{std::move(name), cost, 0.0, upper, integer});
  return variables_.size() - 1;
}

std::size_t LinearProgram::add_constraint(
    std::string name, std::string group,
    std::vector<std::pair<std::size_t, double>> terms, Relation relation,
    double rhs) {
  constraints_.push_back(LpConstraint{std::move(name), std::move(group),
                                      std::move(terms), relation, rhs});
  return constraints_.size() - 1;
}

bool LinearProgram::has_integer_variables() const {
  return std::any_of(variables_.begin(), variables_.end(),
                     [](const LpVariable& v) { return v.integer; });
}

void LinearProgram::validate() const {
  auto bad = [](const std::string& what) {
    throw Error(ErrorKind::MalformedProgram, what);
  };
  for (const auto& v : variables_) {
    if (!std::isfinite(v.cost)) bad("variable " + v.name + ": non-finite cost");
    if (!std::isfinite(v.lower) || v.lower < 0.0) {
      bad("variable " + v.name + ": lower bound must be finite and >= 0");
    }
    if (std::isnan(v.upper)) bad("variable " + v.name + ": NaN upper bound");
  }
  for (const auto& c : constraints_) {
    if (!std::isfinite(c.rhs)) bad("constraint " + c.name + ": non-finite rhs");
    for (const auto& [index, coef] : c.terms) {
      if (index >= variables_.size()) {
        bad("constraint " + c.name + ": undeclared variable");
      }
      if (!std::isfinite(coef)) {
        bad("constraint " + c.name + ": non-finite coefficient");
      }
    }
  }
}

double LinearProgram::evaluate(const std::vector<double>& x) const {
  double z = 0.0;
  for (std::size_t j = 0; j < variables_.size(); ++j) z += variables_[j].cost * x[j];
  return z;
}

double LinearProgram::max_violation(const std::vector<double>& x) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < variables_.size(); ++j) {
    worst = std::max(worst, variables_[j].lower - x[j]);
    worst = std::max(worst, x[j] - variables_[j].upper);
  }
  for (const auto& c : constraints_) {
    double lhs = 0.0;
    for (const auto& [index, coef] : c.terms) lhs += coef * x[index];
    switch (c.relation) {
      case Relation::LessEqual: worst = std::max(worst, lhs - c.rhs); break;
      case Relation::GreaterEqual: worst = std::max(worst, c.rhs - lhs); break;
      case Relation::Equal: worst = std::max(worst, std::abs(lhs - c.rhs)); break;
    }
  }
  return worst;
}

namespace {

constexpr double kRatioTieTol = 1e-12;

struct Row {
  std::vector<std::pair<std::size_t, double>> terms;
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
  double sign = 1.0;
};

class Simplex {
 public:
  Simplex(const LinearProgram& lp, const SimplexOptions& options)
      : lp_(lp), options_(options), n_(lp.variable_count()) {
    build_rows();
    build_tableau();
  }

  LpSolution run() {
    LpSolution out;
    if (!run_phase(phase1_row(), art_begin_ + art_count_, out.iterations)) {
      // Phase 1 is bounded below by zero.
      throw Error(ErrorKind::MalformedProgram, "phase 1 reported unbounded");
    }
    const double infeasibility = -at(phase1_row(), rhs_col());
    if (infeasibility > options_.tol) {
      out.status = LpStatus::Infeasible;
      out.duals = multipliers(phase1_row(), /*phase1=*/true);
      for (std::size_t i = 0; i < out.duals.size(); ++i) {
        if (std::abs(out.duals[i]) > options_.pivot_tol) out.certificate_rows.push_back(i);
      }
      out.objective = std::numeric_limits<double>::quiet_NaN();
      return out;
    }
    drive_out_artificials(out.iterations);
    if (!run_phase(phase2_row(), art_begin_, out.iterations)) {
      out.status = LpStatus::Unbounded;
      out.objective = -std::numeric_limits<double>::infinity();
      return out;
    }
    out.status = LpStatus::Optimal;
    out.values.assign(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) out.values[basis_[i]] = std::max(0.0, at(i, rhs_col()));
    }
    for (std::size_t j = 0; j < n_; ++j) out.values[j] += lp_.variables()[j].lower;
    out.objective = lp_.evaluate(out.values);
    out.duals = multipliers(phase2_row(), /*phase1=*/false);
    return out;
  }

  bool trivially_infeasible() const { return bound_conflict_; }

 private:
  std::size_t phase1_row() const { return m_; }
  std::size_t phase2_row() const { return m_ + 1; }
  std::size_t rhs_col() const { return cols_ - 1; }
  double& at(std::size_t r, std::size_t c) { return table_[r * cols_ + c]; }
  TableauView view() { return {table_, m_ + 2, cols_}; }

  void build_rows() {
    const auto& vars = lp_.variables();
    for (const auto& c : lp_.constraints()) {
      Row row{c.terms, c.relation, c.rhs, 1.0};
      for (const auto& [j, coef] : c.terms) row.rhs -= coef * vars[j].lower;
      rows_.push_back(std::move(row));
    }
    user_rows_ = rows_.size();
    for (std::size_t j = 0; j < n_; ++j) {
      if (std::isinf(vars[j].upper)) continue;
      if (vars[j].upper < vars[j].lower) bound_conflict_ = true;
      rows_.push_back(Row{{{j, 1.0}}, Relation::LessEqual, vars[j].upper - vars[j].lower, 1.0});
    }
    for (auto& row : rows_) {
      if (row.rhs < 0.0) {
        row.sign = -1.0;
        row.rhs = -row.rhs;
        for (auto& term : row.terms) term.second = -term.second;
        if (row.relation == Relation::LessEqual) {
          row.relation = Relation::GreaterEqual;
        } else if (row.relation == Relation::GreaterEqual) {
          row.relation = Relation::LessEqual;
        }
      }
    }
    m_ = rows_.size();
  }

  void build_tableau() {
    std::size_t slacks = 0;
    for (const auto& row : rows_) {
      if (row.relation != Relation::Equal) ++slacks;
      if (row.relation != Relation::LessEqual) ++art_count_;
    }
    art_begin_ = n_ + slacks;
    cols_ = art_begin_ + art_count_ + 1;
    table_.assign((m_ + 2) * cols_, 0.0);
    basis_.assign(m_, 0);
    identity_col_.assign(m_, 0);
    redundant_.assign(m_, false);

    std::size_t next_slack = n_;
    std::size_t next_art = art_begin_;
    for (std::size_t i = 0; i < m_; ++i) {
      const Row& row = rows_[i];
      for (const auto& [j, coef] : row.terms) at(i, j) += coef;
      at(i, rhs_col()) = row.rhs;
      if (row.relation == Relation::LessEqual) {
        at(i, next_slack) = 1.0;
        identity_col_[i] = next_slack++;
      } else {
        if (row.relation == Relation::GreaterEqual) at(i, next_slack++) = -1.0;
        at(i, next_art) = 1.0;
        identity_col_[i] = next_art++;
      }
      basis_[i] = identity_col_[i];
    }

    for (std::size_t j = art_begin_; j < art_begin_ + art_count_; ++j) {
      at(phase1_row(), j) = 1.0;
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < art_begin_) continue;
      for (std::size_t c = 0; c < cols_; ++c) at(phase1_row(), c) -= at(i, c);
    }
    for (std::size_t j = 0; j < n_; ++j) at(phase2_row(), j) = lp_.variables()[j].cost;
  }

  std::optional<std::size_t> entering(std::size_t obj, std::size_t limit,
                                      bool bland) {
    const double* d = &table_[obj * cols_];
    std::optional<std::size_t> pick;
    for (std::size_t j = 0; j < limit; ++j) {
      if (d[j] >= -options_.pivot_tol) continue;
      if (bland) return j;
      if (!pick || d[j] < d[*pick]) pick = j;
    }
    return pick;
  }

  std::optional<std::size_t> leaving(std::size_t c) {
    std::optional<std::size_t> pick;
    double best = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (redundant_[i]) continue;
      const double a = at(i, c);
      if (a <= options_.pivot_tol) continue;
      const double ratio = at(i, rhs_col()) / a;
      if (!pick || ratio < best - kRatioTieTol * (1.0 + std::abs(best))) {
        pick = i;
        best = ratio;
      } else if (std::abs(ratio - best) <= kRatioTieTol * (1.0 + std::abs(best)) &&
                 basis_[i] < basis_[*pick]) {
        pick = i;
        best = std::min(best, ratio);
      }
    }
    return pick;
  }

  // Returns false when the objective is unbounded.
  bool run_phase(std::size_t obj, std::size_t limit, std::size_t& iterations) {
    std::size_t degenerate = 0;
    for (;;) {
      const bool bland = options_.pricing == PricingRule::Bland ||
                         degenerate >= options_.degenerate_run;
      auto c = entering(obj, limit, bland);
      if (!c) return true;
      auto r = leaving(*c);
      if (!r) return false;
      const double step = at(*r, rhs_col());
      degenerate = step <= kRatioTieTol ? degenerate + 1 : 0;
      pivot(options_.kernel, view(), *r, *c);
      basis_[*r] = *c;
      if (++iterations > options_.max_iterations) {
        throw Error(ErrorKind::SolverLimit, "simplex iteration limit reached");
      }
    }
  }

  void drive_out_artificials(std::size_t& iterations) {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < art_begin_) continue;
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < art_begin_; ++j) {
        if (std::abs(at(i, j)) > options_.pivot_tol) {
          col = j;
          break;
        }
      }
      if (!col) {
        redundant_[i] = true;
        continue;
      }
      pivot(options_.kernel, view(), i, *col);
      basis_[i] = *col;
      ++iterations;
    }
  }

  // Row multipliers for the user constraints read off the identity columns.
  std::vector<double> multipliers(std::size_t obj, bool phase1) {
    std::vector<double> y(user_rows_, 0.0);
    for (std::size_t i = 0; i < user_rows_; ++i) {
      const std::size_t col = identity_col_[i];
      const double cost = phase1 && col >= art_begin_ ? 1.0 : 0.0;
      const double value = rows_[i].sign * (cost - at(obj, col));
      y[i] = value == 0.0 ? 0.0 : value;
    }
    return y;
  }

  const LinearProgram& lp_;
  const SimplexOptions& options_;
  std::size_t n_;
  std::vector<Row> rows_;
  std::size_t user_rows_ = 0;
  std::size_t m_ = 0;
  std::size_t cols_ = 0;
  std::size_t art_begin_ = 0;
  std::size_t art_count_ = 0;
  bool bound_conflict_ = false;
  std::vector<double> table_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> identity_col_;
  std::vector<bool> redundant_;
};

}  // namespace

LpSolution simplex_solve(const LinearProgram& lp, const SimplexOptions& options) {
  lp.validate();
  Simplex simplex(lp, options);
  if (simplex.trivially_infeasible()) {
    LpSolution out;
    out.status = LpStatus::Infeasible;
    out.objective = std::numeric_limits<double>::quiet_NaN();
    out.duals.assign(lp.constraint_count(), 0.0);
    return out;
  }
  return simplex.run();
}

}  // namespace mlg
