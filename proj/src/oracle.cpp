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

#include "mlg/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "mlg/error.hpp"

namespace mlg {
namespace {

using Rational = boost::multiprecision::cpp_rational;

// min c.x  s.t.  a x (<= | =) b,  x >= 0,  b >= 0.
struct ExactProgram {
  std::size_t cols = 0;
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  std::vector<bool> equality;
  std::vector<Rational> cost;

  std::size_t add_row(bool eq, Rational rhs) {
    a.emplace_back(cols, Rational(0));
    b.push_back(std::move(rhs));
    equality.push_back(eq);
    return a.size() - 1;
  }
};

class ExactTableau {
 public:
  explicit ExactTableau(const ExactProgram& p) : m_(p.a.size()), n_(p.cols) {
    std::size_t slacks = 0;
    std::size_t arts = 0;
    for (bool eq : p.equality) (eq ? arts : slacks)++;
    width_ = n_ + slacks + arts;
    first_art_ = n_ + slacks;
    t_.assign(m_, std::vector<Rational>(width_ + 1, Rational(0)));
    basis_.assign(m_, 0);
    std::size_t s = n_;
    std::size_t r = first_art_;
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) t_[i][j] = p.a[i][j];
      t_[i][width_] = p.b[i];
      const std::size_t col = p.equality[i] ? r++ : s++;
      t_[i][col] = 1;
      basis_[i] = col;
    }
    cost_.assign(width_, Rational(0));
    for (std::size_t j = 0; j < n_; ++j) cost_[j] = p.cost[j];
  }

  // nullopt when infeasible.
  std::optional<std::vector<Rational>> solve() {
    std::vector<Rational> phase1(width_, Rational(0));
    for (std::size_t j = first_art_; j < width_; ++j) phase1[j] = 1;
    if (run(phase1, width_) > 0) return std::nullopt;
    drive_out_artificials();
    run(cost_, first_art_);
    std::vector<Rational> x(n_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = t_[i][width_];
    }
    return x;
  }

 private:
  void pivot(std::size_t row, std::size_t col) {
    const Rational p = t_[row][col];
    for (auto& v : t_[row]) v /= p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row || t_[i][col] == 0) continue;
      const Rational f = t_[i][col];
      for (std::size_t j = 0; j <= width_; ++j) {
        if (t_[row][j] != 0) t_[i][j] -= f * t_[row][j];
      }
    }
    basis_[row] = col;
  }

  // Bland's rule over columns [0, allowed).  Returns the optimal value.
  Rational run(const std::vector<Rational>& c, std::size_t allowed) {
    while (true) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < allowed && !enter; ++j) {
        Rational reduced = c[j];
        for (std::size_t i = 0; i < m_; ++i) reduced -= c[basis_[i]] * t_[i][j];
        if (reduced < 0) enter = j;
      }
      if (!enter) break;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (t_[i][*enter] <= 0) continue;
        const Rational ratio = t_[i][width_] / t_[i][*enter];
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) throw Error(ErrorKind::SolverLimit, "exact program is unbounded");
      pivot(*leave, *enter);
    }
    Rational value = 0;
    for (std::size_t i = 0; i < m_; ++i) value += c[basis_[i]] * t_[i][width_];
    return value;
  }

  // Rows whose artificial cannot leave are redundant; they stay with a zero
  // right-hand side and never constrain phase 2.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < first_art_) continue;
      for (std::size_t j = 0; j < first_art_; ++j) {
        if (t_[i][j] != 0) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t width_ = 0;
  std::size_t first_art_ = 0;
  std::vector<std::vector<Rational>> t_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> cost_;
};

struct PathColumn {
  std::size_t commodity = 0;
  std::size_t server = 0;
  const std::vector<std::string>* nodes = nullptr;
  std::vector<std::size_t> channels;
  Rational cost;
};

struct Candidate {
  Rational objective;
  std::vector<PathColumn> columns;
  std::vector<Rational> x;
  std::vector<bool> open;
};

void check_limits(const BuiltInstance& instance, const OracleLimits& limits) {
  const auto& p = instance.problem;
  const std::size_t physical =
      p.subscribers.size() + p.servers.size() + p.intermediates.size();
  if (instance.commodities.size() > limits.max_commodities ||
      p.channels.size() > limits.max_channels || physical > limits.max_physical_nodes) {
    throw Error(ErrorKind::LimitsExceeded,
                "instance too large for exhaustive search: " +
                    std::to_string(instance.commodities.size()) + " commodities, " +
                    std::to_string(p.channels.size()) + " channels, " +
                    std::to_string(physical) + " physical nodes");
  }
}

}  // namespace

std::vector<std::vector<std::string>> all_simple_paths(const MultiLayerGraph& graph,
                                                       int layer,
                                                       const std::string& from,
                                                       const std::string& to) {
  std::map<std::string, std::set<std::string>> adjacent;
  for (const auto& e : graph.intra_edges(layer)) {
    adjacent[e.u].insert(e.v);
    adjacent[e.v].insert(e.u);
  }
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> stack{from};
  std::set<std::string> on_path{from};
  std::function<void(const std::string&)> extend = [&](const std::string& node) {
    if (node == to) {
      out.push_back(stack);
      return;
    }
    for (const auto& next : adjacent[node]) {
      if (on_path.contains(next)) continue;
      stack.push_back(next);
      on_path.insert(next);
      extend(next);
      on_path.erase(next);
      stack.pop_back();
    }
  };
  extend(from);
  return out;
}

DesignSolution brute_force_oracle(const BuiltInstance& instance,
                                  const DesignOptions& options,
                                  const OracleLimits& limits) {
  check_limits(instance, limits);
  const auto& problem = instance.problem;

  std::vector<const Channel*> channels;
  for (const auto& c : problem.channels) channels.push_back(&c);
  std::ranges::sort(channels, {}, &Channel::id);
  std::map<std::pair<std::string, std::string>, std::size_t> channel_between;
  for (std::size_t i = 0; i < channels.size(); ++i) {
    channel_between[std::minmax(channels[i]->a, channels[i]->b)] = i;
  }
  const bool uncapacitated = options.mode == DesignMode::Uncapacitated;
  std::vector<Rational> fixed(channels.size(), Rational(0));
  if (uncapacitated) {
    for (const auto& [id, cost] : options.fixed_costs) {
      auto it = std::ranges::find(channels, id, &Channel::id);
      if (it == channels.end()) {
        throw Error(ErrorKind::InvalidInput, "fixed cost given for unknown channel '" + id + "'");
      }
      fixed[it - channels.begin()] = Rational(cost);
    }
  }

  std::vector<Server> servers = problem.servers;
  std::ranges::sort(servers, {}, &Server::id);
  const auto& commodities = instance.commodities;

  // paths[k][s]: every simple route from server s to the subscriber of k
  std::vector<std::vector<std::vector<std::vector<std::string>>>> paths(commodities.size());
  std::vector<PathColumn> every_column;
  for (std::size_t k = 0; k < commodities.size(); ++k) {
    const std::string& subscriber = instance.image_subscriber.at(commodities[k].sink.id);
    for (const auto& s : servers) {
      paths[k].push_back(all_simple_paths(instance.graph, kPhysicalLayer, s.id, subscriber));
    }
  }
  for (std::size_t k = 0; k < commodities.size(); ++k) {
    for (std::size_t s = 0; s < servers.size(); ++s) {
      for (const auto& nodes : paths[k][s]) {
        PathColumn col{k, s, &nodes, {}, Rational(0)};
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
          const std::size_t b = channel_between.at(std::minmax(nodes[i], nodes[i + 1]));
          col.channels.push_back(b);
          col.cost += Rational(channels[b]->cost);
        }
        every_column.push_back(std::move(col));
      }
    }
  }

  std::optional<Candidate> best;
  auto evaluate = [&](const std::vector<std::size_t>* assigned, const std::vector<bool>& open) {
    std::vector<PathColumn> columns;
    for (const auto& col : every_column) {
      if (assigned && (*assigned)[col.commodity] != col.server) continue;
      if (std::ranges::any_of(col.channels, [&](std::size_t b) { return !open[b]; })) continue;
      columns.push_back(col);
    }
    ExactProgram lp;
    lp.cols = columns.size();
    for (const auto& col : columns) lp.cost.push_back(col.cost);
    for (std::size_t k = 0; k < commodities.size(); ++k) {
      const std::size_t row = lp.add_row(true, Rational(commodities[k].demand));
      bool covered = false;
      for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].commodity == k) {
          lp.a[row][j] = 1;
          covered = true;
        }
      }
      if (!covered) return;
    }
    for (std::size_t b = 0; b < channels.size(); ++b) {
      const std::size_t row = lp.add_row(false, Rational(channels[b]->capacity));
      for (std::size_t j = 0; j < columns.size(); ++j) {
        for (std::size_t used : columns[j].channels) {
          if (used == b) lp.a[row][j] += 1;
        }
      }
    }
    for (std::size_t s = 0; s < servers.size(); ++s) {
      const std::size_t row = lp.add_row(false, Rational(servers[s].productivity));
      for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].server == s) lp.a[row][j] = 1;
      }
    }
    auto x = ExactTableau(lp).solve();
    if (!x) return;
    Rational objective = 0;
    for (std::size_t j = 0; j < columns.size(); ++j) objective += lp.cost[j] * (*x)[j];
    for (std::size_t b = 0; b < channels.size(); ++b) {
      if (uncapacitated && open[b]) objective += fixed[b];
    }
    // enumeration runs in ascending tie-key order, so equal objectives keep
    // the earlier candidate
    if (!best || objective < best->objective) {
      best = Candidate{objective, std::move(columns), std::move(*x), open};
    }
  };

  std::vector<std::vector<bool>> subsets;
  if (uncapacitated) {
    const std::size_t n = channels.size();
    for (std::size_t v = 0; v < (std::size_t{1} << n); ++v) {
      std::vector<bool> open(n);
      for (std::size_t i = 0; i < n; ++i) open[i] = (v >> (n - 1 - i)) & 1;
      subsets.push_back(std::move(open));
    }
  } else {
    subsets.emplace_back(channels.size(), true);
  }

  if (options.single_homing) {
    std::vector<std::size_t> assigned(commodities.size(), 0);
    if (!servers.empty()) {
      while (true) {
        for (const auto& open : subsets) evaluate(&assigned, open);
        std::size_t pos = assigned.size();
        while (pos > 0 && ++assigned[pos - 1] == servers.size()) assigned[--pos] = 0;
        if (pos == 0) break;
      }
    }
  } else {
    for (const auto& open : subsets) evaluate(nullptr, open);
  }

  if (!best) {
    DesignSolution out;
    out.status = LpStatus::Infeasible;
    out.server_ids = instance.server_ids;
    out.certificate = InfeasibilityCertificate{"enumeration", {}, {}};
    return out;
  }

  std::vector<Route> routes;
  for (std::size_t j = 0; j < best->columns.size(); ++j) {
    if (best->x[j] == 0) continue;
    const auto& col = best->columns[j];
    routes.push_back(Route{commodities[col.commodity].id, servers[col.server].id,
                           *col.nodes, best->x[j].convert_to<double>()});
  }
  DesignSolution out = assemble_solution(instance, routes, best->objective.convert_to<double>());
  out.integral = options.single_homing || uncapacitated;
  if (uncapacitated) {
    out.selected_channels.clear();
    for (std::size_t b = 0; b < channels.size(); ++b) {
      if (best->open[b]) out.selected_channels.push_back(channels[b]->id);
    }
  }
  return out;
}

}  // namespace mlg
