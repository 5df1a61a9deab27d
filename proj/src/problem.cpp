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

#include "mlg/problem.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "mlg/error.hpp"

namespace mlg {

double Subscriber::demand() const {
  double total = 0.0;
  for (double v : sessions) total += v;
  return total;
}

namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorKind::InvalidInput, what);
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

// Subscriber id -> image id on layers 2 and 3.
std::map<std::string, std::string> subscriber_images(
    const DesignProblem& problem) {
  std::set<std::string> taken;
  for (const auto& s : problem.servers) taken.insert(s.id);
  taken.insert(problem.service.id);

  std::vector<std::string> ids;
  for (const auto& u : problem.subscribers) ids.push_back(u.id);
  std::sort(ids.begin(), ids.end());

  std::map<std::string, std::string> images;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    std::string name = "a" + std::to_string(i + 1);
    while (taken.contains(name)) name += "'";
    taken.insert(name);
    images.emplace(ids[i], name);
  }
  return images;
}

}  // namespace

void DesignProblem::validate() const {
  std::set<std::string> ids;
  auto claim = [&](const std::string& id, const std::string& what) {
    if (id.empty()) invalid(what + ": id must be nonempty");
    if (!ids.insert(id).second) invalid(what + ": duplicate id '" + id + "'");
  };
  for (const auto& u : subscribers) {
    claim(u.id, "subscriber");
    for (double v : u.sessions) {
      if (!finite_nonneg(v)) {
        invalid("subscriber '" + u.id + "': session volume must be non-negative");
      }
    }
  }
  for (const auto& s : servers) {
    claim(s.id, "server");
    if (!finite_nonneg(s.productivity)) {
      invalid("server '" + s.id + "': productivity must be non-negative");
    }
  }
  claim(service.id, "service");
  if (!finite_nonneg(service.productivity)) {
    invalid("service '" + service.id + "': productivity must be non-negative");
  }
  for (const auto& z : intermediates) claim(z, "intermediate");

  std::set<std::string> channel_ids;
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& b : channels) {
    if (b.id.empty()) invalid("channel: id must be nonempty");
    if (!channel_ids.insert(b.id).second) {
      invalid("channel: duplicate id '" + b.id + "'");
    }
    for (const auto& end : {b.a, b.b}) {
      if (!ids.contains(end) || end == service.id) {
        invalid("channel '" + b.id + "': unknown endpoint '" + end + "'");
      }
    }
    if (b.a == b.b) invalid("channel '" + b.id + "': both ends are '" + b.a + "'");
    if (!(std::isfinite(b.capacity) && b.capacity > 0.0)) {
      invalid("channel '" + b.id + "': capacity must be positive");
    }
    if (!finite_nonneg(b.cost)) {
      invalid("channel '" + b.id + "': cost must be non-negative");
    }
    if (!pairs.insert(std::minmax(b.a, b.b)).second) {
      invalid("channel '" + b.id + "': parallel channel between '" + b.a +
              "' and '" + b.b + "'");
    }
  }
}

double DesignProblem::total_demand() const {
  double total = 0.0;
  for (const auto& u : subscribers) total += u.demand();
  return total;
}

double DesignProblem::total_productivity() const {
  double total = 0.0;
  for (const auto& s : servers) total += s.productivity;
  return total;
}

bool DesignProblem::operator==(const DesignProblem& other) const {
  auto key = [](const DesignProblem& p) {
    std::vector<std::tuple<std::string, std::vector<double>>> u;
    for (const auto& s : p.subscribers) u.emplace_back(s.id, s.sessions);
    std::vector<std::tuple<std::string, double>> s;
    for (const auto& x : p.servers) s.emplace_back(x.id, x.productivity);
    std::vector<std::tuple<std::string, std::string, std::string, double, double>> b;
    for (const auto& c : p.channels) b.emplace_back(c.id, c.a, c.b, c.capacity, c.cost);
    auto z = p.intermediates;
    std::sort(u.begin(), u.end());
    std::sort(s.begin(), s.end());
    std::sort(b.begin(), b.end());
    std::sort(z.begin(), z.end());
    return std::make_tuple(u, s, p.service.id, p.service.productivity, z, b);
  };
  return key(*this) == key(other);
}

const Channel& BuiltInstance::channel(const std::string& id) const {
  for (const auto& b : problem.channels) {
    if (b.id == id) return b;
  }
  throw Error(ErrorKind::MissingNode, "unknown channel '" + id + "'");
}

double BuiltInstance::server_productivity(const std::string& id) const {
  for (const auto& s : problem.servers) {
    if (s.id == id) return s.productivity;
  }
  throw Error(ErrorKind::MissingNode, "unknown server '" + id + "'");
}

double BuiltInstance::server_capacity(const std::string& id) const {
  auto edge = graph.find_inter_edge(service, {kOverlayLayer, id});
  if (!edge) throw Error(ErrorKind::MissingNode, "unknown server '" + id + "'");
  return graph.inter_edge(*edge).capacity;
}

std::vector<Commodity> derive_commodities(const DesignProblem& problem) {
  const auto images = subscriber_images(problem);
  std::vector<const Subscriber*> sorted;
  for (const auto& u : problem.subscribers) sorted.push_back(&u);
  std::sort(sorted.begin(), sorted.end(),
            [](const Subscriber* a, const Subscriber* b) { return a->id < b->id; });
  std::vector<Commodity> out;
  for (const Subscriber* u : sorted) {
    const double demand = u->demand();
    if (demand <= 0.0) continue;
    out.push_back(Commodity{u->id,
                            {kServiceLayer, problem.service.id},
                            {kServiceLayer, images.at(u->id)},
                            demand});
  }
  return out;
}

BuiltInstance build_redundant_mlg(const DesignProblem& problem,
                                  const BuildOptions& options) {
  problem.validate();

  std::vector<double> productivities;
  for (const auto& s : problem.servers) productivities.push_back(s.productivity);
  const double tol = options.productivity_tol *
                     std::max(1.0, std::abs(problem.service.productivity));
  const auto projection = check_productivity_projection(
      productivities, problem.service.productivity, tol,
      options.productivity_rule);
  if (!projection.ok) {
    throw Error(ErrorKind::ProductivityMismatch,
                "server productivities sum to " +
                    std::to_string(projection.servers_total) +
                    " but the service requires " +
                    std::to_string(projection.service) + " (deficit " +
                    std::to_string(projection.deficit) + ")");
  }
  if (problem.servers.empty() && problem.total_demand() > 0.0) {
    throw Error(ErrorKind::EmptyServerSet,
                "demand is positive but there are no servers");
  }

  BuiltInstance out;
  out.problem = problem;
  out.service = {kServiceLayer, problem.service.id};
  out.subscriber_image = subscriber_images(problem);
  for (const auto& [u, a] : out.subscriber_image) {
    out.subscriber_ids.push_back(u);
    out.image_subscriber.emplace(a, u);
  }
  for (const auto& s : problem.servers) out.server_ids.push_back(s.id);
  std::sort(out.server_ids.begin(), out.server_ids.end());

  std::vector<std::string> images;
  for (const auto& u : out.subscriber_ids) images.push_back(out.subscriber_image.at(u));

  // Physical layer.
  std::vector<std::string> physical = out.subscriber_ids;
  physical.insert(physical.end(), problem.intermediates.begin(),
                  problem.intermediates.end());
  physical.insert(physical.end(), out.server_ids.begin(), out.server_ids.end());
  MultiLayerGraph& g = out.graph;
  g.add_layer(physical);
  for (const auto& b : problem.channels) {
    out.channel_edges.emplace(
        b.id, g.add_intra_edge(kPhysicalLayer, b.a, b.b, b.capacity, b.cost, b.id));
  }

  // Server/subscriber interaction layer.
  std::vector<std::string> overlay = out.server_ids;
  overlay.insert(overlay.end(), images.begin(), images.end());
  g.add_layer(overlay);
  for (std::size_t i = 0; i < out.server_ids.size(); ++i) {
    for (std::size_t j = i + 1; j < out.server_ids.size(); ++j) {
      g.add_intra_edge(kOverlayLayer, out.server_ids[i], out.server_ids[j],
                       kUnbounded, 0.0);
    }
  }
  for (const auto& s : out.server_ids) {
    for (const auto& a : images) g.add_intra_edge(kOverlayLayer, s, a, kUnbounded, 0.0);
  }

  // Service layer: a star around the service node.
  std::vector<std::string> top{problem.service.id};
  top.insert(top.end(), images.begin(), images.end());
  g.add_layer(top);
  for (const auto& a : images) {
    g.add_intra_edge(kServiceLayer, problem.service.id, a, kUnbounded, 0.0);
  }

  for (const auto& a : images) {
    g.add_inter_edge({kServiceLayer, a}, {kOverlayLayer, a}, kUnbounded);
  }
  for (const auto& s : out.server_ids) {
    g.add_inter_edge(out.service, {kOverlayLayer, s}, out.server_productivity(s));
  }
  for (const auto& u : out.subscriber_ids) {
    g.add_inter_edge({kOverlayLayer, out.subscriber_image.at(u)},
                     {kPhysicalLayer, u}, kUnbounded);
  }
  for (const auto& s : out.server_ids) {
    g.add_inter_edge({kOverlayLayer, s}, {kPhysicalLayer, s}, kUnbounded);
  }

  out.commodities = derive_commodities(problem);
  return out;
}

}  // namespace mlg
