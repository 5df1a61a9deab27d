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

#include "mlg/paths.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <tuple>

#include "mlg/error.hpp"

namespace mlg {

namespace {

using Label = std::pair<double, std::vector<std::string>>;

struct Bans {
  std::set<std::string> nodes;
  std::set<std::size_t> edges;
};

// Dijkstra keyed on (cost, node sequence); the prefix property of that order
// makes the first settled label at the target the lexicographic minimum.
std::optional<std::vector<std::string>> shortest(const MultiLayerGraph& graph,
                                                 int layer,
                                                 const std::string& from,
                                                 const std::string& to,
                                                 const Bans& bans) {
  std::map<std::string, Label> best;
  std::set<Label> frontier;
  std::set<std::string> settled;
  best[from] = {0.0, {from}};
  frontier.insert(best[from]);
  const auto& edges = graph.intra_edges(layer);
  while (!frontier.empty()) {
    Label label = *frontier.begin();
    frontier.erase(frontier.begin());
    const std::string node = label.second.back();
    if (!settled.insert(node).second) continue;
    if (node == to) return label.second;
    for (const auto& [next, index] : graph.neighbours({layer, node})) {
      if (settled.contains(next) || bans.nodes.contains(next) ||
          bans.edges.contains(index)) {
        continue;
      }
      Label candidate{label.first + edges[index].cost, label.second};
      candidate.second.push_back(next);
      auto it = best.find(next);
      if (it == best.end() || candidate < it->second) {
        if (it != best.end()) frontier.erase(it->second);
        best[next] = candidate;
        frontier.insert(std::move(candidate));
      }
    }
  }
  return std::nullopt;
}

CandidatePath make_path(const MultiLayerGraph& graph, int layer,
                        std::vector<std::string> nodes) {
  CandidatePath path;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    auto edge = graph.find_intra_edge(layer, nodes[i], nodes[i + 1]);
    path.edges.push_back(*edge);
    path.cost += graph.intra_edge(*edge).cost;
  }
  path.server = nodes.front();
  path.nodes = std::move(nodes);
  return path;
}

}  // namespace

std::vector<CandidatePath> k_shortest_paths(const MultiLayerGraph& graph,
                                            int layer, const std::string& from,
                                            const std::string& to,
                                            std::size_t k) {
  if (k == 0) throw Error(ErrorKind::InvalidValue, "k must be at least 1");
  std::vector<CandidatePath> accepted;
  if (!graph.has_node({layer, from}) || !graph.has_node({layer, to})) return accepted;
  auto first = shortest(graph, layer, from, to, {});
  if (!first) return accepted;
  accepted.push_back(make_path(graph, layer, std::move(*first)));

  auto order = [](const CandidatePath& a, const CandidatePath& b) {
    return a.key() < b.key();
  };
  std::set<CandidatePath, decltype(order)> pending(order);
  std::set<std::vector<std::string>> seen{accepted.front().nodes};

  while (accepted.size() < k) {
    const std::vector<std::string> previous = accepted.back().nodes;
    for (std::size_t i = 0; i + 1 < previous.size(); ++i) {
      const std::vector<std::string> root(previous.begin(),
                                          previous.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      Bans bans;
      for (const auto& path : accepted) {
        if (path.nodes.size() > i + 1 &&
            std::equal(root.begin(), root.end(), path.nodes.begin())) {
          bans.edges.insert(path.edges[i].index);
        }
      }
      for (std::size_t r = 0; r < i; ++r) bans.nodes.insert(root[r]);
      auto spur = shortest(graph, layer, previous[i], to, bans);
      if (!spur) continue;
      std::vector<std::string> total = root;
      total.insert(total.end(), spur->begin() + 1, spur->end());
      if (seen.insert(total).second) pending.insert(make_path(graph, layer, std::move(total)));
    }
    if (pending.empty()) break;
    accepted.push_back(*pending.begin());
    pending.erase(pending.begin());
  }
  return accepted;
}

std::vector<CandidatePath> enumerate_candidate_paths(
    const BuiltInstance& instance, const Commodity& commodity, std::size_t k) {
  const std::string& subscriber = instance.image_subscriber.at(commodity.sink.id);
  std::vector<CandidatePath> out;
  for (const auto& server : instance.server_ids) {
    auto paths = k_shortest_paths(instance.graph, kPhysicalLayer, server,
                                  subscriber, k);
    out.insert(out.end(), std::make_move_iterator(paths.begin()),
               std::make_move_iterator(paths.end()));
  }
  std::sort(out.begin(), out.end(), [](const CandidatePath& a, const CandidatePath& b) {
    return a.key() < b.key();
  });
  return out;
}

CandidatePathSet enumerate_candidate_paths(const BuiltInstance& instance,
                                           std::size_t k) {
  CandidatePathSet set;
  for (const auto& commodity : instance.commodities) {
    set[commodity.id] = enumerate_candidate_paths(instance, commodity, k);
  }
  return set;
}

}  // namespace mlg
