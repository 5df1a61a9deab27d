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

#include "mlg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include "mlg/error.hpp"

namespace mlg {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::MissingNode: return "MissingNode";
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::ParallelEdge: return "ParallelEdge";
    case ErrorKind::InvalidValue: return "InvalidValue";
    case ErrorKind::LayerOrder: return "LayerOrder";
    case ErrorKind::NoRealization: return "NoRealization";
    case ErrorKind::MissingRealization: return "MissingRealization";
    case ErrorKind::ProductivityMismatch: return "ProductivityMismatch";
    case ErrorKind::EmptyServerSet: return "EmptyServerSet";
    case ErrorKind::UncoveredCommodity: return "UncoveredCommodity";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::MalformedProgram: return "MalformedProgram";
    case ErrorKind::SolverLimit: return "SolverLimit";
    case ErrorKind::LimitsExceeded: return "LimitsExceeded";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

std::string to_string(const NodeRef& node) {
  return node.id + "@" + std::to_string(node.layer);
}

namespace {

void check_capacity(double capacity) {
  if (std::isnan(capacity) || capacity < 0.0) {
    throw Error(ErrorKind::InvalidValue, "capacity must be non-negative");
  }
}

}  // namespace

int MultiLayerGraph::add_layer(const std::vector<std::string>& nodes) {
  Layer layer;
  for (const auto& id : nodes) {
    if (id.empty()) {
      throw Error(ErrorKind::InvalidValue, "node id must be nonempty");
    }
    if (!layer.adjacency.emplace(id, std::vector<std::pair<std::string, std::size_t>>{}).second) {
      throw Error(ErrorKind::DuplicateId,
                  "duplicate node id '" + id + "' in new layer");
    }
  }
  layers_.push_back(std::move(layer));
  return layer_count();
}

const MultiLayerGraph::Layer& MultiLayerGraph::layer_at(int layer) const {
  if (layer < 1 || layer > layer_count()) {
    throw Error(ErrorKind::MissingNode,
                "layer " + std::to_string(layer) + " does not exist");
  }
  return layers_[static_cast<std::size_t>(layer - 1)];
}

MultiLayerGraph::Layer& MultiLayerGraph::layer_at(int layer) {
  return const_cast<Layer&>(std::as_const(*this).layer_at(layer));
}

bool MultiLayerGraph::has_node(const NodeRef& node) const {
  if (node.layer < 1 || node.layer > layer_count()) return false;
  return layers_[static_cast<std::size_t>(node.layer - 1)].adjacency.contains(
      node.id);
}

void MultiLayerGraph::require_node(const NodeRef& node) const {
  if (!has_node(node)) {
    throw Error(ErrorKind::MissingNode, "node " + to_string(node) + " does not exist");
  }
}

std::vector<std::string> MultiLayerGraph::nodes(int layer) const {
  std::vector<std::string> ids;
  for (const auto& [id, adj] : layer_at(layer).adjacency) ids.push_back(id);
  return ids;
}

std::size_t MultiLayerGraph::node_count(int layer) const {
  return layer_at(layer).adjacency.size();
}

EdgeRef MultiLayerGraph::add_intra_edge(int layer, const std::string& u,
                                        const std::string& v, double capacity,
                                        double cost, std::string name) {
  Layer& target = layer_at(layer);
  if (u == v) {
    throw Error(ErrorKind::SelfLoop, "self-loop on node '" + u + "'");
  }
  require_node({layer, u});
  require_node({layer, v});
  check_capacity(capacity);
  if (std::isnan(cost) || cost < 0.0 || std::isinf(cost)) {
    throw Error(ErrorKind::InvalidValue, "cost must be finite and non-negative");
  }
  if (find_intra_edge(layer, u, v)) {
    throw Error(ErrorKind::ParallelEdge,
                "edge " + u + "-" + v + " already exists on layer " +
                    std::to_string(layer));
  }
  if (name.empty()) name = u + "-" + v;
  const std::size_t index = target.edges.size();
  target.edges.push_back(IntraEdge{layer, std::move(name), u, v, capacity, cost, 0.0});
  target.adjacency[u].emplace_back(v, index);
  target.adjacency[v].emplace_back(u, index);
  return EdgeRef{EdgeKind::Intra, layer, index};
}

EdgeRef MultiLayerGraph::add_inter_edge(const NodeRef& upper,
                                        const NodeRef& lower, double capacity) {
  if (upper.layer <= lower.layer) {
    throw Error(ErrorKind::LayerOrder,
                "upper layer must exceed lower layer for inter-edge " +
                    to_string(upper) + " / " + to_string(lower));
  }
  require_node(upper);
  require_node(lower);
  check_capacity(capacity);
  if (find_inter_edge(upper, lower)) {
    throw Error(ErrorKind::ParallelEdge, "inter-edge " + to_string(upper) +
                                             " / " + to_string(lower) +
                                             " already exists");
  }
  const std::size_t index = inter_edges_.size();
  inter_edges_.push_back(InterEdge{upper, lower, capacity, 0.0});
  inter_index_[upper].push_back(index);
  inter_index_[lower].push_back(index);
  return EdgeRef{EdgeKind::Inter, 0, index};
}

const std::vector<IntraEdge>& MultiLayerGraph::intra_edges(int layer) const {
  return layer_at(layer).edges;
}

const IntraEdge& MultiLayerGraph::intra_edge(const EdgeRef& ref) const {
  const auto& edges = layer_at(ref.layer).edges;
  if (ref.kind != EdgeKind::Intra || ref.index >= edges.size()) {
    throw Error(ErrorKind::MissingNode, "invalid intra-edge handle");
  }
  return edges[ref.index];
}

IntraEdge& MultiLayerGraph::intra_edge(const EdgeRef& ref) {
  return const_cast<IntraEdge&>(std::as_const(*this).intra_edge(ref));
}

const InterEdge& MultiLayerGraph::inter_edge(const EdgeRef& ref) const {
  if (ref.kind != EdgeKind::Inter || ref.index >= inter_edges_.size()) {
    throw Error(ErrorKind::MissingNode, "invalid inter-edge handle");
  }
  return inter_edges_[ref.index];
}

InterEdge& MultiLayerGraph::inter_edge(const EdgeRef& ref) {
  return const_cast<InterEdge&>(std::as_const(*this).inter_edge(ref));
}

std::vector<EdgeRef> MultiLayerGraph::all_edges() const {
  std::vector<EdgeRef> refs;
  for (int l = 1; l <= layer_count(); ++l) {
    for (std::size_t i = 0; i < layers_[static_cast<std::size_t>(l - 1)].edges.size(); ++i) {
      refs.push_back({EdgeKind::Intra, l, i});
    }
  }
  for (std::size_t i = 0; i < inter_edges_.size(); ++i) {
    refs.push_back({EdgeKind::Inter, 0, i});
  }
  return refs;
}

double MultiLayerGraph::capacity(const EdgeRef& ref) const {
  return ref.kind == EdgeKind::Intra ? intra_edge(ref).capacity
                                     : inter_edge(ref).capacity;
}

std::optional<EdgeRef> MultiLayerGraph::find_intra_edge(
    int layer, const std::string& u, const std::string& v) const {
  if (layer < 1 || layer > layer_count()) return std::nullopt;
  const Layer& l = layers_[static_cast<std::size_t>(layer - 1)];
  auto it = l.adjacency.find(u);
  if (it == l.adjacency.end()) return std::nullopt;
  for (const auto& [other, index] : it->second) {
    if (other == v) return EdgeRef{EdgeKind::Intra, layer, index};
  }
  return std::nullopt;
}

std::optional<EdgeRef> MultiLayerGraph::find_inter_edge(const NodeRef& a,
                                                        const NodeRef& b) const {
  auto it = inter_index_.find(a);
  if (it == inter_index_.end()) return std::nullopt;
  for (std::size_t index : it->second) {
    const InterEdge& e = inter_edges_[index];
    if ((e.upper == a && e.lower == b) || (e.upper == b && e.lower == a)) {
      return EdgeRef{EdgeKind::Inter, 0, index};
    }
  }
  return std::nullopt;
}

std::optional<EdgeRef> MultiLayerGraph::find_intra_edge_by_name(
    int layer, const std::string& name) const {
  const auto& edges = layer_at(layer).edges;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].name == name) return EdgeRef{EdgeKind::Intra, layer, i};
  }
  return std::nullopt;
}

const std::vector<std::pair<std::string, std::size_t>>&
MultiLayerGraph::neighbours(const NodeRef& node) const {
  const Layer& l = layer_at(node.layer);
  auto it = l.adjacency.find(node.id);
  if (it == l.adjacency.end()) {
    throw Error(ErrorKind::MissingNode, "node " + to_string(node) + " does not exist");
  }
  return it->second;
}

std::vector<std::string> MultiLayerGraph::images_on(const NodeRef& node,
                                                    int layer) const {
  std::vector<std::string> out;
  auto it = inter_index_.find(node);
  if (it == inter_index_.end()) return out;
  for (std::size_t index : it->second) {
    const InterEdge& e = inter_edges_[index];
    const NodeRef& other = e.upper == node ? e.lower : e.upper;
    if (other.layer == layer) out.push_back(other.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void MultiLayerGraph::clear_flows() {
  for (auto& layer : layers_) {
    for (auto& e : layer.edges) e.flow = 0.0;
  }
  for (auto& e : inter_edges_) e.flow = 0.0;
}

std::string describe_edge(const MultiLayerGraph& graph, const EdgeRef& edge) {
  if (edge.kind == EdgeKind::Intra) {
    const IntraEdge& e = graph.intra_edge(edge);
    return "(" + e.u + "," + e.v + ")@" + std::to_string(e.layer);
  }
  const InterEdge& e = graph.inter_edge(edge);
  return "(" + to_string(e.upper) + "," + to_string(e.lower) + ")";
}

namespace {

std::optional<RealizationPath> realize_through(const MultiLayerGraph& graph,
                                               const EdgeRef& ref,
                                               const IntraEdge& edge,
                                               int via) {
  const NodeRef from{edge.layer, edge.u};
  const NodeRef to{edge.layer, edge.v};
  const auto starts = graph.images_on(from, via);
  const auto targets = graph.images_on(to, via);
  if (starts.empty() || targets.empty()) return std::nullopt;

  // Hop distance to the nearest target image.
  std::map<std::string, int> dist;
  std::deque<std::string> queue;
  for (const auto& t : targets) {
    dist.emplace(t, 0);
    queue.push_back(t);
  }
  while (!queue.empty()) {
    const std::string node = queue.front();
    queue.pop_front();
    const int d = dist.at(node);
    for (const auto& [next, index] : graph.neighbours({via, node})) {
      if (dist.emplace(next, d + 1).second) queue.push_back(next);
    }
  }

  const std::string* start = nullptr;
  int best = 0;
  for (const auto& s : starts) {
    auto it = dist.find(s);
    if (it == dist.end()) continue;
    if (start == nullptr || it->second < best) {
      start = &s;
      best = it->second;
    }
  }
  if (start == nullptr) return std::nullopt;

  RealizationPath path;
  path.for_edge = ref;
  path.via_layer = via;
  path.sequence.push_back(from);
  std::string current = *start;
  path.sequence.push_back({via, current});
  for (int d = best; d > 0; --d) {
    const std::pair<std::string, std::size_t>* pick = nullptr;
    for (const auto& candidate : graph.neighbours({via, current})) {
      auto it = dist.find(candidate.first);
      if (it == dist.end() || it->second != d - 1) continue;
      if (pick == nullptr || candidate.first < pick->first) pick = &candidate;
    }
    path.hop_edges.push_back({EdgeKind::Intra, via, pick->second});
    current = pick->first;
    path.sequence.push_back({via, current});
  }
  path.sequence.push_back(to);
  return path;
}

std::optional<std::string> check_edge(const MultiLayerGraph& graph,
                                      const EdgeRef& ref) {
  try {
    realization_path(graph, ref);
    return std::nullopt;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoRealization) throw;
    return std::string(to_string(e.kind()));
  }
}

std::vector<EdgeRef> overlay_edges(const MultiLayerGraph& graph) {
  std::vector<EdgeRef> refs;
  for (int l = 2; l <= graph.layer_count(); ++l) {
    for (std::size_t i = 0; i < graph.intra_edges(l).size(); ++i) {
      refs.push_back({EdgeKind::Intra, l, i});
    }
  }
  return refs;
}

ValidationReport collect(const std::vector<EdgeRef>& refs,
                         const std::vector<std::optional<std::string>>& reasons) {
  ValidationReport report;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (reasons[i]) report.violations.push_back({refs[i], *reasons[i]});
  }
  report.ok = report.violations.empty();
  return report;
}

}  // namespace

RealizationPath realization_path(const MultiLayerGraph& graph,
                                 const EdgeRef& ref) {
  const IntraEdge& edge = graph.intra_edge(ref);
  if (edge.layer <= 1) {
    throw Error(ErrorKind::InvalidValue,
                "layer-1 edges have no realization path");
  }
  for (int via = edge.layer - 1; via >= 1; --via) {
    if (auto path = realize_through(graph, ref, edge, via)) return *path;
  }
  throw Error(ErrorKind::NoRealization,
              "no lower-layer path realizes edge " + describe_edge(graph, ref));
}

ValidationReport validate_overlay_serial(const MultiLayerGraph& graph) {
  const auto refs = overlay_edges(graph);
  std::vector<std::optional<std::string>> reasons(refs.size());
  for (std::size_t i = 0; i < refs.size(); ++i) {
    reasons[i] = check_edge(graph, refs[i]);
  }
  return collect(refs, reasons);
}

ValidationReport validate_overlay(const MultiLayerGraph& graph) {
  const auto refs = overlay_edges(graph);
  std::vector<std::optional<std::string>> reasons(refs.size());
  const auto count = static_cast<std::ptrdiff_t>(refs.size());
#pragma omp parallel for schedule(dynamic, 4) if (count > 32)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    reasons[k] = check_edge(graph, refs[k]);
  }
  return collect(refs, reasons);
}

}  // namespace mlg
