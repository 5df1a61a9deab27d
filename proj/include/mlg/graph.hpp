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

// Multi-layer graph: an ordered stack of ordinary undirected graphs (layers,
// numbered from 1 at the bottom) plus a set of inter-layer edges joining the
// images of one functional unit on different layers.  An intra-edge on any
// layer above the first is an overlay link and must be realizable as a path
// through some lower layer; validate_overlay() checks that on demand.

#ifndef MLG_GRAPH_HPP
#define MLG_GRAPH_HPP

#include <compare>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mlg {

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

struct NodeRef {
  int layer = 0;
  std::string id;

  auto operator<=>(const NodeRef&) const = default;
};

std::string to_string(const NodeRef& node);

enum class EdgeKind { Intra, Inter };

// Stable handle to an edge.  Intra-edges are indexed per layer, inter-edges
// globally (layer is 0 for them).
struct EdgeRef {
  EdgeKind kind = EdgeKind::Intra;
  int layer = 0;
  std::size_t index = 0;

  auto operator<=>(const EdgeRef&) const = default;
};

struct IntraEdge {
  int layer = 0;
  std::string name;
  // Ends in the order they were given; the edge itself is undirected.
  std::string u;
  std::string v;
  double capacity = kUnbounded;
  double cost = 1.0;
  double flow = 0.0;

  bool joins(const std::string& a, const std::string& b) const {
    return (u == a && v == b) || (u == b && v == a);
  }
  const std::string& other(const std::string& end) const {
    return end == u ? v : u;
  }
};

struct InterEdge {
  NodeRef upper;
  NodeRef lower;
  double capacity = kUnbounded;
  double flow = 0.0;
};

struct RealizationPath {
  EdgeRef for_edge;
  int via_layer = 0;
  // upper end, interior nodes (all on via_layer), upper other end
  std::vector<NodeRef> sequence;
  std::vector<EdgeRef> hop_edges;
};

struct ValidationViolation {
  EdgeRef edge;
  std::string reason;
};

struct ValidationReport {
  bool ok = true;
  std::vector<ValidationViolation> violations;
};

class MultiLayerGraph {
 public:
  MultiLayerGraph() = default;

  // Appends a new topmost layer and returns its index (1-based).
  int add_layer(const std::vector<std::string>& nodes);

  EdgeRef add_intra_edge(int layer, const std::string& u, const std::string& v,
                         double capacity, double cost,
                         std::string name = {});
  EdgeRef add_inter_edge(const NodeRef& upper, const NodeRef& lower,
                         double capacity = kUnbounded);

  int layer_count() const { return static_cast<int>(layers_.size()); }
  bool has_node(const NodeRef& node) const;

  // Node ids of a layer in lexicographic order.
  std::vector<std::string> nodes(int layer) const;
  std::size_t node_count(int layer) const;

  const std::vector<IntraEdge>& intra_edges(int layer) const;
  const std::vector<InterEdge>& inter_edges() const { return inter_edges_; }
  const IntraEdge& intra_edge(const EdgeRef& ref) const;
  const InterEdge& inter_edge(const EdgeRef& ref) const;
  IntraEdge& intra_edge(const EdgeRef& ref);
  InterEdge& inter_edge(const EdgeRef& ref);

  // Every edge handle, intra-edges layer by layer first, then inter-edges.
  std::vector<EdgeRef> all_edges() const;
  double capacity(const EdgeRef& ref) const;

  std::optional<EdgeRef> find_intra_edge(int layer, const std::string& u,
                                         const std::string& v) const;
  std::optional<EdgeRef> find_inter_edge(const NodeRef& a,
                                         const NodeRef& b) const;
  std::optional<EdgeRef> find_intra_edge_by_name(int layer,
                                                 const std::string& name) const;

  // (neighbour id, edge index) pairs on the node's own layer.
  const std::vector<std::pair<std::string, std::size_t>>& neighbours(
      const NodeRef& node) const;
  // Lower-layer images of a node reachable over one inter-edge that ends on
  // the given layer, sorted by id.
  std::vector<std::string> images_on(const NodeRef& node, int layer) const;

  void clear_flows();

 private:
  struct Layer {
    std::map<std::string, std::vector<std::pair<std::string, std::size_t>>>
        adjacency;
    std::vector<IntraEdge> edges;
  };

  const Layer& layer_at(int layer) const;
  Layer& layer_at(int layer);
  void require_node(const NodeRef& node) const;

  std::vector<Layer> layers_;
  std::vector<InterEdge> inter_edges_;
  // node -> inter-edge indices touching it
  std::map<NodeRef, std::vector<std::size_t>> inter_index_;
};

// Shortest realization of an overlay edge (fewest lower-layer hops, ties by
// the lexicographically smallest node-id sequence).  The immediately lower
// layer is tried first, then successively lower ones.  Throws
// Error{NoRealization} when no lower layer admits a path.
RealizationPath realization_path(const MultiLayerGraph& graph,
                                 const EdgeRef& edge);

// Checks every intra-edge above layer 1.  Edges are examined in parallel;
// the result is identical to validate_overlay_serial().
ValidationReport validate_overlay(const MultiLayerGraph& graph);
ValidationReport validate_overlay_serial(const MultiLayerGraph& graph);

std::string describe_edge(const MultiLayerGraph& graph, const EdgeRef& edge);

}  // namespace mlg

#endif  // MLG_GRAPH_HPP
