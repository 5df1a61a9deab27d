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

// Design problem statement and its translation into the redundant
// three-layer graph:
//
//   layer 3  service node plus one image per subscriber, star-shaped
//   layer 2  servers and subscriber images; every server-server and
//            server-subscriber pair linked, subscribers never linked
//   layer 1  the physical network: subscribers, intermediates, servers and
//            every candidate channel
//
// Subscriber images on layers 2 and 3 are named "a1", "a2", ... in
// subscriber-id order.

#ifndef MLG_PROBLEM_HPP
#define MLG_PROBLEM_HPP

#include <map>
#include <string>
#include <vector>

#include "mlg/flow.hpp"
#include "mlg/graph.hpp"

namespace mlg {

inline constexpr int kPhysicalLayer = 1;
inline constexpr int kOverlayLayer = 2;
inline constexpr int kServiceLayer = 3;

struct Subscriber {
  std::string id;
  std::vector<double> sessions;

  double demand() const;
};

struct Server {
  std::string id;
  double productivity = 0.0;
};

struct Service {
  std::string id = "v0";
  double productivity = 0.0;
};

struct Channel {
  std::string id;
  std::string a;
  std::string b;
  double capacity = 0.0;
  double cost = 1.0;
};

struct DesignProblem {
  std::vector<Subscriber> subscribers;
  std::vector<Server> servers;
  Service service;
  std::vector<std::string> intermediates;
  std::vector<Channel> channels;

  // Throws Error{InvalidInput} naming the offending record.
  void validate() const;
  double total_demand() const;
  double total_productivity() const;

  bool operator==(const DesignProblem&) const;
};

struct BuildOptions {
  ProductivityRule productivity_rule = ProductivityRule::Equal;
  // relative to max(1, service productivity)
  double productivity_tol = 1e-9;
};

struct BuiltInstance {
  DesignProblem problem;
  MultiLayerGraph graph;
  std::vector<Commodity> commodities;
  NodeRef service;
  std::vector<std::string> subscriber_ids;  // sorted
  std::vector<std::string> server_ids;      // sorted
  std::map<std::string, std::string> subscriber_image;  // u_i -> a_i
  std::map<std::string, std::string> image_subscriber;  // a_i -> u_i
  std::map<std::string, EdgeRef> channel_edges;          // b_i -> layer-1 edge

  const Channel& channel(const std::string& id) const;
  double server_productivity(const std::string& id) const;
  double server_capacity(const std::string& id) const;  // on (v0, s) inter-edge
};

BuiltInstance build_redundant_mlg(const DesignProblem& problem,
                                  const BuildOptions& options = {});

// One commodity per subscriber with positive demand, sorted by subscriber id.
std::vector<Commodity> derive_commodities(const DesignProblem& problem);

}  // namespace mlg

#endif  // MLG_PROBLEM_HPP
