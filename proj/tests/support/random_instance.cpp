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

#include "random_instance.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace mlg::testing {
namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

void add_channels(DesignProblem& p, std::mt19937_64& rng, int target, int min_capacity,
                  int max_capacity, int max_cost) {
  std::vector<std::string> nodes;
  for (const auto& u : p.subscribers) nodes.push_back(u.id);
  for (const auto& s : p.servers) nodes.push_back(s.id);
  for (const auto& z : p.intermediates) nodes.push_back(z);
  std::shuffle(nodes.begin(), nodes.end(), rng);

  std::set<std::pair<std::string, std::string>> used;
  auto add = [&](const std::string& a, const std::string& b) {
    if (a == b || !used.insert(std::minmax(a, b)).second) return false;
    Channel c;
    c.id = "b" + std::to_string(p.channels.size() + 1);
    c.a = a;
    c.b = b;
    c.capacity = uniform(rng, min_capacity, max_capacity);
    c.cost = uniform(rng, 1, max_cost);
    p.channels.push_back(c);
    return true;
  };
  // random spanning tree: attach each node to an earlier one
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    add(nodes[i], nodes[uniform(rng, 0, static_cast<int>(i) - 1)]);
  }
  const std::size_t pairs = nodes.size() * (nodes.size() - 1) / 2;
  while (static_cast<int>(p.channels.size()) < target && used.size() < pairs) {
    const int n = static_cast<int>(nodes.size()) - 1;
    add(nodes[uniform(rng, 0, n)], nodes[uniform(rng, 0, n)]);
  }
}

void split_productivity(DesignProblem& p, std::mt19937_64& rng, int total) {
  // each server gets at least one unit when possible
  std::vector<int> share(p.servers.size(), 0);
  for (int unit = 0; unit < total; ++unit) {
    const int s = unit < static_cast<int>(share.size())
                      ? unit
                      : uniform(rng, 0, static_cast<int>(share.size()) - 1);
    ++share[s];
  }
  for (std::size_t i = 0; i < share.size(); ++i) p.servers[i].productivity = share[i];
  p.service.productivity = total;
}

}  // namespace

DesignProblem random_problem(const RandomSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  DesignProblem p;
  const int subscribers = uniform(rng, spec.min_subscribers, spec.max_subscribers);
  const int servers = uniform(rng, spec.min_servers, spec.max_servers);
  const int intermediates = uniform(rng, spec.min_intermediates, spec.max_intermediates);
  int demand = 0;
  for (int i = 1; i <= subscribers; ++i) {
    const int d = uniform(rng, spec.min_demand, spec.max_demand);
    demand += d;
    p.subscribers.push_back({"u" + std::to_string(i), {static_cast<double>(d)}});
  }
  for (int i = 1; i <= servers; ++i) p.servers.push_back({"s" + std::to_string(i), 0.0});
  for (int i = 1; i <= intermediates; ++i) p.intermediates.push_back("z" + std::to_string(i));
  split_productivity(p, rng, demand + uniform(rng, 0, spec.max_slack));
  add_channels(p, rng, spec.max_channels, spec.min_capacity, spec.max_capacity, spec.max_cost);
  return p;
}

DesignProblem scale_problem(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  DesignProblem p;
  int demand = 0;
  for (int i = 1; i <= 20; ++i) {
    const int d = uniform(rng, 1, 5);
    demand += d;
    p.subscribers.push_back({"u" + std::to_string(i), {static_cast<double>(d)}});
  }
  for (int i = 1; i <= 5; ++i) p.servers.push_back({"s" + std::to_string(i), 0.0});
  for (int i = 1; i <= 10; ++i) p.intermediates.push_back("z" + std::to_string(i));
  split_productivity(p, rng, demand + 10);
  add_channels(p, rng, 60, 20, 60, 3);
  return p;
}

DesignProblem without_server_channels(const DesignProblem& problem,
                                      const std::string& server) {
  DesignProblem out = problem;
  std::erase_if(out.channels,
                [&](const Channel& c) { return c.a == server || c.b == server; });
  return out;
}

DesignProblem t1_problem() {
  DesignProblem p;
  p.subscribers = {{"u1", {3.0}}, {"u2", {4.0}}};
  p.servers = {{"s1", 5.0}, {"s2", 5.0}};
  p.service = {"v0", 10.0};
  p.intermediates = {"z1"};
  p.channels = {{"b1", "u1", "z1", 10.0, 1.0},
                {"b2", "u2", "z1", 10.0, 1.0},
                {"b3", "z1", "s1", 10.0, 1.0},
                {"b4", "z1", "s2", 10.0, 1.0},
                {"b5", "s1", "s2", 10.0, 1.0}};
  return p;
}

}  // namespace mlg::testing
