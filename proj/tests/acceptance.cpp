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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mlg/design.hpp"
#include "mlg/io.hpp"
#include "mlg/oracle.hpp"
#include "random_instance.hpp"

namespace fs = std::filesystem;
using namespace mlg;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch() {
  const auto dir = fs::temp_directory_path() / "mlg_acceptance";
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args, std::string& output) {
  const auto log = scratch() / "cli.txt";
  const std::string cmd = std::string("\"") + MLG_CLI_PATH + "\" " + args + " > \"" +
                          log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  output = slurp(log);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string fmt(const char* format, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b);
  return buf;
}

// Feasibility closure of one optimal solution; empty string when it holds.
std::string closure_failure(const BuiltInstance& inst, const DesignSolution& s) {
  if (!check_conservation(inst.graph, s.flows, inst.commodities, 1e-6).ok) return "conservation";
  if (!check_capacities(inst.graph, s.edge_flows, 1e-6).ok) return "capacity";
  for (const auto& [server, load] : s.server_loads) {
    if (load > inst.server_productivity(server) + 1e-6) return "server load on " + server;
  }
  return {};
}

std::string projection_failure(const DesignProblem& p) {
  std::vector<double> servers;
  for (const auto& s : p.servers) servers.push_back(s.productivity);
  const auto report = check_productivity_projection(servers, p.service.productivity, 1e-9);
  return report.ok ? std::string{} : "productivity projection";
}

// Layer-2 edges whose physical endpoints fall in different components of the
// channel graph, computed with a union-find independent of the graph module.
std::set<std::pair<std::string, std::string>> unrealizable_overlay_edges(
    const BuiltInstance& inst) {
  std::map<std::string, std::string> parent;
  std::function<std::string(const std::string&)> find = [&](const std::string& x) {
    auto it = parent.find(x);
    if (it == parent.end() || it->second == x) return x;
    return it->second = find(it->second);
  };
  for (const auto& c : inst.problem.channels) {
    const auto a = find(c.a);
    const auto b = find(c.b);
    if (a != b) parent[a] = b;
  }
  auto physical = [&](const std::string& id) {
    auto it = inst.image_subscriber.find(id);
    return it == inst.image_subscriber.end() ? id : it->second;
  };
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& e : inst.graph.intra_edges(2)) {
    if (find(physical(e.u)) != find(physical(e.v))) out.insert(std::minmax(e.u, e.v));
  }
  return out;
}

struct Criterion {
  int number;
  std::string name;
  Outcome outcome;
  double elapsed = 0.0;
};

}  // namespace

int main() {
  std::vector<Criterion> results;
  auto report = [&](int n, std::string name, Outcome o, double elapsed) {
    results.push_back({n, std::move(name), std::move(o), elapsed});
  };

  const fs::path fixtures = MLG_FIXTURE_DIR;
  Outcome closure;  // criterion 4 accumulates over every optimal run below
  Outcome bounds;   // criterion 6 likewise
  std::size_t closure_checked = 0;
  std::size_t bounds_checked = 0;
  auto audit = [&](const BuiltInstance& inst, const DesignSolution& s, const std::string& tag) {
    if (!s.optimal()) return;
    ++closure_checked;
    if (const auto why = closure_failure(inst, s); !why.empty()) closure.fail(tag + ": " + why);
  };
  auto audit_bound = [&](const DesignSolution& s, const std::string& tag) {
    if (!s.optimal()) return;
    ++bounds_checked;
    if (!(s.objective >= s.relaxation_objective - 1e-9)) {
      bounds.fail(tag + fmt(": integer %.12g below relaxation %.12g", s.objective,
                            s.relaxation_objective));
    }
  };

  // 1. T1 end to end through the CLI, cross-checked against the oracle.
  {
    Outcome o;
    const auto start = Clock::now();
    const auto t1 = (fixtures / "t1.json").string();
    for (const std::string form : {"node-link", "link-path"}) {
      for (bool single : {false, true}) {
        const auto out = scratch() / "t1.solution.json";
        std::string text;
        const std::string args = "solve \"" + t1 + "\" --formulation " + form +
                                 (single ? " --single-homing" : "") + " -o \"" + out.string() + "\"";
        if (run_cli(args, text) != 0) {
          o.fail(form + ": nonzero exit");
          continue;
        }
        const auto r = parse_solution_text(slurp(out));
        if (std::abs(r.objective - 14.0) > 1e-6) o.fail(form + fmt(": objective %.12g", r.objective));
        std::vector<std::string> channels;
        for (const auto& c : r.channels) channels.push_back(c.id);
        if (channels != std::vector<std::string>{"b1", "b2", "b3", "b4"}) o.fail(form + ": channel set");
        if (single) {
          std::map<std::string, std::vector<std::string>> served;
          for (const auto& a : r.assignments) {
            for (const auto& v : a.served) served[a.server].push_back(v.subscriber);
          }
          const std::map<std::string, std::vector<std::string>> expected{{"s1", {"u1"}},
                                                                         {"s2", {"u2"}}};
          if (served != expected) o.fail(form + ": single-homing assignment");
        }
      }
    }
    const auto inst = build_redundant_mlg(parse_problem(t1));
    DesignOptions single;
    single.single_homing = true;
    const auto exact = brute_force_oracle(inst, single);
    if (!exact.optimal() || std::abs(exact.objective - 14.0) > 1e-6) o.fail("oracle disagrees");
    if (exact.assignment.at("s1").size() != 1 || exact.assignment.at("s1")[0].subscriber != "u1") {
      o.fail("oracle assignment disagrees");
    }
    const double elapsed = seconds_since(start) / 4.0;
    if (elapsed >= 1.0) o.fail(fmt("%.3f s per solve", elapsed));
    report(1, "T1 end-to-end", o, elapsed);
  }

  // 2 and 3 share the seeded instances; 4 and 6 audit every run.
  {
    Outcome eq_oracle;
    Outcome eq_form;
    const mlg::testing::RandomSpec spec;  // defaults are the oracle limits
    std::size_t optimal = 0;
    double oracle_time = 0.0;
    double form_time = 0.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const auto problem = mlg::testing::random_problem(spec, seed);
      const auto inst = build_redundant_mlg(problem);
      const std::string tag = "seed " + std::to_string(seed);
      if (const auto why = projection_failure(problem); !why.empty()) closure.fail(tag + ": " + why);

      auto start = Clock::now();
      const auto exact = brute_force_oracle(inst);
      const auto nl = solve_capacitated(inst);
      oracle_time += seconds_since(start);
      audit(inst, nl, tag + " node-link");
      if (exact.status != nl.status) {
        eq_oracle.fail(tag + ": status differs");
      } else if (exact.optimal()) {
        ++optimal;
        if (std::abs(exact.objective - nl.objective) > 1e-6) {
          eq_oracle.fail(tag + fmt(": oracle %.12g vs %.12g", exact.objective, nl.objective));
        }
      }

      start = Clock::now();
      std::size_t all_paths = 0;
      for (const auto& s : problem.servers) {
        for (const auto& u : problem.subscribers) {
          all_paths = std::max(all_paths, all_simple_paths(inst.graph, 1, s.id, u.id).size());
        }
      }
      DesignOptions lp;
      lp.formulation = Formulation::LinkPath;
      lp.k = std::max<std::size_t>(all_paths, 1);
      const auto paths = solve_capacitated(inst, lp);
      form_time += seconds_since(start);
      audit(inst, paths, tag + " link-path");
      if (paths.status != nl.status) {
        eq_form.fail(tag + ": status differs");
      } else if (nl.optimal() && std::abs(paths.objective - nl.objective) > 1e-6) {
        eq_form.fail(tag + fmt(": node-link %.12g vs link-path %.12g", nl.objective, paths.objective));
      }

      DesignOptions single;
      single.single_homing = true;
      const auto sh = solve_capacitated(inst, single);
      audit(inst, sh, tag + " single-homing");
      audit_bound(sh, tag + " single-homing");

      std::map<std::string, double> fixed;
      for (const auto& c : problem.channels) fixed[c.id] = static_cast<double>(1 + seed % 3);
      const auto unc = solve_uncapacitated(inst, fixed);
      audit(inst, unc, tag + " uncapacitated");
      audit_bound(unc, tag + " uncapacitated");
    }
    if (optimal < 50) eq_oracle.fail("only " + std::to_string(optimal) + " optimal instances");
    if (oracle_time >= 60.0) eq_oracle.fail(fmt("%.1f s", oracle_time));
    eq_oracle.detail = eq_oracle.pass ? std::to_string(optimal) + "/100 optimal" : eq_oracle.detail;
    report(2, "oracle equivalence", eq_oracle, oracle_time);
    report(3, "formulation equivalence", eq_form, form_time);
  }

  // 5. Planted server disconnections.
  {
    Outcome o;
    const auto start = Clock::now();
    mlg::testing::RandomSpec spec;
    spec.max_subscribers = 4;
    spec.max_servers = 3;
    spec.max_intermediates = 3;
    spec.max_channels = 12;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const auto intact = mlg::testing::random_problem(spec, 500 + seed);
      const std::string tag = "seed " + std::to_string(500 + seed);
      if (!validate_overlay(build_redundant_mlg(intact).graph).ok) o.fail(tag + ": false positive");

      const auto& server = intact.servers[seed % intact.servers.size()].id;
      const auto inst = build_redundant_mlg(mlg::testing::without_server_channels(intact, server));
      const auto got = validate_overlay(inst.graph);
      if (got.ok) {
        o.fail(tag + ": disconnection not detected");
        continue;
      }
      std::set<std::pair<std::string, std::string>> named;
      for (const auto& v : got.violations) {
        if (v.edge.kind != EdgeKind::Intra || v.edge.layer != 2) {
          o.fail(tag + ": violation outside layer 2");
          continue;
        }
        const auto& e = inst.graph.intra_edge(v.edge);
        named.insert(std::minmax(e.u, e.v));
      }
      for (const auto& e : inst.graph.intra_edges(2)) {
        if (e.joins(server, e.other(server)) && !named.contains(std::minmax(e.u, e.v))) {
          o.fail(tag + ": incident edge not named");
        }
      }
      if (named != unrealizable_overlay_edges(inst)) o.fail(tag + ": violations differ from union-find");
    }
    report(5, "overlay validation", o, seconds_since(start));
  }

  // 7. Overloaded instances through the CLI.
  {
    Outcome o;
    const auto start = Clock::now();
    std::vector<fs::path> cases{fixtures / "t1_overloaded.json"};
    mlg::testing::RandomSpec spec;
    spec.max_subscribers = 4;
    spec.min_capacity = 100;
    spec.max_capacity = 200;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      auto p = mlg::testing::random_problem(spec, 700 + seed);
      double total = 0.0;
      for (auto& u : p.subscribers) {
        for (double s : u.sessions) total += s;
      }
      // Cut every server so that the total falls below the demand.
      const double share = (total - 1.0) / static_cast<double>(p.servers.size());
      p.service.productivity = 0.0;
      for (auto& s : p.servers) {
        s.productivity = share;
        p.service.productivity += share;
      }
      const auto path = scratch() / ("overloaded_" + std::to_string(seed) + ".json");
      write_problem({p, {}}, path);
      cases.push_back(path);
    }
    for (const auto& path : cases) {
      for (const std::string extra : {"", " --formulation link-path", " --single-homing"}) {
        std::string out;
        const int code = run_cli("solve \"" + path.string() + "\"" + extra, out);
        const std::string tag = path.filename().string() + extra;
        if (code != 1) o.fail(tag + ": exit " + std::to_string(code));
        if (out.find("certificate: phase-1:productivity") == std::string::npos) {
          o.fail(tag + ": no phase-1 productivity certificate");
        }
        if (out.find("certificate: productivity[") == std::string::npos) {
          o.fail(tag + ": no productivity rows");
        }
      }
    }
    report(7, "infeasibility detection", o, seconds_since(start));
  }

  // 8. Scale smoke test.
  {
    Outcome o;
    const auto problem = mlg::testing::scale_problem(1);
    const auto start = Clock::now();
    const auto inst = build_redundant_mlg(problem);
    const auto sol = solve_capacitated(inst);
    const double elapsed = seconds_since(start);
    if (!sol.optimal()) o.fail("not optimal");
    audit(inst, sol, "scale");
    if (const auto why = projection_failure(problem); !why.empty()) closure.fail("scale: " + why);
    if (elapsed >= 10.0) o.fail(fmt("%.2f s", elapsed));
    report(8, "scale smoke test", o, elapsed);
  }

  // 9. Round trip over every fixture.
  {
    Outcome o;
    const auto start = Clock::now();
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(fixtures)) {
      if (entry.path().extension() != ".json") continue;
      ++files;
      const auto name = entry.path().filename().string();
      const auto file = parse_problem_file(entry.path());
      const auto text = serialize_problem(file);
      const auto again = parse_problem_text(text);
      if (!(again == file)) o.fail(name + ": parse(write(x)) != x");
      if (serialize_problem(again) != text) o.fail(name + ": bytes changed on second write");
      const auto path = scratch() / name;
      write_problem(file, path);
      if (slurp(path) != text) o.fail(name + ": file bytes differ");
      write_problem(parse_problem_file(path), path);
      if (slurp(path) != text) o.fail(name + ": rewrite not idempotent");
    }
    if (files == 0) o.fail("no fixtures found");
    report(9, "I/O round trip", o, seconds_since(start));
  }

  closure.detail = closure.pass ? std::to_string(closure_checked) + " solutions" : closure.detail;
  report(4, "feasibility closure", closure, 0.0);
  bounds.detail = bounds.pass ? std::to_string(bounds_checked) + " ILP runs" : bounds.detail;
  if (bounds_checked == 0) bounds.fail("no ILP runs");
  report(6, "bound ordering", bounds, 0.0);

  std::sort(results.begin(), results.end(),
            [](const Criterion& a, const Criterion& b) { return a.number < b.number; });
  bool all = true;
  for (const auto& r : results) {
    const auto& o = r.outcome;
    std::printf("%s criterion %d: %s (%.3f s)%s%s\n", o.pass ? "PASS" : "FAIL", r.number,
                r.name.c_str(), r.elapsed, o.detail.empty() ? "" : " - ", o.detail.c_str());
    all = all && o.pass;
  }
  std::printf("%s: %zu criteria\n", all ? "ALL PASS" : "SOME FAILED", results.size());
  return all ? 0 : 1;
}
