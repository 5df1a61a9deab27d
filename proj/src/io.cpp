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

#include "mlg/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "mlg/error.hpp"

namespace mlg {
namespace {

using json = nlohmann::json;

[[noreturn]] void fail(std::string_view source, const std::string& what) {
  throw Error(ErrorKind::InvalidInput, std::string(source) + ": " + what);
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

json parse_json(std::string_view text, std::string_view source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(source, "line " + std::to_string(line_of(text, e.byte)) + ": malformed JSON (" +
                     e.what() + ")");
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorKind::Io, "write to '" + path.string() + "' failed");
}

// Field-path aware accessors for schema checks.
class Reader {
 public:
  Reader(std::string_view source) : source_(source) {}

  void object(const json& j, const std::string& path,
              std::initializer_list<std::string_view> allowed) const {
    if (!j.is_object()) fail(source_, path + ": expected an object");
    for (const auto& [key, value] : j.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        fail(source_, join(path, key) + ": unknown key");
      }
    }
  }

  const json& array(const json& j, const std::string& path) const {
    if (!j.is_array()) fail(source_, path + ": expected an array");
    return j;
  }

  const json& field(const json& j, const std::string& path, const std::string& key) const {
    auto it = j.find(key);
    if (it == j.end()) fail(source_, join(path, key) + ": missing");
    return *it;
  }

  std::string string(const json& j, const std::string& path) const {
    if (!j.is_string()) fail(source_, path + ": expected a string");
    auto s = j.get<std::string>();
    if (s.empty()) fail(source_, path + ": must not be empty");
    return s;
  }

  double number(const json& j, const std::string& path) const {
    if (!j.is_number()) fail(source_, path + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(source_, path + ": must be finite");
    return v;
  }

  bool boolean(const json& j, const std::string& path) const {
    if (!j.is_boolean()) fail(source_, path + ": expected true or false");
    return j.get<bool>();
  }

  static std::string join(const std::string& path, std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
  }
  static std::string index(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
  }

  std::string_view source() const { return source_; }

 private:
  std::string_view source_;
};

ProblemOptions read_options(const Reader& r, const json& j) {
  const std::string path = "options";
  r.object(j, path,
           {"mode", "formulation", "k", "single_homing", "fixed_costs", "tol", "productivity"});
  ProblemOptions o;
  if (j.contains("mode")) {
    const auto v = r.string(j["mode"], path + ".mode");
    if (v == "capacitated") {
      o.mode = DesignMode::Capacitated;
    } else if (v == "uncapacitated") {
      o.mode = DesignMode::Uncapacitated;
    } else {
      fail(r.source(), path + ".mode: expected \"capacitated\" or \"uncapacitated\"");
    }
  }
  if (j.contains("formulation")) {
    const auto v = r.string(j["formulation"], path + ".formulation");
    if (v == "node-link") {
      o.formulation = Formulation::NodeLink;
    } else if (v == "link-path") {
      o.formulation = Formulation::LinkPath;
    } else {
      fail(r.source(), path + ".formulation: expected \"node-link\" or \"link-path\"");
    }
  }
  if (j.contains("k")) {
    const auto& k = j["k"];
    if (!k.is_number_integer() || k.get<long long>() < 1) {
      fail(r.source(), path + ".k: expected a positive integer");
    }
    o.k = k.get<std::size_t>();
  }
  if (j.contains("single_homing")) {
    o.single_homing = r.boolean(j["single_homing"], path + ".single_homing");
  }
  if (j.contains("fixed_costs")) {
    const auto& f = j["fixed_costs"];
    if (!f.is_object()) fail(r.source(), path + ".fixed_costs: expected an object");
    for (const auto& [id, v] : f.items()) {
      const double cost = r.number(v, path + ".fixed_costs." + id);
      if (cost < 0.0) fail(r.source(), path + ".fixed_costs." + id + ": must be non-negative");
      o.fixed_costs[id] = cost;
    }
  }
  if (j.contains("tol")) {
    const double tol = r.number(j["tol"], path + ".tol");
    if (tol <= 0.0) fail(r.source(), path + ".tol: must be positive");
    o.tol = tol;
  }
  if (j.contains("productivity")) {
    const auto v = r.string(j["productivity"], path + ".productivity");
    if (v == "equal") {
      o.productivity = ProductivityRule::Equal;
    } else if (v == "at_least") {
      o.productivity = ProductivityRule::AtLeast;
    } else {
      fail(r.source(), path + ".productivity: expected \"equal\" or \"at_least\"");
    }
  }
  return o;
}

json to_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double double_from(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  return j.get<double>();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string format_number(double v) {
  if (std::isinf(v)) return "inf";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.12g", v);
  return buffer;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

ProblemFile parse_problem_text(std::string_view text, std::string_view source) {
  const json root = parse_json(text, source);
  const Reader r(source);
  r.object(root, "",
           {"subscribers", "servers", "service", "intermediate", "channels", "options"});

  ProblemFile file;
  DesignProblem& p = file.problem;

  const auto& subscribers = r.array(r.field(root, "", "subscribers"), "subscribers");
  for (std::size_t i = 0; i < subscribers.size(); ++i) {
    const std::string path = Reader::index("subscribers", i);
    const auto& s = subscribers[i];
    r.object(s, path, {"id", "sessions"});
    Subscriber u;
    u.id = r.string(r.field(s, path, "id"), path + ".id");
    const auto& sessions = r.array(r.field(s, path, "sessions"), path + ".sessions");
    for (std::size_t k = 0; k < sessions.size(); ++k) {
      const double v = r.number(sessions[k], Reader::index(path + ".sessions", k));
      if (v < 0.0) fail(source, Reader::index(path + ".sessions", k) + ": must be non-negative");
      u.sessions.push_back(v);
    }
    p.subscribers.push_back(std::move(u));
  }

  const auto& servers = r.array(r.field(root, "", "servers"), "servers");
  for (std::size_t i = 0; i < servers.size(); ++i) {
    const std::string path = Reader::index("servers", i);
    r.object(servers[i], path, {"id", "productivity"});
    Server s;
    s.id = r.string(r.field(servers[i], path, "id"), path + ".id");
    s.productivity = r.number(r.field(servers[i], path, "productivity"), path + ".productivity");
    p.servers.push_back(std::move(s));
  }

  const auto& service = r.field(root, "", "service");
  r.object(service, "service", {"id", "productivity"});
  p.service.id = r.string(r.field(service, "service", "id"), "service.id");
  p.service.productivity =
      r.number(r.field(service, "service", "productivity"), "service.productivity");

  if (root.contains("intermediate")) {
    const auto& inter = r.array(root["intermediate"], "intermediate");
    for (std::size_t i = 0; i < inter.size(); ++i) {
      const std::string path = Reader::index("intermediate", i);
      r.object(inter[i], path, {"id"});
      p.intermediates.push_back(r.string(r.field(inter[i], path, "id"), path + ".id"));
    }
  }

  const auto& channels = r.array(r.field(root, "", "channels"), "channels");
  for (std::size_t i = 0; i < channels.size(); ++i) {
    const std::string path = Reader::index("channels", i);
    const auto& c = channels[i];
    r.object(c, path, {"id", "ends", "capacity", "cost"});
    Channel b;
    b.id = r.string(r.field(c, path, "id"), path + ".id");
    const auto& ends = r.array(r.field(c, path, "ends"), path + ".ends");
    if (ends.size() != 2) fail(source, path + ".ends: expected exactly two node ids");
    b.a = r.string(ends[0], path + ".ends[0]");
    b.b = r.string(ends[1], path + ".ends[1]");
    b.capacity = r.number(r.field(c, path, "capacity"), path + ".capacity");
    if (c.contains("cost")) b.cost = r.number(c["cost"], path + ".cost");
    p.channels.push_back(std::move(b));
  }

  if (root.contains("options")) file.options = read_options(r, root["options"]);

  try {
    p.validate();
  } catch (const Error& e) {
    fail(source, e.what());
  }
  return file;
}

ProblemFile parse_problem_file(const std::filesystem::path& path) {
  return parse_problem_text(read_file(path), path.string());
}

DesignProblem parse_problem(const std::filesystem::path& path) {
  return parse_problem_file(path).problem;
}

std::map<std::string, double> parse_fixed_costs_text(std::string_view text,
                                                     std::string_view source) {
  const json root = parse_json(text, source);
  const Reader r(source);
  if (!root.is_object()) fail(source, "expected an object of channel id -> fixed cost");
  std::map<std::string, double> out;
  for (const auto& [id, v] : root.items()) {
    const double cost = r.number(v, id);
    if (cost < 0.0) fail(source, id + ": must be non-negative");
    out[id] = cost;
  }
  return out;
}

std::map<std::string, double> parse_fixed_costs(const std::filesystem::path& path) {
  return parse_fixed_costs_text(read_file(path), path.string());
}

std::string serialize_problem(const ProblemFile& file) {
  const DesignProblem& p = file.problem;
  json root = json::object();

  auto subscribers = p.subscribers;
  std::ranges::sort(subscribers, {}, &Subscriber::id);
  root["subscribers"] = json::array();
  for (const auto& u : subscribers) {
    root["subscribers"].push_back({{"id", u.id}, {"sessions", u.sessions}});
  }

  auto servers = p.servers;
  std::ranges::sort(servers, {}, &Server::id);
  root["servers"] = json::array();
  for (const auto& s : servers) {
    root["servers"].push_back({{"id", s.id}, {"productivity", s.productivity}});
  }
  root["service"] = {{"id", p.service.id}, {"productivity", p.service.productivity}};

  auto intermediates = p.intermediates;
  std::ranges::sort(intermediates);
  root["intermediate"] = json::array();
  for (const auto& z : intermediates) root["intermediate"].push_back({{"id", z}});

  auto channels = p.channels;
  std::ranges::sort(channels, {}, &Channel::id);
  root["channels"] = json::array();
  for (const auto& c : channels) {
    root["channels"].push_back({{"id", c.id},
                                {"ends", json::array({c.a, c.b})},
                                {"capacity", c.capacity},
                                {"cost", c.cost}});
  }

  const ProblemOptions& o = file.options;
  json options = json::object();
  if (o.mode) options["mode"] = to_string(*o.mode);
  if (o.formulation) options["formulation"] = to_string(*o.formulation);
  if (o.k) options["k"] = *o.k;
  if (o.single_homing) options["single_homing"] = *o.single_homing;
  if (!o.fixed_costs.empty()) options["fixed_costs"] = o.fixed_costs;
  if (o.tol) options["tol"] = *o.tol;
  if (o.productivity) {
    options["productivity"] = *o.productivity == ProductivityRule::Equal ? "equal" : "at_least";
  }
  if (!options.empty()) root["options"] = options;
  return dump(root);
}

void write_problem(const ProblemFile& file, const std::filesystem::path& path) {
  write_file(path, serialize_problem(file));
}

std::string serialize_solution(const ProjectReport& report) {
  json root = json::object();
  root["status"] = report.status;
  root["objective"] = report.objective;

  json selected = json::array();
  json channels = json::array();
  for (const auto& c : report.channels) {
    selected.push_back(c.id);
    channels.push_back({{"id", c.id},
                        {"flow", c.flow},
                        {"capacity", to_json(c.capacity)},
                        {"utilization", c.utilization}});
  }
  root["selected_channels"] = selected;
  root["channels"] = channels;

  json assignments = json::array();
  for (const auto& a : report.assignments) {
    json served = json::array();
    for (const auto& s : a.served) {
      served.push_back({{"subscriber", s.subscriber}, {"volume", s.volume}});
    }
    assignments.push_back({{"server", a.server},
                           {"served", served},
                           {"load", a.load},
                           {"productivity", a.productivity},
                           {"residual", a.residual}});
  }
  root["assignments"] = assignments;

  json routes = json::array();
  for (const auto& r : report.routes) {
    routes.push_back({{"commodity", r.commodity},
                      {"server", r.server},
                      {"nodes", r.nodes},
                      {"flow", r.flow}});
  }
  root["routes"] = routes;

  json flows = json::object();
  for (const auto& [label, flow] : report.per_edge_flow) flows[label] = flow;
  root["per_edge_flow"] = flows;

  const auto& v = report.validation;
  root["validation"] = {{"ok", v.ok},
                        {"conservation", v.conservation_ok},
                        {"capacity", v.capacity_ok},
                        {"productivity", v.productivity_ok},
                        {"messages", v.messages}};
  root["certificate"] = report.certificate;
  return dump(root);
}

ProjectReport parse_solution_text(std::string_view text, std::string_view source) {
  const json root = parse_json(text, source);
  try {
    ProjectReport report;
    report.status = root.at("status").get<std::string>();
    report.objective = root.at("objective").get<double>();
    for (const auto& c : root.at("channels")) {
      report.channels.push_back({c.at("id").get<std::string>(), c.at("flow").get<double>(),
                                 double_from(c.at("capacity")),
                                 c.at("utilization").get<double>()});
    }
    for (const auto& a : root.at("assignments")) {
      ServerAssignment s;
      s.server = a.at("server").get<std::string>();
      for (const auto& v : a.at("served")) {
        s.served.push_back({v.at("subscriber").get<std::string>(), v.at("volume").get<double>()});
      }
      s.load = a.at("load").get<double>();
      s.productivity = a.at("productivity").get<double>();
      s.residual = a.at("residual").get<double>();
      report.assignments.push_back(std::move(s));
    }
    for (const auto& r : root.at("routes")) {
      report.routes.push_back({r.at("commodity").get<std::string>(),
                               r.at("server").get<std::string>(),
                               r.at("nodes").get<std::vector<std::string>>(),
                               r.at("flow").get<double>()});
    }
    for (const auto& [label, flow] : root.at("per_edge_flow").items()) {
      report.per_edge_flow[label] = flow.get<double>();
    }
    const auto& v = root.at("validation");
    report.validation.ok = v.at("ok").get<bool>();
    report.validation.conservation_ok = v.at("conservation").get<bool>();
    report.validation.capacity_ok = v.at("capacity").get<bool>();
    report.validation.productivity_ok = v.at("productivity").get<bool>();
    report.validation.messages = v.at("messages").get<std::vector<std::string>>();
    report.certificate = root.at("certificate").get<std::vector<std::string>>();
    return report;
  } catch (const json::exception& e) {
    fail(source, std::string("malformed solution file (") + e.what() + ")");
  }
}

void write_solution(const ProjectReport& report, const std::filesystem::path& path) {
  write_file(path, serialize_solution(report));
}

std::string render_dot(const MultiLayerGraph& graph, const DotOptions& options) {
  auto node_name = [](int layer, const std::string& id) {
    return quote(id + "@" + std::to_string(layer));
  };
  auto label = [&](double flow, double capacity) {
    const std::string c = format_number(capacity);
    return options.show_flow ? format_number(flow) + "/" + c : c;
  };

  std::ostringstream out;
  out << "graph " << quote(options.name) << " {\n";
  for (int l = 1; l <= graph.layer_count(); ++l) {
    out << "  subgraph cluster_layer_" << l << " {\n";
    out << "    label=\"layer_" << l << "\";\n";
    for (const auto& id : graph.nodes(l)) {
      out << "    " << node_name(l, id) << " [label=" << quote(id) << "];\n";
    }
    std::vector<const IntraEdge*> edges;
    for (const auto& e : graph.intra_edges(l)) edges.push_back(&e);
    std::ranges::sort(edges, [](const IntraEdge* a, const IntraEdge* b) {
      return std::tie(a->u, a->v, a->name) < std::tie(b->u, b->v, b->name);
    });
    for (const auto* e : edges) {
      out << "    " << node_name(l, e->u) << " -- " << node_name(l, e->v)
          << " [label=" << quote(label(e->flow, e->capacity)) << "];\n";
    }
    out << "  }\n";
  }
  std::vector<const InterEdge*> inter;
  for (const auto& e : graph.inter_edges()) inter.push_back(&e);
  std::ranges::sort(inter, [](const InterEdge* a, const InterEdge* b) {
    return std::tie(a->upper, a->lower) < std::tie(b->upper, b->lower);
  });
  for (const auto* e : inter) {
    out << "  " << node_name(e->upper.layer, e->upper.id) << " -- "
        << node_name(e->lower.layer, e->lower.id) << " [style=dashed, label="
        << quote(label(e->flow, e->capacity)) << "];\n";
  }
  out << "}\n";
  return out.str();
}

void export_dot(const MultiLayerGraph& graph, const std::filesystem::path& path,
                const DotOptions& options) {
  write_file(path, render_dot(graph, options));
}

}  // namespace mlg
