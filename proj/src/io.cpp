// Copyright 2026 The trapkit developers
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

#include "trapkit/io.hpp"

#include <fstream>
#include <map>

#include "trapkit/errors.hpp"

namespace trapkit {

namespace {

std::vector<int> mask_to_ids(std::uint64_t mask, const std::vector<int>& ids) {
  std::vector<int> out;
  for (std::size_t v = 0; v < ids.size(); ++v) {
    if ((mask >> v) & 1ULL) out.push_back(ids[v]);
  }
  return out;
}

std::map<int, int> id_index(const std::vector<int>& ids) {
  std::map<int, int> out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto [it, fresh] = out.emplace(ids[i], static_cast<int>(i));
    if (!fresh) throw InvalidInput("duplicate vertex id " + std::to_string(ids[i]));
  }
  return out;
}

int index_of(const std::map<int, int>& index, int id) {
  auto it = index.find(id);
  if (it == index.end()) throw InvalidInput("unknown vertex id " + std::to_string(id));
  return it->second;
}

}  // namespace

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

void save_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << j.dump(2) << "\n";
}

double number_from_json(const Json& j) {
  if (j.is_string()) return to_double(parse_rational(j.get<std::string>()));
  return j.get<double>();
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw InvalidInput("expected a rational (integer or \"p/q\" string)");
}

Json graph_to_json(const OpenGraph& g) {
  Json j;
  j["vertices"] = g.ids;
  Json edges = Json::array();
  for (auto [u, v] : g.edge_list()) edges.push_back({g.ids[u], g.ids[v]});
  j["edges"] = edges;
  j["inputs"] = mask_to_ids(g.inputs, g.ids);
  j["outputs"] = mask_to_ids(g.outputs, g.ids);
  return j;
}

OpenGraph graph_from_json(const Json& j) {
  std::vector<int> ids = j.at("vertices").get<std::vector<int>>();
  if (ids.size() > kGraphMaskLimit) throw CapExceeded("graph beyond 64 vertices");
  OpenGraph g(static_cast<int>(ids.size()));
  g.ids = ids;
  auto index = id_index(ids);
  for (const auto& e : j.at("edges")) {
    g.add_edge(index_of(index, e.at(0).get<int>()), index_of(index, e.at(1).get<int>()));
  }
  if (j.contains("inputs")) {
    for (int id : j.at("inputs")) g.inputs |= 1ULL << index_of(index, id);
  }
  if (j.contains("outputs")) {
    for (int id : j.at("outputs")) g.outputs |= 1ULL << index_of(index, id);
  }
  return g;
}

Json pattern_to_json(const MeasurementPattern& p) {
  Json j;
  j["graph"] = graph_to_json(p.graph);
  Json angles = Json::object();
  for (auto [v, a] : p.angles) angles[std::to_string(p.graph.ids[v])] = a.k();
  j["angles"] = angles;
  Json flow = Json::object();
  for (auto [v, fv] : p.flow.f) flow[std::to_string(p.graph.ids[v])] = p.graph.ids[fv];
  j["flow"] = flow;
  Json order = Json::array();
  for (auto [a, b] : p.extra_order) order.push_back({p.graph.ids[a], p.graph.ids[b]});
  j["order"] = order;
  j["classical_outputs"] = mask_to_ids(p.classical_outputs, p.graph.ids);
  if (p.correction_free != 0) {
    j["correction_free"] = mask_to_ids(p.correction_free, p.graph.ids);
  }
  return j;
}

MeasurementPattern pattern_from_json(const Json& j) {
  MeasurementPattern p;
  p.graph = graph_from_json(j.at("graph"));
  auto index = id_index(p.graph.ids);
  if (j.contains("angles")) {
    for (auto& [key, value] : j.at("angles").items()) {
      p.angles[index_of(index, std::stoi(key))] = Angle(value.get<int>());
    }
  }
  if (j.contains("flow")) {
    for (auto& [key, value] : j.at("flow").items()) {
      p.flow.f[index_of(index, std::stoi(key))] = index_of(index, value.get<int>());
    }
  }
  if (j.contains("order")) {
    for (const auto& e : j.at("order")) {
      p.extra_order.emplace_back(index_of(index, e.at(0).get<int>()),
                                 index_of(index, e.at(1).get<int>()));
    }
  }
  if (j.contains("classical_outputs")) {
    for (int id : j.at("classical_outputs")) {
      p.classical_outputs |= 1ULL << index_of(index, id);
    }
  }
  if (j.contains("correction_free")) {
    for (int id : j.at("correction_free")) {
      p.correction_free |= 1ULL << index_of(index, id);
    }
  }
  return p;
}

Json deviation_to_json(const PauliDeviation& d, const std::vector<int>& ids) {
  Json j = Json::object();
  for (auto [v, p] : d.support) {
    j[std::to_string(ids[v])] = std::string(1, pauli_char(p));
  }
  return j;
}

PauliDeviation deviation_from_json(const Json& j, const OpenGraph& g) {
  auto index = id_index(g.ids);
  PauliDeviation d;
  for (auto& [key, value] : j.items()) {
    std::string s = value.get<std::string>();
    if (s.size() != 1) throw InvalidInput("bad Pauli tag '" + s + "'");
    d.set(index_of(index, std::stoi(key)), pauli_from_char(s[0]));
  }
  return d;
}

namespace {

Json canvas_to_json(const TrappifiedCanvas& c, const std::vector<int>& ids) {
  Json j;
  switch (c.kind) {
    case CanvasKind::Standard: j["kind"] = "standard"; break;
    case CanvasKind::General: j["kind"] = "general"; break;
    case CanvasKind::Custom: j["kind"] = "custom"; break;
  }
  j["H"] = mask_to_ids(c.h_mask, ids);
  Json sigma = Json::object();
  for (auto [v, prep] : c.sigma) sigma[std::to_string(ids[v])] = prep.str();
  j["sigma"] = sigma;
  Json checks = Json::array();
  for (const auto& check : c.decision.parity_checks) {
    Json one = Json::array();
    for (int v : check) one.push_back(ids[v]);
    checks.push_back(one);
  }
  j["checks"] = checks;
  Json angles = Json::object();
  for (auto [v, a] : c.angles) angles[std::to_string(ids[v])] = a.k();
  j["angles"] = angles;
  j["vt"] = mask_to_ids(c.vt, ids);
  j["it"] = mask_to_ids(c.it, ids);
  j["ot"] = mask_to_ids(c.ot, ids);
  return j;
}

TrappifiedCanvas canvas_from_json(const Json& j, const OpenGraph& g) {
  auto index = id_index(g.ids);
  TrappifiedCanvas c;
  c.graph = g;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "standard") {
    c.kind = CanvasKind::Standard;
  } else if (kind == "general") {
    c.kind = CanvasKind::General;
  } else if (kind == "custom") {
    c.kind = CanvasKind::Custom;
  } else {
    throw InvalidInput("unknown canvas kind '" + kind + "'");
  }
  for (int id : j.at("H")) c.h_mask |= 1ULL << index_of(index, id);

  // Standard/general canvases regenerate from H unless explicit fields are
  // present (cluster-block canvases carry their own sigma and vt).
  if (!j.contains("sigma")) {
    if (c.kind == CanvasKind::Standard) return build_standard_trap(g, c.h_mask);
    if (c.kind == CanvasKind::General) return build_general_trap(g, c.h_mask);
    throw InvalidInput("custom canvas needs sigma and checks");
  }
  for (auto& [key, value] : j.at("sigma").items()) {
    c.sigma[index_of(index, std::stoi(key))] = Prep::parse(value.get<std::string>());
  }
  for (const auto& check : j.at("checks")) {
    std::vector<int> one;
    for (int id : check) one.push_back(index_of(index, id));
    c.decision.parity_checks.push_back(one);
  }
  if (j.contains("angles")) {
    for (auto& [key, value] : j.at("angles").items()) {
      c.angles[index_of(index, std::stoi(key))] = Angle(value.get<int>());
    }
  }
  if (j.contains("vt")) {
    for (int id : j.at("vt")) c.vt |= 1ULL << index_of(index, id);
  } else {
    for (auto& [v, p] : c.sigma) c.vt |= 1ULL << v;
  }
  if (j.contains("it")) {
    for (int id : j.at("it")) c.it |= 1ULL << index_of(index, id);
  } else {
    c.it = c.vt;
  }
  if (j.contains("ot")) {
    for (int id : j.at("ot")) c.ot |= 1ULL << index_of(index, id);
  } else {
    for (const auto& check : c.decision.parity_checks) {
      for (int v : check) c.ot |= 1ULL << v;
    }
  }
  return c;
}

}  // namespace

Json scheme_to_json(const TrappifiedScheme& s) {
  Json j;
  j["graph"] = graph_to_json(s.graph);
  Json canvases = Json::array();
  for (const auto& c : s.canvases) canvases.push_back(canvas_to_json(c, s.graph.ids));
  j["canvases"] = canvases;
  Json weights = Json::array();
  for (const auto& w : s.weights) weights.push_back(to_string(w));
  j["weights"] = weights;
  j["embedding"] = s.embedding == EmbeddingKind::DummyIsolated ? "dummy-isolated" : "none";
  return j;
}

TrappifiedScheme scheme_from_json(const Json& j) {
  TrappifiedScheme s;
  s.graph = graph_from_json(j.at("graph"));
  for (const auto& c : j.at("canvases")) s.canvases.push_back(canvas_from_json(c, s.graph));
  for (const auto& w : j.at("weights")) s.weights.push_back(rational_from_json(w));
  if (j.contains("embedding")) {
    std::string e = j.at("embedding").get<std::string>();
    if (e == "dummy-isolated") {
      s.embedding = EmbeddingKind::DummyIsolated;
    } else if (e == "none") {
      s.embedding = EmbeddingKind::None;
    } else {
      throw InvalidInput("unknown embedding '" + e + "'");
    }
  }
  validate_scheme(s);
  return s;
}

Json computation_to_json(const Computation& c) {
  Json j;
  j["pattern"] = pattern_to_json(c.pattern);
  Json input = Json::object();
  for (auto [v, prep] : c.input) input[std::to_string(c.pattern.graph.ids[v])] = prep.str();
  j["input"] = input;
  return j;
}

Computation computation_from_json(const Json& j) {
  Computation c;
  c.pattern = pattern_from_json(j.at("pattern"));
  auto index = id_index(c.pattern.graph.ids);
  if (j.contains("input")) {
    for (auto& [key, value] : j.at("input").items()) {
      c.input[index_of(index, std::stoi(key))] = Prep::parse(value.get<std::string>());
    }
  }
  return c;
}

Json adversary_to_json(const AdversaryStrategy& a, const std::vector<int>& ids) {
  Json j;
  switch (a.kind) {
    case AdversaryStrategy::Kind::Honest:
      j["kind"] = "honest";
      break;
    case AdversaryStrategy::Kind::Fixed:
      j["kind"] = "fixed";
      j["deviation"] = deviation_to_json(a.fixed, ids);
      break;
    case AdversaryStrategy::Kind::Distribution: {
      j["kind"] = "distribution";
      Json items = Json::array();
      for (const auto& [dev, weight] : a.distribution) {
        items.push_back({{"weight", to_string(weight)}, {"deviation", deviation_to_json(dev, ids)}});
      }
      j["items"] = items;
      break;
    }
    case AdversaryStrategy::Kind::Noisy: {
      j["kind"] = "noisy";
      j["p"] = to_string(a.p_noise);
      Json set = Json::array();
      for (const auto& dev : a.noise_set) set.push_back(deviation_to_json(dev, ids));
      j["set"] = set;
      break;
    }
  }
  return j;
}

AdversaryStrategy adversary_from_json(const Json& j, const OpenGraph& g) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "honest") return AdversaryStrategy::honest();
  if (kind == "fixed") {
    return AdversaryStrategy::make_fixed(deviation_from_json(j.at("deviation"), g));
  }
  if (kind == "distribution") {
    std::vector<std::pair<PauliDeviation, Rational>> items;
    for (const auto& item : j.at("items")) {
      items.emplace_back(deviation_from_json(item.at("deviation"), g),
                         rational_from_json(item.at("weight")));
    }
    return AdversaryStrategy::make_distribution(std::move(items));
  }
  if (kind == "noisy") {
    Rational p = rational_from_json(j.at("p"));
    std::vector<PauliDeviation> set;
    if (j.at("set").is_string() && j.at("set").get<std::string>() == "z-single") {
      for (int v = 0; v < g.size(); ++v) set.push_back(PauliDeviation::single(v, Pauli::Z));
    } else {
      for (const auto& dev : j.at("set")) set.push_back(deviation_from_json(dev, g));
    }
    return AdversaryStrategy::make_noisy(p, std::move(set));
  }
  throw InvalidInput("unknown adversary kind '" + kind + "'");
}

std::pair<BoundInputs, CompilerParams> params_from_json(const Json& j) {
  CompilerParams params;
  params.n = j.at("n").get<int>();
  params.d = j.at("d").get<int>();
  params.s = j.at("s").get<int>();
  params.w = j.at("w").get<int>();
  if (j.contains("c")) params.c = number_from_json(j.at("c"));
  BoundInputs in;
  if (j.contains("eps")) in.eps = number_from_json(j.at("eps"));
  if (j.contains("delta")) in.delta = number_from_json(j.at("delta"));
  if (j.contains("nu")) in.nu = number_from_json(j.at("nu"));
  in.k_eps = number_from_json(j.at("k_eps"));
  in.k_delta = number_from_json(j.at("k_delta"));
  in.k_nu = number_from_json(j.at("k_nu"));
  if (j.contains("p_delta")) in.p_delta = number_from_json(j.at("p_delta"));
  return {in, params};
}

}  // namespace trapkit
