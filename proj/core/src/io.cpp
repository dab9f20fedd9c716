#include "rainbow/io.hpp"

#include <json.hpp>

#include "rainbow/errors.hpp"

namespace rainbow {

using ordered_json = nlohmann::ordered_json;

std::string mode_name(SolveMode mode) {
  switch (mode) {
    case SolveMode::proof_faithful: return "proof-faithful";
    case SolveMode::greedy: return "greedy";
    case SolveMode::hybrid: return "hybrid";
  }
  return "?";
}

std::optional<SolveMode> mode_from_name(const std::string& name) {
  if (name == "proof-faithful") return SolveMode::proof_faithful;
  if (name == "greedy") return SolveMode::greedy;
  if (name == "hybrid") return SolveMode::hybrid;
  return std::nullopt;
}

namespace {

ordered_json matroid_to_json(const Matroid& m) {
  ordered_json j;
  switch (m.backend()) {
    case Matroid::Backend::uniform:
      j["type"] = "uniform";
      j["elements"] = m.ground_size();
      j["rank"] = m.uniform_rank();
      break;
    case Matroid::Backend::graphic: {
      j["type"] = "graphic";
      j["vertices"] = m.graphic_vertices();
      ordered_json edges = ordered_json::array();
      for (auto [u, v] : m.graphic_edges()) edges.push_back({u, v});
      j["edges"] = std::move(edges);
      break;
    }
    case Matroid::Backend::linear:
      j["type"] = "linear";
      j["p"] = m.linear_prime();
      j["cols"] = m.linear_columns();
      break;
  }
  return j;
}

const nlohmann::json& expect(const nlohmann::json& j, const std::string& key,
                             const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) throw input_error(path + ": missing key \"" + key + "\"");
  return *it;
}

Matroid matroid_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw input_error("matroid: expected an object");
  const std::string type = expect(j, "type", "matroid").get<std::string>();
  if (type == "uniform") {
    return Matroid::uniform(expect(j, "elements", "matroid").get<int>(),
                            expect(j, "rank", "matroid").get<int>());
  }
  if (type == "graphic") {
    const auto& edges_json = expect(j, "edges", "matroid");
    if (!edges_json.is_array()) throw input_error("matroid.edges: expected an array");
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < edges_json.size(); ++i) {
      const auto& e = edges_json[i];
      if (!e.is_array() || e.size() != 2)
        throw input_error("matroid.edges[" + std::to_string(i) + "]: expected [u, v]");
      edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    return Matroid::graphic(expect(j, "vertices", "matroid").get<int>(), std::move(edges));
  }
  if (type == "linear") {
    const auto& cols_json = expect(j, "cols", "matroid");
    if (!cols_json.is_array()) throw input_error("matroid.cols: expected an array");
    std::vector<std::vector<std::uint32_t>> cols;
    for (std::size_t i = 0; i < cols_json.size(); ++i) {
      const auto& col = cols_json[i];
      if (!col.is_array()) throw input_error("matroid.cols[" + std::to_string(i) + "]: expected an array");
      cols.push_back(col.get<std::vector<std::uint32_t>>());
    }
    return Matroid::linear(expect(j, "p", "matroid").get<std::uint32_t>(), std::move(cols));
  }
  throw input_error("matroid.type: unknown type \"" + type + "\"");
}

std::vector<std::vector<ElementId>> bases_from_json(const nlohmann::json& j) {
  const auto& bases_json = expect(j, "bases", "document");
  if (!bases_json.is_array()) throw input_error("bases: expected an array of classes");
  std::vector<std::vector<ElementId>> bases;
  for (std::size_t c = 0; c < bases_json.size(); ++c) {
    const auto& cls = bases_json[c];
    if (!cls.is_array()) throw input_error("bases[" + std::to_string(c) + "]: expected an array");
    bases.push_back(cls.get<std::vector<ElementId>>());
  }
  return bases;
}

ordered_json ris_to_json(const Ris& s) {
  ordered_json arr = ordered_json::array();
  for (const Coloured& e : s.elements()) arr.push_back({e.x, e.c + 1});  // 1-based colours
  return arr;
}

Ris ris_from_json(const nlohmann::json& j, int n, const std::string& path) {
  if (!j.is_array()) throw input_error(path + ": expected an array of [element, colour] pairs");
  Ris s(n);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& pair = j[i];
    if (!pair.is_array() || pair.size() != 2)
      throw input_error(path + "[" + std::to_string(i) + "]: expected [element, colour]");
    const int x = pair[0].get<int>();
    const int c = pair[1].get<int>();
    if (c < 1 || c > n)
      throw input_error(path + "[" + std::to_string(i) + "]: colour " + std::to_string(c) +
                        " outside 1.." + std::to_string(n));
    if (s.has_colour(c - 1))
      throw input_error(path + "[" + std::to_string(i) + "]: repeated colour " + std::to_string(c));
    s.add({x, c - 1});
  }
  return s;
}

nlohmann::json parse_text(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw input_error(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string serialize_instance(const Instance& inst, const InstanceMeta& meta) {
  ordered_json j;
  j["matroid"] = matroid_to_json(inst.matroid());
  ordered_json bases = ordered_json::array();
  for (int c = 0; c < inst.n(); ++c) {
    auto cls = inst.basis(c);
    bases.push_back(std::vector<ElementId>(cls.begin(), cls.end()));
  }
  j["bases"] = std::move(bases);
  if (!meta.empty()) {
    ordered_json m;
    if (meta.generator) m["generator"] = *meta.generator;
    if (meta.seed) m["seed"] = *meta.seed;
    if (meta.p) m["p"] = *meta.p;
    j["meta"] = std::move(m);
  }
  return j.dump(2) + "\n";
}

Instance parse_instance(const std::string& text, InstanceMeta* meta) {
  nlohmann::json j = parse_text(text);
  if (!j.is_object()) throw input_error("document: expected a JSON object");
  Matroid m = matroid_from_json(expect(j, "matroid", "document"));
  auto bases = bases_from_json(j);
  if (meta) {
    *meta = {};
    if (auto it = j.find("meta"); it != j.end() && it->is_object()) {
      if (auto g = it->find("generator"); g != it->end()) meta->generator = g->get<std::string>();
      if (auto s = it->find("seed"); s != it->end()) meta->seed = s->get<std::uint64_t>();
      if (auto p = it->find("p"); p != it->end()) meta->p = p->get<std::uint32_t>();
    }
  }
  try {
    return Instance(std::move(m), std::move(bases));
  } catch (const input_error& e) {
    throw input_error(std::string(e.what()));
  }
}

std::string serialize_decomposition(const Instance& inst, const SolverConfig& cfg,
                                    const Decomposition& dec) {
  ordered_json j;
  j["instance"] = ordered_json::parse(serialize_instance(inst));
  ordered_json config;
  config["epsilon"] = cfg.epsilon;
  config["f"] = cfg.f ? ordered_json(*cfg.f) : ordered_json(nullptr);
  config["mode"] = mode_name(cfg.mode);
  config["l_max"] = cfg.l_max;
  config["max_rounds"] = cfg.max_rounds ? ordered_json(*cfg.max_rounds) : ordered_json(nullptr);
  config["seed"] = cfg.seed;
  config["exhaustive_fallback_n"] = cfg.exhaustive_fallback_n;
  config["restarts"] = cfg.restarts;
  j["config"] = std::move(config);
  j["k"] = dec.k;
  j["volume"] = dec.volume;
  j["rounds"] = dec.rounds;
  ordered_json complete = ordered_json::array();
  for (const Ris& s : dec.complete) complete.push_back(ris_to_json(s));
  j["complete"] = std::move(complete);
  ordered_json partial = ordered_json::array();
  for (const Ris& s : dec.partial) partial.push_back(ris_to_json(s));
  j["partial"] = std::move(partial);
  return j.dump(2) + "\n";
}

SolveDocument parse_decomposition(const std::string& text) {
  nlohmann::json j = parse_text(text);
  if (!j.is_object()) throw input_error("document: expected a JSON object");
  Instance inst = parse_instance(expect(j, "instance", "document").dump());

  SolverConfig cfg;
  const auto& cj = expect(j, "config", "document");
  cfg.epsilon = expect(cj, "epsilon", "config").get<double>();
  if (const auto& f = expect(cj, "f", "config"); !f.is_null()) cfg.f = f.get<int>();
  const std::string mode = expect(cj, "mode", "config").get<std::string>();
  if (auto m = mode_from_name(mode))
    cfg.mode = *m;
  else
    throw input_error("config.mode: unknown mode \"" + mode + "\"");
  cfg.l_max = expect(cj, "l_max", "config").get<int>();
  if (const auto& r = expect(cj, "max_rounds", "config"); !r.is_null())
    cfg.max_rounds = r.get<long>();
  cfg.seed = expect(cj, "seed", "config").get<std::uint64_t>();
  cfg.exhaustive_fallback_n = expect(cj, "exhaustive_fallback_n", "config").get<int>();
  cfg.restarts = expect(cj, "restarts", "config").get<int>();

  Decomposition dec;
  dec.k = expect(j, "k", "document").get<int>();
  dec.volume = expect(j, "volume", "document").get<int>();
  dec.rounds = expect(j, "rounds", "document").get<long>();
  const auto& complete = expect(j, "complete", "document");
  for (std::size_t i = 0; i < complete.size(); ++i)
    dec.complete.push_back(
        ris_from_json(complete[i], inst.n(), "complete[" + std::to_string(i) + "]"));
  const auto& partial = expect(j, "partial", "document");
  for (std::size_t i = 0; i < partial.size(); ++i)
    dec.partial.push_back(ris_from_json(partial[i], inst.n(), "partial[" + std::to_string(i) + "]"));
  return {std::move(inst), cfg, std::move(dec)};
}

std::string trace_to_json_lines(const Decomposition& dec) {
  std::string out;
  for (const TraceRecord& r : dec.trace) {
    ordered_json j;
    j["round"] = r.round;
    j["action"] = r.action;
    j["volume"] = r.volume;
    j["q"] = r.q_sizes;
    out += j.dump() + "\n";
  }
  return out;
}

}  // namespace rainbow
