#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "iceqp/algebra.hpp"
#include "iceqp/boundary.hpp"
#include "iceqp/element.hpp"
#include "iceqp/homcheck.hpp"
#include "iceqp/lift.hpp"
#include "iceqp/quiver.hpp"
#include "iceqp/seed.hpp"

namespace iceqp {

using json = nlohmann::json;

/// A quiver file: the ice quiver plus optional potential, base grading and
/// truncation bound.
struct QuiverInput {
  IceQuiver ice;
  Potential potential;
  std::optional<Grading> grading;
  std::optional<int> bound;

  const Quiver& quiver() const { return ice.quiver(); }
};

namespace detail {

inline std::string string_field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_string())
    throw InputError(where + ": missing string field '" + key + "'", key);
  return j.at(key).get<std::string>();
}

inline std::vector<std::string> string_list(const json& j, const char* key) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  if (!j.at(key).is_array()) throw InputError(std::string("field '") + key + "' must be a list", key);
  for (const auto& x : j.at(key)) {
    if (!x.is_string()) throw InputError(std::string("field '") + key + "' must list strings", key);
    out.push_back(x.get<std::string>());
  }
  return out;
}

}  // namespace detail

inline QuiverDescription parse_description(const json& j) {
  if (!j.is_object()) throw InputError("quiver description must be a JSON object", "");
  QuiverDescription d;
  if (!j.contains("vertices") || !j.at("vertices").is_array())
    throw InputError("quiver description needs a 'vertices' list", "vertices");
  for (const auto& v : j.at("vertices")) {
    if (v.is_string()) {
      d.vertices.push_back({v.get<std::string>(), {}});
    } else if (v.is_object()) {
      std::string id = detail::string_field(v, "id", "vertex");
      std::string label = v.contains("label") && v.at("label").is_string() ? v.at("label").get<std::string>() : "";
      d.vertices.push_back({id, label});
    } else {
      throw InputError("vertex entries must be strings or objects", "vertices");
    }
  }
  if (j.contains("arrows")) {
    if (!j.at("arrows").is_array()) throw InputError("'arrows' must be a list", "arrows");
    for (const auto& a : j.at("arrows"))
      d.arrows.push_back({detail::string_field(a, "id", "arrow"), detail::string_field(a, "tail", "arrow"),
                          detail::string_field(a, "head", "arrow")});
  }
  d.frozen_vertices = detail::string_list(j, "frozen_vertices");
  d.frozen_arrows = detail::string_list(j, "frozen_arrows");
  return d;
}

inline Potential parse_potential(const Quiver& q, const json& j) {
  if (!j.is_array()) throw InputError("potential must be a list of terms", "potential");
  std::vector<PotentialTerm> terms;
  for (const auto& t : j) {
    Rational c = 1;
    if (t.contains("coefficient")) {
      const auto& cj = t.at("coefficient");
      try {
        c = cj.is_number_integer() ? Rational(cj.get<long long>()) : parse_rational(cj.get<std::string>());
      } catch (const std::exception& e) {
        throw InputError(std::string("bad coefficient: ") + e.what(), "coefficient");
      }
    }
    if (!t.contains("cycle") || !t.at("cycle").is_array())
      throw InputError("potential term needs a 'cycle' list", "cycle");
    std::vector<int> arrows;
    for (const auto& id : t.at("cycle")) arrows.push_back(q.arrow_at(id.get<std::string>()));
    if (arrows.empty()) throw InputError("potential term has an empty cycle", "cycle");
    terms.push_back({c, Path::from_arrows(q, arrows)});
  }
  return Potential::normalize(q, terms);
}

inline QuiverInput parse_quiver_input(const json& j) {
  QuiverInput in;
  in.ice = validate(parse_description(j));
  const Quiver& q = in.ice.quiver();
  if (j.contains("potential")) in.potential = parse_potential(q, j.at("potential"));
  if (j.contains("grading")) {
    if (!j.at("grading").is_object()) throw InputError("'grading' must map arrow ids to degrees", "grading");
    in.grading = Grading::from_ids(q, j.at("grading").get<std::map<std::string, int>>());
  }
  if (j.contains("bound")) {
    if (!j.at("bound").is_number_integer()) throw InputError("'bound' must be an integer", "bound");
    in.bound = j.at("bound").get<int>();
  }
  return in;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'", path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what(), path);
  }
}

inline QuiverInput load_quiver_input(const std::string& path) { return parse_quiver_input(read_json_file(path)); }

inline json quiver_json(const IceQuiver& ice) {
  const Quiver& q = ice.quiver();
  json j;
  j["vertices"] = json::array();
  for (const auto& v : q.vertices()) {
    if (v.label.empty())
      j["vertices"].push_back(v.id);
    else
      j["vertices"].push_back({{"id", v.id}, {"label", v.label}});
  }
  j["arrows"] = json::array();
  for (const auto& a : q.arrows())
    j["arrows"].push_back({{"id", a.id}, {"tail", q.vertex(a.tail).id}, {"head", q.vertex(a.head).id}});
  std::vector<std::string> fv, fa;
  for (int v : ice.frozen_vertices()) fv.push_back(q.vertex(v).id);
  for (int a : ice.frozen_arrows()) fa.push_back(q.arrow(a).id);
  j["frozen_vertices"] = fv;
  j["frozen_arrows"] = fa;
  return j;
}

inline json element_json(const Quiver& q, const AlgebraElement& x) {
  std::vector<std::pair<std::vector<std::string>, std::string>> terms;
  for (const auto& [p, c] : x.terms()) terms.push_back({arrow_ids(q, p), to_string(c)});
  std::sort(terms.begin(), terms.end());
  json j = json::array();
  for (const auto& [ids, c] : terms) j.push_back({{"coefficient", c}, {"path", ids}});
  return j;
}

inline json potential_json(const Quiver& q, const Potential& w) {
  json j = json::array();
  for (const auto& t : w.terms())
    j.push_back({{"coefficient", to_string(t.coefficient)}, {"cycle", arrow_ids(q, t.cycle)}});
  return j;
}

inline json grading_json(const Quiver& q, const Grading& g) { return g.to_ids(q); }

inline json lifted_json(const LiftedIQP& l, const std::optional<LiftedGrading>& g) {
  const Quiver& t = l.quiver();
  json j = quiver_json(l.ice);
  j["potential"] = potential_json(t, l.potential);
  json origin = json::object();
  for (int a = 0; a < t.num_arrows(); ++a) origin[t.arrow(a).id] = to_string(l.origin[a]);
  j["origin"] = origin;
  if (g) {
    j["grading"] = grading_json(t, g->grading);
    j["potential_degree"] = g->potential_degree ? json(*g->potential_degree) : json(nullptr);
  }
  return j;
}

inline json presentation_json(const Presentation& p, const std::optional<Grading>& g) {
  const Quiver& q = p.quiver();
  json j = quiver_json(p.ice);
  json rels = json::array();
  for (const auto& r : p.relations) {
    json rj{{"label", r.label}, {"element", element_json(q, r.element)}, {"display", render(q, r.element)}};
    if (g) {
      auto d = g->of_element(r.element);
      rj["degree"] = d ? json(*d) : json(nullptr);
    }
    rels.push_back(rj);
  }
  j["relations"] = rels;
  if (g) j["grading"] = grading_json(q, *g);
  return j;
}

inline json gamma_json(const GammaPresentation& g) {
  json j = presentation_json(g.presentation, g.grading);
  const Quiver& gq = g.quiver();
  std::size_t strict = 0;
  for (const auto& z : g.zigzags) strict += z.strict;
  j["zigzag_count"] = g.zigzags.size();
  j["strict_zigzag_count"] = strict;
  j["arrow_count"] = gq.num_arrows();
  j["vertex_count"] = gq.num_vertices();
  return j;
}

inline json dimension_json(const GradedQuotientAlgebra& a) {
  return {{"dimensions", a.dimensions()},
          {"total", a.total_dimension()},
          {"complete", a.complete()},
          {"bound", a.bound()},
          {"top_degree", a.top_degree()}};
}

inline json certificate_json(const ExactnessCertificate& c) {
  json vs = json::array();
  for (const auto& v : c.vertices) {
    json ws = json::array();
    for (const auto& w : v.weights) {
      json wj{{"weight", w.weight},
              {"dims", {w.dim3, w.dim2, w.dim1, w.dim0}},
              {"ranks", {w.rank3, w.rank2, w.rank1}},
              {"complex", w.complex_ok},
              {"pass", w.pass}};
      if (!w.witness.empty()) wj["witness"] = w.witness;
      ws.push_back(wj);
    }
    vs.push_back({{"vertex", v.id}, {"kind", to_string(v.kind)}, {"pass", v.pass}, {"weights", ws}});
  }
  return {{"vertices", vs},
          {"complete", c.complete},
          {"bound", c.bound},
          {"max_weight", c.max_weight},
          {"potential_degree", c.potential_degree},
          {"pass", c.pass}};
}

inline json phi_json(const PhiReport& r) {
  return {{"well_defined", r.well_defined},
          {"surjective", r.surjective},
          {"dimensions_match", r.dimensions_match},
          {"lifted_complete", r.lifted_complete},
          {"presentation_complete", r.gamma_complete},
          {"bound", r.bound},
          {"corner_dimensions", r.corner_dims},
          {"presentation_dimensions", r.gamma_dims},
          {"corner_total", r.corner_total},
          {"presentation_total", r.gamma_total},
          {"counterexamples", r.counterexamples},
          {"pass", r.passed()}};
}

inline json laurent_json(const LaurentPoly& p) {
  json j = json::array();
  for (const auto& [e, c] : p.terms()) j.push_back({{"coefficient", c.str()}, {"exponents", e}});
  return j;
}

inline LaurentPoly parse_laurent(const json& j, std::size_t nvars) {
  if (!j.is_array()) throw InputError("Laurent polynomial must be a list of terms", "variables");
  LaurentPoly p(nvars);
  for (const auto& t : j) {
    if (!t.contains("exponents") || !t.contains("coefficient"))
      throw InputError("Laurent term needs 'coefficient' and 'exponents'", "variables");
    auto e = t.at("exponents").get<std::vector<int>>();
    if (e.size() != nvars) throw InputError("Laurent term has the wrong number of exponents", "exponents");
    const auto& cj = t.at("coefficient");
    Integer c;
    try {
      c = cj.is_number_integer() ? Integer(cj.get<long long>()) : Integer(cj.get<std::string>());
    } catch (const std::exception&) {
      throw InputError("bad integer coefficient", "coefficient");
    }
    p.add(e, c);
  }
  return p;
}

/// A seed together with the principal part of the seed it grew from.
struct SeedDocument {
  Seed seed;
  IntMatrix initial_exchange;
};

inline json seed_json(const SeedDocument& d) {
  const Seed& s = d.seed;
  json cluster = json::array();
  for (std::size_t i = 0; i < s.n; ++i) cluster.push_back(laurent_json(s.variables[i]));
  json display = json::array();
  for (std::size_t i = 0; i < s.n; ++i) display.push_back(render(s.variables[i], s.names));
  return {{"rank", s.n},
          {"names", s.names},
          {"cluster", cluster},
          {"display", display},
          {"exchange", s.exchange},
          {"initial_exchange", d.initial_exchange}};
}

inline SeedDocument parse_seed(const json& j) {
  SeedDocument d;
  Seed& s = d.seed;
  try {
    s.n = j.at("rank").get<std::size_t>();
    s.names = j.at("names").get<std::vector<std::string>>();
    s.exchange = j.at("exchange").get<IntMatrix>();
    d.initial_exchange = j.at("initial_exchange").get<IntMatrix>();
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed seed: ") + e.what(), "seed");
  }
  const std::size_t rows = s.names.size();
  if (s.exchange.size() != rows || rows < s.n) throw InputError("seed matrix has the wrong number of rows", "exchange");
  for (const auto& r : s.exchange)
    if (r.size() != s.n) throw InputError("seed matrix has the wrong number of columns", "exchange");
  if (d.initial_exchange.size() != s.n) throw InputError("initial exchange matrix has the wrong shape", "initial_exchange");
  if (!j.contains("cluster") || j.at("cluster").size() != s.n)
    throw InputError("seed cluster has the wrong length", "cluster");
  for (std::size_t i = 0; i < s.n; ++i) s.variables.push_back(parse_laurent(j.at("cluster")[i], rows));
  for (std::size_t i = s.n; i < rows; ++i) s.variables.push_back(LaurentPoly::variable(rows, i));
  for (std::size_t i = 0; i < s.n; ++i)
    for (std::size_t k = 0; k < s.n; ++k)
      if (s.exchange[i][k] != -s.exchange[k][i]) throw InputError("principal part is not skew-symmetric", "exchange");
  return d;
}

inline json graph_json(const ExchangeGraph& g) {
  json nodes = json::array();
  for (std::size_t i = 0; i < g.seeds.size(); ++i) {
    json word = json::array();
    for (auto k : g.words[i]) word.push_back(k + 1);
    json cluster = json::array();
    for (std::size_t v = 0; v < g.seeds[i].n; ++v) cluster.push_back(render(g.seeds[i].variables[v], g.seeds[i].names));
    nodes.push_back({{"id", i}, {"word", word}, {"cluster", cluster}});
  }
  json edges = json::array();
  for (const auto& [u, v] : g.edges) edges.push_back({u, v});
  return {{"nodes", nodes}, {"edges", edges}, {"seed_count", g.seeds.size()}, {"exhaustive", g.exhaustive}};
}

inline std::string canonical(const json& j) { return j.dump(2) + "\n"; }

}  // namespace iceqp
