#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iceqp/element.hpp"
#include "iceqp/quiver.hpp"

namespace iceqp {

enum class ArrowOrigin { original, alpha, beta, delta_vertex, delta_arrow, delta_bar };

inline const char* to_string(ArrowOrigin o) {
  switch (o) {
    case ArrowOrigin::original: return "original";
    case ArrowOrigin::alpha: return "alpha";
    case ArrowOrigin::beta: return "beta";
    case ArrowOrigin::delta_vertex: return "delta_vertex";
    case ArrowOrigin::delta_arrow: return "delta_arrow";
    case ArrowOrigin::delta_bar: return "delta_bar";
  }
  return "?";
}

struct Relation {
  std::string label;
  AlgebraElement element;
  bool operator==(const Relation&) const = default;
};

/// A quiver (possibly with frozen data) and generators of a two-sided ideal.
struct Presentation {
  IceQuiver ice;
  std::vector<Relation> relations;

  const Quiver& quiver() const { return ice.quiver(); }
};

/// The lifted ice quiver with potential built from (Q, W).
struct LiftedIQP {
  Quiver base;
  Potential base_potential;
  IceQuiver ice;
  Potential potential;
  std::vector<ArrowOrigin> origin;
  // Index into base vertices or arrows that each lifted arrow comes from.
  std::vector<int> origin_index;
  std::vector<int> plus, minus;
  std::vector<int> alpha, beta, delta_vertex;
  std::vector<int> delta_arrow;

  const Quiver& quiver() const { return ice.quiver(); }
};

namespace detail {

inline int add_generated_vertex(Quiver& q, const std::string& id) {
  if (q.find_vertex(id))
    throw InputError("generated vertex id '" + id + "' collides with an existing id", id);
  return q.add_vertex(id);
}

inline int add_generated_arrow(Quiver& q, const std::string& id, int tail, int head) {
  if (q.find_arrow(id))
    throw InputError("generated arrow id '" + id + "' collides with an existing id", id);
  return q.add_arrow(id, tail, head);
}

}  // namespace detail

inline LiftedIQP lift_qp(const Quiver& q, const Potential& w) {
  LiftedIQP l;
  l.base = q;
  l.base_potential = w;
  const int n = q.num_vertices();
  Quiver t;
  for (const auto& v : q.vertices()) t.add_vertex(v.id, v.label);
  for (const auto& v : q.vertices()) l.plus.push_back(detail::add_generated_vertex(t, v.id + "+"));
  for (const auto& v : q.vertices()) l.minus.push_back(detail::add_generated_vertex(t, v.id + "-"));

  for (int a = 0; a < q.num_arrows(); ++a) {
    const Arrow& ar = q.arrow(a);
    if (ar.tail == ar.head) throw InputError("arrow '" + ar.id + "' is a loop", ar.id);
    t.add_arrow(ar.id, ar.tail, ar.head);
    l.origin.push_back(ArrowOrigin::original);
    l.origin_index.push_back(a);
  }
  auto generated = [&](const std::string& id, int tail, int head, ArrowOrigin o, int from) {
    int idx = detail::add_generated_arrow(t, id, tail, head);
    l.origin.push_back(o);
    l.origin_index.push_back(from);
    return idx;
  };
  for (int i = 0; i < n; ++i) {
    const std::string& id = q.vertex(i).id;
    l.alpha.push_back(generated("alpha_" + id, i, l.plus[i], ArrowOrigin::alpha, i));
    l.beta.push_back(generated("beta_" + id, l.minus[i], i, ArrowOrigin::beta, i));
    l.delta_vertex.push_back(
        generated("delta_" + id, l.plus[i], l.minus[i], ArrowOrigin::delta_vertex, i));
  }
  for (int a = 0; a < q.num_arrows(); ++a) {
    const Arrow& ar = q.arrow(a);
    l.delta_arrow.push_back(generated("delta_" + ar.id, l.plus[ar.head], l.minus[ar.tail],
                                      ArrowOrigin::delta_arrow, a));
  }

  std::vector<int> frozen_vertices = l.plus;
  frozen_vertices.insert(frozen_vertices.end(), l.minus.begin(), l.minus.end());
  std::vector<int> frozen_arrows = l.delta_vertex;
  frozen_arrows.insert(frozen_arrows.end(), l.delta_arrow.begin(), l.delta_arrow.end());
  l.ice = IceQuiver(t, frozen_vertices, frozen_arrows);

  std::vector<PotentialTerm> terms;
  for (const auto& term : w.terms())
    terms.push_back({term.coefficient, Path::from_arrows(t, term.cycle.arrows)});
  for (int i = 0; i < n; ++i)
    terms.push_back({1, Path::from_arrows(t, {l.alpha[i], l.delta_vertex[i], l.beta[i]})});
  for (int a = 0; a < q.num_arrows(); ++a) {
    const Arrow& ar = q.arrow(a);
    terms.push_back(
        {-1, Path::from_arrows(t, {l.alpha[ar.head], l.delta_arrow[a], l.beta[ar.tail], a})});
  }
  l.potential = Potential::normalize(t, terms);
  return l;
}

/// Closed-form derivative of the lifted potential with respect to an
/// unfrozen arrow, written out independently of cyclic_derivative.
inline AlgebraElement closed_form_derivative(const LiftedIQP& l, int arrow) {
  const Quiver& t = l.quiver();
  const Quiver& q = l.base;
  AlgebraElement out;
  switch (l.origin.at(arrow)) {
    case ArrowOrigin::original: {
      int a = l.origin_index[arrow];
      std::vector<PotentialTerm> lifted;
      for (const auto& term : l.base_potential.terms())
        lifted.push_back({term.coefficient, Path::from_arrows(t, term.cycle.arrows)});
      out = cyclic_derivative(t, Potential::normalize(t, lifted), arrow);
      const Arrow& ar = q.arrow(a);
      out -= path_element(t, {l.alpha[ar.head], l.delta_arrow[a], l.beta[ar.tail]});
      break;
    }
    case ArrowOrigin::alpha: {
      int i = l.origin_index[arrow];
      out += path_element(t, {l.delta_vertex[i], l.beta[i]});
      for (int g : q.in_arrows(i))
        out -= path_element(t, {l.delta_arrow[g], l.beta[q.arrow(g).tail], g});
      break;
    }
    case ArrowOrigin::beta: {
      int i = l.origin_index[arrow];
      out += path_element(t, {l.alpha[i], l.delta_vertex[i]});
      for (int g : q.out_arrows(i))
        out -= path_element(t, {g, l.alpha[q.arrow(g).head], l.delta_arrow[g]});
      break;
    }
    default:
      throw InputError("closed form requested for frozen arrow '" + t.arrow(arrow).id + "'",
                       t.arrow(arrow).id);
  }
  return out;
}

/// Derivatives of the lifted potential with respect to every unfrozen arrow,
/// cross-checked against the closed forms.
inline Presentation relation_set(const LiftedIQP& l) {
  Presentation p{l.ice, {}};
  const Quiver& t = l.quiver();
  for (int a : l.ice.unfrozen_arrows()) {
    AlgebraElement d = cyclic_derivative(t, l.potential, a);
    if (d != closed_form_derivative(l, a))
      throw std::logic_error("derivative with respect to '" + t.arrow(a).id +
                             "' disagrees with its closed form");
    p.relations.push_back({"d_" + t.arrow(a).id, std::move(d)});
  }
  return p;
}

struct LiftedGrading {
  Grading grading;
  std::optional<int> potential_degree;
};

/// Positive grading on the lift. With W = 0 every arrow has degree 1 except
/// the delta_i, which have degree 2.
inline LiftedGrading lift_grading(const LiftedIQP& l, const Grading& base) {
  const Quiver& q = l.base;
  const Quiver& t = l.quiver();
  if (static_cast<int>(base.degree.size()) != q.num_arrows())
    throw InputError("grading does not cover every arrow", "");
  if (!base.is_positive()) throw InputError("base grading is not positive", "");
  GradingReport rep = check_grading(q, l.base_potential, base);
  if (!rep.homogeneous) throw InputError("potential is not homogeneous under the base grading", "");

  LiftedGrading out;
  out.grading.degree.assign(t.num_arrows(), 1);
  if (l.base_potential.is_zero()) {
    for (int d : l.delta_vertex) out.grading.degree[d] = 2;
    out.potential_degree = 4;
    return out;
  }

  const int d0 = *rep.degree_of_potential;
  int k = 1;
  for (int a = 0; a < q.num_arrows(); ++a)
    if (!l.base_potential.contains_arrow(a)) k = std::max(k, (base.of_arrow(a) + 1 + d0 - 1) / d0);
  std::vector<int> scaled(q.num_arrows());
  for (int a = 0; a < q.num_arrows(); ++a)
    scaled[a] = 3 * (l.base_potential.contains_arrow(a) ? k * base.of_arrow(a) : base.of_arrow(a));
  const int d = 3 * k * d0;
  for (int a = 0; a < q.num_arrows(); ++a) out.grading.degree[a] = scaled[a];
  for (int i = 0; i < q.num_vertices(); ++i) out.grading.degree[l.delta_vertex[i]] = d - 2;
  for (int a = 0; a < q.num_arrows(); ++a) out.grading.degree[l.delta_arrow[a]] = d - 2 - scaled[a];
  out.potential_degree = d;
  return out;
}

struct ZigZag {
  Path q;
  int arrow = 0;
  Path p;
  bool strict = false;
};

inline std::vector<ZigZag> zigzags(const Quiver& q) {
  std::vector<Path> paths = all_paths(q);
  std::vector<ZigZag> out;
  for (int a = 0; a < q.num_arrows(); ++a) {
    const Arrow& ar = q.arrow(a);
    for (const Path& p : paths) {
      if (p.head != ar.head) continue;
      for (const Path& r : paths) {
        if (r.tail != ar.tail) continue;
        bool p_ends_with_a = !p.is_trivial() && p.arrows.back() == a;
        bool r_starts_with_a = !r.is_trivial() && r.arrows.front() == a;
        out.push_back({r, a, p, !p_ends_with_a && !r_starts_with_a});
      }
    }
  }
  return out;
}

inline std::string path_token(const Quiver& q, const Path& p) {
  return p.is_trivial() ? q.vertex(p.tail).id : render(q, p);
}

/// The presentation of the boundary algebra: the frozen part of the lift with
/// an extra arrow for every path of Q, and the ideal generated by r1, r2, r3.
struct GammaPresentation {
  Presentation presentation;
  Grading grading;
  std::vector<Path> paths;
  std::vector<int> dbar;
  std::vector<int> plus, minus;
  std::vector<int> delta_vertex, delta_arrow;
  std::vector<ZigZag> zigzags;

  const Quiver& quiver() const { return presentation.quiver(); }
  int dbar_of(const Path& p) const {
    for (std::size_t i = 0; i < paths.size(); ++i)
      if (paths[i] == p) return dbar[i];
    throw std::out_of_range("path has no dbar arrow");
  }
};

inline GammaPresentation gamma_presentation(const Quiver& q) {
  if (!is_acyclic(q)) throw InputError("boundary presentation needs an acyclic quiver", "");
  GammaPresentation g;
  Quiver gq;
  for (const auto& v : q.vertices()) g.plus.push_back(detail::add_generated_vertex(gq, v.id + "+"));
  for (const auto& v : q.vertices()) g.minus.push_back(detail::add_generated_vertex(gq, v.id + "-"));
  for (int i = 0; i < q.num_vertices(); ++i)
    g.delta_vertex.push_back(
        detail::add_generated_arrow(gq, "delta_" + q.vertex(i).id, g.plus[i], g.minus[i]));
  for (int a = 0; a < q.num_arrows(); ++a) {
    const Arrow& ar = q.arrow(a);
    g.delta_arrow.push_back(
        detail::add_generated_arrow(gq, "delta_" + ar.id, g.plus[ar.head], g.minus[ar.tail]));
  }
  g.paths = all_paths(q);
  for (const Path& p : g.paths)
    g.dbar.push_back(
        detail::add_generated_arrow(gq, "dbar_" + path_token(q, p), g.minus[p.tail], g.plus[p.head]));

  g.grading.degree.assign(gq.num_arrows(), 1);
  for (int d : g.delta_vertex) g.grading.degree[d] = 2;
  for (std::size_t i = 0; i < g.paths.size(); ++i)
    g.grading.degree[g.dbar[i]] = 2 + static_cast<int>(g.paths[i].length());

  std::vector<int> frozen_vertices(gq.num_vertices());
  for (int v = 0; v < gq.num_vertices(); ++v) frozen_vertices[v] = v;
  Presentation pres{IceQuiver(gq, frozen_vertices, {}), {}};
  const Quiver& G = pres.ice.quiver();

  for (const Path& p : g.paths) {
    AlgebraElement r1 = path_element(G, {g.delta_vertex[p.tail], g.dbar_of(p)});
    for (int a : q.in_arrows(p.tail))
      r1 -= path_element(G, {g.delta_arrow[a], g.dbar_of(*compose(p, Path::of_arrow(q, a)))});
    pres.relations.push_back({"r1(" + path_token(q, p) + ")", std::move(r1)});
  }
  for (const Path& p : g.paths) {
    AlgebraElement r2 = path_element(G, {g.dbar_of(p), g.delta_vertex[p.head]});
    for (int a : q.out_arrows(p.head))
      r2 -= path_element(G, {g.dbar_of(*compose(Path::of_arrow(q, a), p)), g.delta_arrow[a]});
    pres.relations.push_back({"r2(" + path_token(q, p) + ")", std::move(r2)});
  }
  g.zigzags = zigzags(q);
  for (const ZigZag& z : g.zigzags) {
    AlgebraElement r3 = path_element(G, {g.dbar_of(z.p), g.delta_arrow[z.arrow], g.dbar_of(z.q)});
    pres.relations.push_back({"r3(" + path_token(q, z.q) + "," + q.arrow(z.arrow).id + "," +
                                  path_token(q, z.p) + ")",
                              std::move(r3)});
  }
  g.presentation = std::move(pres);
  return g;
}

}  // namespace iceqp
