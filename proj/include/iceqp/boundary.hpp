#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iceqp/algebra.hpp"
#include "iceqp/lift.hpp"

namespace iceqp {

/// Image in the lifted quiver of an arrow of the boundary presentation.
inline Path phi_arrow(const LiftedIQP& l, const GammaPresentation& g, int arrow) {
  const Quiver& t = l.quiver();
  for (int i = 0; i < static_cast<int>(g.delta_vertex.size()); ++i)
    if (g.delta_vertex[i] == arrow) return Path::of_arrow(t, l.delta_vertex[i]);
  for (int a = 0; a < static_cast<int>(g.delta_arrow.size()); ++a)
    if (g.delta_arrow[a] == arrow) return Path::of_arrow(t, l.delta_arrow[a]);
  for (std::size_t i = 0; i < g.paths.size(); ++i) {
    if (g.dbar[i] != arrow) continue;
    const Path& p = g.paths[i];
    std::vector<int> seq{l.beta[p.tail]};
    seq.insert(seq.end(), p.arrows.begin(), p.arrows.end());
    seq.push_back(l.alpha[p.head]);
    return Path::from_arrows(t, seq);
  }
  throw std::out_of_range("arrow is not part of the boundary presentation");
}

inline int phi_vertex(const LiftedIQP& l, const GammaPresentation& g, int v) {
  for (std::size_t i = 0; i < g.plus.size(); ++i) {
    if (g.plus[i] == v) return l.plus[i];
    if (g.minus[i] == v) return l.minus[i];
  }
  throw std::out_of_range("vertex is not part of the boundary presentation");
}

inline AlgebraElement phi(const LiftedIQP& l, const GammaPresentation& g, const AlgebraElement& x) {
  AlgebraElement out;
  for (const auto& [p, c] : x.terms()) {
    if (p.is_trivial()) {
      out.add(Path::trivial(phi_vertex(l, g, p.tail)), c);
      continue;
    }
    Path image = phi_arrow(l, g, p.arrows.front());
    for (std::size_t i = 1; i < p.arrows.size(); ++i)
      image = *compose(phi_arrow(l, g, p.arrows[i]), image);
    out.add(image, c);
  }
  return out;
}

struct PhiReport {
  bool well_defined = true;
  bool surjective = true;
  bool dimensions_match = true;
  bool lifted_complete = false;
  bool gamma_complete = false;
  int bound = 0;
  std::vector<std::size_t> corner_dims;
  std::vector<std::size_t> gamma_dims;
  std::size_t corner_total = 0;
  std::size_t gamma_total = 0;
  std::vector<std::string> counterexamples;

  bool passed() const {
    return well_defined && surjective && dimensions_match && lifted_complete && gamma_complete;
  }
};

inline std::vector<std::size_t> corner_dimensions(const GradedQuotientAlgebra& a,
                                                  const std::vector<int>& vertices) {
  std::vector<std::size_t> dims(a.built_degree() + 1, 0);
  for (const auto& [k, i] : a.corner_truncated(vertices).basis) ++dims[k];
  return dims;
}

/// Checks that the boundary presentation maps onto, and isomorphically to,
/// the frozen corner of the lifted algebra.
inline PhiReport verify_phi(const Quiver& q) {
  PhiReport rep;
  LiftedIQP l = lift_qp(q, Potential{});
  Grading deg = lift_grading(l, Grading::constant(q, 1)).grading;
  rep.bound = truncation_bound(l);
  GradedQuotientAlgebra a = GradedQuotientAlgebra::build(relation_set(l), deg, rep.bound);
  rep.lifted_complete = a.complete();

  GammaPresentation g = gamma_presentation(q);
  const Quiver& gq = g.quiver();
  GradedQuotientAlgebra b = GradedQuotientAlgebra::build(
      g.presentation, g.grading, rep.bound + g.grading.max_degree());
  rep.gamma_complete = b.complete();
  if (!rep.lifted_complete) rep.counterexamples.push_back("lifted algebra incomplete at bound");
  if (!rep.gamma_complete) rep.counterexamples.push_back("boundary presentation incomplete at bound");
  const Quiver& t = l.quiver();

  for (const auto& r : g.presentation.relations) {
    AlgebraElement image = phi(l, g, r.element);
    if (!a.is_zero(image)) {
      rep.well_defined = false;
      rep.counterexamples.push_back("image of " + r.label + " is nonzero: " +
                                    render(t, a.normal_form(image)));
    }
  }

  std::vector<int> frozen = l.ice.frozen_vertices();
  rep.corner_dims = corner_dimensions(a, frozen);
  // Span of images of boundary paths, degree by degree.
  std::vector<Echelon> span(a.built_degree() + 1);
  for (int v : frozen) span[0].insert(unit(v));
  for (int k = 1; k <= a.built_degree(); ++k) {
    for (int arrow = 0; arrow < gq.num_arrows(); ++arrow) {
      int j = k - g.grading.of_arrow(arrow);
      if (j < 0) continue;
      Path image = phi_arrow(l, g, arrow);
      for (const auto& [pivot, row] : span[j].rows()) {
        if (a.basis_path(j, pivot).head != image.tail) continue;
        GradedVec prod = a.left_multiply(image, GradedVec{j, row});
        span[k].insert(std::move(prod.coords));
      }
    }
    if (span[k].rank() != rep.corner_dims[k]) {
      rep.surjective = false;
      rep.counterexamples.push_back("degree " + std::to_string(k) + ": images span " +
                                    std::to_string(span[k].rank()) + " of " +
                                    std::to_string(rep.corner_dims[k]));
    }
  }

  rep.gamma_dims = b.dimensions();
  for (auto d : rep.corner_dims) rep.corner_total += d;
  rep.gamma_total = b.total_dimension();
  std::size_t len = std::max(rep.corner_dims.size(), rep.gamma_dims.size());
  for (std::size_t k = 0; k < len; ++k) {
    std::size_t x = k < rep.corner_dims.size() ? rep.corner_dims[k] : 0;
    std::size_t y = k < rep.gamma_dims.size() ? rep.gamma_dims[k] : 0;
    if (x != y) {
      rep.dimensions_match = false;
      rep.counterexamples.push_back("degree " + std::to_string(k) + ": corner has dimension " +
                                    std::to_string(x) + ", presentation " + std::to_string(y));
    }
  }
  return rep;
}

/// Sum over frozen arrows of the commutator of the arrow with its
/// derivative; returns whether it vanishes in the algebra.
inline bool preprojective_check(const GradedQuotientAlgebra& a, const IceQuiver& ice,
                                const Potential& w) {
  const Quiver& q = ice.quiver();
  AlgebraElement sum;
  for (int f : ice.frozen_arrows()) {
    AlgebraElement d = cyclic_derivative(q, w, f);
    AlgebraElement x = arrow_element(q, f);
    sum += x * d;
    sum -= d * x;
  }
  return a.is_zero(sum);
}

/// Whether every listed relation vanishes in the algebra.
inline std::optional<std::string> first_nonvanishing(const GradedQuotientAlgebra& a,
                                                     const std::vector<Relation>& rels) {
  for (const auto& r : rels)
    if (!a.is_zero(r.element)) return r.label;
  return std::nullopt;
}

}  // namespace iceqp
