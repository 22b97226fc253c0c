#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "iceqp/algebra.hpp"
#include "iceqp/boundary.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace iceqp;
using testing_support::cycle3;
using testing_support::elem;
using testing_support::linear;

namespace {

struct Lifted {
  LiftedIQP lift;
  Grading grading;
  int potential_degree;
  Presentation relations;
};

Lifted lifted(const Quiver& q, const Potential& w = {}) {
  LiftedIQP l = lift_qp(q, w);
  LiftedGrading g = lift_grading(l, Grading::constant(q, 1));
  Presentation p = relation_set(l);
  return {l, g.grading, *g.potential_degree, p};
}

GradedQuotientAlgebra certified_algebra(const Lifted& x) {
  return GradedQuotientAlgebra::build(x.relations, x.grading, truncation_bound(x.lift));
}

std::set<std::string> rendered_basis(const GradedQuotientAlgebra& a) {
  std::set<std::string> out;
  for (int k = 0; k <= a.built_degree(); ++k)
    for (const auto& p : a.basis(k)) out.insert(render(a.quiver(), p));
  return out;
}

AlgebraElement random_element(const GradedQuotientAlgebra& a, int k, std::mt19937_64& rng) {
  oracle::BruteForce dummy(a.quiver(), a.grading(), {}, k);
  const auto& paths = dummy.paths_of_degree(k);
  AlgebraElement x;
  if (paths.empty()) return x;
  for (int i = 0; i < 3; ++i)
    x.add(paths[rng() % paths.size()], Rational(static_cast<long>(rng() % 9) - 4));
  return x;
}

bool is_q_arrow(const LiftedIQP& l, int a) { return l.origin[a] == ArrowOrigin::original; }

}  // namespace

TEST_CASE("truncation bounds") {
  CHECK(truncation_bound(lift_qp(linear(1), {})) == 10);
  CHECK(truncation_bound(lift_qp(linear(2), {})) == 11);
  CHECK(truncation_bound(lift_qp(linear(4), {})) == 13);
  for (int n = 1; n <= 5; ++n)
    CHECK(truncation_bound(lift_qp(linear(n), {})) >= static_cast<int>(longest_path_length(linear(n))));
  Quiver q = cycle3();
  CHECK_THROWS_AS(truncation_bound(lift_qp(q, testing_support::cycle3_potential(q))), InputError);
}

TEST_CASE("algebra of an isolated vertex") {
  Lifted x = lifted(linear(1));
  GradedQuotientAlgebra a = certified_algebra(x);
  CHECK(a.complete());
  CHECK(a.total_dimension() == 7);
  CHECK(rendered_basis(a) == std::set<std::string>{"e_1", "e_1+", "e_1-", "alpha_1", "beta_1", "delta_1",
                                                   "alpha_1*beta_1"});
  const Quiver& t = x.lift.quiver();
  CHECK(a.is_zero(elem(t, {"delta_1", "beta_1"})));
  CHECK(a.is_zero(elem(t, {"alpha_1", "delta_1"})));
}

TEST_CASE("boundary algebra of an isolated vertex") {
  GammaPresentation g = gamma_presentation(linear(1));
  GradedQuotientAlgebra b = GradedQuotientAlgebra::build(g.presentation, g.grading, 12);
  CHECK(b.complete());
  CHECK(b.total_dimension() == 4);
  CHECK(rendered_basis(b) == std::set<std::string>{"e_1+", "e_1-", "delta_1", "dbar_1"});
}

TEST_CASE("finite-dimensional lifts are certified complete") {
  for (int n = 1; n <= 4; ++n) {
    GradedQuotientAlgebra a = certified_algebra(lifted(linear(n)));
    CHECK(a.complete());
    CHECK(a.top_degree() < a.bound());
  }
}

TEST_CASE("degree zero is spanned by idempotents") {
  Lifted x = lifted(linear(3));
  GradedQuotientAlgebra a = certified_algebra(x);
  REQUIRE(a.dim(0) == 9);
  for (int v = 0; v < 9; ++v) {
    CHECK(a.basis(0)[v] == Path::trivial(v));
    GradedVec r = a.reduce(Path::trivial(v));
    CHECK(r.degree == 0);
    CHECK(r.coords == unit(v));
  }
}

TEST_CASE("relations reduce to zero") {
  Quiver c = cycle3();
  for (const auto& x : {lifted(linear(2)), lifted(linear(3)), lifted(c, testing_support::cycle3_potential(c))}) {
    GradedQuotientAlgebra a = GradedQuotientAlgebra::build(x.relations, x.grading, 14);
    for (const auto& r : x.relations.relations) CHECK(a.is_zero(r.element));
  }
}

TEST_CASE("the cycle through 1+ and 1- vanishes in the A2 lift") {
  Lifted x = lifted(linear(2));
  GradedQuotientAlgebra a = certified_algebra(x);
  CHECK(a.is_zero(elem(x.lift.quiver(), {"alpha_1", "delta_1", "beta_1"})));
}

TEST_CASE("engine dimensions agree with brute force") {
  for (int n = 1; n <= 4; ++n) {
    Lifted x = lifted(linear(n));
    GradedQuotientAlgebra a = certified_algebra(x);
    oracle::BruteForce bf(x.lift.quiver(), x.grading, oracle::generators(x.relations), a.bound());
    std::vector<std::size_t> engine = a.dimensions();
    engine.resize(a.bound() + 1, 0);
    CHECK(engine == bf.dims());
  }
  Quiver c = cycle3();
  Lifted x = lifted(c, testing_support::cycle3_potential(c));
  GradedQuotientAlgebra a = GradedQuotientAlgebra::build(x.relations, x.grading, 22);
  CHECK_FALSE(a.complete());
  oracle::BruteForce bf(x.lift.quiver(), x.grading, oracle::generators(x.relations), 22);
  CHECK(a.dimensions() == bf.dims());
  for (int n = 1; n <= 3; ++n) {
    GammaPresentation g = gamma_presentation(linear(n));
    GradedQuotientAlgebra b = GradedQuotientAlgebra::build(g.presentation, g.grading, 12);
    oracle::BruteForce gbf(g.quiver(), g.grading, oracle::generators(g.presentation), 12);
    auto dims = b.dimensions();
    dims.resize(13, 0);
    CHECK(dims == gbf.dims());
  }
}

TEST_CASE("normal forms agree with ideal membership in the oracle") {
  std::mt19937_64 rng(11);
  Lifted x = lifted(linear(3));
  GradedQuotientAlgebra a = certified_algebra(x);
  oracle::BruteForce bf(x.lift.quiver(), x.grading, oracle::generators(x.relations), 8);
  for (int trial = 0; trial < 200; ++trial) {
    int k = 1 + static_cast<int>(rng() % 7);
    AlgebraElement e = random_element(a, k, rng);
    AlgebraElement nf = a.normal_form(e);
    CHECK(bf.in_ideal(e - nf));
    CHECK(a.is_zero(e) == bf.in_ideal(e));
  }
}

TEST_CASE("reduction is a projection") {
  std::mt19937_64 rng(3);
  Quiver c = cycle3();
  for (const auto& x : {lifted(linear(3)), lifted(c, testing_support::cycle3_potential(c))}) {
    GradedQuotientAlgebra a = GradedQuotientAlgebra::build(x.relations, x.grading, 16);
    for (int trial = 0; trial < 100; ++trial) {
      AlgebraElement e = random_element(a, static_cast<int>(rng() % 12), rng);
      AlgebraElement nf = a.normal_form(e);
      CHECK(a.normal_form(nf) == nf);
    }
  }
}

TEST_CASE("products with relations vanish") {
  std::mt19937_64 rng(5);
  Quiver c = cycle3();
  for (const auto& x : {lifted(linear(3)), lifted(c, testing_support::cycle3_potential(c))}) {
    const int bound = 18;
    GradedQuotientAlgebra a = GradedQuotientAlgebra::build(x.relations, x.grading, bound);
    const Quiver& t = x.lift.quiver();
    auto paths = enumerate_paths(t, 4);
    int checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
      const auto& r = x.relations.relations[rng() % x.relations.relations.size()].element;
      auto [tail, head] = *r.endpoints();
      std::vector<Path> before, after;
      for (const auto& p : paths) {
        if (p.head == tail) before.push_back(p);
        if (p.tail == head) after.push_back(p);
      }
      const Path& v = before[rng() % before.size()];
      const Path& u = after[rng() % after.size()];
      AlgebraElement prod = AlgebraElement(u) * r * AlgebraElement(v);
      if (prod.is_zero() || *x.grading.of_element(prod) > bound) continue;
      ++checked;
      CHECK(a.is_zero(prod));
    }
    CHECK(checked > 20);
  }
}

TEST_CASE("multiplication is associative on random triples") {
  std::mt19937_64 rng(9);
  Quiver c = cycle3();
  for (const auto& x : {lifted(linear(4)), lifted(c, testing_support::cycle3_potential(c))}) {
    const int bound = 20;
    GradedQuotientAlgebra a = GradedQuotientAlgebra::build(x.relations, x.grading, bound);
    std::vector<std::pair<int, int>> basis;
    for (int k = 0; k <= bound; ++k)
      for (int i = 0; i < static_cast<int>(a.dim(k)); ++i) basis.push_back({k, i});
    auto times = [&](const GradedVec& u, const GradedVec& v) {
      GradedVec out{u.degree + v.degree, {}};
      for (const auto& [i, c1] : u.coords)
        for (const auto& [j, c2] : v.coords) {
          GradedVec p = a.multiply_basis(u.degree, i, v.degree, j);
          axpy(out.coords, c1 * c2, p.coords);
        }
      return out;
    };
    int checked = 0;
    auto pick_before = [&](int tail) {
      std::vector<std::pair<int, int>> options;
      for (auto [k, i] : basis)
        if (a.basis_path(k, i).head == tail) options.push_back({k, i});
      return options[rng() % options.size()];
    };
    for (int trial = 0; trial < 2000 && checked < 150; ++trial) {
      auto [k1, i1] = basis[rng() % basis.size()];
      auto [k2, i2] = pick_before(a.basis_path(k1, i1).tail);
      auto [k3, i3] = pick_before(a.basis_path(k2, i2).tail);
      if (k1 + k2 + k3 > bound) continue;
      GradedVec x1{k1, unit(i1)}, x2{k2, unit(i2)}, x3{k3, unit(i3)};
      GradedVec lhs = times(times(x1, x2), x3);
      GradedVec rhs = times(x1, times(x2, x3));
      if (!lhs.coords.empty()) ++checked;
      CHECK(lhs.coords == rhs.coords);
    }
    CHECK(checked > 10);
  }
}

TEST_CASE("short paths avoiding Q vanish between unfrozen vertices") {
  for (int n = 1; n <= 4; ++n) {
    Lifted x = lifted(linear(n));
    GradedQuotientAlgebra a = certified_algebra(x);
    const Quiver& t = x.lift.quiver();
    for (const Path& p : enumerate_paths(t, 9)) {
      bool any_new = false, all_new = true;
      for (int b : p.arrows) {
        any_new = any_new || !is_q_arrow(x.lift, b);
        all_new = all_new && !is_q_arrow(x.lift, b);
      }
      bool ends_in_q = !x.lift.ice.is_frozen_vertex(p.tail) && !x.lift.ice.is_frozen_vertex(p.head);
      if (ends_in_q && any_new) CHECK(a.reduce(p).coords.empty());
      if (p.length() >= 5 && all_new) CHECK(a.reduce(p).coords.empty());
    }
  }
}

TEST_CASE("right multiplication by beta is injective on A e_i") {
  Quiver c = cycle3();
  for (const auto& x : {lifted(linear(2)), lifted(linear(3)), lifted(c, testing_support::cycle3_potential(c))}) {
    const int bound = 18;
    GradedQuotientAlgebra a = GradedQuotientAlgebra::build(x.relations, x.grading, bound);
    for (int i = 0; i < x.lift.base.num_vertices(); ++i) {
      int beta = x.lift.beta[i];
      for (int k = 0; k + 1 <= bound; ++k) {
        Echelon images;
        std::size_t n = 0;
        for (int j = 0; j < static_cast<int>(a.dim(k)); ++j) {
          const Path& y = a.basis_path(k, j);
          if (y.tail != i) continue;
          ++n;
          images.insert(a.left_multiply(y, a.reduce(Path::of_arrow(x.lift.quiver(), beta))).coords);
        }
        CHECK(images.rank() == n);
      }
    }
  }
}

TEST_CASE("gabriel quivers") {
  Lifted x = lifted(linear(2));
  GradedQuotientAlgebra a = certified_algebra(x);
  auto arrows = a.gabriel_quiver();
  const Quiver& t = x.lift.quiver();
  std::multiset<std::pair<int, int>> expected, got;
  for (const auto& ar : t.arrows()) expected.insert({ar.tail, ar.head});
  for (const auto& g : arrows)
    for (int m = 0; m < g.multiplicity; ++m) got.insert({g.tail, g.head});
  CHECK(got == expected);

  GammaPresentation g3 = gamma_presentation(linear(3));
  GradedQuotientAlgebra b = GradedQuotientAlgebra::build(g3.presentation, g3.grading, 16);
  REQUIRE(b.complete());
  std::multiset<std::pair<int, int>> gexp, ggot;
  for (const auto& ar : g3.quiver().arrows()) gexp.insert({ar.tail, ar.head});
  for (const auto& ga : b.gabriel_quiver())
    for (int m = 0; m < ga.multiplicity; ++m) ggot.insert({ga.tail, ga.head});
  CHECK(ggot == gexp);
  CHECK(ggot.size() == 11);

  Presentation semisimple{IceQuiver(linear(1)), {}};
  GradedQuotientAlgebra s = GradedQuotientAlgebra::build(semisimple, Grading{}, 3);
  CHECK(s.gabriel_quiver().empty());
}

TEST_CASE("gabriel quiver needs completeness") {
  Quiver c = cycle3();
  Lifted x = lifted(c, testing_support::cycle3_potential(c));
  GradedQuotientAlgebra a = GradedQuotientAlgebra::build(x.relations, x.grading, 12);
  CHECK_THROWS_AS(a.gabriel_quiver(), TruncationError);
  CHECK_THROWS_AS(a.corner({0}), TruncationError);
}

TEST_CASE("corners") {
  Lifted x = lifted(linear(1));
  GradedQuotientAlgebra a = certified_algebra(x);
  CHECK(a.corner({x.lift.plus[0], x.lift.minus[0]}).dimension() == 4);
  std::vector<int> all;
  for (int v = 0; v < x.lift.quiver().num_vertices(); ++v) all.push_back(v);
  CHECK(a.corner(all).dimension() == a.total_dimension());

  Lifted y = lifted(linear(2));
  GradedQuotientAlgebra a2 = certified_algebra(y);
  SubalgebraBasis e = a2.corner(y.lift.ice.frozen_vertices());
  GammaPresentation g = gamma_presentation(linear(2));
  GradedQuotientAlgebra b = GradedQuotientAlgebra::build(g.presentation, g.grading, 14);
  CHECK(e.dimension() == b.total_dimension());
  std::size_t count = 0;
  for (int k = 0; k <= a2.built_degree(); ++k)
    for (const auto& p : a2.basis(k))
      count += y.lift.ice.is_frozen_vertex(p.tail) && y.lift.ice.is_frozen_vertex(p.head);
  CHECK(e.dimension() == count);
  for (const auto& p : e.paths) {
    CHECK(y.lift.ice.is_frozen_vertex(p.tail));
    CHECK(y.lift.ice.is_frozen_vertex(p.head));
  }
}

TEST_CASE("boundary presentation maps isomorphically onto the corner") {
  for (int n = 1; n <= 3; ++n) {
    PhiReport r = verify_phi(linear(n));
    INFO("A" << n);
    CHECK(r.well_defined);
    CHECK(r.surjective);
    CHECK(r.dimensions_match);
    CHECK(r.passed());
  }
  CHECK(verify_phi(linear(1)).corner_total == 4);
}

TEST_CASE("long boundary arrow is outside the image of the frozen arrows and derivatives") {
  // The subalgebra generated by the frozen arrows and the derivatives with
  // respect to them misses the image of the long arrow for linear A3.
  Lifted x = lifted(linear(3));
  GradedQuotientAlgebra a = certified_algebra(x);
  const Quiver& t = x.lift.quiver();
  std::vector<AlgebraElement> gens;
  for (int f : x.lift.ice.frozen_arrows()) {
    gens.push_back(arrow_element(t, f));
    gens.push_back(cyclic_derivative(t, x.lift.potential, f));
  }
  // Span, degree by degree, of products of generators.
  std::vector<std::vector<AlgebraElement>> span(a.bound() + 1);
  std::vector<Echelon> ech(a.bound() + 1);
  for (int v : x.lift.ice.frozen_vertices()) {
    ech[0].insert(unit(v));
    span[0].push_back(AlgebraElement(Path::trivial(v)));
  }
  for (int k = 1; k <= a.bound(); ++k)
    for (const auto& g : gens) {
      int j = k - *x.grading.of_element(g);
      if (j < 0) continue;
      for (const auto& s : span[j]) {
        AlgebraElement prod = a.normal_form(g * s);
        if (prod.is_zero()) continue;
        auto red = a.reduce(prod);
        if (ech[k].insert(red.begin()->second)) span[k].push_back(prod);
      }
    }
  GammaPresentation g = gamma_presentation(linear(3));
  Path image = phi_arrow(x.lift, g, g.quiver().arrow_at("dbar_b*a"));
  GradedVec r = a.reduce(image);
  REQUIRE_FALSE(r.coords.empty());
  CHECK_FALSE(ech[r.degree].contains(r.coords));
  Path short_image = phi_arrow(x.lift, g, g.quiver().arrow_at("dbar_a"));
  GradedVec s = a.reduce(short_image);
  CHECK(ech[s.degree].contains(s.coords));
}

TEST_CASE("the A2 boundary ideal equals the seven-generator ideal") {
  GammaPresentation g = gamma_presentation(linear(2));
  const Quiver& q = g.quiver();
  // Relabelling 1+, 1-, 2+, 2- as 1, 2, 3, 4.
  const std::string al = "delta_1", al_bar = "dbar_1", be = "dbar_a", be_bar = "delta_a", ga = "delta_2",
                    ga_bar = "dbar_2";
  std::vector<Relation> seven{
      {"al_bar al", elem(q, {al, al_bar})},
      {"al al_bar - be_bar be", elem(q, {al_bar, al}) - elem(q, {be, be_bar})},
      {"be be_bar - ga_bar ga", elem(q, {be_bar, be}) - elem(q, {ga, ga_bar})},
      {"ga ga_bar", elem(q, {ga_bar, ga})},
      {"be al", elem(q, {al, be})},
      {"ga be", elem(q, {be, ga})},
      {"al_bar be_bar ga_bar", elem(q, {ga_bar, be_bar, al_bar})},
  };
  for (const auto& r : seven) REQUIRE(g.grading.of_element(r.element).has_value());
  Presentation other{g.presentation.ice, seven};
  const int bound = 14;
  GradedQuotientAlgebra ours = GradedQuotientAlgebra::build(g.presentation, g.grading, bound);
  GradedQuotientAlgebra theirs = GradedQuotientAlgebra::build(other, g.grading, bound);
  CHECK(ours.complete());
  CHECK(theirs.complete());
  CHECK_FALSE(first_nonvanishing(ours, seven).has_value());
  CHECK_FALSE(first_nonvanishing(theirs, g.presentation.relations).has_value());
  CHECK(ours.dimensions() == theirs.dimensions());
}

TEST_CASE("r3 for a source arrow follows from r1 and r2") {
  GammaPresentation g = gamma_presentation(linear(2));
  Presentation quadratic{g.presentation.ice, {}};
  std::vector<Relation> cubic;
  for (const auto& r : g.presentation.relations)
    (r.label.rfind("r3", 0) == 0 ? cubic : quadratic.relations).push_back(r);
  GradedQuotientAlgebra a = GradedQuotientAlgebra::build(quadratic, g.grading, 12);
  std::map<std::string, bool> vanishes;
  for (const auto& r : cubic) vanishes[r.label] = a.is_zero(r.element);
  CHECK(vanishes.at("r3(a,a,a)"));
  CHECK_FALSE(vanishes.at("r3(1,a,2)"));
}

TEST_CASE("preprojective relation") {
  for (int n = 1; n <= 4; ++n) {
    Lifted x = lifted(linear(n));
    CHECK(preprojective_check(certified_algebra(x), x.lift.ice, x.lift.potential));
  }
  Quiver c = cycle3();
  Lifted x = lifted(c, testing_support::cycle3_potential(c));
  GradedQuotientAlgebra a = GradedQuotientAlgebra::build(x.relations, x.grading, 27);
  CHECK(preprojective_check(a, x.lift.ice, x.lift.potential));
  Quiver plain = cycle3();
  Potential w = testing_support::cycle3_potential(plain);
  Presentation p{IceQuiver(plain), {}};
  GradedQuotientAlgebra free_alg = GradedQuotientAlgebra::build(p, Grading::constant(plain, 1), 6);
  CHECK(preprojective_check(free_alg, IceQuiver(plain), w));
}

TEST_CASE("build rejects bad input") {
  Quiver q = linear(2);
  Presentation inhom{IceQuiver(q), {{"bad", elem(q, {"a"}) + AlgebraElement(Path::trivial(0))}}};
  CHECK_THROWS_AS(GradedQuotientAlgebra::build(inhom, Grading::constant(q, 1), 4), InputError);
  Presentation ok{IceQuiver(q), {}};
  CHECK_THROWS_AS(GradedQuotientAlgebra::build(ok, Grading{{0}}, 4), InputError);
  Quiver c = cycle3();
  Lifted x = lifted(c, testing_support::cycle3_potential(c));
  GradedQuotientAlgebra a = GradedQuotientAlgebra::build(x.relations, x.grading, 6);
  CHECK_THROWS_AS(a.reduce(testing_support::path_of(x.lift.quiver(), {"a", "b", "c"})), TruncationError);
  GradedQuotientAlgebra fin = certified_algebra(lifted(linear(2)));
  CHECK(fin.reduce(Path::from_arrows(fin.quiver(), std::vector<int>(1, 0))).degree == 1);
}
