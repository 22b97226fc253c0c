#include <catch_amalgamated.hpp>

#include <set>

#include "iceqp/lift.hpp"
#include "support.hpp"

using namespace iceqp;
using testing_support::cycle3;
using testing_support::elem;
using testing_support::linear;

namespace {

std::set<std::string> vertex_ids(const Quiver& q) {
  std::set<std::string> out;
  for (const auto& v : q.vertices()) out.insert(v.id);
  return out;
}

std::set<std::tuple<std::string, std::string, std::string>> arrow_set(const Quiver& q) {
  std::set<std::tuple<std::string, std::string, std::string>> out;
  for (const auto& a : q.arrows()) out.insert({a.id, q.vertex(a.tail).id, q.vertex(a.head).id});
  return out;
}

Potential potential_of(const Quiver& q, std::vector<std::pair<int, std::vector<std::string>>> terms) {
  std::vector<PotentialTerm> raw;
  for (auto& [c, ids] : terms) raw.push_back({c, testing_support::path_of(q, ids)});
  return Potential::normalize(q, raw);
}

void check_lift_invariants(const LiftedIQP& l) {
  const Quiver& q = l.base;
  const Quiver& t = l.quiver();
  CHECK(t.num_vertices() == 3 * q.num_vertices());
  CHECK(t.num_arrows() == 2 * q.num_arrows() + 3 * q.num_vertices());
  for (int i = 0; i < q.num_vertices(); ++i) {
    REQUIRE(t.in_arrows(l.plus[i]).size() == 1);
    CHECK(t.in_arrows(l.plus[i])[0] == l.alpha[i]);
    REQUIRE(t.out_arrows(l.minus[i]).size() == 1);
    CHECK(t.out_arrows(l.minus[i])[0] == l.beta[i]);
    for (int a : t.out_arrows(l.plus[i])) CHECK(l.ice.is_frozen_arrow(a));
    for (int a : t.in_arrows(l.minus[i])) CHECK(l.ice.is_frozen_arrow(a));
  }
  for (int a : l.ice.frozen_arrows()) {
    const Arrow& ar = t.arrow(a);
    CHECK(std::find(l.plus.begin(), l.plus.end(), ar.tail) != l.plus.end());
    CHECK(std::find(l.minus.begin(), l.minus.end(), ar.head) != l.minus.end());
  }
  // F~ is full on the frozen vertices.
  for (int a = 0; a < t.num_arrows(); ++a) {
    const Arrow& ar = t.arrow(a);
    if (l.ice.is_frozen_vertex(ar.tail) && l.ice.is_frozen_vertex(ar.head)) CHECK(l.ice.is_frozen_arrow(a));
  }
}

}  // namespace

TEST_CASE("lift of A2") {
  LiftedIQP l = lift_qp(linear(2), Potential{});
  const Quiver& t = l.quiver();
  CHECK(vertex_ids(t) == std::set<std::string>{"1", "2", "1+", "2+", "1-", "2-"});
  CHECK(arrow_set(t) == std::set<std::tuple<std::string, std::string, std::string>>{
                            {"a", "1", "2"},
                            {"alpha_1", "1", "1+"},
                            {"alpha_2", "2", "2+"},
                            {"beta_1", "1-", "1"},
                            {"beta_2", "2-", "2"},
                            {"delta_1", "1+", "1-"},
                            {"delta_2", "2+", "2-"},
                            {"delta_a", "2+", "1-"}});
  Potential expected = potential_of(t, {{1, {"alpha_1", "delta_1", "beta_1"}},
                                        {1, {"alpha_2", "delta_2", "beta_2"}},
                                        {-1, {"alpha_2", "delta_a", "beta_1", "a"}}});
  CHECK(l.potential == expected);
  check_lift_invariants(l);
}

TEST_CASE("lift of the 3-cycle") {
  Quiver q = cycle3();
  LiftedIQP l = lift_qp(q, testing_support::cycle3_potential(q));
  const Quiver& t = l.quiver();
  CHECK(t.num_vertices() == 9);
  CHECK(t.num_arrows() == 15);
  CHECK(l.potential.terms().size() == 7);
  Potential expected = potential_of(
      t, {{1, {"a", "b", "c"}},
          {1, {"alpha_1", "delta_1", "beta_1"}},
          {1, {"alpha_2", "delta_2", "beta_2"}},
          {1, {"alpha_3", "delta_3", "beta_3"}},
          {-1, {"alpha_2", "delta_a", "beta_1", "a"}},
          {-1, {"alpha_3", "delta_b", "beta_2", "b"}},
          {-1, {"alpha_1", "delta_c", "beta_3", "c"}}});
  CHECK(l.potential == expected);
  check_lift_invariants(l);
}

TEST_CASE("lift of an isolated vertex") {
  LiftedIQP l = lift_qp(linear(1), Potential{});
  const Quiver& t = l.quiver();
  CHECK(vertex_ids(t) == std::set<std::string>{"1", "1+", "1-"});
  CHECK(t.num_arrows() == 3);
  CHECK(l.potential == potential_of(t, {{1, {"alpha_1", "delta_1", "beta_1"}}}));
  check_lift_invariants(l);
}

TEST_CASE("lift invariants hold on larger quivers") {
  check_lift_invariants(lift_qp(linear(4), Potential{}));
  check_lift_invariants(lift_qp(testing_support::fixture_quiver("kronecker"), Potential{}));
}

TEST_CASE("generated ids are collision checked") {
  Quiver q;
  q.add_vertex("1");
  q.add_vertex("1+");
  CHECK_THROWS_AS(lift_qp(q, Potential{}), InputError);
  Quiver r;
  r.add_vertex("x");
  r.add_vertex("y");
  r.add_arrow("x", 0, 1);
  CHECK_THROWS_AS(lift_qp(r, Potential{}), InputError);
}

TEST_CASE("relation set of the A2 lift") {
  LiftedIQP l = lift_qp(linear(2), Potential{});
  const Quiver& t = l.quiver();
  Presentation p = relation_set(l);
  REQUIRE(p.relations.size() == 5);
  std::map<std::string, AlgebraElement> by_label;
  for (const auto& r : p.relations) by_label[r.label] = r.element;
  CHECK(by_label["d_a"] == elem(t, {"alpha_2", "delta_a", "beta_1"}, -1));
  CHECK(by_label["d_alpha_1"] == elem(t, {"delta_1", "beta_1"}));
  CHECK(by_label["d_alpha_2"] == elem(t, {"delta_2", "beta_2"}) - elem(t, {"delta_a", "beta_1", "a"}));
  CHECK(by_label["d_beta_1"] == elem(t, {"alpha_1", "delta_1"}) - elem(t, {"a", "alpha_2", "delta_a"}));
  CHECK(by_label["d_beta_2"] == elem(t, {"alpha_2", "delta_2"}));
}

TEST_CASE("relation set with zero potential and on the 3-cycle") {
  LiftedIQP l = lift_qp(linear(4), Potential{});
  const Quiver& t = l.quiver();
  Presentation p = relation_set(l);
  for (int a = 0; a < l.base.num_arrows(); ++a) {
    const Arrow& ar = l.base.arrow(a);
    AlgebraElement expected = -AlgebraElement(Path::from_arrows(t, {l.alpha[ar.head], l.delta_arrow[a], l.beta[ar.tail]}));
    CHECK(p.relations[a].element == expected);
  }
  Quiver q = cycle3();
  LiftedIQP c = lift_qp(q, testing_support::cycle3_potential(q));
  const Quiver& ct = c.quiver();
  CHECK(relation_set(c).relations[0].element == elem(ct, {"b", "c"}) - elem(ct, {"alpha_2", "delta_a", "beta_1"}));
}

TEST_CASE("relations are parallel and homogeneous") {
  Quiver q = cycle3();
  for (const auto& [base, w] : std::vector<std::pair<Quiver, Potential>>{
           {q, testing_support::cycle3_potential(q)}, {linear(3), Potential{}}, {linear(1), Potential{}}}) {
    LiftedIQP l = lift_qp(base, w);
    LiftedGrading g = lift_grading(l, Grading::constant(base, 1));
    for (const auto& r : relation_set(l).relations) {
      CHECK(r.element.endpoints().has_value());
      CHECK(g.grading.of_element(r.element).has_value());
    }
  }
}

TEST_CASE("zig-zags of A2") {
  Quiver q = linear(2);
  auto z = zigzags(q);
  REQUIRE(z.size() == 4);
  int strict = 0;
  for (const auto& x : z) {
    if (x.strict) {
      ++strict;
      CHECK(x.p.is_trivial());
      CHECK(x.q.is_trivial());
      CHECK(x.p.tail == 1);
      CHECK(x.q.tail == 0);
    }
  }
  CHECK(strict == 1);
}

TEST_CASE("zig-zag counts") {
  CHECK(zigzags(linear(3)).size() == 12);
  CHECK(zigzags(linear(1)).empty());
  for (int n = 1; n <= 5; ++n) {
    Quiver q = linear(n);
    auto paths = all_paths(q);
    std::size_t expected = 0;
    for (const auto& a : q.arrows()) {
      std::size_t heads = 0, tails = 0;
      for (const auto& p : paths) {
        heads += p.head == a.head;
        tails += p.tail == a.tail;
      }
      expected += heads * tails;
    }
    CHECK(zigzags(q).size() == expected);
    for (const auto& z : zigzags(q)) {
      CHECK(z.p.head == q.arrow(z.arrow).head);
      CHECK(z.q.tail == q.arrow(z.arrow).tail);
    }
  }
}

TEST_CASE("boundary presentation of linear A3") {
  GammaPresentation g = gamma_presentation(linear(3));
  const Quiver& gq = g.quiver();
  CHECK(gq.num_vertices() == 6);
  CHECK(gq.num_arrows() == 11);
  int long_arrow = gq.arrow_at("dbar_b*a");
  CHECK(gq.vertex(gq.arrow(long_arrow).tail).id == "1-");
  CHECK(gq.vertex(gq.arrow(long_arrow).head).id == "3+");
}

TEST_CASE("boundary presentation of A2 and of a vertex") {
  GammaPresentation g = gamma_presentation(linear(2));
  CHECK(g.quiver().num_vertices() == 4);
  CHECK(g.quiver().num_arrows() == 6);
  GammaPresentation v = gamma_presentation(linear(1));
  const Quiver& vq = v.quiver();
  CHECK(vq.num_vertices() == 2);
  REQUIRE(vq.num_arrows() == 2);
  REQUIRE(v.presentation.relations.size() == 2);
  CHECK(v.presentation.relations[0].element == elem(vq, {"delta_1", "dbar_1"}));
  CHECK(v.presentation.relations[1].element == elem(vq, {"dbar_1", "delta_1"}));
  CHECK_THROWS_AS(gamma_presentation(cycle3()), InputError);
}

TEST_CASE("boundary relations are parallel and homogeneous") {
  for (int n = 1; n <= 4; ++n) {
    GammaPresentation g = gamma_presentation(linear(n));
    for (const auto& r : g.presentation.relations) {
      CHECK(r.element.endpoints().has_value());
      CHECK(g.grading.of_element(r.element).has_value());
    }
  }
}
