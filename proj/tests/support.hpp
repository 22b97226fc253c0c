#pragma once

#include <string>
#include <vector>

#include "iceqp/json_io.hpp"
#include "iceqp/quiver.hpp"

namespace testing_support {

inline iceqp::QuiverInput fixture(const std::string& name) {
  return iceqp::load_quiver_input(std::string(ICEQP_FIXTURES) + "/" + name + ".json");
}

inline iceqp::Quiver fixture_quiver(const std::string& name) { return fixture(name).quiver(); }

/// Linear A_n: 1 -> 2 -> ... -> n.
inline iceqp::Quiver linear(int n) {
  iceqp::Quiver q;
  for (int i = 1; i <= n; ++i) q.add_vertex(std::to_string(i));
  const char* names = "abcdefghij";
  for (int i = 0; i + 1 < n; ++i) q.add_arrow(std::string(1, names[i]), i, i + 1);
  return q;
}

inline iceqp::Quiver cycle3() {
  iceqp::Quiver q;
  for (int i = 1; i <= 3; ++i) q.add_vertex(std::to_string(i));
  q.add_arrow("a", 0, 1);
  q.add_arrow("b", 1, 2);
  q.add_arrow("c", 2, 0);
  return q;
}

/// The potential c*b*a on the 3-cycle (a traversed first).
inline iceqp::Potential cycle3_potential(const iceqp::Quiver& q) {
  using namespace iceqp;
  return Potential::normalize(q, {{1, Path::from_arrows(q, {q.arrow_at("a"), q.arrow_at("b"), q.arrow_at("c")})}});
}

inline iceqp::Path path_of(const iceqp::Quiver& q, const std::vector<std::string>& traversal) {
  std::vector<int> arrows;
  for (const auto& id : traversal) arrows.push_back(q.arrow_at(id));
  return iceqp::Path::from_arrows(q, arrows);
}

inline iceqp::AlgebraElement elem(const iceqp::Quiver& q, const std::vector<std::string>& traversal,
                                  const iceqp::Rational& c = 1) {
  return iceqp::AlgebraElement(path_of(q, traversal), c);
}

}  // namespace testing_support
