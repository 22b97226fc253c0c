#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "iceqp/quiver.hpp"
#include "iceqp/rational.hpp"

namespace iceqp {

/// Finite linear combination of paths with rational coefficients.
class AlgebraElement {
 public:
  using Terms = std::map<Path, Rational>;

  AlgebraElement() = default;
  explicit AlgebraElement(const Path& p, const Rational& c = 1) { add(p, c); }

  void add(const Path& p, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(p, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  AlgebraElement& operator+=(const AlgebraElement& o) {
    for (const auto& [p, c] : o.terms_) add(p, c);
    return *this;
  }
  AlgebraElement& operator-=(const AlgebraElement& o) {
    for (const auto& [p, c] : o.terms_) add(p, -c);
    return *this;
  }
  AlgebraElement& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [p, c] : terms_) c *= s;
    return *this;
  }

  friend AlgebraElement operator+(AlgebraElement x, const AlgebraElement& y) { return x += y; }
  friend AlgebraElement operator-(AlgebraElement x, const AlgebraElement& y) { return x -= y; }
  friend AlgebraElement operator*(AlgebraElement x, const Rational& s) { return x *= s; }
  friend AlgebraElement operator*(const Rational& s, AlgebraElement x) { return x *= s; }
  friend AlgebraElement operator-(AlgebraElement x) { return x *= Rational(-1); }

  /// Product x·y in composition order: y is traversed first.
  friend AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y) {
    AlgebraElement out;
    for (const auto& [p, c] : x.terms_)
      for (const auto& [q, d] : y.terms_)
        if (auto pq = compose(p, q)) out.add(*pq, c * d);
    return out;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Terms& terms() const { return terms_; }
  Rational coefficient(const Path& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Common (tail, head) of all terms, if every term is parallel.
  std::optional<std::pair<int, int>> endpoints() const {
    std::optional<std::pair<int, int>> e;
    for (const auto& [p, c] : terms_) {
      std::pair<int, int> here{p.tail, p.head};
      if (e && *e != here) return std::nullopt;
      e = here;
    }
    return e;
  }

  bool operator==(const AlgebraElement&) const = default;

 private:
  Terms terms_;
};

inline AlgebraElement arrow_element(const Quiver& q, int a) {
  return AlgebraElement(Path::of_arrow(q, a));
}

inline AlgebraElement path_element(const Quiver& q, const std::vector<int>& traversal) {
  return AlgebraElement(Path::from_arrows(q, traversal));
}

inline std::string render(const Quiver& q, const AlgebraElement& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [p, c] : x.terms()) {
    std::string mag = to_string(c < 0 ? Rational(-c) : c);
    if (out.empty())
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    if (mag != "1") out += mag + "*";
    out += render(q, p);
  }
  return out;
}

/// Arrow degrees indexed by arrow position.
struct Grading {
  std::vector<int> degree;

  int of_arrow(int a) const { return degree.at(a); }
  int of_path(const Path& p) const {
    int d = 0;
    for (int a : p.arrows) d += degree.at(a);
    return d;
  }
  int max_degree() const {
    return degree.empty() ? 0 : *std::max_element(degree.begin(), degree.end());
  }
  bool is_positive() const {
    return std::all_of(degree.begin(), degree.end(), [](int d) { return d > 0; });
  }
  /// Degree of x if every term has the same degree.
  std::optional<int> of_element(const AlgebraElement& x) const {
    std::optional<int> d;
    for (const auto& [p, c] : x.terms()) {
      int here = of_path(p);
      if (d && *d != here) return std::nullopt;
      d = here;
    }
    return d;
  }

  static Grading constant(const Quiver& q, int value) {
    return Grading{std::vector<int>(q.num_arrows(), value)};
  }
  static Grading from_ids(const Quiver& q, const std::map<std::string, int>& by_id) {
    Grading g{std::vector<int>(q.num_arrows(), 0)};
    for (int a = 0; a < q.num_arrows(); ++a) {
      auto it = by_id.find(q.arrow(a).id);
      if (it == by_id.end())
        throw InputError("no degree given for arrow '" + q.arrow(a).id + "'", q.arrow(a).id);
      g.degree[a] = it->second;
    }
    for (const auto& [id, d] : by_id) q.arrow_at(id);
    return g;
  }
  std::map<std::string, int> to_ids(const Quiver& q) const {
    std::map<std::string, int> out;
    for (int a = 0; a < q.num_arrows(); ++a) out[q.arrow(a).id] = degree.at(a);
    return out;
  }

  bool operator==(const Grading&) const = default;
};

/// Rotation of a cycle's traversal sequence whose arrow-id list is least.
inline std::vector<int> canonical_rotation(const Quiver& q, const std::vector<int>& cycle) {
  std::vector<int> best = cycle;
  std::vector<std::string> best_ids;
  for (int a : best) best_ids.push_back(q.arrow(a).id);
  for (std::size_t s = 1; s < cycle.size(); ++s) {
    std::vector<int> r(cycle.begin() + s, cycle.end());
    r.insert(r.end(), cycle.begin(), cycle.begin() + s);
    std::vector<std::string> ids;
    for (int a : r) ids.push_back(q.arrow(a).id);
    if (ids < best_ids || (ids == best_ids && r < best)) {
      best = std::move(r);
      best_ids = std::move(ids);
    }
  }
  return best;
}

struct PotentialTerm {
  Rational coefficient;
  Path cycle;
  bool operator==(const PotentialTerm&) const = default;
};

/// Finite sum of cycles up to rotation; terms stored canonically rotated,
/// merged, nonzero and sorted by cycle.
class Potential {
 public:
  Potential() = default;

  static Potential normalize(const Quiver& q, const std::vector<PotentialTerm>& raw) {
    std::map<Path, Rational> merged;
    for (const auto& t : raw) {
      const Path& c = t.cycle;
      if (c.length() < 2 || c.tail != c.head)
        throw InputError("potential term is not a cycle of length at least 2", render(q, c));
      Path::from_arrows(q, c.arrows);
      Path canon = Path::from_arrows(q, canonical_rotation(q, c.arrows));
      merged[canon] += t.coefficient;
    }
    Potential w;
    for (const auto& [c, coef] : merged)
      if (coef != 0) w.terms_.push_back({coef, c});
    return w;
  }

  const std::vector<PotentialTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool operator==(const Potential&) const = default;

  bool contains_arrow(int a) const {
    for (const auto& t : terms_)
      if (std::find(t.cycle.arrows.begin(), t.cycle.arrows.end(), a) != t.cycle.arrows.end())
        return true;
    return false;
  }

 private:
  std::vector<PotentialTerm> terms_;
};

inline std::string render(const Quiver& q, const Potential& w) {
  AlgebraElement x;
  for (const auto& t : w.terms()) x.add(t.cycle, t.coefficient);
  return render(q, x);
}

/// Cyclic derivative: each occurrence of `arrow` is deleted and the rest of
/// the cycle read starting just after it.
inline AlgebraElement cyclic_derivative(const Quiver& q, const Potential& w, int arrow) {
  if (arrow < 0 || arrow >= q.num_arrows())
    throw InputError("unknown arrow index " + std::to_string(arrow), std::to_string(arrow));
  AlgebraElement out;
  for (const auto& t : w.terms()) {
    const auto& seq = t.cycle.arrows;
    for (std::size_t j = 0; j < seq.size(); ++j) {
      if (seq[j] != arrow) continue;
      std::vector<int> rest(seq.begin() + j + 1, seq.end());
      rest.insert(rest.end(), seq.begin(), seq.begin() + j);
      out.add(Path::from_arrows(q, rest), t.coefficient);
    }
  }
  return out;
}

/// Right derivative: strips `arrow` where it is the first traversed arrow.
inline AlgebraElement right_derivative(const Quiver& q, const AlgebraElement& x, int arrow) {
  AlgebraElement out;
  for (const auto& [p, c] : x.terms()) {
    if (p.is_trivial() || p.arrows.front() != arrow) continue;
    Path r{std::vector<int>(p.arrows.begin() + 1, p.arrows.end()), q.arrow(arrow).head, p.head};
    out.add(r, c);
  }
  return out;
}

struct GradingReport {
  bool positive = false;
  bool homogeneous = false;
  std::optional<int> degree_of_potential;
};

inline GradingReport check_grading(const Quiver& q, const Potential& w, const Grading& deg) {
  GradingReport r;
  if (static_cast<int>(deg.degree.size()) != q.num_arrows())
    throw InputError("grading does not cover every arrow", "");
  r.positive = deg.is_positive();
  std::set<int> seen;
  for (const auto& t : w.terms()) seen.insert(deg.of_path(t.cycle));
  r.homogeneous = seen.size() <= 1;
  if (seen.size() == 1) r.degree_of_potential = *seen.begin();
  return r;
}

}  // namespace iceqp
