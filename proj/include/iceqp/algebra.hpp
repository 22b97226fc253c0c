#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "iceqp/element.hpp"
#include "iceqp/lift.hpp"
#include "iceqp/linalg.hpp"
#include "iceqp/quiver.hpp"

namespace iceqp {

/// Raised when a computation needs a degree beyond an uncertified truncation.
class TruncationError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Homogeneous element: a degree and coordinates in that degree's basis.
struct GradedVec {
  int degree = 0;
  SparseVec coords;
};

struct GabrielArrow {
  int tail = 0;
  int head = 0;
  int multiplicity = 0;
};

struct SubalgebraBasis {
  std::vector<int> vertices;
  std::vector<std::pair<int, int>> basis;  // (degree, index) in the algebra
  std::vector<Path> paths;
  std::size_t dimension() const { return basis.size(); }
};

/// Quotient of a path algebra by a homogeneous ideal, computed degree by
/// degree up to a bound. Each degree's basis consists of normal-form paths;
/// left multiplication by arrows is tabulated on basis elements.
class GradedQuotientAlgebra {
 public:
  static GradedQuotientAlgebra build(const Presentation& p, const Grading& deg, int bound) {
    GradedQuotientAlgebra alg(p, deg, bound);
    alg.run();
    return alg;
  }

  const Quiver& quiver() const { return quiver_; }
  const Grading& grading() const { return grading_; }
  int bound() const { return bound_; }
  bool complete() const { return complete_; }
  /// Highest degree that was computed (at most the bound).
  int built_degree() const { return static_cast<int>(components_.size()) - 1; }
  int top_degree() const {
    for (int k = built_degree(); k >= 0; --k)
      if (!components_[k].basis.empty()) return k;
    return -1;
  }

  std::size_t dim(int k) const {
    if (k < 0 || k > built_degree()) {
      check_degree(k);
      return 0;
    }
    return components_[k].basis.size();
  }
  std::vector<std::size_t> dimensions() const {
    std::vector<std::size_t> out;
    for (const auto& c : components_) out.push_back(c.basis.size());
    return out;
  }
  std::size_t total_dimension() const {
    std::size_t s = 0;
    for (const auto& c : components_) s += c.basis.size();
    return s;
  }
  const std::vector<Path>& basis(int k) const {
    static const std::vector<Path> empty;
    if (k < 0 || k > built_degree()) {
      check_degree(k);
      return empty;
    }
    return components_[k].basis;
  }
  const Path& basis_path(int k, int i) const { return components_.at(k).basis.at(i); }

  /// a·v for v homogeneous of degree k.
  SparseVec left_multiply(int arrow, int k, const SparseVec& v) const {
    int target = k + grading_.of_arrow(arrow);
    if (target > built_degree()) {
      check_degree(target);
      return {};
    }
    SparseVec out;
    for (const auto& [i, c] : v) {
      const auto& table = components_[k].left[i];
      auto it = table.find(arrow);
      if (it != table.end()) axpy(out, c, it->second);
    }
    return out;
  }

  /// p·v for a path p and v homogeneous of degree k.
  GradedVec left_multiply(const Path& p, GradedVec v) const {
    for (int a : p.arrows) {
      if (v.coords.empty()) {
        v.degree += grading_.of_arrow(a);
        continue;
      }
      v.coords = left_multiply(a, v.degree, v.coords);
      v.degree += grading_.of_arrow(a);
    }
    if (v.degree > built_degree()) check_degree(v.degree);
    return v;
  }

  GradedVec reduce(const Path& p) const {
    check_degree(grading_.of_path(p));
    return left_multiply(p, GradedVec{0, unit(p.tail)});
  }

  /// Coordinates per degree; inhomogeneous input is reduced componentwise.
  std::map<int, SparseVec> reduce(const AlgebraElement& x) const {
    std::map<int, SparseVec> out;
    for (const auto& [p, c] : x.terms()) {
      GradedVec r = reduce(p);
      axpy(out[r.degree], c, r.coords);
    }
    for (auto it = out.begin(); it != out.end();)
      it = it->second.empty() ? out.erase(it) : std::next(it);
    return out;
  }

  bool is_zero(const AlgebraElement& x) const { return reduce(x).empty(); }

  AlgebraElement to_element(int k, const SparseVec& v) const {
    AlgebraElement out;
    for (const auto& [i, c] : v) out.add(basis_path(k, i), c);
    return out;
  }

  AlgebraElement normal_form(const AlgebraElement& x) const {
    AlgebraElement out;
    for (const auto& [k, v] : reduce(x)) out += to_element(k, v);
    return out;
  }

  /// Product of basis elements (k1, i) * (k2, j) in composition order.
  GradedVec multiply_basis(int k1, int i, int k2, int j) const {
    const Path& x = basis_path(k1, i);
    const Path& y = basis_path(k2, j);
    if (x.tail != y.head) return GradedVec{k1 + k2, {}};
    return left_multiply(x, GradedVec{k2, unit(j)});
  }

  void require_complete(const char* what) const {
    if (!complete_)
      throw TruncationError(std::string(what) + " needs a complete algebra; truncation at degree " +
                            std::to_string(bound_) + " is not certified");
  }

  std::vector<GabrielArrow> gabriel_quiver() const {
    require_complete("gabriel quiver");
    std::map<std::pair<int, int>, int> mult;
    for (int k = 1; k <= built_degree(); ++k) {
      std::map<std::pair<int, int>, Echelon> rad2;
      std::map<std::pair<int, int>, int> count;
      for (const Path& p : components_[k].basis) ++count[{p.tail, p.head}];
      for (int a = 0; a < quiver_.num_arrows(); ++a) {
        int j = k - grading_.of_arrow(a);
        if (j < 1) continue;
        for (int i = 0; i < static_cast<int>(components_[j].basis.size()); ++i) {
          const Path& b = components_[j].basis[i];
          if (b.head != quiver_.arrow(a).tail) continue;
          rad2[{b.tail, quiver_.arrow(a).head}].insert(left_multiply(a, j, unit(i)));
        }
      }
      for (const auto& [key, n] : count) {
        auto it = rad2.find(key);
        int r = it == rad2.end() ? 0 : static_cast<int>(it->second.rank());
        if (n - r > 0) mult[key] += n - r;
      }
    }
    std::vector<GabrielArrow> out;
    for (const auto& [key, m] : mult) out.push_back({key.first, key.second, m});
    return out;
  }

  SubalgebraBasis corner(const std::vector<int>& vertices) const {
    require_complete("corner");
    return corner_truncated(vertices);
  }

  /// Basis elements with both endpoints in `vertices`, over the computed degrees.
  SubalgebraBasis corner_truncated(const std::vector<int>& vertices) const {
    SubalgebraBasis out;
    out.vertices = vertices;
    std::vector<bool> in(quiver_.num_vertices(), false);
    for (int v : vertices) in.at(v) = true;
    for (int k = 0; k <= built_degree(); ++k)
      for (int i = 0; i < static_cast<int>(components_[k].basis.size()); ++i) {
        const Path& p = components_[k].basis[i];
        if (in[p.tail] && in[p.head]) {
          out.basis.push_back({k, i});
          out.paths.push_back(p);
        }
      }
    return out;
  }

 private:
  struct Component {
    std::vector<Path> basis;
    std::vector<std::map<int, SparseVec>> left;
  };

  GradedQuotientAlgebra(const Presentation& p, const Grading& deg, int bound)
      : quiver_(p.quiver()), grading_(deg), bound_(bound) {
    if (bound < 0) throw InputError("truncation bound must be nonnegative", "bound");
    if (static_cast<int>(deg.degree.size()) != quiver_.num_arrows())
      throw InputError("grading does not cover every arrow", "");
    for (int a = 0; a < quiver_.num_arrows(); ++a)
      if (deg.of_arrow(a) <= 0)
        throw InputError("arrow '" + quiver_.arrow(a).id + "' has nonpositive degree",
                         quiver_.arrow(a).id);
    for (const auto& r : p.relations) {
      if (r.element.is_zero()) continue;
      auto d = deg.of_element(r.element);
      if (!d) throw InputError("relation '" + r.label + "' is not homogeneous", r.label);
      if (!r.element.endpoints())
        throw InputError("relation '" + r.label + "' mixes non-parallel paths", r.label);
      for (const auto& [path, c] : r.element.terms())
        if (path.is_trivial())
          throw InputError("relation '" + r.label + "' has a trivial path term", r.label);
      relations_.push_back({*d, r.element});
    }
  }

  void check_degree(int k) const {
    if (k > bound_ && !complete_)
      throw TruncationError("degree " + std::to_string(k) + " exceeds the uncertified bound " +
                            std::to_string(bound_));
  }

  void run() {
    Component zero;
    for (int v = 0; v < quiver_.num_vertices(); ++v) zero.basis.push_back(Path::trivial(v));
    zero.left.resize(zero.basis.size());
    components_.push_back(std::move(zero));
    const int window = grading_.max_degree();
    if (quiver_.num_arrows() == 0) {
      complete_ = true;
      return;
    }
    int zeros = 0;
    for (int k = 1; k <= bound_; ++k) {
      build_degree(k);
      zeros = components_[k].basis.empty() ? zeros + 1 : 0;
      if (zeros >= window) {
        complete_ = true;
        break;
      }
    }
  }

  void build_degree(int k) {
    struct Coord {
      Path path;
      int arrow;
      int source;
    };
    std::vector<Coord> coords;
    for (int a = 0; a < quiver_.num_arrows(); ++a) {
      int j = k - grading_.of_arrow(a);
      if (j < 0) continue;
      const auto& lower = components_[j].basis;
      for (int i = 0; i < static_cast<int>(lower.size()); ++i) {
        if (lower[i].head != quiver_.arrow(a).tail) continue;
        Path p = lower[i];
        p.arrows.push_back(a);
        p.head = quiver_.arrow(a).head;
        coords.push_back({std::move(p), a, i});
      }
    }
    std::sort(coords.begin(), coords.end(),
              [](const Coord& x, const Coord& y) { return x.path.arrows < y.path.arrows; });
    std::map<std::pair<int, int>, int> column;
    for (int c = 0; c < static_cast<int>(coords.size()); ++c)
      column[{coords[c].arrow, coords[c].source}] = c;

    Echelon ech;
    for (const auto& [rdeg, rel] : relations_) {
      int j = k - rdeg;
      if (j < 0) continue;
      auto [rtail, rhead] = *rel.endpoints();
      const auto& lower = components_[j].basis;
      for (int i = 0; i < static_cast<int>(lower.size()); ++i) {
        if (lower[i].head != rtail) continue;
        SparseVec row;
        for (const auto& [path, coef] : rel.terms()) {
          int last = path.arrows.back();
          Path front{std::vector<int>(path.arrows.begin(), path.arrows.end() - 1), path.tail,
                     quiver_.arrow(last).tail};
          GradedVec inner = left_multiply(front, GradedVec{j, unit(i)});
          for (const auto& [idx, c] : inner.coords) axpy(row, coef * c, unit(column.at({last, idx})));
        }
        ech.insert(std::move(row));
      }
    }

    Component comp;
    std::vector<int> basis_index(coords.size(), -1);
    for (int c = 0; c < static_cast<int>(coords.size()); ++c) {
      if (ech.has_pivot(c)) continue;
      basis_index[c] = static_cast<int>(comp.basis.size());
      comp.basis.push_back(coords[c].path);
    }
    comp.left.resize(comp.basis.size());
    components_.push_back(std::move(comp));
    for (int c = 0; c < static_cast<int>(coords.size()); ++c) {
      SparseVec image;
      if (basis_index[c] >= 0) {
        image = unit(basis_index[c]);
      } else {
        for (const auto& [col, v] : ech.reduce(unit(c))) image.emplace(basis_index.at(col), v);
      }
      int j = k - grading_.of_arrow(coords[c].arrow);
      components_[j].left[coords[c].source][coords[c].arrow] = std::move(image);
    }
  }

  Quiver quiver_;
  Grading grading_;
  int bound_;
  bool complete_ = false;
  std::vector<std::pair<int, AlgebraElement>> relations_;
  std::vector<Component> components_;
};

/// Degree bound beyond which every path of the lifted algebra vanishes, for
/// acyclic Q with zero potential: nonzero paths look like q2·p'·q1 with p' a
/// path of Q and q1, q2 avoiding Q's arrows with length at most 4.
inline int truncation_bound(const LiftedIQP& l) {
  if (!is_acyclic(l.base)) throw InputError("no certified bound for a quiver with a cycle", "");
  if (!l.base_potential.is_zero()) throw InputError("no certified bound for a nonzero potential", "");
  const Quiver& t = l.quiver();
  Grading deg = lift_grading(l, Grading::constant(l.base, 1)).grading;
  const int n = t.num_vertices();
  constexpr int none = -1;
  // into[v] / out_of[v]: heaviest path of non-Q arrows, length <= 4, with head / tail v.
  std::vector<int> into(n, 0), out_of(n, 0);
  std::vector<int> into_exact(n, 0), out_exact(n, 0);
  for (int step = 0; step < 4; ++step) {
    std::vector<int> next_into(n, none), next_out(n, none);
    for (int a = 0; a < t.num_arrows(); ++a) {
      if (l.origin[a] == ArrowOrigin::original) continue;
      const Arrow& ar = t.arrow(a);
      if (into_exact[ar.tail] != none)
        next_into[ar.head] = std::max(next_into[ar.head], into_exact[ar.tail] + deg.of_arrow(a));
      if (out_exact[ar.head] != none)
        next_out[ar.tail] = std::max(next_out[ar.tail], out_exact[ar.head] + deg.of_arrow(a));
    }
    into_exact = next_into;
    out_exact = next_out;
    for (int v = 0; v < n; ++v) {
      into[v] = std::max(into[v], into_exact[v]);
      out_of[v] = std::max(out_of[v], out_exact[v]);
    }
  }
  int best = 0;
  for (const Path& p : all_paths(l.base))
    best = std::max(best, into[p.tail] + deg.of_path(p) + out_of[p.head]);
  return best;
}

}  // namespace iceqp
