#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iceqp/algebra.hpp"
#include "iceqp/lift.hpp"
#include "iceqp/linalg.hpp"

namespace iceqp {

enum class VertexKind { mutable_vertex, plus, minus };

inline const char* to_string(VertexKind k) {
  switch (k) {
    case VertexKind::mutable_vertex: return "mutable";
    case VertexKind::plus: return "plus";
    case VertexKind::minus: return "minus";
  }
  return "?";
}

/// One projective summand A·e_w of a term, shifted by `shift`, labelled by
/// the arrow it is indexed by (or -1 for the end terms).
struct Summand {
  int arrow = -1;
  int vertex = 0;
  int shift = 0;
};

/// Basis of a term of the complex in a fixed internal degree.
struct TermBasis {
  std::vector<std::pair<int, int>> offsets;  // per summand: (degree, first row)
  std::vector<std::vector<int>> indices;     // per summand: algebra basis indices
  std::size_t size = 0;
};

/// The complex res(A) tensored with the simple at a vertex, as per-weight
/// matrices M3: term3 -> term2, M2: term2 -> term1, M1: term1 -> term0.
class SimpleComplex {
 public:
  SimpleComplex(const GradedQuotientAlgebra& a, const LiftedIQP& l, int vertex, int potential_degree)
      : a_(&a), l_(&l), v_(vertex), d_(potential_degree) {
    const Quiver& q = l.quiver();
    if (vertex < 0 || vertex >= q.num_vertices())
      throw InputError("vertex index out of range", std::to_string(vertex));
    kind_ = l.ice.is_frozen_vertex(vertex)
                ? (std::find(l.plus.begin(), l.plus.end(), vertex) != l.plus.end() ? VertexKind::plus
                                                                                    : VertexKind::minus)
                : VertexKind::mutable_vertex;
    const Grading& deg = a.grading();
    if (kind_ == VertexKind::mutable_vertex) term3_.push_back({-1, vertex, d_});
    for (int arrow : q.in_arrows(vertex)) {
      if (l.ice.is_frozen_arrow(arrow)) continue;
      term2_.push_back({arrow, q.arrow(arrow).tail, d_ - deg.of_arrow(arrow)});
      derivative_.push_back(cyclic_derivative(q, l.potential, arrow));
    }
    for (int arrow : q.out_arrows(vertex))
      term1_.push_back({arrow, q.arrow(arrow).head, deg.of_arrow(arrow)});
    term0_.push_back({-1, vertex, 0});
  }

  int vertex() const { return v_; }
  VertexKind kind() const { return kind_; }
  const std::vector<Summand>& term2() const { return term2_; }
  const std::vector<Summand>& term1() const { return term1_; }

  TermBasis basis3(int w) const { return basis(term3_, w); }
  TermBasis basis2(int w) const { return basis(term2_, w); }
  TermBasis basis1(int w) const { return basis(term1_, w); }
  TermBasis basis0(int w) const { return basis(term0_, w); }

  Matrix m3(int w) const {
    TermBasis src = basis3(w), dst = basis2(w);
    Matrix m{dst.size, {}};
    for (std::size_t s = 0; s < term3_.size(); ++s)
      for (int y : src.indices[s]) {
        SparseVec col;
        int k = src.offsets[s].first;
        for (std::size_t t = 0; t < term2_.size(); ++t) {
          GradedVec image = right_multiply(k, y, Path::of_arrow(l_->quiver(), term2_[t].arrow));
          place(col, dst, t, image, Rational(-1));
        }
        m.cols.push_back(std::move(col));
      }
    return m;
  }

  Matrix m2(int w) const {
    const Quiver& q = l_->quiver();
    TermBasis src = basis2(w), dst = basis1(w);
    Matrix m{dst.size, {}};
    for (std::size_t s = 0; s < term2_.size(); ++s) {
      int k = src.offsets[s].first;
      for (int x : src.indices[s]) {
        SparseVec col;
        for (std::size_t t = 0; t < term1_.size(); ++t) {
          AlgebraElement u = right_derivative(q, derivative_[s], term1_[t].arrow);
          for (const auto& [path, c] : u.terms()) {
            GradedVec image = right_multiply(k, x, path);
            place(col, dst, t, image, c);
          }
        }
        m.cols.push_back(std::move(col));
      }
    }
    return m;
  }

  Matrix m1(int w) const {
    const Quiver& q = l_->quiver();
    TermBasis src = basis1(w), dst = basis0(w);
    Matrix m{dst.size, {}};
    for (std::size_t s = 0; s < term1_.size(); ++s) {
      int k = src.offsets[s].first;
      for (int x : src.indices[s]) {
        SparseVec col;
        GradedVec image = right_multiply(k, x, Path::of_arrow(q, term1_[s].arrow));
        place(col, dst, 0, image, Rational(-1));
        m.cols.push_back(std::move(col));
      }
    }
    return m;
  }

 private:
  TermBasis basis(const std::vector<Summand>& summands, int w) const {
    TermBasis b;
    for (const auto& s : summands) {
      int k = w - s.shift;
      b.offsets.push_back({k, static_cast<int>(b.size)});
      std::vector<int> idx;
      if (k >= 0 && k <= a_->built_degree()) {
        const auto& paths = a_->basis(k);
        for (int i = 0; i < static_cast<int>(paths.size()); ++i)
          if (paths[i].tail == s.vertex) idx.push_back(i);
      } else if (k > a_->built_degree()) {
        a_->dim(k);  // throws past an uncertified bound
      }
      b.size += idx.size();
      b.indices.push_back(std::move(idx));
    }
    return b;
  }

  /// Basis element (k, x) times the path u, in composition order x·u.
  GradedVec right_multiply(int k, int x, const Path& u) const {
    GradedVec start = a_->reduce(u);
    return a_->left_multiply(a_->basis_path(k, x), start);
  }

  static void place(SparseVec& col, const TermBasis& dst, std::size_t summand, const GradedVec& image,
                    const Rational& scale) {
    if (image.coords.empty()) return;
    if (image.degree != dst.offsets[summand].first)
      throw std::logic_error("inhomogeneous block in the simple complex");
    const auto& idx = dst.indices[summand];
    int base = dst.offsets[summand].second;
    for (const auto& [i, c] : image.coords) {
      auto it = std::lower_bound(idx.begin(), idx.end(), i);
      if (it == idx.end() || *it != i) throw std::logic_error("image leaves its projective summand");
      axpy(col, scale * c, unit(base + static_cast<int>(it - idx.begin())));
    }
  }

  const GradedQuotientAlgebra* a_;
  const LiftedIQP* l_;
  int v_;
  int d_;
  VertexKind kind_;
  std::vector<Summand> term3_, term2_, term1_, term0_;
  std::vector<AlgebraElement> derivative_;
};

struct WeightEntry {
  int weight = 0;
  std::size_t dim3 = 0, dim2 = 0, dim1 = 0, dim0 = 0;
  std::size_t rank3 = 0, rank2 = 0, rank1 = 0;
  bool complex_ok = true;
  bool pass = true;
  std::string witness;
};

struct VertexCertificate {
  int vertex = 0;
  std::string id;
  VertexKind kind = VertexKind::mutable_vertex;
  std::vector<WeightEntry> weights;
  bool pass = true;
};

struct ExactnessCertificate {
  std::vector<VertexCertificate> vertices;
  bool complete = false;
  int bound = 0;
  int max_weight = 0;
  int potential_degree = 0;
  bool pass = true;
};

inline std::string render_vector(const SparseVec& v) {
  std::string out = "{";
  for (const auto& [i, c] : v) {
    if (out.size() > 1) out += ", ";
    out += std::to_string(i) + ": " + to_string(c);
  }
  return out + "}";
}

inline WeightEntry check_weight(const SimpleComplex& cx, int w) {
  WeightEntry e;
  e.weight = w;
  Matrix m3 = cx.m3(w), m2 = cx.m2(w), m1 = cx.m1(w);
  e.dim3 = m3.num_cols();
  e.dim2 = m2.num_cols();
  e.dim1 = m1.num_cols();
  e.dim0 = m1.rows;
  e.rank3 = rank(m3);
  e.rank2 = rank(m2);
  e.rank1 = rank(m1);
  if (!is_zero(multiply(m2, m3)) || !is_zero(multiply(m1, m2))) {
    e.complex_ok = false;
    e.pass = false;
    e.witness = "maps do not compose to zero";
    return e;
  }
  switch (cx.kind()) {
    case VertexKind::mutable_vertex: {
      if (e.rank3 != e.dim3) {
        e.pass = false;
        e.witness = "kernel of M3: " + render_vector(kernel(m3).front());
        break;
      }
      if (e.dim2 - e.rank2 != e.rank3) {
        e.pass = false;
        Echelon image;
        for (const auto& c : m3.cols) image.insert(c);
        for (const auto& k : kernel(m2))
          if (!image.contains(k)) {
            e.witness = "kernel of M2 outside image of M3: " + render_vector(k);
            break;
          }
      }
      break;
    }
    case VertexKind::plus:
      if (e.rank2 != e.dim2) {
        e.pass = false;
        e.witness = "kernel of M2: " + render_vector(kernel(m2).front());
      }
      break;
    case VertexKind::minus:
      break;
  }
  return e;
}

/// Runs the exactness checks at one vertex over weights 0..max_weight.
inline VertexCertificate check_vertex(const GradedQuotientAlgebra& a, const LiftedIQP& l, int v,
                                      int potential_degree, int max_weight) {
  SimpleComplex cx(a, l, v, potential_degree);
  VertexCertificate vc;
  vc.vertex = v;
  vc.id = l.quiver().vertex(v).id;
  vc.kind = cx.kind();
  for (int w = 0; w <= max_weight; ++w) {
    WeightEntry e = check_weight(cx, w);
    vc.pass = vc.pass && e.pass;
    vc.weights.push_back(std::move(e));
  }
  return vc;
}

/// Weight range that covers every nonzero component: everything for a
/// complete algebra, otherwise only weights whose components are all known.
inline int checked_weight_limit(const GradedQuotientAlgebra& a, int potential_degree) {
  if (a.complete()) return std::max(0, a.top_degree()) + potential_degree;
  return a.bound();
}

inline ExactnessCertificate certify(const GradedQuotientAlgebra& a, const LiftedIQP& l,
                                    int potential_degree) {
  ExactnessCertificate cert;
  cert.complete = a.complete();
  cert.bound = a.bound();
  cert.potential_degree = potential_degree;
  cert.max_weight = checked_weight_limit(a, potential_degree);
  for (int v = 0; v < l.quiver().num_vertices(); ++v) {
    cert.vertices.push_back(check_vertex(a, l, v, potential_degree, cert.max_weight));
    cert.pass = cert.pass && cert.vertices.back().pass;
  }
  return cert;
}

/// Full pipeline from (Q, W). The bound is required unless Q is acyclic and
/// W is zero, in which case the certified bound is used.
inline ExactnessCertificate cy_certificate(const Quiver& q, const Potential& w,
                                           std::optional<Grading> base = std::nullopt,
                                           std::optional<int> bound = std::nullopt) {
  LiftedIQP l = lift_qp(q, w);
  LiftedGrading g = lift_grading(l, base ? *base : Grading::constant(q, 1));
  int d = *g.potential_degree;
  int b = 0;
  if (bound) {
    b = *bound;
  } else if (is_acyclic(q) && w.is_zero()) {
    b = truncation_bound(l);
  } else {
    throw InputError("a truncation bound is required for this quiver with potential", "bound");
  }
  GradedQuotientAlgebra a = GradedQuotientAlgebra::build(relation_set(l), g.grading, b);
  return certify(a, l, d);
}

}  // namespace iceqp
