#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "iceqp/rational.hpp"

namespace iceqp {

using Exponent = std::vector<int>;

/// Graded lexicographic order: total degree first, then lexicographic.
inline bool grlex_less(const Exponent& a, const Exponent& b) {
  long da = std::accumulate(a.begin(), a.end(), 0L);
  long db = std::accumulate(b.begin(), b.end(), 0L);
  if (da != db) return da < db;
  return a < b;
}

class DivisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Laurent polynomial in a fixed number of variables with integer
/// coefficients. Terms are keyed by exponent vector; no zero terms are stored.
class LaurentPoly {
 public:
  using Terms = std::map<Exponent, Integer>;

  LaurentPoly() = default;
  explicit LaurentPoly(std::size_t nvars) : nvars_(nvars) {}

  static LaurentPoly constant(std::size_t nvars, const Integer& c) {
    LaurentPoly p(nvars);
    p.add(Exponent(nvars, 0), c);
    return p;
  }
  static LaurentPoly monomial(const Exponent& e, const Integer& c = 1) {
    LaurentPoly p(e.size());
    p.add(e, c);
    return p;
  }
  static LaurentPoly variable(std::size_t nvars, std::size_t i, int power = 1) {
    Exponent e(nvars, 0);
    e.at(i) = power;
    return monomial(e);
  }

  std::size_t num_vars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }

  void add(const Exponent& e, const Integer& c) {
    if (e.size() != nvars_) throw std::invalid_argument("exponent length does not match");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add(e, -c);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check(b);
    LaurentPoly out(a.nvars_);
    Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add(e, ca * cb);
      }
    return out;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  LaurentPoly pow(unsigned k) const {
    LaurentPoly out = constant(nvars_, 1);
    for (unsigned i = 0; i < k; ++i) out *= *this;
    return out;
  }

  LaurentPoly shifted(const Exponent& by) const {
    LaurentPoly out(nvars_);
    for (const auto& [e, c] : terms_) {
      Exponent f = e;
      for (std::size_t i = 0; i < f.size(); ++i) f[i] += by.at(i);
      out.terms_.emplace(std::move(f), c);
    }
    return out;
  }

  /// Componentwise minimum exponent; zero vector for the zero polynomial.
  Exponent min_exponent() const {
    Exponent m(nvars_, 0);
    bool first = true;
    for (const auto& [e, c] : terms_) {
      for (std::size_t i = 0; i < nvars_; ++i) m[i] = first ? e[i] : std::min(m[i], e[i]);
      first = false;
    }
    return m;
  }

  std::pair<Exponent, Integer> leading_term() const {
    if (terms_.empty()) throw std::logic_error("zero polynomial has no leading term");
    auto best = terms_.begin();
    for (auto it = terms_.begin(); it != terms_.end(); ++it)
      if (grlex_less(best->first, it->first)) best = it;
    return *best;
  }

  /// Sets the listed variables to 1 and removes their slots.
  LaurentPoly drop_variables(const std::vector<std::size_t>& slots) const {
    std::vector<bool> drop(nvars_, false);
    for (auto s : slots) drop.at(s) = true;
    LaurentPoly out(nvars_ - std::count(drop.begin(), drop.end(), true));
    for (const auto& [e, c] : terms_) {
      Exponent f;
      for (std::size_t i = 0; i < nvars_; ++i)
        if (!drop[i]) f.push_back(e[i]);
      out.add(f, c);
    }
    return out;
  }

  bool operator==(const LaurentPoly&) const = default;
  bool operator<(const LaurentPoly& o) const {
    if (nvars_ != o.nvars_) return nvars_ < o.nvars_;
    return terms_ < o.terms_;
  }

 private:
  void check(const LaurentPoly& o) const {
    if (o.nvars_ != nvars_) throw std::invalid_argument("Laurent polynomials over different variables");
  }

  std::size_t nvars_ = 0;
  Terms terms_;
};

/// Exact quotient f / g. Both are shifted by monomials so that g is not
/// divisible by any variable, then divided as ordinary polynomials.
/// Throws DivisionError if no Laurent quotient exists.
inline LaurentPoly laurent_exact_div(const LaurentPoly& f, const LaurentPoly& g) {
  if (g.is_zero()) throw DivisionError("division by the zero Laurent polynomial");
  if (f.num_vars() != g.num_vars()) throw std::invalid_argument("Laurent polynomials over different variables");
  const std::size_t n = f.num_vars();
  if (f.is_zero()) return LaurentPoly(n);
  Exponent mf = f.min_exponent(), mg = g.min_exponent();
  Exponent neg_f(n), neg_g(n), back(n);
  for (std::size_t i = 0; i < n; ++i) {
    neg_f[i] = -mf[i];
    neg_g[i] = -mg[i];
    back[i] = mf[i] - mg[i];
  }
  LaurentPoly r = f.shifted(neg_f);
  LaurentPoly gp = g.shifted(neg_g);
  auto [eg, cg] = gp.leading_term();
  LaurentPoly q(n);
  while (!r.is_zero()) {
    auto [er, cr] = r.leading_term();
    Exponent e(n);
    for (std::size_t i = 0; i < n; ++i) {
      e[i] = er[i] - eg[i];
      if (e[i] < 0) throw DivisionError("Laurent division leaves a remainder");
    }
    if (cr % cg != 0) throw DivisionError("Laurent division needs a non-integer coefficient");
    LaurentPoly t = LaurentPoly::monomial(e, cr / cg);
    q += t;
    r -= t * gp;
  }
  return q.shifted(back);
}

inline std::string render(const LaurentPoly& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<Exponent, Integer>> terms(p.terms().begin(), p.terms().end());
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return grlex_less(b.first, a.first); });
  std::string out;
  for (const auto& [e, c] : terms) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names.at(i);
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    Integer mag = c < 0 ? Integer(-c) : c;
    std::string piece;
    if (mono.empty()) piece = mag.str();
    else if (mag == 1) piece = mono;
    else piece = mag.str() + "*" + mono;
    if (out.empty()) out = (c < 0 ? "-" : "") + piece;
    else out += (c < 0 ? " - " : " + ") + piece;
  }
  return out;
}

}  // namespace iceqp
