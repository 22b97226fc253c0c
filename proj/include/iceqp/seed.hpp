#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "iceqp/laurent.hpp"
#include "iceqp/quiver.hpp"

namespace iceqp {

using IntMatrix = std::vector<std::vector<int>>;

enum class Coefficients { polarised, principal, none };

inline IntMatrix transpose(const IntMatrix& m, std::size_t cols) {
  IntMatrix t(cols, std::vector<int>(m.size(), 0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
  return t;
}

inline IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
  std::size_t inner = b.size();
  std::size_t cols = inner ? b[0].size() : 0;
  IntMatrix out(a.size(), std::vector<int>(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

/// A cluster with its extended exchange matrix. Rows index every variable
/// (the n mutable ones first, then frozen ones); columns index mutable ones.
struct Seed {
  std::size_t n = 0;
  std::vector<std::string> names;
  std::vector<LaurentPoly> variables;
  IntMatrix exchange;

  std::size_t rows() const { return variables.size(); }
  IntMatrix principal_part() const {
    return IntMatrix(exchange.begin(), exchange.begin() + static_cast<std::ptrdiff_t>(n));
  }
  bool operator==(const Seed&) const = default;
};

/// b_ij = #(arrows j -> i) - #(arrows i -> j).
inline IntMatrix exchange_matrix(const Quiver& q) {
  const auto n = static_cast<std::size_t>(q.num_vertices());
  IntMatrix b(n, std::vector<int>(n, 0));
  std::set<std::pair<int, int>> seen;
  for (const auto& a : q.arrows()) {
    if (a.tail == a.head) throw InputError("arrow '" + a.id + "' is a loop", a.id);
    if (seen.count({a.head, a.tail}))
      throw InputError("arrow '" + a.id + "' closes a 2-cycle", a.id);
    seen.insert({a.tail, a.head});
    b[a.head][a.tail] += 1;
    b[a.tail][a.head] -= 1;
  }
  return b;
}

inline Seed initial_seed(const Quiver& q, Coefficients kind) {
  IntMatrix b = exchange_matrix(q);
  const std::size_t n = b.size();
  Seed s;
  s.n = n;
  std::size_t frozen = kind == Coefficients::polarised ? 2 * n : kind == Coefficients::principal ? n : 0;
  std::size_t total = n + frozen;
  auto id = [&](std::size_t i) { return q.vertex(static_cast<int>(i)).id; };
  for (std::size_t i = 0; i < n; ++i) s.names.push_back("x" + id(i));
  if (kind != Coefficients::none)
    for (std::size_t i = 0; i < n; ++i) s.names.push_back("y" + id(i) + "+");
  if (kind == Coefficients::polarised)
    for (std::size_t i = 0; i < n; ++i) s.names.push_back("y" + id(i) + "-");
  for (std::size_t i = 0; i < total; ++i) s.variables.push_back(LaurentPoly::variable(total, i));
  s.exchange = b;
  if (kind != Coefficients::none)
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<int> row(n, 0);
      row[i] = 1;
      s.exchange.push_back(row);
    }
  if (kind == Coefficients::polarised)
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<int> row(n, 0);
      row[i] = -1;
      s.exchange.push_back(row);
    }
  return s;
}

inline Seed initial_seed_pp(const Quiver& q) { return initial_seed(q, Coefficients::polarised); }

inline int sgn(int x) { return (x > 0) - (x < 0); }

inline IntMatrix mutate_matrix(const IntMatrix& b, std::size_t k) {
  IntMatrix out = b;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b[i].size(); ++j) {
      if (i == k || j == k)
        out[i][j] = -b[i][j];
      else
        out[i][j] = b[i][j] + sgn(b[i][k]) * std::max(b[i][k] * b[k][j], 0);
    }
  return out;
}

/// Both monomials of the exchange relation in direction k.
inline std::pair<LaurentPoly, LaurentPoly> exchange_monomials(const Seed& s, std::size_t k) {
  LaurentPoly plus = LaurentPoly::constant(s.rows(), 1);
  LaurentPoly minus = plus;
  for (std::size_t i = 0; i < s.rows(); ++i) {
    int e = s.exchange[i][k];
    if (e > 0) plus *= s.variables[i].pow(static_cast<unsigned>(e));
    if (e < 0) minus *= s.variables[i].pow(static_cast<unsigned>(-e));
  }
  return {plus, minus};
}

/// Mutation in direction k (0-based). Throws DivisionError if the exchange
/// quotient is not a Laurent polynomial.
inline Seed mutate(const Seed& s, std::size_t k) {
  if (k >= s.n) throw InputError("mutation index out of range", std::to_string(k + 1));
  Seed out = s;
  auto [plus, minus] = exchange_monomials(s, k);
  out.variables[k] = laurent_exact_div(plus + minus, s.variables[k]);
  out.exchange = mutate_matrix(s.exchange, k);
  return out;
}

inline Seed mutate_word(Seed s, const std::vector<std::size_t>& word) {
  for (auto k : word) s = mutate(s, k);
  return s;
}

/// g~ = [I; b; 0] for 3n rows, [I; b] for 2n rows, from the initial principal part b.
inline IntMatrix grading_matrix(const IntMatrix& initial_b, std::size_t rows) {
  const std::size_t n = initial_b.size();
  if (rows < 2 * n) throw InputError("grading needs a coefficient block", "");
  IntMatrix g(rows, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    g[i][i] = 1;
    g[n + i] = initial_b[i];
  }
  return g;
}

/// Grading matrix of an initial seed, checked to be orthogonal to its
/// extended exchange matrix.
inline IntMatrix grading_matrix(const Seed& initial) {
  IntMatrix g = grading_matrix(initial.principal_part(), initial.rows());
  IntMatrix check = matmul(transpose(initial.exchange, initial.n), g);
  for (const auto& row : check)
    for (int x : row)
      if (x != 0) throw std::logic_error("grading matrix is not orthogonal to the exchange matrix");
  return g;
}

struct DegreeReport {
  bool homogeneous = true;
  std::vector<int> degree;
  std::vector<std::vector<int>> monomial_degrees;
};

inline std::vector<int> monomial_degree(const Exponent& e, const IntMatrix& g) {
  std::vector<int> d(g.empty() ? 0 : g[0].size(), 0);
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] != 0)
      for (std::size_t j = 0; j < d.size(); ++j) d[j] += e[i] * g.at(i)[j];
  return d;
}

inline DegreeReport degree_of(const LaurentPoly& f, const IntMatrix& g) {
  DegreeReport r;
  std::set<std::vector<int>> seen;
  for (const auto& [e, c] : f.terms()) {
    auto d = monomial_degree(e, g);
    if (seen.insert(d).second) r.monomial_degrees.push_back(d);
  }
  r.homogeneous = seen.size() <= 1;
  if (seen.size() == 1) r.degree = *seen.begin();
  return r;
}

/// Rows of the frozen block just below the principal part.
inline IntMatrix c_matrix(const Seed& s) {
  if (s.rows() < 2 * s.n) throw InputError("seed has no coefficient block", "");
  return IntMatrix(s.exchange.begin() + static_cast<std::ptrdiff_t>(s.n),
                   s.exchange.begin() + static_cast<std::ptrdiff_t>(2 * s.n));
}

/// Rows are the g-vectors of the mutable variables; nullopt if any is inhomogeneous.
inline std::optional<IntMatrix> g_matrix(const Seed& s, const IntMatrix& g) {
  IntMatrix out;
  for (std::size_t i = 0; i < s.n; ++i) {
    DegreeReport r = degree_of(s.variables[i], g);
    if (!r.homogeneous) return std::nullopt;
    out.push_back(r.degree);
  }
  return out;
}

/// b'g' = (c')^t b with b the initial principal part.
inline bool check_gc_identity(const Seed& s, const IntMatrix& initial_b, const IntMatrix& g) {
  auto gp = g_matrix(s, g);
  if (!gp) throw std::logic_error("a mutable variable is not homogeneous");
  IntMatrix lhs = matmul(s.principal_part(), *gp);
  IntMatrix rhs = matmul(transpose(c_matrix(s), s.n), initial_b);
  return lhs == rhs;
}

/// Every column of the c-matrix is nonnegative or nonpositive.
inline bool c_sign_coherent(const Seed& s) {
  IntMatrix c = c_matrix(s);
  for (std::size_t j = 0; j < s.n; ++j) {
    bool pos = false, neg = false;
    for (std::size_t i = 0; i < s.n; ++i) {
      pos = pos || c[i][j] > 0;
      neg = neg || c[i][j] < 0;
    }
    if (pos && neg) return false;
  }
  return true;
}

/// The two monomials of every exchange relation share a degree.
inline bool exchange_homogeneous(const Seed& s, const IntMatrix& g) {
  for (std::size_t k = 0; k < s.n; ++k) {
    auto [plus, minus] = exchange_monomials(s, k);
    DegreeReport dp = degree_of(plus, g), dm = degree_of(minus, g);
    if (!dp.homogeneous || !dm.homogeneous || dp.degree != dm.degree) return false;
  }
  return true;
}

/// Sets the y_i^- to 1 and drops their rows.
inline Seed specialise_minus(const Seed& s) {
  if (s.rows() != 3 * s.n) throw InputError("seed is not polarised", "");
  std::vector<std::size_t> slots;
  for (std::size_t i = 2 * s.n; i < 3 * s.n; ++i) slots.push_back(i);
  Seed out;
  out.n = s.n;
  out.names.assign(s.names.begin(), s.names.begin() + static_cast<std::ptrdiff_t>(2 * s.n));
  for (std::size_t i = 0; i < 2 * s.n; ++i) out.variables.push_back(s.variables[i].drop_variables(slots));
  out.exchange.assign(s.exchange.begin(), s.exchange.begin() + static_cast<std::ptrdiff_t>(2 * s.n));
  return out;
}

using ClusterKey = std::vector<LaurentPoly>;

inline ClusterKey cluster_key(const Seed& s) {
  ClusterKey k(s.variables.begin(), s.variables.begin() + static_cast<std::ptrdiff_t>(s.n));
  std::sort(k.begin(), k.end());
  return k;
}

struct ExchangeGraph {
  std::vector<Seed> seeds;
  std::vector<std::vector<std::size_t>> words;
  std::set<std::pair<std::size_t, std::size_t>> edges;
  bool exhaustive = true;
  std::optional<std::size_t> find(const Seed& s) const {
    auto it = index.find(cluster_key(s));
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
  std::map<ClusterKey, std::size_t> index;
};

/// Breadth-first search over seeds, identifying seeds with equal clusters.
inline ExchangeGraph exchange_graph(const Seed& initial, std::size_t max_seeds, std::size_t max_depth) {
  ExchangeGraph g;
  g.seeds.push_back(initial);
  g.words.push_back({});
  g.index.emplace(cluster_key(initial), 0);
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < initial.n; ++k) {
      Seed next = mutate(g.seeds[u], k);
      auto found = g.find(next);
      std::size_t v;
      if (found) {
        v = *found;
      } else {
        if (g.seeds.size() >= max_seeds || g.words[u].size() >= max_depth) {
          g.exhaustive = false;
          continue;
        }
        v = g.seeds.size();
        g.index.emplace(cluster_key(next), v);
        g.seeds.push_back(std::move(next));
        auto word = g.words[u];
        word.push_back(k);
        g.words.push_back(std::move(word));
        queue.push_back(v);
      }
      if (u != v) g.edges.insert({std::min(u, v), std::max(u, v)});
    }
  }
  return g;
}

/// Maps each node of `a` to the node of `b` reached by the same mutation
/// word and checks that this is a graph isomorphism.
inline bool isomorphic_by_words(const ExchangeGraph& a, const ExchangeGraph& b, const Seed& b_initial) {
  if (a.seeds.size() != b.seeds.size() || a.edges.size() != b.edges.size()) return false;
  std::vector<std::size_t> f;
  std::set<std::size_t> image;
  for (const auto& w : a.words) {
    auto v = b.find(mutate_word(b_initial, w));
    if (!v) return false;
    f.push_back(*v);
    image.insert(*v);
  }
  if (image.size() != b.seeds.size()) return false;
  for (const auto& [u, v] : a.edges) {
    auto x = std::min(f[u], f[v]), y = std::max(f[u], f[v]);
    if (!b.edges.count({x, y})) return false;
  }
  return true;
}

struct SeedChecks {
  bool homogeneous = true;
  bool exchange_homogeneous = true;
  bool identity = true;
  bool sign_coherent = true;
  bool all() const { return homogeneous && exchange_homogeneous && identity && sign_coherent; }
};

inline SeedChecks check_seed(const Seed& s, const IntMatrix& initial_b, const IntMatrix& g) {
  SeedChecks c;
  c.homogeneous = g_matrix(s, g).has_value();
  c.exchange_homogeneous = exchange_homogeneous(s, g);
  c.identity = c.homogeneous && check_gc_identity(s, initial_b, g);
  c.sign_coherent = c_sign_coherent(s);
  return c;
}

struct WalkReport {
  std::size_t walks = 0;
  std::size_t steps = 0;
  std::size_t division_failures = 0;
  std::size_t inhomogeneous = 0;
  std::size_t exchange_inhomogeneous = 0;
  std::size_t identity_failures = 0;
  std::size_t incoherent = 0;
  bool pass() const {
    return division_failures + inhomogeneous + exchange_inhomogeneous + identity_failures + incoherent == 0;
  }
};

/// Random mutation walks from a polarised initial seed; every visited seed
/// is checked. The direction at each step is rng() % n.
inline WalkReport random_walks(const Seed& initial, std::size_t walks, std::size_t length,
                               std::uint64_t prng_seed) {
  WalkReport rep;
  if (initial.n == 0) return rep;
  std::mt19937_64 rng(prng_seed);
  IntMatrix b = initial.principal_part();
  IntMatrix g = grading_matrix(initial);
  for (std::size_t w = 0; w < walks; ++w) {
    ++rep.walks;
    Seed s = initial;
    for (std::size_t step = 0; step < length; ++step) {
      std::size_t k = rng() % initial.n;
      try {
        s = mutate(s, k);
      } catch (const DivisionError&) {
        ++rep.division_failures;
        break;
      }
      ++rep.steps;
      SeedChecks c = check_seed(s, b, g);
      rep.inhomogeneous += !c.homogeneous;
      rep.exchange_inhomogeneous += !c.exchange_homogeneous;
      rep.identity_failures += !c.identity;
      rep.incoherent += !c.sign_coherent;
    }
  }
  return rep;
}

}  // namespace iceqp
