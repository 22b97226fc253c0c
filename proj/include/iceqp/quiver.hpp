#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace iceqp {

/// Raised for malformed or inconsistent user input. `offender` names the
/// offending vertex, arrow or field.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& what, std::string offender)
      : std::runtime_error(what), offender_(std::move(offender)) {}
  const std::string& offender() const noexcept { return offender_; }

 private:
  std::string offender_;
};

struct Vertex {
  std::string id;
  std::string label;
  bool operator==(const Vertex&) const = default;
};

struct Arrow {
  std::string id;
  int tail = 0;
  int head = 0;
  bool operator==(const Arrow&) const = default;
};

struct RawArrow {
  std::string id;
  std::string tail;
  std::string head;
};

/// Raw, unvalidated description as read from the JSON quiver format.
struct QuiverDescription {
  std::vector<Vertex> vertices;
  std::vector<RawArrow> arrows;
  std::vector<std::string> frozen_vertices;
  std::vector<std::string> frozen_arrows;
};

/// Finite loop-free multigraph. Vertices and arrows are addressed by their
/// position; ids are opaque strings kept unique.
class Quiver {
 public:
  Quiver() = default;

  int add_vertex(std::string id, std::string label = {}) {
    if (vertex_index_.count(id)) throw InputError("duplicate vertex id '" + id + "'", id);
    vertex_index_.emplace(id, static_cast<int>(vertices_.size()));
    vertices_.push_back({std::move(id), std::move(label)});
    out_.emplace_back();
    in_.emplace_back();
    return static_cast<int>(vertices_.size()) - 1;
  }

  int add_arrow(std::string id, int tail, int head) {
    if (arrow_index_.count(id)) throw InputError("duplicate arrow id '" + id + "'", id);
    if (tail < 0 || head < 0 || tail >= num_vertices() || head >= num_vertices())
      throw InputError("arrow '" + id + "' has an undeclared endpoint", id);
    if (tail == head) throw InputError("arrow '" + id + "' is a loop", id);
    int idx = static_cast<int>(arrows_.size());
    arrow_index_.emplace(id, idx);
    arrows_.push_back({std::move(id), tail, head});
    out_[tail].push_back(idx);
    in_[head].push_back(idx);
    return idx;
  }

  int add_arrow(std::string id, const std::string& tail, const std::string& head) {
    auto t = find_vertex(tail);
    auto h = find_vertex(head);
    if (!t) throw InputError("arrow '" + id + "' has dangling tail '" + tail + "'", id);
    if (!h) throw InputError("arrow '" + id + "' has dangling head '" + head + "'", id);
    return add_arrow(std::move(id), *t, *h);
  }

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_arrows() const { return static_cast<int>(arrows_.size()); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Vertex& vertex(int v) const { return vertices_.at(v); }
  const Arrow& arrow(int a) const { return arrows_.at(a); }
  /// Arrows with tail v.
  const std::vector<int>& out_arrows(int v) const { return out_.at(v); }
  /// Arrows with head v.
  const std::vector<int>& in_arrows(int v) const { return in_.at(v); }

  std::optional<int> find_vertex(const std::string& id) const {
    auto it = vertex_index_.find(id);
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<int> find_arrow(const std::string& id) const {
    auto it = arrow_index_.find(id);
    if (it == arrow_index_.end()) return std::nullopt;
    return it->second;
  }
  int vertex_at(const std::string& id) const {
    auto v = find_vertex(id);
    if (!v) throw InputError("unknown vertex '" + id + "'", id);
    return *v;
  }
  int arrow_at(const std::string& id) const {
    auto a = find_arrow(id);
    if (!a) throw InputError("unknown arrow '" + id + "'", id);
    return *a;
  }

  bool operator==(const Quiver& o) const {
    return vertices_ == o.vertices_ && arrows_ == o.arrows_;
  }

 private:
  std::vector<Vertex> vertices_;
  std::vector<Arrow> arrows_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
  std::map<std::string, int> vertex_index_;
  std::map<std::string, int> arrow_index_;
};

/// Quiver with a frozen subquiver F (every frozen arrow has frozen endpoints).
class IceQuiver {
 public:
  IceQuiver() = default;
  explicit IceQuiver(Quiver q)
      : quiver_(std::move(q)),
        frozen_vertex_(quiver_.num_vertices(), false),
        frozen_arrow_(quiver_.num_arrows(), false) {}

  IceQuiver(Quiver q, const std::vector<int>& frozen_vertices, const std::vector<int>& frozen_arrows)
      : IceQuiver(std::move(q)) {
    for (int v : frozen_vertices) frozen_vertex_.at(v) = true;
    for (int a : frozen_arrows) {
      const Arrow& ar = quiver_.arrow(a);
      if (!frozen_vertex_[ar.tail] || !frozen_vertex_[ar.head])
        throw InputError("frozen arrow '" + ar.id + "' has an unfrozen endpoint", ar.id);
      frozen_arrow_.at(a) = true;
    }
  }

  const Quiver& quiver() const { return quiver_; }
  bool is_frozen_vertex(int v) const { return frozen_vertex_.at(v); }
  bool is_frozen_arrow(int a) const { return frozen_arrow_.at(a); }

  std::vector<int> frozen_vertices() const { return select(frozen_vertex_, true); }
  std::vector<int> frozen_arrows() const { return select(frozen_arrow_, true); }
  std::vector<int> mutable_vertices() const { return select(frozen_vertex_, false); }
  std::vector<int> unfrozen_arrows() const { return select(frozen_arrow_, false); }

  bool operator==(const IceQuiver& o) const = default;

 private:
  static std::vector<int> select(const std::vector<bool>& flags, bool value) {
    std::vector<int> out;
    for (std::size_t i = 0; i < flags.size(); ++i)
      if (flags[i] == value) out.push_back(static_cast<int>(i));
    return out;
  }

  Quiver quiver_;
  std::vector<bool> frozen_vertex_;
  std::vector<bool> frozen_arrow_;
};

/// Validates a raw description. Errors carry the offending id.
inline IceQuiver validate(const QuiverDescription& d) {
  Quiver q;
  for (const auto& v : d.vertices) q.add_vertex(v.id, v.label);
  for (const auto& a : d.arrows) q.add_arrow(a.id, a.tail, a.head);
  std::vector<int> fv, fa;
  std::set<std::string> seen;
  for (const auto& id : d.frozen_vertices) {
    if (!seen.insert("v:" + id).second) throw InputError("vertex '" + id + "' frozen twice", id);
    fv.push_back(q.vertex_at(id));
  }
  for (const auto& id : d.frozen_arrows) {
    if (!seen.insert("a:" + id).second) throw InputError("arrow '" + id + "' frozen twice", id);
    fa.push_back(q.arrow_at(id));
  }
  return IceQuiver(std::move(q), fv, fa);
}

/// A path in traversal order: arrows[0] is traversed first. Trivial paths
/// carry no arrows and tail == head.
struct Path {
  std::vector<int> arrows;
  int tail = 0;
  int head = 0;

  static Path trivial(int v) { return Path{{}, v, v}; }
  static Path of_arrow(const Quiver& q, int a) {
    return Path{{a}, q.arrow(a).tail, q.arrow(a).head};
  }
  /// Builds a path from a traversal-ordered arrow list; throws if not composable.
  static Path from_arrows(const Quiver& q, const std::vector<int>& arrows) {
    if (arrows.empty()) throw InputError("empty arrow list does not determine a vertex", "");
    Path p{{}, q.arrow(arrows.front()).tail, q.arrow(arrows.front()).tail};
    for (int a : arrows) {
      if (q.arrow(a).tail != p.head)
        throw InputError("arrows do not compose at '" + q.arrow(a).id + "'", q.arrow(a).id);
      p.arrows.push_back(a);
      p.head = q.arrow(a).head;
    }
    return p;
  }

  std::size_t length() const { return arrows.size(); }
  bool is_trivial() const { return arrows.empty(); }
  bool is_cycle() const { return !arrows.empty() && tail == head; }

  auto operator<=>(const Path&) const = default;
  bool operator==(const Path&) const = default;
};

/// Composition pq: traverse q, then p. Requires h(q) == t(p).
inline std::optional<Path> compose(const Path& p, const Path& q) {
  if (q.head != p.tail) return std::nullopt;
  Path r{q.arrows, q.tail, p.head};
  r.arrows.insert(r.arrows.end(), p.arrows.begin(), p.arrows.end());
  return r;
}

/// Renders right-to-left (composition order), e.g. "c*b*a" for a then b then c.
inline std::string render(const Quiver& q, const Path& p) {
  if (p.is_trivial()) return "e_" + q.vertex(p.tail).id;
  std::string out;
  for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) {
    if (!out.empty()) out += "*";
    out += q.arrow(*it).id;
  }
  return out;
}

inline std::vector<std::string> arrow_ids(const Quiver& q, const Path& p) {
  std::vector<std::string> ids;
  for (int a : p.arrows) ids.push_back(q.arrow(a).id);
  return ids;
}

inline bool is_acyclic(const Quiver& q) {
  // Kahn's algorithm.
  std::vector<int> indeg(q.num_vertices(), 0);
  for (const auto& a : q.arrows()) ++indeg[a.head];
  std::vector<int> ready;
  for (int v = 0; v < q.num_vertices(); ++v)
    if (indeg[v] == 0) ready.push_back(v);
  int seen = 0;
  while (!ready.empty()) {
    int v = ready.back();
    ready.pop_back();
    ++seen;
    for (int a : q.out_arrows(v))
      if (--indeg[q.arrow(a).head] == 0) ready.push_back(q.arrow(a).head);
  }
  return seen == q.num_vertices();
}

/// All paths of length <= max_length, trivial paths included, ordered by
/// length and then by traversal arrow sequence.
inline std::vector<Path> enumerate_paths(const Quiver& q, std::size_t max_length) {
  std::vector<Path> out;
  std::vector<Path> frontier;
  for (int v = 0; v < q.num_vertices(); ++v) frontier.push_back(Path::trivial(v));
  out = frontier;
  for (std::size_t len = 1; len <= max_length && !frontier.empty(); ++len) {
    std::vector<Path> next;
    for (const auto& p : frontier) {
      for (int a : q.out_arrows(p.head)) {
        Path r = p;
        r.arrows.push_back(a);
        r.head = q.arrow(a).head;
        next.push_back(std::move(r));
      }
    }
    std::sort(next.begin(), next.end());
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

inline std::size_t longest_path_length(const Quiver& q) {
  if (!is_acyclic(q)) throw InputError("longest path requested for a quiver with a cycle", "");
  // Longest path ending at each vertex, relaxed in topological order.
  std::vector<int> indeg(q.num_vertices(), 0);
  for (const auto& a : q.arrows()) ++indeg[a.head];
  std::vector<int> order, ready;
  for (int v = 0; v < q.num_vertices(); ++v)
    if (indeg[v] == 0) ready.push_back(v);
  while (!ready.empty()) {
    int v = ready.back();
    ready.pop_back();
    order.push_back(v);
    for (int a : q.out_arrows(v))
      if (--indeg[q.arrow(a).head] == 0) ready.push_back(q.arrow(a).head);
  }
  std::vector<std::size_t> best(q.num_vertices(), 0);
  std::size_t longest = 0;
  for (int v : order) {
    for (int a : q.out_arrows(v)) {
      int h = q.arrow(a).head;
      best[h] = std::max(best[h], best[v] + 1);
      longest = std::max(longest, best[h]);
    }
  }
  return longest;
}

/// Every path of an acyclic quiver.
inline std::vector<Path> all_paths(const Quiver& q) {
  return enumerate_paths(q, longest_path_length(q));
}

}  // namespace iceqp
