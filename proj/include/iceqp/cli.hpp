#pragma once

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "iceqp/algebra.hpp"
#include "iceqp/boundary.hpp"
#include "iceqp/dot.hpp"
#include "iceqp/homcheck.hpp"
#include "iceqp/json_io.hpp"
#include "iceqp/lift.hpp"
#include "iceqp/seed.hpp"

namespace iceqp::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_check_failed = 1;
inline constexpr int exit_input_error = 2;

struct Options {
  std::string input;
  std::string seed_file;
  std::string format = "json";
  std::optional<int> bound;
  std::size_t max_seeds = 10000;
  std::size_t max_depth = 64;
  std::size_t walks = 0;
  std::size_t walk_length = 12;
  std::uint64_t prng_seed = 0;
  std::string coefficients = "polarised";
  std::vector<long long> word;
};

struct Result {
  std::string text;
  int status = exit_ok;
};

namespace detail {

inline void reject_dot(const Options& o, const std::string& command) {
  if (o.format == "dot") throw InputError("format 'dot' is not available for '" + command + "'", "format");
}

inline std::string matrix_text(const IntMatrix& m) { return json(m).dump(); }

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline Grading base_grading(const QuiverInput& in) {
  return in.grading ? *in.grading : Grading::constant(in.quiver(), 1);
}

inline std::optional<LiftedGrading> try_lift_grading(const LiftedIQP& l, const QuiverInput& in) {
  try {
    return lift_grading(l, base_grading(in));
  } catch (const InputError&) {
    return std::nullopt;
  }
}

inline int algebra_bound(const Options& o, const QuiverInput& in, const LiftedIQP& l) {
  if (o.bound) return *o.bound;
  if (in.bound) return *in.bound;
  if (is_acyclic(in.quiver()) && in.potential.is_zero()) return truncation_bound(l);
  throw InputError("a truncation bound is required: pass --bound or add \"bound\" to the input", "bound");
}

inline std::size_t parse_index(long long k, std::size_t n) {
  if (k < 1 || static_cast<std::size_t>(k) > n)
    throw InputError("mutation index " + std::to_string(k) + " is outside 1.." + std::to_string(n),
                     std::to_string(k));
  return static_cast<std::size_t>(k - 1);
}

inline Coefficients parse_coefficients(const std::string& s) {
  if (s == "polarised") return Coefficients::polarised;
  if (s == "principal") return Coefficients::principal;
  return Coefficients::none;
}

inline std::string lift_table(const LiftedIQP& l, const std::optional<LiftedGrading>& g) {
  const Quiver& t = l.quiver();
  std::ostringstream os;
  os << "vertices:";
  for (int v = 0; v < t.num_vertices(); ++v) os << ' ' << t.vertex(v).id << (l.ice.is_frozen_vertex(v) ? "*" : "");
  os << "\narrows:\n";
  for (int a = 0; a < t.num_arrows(); ++a) {
    const Arrow& ar = t.arrow(a);
    os << "  " << std::left << std::setw(12) << ar.id << std::setw(5) << t.vertex(ar.tail).id << "-> "
       << std::setw(5) << t.vertex(ar.head).id << std::setw(14) << to_string(l.origin[a]);
    if (g) os << " deg " << g->grading.of_arrow(a);
    if (l.ice.is_frozen_arrow(a)) os << " frozen";
    os << '\n';
  }
  os << "potential: " << render(t, l.potential) << '\n';
  if (g && g->potential_degree) os << "potential degree: " << *g->potential_degree << '\n';
  return os.str();
}

inline std::string relations_table(const Presentation& p, const std::optional<Grading>& g) {
  std::ostringstream os;
  for (const auto& r : p.relations) {
    os << r.label << ": " << render(p.quiver(), r.element);
    if (g) {
      auto d = g->of_element(r.element);
      if (d) os << "  [deg " << *d << "]";
    }
    os << '\n';
  }
  return os.str();
}

inline std::string dimension_table(const GradedQuotientAlgebra& a) {
  std::ostringstream os;
  auto dims = a.dimensions();
  for (std::size_t k = 0; k < dims.size(); ++k) os << "degree " << k << ": " << dims[k] << '\n';
  os << "total: " << a.total_dimension() << '\n';
  os << "complete: " << yes_no(a.complete()) << " (bound " << a.bound() << ")\n";
  return os.str();
}

inline std::string certificate_table(const ExactnessCertificate& c) {
  std::ostringstream os;
  for (const auto& v : c.vertices) {
    os << std::left << std::setw(8) << v.id << std::setw(9) << to_string(v.kind) << (v.pass ? "pass" : "FAIL");
    for (const auto& w : v.weights)
      if (!w.pass) os << "\n    weight " << w.weight << ": " << w.witness;
    os << '\n';
  }
  os << "weights checked: 0.." << c.max_weight << '\n';
  os << "algebra complete: " << yes_no(c.complete) << " (bound " << c.bound << ")\n";
  os << "certificate: " << (c.pass ? "pass" : "FAIL") << '\n';
  return os.str();
}

inline std::string phi_table(const PhiReport& r) {
  std::ostringstream os;
  os << "well defined: " << yes_no(r.well_defined) << '\n'
     << "surjective: " << yes_no(r.surjective) << '\n'
     << "dimensions match: " << yes_no(r.dimensions_match) << " (" << r.corner_total << " and " << r.gamma_total
     << ")\n"
     << "complete: " << yes_no(r.lifted_complete && r.gamma_complete) << " (bound " << r.bound << ")\n";
  for (const auto& c : r.counterexamples) os << "  " << c << '\n';
  os << "verdict: " << (r.passed() ? "pass" : "FAIL") << '\n';
  return os.str();
}

}  // namespace detail

inline std::string vars_text(const Seed& s) {
  std::string out;
  for (std::size_t i = 0; i < s.n; ++i) out += s.names[i] + " = " + render(s.variables[i], s.names) + "\n";
  return out;
}

inline IntMatrix seed_grading(const SeedDocument& d) {
  return grading_matrix(d.initial_exchange, d.seed.rows());
}

inline json grade_json(const SeedDocument& d) {
  IntMatrix g = seed_grading(d);
  SeedChecks c = check_seed(d.seed, d.initial_exchange, g);
  auto gm = g_matrix(d.seed, g);
  return {{"grading", g},
          {"g_vectors", gm ? json(*gm) : json(nullptr)},
          {"c_matrix", c_matrix(d.seed)},
          {"homogeneous", c.homogeneous},
          {"exchange_homogeneous", c.exchange_homogeneous},
          {"identity", c.identity},
          {"sign_coherent", c.sign_coherent},
          {"pass", c.all()}};
}

inline std::string g_text(const SeedDocument& d) {
  auto gm = g_matrix(d.seed, seed_grading(d));
  return gm ? detail::matrix_text(*gm) + "\n" : std::string("inhomogeneous\n");
}

inline std::string check_text(const SeedDocument& d) {
  SeedChecks c = check_seed(d.seed, d.initial_exchange, seed_grading(d));
  return "homogeneous: " + detail::yes_no(c.homogeneous) +
         "\nexchange homogeneous: " + detail::yes_no(c.exchange_homogeneous) +
         "\nidentity: " + detail::yes_no(c.identity) + "\nsign coherent: " + detail::yes_no(c.sign_coherent) +
         "\n";
}

inline std::string seed_table(const SeedDocument& d) {
  std::string out = vars_text(d.seed);
  out += "exchange: " + detail::matrix_text(d.seed.exchange) + "\n";
  return out;
}

inline std::string grade_table(const SeedDocument& d) {
  return "grading: " + detail::matrix_text(seed_grading(d)) + "\ng-vectors: " + g_text(d) +
         "c-matrix: " + detail::matrix_text(c_matrix(d.seed)) + "\n" + check_text(d);
}

inline SeedDocument load_seed(const std::string& path) { return parse_seed(read_json_file(path)); }

inline SeedDocument initial_document(const Quiver& q, Coefficients kind) {
  Seed s = initial_seed(q, kind);
  return {s, s.principal_part()};
}

inline Result cmd_lift(const Options& o) {
  QuiverInput in = load_quiver_input(o.input);
  LiftedIQP l = lift_qp(in.quiver(), in.potential);
  auto g = detail::try_lift_grading(l, in);
  if (o.format == "dot") return {to_dot(l.ice, "lift")};
  if (o.format == "table") return {detail::lift_table(l, g)};
  return {canonical(lifted_json(l, g))};
}

inline Result cmd_relations(const Options& o) {
  QuiverInput in = load_quiver_input(o.input);
  LiftedIQP l = lift_qp(in.quiver(), in.potential);
  Presentation p = relation_set(l);
  auto g = detail::try_lift_grading(l, in);
  std::optional<Grading> grading;
  if (g) grading = g->grading;
  if (o.format == "dot") return {to_dot(p.ice, "relations")};
  if (o.format == "table") return {detail::relations_table(p, grading)};
  return {canonical(presentation_json(p, grading))};
}

inline Result cmd_gamma(const Options& o) {
  QuiverInput in = load_quiver_input(o.input);
  GammaPresentation g = gamma_presentation(in.quiver());
  if (o.format == "dot") return {to_dot(g.presentation.ice, "boundary")};
  if (o.format == "table") {
    std::ostringstream os;
    const Quiver& q = g.quiver();
    os << "arrows:\n";
    for (int a = 0; a < q.num_arrows(); ++a)
      os << "  " << std::left << std::setw(14) << q.arrow(a).id << std::setw(5) << q.vertex(q.arrow(a).tail).id
         << "-> " << std::setw(5) << q.vertex(q.arrow(a).head).id << " deg " << g.grading.of_arrow(a) << '\n';
    os << "relations:\n" << detail::relations_table(g.presentation, g.grading);
    return {os.str()};
  }
  return {canonical(gamma_json(g))};
}

inline Result cmd_dim(const Options& o) {
  detail::reject_dot(o, "dim");
  QuiverInput in = load_quiver_input(o.input);
  LiftedIQP l = lift_qp(in.quiver(), in.potential);
  LiftedGrading g = lift_grading(l, detail::base_grading(in));
  GradedQuotientAlgebra a =
      GradedQuotientAlgebra::build(relation_set(l), g.grading, detail::algebra_bound(o, in, l));
  if (o.format == "table") return {detail::dimension_table(a)};
  return {canonical(dimension_json(a))};
}

inline Result cmd_check_cy(const Options& o) {
  detail::reject_dot(o, "check-cy");
  QuiverInput in = load_quiver_input(o.input);
  std::optional<int> bound = o.bound ? o.bound : in.bound;
  ExactnessCertificate c = cy_certificate(in.quiver(), in.potential, detail::base_grading(in), bound);
  int status = c.pass ? exit_ok : exit_check_failed;
  if (o.format == "table") return {detail::certificate_table(c), status};
  return {canonical(certificate_json(c)), status};
}

inline Result cmd_boundary_verify(const Options& o) {
  detail::reject_dot(o, "boundary-verify");
  QuiverInput in = load_quiver_input(o.input);
  if (!in.potential.is_zero()) throw InputError("boundary-verify takes a quiver without potential", "potential");
  if (!is_acyclic(in.quiver())) throw InputError("boundary-verify needs an acyclic quiver", "");
  PhiReport r = verify_phi(in.quiver());
  int status = r.passed() ? exit_ok : exit_check_failed;
  if (o.format == "table") return {detail::phi_table(r), status};
  return {canonical(phi_json(r)), status};
}

inline Result seed_output(const Options& o, const SeedDocument& d) {
  if (o.format == "table") return {seed_table(d)};
  return {canonical(seed_json(d))};
}

inline Result cmd_seed_init(const Options& o) {
  detail::reject_dot(o, "seed init");
  QuiverInput in = load_quiver_input(o.input);
  return seed_output(o, initial_document(in.quiver(), detail::parse_coefficients(o.coefficients)));
}

inline Result cmd_seed_mutate(const Options& o) {
  detail::reject_dot(o, "seed mutate");
  if (o.seed_file.empty()) throw InputError("seed mutate needs --in <seed.json>", "in");
  SeedDocument d = load_seed(o.seed_file);
  for (long long k : o.word) d.seed = mutate(d.seed, detail::parse_index(k, d.seed.n));
  return seed_output(o, d);
}

inline SeedDocument seed_source(const Options& o) {
  if (!o.seed_file.empty()) return load_seed(o.seed_file);
  if (!o.input.empty()) return initial_document(load_quiver_input(o.input).quiver(), Coefficients::polarised);
  throw InputError("give a quiver file or --in <seed.json>", "in");
}

inline Result cmd_grade(const Options& o) {
  detail::reject_dot(o, "grade");
  SeedDocument d = seed_source(o);
  json j = grade_json(d);
  int status = j.at("pass").get<bool>() ? exit_ok : exit_check_failed;
  if (o.format == "table") return {grade_table(d), status};
  return {canonical(j), status};
}

inline Result cmd_explore(const Options& o) {
  QuiverInput in = load_quiver_input(o.input);
  Seed s = initial_seed(in.quiver(), detail::parse_coefficients(o.coefficients));
  ExchangeGraph g = exchange_graph(s, o.max_seeds, o.max_depth);
  std::optional<WalkReport> walks;
  if (o.walks > 0) {
    if (s.rows() != 3 * s.n) throw InputError("random walks need polarised coefficients", "coefficients");
    walks = random_walks(s, o.walks, o.walk_length, o.prng_seed);
  }
  int status = walks && !walks->pass() ? exit_check_failed : exit_ok;
  if (o.format == "dot") return {to_dot(g), status};
  if (o.format == "table") {
    std::ostringstream os;
    for (std::size_t i = 0; i < g.seeds.size(); ++i) {
      os << i << " [";
      for (std::size_t j = 0; j < g.words[i].size(); ++j) os << (j ? " " : "") << g.words[i][j] + 1;
      os << "]:";
      for (std::size_t v = 0; v < g.seeds[i].n; ++v) os << "  " << render(g.seeds[i].variables[v], g.seeds[i].names);
      os << '\n';
    }
    os << "seeds: " << g.seeds.size() << ", edges: " << g.edges.size()
       << ", exhaustive: " << detail::yes_no(g.exhaustive) << '\n';
    if (walks)
      os << "walks: " << walks->walks << ", steps: " << walks->steps << ", verdict: "
         << (walks->pass() ? "pass" : "FAIL") << '\n';
    return {os.str(), status};
  }
  json j = graph_json(g);
  if (walks)
    j["walks"] = {{"walks", walks->walks},
                  {"length", o.walk_length},
                  {"seed", o.prng_seed},
                  {"steps", walks->steps},
                  {"division_failures", walks->division_failures},
                  {"inhomogeneous", walks->inhomogeneous},
                  {"exchange_inhomogeneous", walks->exchange_inhomogeneous},
                  {"identity_failures", walks->identity_failures},
                  {"incoherent", walks->incoherent},
                  {"pass", walks->pass()}};
  return {canonical(j), status};
}

/// Line-oriented mutation session. Every display matches the corresponding
/// batch command for the same mutation word.
class Repl {
 public:
  explicit Repl(SeedDocument start) : history_{std::move(start)} {}

  const SeedDocument& current() const { return history_.back(); }

  /// Runs commands until end of input or `quit`; returns the exit status.
  int run(std::istream& in, std::ostream& out, bool prompt) {
    std::string line;
    int status = exit_ok;
    while (true) {
      if (prompt) out << "> " << std::flush;
      if (!std::getline(in, line)) break;
      std::istringstream words(line);
      std::string cmd;
      if (!(words >> cmd) || cmd[0] == '#') continue;
      if (cmd == "quit" || cmd == "exit") break;
      try {
        int s = execute(cmd, words, out);
        if (s != exit_ok && status == exit_ok) status = s;
      } catch (const std::exception& e) {
        out << "error: " << e.what() << '\n';
        status = exit_input_error;
      }
    }
    return status;
  }

 private:
  int execute(const std::string& cmd, std::istringstream& args, std::ostream& out) {
    if (cmd == "mu") {
      std::vector<std::size_t> ks;
      long long k;
      while (args >> k) ks.push_back(detail::parse_index(k, current().seed.n));
      if (!args.eof()) throw InputError("mu expects vertex indices", "mu");
      if (ks.empty()) throw InputError("mu expects a vertex index", "mu");
      for (auto i : ks) {
        SeedDocument next = current();
        next.seed = mutate(next.seed, i);
        history_.push_back(std::move(next));
      }
      return exit_ok;
    }
    if (cmd == "undo") {
      if (history_.size() == 1) throw InputError("nothing to undo", "undo");
      history_.pop_back();
      return exit_ok;
    }
    if (cmd == "show") {
      std::string what;
      args >> what;
      if (what == "vars") out << vars_text(current().seed);
      else if (what == "matrix") out << detail::matrix_text(current().seed.exchange) << '\n';
      else if (what == "c") out << detail::matrix_text(c_matrix(current().seed)) << '\n';
      else if (what == "g") out << g_text(current());
      else if (what == "json") out << canonical(seed_json(current()));
      else throw InputError("show expects vars, matrix, c, g or json", what);
      return exit_ok;
    }
    if (cmd == "check") {
      out << check_text(current());
      return check_seed(current().seed, current().initial_exchange, seed_grading(current())).all()
                 ? exit_ok
                 : exit_check_failed;
    }
    if (cmd == "save") {
      std::string path;
      if (!(args >> path)) throw InputError("save expects a path", "save");
      std::ofstream f(path);
      if (!f) throw InputError("cannot write '" + path + "'", path);
      f << canonical(seed_json(current()));
      out << "saved " << path << '\n';
      return exit_ok;
    }
    if (cmd == "help") {
      out << "mu k [k ...]   mutate at the given 1-based indices\n"
             "undo           revert the last mutation\n"
             "show vars|matrix|c|g|json\n"
             "check          homogeneity, identity and sign-coherence verdicts\n"
             "save <path>    write the seed as JSON\n"
             "quit\n";
      return exit_ok;
    }
    throw InputError("unknown command '" + cmd + "'", cmd);
  }

  std::vector<SeedDocument> history_;
};

inline int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err,
               bool interactive = false) {
  Options o;
  CLI::App app{"Ice quivers with potential, frozen Jacobian algebras and cluster seeds", "iceqp"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "dot", "table"}))
      ->capture_default_str();
  app.add_option("--bound", o.bound, "Truncation degree for the algebra")->check(CLI::NonNegativeNumber);
  app.add_option("--max-seeds", o.max_seeds, "Exchange graph seed limit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--max-depth", o.max_depth, "Exchange graph depth limit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--walks", o.walks, "Number of random mutation walks")->capture_default_str();
  app.add_option("--walk-length", o.walk_length, "Length of each random walk")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", o.prng_seed, "Random seed for the walks")->capture_default_str();
  app.add_option("--in", o.seed_file, "Seed JSON file");
  app.add_option("--coefficients", o.coefficients, "Frozen variables of the initial seed")
      ->check(CLI::IsMember({"polarised", "principal", "none"}))
      ->capture_default_str();

  Result (*handler)(const Options&) = nullptr;
  bool repl = false;
  auto file_command = [&](const std::string& name, const std::string& help, Result (*h)(const Options&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("input", o.input, "Quiver JSON file")->required();
    sub->callback([&handler, h] { handler = h; });
    return sub;
  };
  file_command("lift", "Print the lifted ice quiver with potential", cmd_lift);
  file_command("relations", "Print the relations of the frozen Jacobian algebra", cmd_relations);
  file_command("gamma", "Print the boundary algebra presentation", cmd_gamma);
  file_command("dim", "Print the graded dimensions of the frozen Jacobian algebra", cmd_dim);
  file_command("check-cy", "Run the exactness certificate on vertex simples", cmd_check_cy);
  file_command("boundary-verify", "Check the boundary presentation against the frozen corner", cmd_boundary_verify);
  file_command("explore", "Search the exchange graph and run random mutation walks", cmd_explore);

  CLI::App* seed = app.add_subcommand("seed", "Create or mutate seeds");
  seed->fallthrough();
  seed->require_subcommand(1);
  CLI::App* init = seed->add_subcommand("init", "Initial seed of a quiver");
  init->fallthrough();
  init->add_option("input", o.input, "Quiver JSON file")->required();
  init->callback([&] { handler = cmd_seed_init; });
  CLI::App* mut = seed->add_subcommand("mutate", "Mutate a seed along 1-based indices");
  mut->fallthrough();
  mut->add_option("indices", o.word, "Mutation indices")->required();
  mut->callback([&] { handler = cmd_seed_mutate; });

  CLI::App* grade = app.add_subcommand("grade", "Grading matrix, g-vectors and the c-vector identity");
  grade->fallthrough();
  grade->add_option("input", o.input, "Quiver JSON file (instead of --in)");
  grade->callback([&] { handler = cmd_grade; });

  CLI::App* rp = app.add_subcommand("repl", "Interactive mutation session");
  rp->fallthrough();
  rp->add_option("input", o.input, "Quiver JSON file (instead of --in)");
  rp->callback([&] { repl = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return exit_ok;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return exit_input_error;
  }

  try {
    if (repl) {
      Repl session(seed_source(o));
      return session.run(in, out, interactive);
    }
    Result r = handler(o);
    out << r.text;
    return r.status;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
  } catch (const TruncationError& e) {
    err << "limit exceeded: " << e.what() << '\n';
  } catch (const DivisionError& e) {
    err << "division failed: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return exit_input_error;
}

}  // namespace iceqp::cli
