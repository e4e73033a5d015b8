#include "isogroup/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "isogroup/dynsys.hpp"
#include "isogroup/error.hpp"
#include "isogroup/fixture_suite.hpp"
#include "isogroup/graphsym.hpp"
#include "isogroup/io.hpp"
#include "isogroup/isotropy.hpp"
#include "isogroup/procrustes.hpp"
#include "isogroup/random.hpp"
#include "isogroup/spectral.hpp"
#include "isogroup/stencil.hpp"

namespace isogroup::cli {
namespace {

using Json = nlohmann::ordered_json;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Result {
  Json json;
  std::optional<Table> table;      ///< csv view; otherwise key,value pairs
  std::optional<std::string> text;  ///< text view; otherwise rendered from json
  int exit_code = kExitOk;
  std::string default_format = "json";  ///< used when --format is not given
};

struct Options {
  std::string format;
  std::uint64_t seed = 0;
  std::optional<double> cluster_tol;
  double tol = 1e-8;
  std::string output;

  std::string input, a, b, gamma, gamma1, gamma2, dir;
  std::string function = "paper-6-3";
  std::string x, h, x0;
  std::string graph_format = "auto";
  std::string order = "ascending";
  std::optional<std::size_t> vertices;
  std::size_t count = 1;
  std::size_t samples = 101;
  std::size_t steps = 10000;
  std::size_t every = 1;
  std::size_t limit = 100000;
  std::size_t reflect = 0;
  int levels = 5;
  double mu = 0.0, from = -0.5, to = 1.5, dt = 1e-2;
  bool exhaustive = false;
};

// ---- serialisation helpers

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    rows.push_back(Json(std::vector<double>(r.begin(), r.end())));
  }
  return rows;
}

std::string cell(const Json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool is_scalar_array(const Json& v) {
  return v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_primitive(); });
}

void render_text(const Json& j, std::ostream& os, const std::string& indent) {
  for (const auto& [key, v] : j.items()) {
    os << indent << key << ":";
    if (v.is_primitive()) {
      os << ' ' << cell(v) << '\n';
    } else if (is_scalar_array(v)) {
      for (const auto& e : v) os << ' ' << cell(e);
      os << '\n';
    } else if (v.is_array()) {
      os << '\n';
      for (const auto& e : v) {
        if (is_scalar_array(e)) {
          os << indent << " ";
          for (const auto& x : e) os << ' ' << cell(x);
          os << '\n';
        } else if (e.is_object()) {
          os << indent << "  -\n";
          render_text(e, os, indent + "    ");
        } else {
          os << indent << "  " << cell(e) << '\n';
        }
      }
    } else {
      os << '\n';
      render_text(v, os, indent + "  ");
    }
  }
}

void flatten(const Json& v, const std::string& prefix, Table& t) {
  if (v.is_primitive()) {
    t.rows.push_back({prefix, cell(v)});
    return;
  }
  for (const auto& [key, e] : v.items()) flatten(e, prefix.empty() ? key : prefix + "." + key, t);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void write_result(const Result& r, const std::string& format, std::ostream& os) {
  if (format == "json") {
    os << r.json.dump(2) << '\n';
  } else if (format == "csv") {
    Table flat{{"key", "value"}, {}};
    if (!r.table) flatten(r.json, "", flat);
    const Table& t = r.table ? *r.table : flat;
    auto line = [&](const std::vector<std::string>& fields) {
      for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << csv_field(fields[i]);
      os << '\n';
    };
    line(t.header);
    for (const auto& row : t.rows) line(row);
  } else if (r.text) {
    os << *r.text;
  } else {
    render_text(r.json, os, "");
  }
}

// ---- inputs

SymMatrix load_sym(const std::string& path) { return SymMatrix(read_matrix(path)); }

Graph load_graph(const std::string& path, const Options& o) {
  const GraphFormat fmt = o.graph_format == "edges"    ? GraphFormat::Edges
                          : o.graph_format == "matrix" ? GraphFormat::Matrix
                                                       : GraphFormat::Auto;
  return read_graph(path, fmt, o.vertices);
}

SpectralOrder order_of(const Options& o) {
  return o.order == "descending" ? SpectralOrder::Descending : SpectralOrder::Ascending;
}

// ---- subcommands

Result cmd_eig(const Options& o) {
  const auto dec = eig_sym(load_sym(o.input), o.cluster_tol);
  Result r;
  Json clusters = Json::array();
  for (const auto& c : dec.clusters) clusters.push_back({{"value", c.value}, {"multiplicity", c.multiplicity}});
  r.json = {{"n", dec.size()},
            {"lambdas", dec.lambdas},
            {"multiplicities", dec.multiplicities()},
            {"clusters", clusters},
            {"cluster_tol", dec.cluster_tol},
            {"borderline", dec.borderline},
            {"vectors", to_json(dec.vectors)},
            {"reconstruction_residual", reconstruction_residual(dec)}};
  Table t{{"index", "lambda", "cluster"}, {}};
  std::size_t k = 0, seen = 0;
  for (std::size_t i = 0; i < dec.lambdas.size(); ++i) {
    if (i == seen + dec.clusters[k].multiplicity) seen += dec.clusters[k++].multiplicity;
    t.rows.push_back({std::to_string(i), format_double(dec.lambdas[i]), std::to_string(k)});
  }
  r.table = std::move(t);
  return r;
}

Result cmd_gamma2(const Options& o) {
  const auto dec = eig_sym(load_sym(o.input), o.cluster_tol);
  const auto elements = gamma2_elements(dec);
  Result r;
  Json list = Json::array();
  Table t{{"code", "signs", "commutation_residual"}, {}};
  for (const auto& e : elements) {
    const auto& signs = std::get<SignPattern>(e.source);
    const double res = commutator_residual(dec.matrix, e.gamma);
    list.push_back({{"code", signs.code()},
                    {"signs", signs.signs()},
                    {"commutation_residual", res},
                    {"gamma", to_json(e.gamma)}});
    std::string s;
    for (int v : signs.signs()) s += v > 0 ? '+' : '-';
    t.rows.push_back({std::to_string(signs.code()), s, format_double(res)});
  }
  r.json = {{"multiplicities", dec.multiplicities()},
            {"finite", is_finite(dec)},
            {"count", elements.size()},
            {"elements", list}};
  r.table = std::move(t);
  return r;
}

Result cmd_sample(const Options& o) {
  const auto dec = eig_sym(load_sym(o.input), o.cluster_tol);
  Result r;
  Json list = Json::array();
  Table t{{"index", "seed", "commutation_residual", "orthogonality_residual"}, {}};
  for (std::size_t i = 0; i < o.count; ++i) {
    const auto seed = derive_seed(o.seed, i);
    const auto e = sample_gamma(dec, seed);
    const double comm = commutator_residual(dec.matrix, e.gamma);
    const double orth = orthogonality_residual(e.gamma);
    list.push_back({{"index", i},
                    {"seed", seed},
                    {"commutation_residual", comm},
                    {"orthogonality_residual", orth},
                    {"gamma", to_json(e.gamma)}});
    t.rows.push_back({std::to_string(i), std::to_string(seed), format_double(comm), format_double(orth)});
  }
  r.json = {{"multiplicities", dec.multiplicities()}, {"seed", o.seed}, {"count", o.count}, {"elements", list}};
  r.table = std::move(t);
  return r;
}

Result cmd_check(const Options& o) {
  const auto dec = eig_sym(load_sym(o.input), o.cluster_tol);
  const Matrix g = read_matrix(o.gamma);
  Result r;
  r.json = {{"member", is_member(dec, g, o.tol)},
            {"tol", o.tol},
            {"commutation_residual", commutator_residual(dec.matrix, g)},
            {"orthogonality_residual", orthogonality_residual(g)},
            {"multiplicities", dec.multiplicities()},
            {"finite", is_finite(dec)}};
  return r;
}

Result cmd_solve(const Options& o) {
  const auto s = procrustes_solve(load_sym(o.a), load_sym(o.b), order_of(o));
  Result r;
  r.json = {{"order", o.order}, {"cost", s.cost}, {"lower_bound", s.lower_bound}, {"p", to_json(s.p)}};
  return r;
}

Result cmd_family(const Options& o) {
  const auto family = procrustes_family(load_sym(o.a), load_sym(o.b), o.seed, o.count, order_of(o));
  Result r;
  Json list = Json::array();
  Table t{{"index", "cost", "lower_bound"}, {}};
  for (std::size_t i = 0; i < family.size(); ++i) {
    list.push_back({{"index", i}, {"cost", family[i].cost}, {"p", to_json(family[i].p)}});
    t.rows.push_back({std::to_string(i), format_double(family[i].cost), format_double(family[i].lower_bound)});
  }
  r.json = {{"order", o.order},
            {"seed", o.seed},
            {"lower_bound", family.empty() ? 0.0 : family.front().lower_bound},
            {"solutions", list}};
  r.table = std::move(t);
  return r;
}

Result cmd_spectrum(const Options& o) {
  const Graph g = load_graph(o.input, o);
  const auto dec = eig_sym(g.adjacency_sym(), o.cluster_tol);
  Result r;
  r.json = {{"n", g.size()},
            {"edges", g.edge_count()},
            {"lambdas", dec.lambdas},
            {"multiplicities", dec.multiplicities()},
            {"finite", is_finite(dec)}};
  return r;
}

Result cmd_aut(const Options& o) {
  const Graph g = load_graph(o.input, o);
  const auto strategy = o.exhaustive ? SearchStrategy::Exhaustive : SearchStrategy::Backtracking;
  const auto aut = automorphisms(g, o.limit, strategy);
  Result r;
  Json maps = Json::array();
  Table t{{"index", "map"}, {}};
  for (std::size_t i = 0; i < aut.size(); ++i) {
    maps.push_back(aut[i].map());
    std::string s;
    for (std::size_t k = 0; k < aut[i].size(); ++k) s += (k ? " " : "") + std::to_string(aut[i][k]);
    t.rows.push_back({std::to_string(i), s});
  }
  r.json = {{"n", g.size()},
            {"strategy", o.exhaustive ? "exhaustive" : "backtracking"},
            {"count", aut.size()},
            {"automorphisms", maps}};
  r.table = std::move(t);
  return r;
}

Result cmd_iso(const Options& o) {
  const Graph ga = load_graph(o.a, o), gb = load_graph(o.b, o);
  const auto p = find_isomorphism(ga, gb);
  Result r;
  r.json = {{"isomorphic", p.has_value()}, {"permutation", p ? Json(p->map()) : Json()}};
  return r;
}

Result cmd_hidden(const Options& o) {
  const Graph g = load_graph(o.input, o);
  const Matrix a = g.adjacency();
  Result r;
  Json list = Json::array();
  Table t{{"index", "seed", "permutation", "commutation_residual"}, {}};
  for (std::size_t i = 0; i < o.count; ++i) {
    const auto seed = derive_seed(o.seed, i);
    const auto e = hidden_symmetry_sample(g, seed);
    const bool perm = is_permutation(e.gamma).has_value();
    const double res = commutator_residual(a, e.gamma);
    list.push_back({{"index", i},
                    {"seed", seed},
                    {"permutation", perm},
                    {"commutation_residual", res},
                    {"gamma", to_json(e.gamma)}});
    t.rows.push_back({std::to_string(i), std::to_string(seed), perm ? "true" : "false", format_double(res)});
  }
  r.json = {{"n", g.size()}, {"seed", o.seed}, {"samples", list}};
  r.table = std::move(t);
  return r;
}

struct ProbeSetup {
  ScalarField f;
  Vector x, h;
  SpectralDecomposition hessian;
  Matrix g1, g2;
};

ProbeSetup probe_setup(const Options& o) {
  auto f = builtin_field(o.function);
  if (!f) {
    std::string names;
    for (const auto& n : builtin_field_names()) names += (names.empty() ? "" : ", ") + n;
    throw ArgumentError("unknown function '" + o.function + "' (known: " + names + ")");
  }
  Vector x = o.x.empty() ? Vector(f->dim, 1.0) : parse_vector(o.x);
  if (x.size() != f->dim)
    throw DimensionError("--x has " + std::to_string(x.size()) + " entries, the function takes " +
                         std::to_string(f->dim));
  Vector h;
  if (o.h.empty()) {
    Rng rng(derive_seed(o.seed, 0));
    std::normal_distribution<double> normal;
    h.resize(f->dim);
    for (auto& v : h) v = normal(rng);
    const double scale = 0.1 / norm2(h);
    for (auto& v : h) v *= scale;
  } else {
    h = parse_vector(o.h);
  }
  if (h.size() != f->dim)
    throw DimensionError("--h has " + std::to_string(h.size()) + " entries, the function takes " +
                         std::to_string(f->dim));
  auto hessian = hessian_symmetry(*f, x);
  Matrix g1 = o.gamma1.empty() ? Matrix::identity(f->dim) : read_matrix(o.gamma1);
  Matrix g2;
  if (!o.gamma2.empty()) {
    g2 = read_matrix(o.gamma2);
  } else {
    if (o.reflect >= f->dim)
      throw ArgumentError("--reflect " + std::to_string(o.reflect) + " is out of range for dimension " +
                          std::to_string(f->dim));
    g2 = reflection(hessian.vectors.row(o.reflect));
  }
  return {std::move(*f), std::move(x), std::move(h), std::move(hessian), std::move(g1), std::move(g2)};
}

Result cmd_probe(const Options& o) {
  const auto s = probe_setup(o);
  const auto probe = fourth_order_probe(s.f, s.hessian, s.x, s.g1, s.g2, s.h);
  std::vector<std::string> warnings = probe.warnings;
  Json slope;
  try {
    slope = order_fit(s.f, s.x, s.g1, s.g2, s.h, o.levels);
  } catch (const DegenerateProbeError& e) {
    warnings.push_back(e.what());
  }
  Result r;
  r.json = {{"function", o.function},
            {"x", s.x},
            {"h", s.h},
            {"value", probe.value},
            {"slope", slope},
            {"gammas", {{"gamma1", to_json(s.g1)}, {"gamma2", to_json(s.g2)}}},
            {"hessian_eigenvalues", s.hessian.lambdas},
            {"warnings", warnings}};
  return r;
}

Result cmd_order(const Options& o) {
  const auto s = probe_setup(o);
  Result r;
  Json levels = Json::array();
  Table t{{"level", "h_norm", "value"}, {}};
  Vector h = s.h;
  for (int k = 0; k < o.levels; ++k) {
    const double v = fourth_order_probe(s.f, s.hessian, s.x, s.g1, s.g2, h).value;
    levels.push_back({{"h_norm", norm2(h)}, {"value", v}});
    t.rows.push_back({std::to_string(k), format_double(norm2(h)), format_double(v)});
    for (auto& e : h) e *= 0.5;
  }
  r.json = {{"function", o.function},
            {"slope", order_fit(s.f, s.x, s.g1, s.g2, s.h, o.levels)},
            {"levels", levels}};
  r.table = std::move(t);
  return r;
}

Json component_json(const EquilibriumComponent& c) {
  Json j = {{"kind", to_string(kind_of(c))}, {"radius", radius_of(c)}};
  std::visit(
      [&](const auto& comp) {
        using T = std::decay_t<decltype(comp)>;
        if constexpr (std::is_same_v<T, PointPair>) {
          j["eigenvalue"] = comp.eigenvalue;
          j["direction"] = comp.direction;
        } else if constexpr (!std::is_same_v<T, Origin>) {
          j["eigenvalue"] = comp.eigenvalue;
          j["basis"] = to_json(comp.basis);
        }
      },
      c);
  return j;
}

Result cmd_equilibria(const Options& o) {
  const auto set = equilibria(o.mu);
  const auto [l1, l2] = guiding_spectrum(o.mu);
  Result r;
  Json comps = Json::array();
  Table t{{"mu", "kind", "radius"}, {}};
  for (const auto& c : set.components) {
    comps.push_back(component_json(c));
    t.rows.push_back({format_double(o.mu), to_string(kind_of(c)), format_double(radius_of(c))});
  }
  r.json = {{"mu", o.mu}, {"lambdas", {l1, l2, l2}}, {"components", comps}};
  r.table = std::move(t);
  return r;
}

Result cmd_sweep(const Options& o) {
  const auto rows = sweep(o.from, o.to, o.samples);
  Result r;
  Json list = Json::array();
  Table t{{"mu", "kind", "radius", "transition"}, {}};
  for (const auto& row : rows) {
    Json comps = Json::array();
    for (const auto& [kind, radius] : row.components) {
      comps.push_back({{"kind", to_string(kind)}, {"radius", radius}});
      t.rows.push_back({format_double(row.mu), to_string(kind), format_double(radius),
                        row.transition ? "true" : "false"});
    }
    list.push_back({{"mu", row.mu}, {"lambdas", row.lambdas}, {"transition", row.transition}, {"components", comps}});
  }
  r.json = {{"from", o.from}, {"to", o.to}, {"samples", o.samples}, {"rows", list}};
  r.table = std::move(t);
  return r;
}

Result cmd_integrate(const Options& o) {
  const Vector x0 = parse_vector(o.x0);
  if (o.every == 0) throw ArgumentError("--every must be positive");
  const auto traj = integrate(x0, o.mu, o.dt, o.steps);
  Result r;
  Table t{{"step", "t"}, {}};
  for (std::size_t i = 0; i < x0.size(); ++i) t.header.push_back("x" + std::to_string(i + 1));
  Json states = Json::array();
  for (std::size_t k = 0; k < traj.size(); ++k) {
    if (k % o.every != 0 && k + 1 != traj.size()) continue;
    const double time = static_cast<double>(k) * o.dt;
    states.push_back({{"step", k}, {"t", time}, {"x", traj[k]}});
    std::vector<std::string> row{std::to_string(k), format_double(time)};
    for (double v : traj[k]) row.push_back(format_double(v));
    t.rows.push_back(std::move(row));
  }
  r.json = {{"mu", o.mu},
            {"dt", o.dt},
            {"steps", o.steps},
            {"final", traj.back()},
            {"distance_to_equilibria", equilibria(o.mu).distance(traj.back())},
            {"trajectory", states}};
  r.table = std::move(t);
  return r;
}

Result cmd_fixtures(const Options& o) {
  const auto checks = verify_fixtures(o.dir.empty() ? default_fixture_dir() : std::filesystem::path(o.dir));
  Result r;
  Json list = Json::array();
  Table t{{"name", "passed", "measured", "tolerance", "detail"}, {}};
  std::ostringstream text;
  std::size_t failed = 0;
  for (const auto& c : checks) {
    failed += c.passed ? 0 : 1;
    list.push_back({{"name", c.name},
                    {"passed", c.passed},
                    {"measured", c.measured},
                    {"tolerance", c.tolerance},
                    {"detail", c.detail}});
    t.rows.push_back({c.name, c.passed ? "true" : "false", format_double(c.measured),
                      format_double(c.tolerance), c.detail});
    text << (c.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(56) << c.name << " measured "
         << std::setw(24) << format_double(c.measured) << " tol " << format_double(c.tolerance);
    if (!c.detail.empty()) text << "  [" << c.detail << "]";
    text << '\n';
  }
  text << checks.size() - failed << "/" << checks.size() << " checks passed\n";
  r.json = {{"passed", checks.size() - failed}, {"failed", failed}, {"checks", list}};
  r.table = std::move(t);
  r.text = text.str();
  r.exit_code = failed ? kExitFixtures : kExitOk;
  r.default_format = "text";
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  std::function<Result(const Options&)> action;

  CLI::App app{"Orthogonal isotropy groups of symmetric matrices and their uses.", "isogroup"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--format", o.format, "Output format (default json; text for fixtures verify)")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--seed", o.seed, "Root seed; subtask i uses a seed derived from (seed, i)")
      ->capture_default_str();
  app.add_option("--cluster-tol", o.cluster_tol,
                 "Eigenvalue clustering tolerance (default 1e-8 * max(1, max|lambda|))");
  app.add_option("--tol", o.tol, "Membership tolerance")->capture_default_str();
  app.add_option("--output", o.output, "Write results to this file instead of stdout");

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& about,
                  Result (*fn)(const Options&)) {
    auto* sub = parent->add_subcommand(name, about);
    sub->callback([&action, fn] { action = fn; });
    return sub;
  };
  auto add_input = [&](CLI::App* sub, const std::string& what) {
    sub->add_option("--input", o.input, what)->required();
  };
  auto add_graph_opts = [&](CLI::App* sub) {
    sub->add_option("--graph-format", o.graph_format, "Graph file format")
        ->check(CLI::IsMember({"auto", "edges", "matrix"}))
        ->capture_default_str();
    sub->add_option("--vertices", o.vertices, "Vertex count for edge lists (default: max index + 1)");
  };

  auto* eig = leaf(&app, "eig", "Sorted eigendecomposition with clustered multiplicities", cmd_eig);
  add_input(eig, "Symmetric matrix file");

  auto* iso = app.add_subcommand("isotropy", "Elements of the isotropy group Gamma(A)");
  iso->require_subcommand(1);
  add_input(leaf(iso, "gamma2", "Enumerate the 2^n sign-group elements (n <= 20)", cmd_gamma2),
            "Symmetric matrix file");
  auto* sample = leaf(iso, "sample", "Haar-sample elements of Gamma(A)", cmd_sample);
  add_input(sample, "Symmetric matrix file");
  sample->add_option("--count", o.count, "Number of samples")->capture_default_str();
  auto* check = leaf(iso, "check", "Test whether a matrix lies in Gamma(A)", cmd_check);
  add_input(check, "Symmetric matrix file");
  check->add_option("--gamma", o.gamma, "Candidate matrix file")->required();

  auto* proc = app.add_subcommand("procrustes", "Two-sided orthogonal Procrustes problem");
  proc->require_subcommand(1);
  for (auto* sub : {leaf(proc, "solve", "Canonical minimiser of ||PA - BP||_F", cmd_solve),
                    leaf(proc, "family", "Sample the optimal solution family", cmd_family)}) {
    sub->add_option("--a", o.a, "Symmetric matrix A")->required();
    sub->add_option("--b", o.b, "Symmetric matrix B")->required();
    sub->add_option("--order", o.order, "Spectral ordering of both matrices")
        ->check(CLI::IsMember({"ascending", "descending"}))
        ->capture_default_str();
    if (sub->get_name() == "family")
      sub->add_option("--count", o.count, "Number of family members")->capture_default_str();
  }

  auto* graph = app.add_subcommand("graph", "Graph symmetries via the adjacency matrix");
  graph->require_subcommand(1);
  auto* spectrum = leaf(graph, "spectrum", "Adjacency spectrum and multiplicities", cmd_spectrum);
  add_input(spectrum, "Graph file (edge list or adjacency matrix)");
  add_graph_opts(spectrum);
  auto* aut = leaf(graph, "aut", "Automorphism group as permutations", cmd_aut);
  add_input(aut, "Graph file (edge list or adjacency matrix)");
  add_graph_opts(aut);
  aut->add_option("--limit", o.limit, "Abort after this many automorphisms")->capture_default_str();
  aut->add_flag("--exhaustive", o.exhaustive, "Enumerate all n! permutations (n <= 12)");
  auto* giso = leaf(graph, "iso", "Find an isomorphism between two graphs", cmd_iso);
  giso->add_option("--a", o.a, "First graph file")->required();
  giso->add_option("--b", o.b, "Second graph file")->required();
  add_graph_opts(giso);
  auto* hidden = leaf(graph, "hidden", "Sample non-permutation symmetries of the adjacency matrix", cmd_hidden);
  add_input(hidden, "Graph file (edge list or adjacency matrix)");
  add_graph_opts(hidden);
  hidden->add_option("--count", o.count, "Number of samples")->capture_default_str();

  auto* stencil = app.add_subcommand("stencil", "Symmetry-based fourth-order Taylor probes");
  stencil->require_subcommand(1);
  for (auto* sub : {leaf(stencil, "probe", "Evaluate the four-point probe and its order", cmd_probe),
                    leaf(stencil, "order", "Probe values over halving steps and fitted order", cmd_order)}) {
    sub->add_option("--function", o.function, "Built-in function name")->capture_default_str();
    sub->add_option("--x", o.x, "Base point, comma separated (default all ones)");
    sub->set_help_flag("--help", "Print this help message and exit");
    sub->add_option("--h", o.h, "Step vector, comma separated (default: seeded, norm 0.1)");
    sub->add_option("--gamma1", o.gamma1, "Matrix file for gamma_1 (default identity)");
    sub->add_option("--gamma2", o.gamma2, "Matrix file for gamma_2 (default: Hessian reflection)");
    sub->add_option("--reflect", o.reflect, "Hessian eigenvector index used for gamma_2")
        ->capture_default_str();
    sub->add_option("--levels", o.levels, "Halving levels for the order fit")->capture_default_str();
  }

  auto* dyn = app.add_subcommand("dynsys", "Equilibria of x' = A(mu) x - |x|^2 x");
  dyn->require_subcommand(1);
  leaf(dyn, "equilibria", "Equilibrium components at one mu", cmd_equilibria)
      ->add_option("--mu", o.mu, "Parameter")
      ->capture_default_str();
  auto* sw = leaf(dyn, "sweep", "Component inventory over a mu grid", cmd_sweep);
  sw->add_option("--from", o.from, "First mu")->capture_default_str();
  sw->add_option("--to", o.to, "Last mu")->capture_default_str();
  sw->add_option("--samples", o.samples, "Grid points")->capture_default_str();
  auto* integ = leaf(dyn, "integrate", "Fixed-step RK4 trajectory", cmd_integrate);
  integ->add_option("--x0", o.x0, "Initial state, comma separated")->required();
  integ->add_option("--mu", o.mu, "Parameter")->capture_default_str();
  integ->add_option("--dt", o.dt, "Step size")->capture_default_str();
  integ->add_option("--steps", o.steps, "Number of steps")->capture_default_str();
  integ->add_option("--every", o.every, "Report every k-th state")->capture_default_str();

  auto* fix = app.add_subcommand("fixtures", "Reference-value checks");
  fix->require_subcommand(1);
  leaf(fix, "verify", "Re-derive every shipped reference value", cmd_fixtures)
      ->add_option("--dir", o.dir, "Fixture directory (default: the shipped one)");

  if (args.empty()) {
    err << app.help();
    return kExitUsage;
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const CLI::App* deepest = &app;
    while (!deepest->get_subcommands().empty()) deepest = deepest->get_subcommands().back();
    err << deepest->help();
    return kExitUsage;
  }
  if (!action) {
    err << app.help();
    return kExitUsage;
  }

  try {
    const Result r = action(o);
    const std::string& format = o.format.empty() ? r.default_format : o.format;
    if (o.output.empty()) {
      write_result(r, format, out);
    } else {
      std::ofstream file(o.output);
      if (!file) throw InputError("cannot write '" + o.output + "'");
      write_result(r, format, file);
    }
    return r.exit_code;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const DegenerateProbeError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace isogroup::cli
