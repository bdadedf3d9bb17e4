#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "experiments.hpp"
#include "snl/errors.hpp"
#include "snl/lattice_polygons.hpp"
#include "snl/multiplicity.hpp"
#include "snl/serialize.hpp"

namespace snl {
namespace {

struct Params {
  Json norm = "euclidean";
  std::size_t k = 3;
  std::size_t count = 10;
  std::size_t budget = 10;
  std::size_t resolution = 64;
  std::optional<double> background;
  std::optional<double> bound;
  std::size_t n_max = 4;
  int m = 2;
  int two_m = 4;
  double level = 1.0;
  std::optional<double> tolerance;
  bool witnesses = false;
  bool graph_level = false;
  bool primitive = false;
  std::size_t node_budget = 0;
  std::optional<std::int64_t> coordinate_bound;
  bool no_certify = false;
  std::size_t directions = 64;
  std::size_t k_min = 2;
  std::size_t k_max = 6;
  std::vector<std::string> classes;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
  std::string scenario;
};

struct Output {
  Json json;
  CsvTable csv;
};

// Scenario keys fill options that were not given on the command line.
class ScenarioBinder {
 public:
  template <class T>
  CLI::Option* add(CLI::App* app, const std::string& name, T& var, const std::string& help) {
    CLI::Option* opt = app->add_option("--" + name, var, help);
    bind(app, name, opt, [&var](const Json& j) { var = j.get<T>(); });
    return opt;
  }

  template <class T>
  CLI::Option* add(CLI::App* app, const std::string& name, std::optional<T>& var, const std::string& help) {
    CLI::Option* opt = app->add_option("--" + name, var, help);
    bind(app, name, opt, [&var](const Json& j) { var = j.get<T>(); });
    return opt;
  }

  CLI::Option* flag(CLI::App* app, const std::string& name, bool& var, const std::string& help) {
    CLI::Option* opt = app->add_flag("--" + name, var, help);
    bind(app, name, opt, [&var](const Json& j) { var = j.get<bool>(); });
    return opt;
  }

  void bind(CLI::App* app, const std::string& name, CLI::Option* opt, std::function<void(const Json&)> set) {
    bindings_[app][name] = {opt, std::move(set)};
  }

  void apply(CLI::App* app, const Json& scenario) const {
    if (!scenario.is_object()) throw ValidationError("scenario must be a JSON object");
    const auto found = bindings_.find(app);
    for (const auto& [raw_key, value] : scenario.items()) {
      std::string key = raw_key;
      for (char& c : key) c = c == '_' ? '-' : c;
      if (key == "subcommand") continue;
      if (found == bindings_.end() || !found->second.contains(key)) {
        throw ValidationError("scenario key '" + raw_key + "' is not an option of " + app->get_name());
      }
      const auto& [opt, set] = found->second.at(key);
      if (opt->count() > 0) continue;
      try {
        set(value);
      } catch (const nlohmann::json::exception& e) {
        throw ValidationError("scenario key '" + raw_key + "': " + e.what());
      }
    }
  }

 private:
  std::map<CLI::App*, std::map<std::string, std::pair<CLI::Option*, std::function<void(const Json&)>>>> bindings_;
};

NormSpec random_norm(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (unit(rng) < 0.5) {
    const double pi = std::acos(-1.0);
    const double l1 = 0.5 + 1.5 * unit(rng);
    const double l2 = 0.5 + 1.5 * unit(rng);
    const double t = pi * unit(rng);
    const double c = std::cos(t);
    const double s = std::sin(t);
    return NormSpec(Ellipse{l1 * c * c + l2 * s * s, (l1 - l2) * c * s, l1 * s * s + l2 * c * c});
  }
  static constexpr double kExponents[] = {1.5, 2.0, 3.0, 4.0};
  return NormSpec(PNorm{kExponents[static_cast<std::size_t>(unit(rng) * 4.0) % 4]});
}

NormSpec resolve_norm(const Params& p) {
  if (p.norm.is_string() && p.norm.get<std::string>() == "random") return random_norm(p.seed);
  return norm_from_json(p.norm);
}

IntegralClass parse_class(const std::string& text) {
  const auto comma = text.find(',');
  try {
    if (comma != std::string::npos) {
      std::size_t used_a = 0;
      std::size_t used_b = 0;
      const std::string a = text.substr(0, comma);
      const std::string b = text.substr(comma + 1);
      const long long x = std::stoll(a, &used_a);
      const long long y = std::stoll(b, &used_b);
      if (used_a == a.size() && used_b == b.size()) return {x, y};
    }
  } catch (const std::exception&) {
  }
  throw ValidationError("class must be written a,b; got '" + text + "'");
}

std::string cell(double x) { return format_double(x); }
std::string cell(std::int64_t x) { return std::to_string(x); }
std::string cell(std::size_t x) { return std::to_string(x); }
std::string cell(bool x) { return x ? "true" : "false"; }

Output norm_enumerate(const Params& p) {
  const NormSpec norm = resolve_norm(p);
  const ClassEnumeration e = enumerate_classes(norm, p.count, p.tolerance.value_or(1e-9));
  Output o;
  o.json["norm"] = to_json(norm);
  o.json["count"] = p.count;
  o.json.update(to_json(e));
  o.csv.header = {"a", "b", "length"};
  for (const auto& c : e.entries) o.csv.rows.push_back({cell(c.cls.a), cell(c.cls.b), cell(c.length)});
  return o;
}

PinnedGraph pinned_graph(const NormSpec& norm, const Params& p) {
  return p.primitive ? graph_from_norm_primitive(norm, p.k) : graph_from_norm(norm, p.k);
}

Output graph_build(const Params& p) {
  const NormSpec norm = resolve_norm(p);
  const PinnedGraph pg = pinned_graph(norm, p);
  Output o;
  o.json["norm"] = to_json(norm);
  o.json["k"] = p.k;
  o.json["ell_k"] = pg.ell_k;
  o.json["graph"] = to_json(pg.graph);
  o.csv.header = {"tail", "head", "class_a", "class_b", "q", "length", "period_x", "period_y"};
  for (const auto& e : pg.graph.edges()) {
    const IntegralClass h = pg.graph.classes()[e.class_index].h;
    o.csv.rows.push_back({cell(e.tail), cell(e.head), cell(h.a), cell(h.b), e.q.to_string(), cell(e.length),
                          cell(e.period.x), cell(e.period.y)});
  }
  return o;
}

EpsilonOptions epsilon_options(const Params& p) {
  EpsilonOptions options;
  if (p.node_budget > 0) options.node_budget = p.node_budget;
  return options;
}

Output graph_epsilon(const Params& p) {
  const NormSpec norm = resolve_norm(p);
  const PinnedGraph pg = pinned_graph(norm, p);
  const EpsilonResult r = compute_zeta_epsilon_theta(pg.graph, norm, pg.ell_k, epsilon_options(p));
  Output o;
  o.json["norm"] = to_json(norm);
  o.json["k"] = p.k;
  o.json["ell_k"] = pg.ell_k;
  o.json.update(to_json(pg.graph, r));
  o.csv.header = {"k", "ell_k", "zeta", "edge_bound", "epsilon", "theta", "closing_states"};
  o.csv.rows.push_back({cell(p.k), cell(pg.ell_k), cell(r.zeta), cell(r.edge_bound), cell(r.epsilon), cell(r.theta),
                        cell(r.closing_states)});
  return o;
}

CanyonSetup canyon_for(const NormSpec& norm, const Params& p) {
  CanyonRequest request;
  request.k = p.k;
  request.primitive_count = p.primitive;
  request.resolution = p.resolution;
  request.background = p.background;
  request.epsilon = epsilon_options(p);
  return build_canyon(norm, request);
}

// JSON has no infinity; match the "inf" convention of the serializers.
Json finite_or_text(double x) { return std::isfinite(x) ? Json(x) : Json(x > 0 ? "inf" : "-inf"); }

Output canyon_spectrum(const Params& p) {
  const NormSpec norm = resolve_norm(p);
  const double tolerance = p.tolerance.value_or(1e-6);
  Output o;
  o.json["norm"] = to_json(norm);
  o.json["k"] = p.k;
  Spectrum s;
  if (p.graph_level) {
    const PinnedGraph pg = pinned_graph(norm, p);
    const EpsilonResult eps = compute_zeta_epsilon_theta(pg.graph, norm, pg.ell_k, epsilon_options(p));
    const double bound = p.bound.value_or(1.25 * pg.ell_k);
    const auto lengths = graph_spectrum(pg.graph, bound);
    for (const auto& c : lengths) s.entries.push_back({c.cls, c.length, {}});
    s.groups = group_lengths(lengths, tolerance);
    s.tolerance = tolerance;
    o.json["level"] = "graph";
    o.json["ell_k"] = pg.ell_k;
    o.json["epsilon"] = finite_or_text(eps.epsilon);
    o.json["theta"] = eps.theta;
    o.json["bound"] = bound;
  } else {
    const CanyonSetup setup = canyon_for(norm, p);
    const double bound = p.bound.value_or(1.25 * setup.pinned.ell_k);
    s = spectrum(setup.canyon.graph, bound, std::nullopt, tolerance, p.witnesses);
    o.json["level"] = "canyon";
    o.json["ell_k"] = setup.pinned.ell_k;
    o.json["epsilon"] = finite_or_text(setup.epsilon.epsilon);
    o.json["theta"] = setup.epsilon.theta;
    o.json["bound"] = bound;
    o.json["resolution"] = p.resolution;
    o.json["background"] = p.background.value_or(setup.pinned.ell_k);
    o.json["savings"] = setup.canyon.savings;
    o.json["nodes"] = setup.canyon.graph.node_count();
  }
  o.json["spectrum"] = to_json(s, p.witnesses);
  o.csv.header = {"a", "b", "length", "multiplicity_group_id"};
  std::map<IntegralClass, std::size_t> group_of;
  for (std::size_t g = 0; g < s.groups.size(); ++g) {
    for (const auto h : s.groups[g].classes) group_of[h] = g;
  }
  for (const auto& e : s.entries) {
    o.csv.rows.push_back({cell(e.cls.a), cell(e.cls.b), cell(e.length), cell(group_of.at(e.cls))});
  }
  return o;
}

Output stable_norm(const Params& p) {
  const NormSpec norm = resolve_norm(p);
  const CanyonSetup setup = canyon_for(norm, p);
  std::vector<IntegralClass> classes;
  for (const auto& text : p.classes) classes.push_back(parse_class(text));
  if (classes.empty()) {
    for (const auto& c : setup.pinned.graph.classes()) classes.push_back(c.h);
  }
  Output o;
  o.json["norm"] = to_json(norm);
  o.json["k"] = p.k;
  o.json["resolution"] = p.resolution;
  o.json["n_max"] = p.n_max;
  Json rows = Json::array();
  o.csv.header = {"a", "b", "norm", "estimate", "minimum_at", "stable"};
  for (const IntegralClass h : classes) {
    const StableNormEstimate e = stable_norm_estimate(setup.canyon.graph, h, p.n_max);
    rows.push_back({{"class", to_json(h)},
                    {"norm", norm(h)},
                    {"estimate", e.estimate},
                    {"sequence", e.sequence},
                    {"minimum_at", e.minimum_at},
                    {"stable", e.stable}});
    o.csv.rows.push_back({cell(h.a), cell(h.b), cell(norm(h)), cell(e.estimate), cell(e.minimum_at), cell(e.stable)});
  }
  o.json["classes"] = rows;
  return o;
}

PolygonSearchOptions polygon_options(const Params& p) {
  PolygonSearchOptions options;
  if (p.node_budget > 0) options.node_budget = p.node_budget;
  options.coordinate_bound = p.coordinate_bound;
  options.certify = !p.no_certify;
  return options;
}

Output polygon_min_area(const Params& p) {
  const MinAreaResult r = min_area_convex_kgon(static_cast<int>(p.k), polygon_options(p));
  Output o;
  o.json = to_json(r);
  const std::int64_t interior = i_of_k(r);
  o.csv.header = {"k", "A_num", "A_den", "i", "certified"};
  o.csv.rows.push_back({cell(static_cast<std::int64_t>(r.k)), cell(r.area.num()), cell(r.area.den()), cell(interior),
                        cell(r.certified)});
  return o;
}

Output polygon_symm(const Params& p) {
  const SymmetricResult r = min_interior_symmetric(p.two_m, polygon_options(p));
  Output o;
  o.json = to_json(r);
  o.json["f"] = (r.interior + 1) / 2;
  o.csv.header = {"two_m", "interior", "f", "certified"};
  o.csv.rows.push_back({cell(static_cast<std::int64_t>(r.two_m)), cell(r.interior), cell((r.interior + 1) / 2),
                        cell(r.certified)});
  return o;
}

CsvTable profile_csv(const MultiplicityProfile& profile) {
  CsvTable t;
  t.header = {"group_id", "length", "m", "n", "a", "b"};
  for (std::size_t g = 0; g < profile.groups.size(); ++g) {
    const auto& grp = profile.groups[g];
    for (const auto h : grp.classes) {
      t.rows.push_back({cell(g), cell(grp.length), cell(grp.m), cell(grp.n), cell(h.a), cell(h.b)});
    }
  }
  return t;
}

Output multiplicity(const Params& p) {
  const NormSpec norm = resolve_norm(p);
  const MultiplicityProfile profile = multiplicity_profile(norm, p.budget, p.tolerance.value_or(1e-9));
  Output o;
  o.json["norm"] = to_json(norm);
  o.json["budget"] = p.budget;
  o.json.update(to_json(profile));
  o.csv = profile_csv(profile);
  return o;
}

Output sharpness(const Params& p) {
  const SharpnessReport r = verify_sharpness(p.m, p.level);
  Output o;
  o.json["norm"] = to_json(construct_sharp_norm(p.m, p.level));
  o.json["level"] = p.level;
  o.json.update(to_json(r));
  o.csv.header = {"m", "f", "pass", "group_m", "group_n", "boundary_points"};
  o.csv.rows.push_back({cell(static_cast<std::int64_t>(r.m)), cell(r.f), cell(r.pass),
                        r.group ? cell(r.group->m) : "", r.group ? cell(r.group->n) : "", cell(r.boundary_points)});
  return o;
}

Output convergence(const Params& p) {
  const NormSpec norm = resolve_norm(p);
  const ConvergenceResult r = convergence_experiment(norm, p.k_min, p.k_max, p.resolution, p.directions, p.n_max);
  Output o;
  o.json["norm"] = to_json(norm);
  o.json["resolution"] = p.resolution;
  o.json["directions"] = p.directions;
  o.json["n_max"] = p.n_max;
  Json levels = Json::array();
  o.csv.header = {"k", "sup_deviation", "pinned_deviation"};
  for (const auto& l : r.levels) {
    Json pinned = Json::array();
    for (const auto h : l.pinned) pinned.push_back(to_json(h));
    levels.push_back({{"k", l.k},
                      {"pinned", pinned},
                      {"sup_deviation", l.sup_deviation},
                      {"pinned_deviation", l.pinned_deviation}});
    o.csv.rows.push_back({cell(l.k), cell(l.sup_deviation), cell(l.pinned_deviation)});
  }
  o.json["levels"] = levels;
  o.json["nonincreasing"] = r.nonincreasing;
  o.json["lipschitz_constant"] = r.lipschitz_constant;
  o.json["lipschitz_ok"] = r.lipschitz_ok;
  o.json["lipschitz_from_k"] = r.lipschitz_from_k ? Json(*r.lipschitz_from_k) : Json(nullptr);
  if (r.lipschitz_witness) {
    const auto& w = *r.lipschitz_witness;
    o.json["lipschitz_witness"] = {{"k", r.levels[w.index].k},
                                   {"x", {w.x.x, w.x.y}},
                                   {"y", {w.y.x, w.y.y}},
                                   {"excess", w.excess}};
  }
  return o;
}

Json error_json(const std::string& kind, const std::string& message) {
  return {{"error", kind}, {"message", message}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stable norms, minimum length spectra and lattice polygon multiplicities"};
  app.require_subcommand(1);
  Params p;
  ScenarioBinder binder;

  struct Command {
    CLI::App* app;
    std::function<Output(const Params&)> run;
  };
  std::vector<Command> commands;
  const auto command = [&](const std::string& name, const std::string& help, std::function<Output(const Params&)> run) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--format", p.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", p.out, "write the result to this file instead of stdout");
    sub->add_option("--scenario", p.scenario, "JSON file whose keys supply option values");
    binder.add(sub, "seed", p.seed, "seed for --norm random");
    commands.push_back({sub, std::move(run)});
    return sub;
  };
  const auto norm_option = [&](CLI::App* sub) {
    CLI::Option* opt = sub->add_option_function<std::string>(
        "--norm", [&p](const std::string& text) { p.norm = text; },
        "euclidean, hexagonal, ellipse:q11,q12,q22, pnorm:p or random");
    binder.bind(sub, "norm", opt, [&p](const Json& j) { p.norm = j; });
  };
  const auto k_option = [&](CLI::App* sub) {
    binder.add(sub, "k", p.k, "number of pinned entries (trivial class included)");
    binder.flag(sub, "primitive", p.primitive, "k counts nontrivial primitive classes instead");
  };
  const auto canyon_options = [&](CLI::App* sub) {
    binder.add(sub, "resolution", p.resolution, "background grid size N");
    binder.add(sub, "background", p.background, "background systole B (default ell_k)");
    binder.add(sub, "node-budget", p.node_budget, "cycle enumeration budget");
  };
  const auto polygon_budget = [&](CLI::App* sub) {
    binder.add(sub, "node-budget", p.node_budget, "search node budget");
    binder.add(sub, "coordinate-bound", p.coordinate_bound, "edge coordinate bound");
    binder.flag(sub, "no-certify", p.no_certify, "skip the exhaustive certification search");
  };

  {
    CLI::App* sub = command("norm-enumerate", "classes ordered by norm", norm_enumerate);
    norm_option(sub);
    binder.add(sub, "count", p.count, "number of classes, trivial class included");
    binder.add(sub, "tolerance", p.tolerance, "relative tie tolerance");
  }
  {
    CLI::App* sub = command("graph-build", "geodesic graph on the torus", graph_build);
    norm_option(sub);
    k_option(sub);
  }
  {
    CLI::App* sub = command("graph-epsilon", "zeta, epsilon and Theta of the geodesic graph", graph_epsilon);
    norm_option(sub);
    k_option(sub);
    binder.add(sub, "node-budget", p.node_budget, "cycle enumeration budget");
  }
  {
    CLI::App* sub = command("canyon-spectrum", "minimum marked length spectrum of a canyon graph", canyon_spectrum);
    norm_option(sub);
    k_option(sub);
    canyon_options(sub);
    binder.add(sub, "bound", p.bound, "length bound (default 1.25 ell_k)");
    binder.add(sub, "tolerance", p.tolerance, "relative grouping tolerance");
    binder.flag(sub, "witnesses", p.witnesses, "include witness node sequences");
    binder.flag(sub, "graph-level", p.graph_level, "spectrum of the geodesic graph itself");
  }
  {
    CLI::App* sub = command("stable-norm", "stable norm estimates on a canyon graph", stable_norm);
    norm_option(sub);
    k_option(sub);
    canyon_options(sub);
    binder.add(sub, "n-max", p.n_max, "largest multiple n in f(n h)/n");
    binder.add(sub, "class", p.classes, "class a,b (repeatable; default the pinned classes)");
  }
  {
    CLI::App* sub = command("polygon-min-area", "minimal area convex lattice k-gon", polygon_min_area);
    binder.add(sub, "k", p.k, "number of vertices");
    polygon_budget(sub);
  }
  {
    CLI::App* sub = command("polygon-symm", "minimal interior origin-symmetric 2m-gon", polygon_symm);
    binder.add(sub, "two-m", p.two_m, "number of vertices (even)");
    polygon_budget(sub);
  }
  {
    CLI::App* sub = command("multiplicity", "multiplicity profile of a norm", multiplicity);
    norm_option(sub);
    binder.add(sub, "budget", p.budget, "number of classes, trivial class included");
    binder.add(sub, "tolerance", p.tolerance, "relative tie tolerance");
  }
  {
    CLI::App* sub = command("sharpness", "norm attaining n = f(m) and its verification", sharpness);
    binder.add(sub, "m", p.m, "multiplicity");
    binder.add(sub, "level", p.level, "norm level of the polygon vertices");
  }
  {
    CLI::App* sub = command("convergence", "canyon stable norms against the target norm", convergence);
    norm_option(sub);
    binder.add(sub, "k-min", p.k_min, "fewest pinned primitive classes");
    binder.add(sub, "k-max", p.k_max, "most pinned primitive classes");
    binder.add(sub, "resolution", p.resolution, "background grid size N");
    binder.add(sub, "directions", p.directions, "unit directions sampled");
    binder.add(sub, "n-max", p.n_max, "largest multiple n in f(n h)/n");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    // Subcommand help requests arrive here too.
    if (e.get_exit_code() == 0) {
      for (const auto& c : commands) {
        if (c.app->parsed()) {
          out << c.app->help();
          return kExitOk;
        }
      }
      out << app.help();
      return kExitOk;
    }
    err << error_json("usage", e.what()).dump() << '\n';
    return kExitValidation;
  } catch (const ValidationError& e) {
    err << error_json("validation", e.what()).dump() << '\n';
    return kExitValidation;
  }

  try {
    for (const auto& c : commands) {
      if (!c.app->parsed()) continue;
      if (!p.scenario.empty()) {
        std::ifstream in(p.scenario);
        if (!in) throw ValidationError("cannot read scenario file '" + p.scenario + "'");
        Json scenario;
        try {
          scenario = Json::parse(in);
        } catch (const nlohmann::json::exception& e) {
          throw ValidationError(std::string("scenario is not valid JSON: ") + e.what());
        }
        binder.apply(c.app, scenario);
      }
      const Output result = c.run(p);
      std::ostringstream text;
      if (p.format == "csv") {
        result.csv.write(text);
      } else {
        text << result.json.dump() << '\n';
      }
      if (p.out.empty()) {
        out << text.str();
      } else {
        std::ofstream file(p.out, std::ios::binary);
        if (!file) throw ValidationError("cannot write '" + p.out + "'");
        file << text.str();
      }
      return kExitOk;
    }
    throw ValidationError("no subcommand given");
  } catch (const WindowError& e) {
    Json j = error_json("validation", e.what());
    j["required_window"] = e.required();
    err << j.dump() << '\n';
    return kExitValidation;
  } catch (const ValidationError& e) {
    err << error_json("validation", e.what()).dump() << '\n';
    return kExitValidation;
  } catch (const SearchLimitError& e) {
    Json j = error_json("search_limit", e.what());
    j["best_so_far"] = e.best_so_far();
    err << j.dump() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    err << error_json("internal", e.what()).dump() << '\n';
    return 1;
  }
}

}  // namespace snl
