#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "catfield/catfield.hpp"

namespace {

using catfield::io::Json;
namespace cf = catfield;

struct RunConfig {
  std::uint64_t seed = 0;
  std::optional<double> tolerance;
  std::string output;
  std::string format;  // empty: human summary on stdout
};

double effective_tolerance(const RunConfig& cfg) {
  if (cfg.tolerance) return *cfg.tolerance;
  if (const char* env = std::getenv("CATFIELD_TOLERANCE")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0) return v;
    cf::fail("cli.BadTolerance", std::string("CATFIELD_TOLERANCE='") + env + "' is not a positive number");
  }
  return cf::kDefaultTolerance;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

/// A command's result: the machine report and the text summary.
struct Outcome {
  Json report;
  std::string summary;
  std::vector<std::vector<std::string>> table;  // CSV rows (header first); empty: key,value rows
  bool ok = true;
};

std::string to_csv(const Outcome& o) {
  std::ostringstream out;
  if (!o.table.empty()) {
    for (const auto& row : o.table) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(row[i]);
      out << "\n";
    }
    return out.str();
  }
  out << "key,value\n";
  for (const auto& [k, v] : o.report.items()) {
    out << csv_escape(k) << "," << csv_escape(v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
  return out.str();
}

void emit(const RunConfig& cfg, const Outcome& o, const std::string& default_format = "json") {
  const std::string format = cfg.format.empty() ? default_format : cfg.format;
  const std::string body = format == "csv" ? to_csv(o) : o.report.dump(2) + "\n";
  if (!cfg.output.empty()) {
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) cf::fail("cli.OutputError", "cannot write '" + cfg.output + "'");
    out << body;
    std::cout << o.summary;
  } else if (!cfg.format.empty()) {
    std::cout << body;
  } else {
    std::cout << o.summary;
  }
}

std::vector<std::string> split_objects(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& item : raw) {
    std::string cur;
    for (char c : item) {
      if (c == ';' || c == ' ') {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

Json object_list(const cf::FinCategory& cat, const std::vector<bool>& mask) {
  Json out = Json::array();
  for (cf::Index o = 0; o < mask.size(); ++o) {
    if (mask[o]) out.push_back(cat.object_id(o));
  }
  return out;
}

cf::RegionReading reading_of(const std::string& s) {
  if (s == "convexity") return cf::RegionReading::CausalConvexity;
  if (s == "identity") return cf::RegionReading::OutsideIdentity;
  cf::fail("cli.Usage", "--reading must be 'convexity' or 'identity'");
}

// --- commands ---------------------------------------------------------------------

Outcome cmd_validate(const std::string& path) {
  const auto loaded = cf::io::load_category(path);
  const cf::FinCategory& cat = *loaded.category;
  Outcome o;
  o.report["command"] = "validate";
  o.report["category"] = cat.name();
  o.report["objects"] = cat.object_count();
  o.report["arrows"] = cat.arrow_count();
  o.report["axioms"] = "OK";
  std::ostringstream s;
  s << cat.object_count() << " objects, " << cat.arrow_count() << " arrows, category axioms OK";
  if (loaded.causal) {
    const auto cc = loaded.causal_category();
    o.report["causal_arrows"] = loaded.causal->size();
    s << ", causal structure OK";
  }
  if (loaded.involution) {
    const auto& inv = *loaded.involution;
    o.report["involution"] = {{"carrier_arrows", inv.carrier_arrows().size()},
                              {"dagger", inv.is_dagger()},
                              {"whole_category", inv.carrier_is_whole()}};
    s << ", involution OK" << (inv.is_dagger() ? " (dagger)" : "");
  }
  s << "\n";
  o.summary = s.str();
  return o;
}

Outcome cmd_mul(const std::string& a_path, const std::string& b_path) {
  const auto a = cf::io::load_element(a_path);
  const auto b = cf::io::load_element(b_path);
  if (a.rig.name != b.rig.name) cf::fail("algebra.MismatchedRig", a.rig.name + " vs " + b.rig.name);
  if (!a.category.category->same_structure(*b.category.category)) {
    cf::fail("algebra.MismatchedCategory", "the two elements live on different categories");
  }
  // Re-read b's weights on a's category object so both share one instance.
  const Json bj = cf::io::read_json(b_path);
  const cf::io::AnyElement b_on_a = cf::io::element_on(a.category.category, a.rig, bj.at("weights"));
  const cf::io::AnyElement product = std::visit(
      [&](const auto& x) -> cf::io::AnyElement {
        using E = std::decay_t<decltype(x)>;
        return cf::convolve(x, std::get<E>(b_on_a));
      },
      a.element);
  Outcome o;
  o.report = cf::io::element_to_json(product);
  o.report["support"] = o.report["weights"].size();
  o.summary = o.report.dump(2) + "\n";
  o.table.push_back({"arrow", "value"});
  for (const auto& [k, v] : o.report["weights"].items()) o.table.push_back({k, v.dump()});
  return o;
}

Outcome cmd_center(const std::string& path, double tol) {
  const auto loaded = cf::io::load_category(path);
  const auto basis = cf::center_basis(loaded.category, nullptr, tol);
  const cf::FinCategory& cat = *loaded.category;
  Outcome o;
  o.report["command"] = "center";
  o.report["category"] = cat.name();
  o.report["dimension"] = basis.size();
  Json elems = Json::array();
  o.table.push_back({"basis", "arrow", "re", "im"});
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Json w = Json::object();
    for (cf::Index a : basis[i].support()) {
      w[cat.arrow_id(a)] = cf::io::complex_to_json(basis[i].weight(a));
      o.table.push_back({std::to_string(i), cat.arrow_id(a), fmt(basis[i].weight(a).real()),
                         fmt(basis[i].weight(a).imag())});
    }
    elems.push_back(std::move(w));
  }
  o.report["basis"] = std::move(elems);
  o.summary = "center of " + cat.name() + " has dimension " + std::to_string(basis.size()) + "\n";
  return o;
}

Outcome cmd_relevant(const std::string& path, const std::vector<std::string>& objects) {
  const auto loaded = cf::io::load_category(path);
  const auto cc = loaded.causal_category();
  const cf::FinCategory& cat = cc.cat();
  const auto mask = cf::object_set(cat, split_objects(objects));
  const auto sel = cf::relevant_category(cc, mask);
  const auto check = cf::check_structure(cc, sel);
  Outcome o;
  o.report["command"] = "relevant";
  o.report["category"] = cat.name();
  o.report["objects"] = object_list(cat, mask);
  o.report["is_region"] = cf::is_region(cc, mask);
  Json arrows = Json::array();
  o.table.push_back({"arrow", "dom", "cod", "form", "out", "inner", "in"});
  auto name = [&](cf::Index a) { return a == cf::kNone ? std::string() : cat.arrow_id(a); };
  for (cf::Index a : sel.relevant_arrows()) {
    Json e{{"arrow", cat.arrow_id(a)}, {"form", cf::form_name(*sel.form[a])}};
    std::vector<std::string> row{cat.arrow_id(a), cat.object_id(cat.dom(a)), cat.object_id(cat.cod(a)),
                                 cf::form_name(*sel.form[a])};
    if (sel.witness[a]) {
      const auto& w = *sel.witness[a];
      Json wj = Json::object();
      if (w.out != cf::kNone) wj["out"] = name(w.out);
      wj["inner"] = name(w.inner);
      if (w.in != cf::kNone) wj["in"] = name(w.in);
      e["witness"] = std::move(wj);
      row.insert(row.end(), {name(w.out), name(w.inner), name(w.in)});
    } else {
      row.insert(row.end(), {"", "", ""});
    }
    arrows.push_back(std::move(e));
    o.table.push_back(std::move(row));
  }
  o.report["relevant_arrows"] = std::move(arrows);
  o.report["structure_theorem"] = check.ok() ? "PASS" : "FAIL";
  o.ok = check.ok();
  std::ostringstream s;
  s << sel.relevant_arrows().size() << " relevant arrows, classification "
    << (check.ok() ? "total and consistent" : "FAILED: " + check.first_problem) << "\n";
  o.summary = s.str();
  return o;
}

Outcome cmd_local(const std::string& path, const std::vector<std::string>& objects, bool involution,
                  const std::string& rig_name, const std::string& reading) {
  const auto loaded = cf::io::load_category(path);
  const auto cc = loaded.causal_category();
  const cf::FinCategory& cat = cc.cat();
  const auto mask = cf::object_set(cat, split_objects(objects));
  const auto basis = cf::local_algebra(cc, mask, cf::rig_instance(rig_name), involution, reading_of(reading));
  Outcome o;
  o.report["command"] = "local-algebra";
  o.report["category"] = cat.name();
  o.report["objects"] = object_list(cat, mask);
  o.report["rig"] = basis.rig.name;
  o.report["with_involution"] = involution;
  Json main = Json::array();
  for (cf::Index a : basis.span_main) main.push_back(cat.arrow_id(a));
  o.report["span_main"] = std::move(main);
  if (basis.central_is_unit_multiples) {
    o.report["span_central"] = "center of the rig times unit";
  } else {
    Json central = Json::array();
    for (const auto& d : basis.span_central) {
      Json w = Json::object();
      for (cf::Index a : d.support()) w[cat.arrow_id(a)] = cf::io::complex_to_json(d.weight(a));
      central.push_back(std::move(w));
    }
    o.report["span_central"] = std::move(central);
  }
  o.report["closed_under_convolution"] = true;
  o.table.push_back({"part", "arrow"});
  for (cf::Index a : basis.span_main) o.table.push_back({"main", cat.arrow_id(a)});
  std::ostringstream s;
  s << "local algebra: " << basis.span_main.size() << " indeterminates, central part of dimension "
    << (basis.central_is_unit_multiples ? std::string("Z(R)") : std::to_string(basis.span_central.size())) << "\n";
  o.summary = s.str();
  return o;
}

Outcome theorem_outcome(const std::string& command, const cf::CausalCategory& cc, const cf::TheoremOptions& opt) {
  const auto rows = cf::theorem_suite(cc, opt);
  Outcome o;
  o.report["command"] = command;
  o.report["category"] = cc.cat().name();
  o.report["seed"] = opt.seed;
  Json table = Json::array();
  o.table.push_back({"theorem", "result", "cases", "failures", "detail"});
  std::ostringstream s;
  for (const auto& r : rows) {
    table.push_back({{"theorem", r.name},
                     {"result", r.pass ? "PASS" : "FAIL"},
                     {"cases", r.cases},
                     {"failures", r.failures},
                     {"detail", r.detail}});
    o.table.push_back({r.name, r.pass ? "PASS" : "FAIL", std::to_string(r.cases), std::to_string(r.failures), r.detail});
    s << (r.pass ? "PASS  " : "FAIL  ") << r.name << " (" << r.cases << " cases)";
    if (!r.detail.empty()) s << "  " << r.detail;
    s << "\n";
    o.ok = o.ok && r.pass;
  }
  o.report["theorems"] = std::move(table);
  o.summary = s.str();
  return o;
}

Outcome cmd_state_check(const std::string& path, std::size_t trials, const RunConfig& cfg, double tol) {
  std::optional<double> override_tol;
  if (cfg.tolerance || std::getenv("CATFIELD_TOLERANCE")) override_tol = tol;
  const auto loaded = cf::io::state_from_json(cf::io::read_json(path), std::filesystem::path(path).parent_path(),
                                              std::nullopt, override_tol);
  const cf::State& s = loaded.state;
  const cf::FinCategory& cat = *s.category();
  const auto probe = cf::positivity_probe(s, trials, cfg.seed);
  Outcome o;
  o.report["command"] = "state check";
  o.report["category"] = cat.name();
  o.report["valid"] = true;
  o.report["normalization"] = cf::io::complex_to_json(s.normalization());
  o.report["borderline"] = s.borderline();
  Json blocks = Json::array();
  o.table.push_back({"object", "min_eigenvalue", "norm"});
  for (const auto& c : s.certificates()) {
    blocks.push_back({{"object", cat.object_id(c.object)}, {"min_eigenvalue", c.min_eigenvalue}, {"norm", c.norm}});
    o.table.push_back({cat.object_id(c.object), fmt(c.min_eigenvalue), fmt(c.norm)});
  }
  o.report["blocks"] = std::move(blocks);
  o.report["probe"] = {{"trials", probe.trials}, {"min_real", probe.min_real}, {"max_imag", probe.max_imag}};
  o.report["support_objects"] = cf::support_subcategory(s)->object_count();
  std::ostringstream out;
  out << "valid state on " << cat.name() << ", smallest block eigenvalue " << s.min_block_eigenvalue()
      << (s.borderline() ? " (borderline)" : "") << ", probe minimum " << probe.min_real << "\n";
  o.summary = out.str();
  return o;
}

Outcome cmd_gns(const std::string& cat_path, const std::string& state_path, bool with_rep, double tol,
                const RunConfig& cfg) {
  const auto cat = cf::io::load_category(cat_path);
  std::optional<double> override_tol;
  if (cfg.tolerance || std::getenv("CATFIELD_TOLERANCE")) override_tol = tol;
  const auto loaded = cf::io::state_from_json(cf::io::read_json(state_path),
                                              std::filesystem::path(state_path).parent_path(), cat, override_tol);
  const cf::GnsSpace g = cf::gns_construct(loaded.state, tol);
  const cf::FinCategory& c = *g.category;
  Outcome o;
  o.report["command"] = "gns";
  o.report["category"] = c.name();
  o.report["dimension"] = g.dimension;
  Json spectrum = Json::array();
  for (Eigen::Index i = 0; i < g.spectrum.size(); ++i) spectrum.push_back(g.spectrum(i));
  o.report["gram_spectrum"] = std::move(spectrum);
  Json vac = Json::array();
  for (Eigen::Index i = 0; i < g.vacuum.size(); ++i) vac.push_back(cf::io::complex_to_json(g.vacuum(i)));
  o.report["vacuum"] = std::move(vac);
  o.report["cliff_ratio"] = std::isinf(g.cliff_ratio) ? Json("inf") : Json(g.cliff_ratio);
  if (with_rep) {
    Json rep = Json::object();
    for (cf::Index a = 0; a < c.arrow_count(); ++a) rep[c.arrow_id(a)] = cf::io::matrix_to_json(g.rep[a]);
    o.report["representation"] = std::move(rep);
  }
  o.table.push_back({"index", "gram_eigenvalue"});
  for (Eigen::Index i = 0; i < g.spectrum.size(); ++i) o.table.push_back({std::to_string(i), fmt(g.spectrum(i))});
  o.summary = "GNS space of dimension " + std::to_string(g.dimension) + "\n";
  return o;
}

Outcome cmd_walk(const std::string& path, std::optional<std::size_t> steps) {
  cf::WalkConfig cfg = cf::io::walk_from_json(cf::io::read_json(path));
  if (steps) cfg.horizon = *steps;
  const cf::Trajectory traj = cf::walk_evolve(cfg);
  Outcome o;
  o.report["command"] = "walk";
  o.report["steps"] = cfg.horizon;
  Json rows = Json::array();
  o.table.push_back({"t", "observable", "value_re", "value_im"});
  for (const auto& r : traj.rows) {
    rows.push_back({{"t", r.t}, {"observable", r.observable}, {"value", cf::io::complex_to_json(r.value)}});
    o.table.push_back({std::to_string(r.t), r.observable, fmt(r.value.real()), fmt(r.value.imag())});
  }
  o.report["trajectory"] = std::move(rows);
  o.summary = to_csv(o);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"catfield: category algebras over rigs, states, GNS and quantum walks"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  double tol_flag = 0.0;
  app.add_option("--seed", cfg.seed, "seed for every random choice")->default_val(0);
  auto* tol_opt = app.add_option("--tolerance", tol_flag, "relative tolerance (default 1e-9, env CATFIELD_TOLERANCE)")
                      ->check(CLI::PositiveNumber);
  app.add_option("--output", cfg.output, "write the report to this file");
  app.add_option("--format", cfg.format, "report format")->check(CLI::IsMember({"json", "csv"}));

  std::string path, path2;
  std::vector<std::string> objects;
  bool involution = false;
  bool with_rep = false;
  std::string rig_name = "complex";
  std::string reading = "convexity";
  std::size_t trials = 500;
  std::optional<std::size_t> steps;
  std::size_t demo_t = 3, demo_x = 3;
  std::string flavor = "indiscrete";
  cf::TheoremOptions theorem_opts;

  auto* validate = app.add_subcommand("validate", "validate a category file");
  validate->add_option("category", path, "category JSON")->required();

  auto* algebra = app.add_subcommand("algebra", "category algebra arithmetic");
  algebra->require_subcommand(1);
  auto* mul = algebra->add_subcommand("mul", "product a * b of two elements");
  mul->add_option("a", path, "element JSON")->required();
  mul->add_option("b", path2, "element JSON")->required();

  auto* center = app.add_subcommand("center", "basis of the center of the complex category algebra");
  center->add_option("category", path, "category JSON")->required();

  auto* relevant = app.add_subcommand("relevant", "relevant category of an object set");
  relevant->add_option("category", path, "category JSON")->required();
  relevant->add_option("--objects", objects, "object ids, repeatable or ';'-separated")->required();

  auto* local = app.add_subcommand("local-algebra", "local algebra of a region");
  local->add_option("category", path, "category JSON")->required();
  local->add_option("--objects", objects, "object ids, repeatable or ';'-separated")->required();
  local->add_flag("--involution", involution, "use the involutive relevant category");
  local->add_option("--rig", rig_name, "rig name");
  local->add_option("--reading", reading, "region reading")->check(CLI::IsMember({"convexity", "identity"}));

  auto* theorems = app.add_subcommand("check-theorems", "Structure, Nonexistence and Commutativity checks");
  theorems->add_option("category", path, "category JSON")->required();
  theorems->add_option("--subsets", theorem_opts.subsets, "random subsets for the structure check");
  theorems->add_option("--pairs", theorem_opts.region_pairs, "spacelike region pairs");
  theorems->add_option("--elements", theorem_opts.element_pairs, "random element pairs per region pair");

  auto* state = app.add_subcommand("state", "states on categories");
  state->require_subcommand(1);
  auto* state_check = state->add_subcommand("check", "validate a state and probe positivity");
  state_check->add_option("state", path, "state JSON")->required();
  state_check->add_option("--trials", trials, "positivity probe trials");

  auto* gns = app.add_subcommand("gns", "GNS construction");
  gns->add_option("category", path, "category JSON")->required();
  gns->add_option("state", path2, "state JSON")->required();
  gns->add_flag("--representation", with_rep, "include per-arrow representation matrices");

  auto* walk = app.add_subcommand("walk", "quantum walk trajectory");
  walk->add_option("config", path, "walk JSON")->required();
  walk->add_option("--steps", steps, "number of steps");

  auto* demo = app.add_subcommand("demo", "generated examples");
  demo->require_subcommand(1);
  auto* minkowski = demo->add_subcommand("minkowski", "lattice theorem suite");
  minkowski->add_option("--t", demo_t, "time extent")->required();
  minkowski->add_option("--x", demo_x, "space extent")->required();
  minkowski->add_option("--flavor", flavor, "lattice flavor")->check(CLI::IsMember({"thin", "indiscrete"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return e.get_exit_code() == 0 ? code : 2;
  }

  try {
    if (*tol_opt) cfg.tolerance = tol_flag;
    const double tol = effective_tolerance(cfg);
    theorem_opts.seed = cfg.seed;
    theorem_opts.tolerance = tol;
    Outcome o;
    std::string default_format = "json";
    if (*validate) {
      o = cmd_validate(path);
    } else if (*mul) {
      o = cmd_mul(path, path2);
    } else if (*center) {
      o = cmd_center(path, tol);
    } else if (*relevant) {
      o = cmd_relevant(path, objects);
    } else if (*local) {
      o = cmd_local(path, objects, involution, rig_name, reading);
    } else if (*theorems) {
      o = theorem_outcome("check-theorems", cf::io::load_category(path).causal_category(), theorem_opts);
    } else if (*state_check) {
      o = cmd_state_check(path, trials, cfg, tol);
    } else if (*gns) {
      o = cmd_gns(path, path2, with_rep, tol, cfg);
    } else if (*walk) {
      o = cmd_walk(path, steps);
      default_format = "csv";
    } else if (*minkowski) {
      const auto cc = cf::minkowski_lattice(demo_t, demo_x,
                                            flavor == "thin" ? cf::LatticeFlavor::Thin : cf::LatticeFlavor::Indiscrete);
      o = theorem_outcome("demo minkowski", cc, theorem_opts);
      o.report["t"] = demo_t;
      o.report["x"] = demo_x;
      o.report["flavor"] = flavor;
    }
    emit(cfg, o, default_format);
    return o.ok ? 0 : 1;
  } catch (const cf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code().rfind("cli.Usage", 0) == 0 ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
}
