// belowz: batch front end. Exit codes: 0 success, 1 a mathematical verdict
// failed, 2 bad input or configuration, 3 enumeration budget exceeded.

#include "belowz/descent.hpp"
#include "belowz/group_schemes.hpp"
#include "belowz/io.hpp"
#include "belowz/schemes.hpp"
#include "belowz/semiring.hpp"
#include "belowz/toric.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>

using namespace belowz;

namespace {

constexpr int kOk = 0, kVerdict = 1, kInput = 2, kBudget = 3;

struct RunConfig {
  std::string format = "text";
  std::uint64_t budget = Limits{}.enumeration_budget;
  std::int64_t bound = 3;
  std::int64_t max_order = 3;
  std::int64_t legs = 2;
  std::vector<int> q = {2, 3, 4, 5};

  Limits limits() const {
    Limits l;
    l.enumeration_budget = budget;
    return l;
  }
};

struct Report {
  Json json = Json::object();
  std::ostringstream text;
  int code = kOk;
};

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string vec(const ExponentVector& v) {
  std::string s = "(";
  for (Index i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v(i));
  return s + ")";
}

std::uint64_t positive(const std::string& what, const std::string& text) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || v <= 0) throw InvalidInput(what + " must be a positive integer, got '" + text + "'");
  return static_cast<std::uint64_t>(v);
}

// Config file keys mirror the long flags.
void apply_config(const std::string& path, RunConfig& out, const std::set<std::string>& from_flags) {
  Json j = read_json_file(path);
  RunConfig cfg = out;
  if (!j.is_object()) throw InvalidInput(path + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    const std::string where = path + ": " + key;
    auto count = [&]() -> std::int64_t {
      if (!value.is_number_integer() || value.get<std::int64_t>() <= 0) throw InvalidInput(where + " must be a positive integer");
      return value.get<std::int64_t>();
    };
    if (key == "format") {
      if (!value.is_string() || (value != "text" && value != "json")) throw InvalidInput(where + " must be \"text\" or \"json\"");
      cfg.format = value.get<std::string>();
    } else if (key == "budget") {
      cfg.budget = static_cast<std::uint64_t>(count());
    } else if (key == "bound") {
      cfg.bound = count();
    } else if (key == "max-order") {
      cfg.max_order = count();
    } else if (key == "legs") {
      cfg.legs = count();
    } else if (key == "q") {
      if (!value.is_array() || value.empty()) throw InvalidInput(where + " must be a non-empty integer array");
      cfg.q.clear();
      for (const auto& e : value) {
        if (!e.is_number_integer() || e.get<int>() < 2) throw InvalidInput(where + " entries must be integers >= 2");
        cfg.q.push_back(e.get<int>());
      }
    } else {
      throw InvalidInput(path + ": unknown key '" + key + "'");
    }
  }
  // Every key is validated; flags given on the command line still win.
  if (!from_flags.count("format")) out.format = cfg.format;
  if (!from_flags.count("budget")) out.budget = cfg.budget;
  if (!from_flags.count("bound")) out.bound = cfg.bound;
  if (!from_flags.count("max-order")) out.max_order = cfg.max_order;
  if (!from_flags.count("legs")) out.legs = cfg.legs;
  if (!from_flags.count("q")) out.q = cfg.q;
}

Fan load_fan(const std::string& path) {
  if (!std::filesystem::exists(path)) {
    try {
      return builtin_fan(path);
    } catch (const InvalidInput&) {
      throw InvalidInput(path + ": cannot open file");
    }
  }
  return fan_from_json(read_json_file(path));
}

// ---------------------------------------------------------------- fan

bool fan_report(const Fan& fan, Report& r) {
  FanVerdict v = fan_validate(fan);
  r.json["fan"] = to_json(fan);
  r.json["verdict"] = to_json(v);
  auto maximal = fan.maximal_cones();
  r.json["maximal"] = maximal;
  r.text << "fan: dimension " << fan.dim << ", " << fan.rays.size() << " rays, " << fan.cones.size() << " cones\n";
  for (std::size_t i = 0; i < fan.rays.size(); ++i) r.text << "  ray " << i << ": " << vec(fan.rays[i]) << "\n";
  for (std::size_t i = 0; i < fan.cones.size(); ++i) {
    r.text << "  cone " << i << ": {" << join(fan.cones[i]) << "} dim " << fan.cone(i).cone_dim();
    if (std::find(maximal.begin(), maximal.end(), i) != maximal.end()) r.text << " maximal";
    r.text << "\n";
  }
  if (v.valid) {
    r.text << "verdict: valid\n";
    return true;
  }
  r.text << "verdict: invalid: " << v.failure;
  if (v.witness_ray) r.text << "; witness " << vec(*v.witness_ray);
  r.text << "\n";
  r.code = kVerdict;
  return false;
}

void cmd_fan(const std::string& path, Report& r) { fan_report(load_fan(path), r); }

// ---------------------------------------------------------------- toric

void print_atlas(const SchemeAtlas& x, const Limits& limits, Report& r) {
  for (std::size_t i = 0; i < x.charts.size(); ++i) {
    const auto& c = x.charts[i];
    r.text << "chart " << i << " " << c.label << ": " << x.chart_presentation(i, limits).to_string() << "\n";
  }
  for (const auto& o : x.overlaps) {
    if (o.i == o.j) continue;
    r.text << "overlap " << o.i << "," << o.j << ": " << describe_hom(o.left) << " [" << to_string(o.left.certificate().kind)
           << "]; " << describe_hom(o.right) << " [" << to_string(o.right.certificate().kind) << "]\n";
  }
}

void cmd_toric(const std::string& path, const std::string& basechange, const std::string& point_spec, bool count,
               const RunConfig& cfg, Report& r) {
  Fan fan = load_fan(path);
  Report scratch;
  if (!fan_report(fan, scratch)) {
    r.json = scratch.json;
    r.text << scratch.text.str();
    r.code = kVerdict;
    return;
  }
  const Limits limits = cfg.limits();
  if (count) {
    r.json["counts"] = Json::array();
    for (int q : cfg.q) {
      PointCount c = count_points_fq(fan, q, limits);
      r.json["counts"].push_back(to_json(c));
      r.text << "q=" << q << ": glued " << c.glued << ", cone sum " << c.cone_sum << (c.agree() ? "" : "  DISAGREE")
             << "\n";
      if (!c.agree()) r.code = kVerdict;
    }
    return;
  }
  SchemeAtlas x = build_toric_atlas(fan, limits);
  if (!point_spec.empty()) {
    MonoidPtr b = parse_monoid_spec(point_spec);
    PointSet p = points(x, b, limits);
    r.json["points"] = to_json(p);
    r.text << "points over " << (b->label().empty() ? point_spec : b->label()) << ": " << p.size() << "\n";
    for (const auto& pt : p.points) {
      const MonoidHom& h = p.chart_points[pt.chart][pt.index];
      r.text << "  chart " << pt.chart << ": (";
      for (std::size_t k = 0; k < h.images().size(); ++k) r.text << (k ? "," : "") << h.target().element_name(h.images()[k]);
      r.text << ") in " << pt.members << " chart" << (pt.members == 1 ? "" : "s") << "\n";
    }
    return;
  }
  if (!basechange.empty()) {
    SchemeAtlas y = toric_base_change(fan, parse_base(basechange), limits);
    r.json["atlas"] = to_json(y);
    r.json["rings"] = Json::array();
    for (std::size_t i = 0; i < y.charts.size(); ++i) r.json["rings"].push_back(y.chart_presentation(i, limits).to_string());
    print_atlas(y, limits, r);
    return;
  }
  AtlasVerdict v = validate_atlas(x, limits);
  r.json["atlas"] = to_json(x);
  r.json["validation"] = to_json(v);
  print_atlas(x, limits, r);
  for (const auto& c : v.conditions)
    r.text << "condition " << c.id << ": " << (c.pass ? "pass" : "FAIL") << (c.detail.empty() ? "" : " (" + c.detail + ")")
           << "\n";
  r.text << "verdict: " << (v.valid ? "valid" : "invalid") << "\n";
  if (!v.valid) r.code = kVerdict;
}

// ---------------------------------------------------------------- gln

std::uint64_t gl_order(int n, std::uint64_t q) {
  std::uint64_t qn = 1, out = 1, qi = 1;
  for (int i = 0; i < n; ++i) qn *= q;
  for (int i = 0; i < n; ++i, qi *= q) out *= qn - qi;
  return out;
}

void group_report(const GroupPoints& g, const Limits& limits, Report& r) {
  const bool list = g.size() <= 24;
  r.json["group"] = to_json(g, list);
  auto axioms = g.check_axioms(limits);
  r.text << g.label() << ": order " << g.size() << (g.is_abelian() ? ", abelian" : ", non-abelian")
         << (axioms.ok ? "" : ", AXIOMS FAIL: " + axioms.failure) << "\n";
  if (list)
    for (std::size_t i = 0; i < g.size(); ++i) r.text << "  " << g.name(i) << "\n";
  if (!axioms.ok) r.code = kVerdict;
}

void cmd_gln(int n, const std::string& target, const RunConfig& cfg, Report& r) {
  if (n < 1) throw InvalidInput("n must be positive");
  const Limits limits = cfg.limits();
  r.json["n"] = n;
  r.json["target"] = target;
  if (target.rfind("Fq:", 0) == 0) {
    const int q = static_cast<int>(positive("q", target.substr(3)));
    GroupPoints g = gln_points_matrix(n, finite_field(q), limits);
    group_report(g, limits, r);
    const std::uint64_t closed = gl_order(n, static_cast<std::uint64_t>(q));
    GroupPoints model = gln_f1_points(n, builtin_monoid("Fq*:" + std::to_string(q)), limits);
    r.json["closed_form"] = closed;
    r.json["f1_model_order"] = model.size();
    r.text << "closed form: " << closed << (closed == g.size() ? "" : "  DISAGREE") << "\n";
    r.text << "monomial matrices (GL_n over F1 at F" << q << "*): " << model.size() << "\n";
    if (closed != g.size()) r.code = kVerdict;
    return;
  }
  if (target.rfind("N:", 0) == 0) {
    const Integer max_entry = static_cast<Integer>(positive("max entry", target.substr(2)));
    auto found = invertible_over_N_search(n, max_entry, limits);
    auto perms = permutation_matrices(n);
    std::size_t matched = 0;
    for (const auto& m : found)
      for (const auto& p : perms) matched += m == p;
    const bool exact = matched == found.size() && found.size() == perms.size();
    r.json["invertible"] = found.size();
    r.json["permutation_matrices"] = perms.size();
    r.json["exactly_permutations"] = exact;
    r.text << "N-matrices with entries <= " << max_entry << " invertible over N: " << found.size() << "\n";
    r.text << "permutation matrices: " << perms.size() << (exact ? ", the same set" : ", DIFFERENT sets") << "\n";
    if (!exact) r.code = kVerdict;
    return;
  }
  if (target == "B") {
    group_report(gln_points_matrix(n, boolean_semiring(), limits), limits, r);
    return;
  }
  if (target.rfind("Zmod:", 0) == 0) {
    group_report(gln_points_matrix(n, integers_mod(static_cast<int>(positive("modulus", target.substr(5)))), limits),
                 limits, r);
    return;
  }
  group_report(gln_f1_points(n, parse_monoid_spec(target), limits), limits, r);
}

// ---------------------------------------------------------------- descent

std::size_t as_bound(std::int64_t b) {
  if (b <= 0) throw InvalidInput("the descent bound must be positive, got " + std::to_string(b));
  return static_cast<std::size_t>(b);
}

struct SheafTally {
  std::size_t checked = 0, failed = 0;
  std::string first_failure;
};

SheafTally sheaf_tally(const Cover& c, std::size_t bound, const Limits& limits) {
  SheafTally t;
  for (const auto& m : enumerate_asets(c.base, bound, limits)) {
    ++t.checked;
    LabVerdict v = sheaf_equalizer_check(c, m, limits);
    if (!v.ok() && t.failed++ == 0) t.first_failure = m.to_string() + ": " + v.detail;
  }
  return t;
}

std::string verdict_text(const LabVerdict& v) {
  std::string s = to_string(v.status) + " " + std::to_string(v.bound);
  return v.detail.empty() ? s : s + " (" + v.detail + ")";
}

void cmd_descent_verify(const std::string& path, const RunConfig& cfg, Report& r) {
  const std::size_t bound = as_bound(cfg.bound);
  const Limits limits = cfg.limits();
  Cover c = cover_from_json(read_json_file(path));
  r.json["cover"] = to_json(c);
  r.json["bound"] = bound;
  r.text << "cover: " << c.to_string() << "\nbound: " << bound << "\n";

  bool is_cover = true, any_split = false;
  r.json["legs"] = Json::array();
  for (std::size_t i = 0; i < c.legs.size(); ++i) {
    LabVerdict flat = is_flat_bounded(c.legs[i], bound, limits);
    const bool split = split_leg(Cover(c.base, {c.legs[i]}), limits).has_value();
    any_split = any_split || split;
    is_cover = is_cover && flat.ok();
    r.json["legs"].push_back({{"flat", to_json(flat)}, {"split", split}});
    r.text << "leg " << i << ": flat " << verdict_text(flat) << "; " << (split ? "split" : "not split") << "\n";
  }
  LabVerdict cons = is_conservative_bounded(c, bound, limits);
  is_cover = is_cover && cons.ok();
  r.json["conservative"] = to_json(cons);
  r.text << "conservative: " << verdict_text(cons) << "\n";

  SheafTally sheaf = sheaf_tally(c, bound, limits);
  r.json["sheaf"] = {{"asets", sheaf.checked}, {"failures", sheaf.failed}};
  if (sheaf.failed) r.json["sheaf"]["first_failure"] = sheaf.first_failure;
  r.text << "sheaf condition: " << sheaf.checked << " A-sets, " << sheaf.failed << " failing"
         << (sheaf.failed ? " (first: " + sheaf.first_failure + ")" : "") << "\n";

  DescentReport d = descent_equivalence_check(c, bound, limits);
  r.json["descent"] = {{"verdict", to_json(d.verdict)}, {"asets", d.asets}, {"data", d.data}};
  if (d.offending) r.json["descent"]["offending"] = to_json(*d.offending);
  r.text << "descent equivalence: " << verdict_text(d.verdict) << "; " << d.asets << " A-sets, " << d.data
         << " descent data\n";

  const bool pass = is_cover && sheaf.failed == 0 && d.verdict.ok();
  r.json["split"] = any_split;
  r.json["pass"] = pass;
  r.text << "scope: " << (any_split ? "split cover" : "non-split cover") << "\n";
  r.text << "verdict: " << (pass ? "pass" : is_cover ? "FAIL" : "FAIL (not a cover at this bound)") << "\n";
  if (!pass) r.code = kVerdict;
}

void cmd_descent_search(const RunConfig& cfg, Report& r) {
  const std::size_t bound = as_bound(cfg.bound);
  if (cfg.max_order <= 0 || cfg.legs <= 0) throw InvalidInput("--max-order and --legs must be positive");
  const std::size_t max_order = static_cast<std::size_t>(cfg.max_order), legs = static_cast<std::size_t>(cfg.legs);
  const Limits limits = cfg.limits();
  auto covers = discover_covers(max_order, legs, bound, limits);

  std::size_t split = 0, sheaf_checks = 0, sheaf_failures = 0, descent_failures = 0, data = 0;
  Json list = Json::array();
  std::ostringstream lines;
  for (std::size_t k = 0; k < covers.size(); ++k) {
    const auto& dc = covers[k];
    split += dc.split;
    SheafTally t = sheaf_tally(dc.cover, bound, limits);
    sheaf_checks += t.checked;
    sheaf_failures += t.failed;
    DescentReport d = descent_equivalence_check(dc.cover, bound, limits);
    data += d.data;
    descent_failures += !d.verdict.ok();
    list.push_back({{"cover", dc.cover.to_string()},
                    {"split", dc.split},
                    {"sheaf_failures", t.failed},
                    {"descent", to_json(d.verdict)},
                    {"data", d.data}});
    lines << "  " << k << ": " << dc.cover.to_string() << (dc.split ? " [split]" : " [non-split]")
          << (t.failed || !d.verdict.ok() ? "  FAIL" : "") << "\n";
  }
  PretopologyReport p = check_pretopology(covers, max_order, bound, limits);
  const bool all_split = split == covers.size();
  const bool pass = sheaf_failures == 0 && descent_failures == 0 && p.verdict.ok();

  r.json["search"] = {{"max_order", max_order}, {"legs", legs}, {"bound", bound}};
  r.json["covers"] = list;
  r.json["split"] = split;
  r.json["non_split"] = covers.size() - split;
  r.json["sheaf"] = {{"checks", sheaf_checks}, {"failures", sheaf_failures}};
  r.json["descent"] = {{"data", data}, {"failures", descent_failures}};
  r.json["pretopology"] = {{"isomorphisms", p.isomorphisms},
                           {"base_changes", p.base_changes},
                           {"composites", p.composites},
                           {"verdict", to_json(p.verdict)}};
  r.json["scope"] = all_split ? "verified on split covers only" : "includes non-split covers";
  r.json["pass"] = pass;

  r.text << "search: monoids of order <= " << max_order << ", at most " << legs << " legs, bound " << bound << "\n";
  r.text << "covers: " << covers.size() << " (" << split << " split, " << covers.size() - split << " non-split)\n";
  r.text << lines.str();
  r.text << "sheaf condition: " << sheaf_checks << " checks, " << sheaf_failures << " failing\n";
  r.text << "descent equivalence: " << covers.size() << " covers, " << data << " descent data, " << descent_failures
         << " failing\n";
  r.text << "pretopology: " << p.isomorphisms << " isomorphisms, " << p.base_changes << " base changes, "
         << p.composites << " composites: " << verdict_text(p.verdict) << "\n";
  r.text << "scope: " << r.json["scope"].get<std::string>() << "\n";
  r.text << "verdict: " << (pass ? "pass" : "FAIL") << "\n";
  if (!pass) r.code = kVerdict;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monoid schemes, toric varieties and descent over F1, by exact enumeration."};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string config_path, budget_text;
  auto* format_opt = app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--config", config_path, "JSON file with default flag values")->check(CLI::ExistingFile);
  auto* budget_opt = app.add_option("--budget", budget_text, "Enumeration budget (env BELOWZ_BUDGET)");

  std::string path;
  auto* fan = app.add_subcommand("fan", "Validate a fan and list its cones");
  fan->add_option("path", path, "Fan JSON file or built-in fan name")->required();

  std::string basechange, point_spec;
  bool charts = false, count = false;
  auto* toric = app.add_subcommand("toric", "Atlas, base change, points or point counts of a toric variety");
  toric->add_option("path", path, "Fan JSON file or built-in fan name")->required();
  auto* charts_opt = toric->add_flag("--charts", charts, "Charts, overlaps and atlas validation (default)");
  auto* base_opt = toric->add_option("--basechange", basechange, "Chart rings over N or Z")->check(CLI::IsMember({"N", "Z"}));
  auto* points_opt = toric->add_option("--points", point_spec, "Points over a monoid: built-in name, JSON or file");
  auto* count_opt = toric->add_flag("--count", count, "|X(F_q)| by gluing and by the cone sum");
  auto* q_opt = toric->add_option("--q", cfg.q, "Field sizes for --count")->delimiter(',');
  charts_opt->excludes(base_opt, points_opt, count_opt);
  base_opt->excludes(points_opt, count_opt);
  points_opt->excludes(count_opt);

  int n = 0;
  std::string target;
  auto* gln = app.add_subcommand("gln", "Points of GL_n");
  gln->add_option("n", n, "Matrix size")->required();
  gln->add_option("target", target, "F1, Fq:<q>, B, Zmod:<m>, N:<max entry>, or a monoid spec")->required();

  auto* descent = app.add_subcommand("descent", "Bounded checks of flat descent for A-sets");
  descent->require_subcommand(1);
  std::vector<CLI::Option*> bound_opts;
  auto* verify = descent->add_subcommand("verify", "Check one cover given as JSON");
  verify->add_option("cover", path, "Cover JSON file")->required();
  bound_opts.push_back(verify->add_option("--bound", cfg.bound, "Largest A-set size"));
  auto* search = descent->add_subcommand("search", "Discover covers among small finite monoids and check them");
  bound_opts.push_back(search->add_option("--bound", cfg.bound, "Largest A-set size"));
  auto* order_opt = search->add_option("--max-order", cfg.max_order, "Largest monoid order");
  auto* legs_opt = search->add_option("--legs", cfg.legs, "Most legs per cover");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  Report report;
  try {
    std::set<std::string> from_flags;
    if (format_opt->count()) from_flags.insert("format");
    if (budget_opt->count()) from_flags.insert("budget");
    if (q_opt->count()) from_flags.insert("q");
    if (order_opt->count()) from_flags.insert("max-order");
    if (legs_opt->count()) from_flags.insert("legs");
    for (auto* o : bound_opts)
      if (o->count()) from_flags.insert("bound");

    if (const char* env = std::getenv("BELOWZ_BUDGET")) cfg.budget = positive("BELOWZ_BUDGET", env);
    if (!config_path.empty()) apply_config(config_path, cfg, from_flags);
    if (budget_opt->count()) cfg.budget = positive("--budget", budget_text);

    if (fan->parsed()) {
      cmd_fan(path, report);
    } else if (toric->parsed()) {
      (void)charts;
      cmd_toric(path, basechange, point_spec, count, cfg, report);
    } else if (gln->parsed()) {
      cmd_gln(n, target, cfg, report);
    } else if (verify->parsed()) {
      cmd_descent_verify(path, cfg, report);
    } else if (search->parsed()) {
      cmd_descent_search(cfg, report);
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const Unsupported& e) {
    std::cerr << "error: unsupported: " << e.what() << "\n";
    return kInput;
  }

  if (cfg.format == "json")
    std::cout << canonical_dump(report.json);
  else
    std::cout << report.text.str();
  return report.code;
}
