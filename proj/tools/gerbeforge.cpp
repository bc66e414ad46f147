// gerbeforge: command-line access to the cohomology, gerbe, extension, Clifford, fusion and
// symmetry computations, plus the named batteries. Prints one JSON report; exit code 0 iff every
// check passed, 1 on a failed check, 2 on bad input, 3 on a size cap.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gerbeforge/algebra.hpp"
#include "gerbeforge/clifford.hpp"
#include "gerbeforge/errors.hpp"
#include "gerbeforge/fusion.hpp"
#include "gerbeforge/groupoid.hpp"
#include "gerbeforge/report.hpp"
#include "gerbeforge/symmetry.hpp"

using namespace gerbeforge;
using nlohmann::json;

namespace {

std::vector<std::int64_t> parse_numbers(const std::string& text) {
  std::string s = text;
  for (auto& ch : s)
    if (ch == ',') ch = ' ';
  std::istringstream in(s);
  std::vector<std::int64_t> out;
  std::string word;
  while (in >> word) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(word, &used));
      if (used != word.size()) throw std::invalid_argument(word);
    } catch (const std::exception&) {
      throw InvalidInput("not a number: '" + word + "'");
    }
  }
  return out;
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  for (auto v : parse_numbers(text)) out.push_back(static_cast<int>(v));
  return out;
}

/// "center", "whole", "generated a,b", or the member list "0,2".
SubgroupDatum parse_subgroup(const FiniteGroup& g, const std::string& spec) {
  if (spec == "center") return center(g);
  if (spec == "whole") {
    std::vector<int> all(static_cast<std::size_t>(g.order()));
    for (int i = 0; i < g.order(); ++i) all[static_cast<std::size_t>(i)] = i;
    return make_subgroup(g, all);
  }
  if (spec.rfind("generated ", 0) == 0) return generated_subgroup(g, parse_ints(spec.substr(10)));
  return make_subgroup(g, parse_ints(spec));
}

/// "trivial N", "regular", "cosets <subgroup>", or a JSON document / file {"points": n, "table": [...]}.
GroupAction parse_action(const FiniteGroup& g, const std::string& spec) {
  if (spec.rfind("trivial", 0) == 0) {
    const auto n = parse_ints(spec.substr(7));
    return GroupAction::trivial(g, n.empty() ? 1 : n.front());
  }
  if (spec == "regular") return regular_action(g);
  if (spec.rfind("cosets ", 0) == 0) return coset_action(g, parse_subgroup(g, spec.substr(7)));
  std::string text = spec;
  if (!spec.empty() && spec.front() != '{') {
    std::ifstream file(spec);
    if (!file) throw InvalidInput("unknown action '" + spec + "'");
    text.assign(std::istreambuf_iterator<char>(file), {});
  }
  json j;
  try {
    j = json::parse(text);
    return GroupAction::from_images(g, j.at("points").get<int>(), j.at("table").get<std::vector<int>>());
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("action document: ") + e.what());
  }
}

AbAction trivial_module(const FiniteGroup& q, const std::string& factors) {
  Vec64 f = parse_numbers(factors);
  if (f.empty()) throw InvalidInput("module needs at least one invariant factor");
  return AbAction::trivial(q, FinAbGroup(f));
}

Vec64 class_coords(const FinAbGroup& h, const std::string& spec) {
  Vec64 c = spec.empty() ? Vec64(h.rank(), 0) : parse_numbers(spec);
  if (c.size() != h.rank()) throw InvalidInput("class needs " + std::to_string(h.rank()) + " coordinates for " + h.to_string());
  return h.reduce(c);
}

bool all_closed(const std::vector<Cochain>& cs) {
  for (const auto& c : cs)
    if (!differential(c).is_zero()) return false;
  return true;
}

struct Options {
  std::uint64_t seed = 0;
  bool pretty = false, timing = false;
  std::string group, action, kernel, quotient, module = "2", klass, dims, q, k, coeff, mode, battery;
  int degree = 2;
  bool cx = false, column = false;
};

// ---- subcommands ----

void run_cohomology(const Options& o, Report& r) {
  const auto g = load_group(o.group);
  r.inputs = {{"group", o.group}, {"degree", o.degree}, {"cx", o.cx}, {"coeff", o.coeff}};
  const std::string key = "H^" + std::to_string(o.degree);
  if (o.cx || o.coeff.empty()) {
    if (g.order() == 1) {
      r.results[key] = "0";
      return;
    }
    CxCohomology h(g, o.degree);
    Integer integral = 1;
    for (const auto& f : integral_cohomology_factors(g, o.degree)) integral *= f;
    r.results["coefficients"] = "C^x";
    r.results[key] = h.group().to_string();
    r.results["summary"] = {key + "(" + g.name() + ", C^x) = " + h.group().to_string()};
    r.expect("generators are cocycles", true, all_closed(h.generators()));
    r.expect("order agrees with the integral Smith form", integral.get_str(), std::to_string(h.group().order()));
    return;
  }
  const auto n = parse_numbers(o.coeff);
  if (n.size() != 1 || n.front() < 2) throw InvalidInput("--coeff takes the order N of mu_N");
  GroupCohomology h(g, roots_of_unity(g, n.front()), o.degree);
  r.results["coefficients"] = "mu_" + std::to_string(n.front());
  r.results[key] = h.group().to_string();
  r.results["summary"] = {key + "(" + g.name() + ", mu_" + std::to_string(n.front()) + ") = " + h.group().to_string()};
  r.expect("generators are cocycles", true, all_closed(h.generators()));
}

void run_gerbes(const Options& o, Report& r) {
  const auto g = load_group(o.group);
  const auto a = parse_action(g, o.action);
  r.inputs = {{"group", o.group}, {"action", o.action}, {"mode", o.mode}};
  const auto groupoid = build_action_groupoid(g, a);
  if (o.mode == "count") {
    const auto bar = induced_cohomology(a, 2).group();
    const auto nerve = GroupoidCohomology(groupoid, 2).group();
    std::int64_t product = 1;
    json orbits = json::array();
    for (const auto& orbit : act_orbits(a)) {
      const auto stab = subgroup_group(orbit.stabilizer);
      const auto h = stab.order() == 1 ? FinAbGroup() : CxCohomology(stab, 2).group();
      product *= h.order();
      orbits.push_back({{"points", orbit.points}, {"stabilizer", orbit.stabilizer.members}, {"H^2", h.to_string()}});
    }
    r.results["bar"] = bar.to_string();
    r.results["nerve"] = nerve.to_string();
    r.results["orbits"] = orbits;
    r.results["summary"] = {"H^2(Q x| X) = " + nerve.to_string()};
    r.expect("|H^2(Q, O_X)| = |H^2(Q x| X)|", bar.order(), nerve.order());
    r.expect("|H^2(Q x| X)| = product over orbits", nerve.order(), product);
    return;
  }
  if (o.mode != "decompose") throw InvalidInput("gerbes --mode is count or decompose");
  GerbeDecomposer dec(groupoid);
  json classes = json::array();
  bool round_trip = true;
  for (const auto& cls : dec.cohomology().group().elements()) {
    const auto parts = dec.decompose(cls);
    round_trip = round_trip && dec.assemble(parts) == cls;
    classes.push_back({{"class", cls}, {"per_orbit", parts}, {"twisted_reps", twisted_rep_count(dec, cls).total}});
  }
  r.results["H^2"] = dec.cohomology().group().to_string();
  r.results["classes"] = classes;
  r.expect("assembly inverts decomposition", true, round_trip);
}

void run_extension(const Options& o, Report& r) {
  r.inputs = {{"mode", o.mode}, {"quotient", o.quotient}, {"module", o.module}, {"group", o.group},
              {"action", o.action}, {"class", o.klass}, {"dims", o.dims}};
  if (o.mode == "center") {
    const auto g = load_group(o.group);
    const auto a = parse_action(g, o.action);
    GerbeDecomposer dec(build_action_groupoid(g, a));
    const auto cls = class_coords(dec.cohomology().group(), o.klass);
    std::vector<int> dims = o.dims.empty() ? std::vector<int>{} : parse_ints(o.dims);
    const auto ext = gerbe_to_extension(dec.datum(cls), dims);
    const auto centre = center_dimension(ext.algebra);
    const auto count = twisted_rep_count(dec, cls).total;
    r.results["dim"] = ext.algebra.dim;
    r.results["center"] = centre;
    r.results["gerbe"] = dec.datum(cls).to_json();
    r.results["summary"] = {"dim Z(R) = " + std::to_string(centre)};
    r.expect("strongly graded", true, ext.is_strongly_graded());
    r.expect("center_dimension(R) = twisted_rep_count", count, centre);
    return;
  }
  const auto q = load_group(o.quotient);
  const auto band = trivial_module(q, o.module);
  GroupCohomology h(q, band, 2);
  auto describe = [&](const Vec64& cls) {
    const auto ext = build_extension(q, band, h.representative(cls));
    const auto back = h.classify(extract_cocycle(ext));
    return std::pair{json{{"class", cls}, {"order", ext.total.order()}, {"abelian", ext.total.is_abelian()}, {"exponent", ext.total.exponent()}},
                     back == cls};
  };
  r.results["H^2"] = h.group().to_string();
  if (o.mode == "build") {
    const auto [info, ok] = describe(class_coords(h.group(), o.klass));
    r.results["extension"] = info;
    r.expect("extracted cocycle has the requested class", true, ok);
    return;
  }
  if (o.mode != "classify") throw InvalidInput("extension mode is build, classify or center");
  json all = json::array();
  std::size_t round_trips = 0, distinct = 0;
  const auto elems = h.group().elements();
  std::vector<ExtensionDatum> built;
  for (const auto& cls : elems) {
    const auto [info, ok] = describe(cls);
    all.push_back(info);
    round_trips += ok;
    built.push_back(build_extension(q, band, h.representative(cls)));
  }
  for (std::size_t i = 0; i < built.size(); ++i) {
    bool alone = true;
    for (std::size_t j = 0; j < built.size(); ++j) alone = alone && (i == j || !extension_equivalence(built[i], built[j]));
    distinct += alone;
  }
  r.results["extensions"] = all;
  r.expect("every class round-trips", elems.size(), round_trips);
  r.expect("distinct classes give inequivalent extensions", elems.size(), distinct);
}

void run_clifford(const Options& o, Report& r) {
  const auto g = load_group(o.group);
  const auto k = parse_subgroup(g, o.kernel);
  r.inputs = {{"group", o.group}, {"kernel", o.kernel}};
  const auto cd = clifford_gerbe_extract(g, k, o.seed);
  const auto f = frules_check(cd);
  std::string line = std::to_string(f.irreps_of_g) + " =";
  for (std::size_t i = 0; i < f.per_orbit.size(); ++i) line += (i ? " + " : " ") + std::to_string(f.per_orbit[i]);
  r.results["count"] = line;
  r.results["datum"] = cd.to_json();
  r.results["frules"] = f.to_json();
  r.results["summary"] = {line};
  r.expect("#Irr(G) = sum of regular class counts", f.irreps_of_g, f.total);
  r.expect("dimension multisets agree", true, f.dims_match);
}

void run_fusion(const Options& o, Report& r) {
  r.inputs = {{"mode", o.mode}, {"group", o.group}, {"kernel", o.kernel}, {"quotient", o.quotient},
              {"module", o.module}, {"class", o.klass}};
  if (o.mode == "pentagon" || o.mode == "alpha") {
    const auto g = load_group(o.group);
    CxCohomology h(g, 3);
    const auto cls = class_coords(h.group(), o.klass);
    const auto omega = h.representative(cls);
    r.results["H^3"] = h.group().to_string();
    if (o.mode == "pentagon") {
      const auto d = pointed_datum(g, omega);
      const auto fast = pentagon_check(d), slow = pentagon_check_reference(d);
      r.results["datum"] = d.to_json();
      r.expect("pentagon holds", true, fast.holds);
      r.expect("parallel and serial checks agree", slow.holds, fast.holds);
      return;
    }
    const auto k = parse_subgroup(g, o.kernel);
    if (o.column) {
      const auto col = alpha_column(g, k, o.seed);
      r.results["column"] = col.to_json();
      r.expect("middle row exact", true, col.row.all());
      r.expect("alpha derivations, well defined, additive", true, col.derivations && col.well_defined && col.additive);
      r.expect("both squares commute", true, col.left_square && col.right_square);
      return;
    }
    const auto a = conjugation_cocycle_alpha(graded_datum(g, omega, k));
    r.results["alpha"] = a.to_json();
    r.expect("conjugation cochains are cocycles", true, a.cocycles);
    r.expect("derivation identity", true, a.derivation);
    return;
  }
  const auto q = load_group(o.quotient);
  const auto band = trivial_module(q, o.module);
  GroupCohomology h(q, band, 2);
  const auto eta = h.representative(class_coords(h.group(), o.klass));
  if (o.mode == "phi-f") {
    const auto d = phi_f_construct(band, eta);
    r.results["datum"] = d.to_json();
    r.results["trivial_class"] = CxCohomology(d.group, 3, d.omega.modulus()).is_trivial(d.omega);
    r.expect("d phi_f = 0", true, pentagon_check(d).holds);
    return;
  }
  if (o.mode != "rep-ext") throw InvalidInput("fusion mode is pentagon, phi-f, alpha or rep-ext");
  const auto count = count_rep_extensions(build_extension(q, band, eta));
  r.results["count"] = count.to_json();
  r.expect("classes = |ker cup| |coker|", count.kernel_h2 * count.cokernel_h1, count.classes);
}

void run_symmetry(const Options& o, Report& r) {
  const auto q = load_group(o.q), k = load_group(o.k);
  r.inputs = {{"q", o.q}, {"k", o.k}};
  MixedCohomology here(q, k), there(k, q);
  std::set<Vec64> images;
  json pairs = json::array();
  bool solutions = true, counts = true;
  for (const auto& cls : here.group().elements()) {
    const auto p = here.representative(cls);
    solutions = solutions && satisfies_conditions(p);
    images.insert(there.classify(transpose_pair(p)));
    const auto simple = equivariant_simple_count(p);
    counts = counts && simple == equivariant_simple_count_groupoid(p);
    pairs.push_back({{"class", cls}, {"pair", p.to_json()}, {"equivariant_simples", simple}});
  }
  r.results["classes"] = here.group().to_string();
  r.results["pairs"] = pairs;
  r.results["summary"] = {"mixed classes: " + here.group().to_string()};
  r.expect("representatives satisfy the conditions", true, solutions);
  r.expect("transpose is a bijection on classes", here.group().order(), static_cast<std::int64_t>(images.size()));
  r.expect("simple counts agree with the groupoid gerbe", true, counts);
}

void run_battery_command(const Options& o, Report& r) {
  r.inputs = {{"battery", o.battery}, {"seed", o.seed}};
  if (o.battery != "all") {
    const auto b = run_battery(o.battery, o.seed);
    r.results = b.results;
    r.checks = b.checks;
    return;
  }
  json summary = json::array();
  for (const auto& info : batteries()) {
    const auto b = run_battery(info.name, o.seed);
    for (auto c : b.checks) {
      c.name = info.name + ": " + c.name;
      r.checks.push_back(std::move(c));
    }
    r.results[info.name] = b.results;
    summary.push_back(info.name + (b.passed() ? ": pass" : ": FAIL"));
  }
  r.results["summary"] = summary;
}

void print(const Report& r, const Options& o) {
  if (!o.pretty) {
    std::cout << r.to_json(o.timing).dump() << '\n';
    return;
  }
  std::cout << "command: " << r.command << "\nseed: " << r.seed << "   inputs: " << inputs_digest(r.inputs) << '\n';
  if (r.results.contains("summary"))
    for (const auto& line : r.results["summary"]) std::cout << line.get<std::string>() << '\n';
  std::cout << "checks: " << r.checks.size() - r.failures() << "/" << r.checks.size() << " passed\n";
  for (const auto& c : r.checks) {
    std::cout << (c.pass ? "  pass  " : "  FAIL  ") << c.name;
    if (!c.pass) std::cout << "  (expected " << c.expected.dump() << ", got " << c.actual.dump() << ")";
    std::cout << '\n';
  }
  if (o.timing) std::cout << "time: " << r.seconds << " s\n";
  std::cout << "results:\n" << rounded(r.results).dump(2) << '\n';
}

int fail(int code, const char* kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"gerbeforge: gerbes, graded extensions and pointed fusion data of finite groups"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", o.seed, "seed for randomized steps")->capture_default_str();
  app.add_flag("--pretty", o.pretty, "human-readable output");
  app.add_flag("--timing", o.timing, "include wall time (reports then differ between runs)");

  auto* coh = app.add_subcommand("cohomology", "H^n(G, C^x) or H^n(G, mu_N)");
  coh->add_option("--group", o.group, "catalog:<name> <params>, a catalog name, or a JSON table")->required();
  coh->add_option("--degree", o.degree)->capture_default_str();
  coh->add_flag("--cx", o.cx, "C^x coefficients (default)");
  coh->add_option("--coeff", o.coeff, "N for mu_N coefficients");

  auto* ger = app.add_subcommand("gerbes", "gerbes on an action groupoid");
  ger->add_option("--group", o.group)->required();
  ger->add_option("--action", o.action, "trivial N | regular | cosets <subgroup> | JSON")->required();
  ger->add_option("--mode", o.mode, "count | decompose")->default_val("count");

  auto* ext = app.add_subcommand("extension", "group extensions and graded algebras");
  ext->add_option("mode", o.mode, "build | classify | center")->required();
  ext->add_option("--quotient", o.quotient);
  ext->add_option("--module", o.module, "invariant factors of A, trivial action")->capture_default_str();
  ext->add_option("--group", o.group);
  ext->add_option("--action", o.action);
  ext->add_option("--class", o.klass, "class coordinates, comma separated");
  ext->add_option("--dims", o.dims, "block sizes for center");

  auto* cli = app.add_subcommand("clifford", "Clifford data of a normal subgroup");
  cli->add_option("--group", o.group)->required();
  cli->add_option("--kernel", o.kernel, "center | whole | generated a,b | member list")->required();

  auto* fus = app.add_subcommand("fusion", "pointed fusion data");
  fus->add_option("mode", o.mode, "pentagon | phi-f | alpha | rep-ext")->required();
  fus->add_option("--group", o.group);
  fus->add_option("--kernel", o.kernel);
  fus->add_option("--quotient", o.quotient);
  fus->add_option("--module", o.module)->capture_default_str();
  fus->add_option("--class", o.klass);
  fus->add_flag("--column", o.column, "alpha on every relative class, with the exact row");

  auto* sym = app.add_subcommand("symmetry", "mixed cocycle pairs for Q and K");
  sym->add_option("--q", o.q)->required();
  sym->add_option("--k", o.k)->required();

  auto* bat = app.add_subcommand("battery", "a named acceptance battery, or all");
  bat->add_option("name", o.battery)->required();

  auto* cat = app.add_subcommand("catalog", "built-in groups and batteries");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Report r;
  std::vector<std::string> args(argv + 1, argv + argc);
  for (const auto& a : args) r.command += (r.command.empty() ? "" : " ") + a;
  r.seed = o.seed;
  try {
    const auto start = std::chrono::steady_clock::now();
    if (*coh) run_cohomology(o, r);
    else if (*ger) run_gerbes(o, r);
    else if (*ext) run_extension(o, r);
    else if (*cli) run_clifford(o, r);
    else if (*fus) run_fusion(o, r);
    else if (*sym) run_symmetry(o, r);
    else if (*bat) run_battery_command(o, r);
    else if (*cat) r.results = catalog_listing();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  } catch (const InvalidInput& e) {
    return fail(2, "invalid input", e.what());
  } catch (const CapExceeded& e) {
    return fail(3, "cap exceeded", e.what());
  } catch (const CheckFailed& e) {
    return fail(1, "check failed", e.what());
  } catch (const json::exception& e) {
    return fail(2, "invalid input", e.what());
  }
  print(r, o);
  return r.passed() ? 0 : 1;
}
