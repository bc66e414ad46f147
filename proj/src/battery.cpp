#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <tuple>

#include "gerbeforge/algebra.hpp"
#include "gerbeforge/character.hpp"
#include "gerbeforge/clifford.hpp"
#include "gerbeforge/errors.hpp"
#include "gerbeforge/fusion.hpp"
#include "gerbeforge/groupoid.hpp"
#include "gerbeforge/report.hpp"
#include "gerbeforge/symmetry.hpp"

namespace gerbeforge {

namespace {

using nlohmann::json;

/// Every action of Z/m on `points` points: powers of a permutation whose order divides m.
std::vector<GroupAction> cyclic_actions(int m, int points) {
  std::vector<GroupAction> out;
  std::vector<int> sigma(static_cast<std::size_t>(points));
  std::iota(sigma.begin(), sigma.end(), 0);
  const auto g = cyclic_group(m);
  do {
    std::vector<int> table, cur(static_cast<std::size_t>(points));
    std::iota(cur.begin(), cur.end(), 0);
    for (int k = 0; k < m; ++k) {
      table.insert(table.end(), cur.begin(), cur.end());
      for (auto& c : cur) c = sigma[static_cast<std::size_t>(c)];
    }
    bool closes = true;
    for (int x = 0; x < points; ++x) closes = closes && cur[static_cast<std::size_t>(x)] == x;
    if (closes) out.push_back(GroupAction::from_images(g, points, table));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

int first_of_order(const FiniteGroup& g, int n) {
  for (int x = 0; x < g.order(); ++x)
    if (g.element_order(x) == n) return x;
  throw InvalidInput("no element of the requested order");
}

/// The identity together with a conjugacy class of involutions of the given size.
SubgroupDatum involution_class_subgroup(const FiniteGroup& g, std::size_t class_size) {
  for (const auto& cls : g.classes())
    if (cls.size() == class_size && g.element_order(cls.front()) == 2) {
      std::vector<int> members = {0};
      members.insert(members.end(), cls.begin(), cls.end());
      return make_subgroup(g, members);
    }
  throw InvalidInput("no such involution class");
}

std::int64_t schur_order(const FiniteGroup& g) { return g.order() == 1 ? 1 : CxCohomology(g, 2).group().order(); }

struct ActionCase {
  std::string label;
  GroupAction action;
};

std::vector<ActionCase> bijection_cases() {
  const auto s3 = symmetric_group(3), v4 = abelian_group({2, 2}), d4 = dihedral_group(4), q8 = quaternion_group();
  const auto z2c = abelian_group({2, 2, 2}), z4 = cyclic_group(4);
  return {
      {"S3 on the cosets of a transposition", coset_action(s3, make_subgroup(s3, {0, 1}))},
      {"S3 regular", regular_action(s3)},
      {"S3 trivially on 2 points", GroupAction::trivial(s3, 2)},
      {"V4 regular", regular_action(v4)},
      {"V4 on a point", GroupAction::trivial(v4, 1)},
      {"V4 on the cosets of a line", coset_action(v4, make_subgroup(v4, {0, 1}))},
      {"D4 on the cosets of a reflection", coset_action(d4, make_subgroup(d4, {0, 4}))},
      {"D4 on the cosets of the rotations", coset_action(d4, make_subgroup(d4, {0, 1, 2, 3}))},
      {"Z4 through Z2 on 2 points", coset_action(z4, make_subgroup(z4, {0, 2}))},
      {"Q8 on the cosets of a cyclic subgroup of order 4", coset_action(q8, generated_subgroup(q8, {first_of_order(q8, 4)}))},
      {"(Z2)^3 on a point", GroupAction::trivial(z2c, 1)},
      {"(Z2)^3 on the cosets of a line", coset_action(z2c, make_subgroup(z2c, {0, 1}))},
  };
}

// ---- 1 ----

void theorem_bijection(Report& r) {
  json cases = json::array();
  const auto battery = bijection_cases();
  for (const auto& c : battery) {
    const auto& a = c.action;
    const auto bar = induced_cohomology(a, 2).group();
    const auto nerve = GroupoidCohomology(build_action_groupoid(a.group, a), 2).group();
    std::int64_t product = 1;
    json stabilizers = json::array();
    for (const auto& o : act_orbits(a)) {
      const auto order = schur_order(subgroup_group(o.stabilizer));
      stabilizers.push_back({{"representative", o.representative}, {"stabilizer_order", o.stabilizer.order()}, {"schur", order}});
      product *= order;
    }
    r.expect(c.label + ": |H^2(Q, O_X)| = |H^2(Q x| X)|", bar.order(), nerve.order());
    r.expect(c.label + ": |H^2(Q x| X)| = product over orbits", nerve.order(), product);
    cases.push_back({{"label", c.label},
                     {"group", a.group.name()},
                     {"points", a.set_size},
                     {"bar", bar.to_string()},
                     {"nerve", nerve.to_string()},
                     {"orbits", stabilizers}});
  }
  r.expect("battery size >= 8", true, battery.size() >= 8);
  r.results["cases"] = cases;
}

// ---- 2 ----

void cyclic_triviality(Report& r) {
  json per_m = json::array();
  for (int m : {2, 3, 4, 6}) {
    std::size_t actions = 0, trivial = 0;
    for (int points = 1; points <= 4; ++points)
      for (const auto& a : cyclic_actions(m, points)) {
        ++actions;
        trivial += GroupoidCohomology(build_action_groupoid(a.group, a), 2).group().trivial();
      }
    r.expect("Z/" + std::to_string(m) + ": every gerbe group on <= 4 points is trivial", actions, trivial);
    per_m.push_back({{"m", m}, {"actions", actions}, {"trivial", trivial}});
  }
  r.results["cyclic"] = per_m;
}

// ---- 3 ----

struct ZpSquared {
  ExtensionDatum group_extension;
  GradedAlgebraR algebra;
};

/// Z/p -> Z/p^2 -> Z/p as a Z/p-graded algebra over C[Z/p]: the twist at character j is j times the carry.
ZpSquared zp_squared(int p) {
  const auto zp = cyclic_group(p);
  const auto coeff = AbAction::trivial(zp, FinAbGroup({p}));
  Cochain carry(zp, coeff, 2);
  for (int a = 1; a < p; ++a)
    for (int b = 1; b < p; ++b) carry.set({a, b}, Vec64{a + b >= p ? 1 : 0});
  const auto band = GroupAction::trivial(zp, p);
  Cochain twist(zp, point_functions(band, p), 2);
  for (int a = 1; a < p; ++a)
    for (int b = 1; b < p; ++b) {
      Vec64 v(static_cast<std::size_t>(p));
      for (int j = 0; j < p; ++j) v[static_cast<std::size_t>(j)] = (a + b >= p ? j : 0) % p;
      twist.set({a, b}, v);
    }
  return {build_extension(zp, coeff, carry), build_graded_algebra(band, std::vector<int>(static_cast<std::size_t>(p), 1), twist)};
}

void zp2_extension(Report& r) {
  json out = json::array();
  for (int p : {2, 3}) {
    const auto z = zp_squared(p);
    const std::string tag = "p = " + std::to_string(p) + ": ";
    const auto& twist = z.algebra.cocycle;
    const bool cyclic = find_isomorphism(z.group_extension.total, cyclic_group(p * p)).has_value();
    const auto mu_class = GroupCohomology(twist.group(), twist.coeff(), 2).classify(twist);
    const auto gerbe = extension_to_gerbe(z.algebra);
    const auto centre = center_dimension(z.algebra.algebra);
    r.expect(tag + "the middle group is Z/p^2", true, cyclic);
    r.expect(tag + "R is strongly graded", true, z.algebra.is_strongly_graded());
    r.expect(tag + "the twist is nonzero with mu_p coefficients", true, std::any_of(mu_class.begin(), mu_class.end(), [](auto v) { return v != 0; }));
    r.expect(tag + "the extension class is trivial", true, gerbe.h2.is_zero(gerbe.coords));
    r.expect(tag + "center_dimension(R) = p^2", p * p, centre);
    out.push_back({{"p", p}, {"dim", z.algebra.algebra.dim}, {"center", centre}, {"gerbe", gerbe.to_json()}});
  }
  r.results["extensions"] = out;
}

// ---- 5 ----

std::size_t regular_total(const GerbeDatum& g) {
  std::size_t total = 0;
  for (const auto& e : g.orbit_decomposition)
    total += e.stabilizer_group.order() == 1 ? 1 : regular_class_count(CxCohomology(e.stabilizer_group, 2, g.rep_modulus).representative(e.coords));
  return total;
}

void center_oracle(Report& r) {
  std::vector<ActionCase> actions = bijection_cases();
  for (int m : {2, 3, 4, 6})
    for (int points = 1; points <= 4; ++points)
      for (const auto& a : cyclic_actions(m, points)) actions.push_back({"Z/" + std::to_string(m) + " on " + std::to_string(points), a});
  std::size_t algebras = 0, agree = 0;
  json failures = json::array();
  for (const auto& c : actions) {
    GerbeDecomposer dec(build_action_groupoid(c.action.group, c.action));
    for (const auto& cls : dec.cohomology().group().elements()) {
      const auto ext = gerbe_to_extension(dec.datum(cls));
      const auto centre = center_dimension(ext.algebra);
      const auto count = twisted_rep_count(dec, cls).total;
      ++algebras;
      if (centre == count) {
        ++agree;
      } else {
        failures.push_back({{"case", c.label}, {"class", cls}, {"center", centre}, {"twisted_reps", count}});
      }
    }
  }
  for (int p : {2, 3}) {
    const auto z = zp_squared(p);
    ++algebras;
    agree += center_dimension(z.algebra.algebra) == regular_total(extension_to_gerbe(z.algebra));
  }
  r.expect("center_dimension(R) = twisted_rep_count(gerbe(R)) on every constructed extension", algebras, agree);
  r.results["algebras"] = algebras;
  r.results["failures"] = failures;
}

// ---- 4 ----

void clifford_frules(Report& r, std::uint64_t seed) {
  const auto s3 = symmetric_group(3), d4 = dihedral_group(4), q8 = quaternion_group(), z4 = cyclic_group(4);
  const auto a4 = load_group("alt4"), s4 = symmetric_group(4);
  const std::vector<std::tuple<std::string, FiniteGroup, SubgroupDatum>> pairs = {
      {"S3 > A3", s3, make_subgroup(s3, {0, 3, 4})},
      {"D4 > rotations", d4, make_subgroup(d4, {0, 1, 2, 3})},
      {"D4 > center", d4, center(d4)},
      {"Q8 > center", q8, center(q8)},
      {"Z4 > Z2", z4, make_subgroup(z4, {0, 2})},
      {"A4 > V4", a4, involution_class_subgroup(a4, 3)},
      {"S4 > V4", s4, involution_class_subgroup(s4, 3)},
  };
  json out = json::array();
  for (const auto& [label, g, k] : pairs) {
    const auto cd = clifford_gerbe_extract(g, k, seed);
    const auto f = frules_check(cd);
    std::string line = std::to_string(f.irreps_of_g) + " =";
    for (std::size_t i = 0; i < f.per_orbit.size(); ++i) line += (i ? " + " : " ") + std::to_string(f.per_orbit[i]);
    r.expect(label + ": #Irr(G) = sum of regular class counts", f.irreps_of_g, f.total);
    r.expect(label + ": dimension multisets agree", true, f.dims_match);
    r.expect(label + ": every dimension prediction evaluated", true,
             std::all_of(f.dims_evaluated.begin(), f.dims_evaluated.end(), [](bool b) { return b; }));
    out.push_back({{"label", label}, {"count", line}, {"frules", f.to_json()}, {"intertwiner_defect", cd.intertwiner_defect}});
  }
  r.results["pairs"] = out;
}

// ---- 6 ----

void exact_diagram(Report& r, std::uint64_t seed) {
  const auto z4 = cyclic_group(4), v4 = abelian_group({2, 2}), d4 = dihedral_group(4), s3 = symmetric_group(3);
  const std::vector<std::tuple<std::string, FiniteGroup, SubgroupDatum>> pairs = {
      {"Z4 > Z2", z4, make_subgroup(z4, {0, 2})},
      {"V4 > Z2", v4, make_subgroup(v4, {0, 1})},
      {"D4 > Z4", d4, make_subgroup(d4, {0, 1, 2, 3})},
      {"S3 > A3", s3, make_subgroup(s3, {0, 3, 4})},
      {"D4 > V4 (alpha nonzero)", d4, make_subgroup(d4, {0, 2, 4, 6})},
  };
  json out = json::array();
  for (const auto& [label, g, k] : pairs) {
    const auto a = alpha_column(g, k, seed);
    const auto& row = a.row;
    r.expect(label + ": composites vanish", true, row.iota_after_res2_zero && row.pi_after_iota_zero && row.res3_after_pi_zero);
    r.expect(label + ": ker iota = im res2", true, row.exact_at_h2k);
    r.expect(label + ": ker pi = im iota", true, row.exact_at_rel);
    r.expect(label + ": im pi = ker res3", true, row.onto_ker_res3);
    r.expect(label + ": |H^3(G;K)| = |H^2(K)/im| |H^3_K(G)|", row.h3_rel.order(), row.coker_res2.order() * row.ker_res3.order());
    r.expect(label + ": alpha is a derivation on every class", true, a.derivations);
    r.expect(label + ": alpha is well defined and additive", true, a.well_defined && a.additive);
    r.expect(label + ": left square commutes", true, a.left_square);
    r.expect(label + ": right square commutes", true, a.right_square);
    json j = a.to_json();
    j["label"] = label;
    out.push_back(j);
  }
  r.results["pairs"] = out;
}

// ---- 7 ----

/// Every normalized 2-cocycle Q x Q -> A, by enumeration.
std::vector<Cochain> all_cocycles(const AbAction& band) {
  std::vector<Cochain> out;
  Cochain probe(band.group, band, 2);
  const auto elems = band.module.elements();
  std::vector<std::size_t> digits(probe.tuple_count(), 0);
  std::size_t total = 1;
  for (std::size_t t = 0; t < digits.size(); ++t) total *= elems.size();
  for (std::size_t i = 0; i < total; ++i) {
    Vec64 flat;
    for (auto d : digits) flat.insert(flat.end(), elems[d].begin(), elems[d].end());
    for (std::size_t t = 0; t < digits.size() && ++digits[t] == elems.size(); ++t) digits[t] = 0;
    Cochain f(band.group, band, 2);
    f.assign(std::move(flat));
    if (differential(f).is_zero()) out.push_back(std::move(f));
  }
  return out;
}

AbAction inversion_band(int n) { return AbAction{cyclic_group(2), FinAbGroup({n}), {Mat64{{1}}, Mat64{{n - 1}}}}; }

void phi_duality(Report& r, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto z2 = cyclic_group(2);
  const std::vector<std::pair<std::string, AbAction>> bands = {
      {"Z2 on Z2", AbAction::trivial(z2, FinAbGroup({2}))},
      {"Z2 on Z4", AbAction::trivial(z2, FinAbGroup({4}))},
      {"Z2 inverting Z4", inversion_band(4)},
      {"Z2 inverting Z3", inversion_band(3)},
      {"V4 on Z2", AbAction::trivial(abelian_group({2, 2}), FinAbGroup({2}))},
      {"Z3 on Z3", AbAction::trivial(cyclic_group(3), FinAbGroup({3}))},
  };
  json out = json::array();
  for (const auto& [label, band] : bands) {
    std::size_t closed = 0, stable = 0;
    const auto cocycles = all_cocycles(band);
    for (const auto& f : cocycles) {
      const auto d = phi_f_construct(band, f);
      closed += pentagon_check(d).holds;
      const auto moved = phi_f_construct(band, f + differential(random_cochain(band.group, band, 1, rng)));
      stable += is_cohomologous(d.omega, moved.omega).cohomologous;
    }
    r.expect(label + ": d phi_f = 0 for every cocycle f", cocycles.size(), closed);
    r.expect(label + ": [phi_f] depends only on [f]", cocycles.size(), stable);
    out.push_back({{"band", label}, {"cocycles", cocycles.size()}});
  }
  // the nonsplit extension Z/2 -> Z/4 -> Z/2
  const auto band = AbAction::trivial(z2, FinAbGroup({2}));
  Cochain eta(z2, band, 2);
  eta.set({1, 1}, Vec64{1});
  const auto ext = build_extension(z2, band, eta);
  const auto phi = phi_f_construct(ext);
  r.expect("G = Z/4", true, find_isomorphism(ext.total, cyclic_group(4)).has_value());
  r.expect("Z/4: [phi_f] is nontrivial", false, CxCohomology(phi.group, 3, phi.omega.modulus()).is_trivial(phi.omega));
  r.results["bands"] = out;
  r.results["z4"] = phi.to_json();
}

// ---- 8 ----

bool is_cyclic4(const FiniteGroup& g) { return find_isomorphism(g, cyclic_group(4)).has_value(); }

bool twisted(const PointedFusionDatum& d) { return !CxCohomology(d.group, 3, std::max<std::int64_t>(d.omega.modulus(), 2)).is_trivial(d.omega); }

void complete_duality(Report& r, std::uint64_t seed) {
  const auto z2 = cyclic_group(2);
  const auto band = AbAction::trivial(z2, FinAbGroup({2}));
  const DualGroup dual = dual_group(band);
  auto over_z2 = [&](std::int64_t x) {
    Cochain eta(z2, band, 2);
    eta.set({1, 1}, Vec64{x});
    return build_extension(z2, band, eta);
  };
  auto ell_z2 = [&](std::int64_t x) {
    Cochain ell(z2, dual.left_action, 2);
    ell.set({1, 1}, Vec64{x});
    return ell;
  };
  struct Case {
    std::int64_t eta, ell;
    bool primal_cyclic, dual_cyclic, primal_twisted, dual_twisted;
  };
  json combos = json::array();
  // split-with-twist pairs with nonsplit-untwisted; Z/4 pairs with itself through nontrivial data
  for (const auto& cs : {Case{0, 0, false, false, false, false}, Case{1, 0, true, false, false, true},
                         Case{0, 1, false, true, true, false}, Case{1, 1, true, true, true, true}}) {
    const std::string tag = "Z2/Z2 eta=" + std::to_string(cs.eta) + " ell=" + std::to_string(cs.ell) + ": ";
    const auto ext = over_z2(cs.eta);
    const auto ell = ell_z2(cs.ell);
    const auto c = solve_associator(ext, dual, ell);
    if (!r.expect(tag + "associator solvable", true, c.has_value())) continue;
    const auto res = build_rep_extension(ext, ell, *c);
    if (!r.expect(tag + "build succeeds", true, res.datum.has_value())) continue;
    const auto& d = *res.datum;
    r.expect(tag + "primal base is Z/4", cs.primal_cyclic, is_cyclic4(d.primal.group));
    r.expect(tag + "dual base is Z/4", cs.dual_cyclic, is_cyclic4(d.dual_datum.group));
    r.expect(tag + "primal associator twisted", cs.primal_twisted, twisted(d.primal));
    r.expect(tag + "dual associator twisted", cs.dual_twisted, twisted(d.dual_datum));
    const auto once = dual_rep_extension(d);
    const auto twice = once.datum ? dual_rep_extension(*once.datum) : RepExtensionResult{};
    bool back = twice.datum.has_value();
    if (back) {
      const auto& t = *twice.datum;
      back = t.base.eta.values() == ext.eta.values() && t.ell.values() == ell.values() &&
             t.primal.group.table() == d.primal.group.table() &&
             is_cohomologous(t.primal.omega, rescale(d.primal.omega, t.primal.omega.modulus())).cohomologous;
    }
    r.expect(tag + "dual of the dual is the original", true, back);
    combos.push_back(d.to_json());
  }
  std::size_t agree = 0, total = 0;
  for (std::int64_t e = 0; e < 2; ++e)
    for (std::int64_t l = 0; l < 2; ++l)
      for (std::int64_t x = 0; x < 4; ++x) {
        const auto ext = over_z2(e);
        const auto ell = ell_z2(l);
        Cochain c(z2, roots_of_unity(z2, 4), 3);
        c.set({1, 1, 1}, Vec64{x});
        const bool expected = differential(c) == rescale(cup_pairing(dual, ell, ext.eta), 4);
        ++total;
        agree += build_rep_extension(ext, ell, c).datum.has_value() == expected;
      }
  r.expect("Z2/Z2: build succeeds exactly on constraint-satisfying (ell, c)", total, agree);

  // Q = Z2 x Z2, A = Z2: every third eta, six (ell, c) trials each
  const auto v4 = abelian_group({2, 2});
  const auto vband = AbAction::trivial(v4, FinAbGroup({2}));
  const DualGroup vdual = dual_group(vband);
  const auto etas = all_cocycles(vband);
  const auto ells = all_cocycles(vdual.left_action);
  std::mt19937_64 rng(seed);
  std::size_t trials = 0, predicted = 0, built = 0, objects = 0, scalars = 0, returned = 0;
  for (std::size_t i = 0; i < etas.size(); i += 3) {
    const auto ext = build_extension(v4, vband, etas[i]);
    for (int trial = 0; trial < 6; ++trial) {
      const auto ell = trial < 4 ? ells[static_cast<std::size_t>(uniform_below(rng, static_cast<std::int64_t>(ells.size())))]
                                 : random_cochain(v4, vdual.left_action, 2, rng);
      const bool closed = differential(ell).is_zero();
      const auto solved = closed ? solve_associator(ext, vdual, ell) : std::nullopt;
      Cochain c = solved ? *solved : Cochain(v4, roots_of_unity(v4, 8), 3);
      if (trial == 1 && solved) c = c + differential(random_cochain(v4, c.coeff(), 2, rng));
      if (trial == 2) c = c + random_cochain(v4, c.coeff(), 3, rng);
      const bool expected = closed && differential(c) == rescale(cup_pairing(vdual, ell, ext.eta), c.modulus());
      const auto res = build_rep_extension(ext, ell, c);
      ++trials;
      predicted += res.datum.has_value() == expected;
      if (res.datum) {
        ++built;
        const auto once = dual_rep_extension(*res.datum);
        const auto twice = once.datum ? dual_rep_extension(*once.datum) : RepExtensionResult{};
        if (twice.datum) {
          CxCohomology hp(ext.total, 3, twice.datum->primal.omega.modulus() * res.datum->primal.omega.modulus());
          returned += hp.same_class(twice.datum->primal.omega, res.datum->primal.omega);
        }
      } else if (res.failed_stage == "objects") {
        ++objects;
      } else if (res.failed_stage == "scalars") {
        ++scalars;
      }
    }
  }
  r.expect("V4/Z2: build succeeds exactly on constraint-satisfying (ell, c)", trials, predicted);
  r.expect("V4/Z2: dual of the dual returns the original class", built, returned);
  r.expect("V4/Z2: the battery reaches all three outcomes", true, built > 0 && objects > 0 && scalars > 0);
  r.results["z2_combinations"] = combos;
  r.results["v4_partial"] = {{"trials", trials}, {"built", built}, {"object_failures", objects}, {"scalar_failures", scalars}};
}

// ---- 9 ----

void symmetry_transpose(Report& r) {
  const auto z2 = cyclic_group(2), z3 = cyclic_group(3), z4 = cyclic_group(4), v4 = abelian_group({2, 2});
  const std::vector<std::pair<FiniteGroup, FiniteGroup>> pairs = {{z2, z2}, {z2, z4}, {z4, z2}, {z2, v4},
                                                                  {v4, z2}, {z3, z3}, {z2, symmetric_group(3)}};
  json out = json::array();
  for (const auto& [q, k] : pairs) {
    const std::string tag = "(" + q.name() + ", " + k.name() + "): ";
    MixedCohomology here(q, k), there(k, q);
    std::set<Vec64> images;
    bool inverse = true, solutions = true;
    for (const auto& cls : here.group().elements()) {
      const auto t = transpose_pair(here.representative(cls));
      solutions = solutions && satisfies_conditions(t);
      images.insert(there.classify(t));
      inverse = inverse && here.classify(transpose_pair(t)) == cls;
    }
    r.expect(tag + "transpose lands on solutions", true, solutions);
    r.expect(tag + "transpose is a bijection on classes", here.group().order(), static_cast<std::int64_t>(images.size()));
    r.expect(tag + "transposing twice is the identity on classes", true, inverse);
    out.push_back({{"q", q.name()}, {"k", k.name()}, {"classes", here.group().to_string()}});
  }
  json cyclic = json::array();
  for (int m = 1; m <= 6; ++m)
    for (int n = 1; n <= 6; ++n) {
      const auto q = cyclic_group(m), k = cyclic_group(n);
      auto h2 = [](const FiniteGroup& g, int coeff) {
        return g.order() == 1 || coeff == 1 ? std::int64_t{1} : GroupCohomology(g, AbAction::trivial(g, FinAbGroup({coeff})), 2).group().order();
      };
      const auto qk = h2(q, n), kq = h2(k, m);
      const auto count = static_cast<std::int64_t>(solve_mixed_cocycles(q, k).size());
      const std::string tag = "(Z" + std::to_string(m) + ", Z" + std::to_string(n) + "): ";
      r.expect(tag + "|H^2(Q, K*)| = |H^2(K, Q*)|", qk, kq);
      r.expect(tag + "solution classes = |H^2(Q, K*)|", qk, count);
      cyclic.push_back({{"m", m}, {"n", n}, {"h2_q_kdual", qk}, {"h2_k_qdual", kq}, {"classes", count}});
    }
  r.results["pairs"] = out;
  r.results["cyclic"] = cyclic;
}

// ---- 10 ----

bool diagonal_chain(const IntMatrix& d) {
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && d.at(i, j) != 0) return false;
  const std::size_t n = std::min(d.rows(), d.cols());
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (d.at(i, i) < 0) return false;
    if (d.at(i, i) == 0) {
      if (d.at(i + 1, i + 1) != 0) return false;
    } else if (d.at(i + 1, i + 1) % d.at(i, i) != 0) {
      return false;
    }
  }
  return true;
}

/// |H^n(G, mu_N)| by enumerating every normalized cochain of degrees n and n-1.
std::int64_t brute_force_order(const FiniteGroup& g, std::int64_t modulus, int n) {
  const auto mu = roots_of_unity(g, modulus);
  auto visit = [&](int degree, const std::function<void(const Cochain&)>& f) {
    Cochain c(g, mu, degree);
    Vec64 digits(c.values().size(), 0);
    while (true) {
      c.assign(digits);
      f(c);
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == modulus) digits[i++] = 0;
      if (i == digits.size()) break;
    }
  };
  std::int64_t cocycles = 0;
  visit(n, [&](const Cochain& c) { cocycles += differential(c).is_zero(); });
  std::set<Vec64> boundaries;
  visit(n - 1, [&](const Cochain& b) { boundaries.insert(differential(b).values()); });
  return cocycles / static_cast<std::int64_t>(boundaries.size());
}

void engine_self_checks(Report& r, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // d^2 = 0
  const auto z2 = cyclic_group(2);
  const std::vector<std::pair<std::string, AbAction>> modules = {
      {"Z4 on mu_4", roots_of_unity(cyclic_group(4), 4)},
      {"S3 on mu_6", roots_of_unity(symmetric_group(3), 6)},
      {"D4 on mu_8", roots_of_unity(dihedral_group(4), 8)},
      {"Q8 on mu_8", roots_of_unity(quaternion_group(), 8)},
      {"Z2 inverting Z3", AbAction{z2, FinAbGroup({3}), {Mat64{{1}}, Mat64{{2}}}}},
      {"Z2 swapping Z2 x Z2", AbAction{z2, FinAbGroup({2, 2}), {Mat64{{1, 0}, {0, 1}}, Mat64{{0, 1}, {1, 0}}}}},
  };
  for (const auto& [label, coeff] : modules)
    for (int n = 0; n <= 2; ++n) {
      int zero = 0;
      for (int t = 0; t < 100; ++t) zero += differential(differential(random_cochain(coeff.group, coeff, n, rng))).is_zero();
      r.expect(label + ", degree " + std::to_string(n) + ": d^2 = 0 on 100 random cochains", 100, zero);
    }

  // Smith normal form
  int smith_ok = 0;
  const int smith_trials = 12;
  for (int t = 0; t < smith_trials; ++t) {
    const auto rows = static_cast<std::size_t>(1 + uniform_below(rng, 30)), cols = static_cast<std::size_t>(1 + uniform_below(rng, 30));
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = static_cast<long>(uniform_below(rng, 19) - 9);
    const auto s = smith_normal_form(m);
    smith_ok += s.U * m * s.V == s.D && diagonal_chain(s.D) && s.U * s.U_inverse == IntMatrix::identity(rows) &&
                s.V * s.V_inverse == IntMatrix::identity(cols);
  }
  r.expect("Smith form round trip on random matrices", smith_trials, smith_ok);

  // Schur multipliers three ways
  json schur = json::array();
  for (const char* spec : {"cyclic 2", "cyclic 3", "cyclic 4", "abelian 2 2", "cyclic 5", "cyclic 6", "sym 3", "cyclic 7",
                           "cyclic 8", "abelian 2 4", "elementary-abelian 2 3", "dihedral 4", "quaternion8"}) {
    const auto g = load_group(spec);
    Integer integral = 1;
    for (const auto& f : integral_cohomology_factors(g, 2)) integral *= f;
    const std::int64_t n = g.order();
    const auto mu = roots_of_unity(g, n);
    // 1 -> mu_N -> C^x -> C^x -> 1 with N = |G|: |H^2(C^x)| = |H^2(mu_N)| / |H^1(mu_N)|
    const std::int64_t via_mu = GroupCohomology(g, mu, 2).group().order() / GroupCohomology(g, mu, 1).group().order();
    const std::int64_t cx = CxCohomology(g, 2).group().order();
    const auto integral_order = integral.get_si();
    r.expect(std::string(spec) + ": integral shift = C^x model", integral_order, cx);
    r.expect(std::string(spec) + ": integral shift = mu_N quotient", integral_order, via_mu);
    json entry = {{"group", spec}, {"integral", integral_order}, {"cx", cx}, {"mu_n", via_mu}};
    if (n <= 4) {
      const std::int64_t brute = brute_force_order(g, n, 2) / brute_force_order(g, n, 1);
      r.expect(std::string(spec) + ": integral shift = brute-force enumeration", integral_order, brute);
      entry["brute_force"] = brute;
    }
    schur.push_back(entry);
  }

  // character tables and irreps
  json tables = json::array();
  for (const char* spec : {"cyclic 5", "sym 3", "dihedral 4", "quaternion8", "alt4", "sym 4", "dihedral 6", "heisenberg 3",
                           "elementary-abelian 2 3"}) {
    const auto g = load_group(spec);
    const auto table = character_table(g);
    const auto irreps = irrep_matrices(table, seed);
    r.expect(std::string(spec) + ": exact orthogonality", true, table.orthogonal());
    r.expect(std::string(spec) + ": homomorphism defect <= 1e-9", true, irreps.homomorphism_defect <= IrrepMatrices::tolerance);
    tables.push_back({{"group", spec}, {"irreps", table.dims.size()}, {"homomorphism_defect", irreps.homomorphism_defect}});
  }

  // seeded determinism
  const auto d4 = dihedral_group(4);
  const auto once = rounded(clifford_gerbe_extract(d4, center(d4), seed).to_json()).dump();
  const auto again = rounded(clifford_gerbe_extract(d4, center(d4), seed).to_json()).dump();
  r.expect("identical seeds give identical bytes", true, once == again);

  r.results["schur"] = schur;
  r.results["tables"] = tables;
}

using Runner = std::function<void(Report&, std::uint64_t)>;

const std::vector<std::pair<BatteryInfo, Runner>>& table() {
  static const std::vector<std::pair<BatteryInfo, Runner>> t = {
      {{"center-oracle", 5, "center dimension of each constructed R against twisted representation counts"},
       [](Report& r, std::uint64_t) { center_oracle(r); }},
      {{"clifford-frules", 4, "irreducible counts and dimensions of G from the orbit data over K"}, clifford_frules},
      {{"complete-duality", 8, "rep-extension data over abelian A, their duals and double duals"}, complete_duality},
      {{"cyclic-triviality", 2, "gerbes over cyclic groups are trivial"}, [](Report& r, std::uint64_t) { cyclic_triviality(r); }},
      {{"engine-self-checks", 10, "d^2 = 0, Smith forms, Schur multipliers, character tables, determinism"}, engine_self_checks},
      {{"exact-diagram", 6, "the middle row H^2(K)/im -> H^3(G;K) -> H^3_K(G) and the alpha column"}, exact_diagram},
      {{"phi-duality", 7, "the 3-cocycle phi_f of an abelian extension"}, phi_duality},
      {{"symmetry-transpose", 9, "mixed cocycle pairs for Q and K, transposed"}, [](Report& r, std::uint64_t) { symmetry_transpose(r); }},
      {{"theorem-bijection", 1, "three computations of the gerbe group of an action"}, [](Report& r, std::uint64_t) { theorem_bijection(r); }},
      {{"zp2-extension", 3, "Z/p -> Z/p^2 -> Z/p as a graded algebra"}, [](Report& r, std::uint64_t) { zp2_extension(r); }},
  };
  return t;
}

}  // namespace

const std::vector<BatteryInfo>& batteries() {
  static const std::vector<BatteryInfo> out = [] {
    std::vector<BatteryInfo> v;
    for (const auto& [info, run] : table()) v.push_back(info);
    return v;
  }();
  return out;
}

Report run_battery(const std::string& name, std::uint64_t seed) {
  for (const auto& [info, run] : table()) {
    if (info.name != name) continue;
    Report r;
    r.command = "battery " + name;
    r.seed = seed;
    r.inputs = {{"battery", name}, {"seed", seed}};
    r.results["criterion"] = info.criterion;
    const auto start = std::chrono::steady_clock::now();
    run(r, seed);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  }
  throw InvalidInput("unknown battery '" + name + "'");
}

}  // namespace gerbeforge
