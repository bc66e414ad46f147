#include "gerbeforge/fusion.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "gerbeforge/errors.hpp"
#include "gerbeforge/limits.hpp"

namespace gerbeforge {

using kernels::mod;

namespace {

std::int64_t scalar_value(const Cochain& c, std::initializer_list<int> tuple) {
  return c.rank() == 0 ? 0 : c.at(std::span<const int>(tuple.begin(), tuple.size()), 0);
}

bool is_scalar(const Cochain& c) { return c.rank() <= 1 && c.coeff().is_trivial(); }

bool same_coefficients(const AbAction& a, const AbAction& b) {
  return a.group.same_table(b.group) && a.module.factors() == b.module.factors() && a.matrices == b.matrices;
}

std::int64_t modulus_of(const Cochain& c) { return std::max<std::int64_t>(c.modulus(), 1); }

/// d omega at (g1, g2, g3, g4) for a scalar 3-cochain with trivial action.
std::int64_t coboundary_at(const FiniteGroup& g, const Cochain& w, int a, int b, int c, int d) {
  return scalar_value(w, {b, c, d}) - scalar_value(w, {g.mul(a, b), c, d}) + scalar_value(w, {a, g.mul(b, c), d}) -
         scalar_value(w, {a, b, g.mul(c, d)}) + scalar_value(w, {a, b, c});
}

Cochain zero_scalar(const FiniteGroup& g, std::int64_t modulus, int degree) {
  return Cochain(g, roots_of_unity(g, std::max<std::int64_t>(modulus, 2)), degree);
}

}  // namespace

PointedFusionDatum pointed_datum(const FiniteGroup& g, const Cochain& omega) {
  if (omega.degree() != 3 || !is_scalar(omega) || !omega.group().same_table(g))
    throw InvalidInput("associator must be a scalar 3-cochain on the group");
  return {g, omega, std::nullopt};
}

PointedFusionDatum graded_datum(const FiniteGroup& g, const Cochain& omega, const SubgroupDatum& k) {
  auto d = pointed_datum(g, omega);
  if (!k.parent.same_table(g) || !k.is_normal) throw InvalidInput("grading needs a normal subgroup");
  d.grading = Grading{k, quotient_with_section(g, k)};
  return d;
}

nlohmann::json PointedFusionDatum::to_json() const {
  nlohmann::json j;
  j["group"] = group.name();
  j["order"] = group.order();
  j["omega"] = omega.to_json();
  if (grading) {
    j["identity_component"] = grading->identity_component.members;
    j["quotient_order"] = grading->quotient.quotient.order();
  }
  return j;
}

PentagonReport pentagon_check_reference(const PointedFusionDatum& d) {
  const FiniteGroup& g = d.group;
  const int n = g.order();
  const std::int64_t m = modulus_of(d.omega);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int e = 0; e < n; ++e)
          if (mod(coboundary_at(g, d.omega, a, b, c, e), m) != 0) return {false, {a, b, c, e}};
  return {};
}

PentagonReport pentagon_check(const PointedFusionDatum& d, Execution exec) {
  if (exec == Execution::serial) return pentagon_check_reference(d);
  const FiniteGroup& g = d.group;
  const int n = g.order();
  const std::int64_t m = modulus_of(d.omega);
  // first failing tuple per leading element, then the least overall
  std::vector<long long> first(static_cast<std::size_t>(n), -1);
#pragma omp parallel for schedule(dynamic)
  for (int a = 0; a < n; ++a) {
    for (long long rest = 0; rest < static_cast<long long>(n) * n * n; ++rest) {
      const int b = static_cast<int>(rest / (n * n)), c = static_cast<int>(rest / n % n), e = static_cast<int>(rest % n);
      if (mod(coboundary_at(g, d.omega, a, b, c, e), m) != 0) {
        first[static_cast<std::size_t>(a)] = rest;
        break;
      }
    }
  }
  for (int a = 0; a < n; ++a) {
    const long long rest = first[static_cast<std::size_t>(a)];
    if (rest >= 0) return {false, {a, static_cast<int>(rest / (n * n)), static_cast<int>(rest / n % n), static_cast<int>(rest % n)}};
  }
  return {};
}

EmbeddingResult embed_vec_k(const PointedFusionDatum& d, const SubgroupDatum& k) {
  if (!k.parent.same_table(d.group)) throw InvalidInput("subgroup of another group");
  const FiniteGroup kg = subgroup_group(k);
  const std::int64_t m = std::max<std::int64_t>(modulus_of(d.omega), 2);
  Cochain restricted = pullback(rescale(d.omega, m), inclusion_hom(k), roots_of_unity(kg, m));
  EmbeddingResult out;
  if (kg.order() == 1) {
    out.embedding = EmbeddingDatum{k, kg, restricted, zero_scalar(kg, m, 2)};
    return out;
  }
  CxCohomology h(kg, 3, std::lcm<std::int64_t>(kg.order(), m));
  out.h3 = h.group();
  out.obstruction = h.classify(restricted);
  if (!out.h3.is_zero(out.obstruction)) return out;
  auto prim = h.divisible().trivialize(restricted.values(), m);
  if (!prim) throw CheckFailed("trivial class without a primitive");
  const std::int64_t big = h.modulus() * h.divisible().headroom();
  Cochain eta(kg, roots_of_unity(kg, big), 2);
  eta.assign(*prim);
  EmbeddingDatum e{k, kg, rescale(restricted, big), eta};
  if (!e.identity_holds()) throw CheckFailed("d eta differs from omega restricted to K");
  out.embedding = std::move(e);
  return out;
}

PointedFusionDatum phi_f_construct(const AbAction& band, const Cochain& f) {
  if (f.degree() != 2 || !same_coefficients(f.coeff(), band)) throw InvalidInput("f must be a 2-cochain with values in the band");
  if (!differential(f).is_zero()) throw InvalidInput("f is not a cocycle");
  const FiniteGroup& q = band.group;
  const DualGroup dual = dual_group(band);
  auto sd = build_extension(q, dual.left_action, Cochain(q, dual.left_action, 2));
  const int na = static_cast<int>(band.module.order());
  const std::int64_t m = dual.modulus;
  const std::int64_t n = std::max<std::int64_t>(std::lcm<std::int64_t>(sd.total.order(), m), 2);
  const auto chars = dual.group.elements();
  Cochain omega = scalar_cochain(sd.total, n, 3, [&](const std::vector<int>& t) {
    const int q1 = t[0] / na, q2 = t[1] / na, q3 = t[2] / na;
    const int pair[2] = {q2, q3};
    return dual.pair(chars[static_cast<std::size_t>(t[0] % na)], band.act(q1, f.at(pair))) * (n / m);
  });
  if (!differential(omega).is_zero()) throw CheckFailed("phi_f is not a 3-cocycle");
  return graded_datum(sd.total, omega, sd.kernel());
}

PointedFusionDatum phi_f_construct(const ExtensionDatum& ext) { return phi_f_construct(ext.band, extract_cocycle(ext)); }

// ---- conjugation twists ----

nlohmann::json AlphaReport::to_json() const {
  nlohmann::json j;
  j["h2_of_component"] = h2_k.factors();
  j["classes"] = classes;
  j["cocycles"] = cocycles;
  j["derivation"] = derivation;
  j["twisted"] = twisted;
  return j;
}

AlphaReport conjugation_cocycle_alpha(const PointedFusionDatum& d) {
  if (!d.grading) throw InvalidInput("the conjugation map needs a grading");
  auto emb = embed_vec_k(d, d.grading->identity_component);
  if (!emb.embedding) throw InvalidInput("omega restricted to the identity component is not trivial");
  return conjugation_cocycle_alpha(d, emb.embedding->eta);
}

AlphaReport conjugation_cocycle_alpha(const PointedFusionDatum& d, const Cochain& trivialization) {
  if (!d.grading) throw InvalidInput("the conjugation map needs a grading");
  const FiniteGroup& g = d.group;
  const SubgroupDatum& k = d.grading->identity_component;
  const QuotientData& qd = d.grading->quotient;
  const FiniteGroup kg = subgroup_group(k);
  if (!trivialization.group().same_table(kg) || trivialization.degree() != 2)
    throw InvalidInput("trivialization must be a 2-cochain on the identity component");
  const std::int64_t big = std::max<std::int64_t>(std::lcm(modulus_of(trivialization), modulus_of(d.omega)), 2);
  const Cochain eta = rescale(trivialization, big);
  if (differential(eta) != pullback(rescale(d.omega, big), inclusion_hom(k), roots_of_unity(kg, big)))
    throw InvalidInput("trivialization does not bound omega on the identity component");
  const Cochain w = rescale(d.omega, big);
  const int nk = kg.order(), nq = qd.quotient.order();

  AlphaReport r;
  r.cocycles = true;
  for (int q = 0; q < nq; ++q) {
    const int s = g.inv(qd.section[static_cast<std::size_t>(q)]);  // c_g at g = s(q)^-1 makes q -> [c] a left derivation
    Cochain c = zero_scalar(kg, big, 2);
    for (std::size_t t = 0; t < c.tuple_count(); ++t) {
      auto hh = c.tuple_at(t);
      const int h = k.members[static_cast<std::size_t>(hh[0])], h2 = k.members[static_cast<std::size_t>(hh[1])];
      const int ch = g.conj(s, h), ch2 = g.conj(s, h2);
      const std::int64_t raw = scalar_value(w, {s, h, h2}) + scalar_value(w, {ch, ch2, s}) - scalar_value(w, {ch, s, h2});
      const std::int64_t shift = scalar_value(eta, {k.index_of(ch), k.index_of(ch2)}) - scalar_value(eta, {hh[0], hh[1]});
      c.set(hh, Vec64{mod(raw + shift, big)});
    }
    if (!differential(c).is_zero()) {
      r.cocycles = false;
      throw CheckFailed("conjugation cochain for quotient element " + std::to_string(q) + " is not a cocycle");
    }
    r.cochains.push_back(std::move(c));
  }
  if (nk == 1) {
    r.classes.assign(static_cast<std::size_t>(nq), Vec64{});
    r.twisted.assign(static_cast<std::size_t>(nq), false);
    r.derivation = true;
    return r;
  }
  CxCohomology h(kg, 2, std::lcm<std::int64_t>(nk, big));
  r.h2_k = h.group();
  for (const auto& c : r.cochains) {
    r.classes.push_back(h.classify(c));
    r.twisted.push_back(!r.h2_k.is_zero(r.classes.back()));
  }
  // (q.phi)(h, h') = phi(s^-1 h s, s^-1 h' s)
  auto act = [&](int q, const Vec64& cls) {
    const int s = qd.section[static_cast<std::size_t>(q)];
    const Cochain rep = h.representative(cls);
    Cochain moved(kg, rep.coeff(), 2);
    for (std::size_t t = 0; t < moved.tuple_count(); ++t) {
      auto hh = moved.tuple_at(t);
      const int a = k.index_of(g.conj(g.inv(s), k.members[static_cast<std::size_t>(hh[0])]));
      const int b = k.index_of(g.conj(g.inv(s), k.members[static_cast<std::size_t>(hh[1])]));
      moved.set(hh, rep.at({a, b}));
    }
    return h.classify(moved);
  };
  r.derivation = true;
  for (int a = 0; a < nq && r.derivation; ++a)
    for (int b = 0; b < nq; ++b) {
      const Vec64 lhs = r.classes[static_cast<std::size_t>(qd.quotient.mul(a, b))];
      const Vec64 rhs = r.h2_k.add(r.classes[static_cast<std::size_t>(a)], act(a, r.classes[static_cast<std::size_t>(b)]));
      if (lhs != rhs) {
        r.derivation = false;
        break;
      }
    }
  return r;
}

namespace {

/// (q.beta)(h, h') = beta(s^-1 h s, s^-1 h' s), s = s(q).
Cochain conjugate_on_k(const QuotientData& qd, const SubgroupDatum& k, const Cochain& beta, int q) {
  const FiniteGroup& g = k.parent;
  const int s = qd.section[static_cast<std::size_t>(q)];
  Cochain moved(beta.group(), beta.coeff(), 2);
  for (std::size_t t = 0; t < moved.tuple_count(); ++t) {
    auto hh = moved.tuple_at(t);
    const int a = k.index_of(g.conj(g.inv(s), k.members[static_cast<std::size_t>(hh[0])]));
    const int b = k.index_of(g.conj(g.inv(s), k.members[static_cast<std::size_t>(hh[1])]));
    moved.set(hh, beta.at({a, b}));
  }
  return moved;
}

}  // namespace

nlohmann::json AlphaColumnReport::to_json() const {
  return {{"h2_g", row.h2_g.to_string()},
          {"h2_k", row.h2_k.to_string()},
          {"h3_relative", row.h3_rel.to_string()},
          {"h3_g", row.h3_g.to_string()},
          {"h3_k", row.h3_k.to_string()},
          {"coker_res2", row.coker_res2.to_string()},
          {"ker_res3", row.ker_res3.to_string()},
          {"row_exact", row.all()},
          {"alpha", alpha},
          {"principal_derivations", principal},
          {"derivations", derivations},
          {"well_defined", well_defined},
          {"additive", additive},
          {"left_square", left_square},
          {"right_square", right_square}};
}

AlphaColumnReport alpha_column(const FiniteGroup& g, const SubgroupDatum& k, std::uint64_t seed) {
  AlphaColumnReport out;
  out.row = relative_der_complex(g, k);
  const RelativeComplex cx(g, k);
  const RelativeCohomology rel(cx, 3);
  const std::int64_t m = rel.modulus();
  const FiniteGroup& kg = cx.subgroup();
  const QuotientData qd = quotient_with_section(g, k);
  const int nq = qd.quotient.order();
  const ModMatrix d2 = cx.differential(2, m);
  std::mt19937_64 rng(seed);

  auto alpha_at = [&](const Vec64& x) {
    return conjugation_cocycle_alpha(graded_datum(g, cx.alpha_part(x, 3, m), k), cx.beta_part(x, 3, m));
  };
  const auto elems = rel.group().elements();
  std::vector<AlphaReport> plain, moved, from_omega;
  for (const auto& cls : elems) {
    const Vec64 x = rel.divisible().representative(cls);
    plain.push_back(alpha_at(x));
    Vec64 y(cx.dimension(2));
    for (auto& v : y) v = uniform_below(rng, m);
    const Vec64 dy = d2.apply(y);
    Vec64 shifted(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) shifted[i] = mod(x[i] + dy[i], m);
    moved.push_back(alpha_at(shifted));
    from_omega.push_back(conjugation_cocycle_alpha(graded_datum(g, cx.alpha_part(x, 3, m), k)));
  }
  out.derivations = true;
  for (const auto* reports : {&plain, &moved, &from_omega})
    for (const auto& r : *reports) out.derivations = out.derivations && r.derivation;

  if (kg.order() == 1) {
    out.alpha.assign(elems.size(), std::vector<Vec64>(static_cast<std::size_t>(nq)));
    out.principal = 1;
    out.well_defined = out.additive = out.left_square = out.right_square = true;
    return out;
  }

  // one classifier for every cochain, so that coordinates are comparable
  std::int64_t big = kg.order();
  for (const auto* reports : {&plain, &moved, &from_omega})
    for (const auto& r : *reports)
      for (const auto& c : r.cochains) big = std::lcm(big, modulus_of(c));
  CxCohomology h(kg, 2, big);
  out.h2_k = h.group();
  auto classes = [&](const AlphaReport& r) {
    std::vector<Vec64> v;
    for (const auto& c : r.cochains) v.push_back(h.classify(c));
    return v;
  };
  auto minus = [&](const std::vector<Vec64>& a, const std::vector<Vec64>& b) {
    std::vector<Vec64> d;
    for (std::size_t i = 0; i < a.size(); ++i) d.push_back(out.h2_k.add(a[i], out.h2_k.neg(b[i])));
    return d;
  };

  std::set<std::vector<Vec64>> principal;
  out.left_square = true;
  const Cochain zero_omega(g, roots_of_unity(g, big), 3);
  for (const auto& b : out.h2_k.elements()) {
    const Cochain beta = h.representative(b);
    std::vector<Vec64> p;
    for (int q = 0; q < nq; ++q) p.push_back(h.classify(conjugate_on_k(qd, k, beta, q) - beta));
    // (0, beta) represents iota(beta)
    out.left_square = out.left_square && classes(conjugation_cocycle_alpha(graded_datum(g, zero_omega, k), beta)) == p;
    principal.insert(std::move(p));
  }
  out.principal = principal.size();

  out.well_defined = out.right_square = true;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    out.alpha.push_back(classes(plain[i]));
    out.well_defined = out.well_defined && classes(moved[i]) == out.alpha.back();
    out.right_square = out.right_square && principal.count(minus(out.alpha.back(), classes(from_omega[i])));
  }
  out.additive = true;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j) {
      const auto sum = static_cast<std::size_t>(rel.group().index_of(rel.group().add(elems[i], elems[j])));
      out.additive = out.additive && minus(out.alpha[sum], out.alpha[i]) == out.alpha[j];
    }
  return out;
}

// ---- the (ell, c) model ----

namespace {

struct Decoded {
  int quotient;
  Vec64 kernel;
};

Decoded decode(const std::vector<Vec64>& elems, int na, int x) { return {x / na, elems[static_cast<std::size_t>(x % na)]}; }

/// <ell(q1,q2), q1 q2 a3> + c on G_eta, at modulus n.
Cochain primal_omega(const ExtensionDatum& ext, const DualGroup& dual, const Cochain& ell, const Cochain& c, std::int64_t n) {
  const int na = static_cast<int>(ext.band.module.order());
  const auto elems = ext.band.module.elements();
  const std::int64_t m = dual.modulus, cm = modulus_of(c);
  const FiniteGroup& q = ext.quotient;
  return scalar_cochain(ext.total, n, 3, [&](const std::vector<int>& t) {
    auto x1 = decode(elems, na, t[0]), x2 = decode(elems, na, t[1]), x3 = decode(elems, na, t[2]);
    const int pair[2] = {x1.quotient, x2.quotient};
    const Vec64 moved = ext.band.act(q.mul(x1.quotient, x2.quotient), x3.kernel);
    return dual.pair(ell.at(pair), moved) * (n / m) + scalar_value(c, {x1.quotient, x2.quotient, x3.quotient}) * (n / cm);
  });
}

/// <chi1, q1 eta(q2,q3)> + c on G_ell, at modulus n.
Cochain dual_omega(const ExtensionDatum& ext, const DualGroup& dual, const ExtensionDatum& dual_base, const Cochain& c,
                   std::int64_t n) {
  const int na = static_cast<int>(dual.group.order());
  const auto chars = dual.group.elements();
  const std::int64_t m = dual.modulus, cm = modulus_of(c);
  return scalar_cochain(dual_base.total, n, 3, [&](const std::vector<int>& t) {
    auto x1 = decode(chars, na, t[0]), x2 = decode(chars, na, t[1]), x3 = decode(chars, na, t[2]);
    const int pair[2] = {x2.quotient, x3.quotient};
    const Vec64 moved = ext.band.act(x1.quotient, ext.eta.at(pair));
    return dual.pair(x1.kernel, moved) * (n / m) + scalar_value(c, {x1.quotient, x2.quotient, x3.quotient}) * (n / cm);
  });
}

void check_ell(const DualGroup& dual, const Cochain& ell) {
  if (ell.degree() != 2 || !same_coefficients(ell.coeff(), dual.left_action))
    throw InvalidInput("ell must be a 2-cochain with values in the dual group");
}

}  // namespace

Cochain cup_pairing(const DualGroup& dual, const Cochain& ell, const Cochain& eta) {
  check_ell(dual, ell);
  const FiniteGroup& q = ell.group();
  const AbAction& band = eta.coeff();
  return scalar_cochain(q, std::max<std::int64_t>(dual.modulus, 2), 4, [&](const std::vector<int>& t) {
    const int left[2] = {t[0], t[1]}, right[2] = {t[2], t[3]};
    return dual.pair(ell.at(left), band.act(q.mul(t[0], t[1]), eta.at(right))) * (std::max<std::int64_t>(dual.modulus, 2) / dual.modulus);
  });
}

std::optional<Cochain> solve_associator(const ExtensionDatum& ext, const DualGroup& dual, const Cochain& ell) {
  const FiniteGroup& q = ext.quotient;
  const Cochain t = cup_pairing(dual, ell, ext.eta);
  if (q.order() == 1) return zero_scalar(q, t.modulus(), 3);
  CxCohomology h(q, 4, std::lcm<std::int64_t>(q.order(), t.modulus()));
  auto prim = h.divisible().trivialize(t.values(), t.modulus());
  if (!prim) return std::nullopt;
  Cochain c(q, roots_of_unity(q, h.modulus() * h.divisible().headroom()), 3);
  c.assign(*prim);
  return c;
}

nlohmann::json RepExtensionDatum::to_json() const {
  nlohmann::json j;
  j["quotient_order"] = base.quotient.order();
  j["kernel"] = base.band.module.factors();
  j["eta"] = base.eta.to_json();
  j["ell"] = ell.to_json();
  j["c"] = c.to_json();
  j["primal"] = primal.to_json();
  j["dual"] = dual_datum.to_json();
  return j;
}

RepExtensionResult build_rep_extension(const ExtensionDatum& ext, const Cochain& ell, const Cochain& c) {
  const FiniteGroup& q = ext.quotient;
  const DualGroup dual = dual_group(ext.band);
  check_ell(dual, ell);
  if (c.degree() != 3 || !is_scalar(c) || !c.group().same_table(q)) throw InvalidInput("c must be a scalar 3-cochain on the quotient");

  // simple objects (chi, q) at index q |A*| + chi
  const int na = static_cast<int>(dual.group.order()), n = na * q.order();
  const auto chars = dual.group.elements();
  auto product = [&](int x, int y) {
    auto a = decode(chars, na, x), b = decode(chars, na, y);
    const int pair[2] = {a.quotient, b.quotient};
    Vec64 chi = dual.group.add(dual.group.add(a.kernel, dual.left_action.act(a.quotient, b.kernel)), ell.at(pair));
    return q.mul(a.quotient, b.quotient) * na + static_cast<int>(dual.group.index_of(chi));
  };
  RepExtensionResult out;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (product(product(x, y), z) != product(x, product(y, z))) {
          out.failed_stage = "objects";
          out.witness = {x, y, z};
          return out;
        }

  RepExtensionDatum d{ext, dual, ell, c, build_extension(q, dual.left_action, ell), {}, {}};
  const std::int64_t modulus = std::max<std::int64_t>(std::lcm(std::lcm<std::int64_t>(n, dual.modulus), modulus_of(c)), 2);
  d.dual_datum = graded_datum(d.dual_base.total, dual_omega(ext, dual, d.dual_base, c, modulus), d.dual_base.kernel());
  auto pent = pentagon_check(d.dual_datum);
  if (!pent.holds) {
    out.failed_stage = "scalars";
    out.witness = pent.witness;
    return out;
  }
  d.primal = graded_datum(ext.total, primal_omega(ext, dual, ell, c, modulus), ext.kernel());
  pent = pentagon_check(d.primal);
  if (!pent.holds) {
    out.failed_stage = "primal scalars";
    out.witness = pent.witness;
    return out;
  }
  out.datum = std::move(d);
  return out;
}

std::vector<Vec64> double_dual_map(const FinAbGroup& a, const DualGroup& dual, const DualGroup& double_dual) {
  const auto chars = dual.group.elements();
  const auto psis = double_dual.group.elements();
  std::vector<Vec64> out;
  for (const auto& x : a.elements()) {
    auto it = std::find_if(psis.begin(), psis.end(), [&](const Vec64& psi) {
      return std::all_of(chars.begin(), chars.end(),
                         [&](const Vec64& chi) { return double_dual.pair(psi, chi) == dual.pair(chi, x); });
    });
    if (it == psis.end()) throw CheckFailed("evaluation map is not onto the double dual");
    out.push_back(*it);
  }
  return out;
}

RepExtensionResult dual_rep_extension(const RepExtensionDatum& d) {
  const FiniteGroup& q = d.base.quotient;
  const DualGroup dd = dual_group(d.dual.left_action);
  const auto eval = double_dual_map(d.base.band.module, d.dual, dd);
  Cochain swapped(q, dd.left_action, 2);
  for (std::size_t t = 0; t < swapped.tuple_count(); ++t) {
    auto pair = swapped.tuple_at(t);
    swapped.set(pair, eval[static_cast<std::size_t>(d.base.band.module.index_of(d.base.eta.at(pair)))]);
  }
  // c is only determined up to Z^3(Q): take the shift whose primal side matches our dual side
  auto c0 = solve_associator(d.dual_base, dd, swapped);
  RepExtensionResult out;
  if (!c0) {
    out.failed_stage = "swapped cup product";
    return out;
  }
  const Cochain& target = d.dual_datum.omega;
  std::vector<Cochain> shifts{zero_scalar(q, 2, 3)};
  if (q.order() > 1) {
    CxCohomology h3(q, 3);
    shifts.clear();
    for (const auto& cls : h3.group().elements()) shifts.push_back(h3.representative(cls));
  }
  const std::int64_t n = std::lcm(std::lcm<std::int64_t>(c0->modulus(), q.order()), target.modulus());
  CxCohomology hg(d.dual_base.total, 3, std::lcm<std::int64_t>(n * d.dual_base.total.order(), target.modulus()));
  for (const auto& z : shifts) {
    auto res = build_rep_extension(d.dual_base, swapped, rescale(*c0, n) + rescale(z, n));
    if (res.datum && hg.same_class(res.datum->primal.omega, target)) return res;
  }
  out.failed_stage = "no associator matches the dual side";
  return out;
}

nlohmann::json RepExtensionCount::to_json() const {
  return {{"candidates", candidates}, {"associative_objects", associative_objects}, {"unobstructed", unobstructed},
          {"classes", classes}, {"kernel_h2", kernel_h2}, {"cokernel_h1", cokernel_h1}, {"matches", matches()}};
}

RepExtensionCount count_rep_extensions(const ExtensionDatum& ext) {
  const FiniteGroup& q = ext.quotient;
  if (q.order() < 2) throw InvalidInput("counting needs a nontrivial quotient");
  const DualGroup dual = dual_group(ext.band);
  const std::int64_t m = std::max<std::int64_t>(dual.modulus, 2);
  const std::size_t tuples = static_cast<std::size_t>(q.order() - 1) * static_cast<std::size_t>(q.order() - 1);
  const double space = std::pow(static_cast<double>(dual.group.order()), static_cast<double>(tuples));
  if (space > 65536) throw CapExceeded("too many candidate ell to enumerate");

  CxCohomology h4(q, 4, std::lcm<std::int64_t>(q.order(), m));
  CxCohomology h3(q, 3, std::lcm<std::int64_t>(q.order(), m));
  const std::int64_t big4 = h4.modulus() * h4.divisible().headroom();
  const std::int64_t n = std::lcm(std::lcm<std::int64_t>(big4, ext.total.order()), h3.modulus());
  CxCohomology hg(ext.total, 3, n);
  std::vector<Cochain> h3_reps;
  for (const auto& cls : h3.group().elements()) h3_reps.push_back(rescale(h3.representative(cls), n));

  RepExtensionCount r;
  std::set<Vec64> seen;
  const auto chars = dual.group.elements();
  const std::size_t rank = dual.group.rank();
  std::vector<std::size_t> digits(tuples, 0);
  for (std::size_t count = 0; count < static_cast<std::size_t>(space); ++count) {
    Vec64 flat;
    for (std::size_t t = 0; t < tuples; ++t) flat.insert(flat.end(), chars[digits[t]].begin(), chars[digits[t]].end());
    for (std::size_t t = 0; t < tuples && ++digits[t] == chars.size(); ++t) digits[t] = 0;
    ++r.candidates;
    Cochain ell(q, dual.left_action, 2);
    if (rank) ell.assign(std::move(flat));
    if (!differential(ell).is_zero()) continue;
    ++r.associative_objects;
    const Cochain t = cup_pairing(dual, ell, ext.eta);
    auto prim = h4.divisible().trivialize(t.values(), t.modulus());
    if (!prim) continue;
    ++r.unobstructed;
    Cochain c0(q, roots_of_unity(q, big4), 3);
    c0.assign(*prim);
    c0 = rescale(c0, n);
    for (const auto& z : h3_reps) seen.insert(hg.classify(primal_omega(ext, dual, ell, c0 + z, n)));
  }
  r.classes = seen.size();

  // prediction from cup products with eta
  GroupCohomology g2(q, dual.left_action, 2);
  for (const auto& cls : g2.group().elements())
    if (h4.is_trivial(cup_pairing(dual, g2.representative(cls), ext.eta))) ++r.kernel_h2;
  GroupCohomology g1(q, dual.left_action, 1);
  std::set<Vec64> image;
  for (const auto& cls : g1.group().elements()) {
    const Cochain b = g1.representative(cls);
    Cochain cup = scalar_cochain(q, m, 3, [&](const std::vector<int>& tt) {
      const int pair[2] = {tt[1], tt[2]};
      const int first[1] = {tt[0]};
      return dual.pair(b.at(first), ext.band.act(tt[0], ext.eta.at(pair))) * (m / dual.modulus);
    });
    image.insert(h3.classify(cup));
  }
  r.cokernel_h1 = static_cast<std::size_t>(h3.group().order()) / image.size();
  return r;
}

// ---- orthogonal group of the hyperbolic form ----

nlohmann::json OrthogonalFormGroup::to_json() const {
  return {{"a", a.factors()}, {"order", group.order()}, {"lower_triangular", lower_triangular.members},
          {"block_diagonal", block_diagonal.members}};
}

OrthogonalFormGroup orthogonal_form_group(const FinAbGroup& a) {
  if (a.order() > 8) throw CapExceeded("orthogonal group is enumerated for |A| <= 8");
  OrthogonalFormGroup out;
  out.a = a;
  out.dual = dual_group(a);
  const DualGroup& dual = out.dual;
  const std::int64_t na = a.order(), m = std::max<std::int64_t>(dual.modulus, 1);
  const std::size_t r = a.rank();
  using Point = std::pair<Vec64, Vec64>;
  auto add = [&](const Point& x, const Point& y) { return Point{a.add(x.first, y.first), dual.group.add(x.second, y.second)}; };
  auto scale = [&](const Point& x, std::int64_t k) { return Point{a.scale(x.first, k), dual.group.scale(x.second, k)}; };
  auto form = [&](const Point& x) { return dual.pair(x.second, x.first); };
  auto polar = [&](const Point& x, const Point& y) { return mod(form(add(x, y)) - form(x) - form(y), m); };
  auto index = [&](const Point& x) { return static_cast<int>(a.index_of(x.first) + na * dual.group.index_of(x.second)); };

  std::vector<Point> points;
  for (std::int64_t i = 0; i < na * na; ++i) points.push_back({a.element_at(i % na), dual.group.element_at(i / na)});
  std::vector<Point> gens;
  Vec64 orders;
  for (std::size_t i = 0; i < r; ++i) {
    Vec64 e(r, 0);
    e[i] = 1;
    gens.push_back({e, dual.group.zero()});
    orders.push_back(a.factors()[i]);
  }
  for (std::size_t i = 0; i < r; ++i) {
    Vec64 e(r, 0);
    e[i] = 1;
    gens.push_back({a.zero(), e});
    orders.push_back(a.factors()[i]);
  }

  std::vector<std::vector<int>> maps;
  std::vector<Point> images(gens.size());
  auto finish = [&]() {
    std::vector<int> map(points.size());
    std::vector<bool> hit(points.size(), false);
    for (std::size_t p = 0; p < points.size(); ++p) {
      Point img{a.zero(), dual.group.zero()};
      for (std::size_t i = 0; i < r; ++i) {
        img = add(img, scale(images[i], points[p].first[i]));
        img = add(img, scale(images[r + i], points[p].second[i]));
      }
      if (form(img) != form(points[p])) return;
      const int j = index(img);
      if (hit[static_cast<std::size_t>(j)]) return;
      hit[static_cast<std::size_t>(j)] = true;
      map[p] = j;
    }
    maps.push_back(std::move(map));
    if (static_cast<int>(maps.size()) > limits().max_group_order) throw CapExceeded("orthogonal group above the group-order cap");
  };
  auto search = [&](auto&& self, std::size_t i) -> void {
    if (i == gens.size()) return finish();
    for (const auto& p : points) {
      if (!a.is_zero(scale(p, orders[i]).first) || !dual.group.is_zero(scale(p, orders[i]).second)) continue;
      if (form(p) != form(gens[i])) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = polar(p, images[j]) == polar(gens[i], gens[j]);
      if (!ok) continue;
      images[i] = p;
      self(self, i + 1);
    }
  };
  search(search, 0);
  std::sort(maps.begin(), maps.end());  // identity is the least map

  std::map<std::vector<int>, int> where;
  for (std::size_t i = 0; i < maps.size(); ++i) where[maps[i]] = static_cast<int>(i);
  const int k = static_cast<int>(maps.size());
  std::vector<int> mult(static_cast<std::size_t>(k) * k);
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) {
      std::vector<int> comp(points.size());
      for (std::size_t p = 0; p < points.size(); ++p) comp[p] = maps[static_cast<std::size_t>(x)][static_cast<std::size_t>(maps[static_cast<std::size_t>(y)][p])];
      mult[static_cast<std::size_t>(x) * k + y] = where.at(comp);
    }
  out.group = FiniteGroup::from_table(k, std::move(mult), "O(" + a.to_string() + " + dual)");
  out.maps = maps;

  auto keeps = [&](const std::vector<int>& map, bool kernel_side) {
    for (std::size_t p = 0; p < points.size(); ++p) {
      const bool in = kernel_side ? a.is_zero(points[p].first) : dual.group.is_zero(points[p].second);
      if (!in) continue;
      const Point& img = points[static_cast<std::size_t>(map[p])];
      if (kernel_side ? !a.is_zero(img.first) : !dual.group.is_zero(img.second)) return false;
    }
    return true;
  };
  std::vector<int> lower, diagonal;
  for (int i = 0; i < k; ++i) {
    if (!keeps(maps[static_cast<std::size_t>(i)], true)) continue;
    lower.push_back(i);
    if (keeps(maps[static_cast<std::size_t>(i)], false)) diagonal.push_back(i);
  }
  out.lower_triangular = make_subgroup(out.group, lower);
  out.block_diagonal = make_subgroup(out.group, diagonal);
  return out;
}

}  // namespace gerbeforge
