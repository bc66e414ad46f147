#define EIGEN_DONT_PARALLELIZE
#include "gerbeforge/clifford.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "gerbeforge/algebra.hpp"
#include "gerbeforge/errors.hpp"
#include "gerbeforge/groupoid.hpp"
#include "gerbeforge/limits.hpp"

namespace gerbeforge {

using kernels::mod;

GroupAction q_action_on_irreps(const QuotientData& quotient, const SubgroupDatum& k, const CharacterTable& k_table) {
  const FiniteGroup& g = k.parent;
  const FiniteGroup& kg = k_table.group;
  const int nq = quotient.quotient.order(), ni = static_cast<int>(k_table.size());
  const auto& classes = kg.classes();
  std::vector<int> table;
  for (int q = 0; q < nq; ++q) {
    const int s = quotient.section[static_cast<std::size_t>(q)];
    for (int i = 0; i < ni; ++i) {
      // values of chi_i(s^-1 m s) on the classes of K
      std::vector<std::vector<int>> twisted;
      for (const auto& c : classes) {
        const int m = k.members[static_cast<std::size_t>(c.front())];
        const int moved = k.index_of(g.mul(g.mul(g.inv(s), m), s));
        twisted.push_back(k_table.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(kg.class_of(moved))]);
      }
      int found = -1;
      for (int j = 0; j < ni && found < 0; ++j)
        if (k_table.values[static_cast<std::size_t>(j)] == twisted) found = j;
      if (found < 0) throw CheckFailed("twisted character is not in the table");
      table.push_back(found);
    }
  }
  return GroupAction::from_images(quotient.quotient, ni, std::move(table));
}

namespace {

Eigen::MatrixXcd random_matrix(std::mt19937_64& rng, int rows, int cols) {
  Eigen::MatrixXcd x(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) x(i, j) = Complex(unit_double(rng) - 0.5, unit_double(rng) - 0.5);
  return x;
}

}  // namespace

CliffordDatum clifford_gerbe_extract(const FiniteGroup& g, const SubgroupDatum& k, std::uint64_t seed) {
  if (!k.parent.same_table(g)) throw InvalidInput("subgroup of another group");
  if (!k.is_normal) throw InvalidInput("Clifford theory needs a normal subgroup");
  if (g.order() > limits().max_character_table_order) throw CapExceeded("group above the character-table cap");
  CliffordDatum cd;
  cd.group = g;
  cd.normal = k;
  cd.quotient = quotient_with_section(g, k);
  const FiniteGroup kg = subgroup_group(k);
  cd.k_table = character_table(kg);
  cd.k_irreps = irrep_matrices(cd.k_table, seed);
  cd.band = q_action_on_irreps(cd.quotient, k, cd.k_table);
  const FiniteGroup& q = cd.quotient.quotient;
  const int nq = q.order(), ni = static_cast<int>(cd.k_table.size()), nk = kg.order();
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);

  for (int a = 0; a < nq; ++a) {
    const int s = cd.quotient.section[static_cast<std::size_t>(a)];
    std::vector<int> twist(static_cast<std::size_t>(nk));
    for (int m = 0; m < nk; ++m) twist[static_cast<std::size_t>(m)] = k.index_of(g.mul(g.mul(g.inv(s), k.members[static_cast<std::size_t>(m)]), s));
    for (int i = 0; i < ni; ++i) {
      const int j = cd.band.act(a, i);
      const std::size_t ii = static_cast<std::size_t>(i), jj = static_cast<std::size_t>(j);
      // dim Hom_K(V_j, V_i twisted) from characters; Schur forces 1
      Complex hom = 0;
      for (int m = 0; m < nk; ++m) hom += cd.k_table.value_at(ii, twist[static_cast<std::size_t>(m)]) * std::conj(cd.k_table.value_at(jj, m));
      hom /= static_cast<double>(nk);
      if (std::abs(hom - 1.0) > phase_tolerance) throw CheckFailed("intertwiner space is not one-dimensional");
      const int d = cd.k_table.dims[ii];
      Eigen::MatrixXcd t;
      for (int attempt = 0; attempt < 8; ++attempt) {
        Eigen::MatrixXcd x = random_matrix(rng, d, d);
        t = Eigen::MatrixXcd::Zero(d, d);
        for (int m = 0; m < nk; ++m)
          t += cd.k_irreps.at(ii, twist[static_cast<std::size_t>(m)]) * x * cd.k_irreps.at(jj, m).adjoint();
        t /= static_cast<double>(nk);
        if (t.norm() > 1e-3) break;
      }
      const double c = (t.adjoint() * t).trace().real() / d;
      t /= std::sqrt(c);
      for (int m = 0; m < nk; ++m)
        cd.intertwiner_defect = std::max(cd.intertwiner_defect,
            (t * cd.k_irreps.at(jj, m) - cd.k_irreps.at(ii, twist[static_cast<std::size_t>(m)]) * t).cwiseAbs().maxCoeff());
      cd.lines.push_back(std::move(t));
    }
  }

  const int exp_k = kg.exponent();
  for (const auto& orb : act_orbits(cd.band)) {
    CliffordOrbit co;
    co.representative = orb.representative;
    co.points = orb.points;
    co.stabilizer = orb.stabilizer;
    co.stabilizer_group = subgroup_group(orb.stabilizer);
    const FiniteGroup& sg = co.stabilizer_group;
    const std::size_t x = static_cast<std::size_t>(orb.representative);
    const int d = cd.k_table.dims[x];
    const std::int64_t modulus = std::max<std::int64_t>(std::lcm<std::int64_t>(static_cast<std::int64_t>(d) * exp_k, sg.order()), 2);
    // A_q = T_q^*, scaled to determinant one; A_1 = 1
    std::vector<Eigen::MatrixXcd> lift;
    for (int loc = 0; loc < sg.order(); ++loc) {
      const int qq = orb.stabilizer.members[static_cast<std::size_t>(loc)];
      if (qq == 0) {
        lift.push_back(Eigen::MatrixXcd::Identity(d, d));
        continue;
      }
      Eigen::MatrixXcd a = cd.lines[static_cast<std::size_t>(qq) * ni + x].adjoint();
      a /= std::pow(a.determinant(), 1.0 / d);
      lift.push_back(std::move(a));
    }
    co.cocycle = Cochain(sg, roots_of_unity(sg, modulus), 2);
    for (int u = 1; u < sg.order(); ++u)
      for (int v = 1; v < sg.order(); ++v) {
        const int qu = orb.stabilizer.members[static_cast<std::size_t>(u)], qv = orb.stabilizer.members[static_cast<std::size_t>(v)];
        const int f = k.index_of(cd.quotient.f(qu, qv));
        const auto& uv = lift[static_cast<std::size_t>(sg.mul(u, v))];
        Eigen::MatrixXcd m = cd.k_irreps.at(x, f).adjoint() * lift[static_cast<std::size_t>(u)] * lift[static_cast<std::size_t>(v)] * uv.adjoint();
        const Complex phase = m.trace() / static_cast<double>(d);
        co.scalar_defect = std::max(co.scalar_defect, (m - phase * Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff());
        const double turns = std::arg(phase) / (2 * std::numbers::pi);
        const std::int64_t e = mod(std::llround(turns * static_cast<double>(modulus)), modulus);
        co.rounding_error = std::max(co.rounding_error, std::abs(phase - std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(e) / modulus)));
        const int pair[2] = {u, v};
        co.cocycle.set(pair, Vec64{e});
      }
    if (co.rounding_error > phase_tolerance || co.scalar_defect > phase_tolerance)
      throw CheckFailed("stabilizer phases are not roots of unity within tolerance");
    if (!differential(co.cocycle).is_zero()) throw CheckFailed("snapped stabilizer cocycle is not closed");
    CxCohomology h(sg, 2, modulus);
    co.h2 = h.group();
    co.class_coords = h.classify(co.cocycle);
    cd.orbits.push_back(std::move(co));
  }
  return cd;
}

nlohmann::json CliffordDatum::to_json() const {
  nlohmann::json j;
  j["group"] = group.name();
  j["order"] = group.order();
  j["normal"] = normal.members;
  j["quotient_order"] = quotient.quotient.order();
  j["irreps_of_normal"] = k_table.dims;
  j["band"] = band.table;
  j["intertwiner_defect"] = intertwiner_defect;
  auto list = nlohmann::json::array();
  for (const auto& o : orbits)
    list.push_back({{"representative", o.representative},
                    {"points", o.points},
                    {"stabilizer", o.stabilizer.members},
                    {"h2", o.h2.factors()},
                    {"class", o.class_coords},
                    {"modulus", o.cocycle.modulus()},
                    {"rounding_error", o.rounding_error}});
  j["orbits"] = list;
  return j;
}

std::vector<std::array<std::int64_t, 3>> commutator_pairing(const Cochain& phi) {
  if (phi.degree() != 2 || phi.rank() != 1) throw InvalidInput("pairing needs a scalar 2-cochain");
  const FiniteGroup& g = phi.group();
  const std::int64_t m = phi.modulus();
  std::vector<std::array<std::int64_t, 3>> out;
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b) {
      if (g.mul(a, b) != g.mul(b, a)) continue;
      const int ab[2] = {a, b}, ba[2] = {b, a};
      out.push_back({a, b, mod(phi.at(ab, 0) - phi.at(ba, 0), m)});
    }
  return out;
}

std::optional<std::vector<int>> projective_dims(const Cochain& phi) {
  const FiniteGroup& q = phi.group();
  if (phi.is_zero()) return character_table(q).dims;
  const std::int64_t m = phi.modulus();
  if (m * q.order() > limits().max_character_table_order) return std::nullopt;
  auto ext = build_extension(q, phi.coeff(), phi);
  auto table = character_table(ext.total);
  // the central generator (1, identity) must act by zeta_m
  const int central = ext.embed[1];
  const Complex zeta = std::polar(1.0, 2 * std::numbers::pi / static_cast<double>(m));
  std::vector<int> dims;
  for (std::size_t chi = 0; chi < table.size(); ++chi)
    if (std::abs(table.value_at(chi, central) - static_cast<double>(table.dims[chi]) * zeta) < 1e-6) dims.push_back(table.dims[chi]);
  return dims;
}

FrulesReport frules_check(const CliffordDatum& cd) {
  FrulesReport r;
  auto gt = character_table(cd.group);
  r.irreps_of_g = gt.size();
  for (const auto& o : cd.orbits) {
    r.per_orbit.push_back(regular_class_count(o.cocycle));
    r.total += r.per_orbit.back();
  }
  r.counts_match = r.total == r.irreps_of_g;

  // which orbit each G-irrep lies over
  const int nk = static_cast<int>(cd.normal.members.size());
  r.observed_dims.assign(cd.orbits.size(), {});
  for (std::size_t psi = 0; psi < gt.size(); ++psi) {
    for (std::size_t j = 0; j < cd.orbits.size(); ++j) {
      const std::size_t x = static_cast<std::size_t>(cd.orbits[j].representative);
      Complex ip = 0;
      for (int m = 0; m < nk; ++m)
        ip += gt.value_at(psi, cd.normal.members[static_cast<std::size_t>(m)]) * std::conj(cd.k_table.value_at(x, m));
      if (std::abs(ip) / nk > 0.5) {
        r.observed_dims[j].push_back(gt.dims[psi]);
        break;
      }
    }
  }
  r.dims_match = true;
  for (std::size_t j = 0; j < cd.orbits.size(); ++j) {
    const auto& o = cd.orbits[j];
    auto proj = projective_dims(o.cocycle);
    r.dims_evaluated.push_back(proj.has_value());
    std::vector<int> predicted;
    if (proj)
      for (int d : *proj)
        predicted.push_back(static_cast<int>(o.points.size()) * cd.k_table.dims[static_cast<std::size_t>(o.representative)] * d);
    std::sort(predicted.begin(), predicted.end());
    std::sort(r.observed_dims[j].begin(), r.observed_dims[j].end());
    r.predicted_dims.push_back(predicted);
    if (proj && predicted != r.observed_dims[j]) r.dims_match = false;
  }
  return r;
}

nlohmann::json FrulesReport::to_json() const {
  nlohmann::json j;
  j["irreps_of_group"] = irreps_of_g;
  j["per_orbit"] = per_orbit;
  j["total"] = total;
  j["counts_match"] = counts_match;
  j["observed_dims"] = observed_dims;
  j["predicted_dims"] = predicted_dims;
  j["dims_evaluated"] = dims_evaluated;
  j["dims_match"] = dims_match;
  return j;
}

}  // namespace gerbeforge
