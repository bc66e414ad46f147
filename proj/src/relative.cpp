#include "gerbeforge/relative.hpp"

#include "gerbeforge/errors.hpp"

namespace gerbeforge {

using kernels::mod;

RelativeComplex::RelativeComplex(FiniteGroup g, SubgroupDatum k)
    : g_(std::move(g)), k_(std::move(k)), k_group_(subgroup_group(k_)) {
  if (!k_.parent.same_table(g_)) throw InvalidInput("relative complex: subgroup of another group");
}

std::size_t RelativeComplex::g_part(int n) const {
  return n < 0 ? 0 : ipow(static_cast<std::size_t>(g_.order() - 1), n);
}

std::size_t RelativeComplex::k_part(int n) const {
  return n < 1 ? 0 : ipow(static_cast<std::size_t>(k_group_.order() - 1), n - 1);
}

ModMatrix RelativeComplex::restriction(int n, std::int64_t modulus) const {
  const std::size_t rows = ipow(static_cast<std::size_t>(k_group_.order() - 1), n);
  ModMatrix r(rows, g_part(n), modulus);
  const std::size_t kb = static_cast<std::size_t>(k_group_.order() - 1);
  const std::size_t gb = static_cast<std::size_t>(g_.order() - 1);
  for (std::size_t t = 0; t < rows; ++t) {
    std::size_t rem = t;
    std::vector<int> digits(n);
    for (int i = n - 1; i >= 0; --i) {
      digits[i] = static_cast<int>(rem % kb) + 1;
      rem /= kb;
    }
    std::size_t col = 0;
    for (int i = 0; i < n; ++i) col = col * gb + static_cast<std::size_t>(k_.members[digits[i]] - 1);
    r.at(t, col) = 1 % modulus;
  }
  return r;
}

ModMatrix RelativeComplex::differential(int n, std::int64_t modulus, Execution exec) const {
  if (n < -1) throw InvalidInput("relative complex: degree below -1");
  ModMatrix out(dimension(n + 1), dimension(n), modulus);
  if (n < 0) return out;
  const std::size_t gr = g_part(n + 1), gc = g_part(n);
  AbAction mu_g = roots_of_unity(g_, modulus), mu_k = roots_of_unity(k_group_, modulus);
  ModMatrix dg = bar_differential_matrix(g_, mu_g, n, exec);
  for (std::size_t r = 0; r < gr; ++r)
    for (std::size_t c = 0; c < gc; ++c) out.at(r, c) = dg.at(r, c);
  ModMatrix res = restriction(n, modulus);
  for (std::size_t r = 0; r < res.rows(); ++r)
    for (std::size_t c = 0; c < gc; ++c) out.at(gr + r, c) = res.at(r, c);
  if (n >= 1) {
    ModMatrix dk = bar_differential_matrix(k_group_, mu_k, n - 1, exec);
    for (std::size_t r = 0; r < dk.rows(); ++r)
      for (std::size_t c = 0; c < dk.cols(); ++c) out.at(gr + r, gc + c) = mod(-dk.at(r, c), modulus);
  }
  return out;
}

ScalarFamily RelativeComplex::family(int n, Execution exec) const {
  RelativeComplex self = *this;
  return [self, n, exec](std::int64_t m) {
    return ScalarComplex{self.differential(n - 1, m, exec), self.differential(n, m, exec)};
  };
}

Vec64 RelativeComplex::join(const Cochain& alpha, const Cochain& beta) const {
  if (alpha.degree() != beta.degree() + 1) throw InvalidInput("relative cochain: degrees of the parts do not match");
  if (alpha.modulus() != beta.modulus()) throw InvalidInput("relative cochain: parts over different moduli");
  Vec64 x = alpha.values();
  x.insert(x.end(), beta.values().begin(), beta.values().end());
  return x;
}

Cochain RelativeComplex::alpha_part(const Vec64& x, int n, std::int64_t modulus) const {
  if (x.size() != dimension(n)) throw InvalidInput("relative cochain has wrong length");
  Cochain a(g_, roots_of_unity(g_, modulus), n);
  a.assign(Vec64(x.begin(), x.begin() + static_cast<long>(g_part(n))));
  return a;
}

Cochain RelativeComplex::beta_part(const Vec64& x, int n, std::int64_t modulus) const {
  if (x.size() != dimension(n) || n < 1) throw InvalidInput("relative cochain has wrong length");
  Cochain b(k_group_, roots_of_unity(k_group_, modulus), n - 1);
  b.assign(Vec64(x.begin() + static_cast<long>(g_part(n)), x.end()));
  return b;
}

RelativeCohomology::RelativeCohomology(const RelativeComplex& cx, int degree, Execution exec)
    : degree_(degree),
      cx_(cx.family(degree, exec), static_cast<std::int64_t>(cx.group().order()) * cx.subgroup().order(),
          static_cast<std::int64_t>(cx.group().order()) * cx.subgroup().order(), exec) {}

namespace {

bool is_zero_map(const AbHom& h) {
  for (std::size_t j = 0; j < h.source.rank(); ++j) {
    Vec64 e(h.source.rank(), 0);
    e[j] = 1;
    if (!h.target.is_zero(h.apply(e))) return false;
  }
  return true;
}

}  // namespace

MiddleRowReport relative_der_complex(const FiniteGroup& g, const SubgroupDatum& k, Execution exec) {
  if (!k.is_normal) throw InvalidInput("relative complex: subgroup is not normal");
  RelativeComplex cx(g, k);
  const FiniteGroup& kg = cx.subgroup();
  const std::int64_t mc = static_cast<std::int64_t>(g.order()) * kg.order();
  const GroupHom incl = inclusion_hom(k);

  CxCohomology h2g(g, 2, g.order(), exec), h2k(kg, 2, g.order(), exec);
  CxCohomology h3g(g, 3, mc, exec), h3k(kg, 3, mc, exec);
  RelativeCohomology rel(cx, 3, exec);

  MiddleRowReport r;
  r.h2_g = h2g.group();
  r.h2_k = h2k.group();
  r.h3_rel = rel.group();
  r.h3_g = h3g.group();
  r.h3_k = h3k.group();
  r.res2 = induced_map_along(h2g, h2k, incl);
  r.res3 = induced_map_along(h3g, h3k, incl);

  std::vector<Vec64> iota_images;
  for (const auto& beta : h2k.generators()) {
    Cochain zero(g, roots_of_unity(g, beta.modulus()), 3);
    iota_images.push_back(rel.divisible().classify(cx.join(zero, beta), beta.modulus()));
  }
  r.iota = induced_from_images(r.h2_k, r.h3_rel, iota_images);

  std::vector<Vec64> pi_images;
  for (const auto& x : rel.divisible().generators()) pi_images.push_back(h3g.classify(cx.alpha_part(x, 3, mc)));
  r.pi = induced_from_images(r.h3_rel, r.h3_g, pi_images);

  r.iota_after_res2_zero = is_zero_map(compose(r.iota, r.res2));
  r.pi_after_iota_zero = is_zero_map(compose(r.pi, r.iota));
  r.res3_after_pi_zero = is_zero_map(compose(r.res3, r.pi));

  auto s_res2 = hom_structure(r.res2);
  auto s_iota = hom_structure(r.iota);
  auto s_pi = hom_structure(r.pi);
  auto s_res3 = hom_structure(r.res3);
  r.coker_res2 = s_res2.cokernel;
  r.ker_res3 = s_res3.kernel;
  r.exact_at_h2k = r.iota_after_res2_zero && s_iota.kernel.order() == s_res2.image.order();
  r.exact_at_rel = r.pi_after_iota_zero && s_pi.kernel.order() == s_iota.image.order();
  r.onto_ker_res3 = r.res3_after_pi_zero && s_pi.image.order() == s_res3.kernel.order();
  r.cardinality = r.h3_rel.order() == r.coker_res2.order() * r.ker_res3.order();
  return r;
}

}  // namespace gerbeforge
