/** @file cochain.hpp
 *  Normalized bar cochains with values in a finite module over a finite group.
 */
#pragma once

#include <random>
#include <span>
#include <string>

#include <json.hpp>

#include "gerbeforge/abelian.hpp"
#include "gerbeforge/kernels/modmatrix.hpp"

namespace gerbeforge {

using kernels::Execution;
using kernels::ModMatrix;
using kernels::Residue;

/// Trivial module mu_N (exponents mod N).
AbAction roots_of_unity(const FiniteGroup& g, std::int64_t n);

/// Functions X -> mu_N with (q.f)(x) = f(q^-1 x); component x is the value at point x.
AbAction point_functions(const GroupAction& a, std::int64_t n);

std::size_t ipow(std::size_t b, int e);

class Cochain {
 public:
  Cochain() = default;
  Cochain(FiniteGroup g, AbAction coeff, int degree);

  int degree() const { return degree_; }
  const FiniteGroup& group() const { return group_; }
  const AbAction& coeff() const { return coeff_; }
  std::size_t rank() const { return coeff_.module.rank(); }
  std::size_t tuple_count() const { return tuples_; }

  /// Encoded index of a tuple of non-identity elements, or -1 if one entry is the identity.
  long long tuple_index(std::span<const int> tuple) const;
  std::vector<int> tuple_at(std::size_t index) const;

  Vec64 at(std::span<const int> tuple) const;
  Vec64 at(std::initializer_list<int> tuple) const { return at(std::span<const int>(tuple.begin(), tuple.size())); }
  std::int64_t at(std::span<const int> tuple, std::size_t comp) const;
  void set(std::span<const int> tuple, const Vec64& v);
  void set(std::initializer_list<int> tuple, const Vec64& v) { set(std::span<const int>(tuple.begin(), tuple.size()), v); }

  /// Flat values, tuple-major, component-minor, reduced modulo the component orders.
  const Vec64& values() const { return values_; }
  void assign(Vec64 flat);

  /// Uniform modulus of the coordinates, i.e. the exponent of the module.
  std::int64_t modulus() const { return coeff_.module.exponent(); }
  Vec64 component_orders() const;

  Cochain operator+(const Cochain& o) const;
  Cochain operator-(const Cochain& o) const;
  Cochain scaled(std::int64_t k) const;
  bool is_zero() const;
  bool operator==(const Cochain& o) const { return degree_ == o.degree_ && values_ == o.values_; }

  nlohmann::json to_json() const;

 private:
  FiniteGroup group_;
  AbAction coeff_;
  int degree_ = 0;
  std::size_t tuples_ = 1;
  Vec64 values_;
};

/// Standard twisted bar differential (g1.c(g2..) + sum (-1)^i c(..gi gi+1..) + (-1)^{n+1} c(g1..gn)).
Cochain differential(const Cochain& c);

/// Differential matrix C^n -> C^{n+1} over Z/exp(module).
ModMatrix bar_differential_matrix(const FiniteGroup& g, const AbAction& coeff, int n,
                                  Execution exec = Execution::parallel);

/// Reference assembly: differential applied to every basis cochain (single-threaded).
ModMatrix bar_differential_matrix_reference(const FiniteGroup& g, const AbAction& coeff, int n);

Cochain random_cochain(const FiniteGroup& g, const AbAction& coeff, int n, std::mt19937_64& rng);

/// Cochain with values in mu_N from a function of the tuple.
template <class F>
Cochain scalar_cochain(const FiniteGroup& g, std::int64_t modulus, int n, F&& f) {
  Cochain c(g, roots_of_unity(g, modulus), n);
  Vec64 flat(c.tuple_count());
  for (std::size_t i = 0; i < c.tuple_count(); ++i) {
    auto t = c.tuple_at(i);
    flat[i] = f(t);
  }
  c.assign(std::move(flat));
  return c;
}

/// Re-embeds a mu_m-valued scalar cochain into mu_{target} (m | target) via the inclusion.
Cochain rescale(const Cochain& c, std::int64_t target_modulus);

/// Pullback along a group homomorphism (restriction, inflation); coefficients are the same module.
Cochain pullback(const Cochain& c, const GroupHom& along, const AbAction& coeff_on_source);

/// Random uniform integer in [0, n) drawn from the top bits of mt19937_64 (platform-stable).
std::int64_t uniform_below(std::mt19937_64& rng, std::int64_t n);

}  // namespace gerbeforge
