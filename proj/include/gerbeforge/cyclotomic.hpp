/** @file cyclotomic.hpp
 *  Exact arithmetic in Q(zeta_N): rational vectors modulo the N-th cyclotomic polynomial.
 */
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

namespace gerbeforge {

/// Coefficients of Phi_n, constant term first.
std::vector<long long> cyclotomic_polynomial(int n);

class CyclotomicField {
 public:
  using Element = std::vector<mpq_class>;  // length degree()

  explicit CyclotomicField(int n);

  int order() const { return n_; }
  int degree() const { return static_cast<int>(phi_.size()) - 1; }

  Element zero() const { return Element(degree()); }
  Element one() const;
  /// zeta^k for any integer k.
  Element root(long long k) const;
  Element from_rational(const mpq_class& q) const;

  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element mul(const Element& a, const Element& b) const;
  Element inv(const Element& a) const;
  bool is_zero(const Element& a) const;

 private:
  Element reduce(std::vector<mpq_class> poly) const;

  int n_;
  std::vector<long long> phi_;
};

/// Sparse linear system over Q(zeta_N); rows are added one at a time and kept in echelon form.
class CyclotomicEchelon {
 public:
  using Row = std::map<std::size_t, CyclotomicField::Element>;

  CyclotomicEchelon(const CyclotomicField& field, std::size_t columns) : field_(field), columns_(columns) {}

  /// Reduces the row against the current pivots; returns true if it raised the rank.
  bool add_row(Row row);
  std::size_t rank() const { return pivots_.size(); }
  std::size_t nullity() const { return columns_ - pivots_.size(); }

 private:
  const CyclotomicField& field_;
  std::size_t columns_;
  std::map<std::size_t, Row> pivots_;  // pivot column -> row normalized to 1 at the pivot
};

}  // namespace gerbeforge
