#pragma once

// Dense univariate polynomials over a finite field.

#include <cstdint>
#include <string>
#include <vector>

#include "jacsidon/ffield.hpp"

namespace jacsidon::ffield {

class Polynomial {
 public:
  explicit Polynomial(FieldPtr field);
  /// Little-endian coefficients; trailing zeros are trimmed.
  Polynomial(FieldPtr field, std::vector<FieldElement> coeffs);

  static Polynomial constant(const FieldElement& c);
  static Polynomial x(const FieldPtr& field);
  /// X - a
  static Polynomial linear_root(const FieldElement& a);
  static Polynomial from_ints(const FieldPtr& field, const std::vector<std::int64_t>& coeffs);

  const FieldPtr& field() const { return field_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  FieldElement coeff(std::size_t i) const;
  FieldElement leading() const;
  const std::vector<FieldElement>& coeffs() const { return coeffs_; }

  Polynomial monic() const;
  Polynomial derivative() const;
  FieldElement evaluate(const FieldElement& x) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const FieldElement& c) const;
  Polynomial operator/(const Polynomial& o) const;
  Polynomial operator%(const Polynomial& o) const;
  bool operator==(const Polynomial& o) const;

  std::string to_string() const;

 private:
  void trim();
  FieldPtr field_;
  std::vector<FieldElement> coeffs_;
};

struct DivMod {
  Polynomial quotient;
  Polynomial remainder;
};
DivMod divmod(const Polynomial& a, const Polynomial& b);

/// Monic gcd (zero if both inputs are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

struct ExtendedGcd {
  Polynomial g;  // monic
  Polynomial s;
  Polynomial t;  // s a + t b = g
};
ExtendedGcd xgcd(const Polynomial& a, const Polynomial& b);

Polynomial powmod(const Polynomial& base, std::uint64_t exponent, const Polynomial& modulus);

/// Distinct roots of f in its coefficient field, sorted by packed value.
std::vector<FieldElement> roots(const Polynomial& f);

bool is_irreducible(const Polynomial& f);

}  // namespace jacsidon::ffield
