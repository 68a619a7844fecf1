#pragma once

// Truncated Laurent series in one variable t over a finite field.
//
// A series is known up to t^precision: coefficients of lower powers are
// exact, everything from t^precision on is unknown.

#include <vector>

#include "jacsidon/ffield.hpp"

namespace jacsidon::genjac {

using ffield::FieldElement;
using ffield::FieldPtr;

class Laurent {
 public:
  /// The series c_0 t^v + c_1 t^(v+1) + ..., known up to t^(v + coeffs.size()).
  Laurent(FieldPtr field, int valuation, std::vector<FieldElement> coeffs);
  /// Zero, known up to t^precision.
  static Laurent zero(FieldPtr field, int precision);
  /// c t^exponent, known up to t^precision.
  static Laurent monomial(const FieldElement& c, int exponent, int precision);

  const FieldPtr& field() const { return field_; }
  /// Exponent of the first nonzero coefficient; equals precision() when no
  /// nonzero coefficient is known.
  int valuation() const { return val_; }
  int precision() const { return val_ + static_cast<int>(c_.size()); }
  /// Number of known coefficients from the valuation on.
  std::size_t relative_precision() const { return c_.size(); }
  bool is_zero() const { return c_.empty(); }
  /// Coefficient of t^k; throws past the precision.
  FieldElement coeff(int k) const;
  /// First n coefficients of t^(-valuation) times the series.
  std::vector<FieldElement> unit_part(std::size_t n) const;

  Laurent operator+(const Laurent& o) const;
  Laurent operator-(const Laurent& o) const;
  Laurent operator-() const;
  Laurent operator*(const Laurent& o) const;
  Laurent operator*(const FieldElement& c) const;
  Laurent inverse() const;

 private:
  void normalize();
  FieldPtr field_;
  int val_;
  std::vector<FieldElement> c_;
};

/// Product of two power series truncated to `len` coefficients.
std::vector<FieldElement> series_mul(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b,
                                     std::size_t len);
/// Inverse of a power series with nonzero constant term, `len` coefficients.
std::vector<FieldElement> series_inverse(const std::vector<FieldElement>& a, std::size_t len);

}  // namespace jacsidon::genjac
