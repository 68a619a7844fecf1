#include "jacsidon/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace jacsidon::genjac {

std::vector<FieldElement> series_mul(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b,
                                     std::size_t len) {
  if (a.empty() || b.empty()) throw std::invalid_argument("empty series");
  const auto& f = a.front().field();
  std::vector<FieldElement> out(len, FieldElement::zero(f));
  for (std::size_t i = 0; i < std::min(a.size(), len); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::vector<FieldElement> series_inverse(const std::vector<FieldElement>& a, std::size_t len) {
  if (a.empty() || a.front().is_zero()) throw std::invalid_argument("series is not a unit");
  const auto& f = a.front().field();
  FieldElement inv0 = a.front().inv();
  std::vector<FieldElement> out(len, FieldElement::zero(f));
  if (len == 0) return out;
  out[0] = inv0;
  for (std::size_t k = 1; k < len; ++k) {
    FieldElement s = FieldElement::zero(f);
    for (std::size_t i = 1; i <= k && i < a.size(); ++i) s += a[i] * out[k - i];
    out[k] = -s * inv0;
  }
  return out;
}

Laurent::Laurent(FieldPtr field, int valuation, std::vector<FieldElement> coeffs)
    : field_(std::move(field)), val_(valuation), c_(std::move(coeffs)) {
  normalize();
}

Laurent Laurent::zero(FieldPtr field, int precision) { return Laurent(std::move(field), precision, {}); }

Laurent Laurent::monomial(const FieldElement& c, int exponent, int precision) {
  if (precision <= exponent) return zero(c.field(), precision);
  std::vector<FieldElement> coeffs(static_cast<std::size_t>(precision - exponent), FieldElement::zero(c.field()));
  coeffs[0] = c;
  return Laurent(c.field(), exponent, std::move(coeffs));
}

void Laurent::normalize() {
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead].is_zero()) ++lead;
  if (lead == 0) return;
  c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
  val_ += static_cast<int>(lead);
}

FieldElement Laurent::coeff(int k) const {
  if (k >= precision()) throw std::out_of_range("coefficient beyond the series precision");
  if (k < val_) return FieldElement::zero(field_);
  return c_[static_cast<std::size_t>(k - val_)];
}

std::vector<FieldElement> Laurent::unit_part(std::size_t n) const {
  if (c_.size() < n)
    throw std::runtime_error("series known to relative precision " + std::to_string(c_.size()) + ", need " +
                             std::to_string(n));
  return {c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(n)};
}

Laurent Laurent::operator+(const Laurent& o) const {
  int lo = std::min(val_, o.val_);
  int hi = std::min(precision(), o.precision());
  std::vector<FieldElement> c;
  for (int k = lo; k < hi; ++k) c.push_back(coeff(k) + o.coeff(k));
  if (hi <= lo) return zero(field_, hi);
  return Laurent(field_, lo, std::move(c));
}

Laurent Laurent::operator-() const {
  std::vector<FieldElement> c;
  for (const auto& x : c_) c.push_back(-x);
  return Laurent(field_, val_, std::move(c));
}

Laurent Laurent::operator-(const Laurent& o) const { return *this + (-o); }

Laurent Laurent::operator*(const Laurent& o) const {
  int v = val_ + o.val_;
  std::size_t len = std::min(c_.size(), o.c_.size());
  if (len == 0) {
    // one factor is zero to its precision
    int prec = std::min(c_.empty() ? precision() + o.val_ : precision() + o.precision(),
                        o.c_.empty() ? o.precision() + val_ : precision() + o.precision());
    return zero(field_, prec);
  }
  return Laurent(field_, v, series_mul(c_, o.c_, len));
}

Laurent Laurent::operator*(const FieldElement& c) const {
  std::vector<FieldElement> out;
  for (const auto& x : c_) out.push_back(x * c);
  if (c.is_zero()) return zero(field_, precision());
  return Laurent(field_, val_, std::move(out));
}

Laurent Laurent::inverse() const {
  if (c_.empty()) throw std::domain_error("series is zero to its precision");
  return Laurent(field_, -val_, series_inverse(c_, c_.size()));
}

}  // namespace jacsidon::genjac
