#include "jacsidon/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace jacsidon::ffield {

Polynomial::Polynomial(FieldPtr field) : field_(std::move(field)) {}

Polynomial::Polynomial(FieldPtr field, std::vector<FieldElement> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_)
    if (!c.field()->same_as(*field_)) throw std::invalid_argument("polynomial coefficient from another field");
  trim();
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Polynomial Polynomial::constant(const FieldElement& c) { return Polynomial(c.field(), {c}); }

Polynomial Polynomial::x(const FieldPtr& field) {
  return Polynomial(field, {FieldElement::zero(field), FieldElement::one(field)});
}

Polynomial Polynomial::linear_root(const FieldElement& a) {
  return Polynomial(a.field(), {-a, FieldElement::one(a.field())});
}

Polynomial Polynomial::from_ints(const FieldPtr& field, const std::vector<std::int64_t>& coeffs) {
  std::vector<FieldElement> c;
  for (auto v : coeffs) c.push_back(FieldElement::from_int(field, v));
  return Polynomial(field, std::move(c));
}

FieldElement Polynomial::coeff(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : FieldElement::zero(field_);
}

FieldElement Polynomial::leading() const {
  return coeffs_.empty() ? FieldElement::zero(field_) : coeffs_.back();
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return *this * leading().inv();
}

Polynomial Polynomial::derivative() const {
  std::vector<FieldElement> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    d.push_back(coeffs_[i] * FieldElement::from_int(field_, static_cast<std::int64_t>(i % field_->characteristic())));
  return Polynomial(field_, std::move(d));
}

FieldElement Polynomial::evaluate(const FieldElement& x) const {
  FieldElement r = FieldElement::zero(field_);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + *it;
  return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<FieldElement> c(std::max(coeffs_.size(), o.coeffs_.size()), FieldElement::zero(field_));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) + o.coeff(i);
  return Polynomial(field_, std::move(c));
}

Polynomial Polynomial::operator-() const {
  std::vector<FieldElement> c;
  for (const auto& a : coeffs_) c.push_back(-a);
  return Polynomial(field_, std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return Polynomial(field_);
  std::vector<FieldElement> c(coeffs_.size() + o.coeffs_.size() - 1, FieldElement::zero(field_));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return Polynomial(field_, std::move(c));
}

Polynomial Polynomial::operator*(const FieldElement& s) const {
  std::vector<FieldElement> c;
  for (const auto& a : coeffs_) c.push_back(a * s);
  return Polynomial(field_, std::move(c));
}

Polynomial Polynomial::operator/(const Polynomial& o) const { return divmod(*this, o).quotient; }
Polynomial Polynomial::operator%(const Polynomial& o) const { return divmod(*this, o).remainder; }

bool Polynomial::operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }

std::string Polynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out += ',';
    out += coeffs_[i].to_string();
  }
  return out;
}

DivMod divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const auto& f = a.field();
  if (a.degree() < b.degree()) return {Polynomial(f), a};
  std::vector<FieldElement> r = a.coeffs();
  std::vector<FieldElement> q(a.degree() - b.degree() + 1, FieldElement::zero(f));
  FieldElement lead_inv = b.leading().inv();
  int db = b.degree();
  for (int i = a.degree(); i >= db; --i) {
    FieldElement c = r[i] * lead_inv;
    if (c.is_zero()) continue;
    q[i - db] = c;
    for (int k = 0; k <= db; ++k) r[i - db + k] -= c * b.coeffs()[k];
  }
  r.resize(db);
  return {Polynomial(f, std::move(q)), Polynomial(f, std::move(r))};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a;
  Polynomial y = b;
  while (!y.is_zero()) {
    Polynomial r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

ExtendedGcd xgcd(const Polynomial& a, const Polynomial& b) {
  const auto& f = a.field();
  Polynomial r0 = a, r1 = b;
  Polynomial s0 = Polynomial::constant(FieldElement::one(f)), s1(f);
  Polynomial t0(f), t1 = Polynomial::constant(FieldElement::one(f));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Polynomial s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Polynomial t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  FieldElement li = r0.leading().inv();
  return {r0 * li, s0 * li, t0 * li};
}

Polynomial powmod(const Polynomial& base, std::uint64_t exponent, const Polynomial& modulus) {
  Polynomial r = Polynomial::constant(FieldElement::one(base.field())) % modulus;
  Polynomial b = base % modulus;
  while (exponent) {
    if (exponent & 1) r = (r * b) % modulus;
    b = (b * b) % modulus;
    exponent >>= 1;
  }
  return r;
}

namespace {

// X^(q^k) mod f by k successive q-th powers.
Polynomial frobenius_x(const Polynomial& f, unsigned k) {
  std::uint64_t q = f.field()->order();
  Polynomial h = Polynomial::x(f.field()) % f;
  for (unsigned i = 0; i < k; ++i) h = powmod(h, q, f);
  return h;
}

void split_roots(const Polynomial& g, std::vector<FieldElement>& out) {
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    out.push_back(-(g.coeff(0) / g.leading()));
    return;
  }
  const auto& f = g.field();
  std::uint64_t q = f->order();
  bool char2 = f->characteristic() == 2;
  for (std::uint64_t v = 0; v < q; ++v) {
    FieldElement delta(f, v);
    Polynomial h(f);
    if (char2) {
      if (delta.is_zero()) continue;
      // Absolute trace of delta X, valued in F_2.
      Polynomial term = Polynomial::constant(delta) * Polynomial::x(f) % g;
      h = term;
      for (unsigned i = 1; i < f->degree(); ++i) {
        term = (term * term) % g;
        h = h + term;
      }
    } else {
      Polynomial lin(f, {delta, FieldElement::one(f)});
      h = powmod(lin, (q - 1) / 2, g) - Polynomial::constant(FieldElement::one(f));
    }
    Polynomial d = gcd(h, g);
    if (d.degree() > 0 && d.degree() < g.degree()) {
      split_roots(d, out);
      split_roots(g / d, out);
      return;
    }
  }
  throw std::logic_error("root splitting failed");
}

}  // namespace

std::vector<FieldElement> roots(const Polynomial& f) {
  if (f.is_zero()) throw std::invalid_argument("roots of the zero polynomial");
  std::vector<FieldElement> out;
  if (f.degree() <= 0) return out;
  Polynomial m = f.monic();
  Polynomial xq = frobenius_x(m, 1);
  Polynomial g = gcd(xq - Polynomial::x(f.field()), m);
  split_roots(g, out);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_irreducible(const Polynomial& f) {
  int n = f.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  Polynomial m = f.monic();
  Polynomial x = Polynomial::x(f.field());
  if (!(frobenius_x(m, static_cast<unsigned>(n)) == x % m)) return false;
  for (auto r : prime_factors(static_cast<std::uint64_t>(n))) {
    Polynomial h = frobenius_x(m, static_cast<unsigned>(n / r)) - x;
    if (gcd(h, m).degree() != 0) return false;
  }
  return true;
}

}  // namespace jacsidon::ffield
