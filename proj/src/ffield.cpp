#include "jacsidon/ffield.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "jacsidon/error.hpp"
#include "jacsidon/poly.hpp"

namespace jacsidon::ffield {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod_int(std::uint64_t a, std::uint64_t k, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (k) {
    if (k & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    k >>= 1;
  }
  return r;
}

std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw std::invalid_argument("not an unsigned integer: '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// ---------------------------------------------------------------- FieldSpec

FieldSpec::FieldSpec(std::uint64_t p, unsigned e, std::vector<std::uint64_t> modpoly)
    : p_(p), e_(e), q_(1), modpoly_(std::move(modpoly)) {
  for (unsigned i = 0; i < e; ++i) {
    p_powers_.push_back(q_);
    q_ *= p;
  }
}

std::string FieldSpec::to_string() const {
  std::ostringstream os;
  os << p_ << '^' << e_ << ':';
  for (std::size_t i = 0; i < modpoly_.size(); ++i) os << (i ? "," : "") << modpoly_[i];
  return os.str();
}

bool FieldSpec::same_as(const FieldSpec& o) const {
  return this == &o || (p_ == o.p_ && e_ == o.e_ && modpoly_ == o.modpoly_);
}

std::vector<std::uint64_t> FieldSpec::unpack(std::uint64_t v) const {
  std::vector<std::uint64_t> c(e_);
  for (unsigned i = 0; i < e_; ++i) {
    c[i] = v % p_;
    v /= p_;
  }
  return c;
}

std::uint64_t FieldSpec::pack(std::span<const std::uint64_t> c) const {
  std::uint64_t v = 0;
  for (unsigned i = 0; i < e_ && i < c.size(); ++i) v += (c[i] % p_) * p_powers_[i];
  return v;
}

std::uint64_t FieldSpec::add(std::uint64_t a, std::uint64_t b) const {
  if (e_ == 1) {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  if (p_ == 2) return a ^ b;
  std::uint64_t r = 0;
  for (unsigned i = 0; i < e_; ++i) {
    std::uint64_t s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    r += s * p_powers_[i];
    a /= p_;
    b /= p_;
  }
  return r;
}

std::uint64_t FieldSpec::neg(std::uint64_t a) const {
  if (e_ == 1) return a == 0 ? 0 : p_ - a;
  if (p_ == 2) return a;
  std::uint64_t r = 0;
  for (unsigned i = 0; i < e_; ++i) {
    std::uint64_t d = a % p_;
    r += (d == 0 ? 0 : p_ - d) * p_powers_[i];
    a /= p_;
  }
  return r;
}

std::uint64_t FieldSpec::sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }

std::uint64_t FieldSpec::mul(std::uint64_t a, std::uint64_t b) const {
  if (e_ == 1) return mulmod(a, b, p_);
  auto x = unpack(a);
  auto y = unpack(b);
  std::vector<std::uint64_t> prod(2 * e_ - 1, 0);
  for (unsigned i = 0; i < e_; ++i) {
    if (x[i] == 0) continue;
    for (unsigned j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + mulmod(x[i], y[j], p_)) % p_;
  }
  for (std::size_t i = prod.size() - 1; i >= e_; --i) {
    std::uint64_t c = prod[i];
    if (c == 0) continue;
    prod[i] = 0;
    for (unsigned k = 0; k < e_; ++k) {
      std::uint64_t t = mulmod(c, modpoly_[k], p_);
      std::size_t idx = i - e_ + k;
      prod[idx] = (prod[idx] + p_ - t) % p_;
    }
  }
  return pack(std::span<const std::uint64_t>(prod.data(), e_));
}

std::uint64_t FieldSpec::pow(std::uint64_t a, std::uint64_t k) const {
  std::uint64_t r = 1;
  while (k) {
    if (k & 1) r = mul(r, a);
    a = mul(a, a);
    k >>= 1;
  }
  return r;
}

std::uint64_t FieldSpec::inv(std::uint64_t a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  if (e_ == 1) return powmod_int(a, p_ - 2, p_);
  return pow(a, q_ - 2);
}

// ------------------------------------------------------------- construction

FieldPtr make_spec_with_modpoly(std::uint64_t p, unsigned e, std::vector<std::uint64_t> modpoly) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
  if (e == 0) throw std::invalid_argument("extension degree must be at least 1");
  long double size = std::pow(static_cast<long double>(p), static_cast<long double>(e));
  if (size > static_cast<long double>(kMaxFieldOrder))
    throw CapExceeded("field order " + std::to_string(p) + "^" + std::to_string(e) + " exceeds 2^40");
  if (modpoly.size() != e + 1 || modpoly.back() != 1)
    throw std::invalid_argument("modulus must be monic of degree " + std::to_string(e));
  for (auto c : modpoly)
    if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
  if (e == 1) {
    if (modpoly != std::vector<std::uint64_t>{0, 1})
      throw std::invalid_argument("prime fields use the placeholder modulus X");
  } else {
    auto base = make_spec(p, 1);
    std::vector<std::int64_t> ints(modpoly.begin(), modpoly.end());
    if (!is_irreducible(Polynomial::from_ints(base, ints)))
      throw std::invalid_argument("modulus is reducible over F_" + std::to_string(p));
  }
  return FieldPtr(new FieldSpec(p, e, std::move(modpoly)));
}

FieldPtr make_spec(std::uint64_t p, unsigned e) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
  if (e == 0) throw std::invalid_argument("extension degree must be at least 1");
  if (e == 1) return FieldPtr(new FieldSpec(p, 1, {0, 1}));
  long double size = std::pow(static_cast<long double>(p), static_cast<long double>(e));
  if (size > static_cast<long double>(kMaxFieldOrder))
    throw CapExceeded("field order " + std::to_string(p) + "^" + std::to_string(e) + " exceeds 2^40");

  auto base = make_spec(p, 1);
  // Lexicographic from the constant term: c0 is the most significant digit
  // of the scan. c0 = 0 is skipped since X divides such polynomials.
  std::vector<std::uint64_t> c(e, 0);
  c[0] = 1;
  while (true) {
    std::vector<std::int64_t> ints(c.begin(), c.end());
    ints.push_back(1);
    if (is_irreducible(Polynomial::from_ints(base, ints))) {
      std::vector<std::uint64_t> mod(c.begin(), c.end());
      mod.push_back(1);
      return FieldPtr(new FieldSpec(p, e, std::move(mod)));
    }
    int i = static_cast<int>(e) - 1;
    while (i >= 0 && ++c[i] == p) c[i--] = 0;
    if (i < 0) break;
  }
  throw std::logic_error("no irreducible polynomial found");
}

FieldPtr parse_spec(std::string_view text) {
  auto colon = text.find(':');
  auto caret = text.find('^');
  if (caret == std::string_view::npos)
    throw std::invalid_argument("field spec must look like p^e:c0,...,ce");
  std::uint64_t p = parse_u64(text.substr(0, caret));
  auto deg_text = colon == std::string_view::npos ? text.substr(caret + 1)
                                                  : text.substr(caret + 1, colon - caret - 1);
  auto e = static_cast<unsigned>(parse_u64(deg_text));
  if (colon == std::string_view::npos) return make_spec(p, e);
  std::vector<std::uint64_t> mod;
  for (auto tok : split(text.substr(colon + 1), ',')) mod.push_back(parse_u64(tok));
  return make_spec_with_modpoly(p, e, std::move(mod));
}

// ------------------------------------------------------------ FieldElement

FieldElement::FieldElement(FieldPtr field, std::uint64_t packed) : field_(std::move(field)), value_(packed) {
  if (!field_) throw std::invalid_argument("element without a field");
  if (packed >= field_->order()) throw std::out_of_range("packed element out of range");
}

FieldElement FieldElement::from_int(const FieldPtr& field, std::int64_t value) {
  auto p = static_cast<std::int64_t>(field->characteristic());
  std::int64_t r = value % p;
  if (r < 0) r += p;
  return {field, static_cast<std::uint64_t>(r)};
}

FieldElement FieldElement::from_coeffs(const FieldPtr& field, std::span<const std::uint64_t> coeffs) {
  if (coeffs.size() > field->degree()) throw std::invalid_argument("too many coefficients");
  for (auto c : coeffs)
    if (c >= field->characteristic()) throw std::invalid_argument("coefficient out of range");
  return {field, field->pack(coeffs)};
}

FieldElement FieldElement::generator_x(const FieldPtr& field) {
  if (field->degree() == 1) return zero(field);
  return {field, field->characteristic()};
}

void FieldElement::check_same(const FieldElement& o) const {
  if (!field_ || !o.field_) throw std::invalid_argument("uninitialized field element");
  if (field_ != o.field_ && !field_->same_as(*o.field_))
    throw std::invalid_argument("field mismatch: " + field_->to_string() + " vs " + o.field_->to_string());
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->add(value_, o.value_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->sub(value_, o.value_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->mul(value_, o.value_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inv(); }
FieldElement FieldElement::operator-() const { return {field_, field_->neg(value_)}; }
FieldElement FieldElement::inv() const { return {field_, field_->inv(value_)}; }
FieldElement FieldElement::pow(std::uint64_t k) const { return {field_, field_->pow(value_, k)}; }

bool FieldElement::operator==(const FieldElement& o) const {
  if (value_ != o.value_) return false;
  if (field_ == o.field_) return true;
  return field_ && o.field_ && field_->same_as(*o.field_);
}

std::string FieldElement::to_string() const {
  if (field_->degree() == 1) return std::to_string(value_);
  std::string out;
  auto c = coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(c[i]);
  }
  return out;
}

FieldElement parse_element(const FieldPtr& field, std::string_view text) {
  std::vector<std::uint64_t> c;
  for (auto tok : split(text, '.')) c.push_back(parse_u64(tok));
  return FieldElement::from_coeffs(field, c);
}

// --------------------------------------------------- Frobenius, norm, trace

FieldElement frobenius(const FieldElement& a) { return a.pow(a.spec().characteristic()); }

FieldElement frobenius_power(const FieldElement& a, unsigned k) {
  FieldElement r = a;
  for (unsigned i = 0; i < k % a.spec().degree(); ++i) r = frobenius(r);
  return r;
}

namespace {
void check_base_degree(const FieldSpec& f, unsigned d) {
  if (d == 0 || f.degree() % d != 0)
    throw std::invalid_argument("base degree " + std::to_string(d) + " does not divide " +
                                std::to_string(f.degree()));
}
}  // namespace

FieldElement norm_to_base(const FieldElement& a, unsigned base_degree) {
  check_base_degree(a.spec(), base_degree);
  FieldElement r = FieldElement::one(a.field());
  FieldElement c = a;
  for (unsigned i = 0; i < a.spec().degree() / base_degree; ++i) {
    r *= c;
    for (unsigned s = 0; s < base_degree; ++s) c = frobenius(c);
  }
  return r;
}

FieldElement trace_to_base(const FieldElement& a, unsigned base_degree) {
  check_base_degree(a.spec(), base_degree);
  FieldElement r = FieldElement::zero(a.field());
  FieldElement c = a;
  for (unsigned i = 0; i < a.spec().degree() / base_degree; ++i) {
    r += c;
    for (unsigned s = 0; s < base_degree; ++s) c = frobenius(c);
  }
  return r;
}

// ------------------------------------------------------ multiplicative group

std::uint64_t multiplicative_order(const FieldElement& a) {
  if (a.is_zero()) throw std::domain_error("zero has no multiplicative order");
  std::uint64_t n = a.spec().order() - 1;
  std::uint64_t order = n;
  for (auto r : prime_factors(n)) {
    while (order % r == 0 && a.pow(order / r).is_one()) order /= r;
  }
  return order;
}

FieldElement multiplicative_generator(const FieldPtr& field) {
  std::uint64_t n = field->order() - 1;
  auto factors = prime_factors(n);
  for (std::uint64_t v = 1; v < field->order(); ++v) {
    FieldElement g(field, v);
    bool ok = true;
    for (auto r : factors) {
      if (g.pow(n / r).is_one()) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("no multiplicative generator");
}

DiscreteLog::DiscreteLog(FieldElement generator) : g_(std::move(generator)) {
  group_order_ = g_.spec().order() - 1;
  if (group_order_ > kMaxDiscreteLogOrder) throw CapExceeded("discrete log group order exceeds 2^40");
  if (g_.is_zero() || multiplicative_order(g_) != group_order_)
    throw std::invalid_argument("discrete log base " + g_.to_string() + " is not a generator");
  step_ = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(group_order_))));
  if (step_ == 0) step_ = 1;
  baby_.reserve(step_);
  FieldElement cur = FieldElement::one(g_.field());
  for (std::uint64_t j = 0; j < step_; ++j) {
    baby_.emplace(cur.packed(), j);
    cur *= g_;
  }
  giant_ = g_.pow(step_).inv();
}

std::uint64_t DiscreteLog::operator()(const FieldElement& x) const {
  if (x.is_zero()) throw std::domain_error("discrete log of zero");
  FieldElement y = x;
  for (std::uint64_t i = 0; i <= step_; ++i) {
    auto it = baby_.find(y.packed());
    if (it != baby_.end()) return (i * step_ + it->second) % group_order_;
    y *= giant_;
  }
  throw std::logic_error("discrete log not found");
}

std::uint64_t discrete_log(const FieldElement& g, const FieldElement& x) { return DiscreteLog(g)(x); }

// -------------------------------------------------------------- square roots

bool is_square(const FieldElement& a) {
  if (a.is_zero() || a.spec().characteristic() == 2) return true;
  return a.pow((a.spec().order() - 1) / 2).is_one();
}

FieldElement sqrt(const FieldElement& a) {
  const auto& f = a.field();
  std::uint64_t q = f->order();
  if (a.is_zero()) return a;
  if (f->characteristic() == 2) return a.pow(q / 2);
  if (!is_square(a)) throw std::domain_error(a.to_string() + " is not a square");

  std::uint64_t odd = q - 1;
  unsigned s = 0;
  while (odd % 2 == 0) {
    odd /= 2;
    ++s;
  }
  FieldElement z;
  for (std::uint64_t v = 2; v < q; ++v) {
    FieldElement c(f, v);
    if (!is_square(c)) {
      z = c;
      break;
    }
  }
  FieldElement r = a.pow((odd + 1) / 2);
  FieldElement t = a.pow(odd);
  FieldElement c = s > 1 ? z.pow(odd) : FieldElement::one(f);
  unsigned m = s;
  while (!t.is_one()) {
    unsigned i = 0;
    FieldElement t2 = t;
    while (!t2.is_one()) {
      t2 *= t2;
      ++i;
    }
    FieldElement b = c;
    for (unsigned k = 0; k + i + 1 < m; ++k) b *= b;
    r *= b;
    c = b * b;
    t *= c;
    m = i;
  }
  FieldElement other = -r;
  return other < r ? other : r;
}

// ------------------------------------------------------- subfield embedding

namespace {

// Inverse of a square matrix over F_p by Gauss-Jordan elimination.
std::vector<std::vector<std::uint64_t>> invert_mod_p(std::vector<std::vector<std::uint64_t>> m,
                                                     std::uint64_t p) {
  std::size_t n = m.size();
  std::vector<std::vector<std::uint64_t>> inv(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) throw std::logic_error("singular basis matrix");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    std::uint64_t s = powmod_int(m[col][col], p - 2, p);
    for (std::size_t k = 0; k < n; ++k) {
      m[col][k] = mulmod(m[col][k], s, p);
      inv[col][k] = mulmod(inv[col][k], s, p);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      std::uint64_t f = m[r][col];
      for (std::size_t k = 0; k < n; ++k) {
        m[r][k] = (m[r][k] + p - mulmod(f, m[col][k], p)) % p;
        inv[r][k] = (inv[r][k] + p - mulmod(f, inv[col][k], p)) % p;
      }
    }
  }
  return inv;
}

}  // namespace

SubfieldEmbedding::SubfieldEmbedding(FieldPtr sub, FieldPtr ext) : sub_(std::move(sub)), ext_(std::move(ext)) {
  if (sub_->characteristic() != ext_->characteristic())
    throw std::invalid_argument("embedding between different characteristics");
  unsigned d = sub_->degree();
  unsigned e = ext_->degree();
  if (e % d != 0)
    throw std::invalid_argument("degree " + std::to_string(d) + " does not divide " + std::to_string(e));
  std::uint64_t p = ext_->characteristic();

  if (sub_->same_as(*ext_)) {
    root_ = FieldElement::generator_x(ext_);
  } else {
    std::vector<FieldElement> mod;
    for (auto c : sub_->modpoly()) mod.push_back(FieldElement(ext_, c));
    auto rts = roots(Polynomial(ext_, mod));
    if (rts.empty()) throw std::logic_error("subfield modulus has no root in the extension");
    root_ = rts.front();
  }

  // Column (i, j) holds the F_p coordinates of root^j * T^i.
  unsigned r = e / d;
  std::vector<std::vector<std::uint64_t>> m(e, std::vector<std::uint64_t>(e, 0));
  FieldElement t_pow = FieldElement::one(ext_);
  FieldElement t = FieldElement::generator_x(ext_);
  if (e == 1) t = FieldElement::one(ext_);
  for (unsigned i = 0; i < r; ++i) {
    FieldElement rj = FieldElement::one(ext_);
    for (unsigned j = 0; j < d; ++j) {
      auto c = (rj * t_pow).coeffs();
      for (unsigned row = 0; row < e; ++row) m[row][i * d + j] = c[row];
      rj *= root_;
    }
    t_pow *= t;
  }
  inverse_ = invert_mod_p(std::move(m), p);
}

FieldElement SubfieldEmbedding::embed(const FieldElement& a) const {
  if (!a.field()->same_as(*sub_)) throw std::invalid_argument("element is not in the embedded subfield");
  FieldElement r = FieldElement::zero(ext_);
  FieldElement pw = FieldElement::one(ext_);
  for (auto c : a.coeffs()) {
    r += FieldElement(ext_, c) * pw;
    pw *= root_;
  }
  return r;
}

std::vector<FieldElement> SubfieldEmbedding::coordinates(const FieldElement& z) const {
  if (!z.field()->same_as(*ext_)) throw std::invalid_argument("element is not in the extension field");
  std::uint64_t p = ext_->characteristic();
  unsigned d = sub_->degree();
  unsigned e = ext_->degree();
  auto c = z.coeffs();
  std::vector<std::uint64_t> flat(e, 0);
  for (unsigned row = 0; row < e; ++row) {
    u128 acc = 0;
    for (unsigned k = 0; k < e; ++k) acc += static_cast<u128>(inverse_[row][k]) * c[k] % p;
    flat[row] = static_cast<std::uint64_t>(acc % p);
  }
  std::vector<FieldElement> out;
  for (unsigned i = 0; i < e / d; ++i)
    out.push_back(FieldElement::from_coeffs(sub_, std::span<const std::uint64_t>(flat.data() + i * d, d)));
  return out;
}

bool SubfieldEmbedding::contains(const FieldElement& z) const {
  auto c = coordinates(z);
  return std::all_of(c.begin() + 1, c.end(), [](const FieldElement& x) { return x.is_zero(); });
}

FieldElement SubfieldEmbedding::descend(const FieldElement& z) const {
  auto c = coordinates(z);
  for (std::size_t i = 1; i < c.size(); ++i)
    if (!c[i].is_zero()) throw std::invalid_argument(z.to_string() + " is not in the subfield image");
  return c[0];
}

FieldElement embed_subfield(const FieldElement& a, const FieldPtr& target) {
  return SubfieldEmbedding(a.field(), target).embed(a);
}

}  // namespace jacsidon::ffield
