#include "jacsidon/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jacsidon/abgroup.hpp"
#include "jacsidon/error.hpp"

namespace jacsidon::curve {

using ffield::FieldElement;

namespace {

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

// Quadratic character table indexed by packed value: 0, 1 or -1.
std::vector<signed char> quadratic_character(const FieldPtr& f) {
  std::vector<signed char> chi(f->order(), -1);
  chi[0] = 0;
  for (std::uint64_t v = 1; v < f->order(); ++v) chi[FieldElement(f, v).pow(2).packed()] = 1;
  return chi;
}

}  // namespace

bool ECPoint::operator==(const ECPoint& o) const {
  if (inf || o.inf) return inf == o.inf;
  return x == o.x && y == o.y;
}

bool ECPoint::operator<(const ECPoint& o) const {
  if (inf || o.inf) return inf && !o.inf;
  if (x.packed() != o.x.packed()) return x.packed() < o.x.packed();
  return y.packed() < o.y.packed();
}

std::string ECPoint::to_string() const {
  if (inf) return "inf";
  return "(" + x.to_string() + "," + y.to_string() + ")";
}

EllipticCurve::EllipticCurve(FieldPtr field, FieldElement a2, FieldElement a4, FieldElement a6)
    : field_(std::move(field)), a2_(std::move(a2)), a4_(std::move(a4)), a6_(std::move(a6)) {
  if (field_->characteristic() == 2) throw std::invalid_argument("elliptic curves in characteristic 2 are not supported");
  if (discriminant().is_zero()) throw std::invalid_argument("singular cubic: " + to_string());
}

EllipticCurve EllipticCurve::short_form(const FieldPtr& field, std::uint64_t a, std::uint64_t b) {
  return EllipticCurve(field, FieldElement::zero(field), FieldElement(field, a), FieldElement(field, b));
}

FieldElement EllipticCurve::discriminant() const {
  auto n = [&](std::int64_t k) { return FieldElement::from_int(field_, k); };
  const auto &a = a2_, &b = a4_, &c = a6_;
  return a * a * b * b - n(4) * b * b * b - n(4) * a * a * a * c - n(27) * c * c + n(18) * a * b * c;
}

FieldElement EllipticCurve::rhs(const FieldElement& x) const { return ((x + a2_) * x + a4_) * x + a6_; }

FieldElement EllipticCurve::rhs_prime(const FieldElement& x) const {
  auto n = [&](std::int64_t k) { return FieldElement::from_int(field_, k); };
  return (n(3) * x + n(2) * a2_) * x + a4_;
}

bool EllipticCurve::on_curve(const ECPoint& p) const {
  if (p.inf) return true;
  if (!p.x.field()->same_as(*field_) || !p.y.field()->same_as(*field_)) return false;
  return p.y * p.y == rhs(p.x);
}

void EllipticCurve::require_on_curve(const ECPoint& p) const {
  if (!on_curve(p)) throw std::invalid_argument("point " + p.to_string() + " is not on " + to_string());
}

FieldElement EllipticCurve::slope(const ECPoint& p, const ECPoint& q) const {
  if (p.x == q.x) return rhs_prime(p.x) / (p.y + p.y);
  return (q.y - p.y) / (q.x - p.x);
}

ECPoint EllipticCurve::add(const ECPoint& p, const ECPoint& q) const {
  require_on_curve(p);
  require_on_curve(q);
  if (p.inf) return q;
  if (q.inf) return p;
  if (p.x == q.x && p.y == -q.y) return ECPoint::infinity();
  FieldElement lambda = slope(p, q);
  FieldElement x3 = lambda * lambda - a2_ - p.x - q.x;
  FieldElement y3 = lambda * (p.x - x3) - p.y;
  return ECPoint::affine(x3, y3);
}

ECPoint EllipticCurve::neg(const ECPoint& p) const {
  require_on_curve(p);
  if (p.inf) return p;
  return ECPoint::affine(p.x, -p.y);
}

ECPoint EllipticCurve::mul(const ECPoint& p, std::int64_t k) const {
  ECPoint base = k < 0 ? neg(p) : p;
  std::uint64_t n = k < 0 ? static_cast<std::uint64_t>(-k) : static_cast<std::uint64_t>(k);
  ECPoint r = ECPoint::infinity();
  while (n) {
    if (n & 1) r = add(r, base);
    n >>= 1;
    if (n) base = add(base, base);
  }
  return r;
}

EllipticCurve EllipticCurve::base_change(const ffield::SubfieldEmbedding& emb) const {
  if (!emb.sub()->same_as(*field_)) throw std::invalid_argument("embedding does not start at the curve's field");
  return EllipticCurve(emb.ext(), emb.embed(a2_), emb.embed(a4_), emb.embed(a6_));
}

ECPoint EllipticCurve::embed_point(const ECPoint& p, const ffield::SubfieldEmbedding& emb) const {
  require_on_curve(p);
  if (p.inf) return p;
  return ECPoint::affine(emb.embed(p.x), emb.embed(p.y));
}

std::string EllipticCurve::to_string() const {
  std::string out = "ec:" + field_->to_string() + ":";
  if (a2_.is_zero()) return out + a4_.to_string() + "," + a6_.to_string();
  return out + a2_.to_string() + "," + a4_.to_string() + "," + a6_.to_string();
}

bool EllipticCurve::operator==(const EllipticCurve& o) const {
  return field_->same_as(*o.field_) && a2_ == o.a2_ && a4_ == o.a4_ && a6_ == o.a6_;
}

EllipticCurve parse_curve(std::string_view text) {
  auto parts = split(text, ':');
  if (parts.size() < 3 || parts[0] != "ec") throw std::invalid_argument("curve must look like ec:<field>:A,B");
  FieldPtr f;
  std::string_view coeffs;
  if (parts.size() == 4) {
    f = ffield::parse_spec(std::string(parts[1]) + ":" + std::string(parts[2]));
    coeffs = parts[3];
  } else if (parts.size() == 3) {
    f = ffield::parse_spec(parts[1]);
    coeffs = parts[2];
  } else {
    throw std::invalid_argument("malformed curve text");
  }
  std::vector<FieldElement> c;
  for (auto tok : split(coeffs, ',')) c.push_back(ffield::parse_element(f, tok));
  if (c.size() == 2) return EllipticCurve(f, FieldElement::zero(f), c[0], c[1]);
  if (c.size() == 3) return EllipticCurve(f, c[0], c[1], c[2]);
  throw std::invalid_argument("curve needs 2 or 3 coefficients");
}

ECPoint parse_point(const EllipticCurve& e, std::string_view text) {
  if (text == "inf") return ECPoint::infinity();
  if (text.size() < 5 || text.front() != '(' || text.back() != ')')
    throw std::invalid_argument("point must look like (x,y) or inf");
  auto parts = split(text.substr(1, text.size() - 2), ',');
  if (parts.size() != 2) throw std::invalid_argument("point must have two coordinates");
  ECPoint p = ECPoint::affine(ffield::parse_element(e.field(), parts[0]), ffield::parse_element(e.field(), parts[1]));
  e.require_on_curve(p);
  return p;
}

std::vector<ECPoint> ec_points(const EllipticCurve& e) {
  const auto& f = e.field();
  if (f->order() > ffield::kMaxEnumerableOrder) throw CapExceeded("point enumeration over a field larger than 2^20");
  std::vector<ECPoint> pts{ECPoint::infinity()};
  for (std::uint64_t v = 0; v < f->order(); ++v) {
    FieldElement x(f, v);
    FieldElement r = e.rhs(x);
    if (!ffield::is_square(r)) continue;
    FieldElement y = ffield::sqrt(r);
    pts.push_back(ECPoint::affine(x, y));
    if (!y.is_zero()) pts.push_back(ECPoint::affine(x, -y));
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

std::uint64_t ec_group_order(const EllipticCurve& e) {
  const auto& f = e.field();
  if (f->order() > ffield::kMaxEnumerableOrder) throw CapExceeded("point counting over a field larger than 2^20");
  auto chi = quadratic_character(f);
  std::int64_t n = 1;
  for (std::uint64_t v = 0; v < f->order(); ++v) n += 1 + chi[e.rhs(FieldElement(f, v)).packed()];
  return static_cast<std::uint64_t>(n);
}

std::uint64_t ec_point_order(const EllipticCurve& e, const ECPoint& p, std::uint64_t group_order) {
  if (!e.mul(p, static_cast<std::int64_t>(group_order)).inf)
    throw std::invalid_argument("group order does not annihilate the point");
  std::uint64_t ord = group_order;
  for (auto [ell, k] : abgroup::factorize(group_order)) {
    (void)k;
    while (ord % ell == 0 && e.mul(p, static_cast<std::int64_t>(ord / ell)).inf) ord /= ell;
  }
  return ord;
}

std::optional<ECPoint> ec_cyclic_generator(const EllipticCurve& e) {
  auto pts = ec_points(e);
  std::uint64_t n = pts.size();
  for (const auto& p : pts)
    if (ec_point_order(e, p, n) == n) return p;
  return std::nullopt;
}

bool hasse_admissible(std::uint64_t q, std::uint64_t n) {
  auto t = static_cast<std::int64_t>(q + 1) - static_cast<std::int64_t>(n);
  return static_cast<__int128>(t) * t <= static_cast<__int128>(4) * q;
}

EllipticCurve find_cyclic_curve(const FieldPtr& field, std::uint64_t n) {
  std::uint64_t q = field->order();
  std::uint64_t p = field->characteristic();
  if (p == 2) throw std::invalid_argument("characteristic 2 is not supported");
  if (q > (1u << 16)) throw CapExceeded("curve search over a field larger than 2^16");
  if (!hasse_admissible(q, n))
    throw std::invalid_argument("order " + std::to_string(n) + " is outside the Hasse window for q = " +
                                std::to_string(q));
  if (n % p == 0) throw std::invalid_argument("order " + std::to_string(n) + " is divisible by the characteristic");

  auto chi = quadratic_character(field);
  auto count = [&](const EllipticCurve& e) {
    std::int64_t c = 1;
    for (std::uint64_t v = 0; v < q; ++v) c += 1 + chi[e.rhs(FieldElement(field, v)).packed()];
    return static_cast<std::uint64_t>(c);
  };
  auto try_curve = [&](const FieldElement& a2, const FieldElement& a4, const FieldElement& a6) -> bool {
    auto n_ = [&](std::int64_t k) { return FieldElement::from_int(field, k); };
    auto disc = a2 * a2 * a4 * a4 - n_(4) * a4 * a4 * a4 - n_(4) * a2 * a2 * a2 * a6 - n_(27) * a6 * a6 +
                n_(18) * a2 * a4 * a6;
    if (disc.is_zero()) return false;
    EllipticCurve e(field, a2, a4, a6);
    return count(e) == n && ec_cyclic_generator(e).has_value();
  };

  if (p >= 5) {
    for (std::uint64_t a = 0; a < q; ++a) {
      for (std::uint64_t b = 0; b < q; ++b) {
        FieldElement fa(field, a), fb(field, b), zero = FieldElement::zero(field);
        if (try_curve(zero, fa, fb)) return EllipticCurve(field, zero, fa, fb);
      }
    }
  } else {
    for (std::uint64_t a2 = 0; a2 < q; ++a2)
      for (std::uint64_t a4 = 0; a4 < q; ++a4)
        for (std::uint64_t a6 = 0; a6 < q; ++a6) {
          FieldElement f2(field, a2), f4(field, a4), f6(field, a6);
          if (try_curve(f2, f4, f6)) return EllipticCurve(field, f2, f4, f6);
        }
  }
  throw std::runtime_error("no cyclic curve of order " + std::to_string(n) + " found over " + field->to_string() +
                           " after scanning all coefficient tuples");
}

EllipticCurve random_curve(const FieldPtr& field, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> c(0, field->order() - 1);
  while (true) {
    FieldElement a2(field, c(rng)), a4(field, c(rng)), a6(field, c(rng));
    try {
      return EllipticCurve(field, a2, a4, a6);
    } catch (const std::invalid_argument&) {
    }
  }
}

}  // namespace jacsidon::curve
