#include "jacsidon/hyperelliptic.hpp"

#include <algorithm>
#include <stdexcept>

#include "jacsidon/error.hpp"

namespace jacsidon::curve {

namespace {

constexpr std::uint64_t kMaxJacobianField = 1u << 10;

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

std::string coeff_list(const Polynomial& p) {
  std::string out;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    if (i) out += ',';
    out += p.coeffs()[i].to_string();
  }
  return out;
}

Polynomial parse_poly(const FieldPtr& f, std::string_view text) {
  std::vector<FieldElement> c;
  if (!text.empty())
    for (auto tok : split(text, ',')) c.push_back(ffield::parse_element(f, tok));
  return Polynomial(f, std::move(c));
}

}  // namespace

bool HypPoint::operator==(const HypPoint& o) const {
  if (inf || o.inf) return inf == o.inf;
  return x == o.x && y == o.y;
}

bool HypPoint::operator<(const HypPoint& o) const {
  if (inf || o.inf) return inf && !o.inf;
  if (x.packed() != o.x.packed()) return x.packed() < o.x.packed();
  return y.packed() < o.y.packed();
}

std::string HypPoint::to_string() const {
  if (inf) return "inf";
  return "(" + x.to_string() + "," + y.to_string() + ")";
}

bool MumfordDivisor::operator<(const MumfordDivisor& o) const {
  if (u.degree() != o.u.degree()) return u.degree() < o.u.degree();
  auto packed = [](const Polynomial& p, int len) {
    std::vector<std::uint64_t> out;
    for (int i = 0; i < len; ++i) out.push_back(p.coeff(i).packed());
    return out;
  };
  int du = std::max(u.degree(), 0);
  auto a = packed(u, du);
  auto b = packed(o.u, du);
  if (a != b) return a < b;
  return packed(v, du) < packed(o.v, du);
}

std::string MumfordDivisor::to_string() const { return "(" + coeff_list(u) + ";" + coeff_list(v) + ")"; }

HypCurve::HypCurve(FieldPtr field, Polynomial f) : field_(std::move(field)), f_(std::move(f)) {
  if (field_->characteristic() == 2) throw std::invalid_argument("genus-2 curves need odd characteristic");
  if (f_.degree() != 5 || !f_.leading().is_one()) throw std::invalid_argument("f must be monic of degree 5");
  if (ffield::gcd(f_, f_.derivative()).degree() != 0) throw std::invalid_argument("f is not squarefree");
}

HypCurve HypCurve::from_ints(const FieldPtr& field, const std::vector<std::int64_t>& coeffs) {
  return HypCurve(field, Polynomial::from_ints(field, coeffs));
}

bool HypCurve::on_curve(const HypPoint& p) const { return p.inf || p.y * p.y == f_.evaluate(p.x); }

bool HypCurve::is_valid(const MumfordDivisor& d) const {
  if (d.u.is_zero() || !d.u.leading().is_one() || d.u.degree() > 2) return false;
  if (d.v.degree() >= d.u.degree()) return false;
  return ((d.v * d.v - f_) % d.u).is_zero();
}

void HypCurve::require_valid(const MumfordDivisor& d) const {
  if (!is_valid(d)) throw std::invalid_argument("invalid Mumford pair " + d.to_string());
}

MumfordDivisor HypCurve::zero() const {
  return {Polynomial::constant(FieldElement::one(field_)), Polynomial(field_)};
}

MumfordDivisor HypCurve::neg(const MumfordDivisor& d) const {
  require_valid(d);
  return {d.u, (-d.v) % d.u};
}

MumfordDivisor HypCurve::reduce(Polynomial u, Polynomial v) const {
  while (u.degree() > 2) {
    Polynomial u2 = (f_ - v * v) / u;
    v = (-v) % u2;
    u = u2;
  }
  u = u.monic();
  v = v % u;
  return {u, v};
}

MumfordDivisor HypCurve::add(const MumfordDivisor& a, const MumfordDivisor& b) const {
  require_valid(a);
  require_valid(b);
  auto g1 = ffield::xgcd(a.u, b.u);
  auto g2 = ffield::xgcd(g1.g, a.v + b.v);
  const Polynomial& d = g2.g;
  Polynomial s1 = g2.s * g1.s;
  Polynomial s2 = g2.s * g1.t;
  const Polynomial& s3 = g2.t;
  Polynomial u = a.u * b.u / (d * d);
  Polynomial v = (s1 * a.u * b.v + s2 * b.u * a.v + s3 * (a.v * b.v + f_)) / d;
  v = v % u;
  return reduce(u, v);
}

MumfordDivisor HypCurve::mul(const MumfordDivisor& d, std::int64_t k) const {
  MumfordDivisor base = k < 0 ? neg(d) : d;
  std::uint64_t n = k < 0 ? static_cast<std::uint64_t>(-k) : static_cast<std::uint64_t>(k);
  MumfordDivisor r = zero();
  while (n) {
    if (n & 1) r = add(r, base);
    n >>= 1;
    if (n) base = add(base, base);
  }
  return r;
}

MumfordDivisor HypCurve::point_class(const HypPoint& p) const {
  if (!on_curve(p)) throw std::invalid_argument("point " + p.to_string() + " is not on the curve");
  if (p.inf) return zero();
  return {Polynomial::linear_root(p.x), Polynomial::constant(p.y)};
}

HypPoint HypCurve::involution(const HypPoint& p) const {
  if (!on_curve(p)) throw std::invalid_argument("point " + p.to_string() + " is not on the curve");
  if (p.inf) return p;
  return HypPoint::affine(p.x, -p.y);
}

HypCurve HypCurve::base_change(const ffield::SubfieldEmbedding& emb) const {
  std::vector<FieldElement> c;
  for (const auto& a : f_.coeffs()) c.push_back(emb.embed(a));
  return HypCurve(emb.ext(), Polynomial(emb.ext(), std::move(c)));
}

std::uint64_t HypCurve::key(const MumfordDivisor& d) const {
  std::uint64_t q = field_->order();
  std::uint64_t k = static_cast<std::uint64_t>(std::max(d.u.degree(), 0));
  for (int i = 0; i < 2; ++i) k = k * q + d.u.coeff(i).packed();
  for (int i = 0; i < 2; ++i) k = k * q + d.v.coeff(i).packed();
  return k;
}

std::string HypCurve::to_string() const { return "hyp:" + field_->to_string() + ":" + coeff_list(f_); }

HypCurve parse_hyp_curve(std::string_view text) {
  auto parts = split(text, ':');
  if (parts[0] != "hyp" || (parts.size() != 3 && parts.size() != 4))
    throw std::invalid_argument("curve must look like hyp:<field>:f0,...,f5");
  FieldPtr f = parts.size() == 4 ? ffield::parse_spec(std::string(parts[1]) + ":" + std::string(parts[2]))
                                 : ffield::parse_spec(parts[1]);
  return HypCurve(f, parse_poly(f, parts.back()));
}

MumfordDivisor parse_mumford(const HypCurve& c, std::string_view text) {
  if (text.size() < 3 || text.front() != '(' || text.back() != ')')
    throw std::invalid_argument("divisor must look like (u-coeffs;v-coeffs)");
  auto parts = split(text.substr(1, text.size() - 2), ';');
  if (parts.size() != 2) throw std::invalid_argument("divisor must have u and v parts");
  MumfordDivisor d{parse_poly(c.field(), parts[0]), parse_poly(c.field(), parts[1])};
  c.require_valid(d);
  return d;
}

std::vector<HypPoint> hyp_points(const HypCurve& c) {
  const auto& f = c.field();
  if (f->order() > ffield::kMaxEnumerableOrder) throw CapExceeded("point enumeration over a field larger than 2^20");
  std::vector<HypPoint> pts{HypPoint::infinity()};
  for (std::uint64_t v = 0; v < f->order(); ++v) {
    FieldElement x(f, v);
    FieldElement r = c.f().evaluate(x);
    if (!ffield::is_square(r)) continue;
    FieldElement y = ffield::sqrt(r);
    pts.push_back(HypPoint::affine(x, y));
    if (!y.is_zero()) pts.push_back(HypPoint::affine(x, -y));
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

std::vector<MumfordDivisor> jac_enumerate(const HypCurve& c) {
  const auto& f = c.field();
  std::uint64_t q = f->order();
  if (q > kMaxJacobianField) throw CapExceeded("jacobian enumeration over a field larger than 2^10");
  std::vector<MumfordDivisor> out{c.zero()};
  for (const auto& p : hyp_points(c))
    if (!p.inf) out.push_back(c.point_class(p));

  // deg u = 2: v = v1 X + v0 with v^2 = f mod u.
  FieldElement two = FieldElement::from_int(f, 2);
  FieldElement one = FieldElement::one(f);
  for (std::uint64_t a = 0; a < q; ++a) {
    for (std::uint64_t b = 0; b < q; ++b) {
      FieldElement u0(f, b), u1(f, a);
      Polynomial u(f, {u0, u1, one});
      Polynomial r = c.f() % u;
      FieldElement f0 = r.coeff(0), f1 = r.coeff(1);
      // v^2 mod u = (2 v1 v0 - v1^2 u1) X + (v0^2 - v1^2 u0)
      for (std::uint64_t w = 1; w < q; ++w) {
        FieldElement v1(f, w);
        FieldElement v0 = (f1 + v1 * v1 * u1) / (two * v1);
        if (v0 * v0 - v1 * v1 * u0 == f0) out.push_back({u, Polynomial(f, {v0, v1})});
      }
      if (f1.is_zero() && ffield::is_square(f0)) {
        FieldElement v0 = ffield::sqrt(f0);
        out.push_back({u, Polynomial(f, {v0})});
        if (!v0.is_zero()) out.push_back({u, Polynomial(f, {-v0})});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace jacsidon::curve
