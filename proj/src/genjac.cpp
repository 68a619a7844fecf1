#include "jacsidon/genjac.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "jacsidon/error.hpp"
#include "jacsidon/poly.hpp"

namespace jacsidon::genjac {

using curve::EllipticCurve;
using ffield::SubfieldEmbedding;

namespace {

// Extra terms kept in local expansions beyond the largest multiplicity; a
// line meets the curve with multiplicity at most 3 and has a pole of order
// at most 3 at 0_E.
constexpr unsigned kGuardTerms = 8;

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

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > (std::uint64_t{1} << 62) / a) throw CapExceeded("group order overflows 2^62");
  return a * b;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r = checked_mul(r, b);
  return r;
}

Jet jet_mul(const Jet& a, const Jet& b) { return series_mul(a, b, a.size()); }
Jet jet_inv(const Jet& a) { return series_inverse(a, a.size()); }
Jet jet_scale(Jet a, const FieldElement& c) {
  for (auto& x : a) x *= c;
  return a;
}
Jet jet_one(const FieldPtr& f, unsigned n) {
  Jet j(n, FieldElement::zero(f));
  j[0] = FieldElement::one(f);
  return j;
}

void append_packed(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

}  // namespace

std::string uniformizer_name(Uniformizer u) {
  switch (u) {
    case Uniformizer::XMinusA: return "X-a";
    case Uniformizer::Y: return "Y";
    case Uniformizer::InvX: return "1/X";
    case Uniformizer::XOverY: return "x/y";
  }
  return "?";
}

bool GJElement::operator==(const GJElement& o) const { return base == o.base && jets == o.jets; }

std::string GJElement::to_string() const {
  std::string out = base.to_string() + "|";
  for (std::size_t i = 0; i < jets.size(); ++i) {
    if (i) out += ';';
    for (std::size_t j = 0; j < jets[i].size(); ++j) {
      if (j) out += ',';
      out += jets[i][j].to_string();
    }
  }
  return out;
}

struct GJGroup::Impl {
  struct Local {
    FieldPtr field;
    std::shared_ptr<SubfieldEmbedding> emb;
    Laurent x;
    Laurent y;
  };

  FieldPtr k;
  std::optional<EllipticCurve> e;
  std::vector<Place> places;
  std::vector<Local> local;
  Point base;
  std::vector<Point> points;
  std::size_t normalizer = 0;
  std::uint64_t jacobian_order = 1;

  bool same_point(const Point& a, const Point& b) const {
    if (a.inf || b.inf) return a.inf == b.inf;
    if (e) return a == b;
    return a.x == b.x;
  }

  FieldElement to_place(std::size_t i, const FieldElement& c) const { return local[i].emb->embed(c); }

  Laurent eval_line(const LineFunction& l, std::size_t i) const {
    const auto& loc = local[i];
    int big = static_cast<int>(places[i].mult + 2 * kGuardTerms);
    Laurent r = Laurent::monomial(to_place(i, l.constant), 0, big);
    if (!l.x_coeff.is_zero()) r = r + loc.x * to_place(i, l.x_coeff);
    if (!l.y_coeff.is_zero()) {
      if (!e) throw std::invalid_argument("Y is not a coordinate on the projective line");
      r = r + loc.y * to_place(i, l.y_coeff);
    }
    return r;
  }

  // Unit part and valuation of a line at place i.
  std::pair<Jet, int> line_jet(const LineFunction& l, std::size_t i) const {
    Laurent s = eval_line(l, i);
    if (s.is_zero()) throw std::logic_error("line function vanishes to working precision");
    return {s.unit_part(places[i].mult), s.valuation()};
  }

  Jet unit_line(const LineFunction& l, std::size_t i) const { return line_jet(l, i).first; }

  GJElement canonicalize(GJElement a) const {
    if (places.empty()) return a;
    const Place& pl = places[normalizer];
    const FieldElement& c0 = a.jets[normalizer][0];
    FieldElement s;
    if (pl.degree == 1) {
      s = local[normalizer].emb->descend(c0);
    } else {
      for (const auto& c : local[normalizer].emb->coordinates(c0))
        if (!c.is_zero()) {
          s = c;
          break;
        }
    }
    if (!s.valid() || s.is_zero()) throw std::logic_error("jet with vanishing constant term");
    if (s.is_one()) return a;
    FieldElement inv = s.inv();
    for (std::size_t i = 0; i < places.size(); ++i) a.jets[i] = jet_scale(std::move(a.jets[i]), to_place(i, inv));
    return a;
  }

  bool is_canonical_c0(const FieldElement& c0) const {
    const Place& pl = places[normalizer];
    if (pl.degree == 1) return c0.is_one();
    for (const auto& c : local[normalizer].emb->coordinates(c0))
      if (!c.is_zero()) return c.is_one();
    return false;
  }
};

namespace {

FieldPtr place_field(const FieldPtr& k, unsigned d) {
  if (d == 1) return k;
  return ffield::make_spec(k->characteristic(), k->degree() * d);
}

// Number of distinct images of the point under the q-power Frobenius.
unsigned orbit_size(const Point& p, unsigned e_k, bool has_y) {
  if (p.inf) return 1;
  unsigned n = 0;
  FieldElement x = p.x, y = p.y;
  do {
    x = ffield::frobenius_power(x, e_k);
    if (has_y) y = ffield::frobenius_power(y, e_k);
    ++n;
  } while (!(x == p.x && (!has_y || y == p.y)));
  return n;
}

bool in_orbit(const Point& p, const Point& q, unsigned e_k, bool has_y) {
  if (p.inf || q.inf) return p.inf && q.inf;
  if (!p.x.field()->same_as(*q.x.field())) return false;
  FieldElement x = p.x, y = p.y;
  do {
    if (x == q.x && (!has_y || y == q.y)) return true;
    x = ffield::frobenius_power(x, e_k);
    if (has_y) y = ffield::frobenius_power(y, e_k);
  } while (!(x == p.x && (!has_y || y == p.y)));
  return false;
}

// Power series of the curve coordinates at an elliptic place.
std::pair<Laurent, Laurent> elliptic_expansion(const EllipticCurve& ed, const Place& pl, unsigned len) {
  const auto& f = ed.field();
  auto zero = FieldElement::zero(f);
  auto one = FieldElement::one(f);
  auto n_ = [&](std::int64_t v) { return FieldElement::from_int(f, v); };
  if (pl.point.inf) {
    // t = x/y: x = t^-2 / U, y = t^-3 / U with U = 1 + a2 t^2 U + a4 t^4 U^2 + a6 t^6 U^3.
    std::vector<FieldElement> u(len, zero);
    u[0] = one;
    for (unsigned it = 0; it < len; ++it) {
      auto u2 = series_mul(u, u, len);
      auto u3 = series_mul(u2, u, len);
      std::vector<FieldElement> next(len, zero);
      next[0] = one;
      for (unsigned i = 0; i < len; ++i) {
        if (i + 2 < len) next[i + 2] += ed.a2() * u[i];
        if (i + 4 < len) next[i + 4] += ed.a4() * u2[i];
        if (i + 6 < len) next[i + 6] += ed.a6() * u3[i];
      }
      u = std::move(next);
    }
    auto inv_u = series_inverse(u, len);
    return {Laurent(f, -2, inv_u), Laurent(f, -3, inv_u)};
  }
  const FieldElement& a = pl.point.x;
  FieldElement c1 = ed.rhs_prime(a);
  FieldElement c2 = n_(3) * a + ed.a2();
  if (pl.point.y.is_zero()) {
    // t = y: x = a + s with c1 s + c2 s^2 + s^3 = t^2.
    std::vector<FieldElement> s(len, zero);
    FieldElement inv_c1 = c1.inv();
    for (unsigned it = 0; it < len; ++it) {
      auto s2 = series_mul(s, s, len);
      auto s3 = series_mul(s2, s, len);
      std::vector<FieldElement> next(len, zero);
      if (len > 2) next[2] = one;
      for (unsigned i = 0; i < len; ++i) next[i] = (next[i] - c2 * s2[i] - s3[i]) * inv_c1;
      s = std::move(next);
    }
    s[0] += a;
    std::vector<FieldElement> t(len, zero);
    if (len > 1) t[1] = one;
    return {Laurent(f, 0, s), Laurent(f, 0, t)};
  }
  // t = x - a: y^2 = F(t) = b^2 + c1 t + c2 t^2 + t^3, lifted from y(0) = b.
  const FieldElement& b = pl.point.y;
  std::vector<FieldElement> F(len, zero);
  F[0] = b * b;
  if (len > 1) F[1] = c1;
  if (len > 2) F[2] = c2;
  if (len > 3) F[3] = one;
  std::vector<FieldElement> y(len, zero);
  y[0] = b;
  FieldElement inv_2b = (b + b).inv();
  for (unsigned k = 1; k < len; ++k) {
    FieldElement acc = F[k];
    for (unsigned i = 1; i < k; ++i) acc -= y[i] * y[k - i];
    y[k] = acc * inv_2b;
  }
  std::vector<FieldElement> x(len, zero);
  x[0] = a;
  if (len > 1) x[1] = one;
  return {Laurent(f, 0, x), Laurent(f, 0, y)};
}

std::shared_ptr<GJGroup::Impl> build(FieldPtr k, std::optional<EllipticCurve> e, std::vector<Place> places,
                                     std::optional<Point> base) {
  auto impl = std::make_shared<GJGroup::Impl>();
  impl->k = k;
  impl->e = e;
  const bool elliptic = e.has_value();
  const unsigned ek = k->degree();

  if (elliptic) {
    impl->points = curve::ec_points(*e);
    impl->jacobian_order = impl->points.size();
  } else {
    if (k->order() > ffield::kMaxEnumerableOrder) throw CapExceeded("projective line over a field larger than 2^20");
    for (std::uint64_t v = 0; v < k->order(); ++v)
      impl->points.push_back(Point::affine(FieldElement(k, v), FieldElement::zero(k)));
    impl->points.push_back(Point::infinity());
  }

  for (auto& pl : places) {
    if (pl.degree == 0 || pl.mult == 0) throw std::invalid_argument("place degree and multiplicity must be positive");
    FieldPtr fd = place_field(k, pl.degree);
    if (!pl.point.inf) {
      if (!elliptic) pl.point.y = FieldElement::zero(pl.point.x.field());
      if (!pl.point.x.field()->same_as(*fd) || !pl.point.y.field()->same_as(*fd))
        throw std::invalid_argument("place representative is not over the degree-" + std::to_string(pl.degree) +
                                    " extension");
    } else if (pl.degree != 1) {
      throw std::invalid_argument("the point at infinity is a degree-1 place");
    }
    if (orbit_size(pl.point, ek, elliptic) != pl.degree)
      throw std::invalid_argument("place representative does not have " + std::to_string(pl.degree) + " conjugates");
    auto emb = std::make_shared<SubfieldEmbedding>(k, fd);
    unsigned len = pl.mult + kGuardTerms;
    if (elliptic) {
      EllipticCurve ed = pl.degree == 1 ? *e : e->base_change(*emb);
      ed.require_on_curve(pl.point);
      pl.tag = pl.point.inf ? Uniformizer::XOverY : pl.point.y.is_zero() ? Uniformizer::Y : Uniformizer::XMinusA;
      auto [x, y] = elliptic_expansion(ed, pl, len);
      impl->local.push_back({fd, emb, std::move(x), std::move(y)});
    } else {
      auto zero = FieldElement::zero(fd);
      std::vector<FieldElement> x(len, zero);
      if (pl.point.inf) {
        pl.tag = Uniformizer::InvX;
        x[0] = FieldElement::one(fd);
        impl->local.push_back({fd, emb, Laurent(fd, -1, x), Laurent::zero(fd, static_cast<int>(len))});
      } else {
        pl.tag = Uniformizer::XMinusA;
        x[0] = pl.point.x;
        x[1] = FieldElement::one(fd);
        impl->local.push_back({fd, emb, Laurent(fd, 0, x), Laurent::zero(fd, static_cast<int>(len))});
      }
    }
  }
  for (std::size_t i = 0; i < places.size(); ++i)
    for (std::size_t j = i + 1; j < places.size(); ++j)
      if (places[i].degree == places[j].degree && in_orbit(places[i].point, places[j].point, ek, elliptic))
        throw std::invalid_argument("places " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
  impl->places = std::move(places);
  impl->normalizer = 0;
  for (std::size_t i = 0; i < impl->places.size(); ++i)
    if (impl->places[i].degree == 1) {
      impl->normalizer = i;
      break;
    }

  auto supported = [&](const Point& x) {
    for (const auto& pl : impl->places)
      if (pl.degree == 1 && impl->same_point(pl.point, x)) return true;
    return false;
  };
  if (base) {
    Point b = *base;
    if (!elliptic && !b.inf) b.y = FieldElement::zero(k);
    bool rational = std::any_of(impl->points.begin(), impl->points.end(),
                                [&](const Point& p) { return impl->same_point(p, b); });
    if (!rational) throw std::invalid_argument("base point is not a rational point");
    if (supported(b)) throw std::invalid_argument("base point lies in the modulus support");
    impl->base = b;
  } else {
    auto it = std::find_if(impl->points.begin(), impl->points.end(), [&](const Point& p) { return !supported(p); });
    if (it == impl->points.end()) throw std::invalid_argument("every rational point lies in the modulus support");
    impl->base = *it;
  }
  return impl;
}

}  // namespace

GJGroup GJGroup::projective_line(FieldPtr k, std::vector<Place> places, std::optional<Point> base) {
  GJGroup g;
  g.impl_ = build(std::move(k), std::nullopt, std::move(places), std::move(base));
  return g;
}

GJGroup GJGroup::elliptic(EllipticCurve e, std::vector<Place> places, std::optional<Point> base) {
  GJGroup g;
  FieldPtr k = e.field();
  g.impl_ = build(std::move(k), std::move(e), std::move(places), std::move(base));
  return g;
}

unsigned GJGroup::genus() const { return impl_->e ? 1 : 0; }
const FieldPtr& GJGroup::field() const { return impl_->k; }
const std::vector<Place>& GJGroup::places() const { return impl_->places; }
const Point& GJGroup::base_point() const { return impl_->base; }

const EllipticCurve& GJGroup::curve() const {
  if (!impl_->e) throw std::logic_error("group is defined on the projective line");
  return *impl_->e;
}

unsigned GJGroup::modulus_degree() const {
  unsigned d = 0;
  for (const auto& pl : impl_->places) d += pl.degree * pl.mult;
  return d;
}

unsigned GJGroup::dimension() const {
  unsigned d = modulus_degree();
  return genus() + (d > 0 ? d - 1 : 0);
}

std::string GJGroup::modulus_string() const {
  std::string out;
  for (std::size_t i = 0; i < impl_->places.size(); ++i) {
    const auto& pl = impl_->places[i];
    if (i) out += ';';
    out += "place(" + std::to_string(pl.degree) + "," + std::to_string(pl.mult) + ")@";
    if (pl.point.inf)
      out += "inf";
    else if (impl_->e)
      out += pl.point.to_string();
    else
      out += pl.point.x.to_string();
  }
  return out;
}

std::vector<Point> GJGroup::rational_points() const { return impl_->points; }

bool GJGroup::in_support(const Point& x) const {
  for (const auto& pl : impl_->places)
    if (pl.degree == 1 && impl_->same_point(pl.point, x)) return true;
  return false;
}

std::vector<Point> GJGroup::embeddable_points() const {
  std::vector<Point> out;
  for (const auto& p : impl_->points)
    if (!in_support(p)) out.push_back(p);
  return out;
}

GJElement GJGroup::zero() const {
  GJElement z{Point::infinity(), {}};
  for (std::size_t i = 0; i < impl_->places.size(); ++i)
    z.jets.push_back(jet_one(impl_->local[i].field, impl_->places[i].mult));
  return z;
}

GJElement GJGroup::canonicalize(GJElement a) const { return impl_->canonicalize(std::move(a)); }

bool GJGroup::contains(const GJElement& a) const {
  const auto& I = *impl_;
  if (a.jets.size() != I.places.size()) return false;
  if (I.e) {
    if (!I.e->on_curve(a.base)) return false;
  } else if (!a.base.inf) {
    return false;
  }
  for (std::size_t i = 0; i < I.places.size(); ++i) {
    if (a.jets[i].size() != I.places[i].mult) return false;
    for (const auto& c : a.jets[i])
      if (!c.valid() || !c.field()->same_as(*I.local[i].field)) return false;
    if (a.jets[i][0].is_zero()) return false;
  }
  return I.places.empty() || I.is_canonical_c0(a.jets[I.normalizer][0]);
}

namespace {
void require_member(const GJGroup& g, const GJElement& a) {
  if (!g.contains(a)) throw std::invalid_argument("element " + a.to_string() + " is not in the group");
}
}  // namespace

GJElement GJGroup::add(const GJElement& a, const GJElement& b) const {
  require_member(*this, a);
  require_member(*this, b);
  const auto& I = *impl_;
  GJElement r;
  r.base = Point::infinity();
  if (!I.e) {
    for (std::size_t i = 0; i < I.places.size(); ++i) r.jets.push_back(jet_mul(a.jets[i], b.jets[i]));
    return I.canonicalize(std::move(r));
  }
  const auto& e = *I.e;
  r.base = e.add(a.base, b.base);
  if (I.places.empty()) return r;
  Point pa = e.add(a.base, I.base), pb = e.add(b.base, I.base), pc = e.add(r.base, I.base);
  LineFunction num = line_through(e, pa, pb);
  LineFunction den = line_through(e, pc, I.base);
  for (std::size_t i = 0; i < I.places.size(); ++i) {
    Jet j = jet_mul(a.jets[i], b.jets[i]);
    j = jet_mul(j, I.unit_line(num, i));
    j = jet_mul(j, jet_inv(I.unit_line(den, i)));
    r.jets.push_back(std::move(j));
  }
  return I.canonicalize(std::move(r));
}

GJElement GJGroup::neg(const GJElement& a) const {
  require_member(*this, a);
  const auto& I = *impl_;
  GJElement r;
  r.base = Point::infinity();
  if (!I.e) {
    for (const auto& j : a.jets) r.jets.push_back(jet_inv(j));
    return I.canonicalize(std::move(r));
  }
  const auto& e = *I.e;
  r.base = e.neg(a.base);
  if (I.places.empty()) return r;
  Point pa = e.add(a.base, I.base), pn = e.add(r.base, I.base);
  LineFunction chord = line_through(e, pa, pn);
  LineFunction tangent = line_through(e, I.base, I.base);
  for (std::size_t i = 0; i < I.places.size(); ++i) {
    Jet j = jet_mul(a.jets[i], I.unit_line(chord, i));
    r.jets.push_back(jet_mul(I.unit_line(tangent, i), jet_inv(j)));
  }
  return I.canonicalize(std::move(r));
}

GJElement GJGroup::mul(const GJElement& a, std::int64_t k) const {
  GJElement base = k < 0 ? neg(a) : a;
  std::uint64_t n = k < 0 ? static_cast<std::uint64_t>(-k) : static_cast<std::uint64_t>(k);
  GJElement r = zero();
  while (n) {
    if (n & 1) r = add(r, base);
    n >>= 1;
    if (n) base = add(base, base);
  }
  return r;
}

Jet GJGroup::jet_expand(const RationalFunction& fn, std::size_t place_index, unsigned n) const {
  const auto& I = *impl_;
  if (place_index >= I.places.size()) throw std::out_of_range("place index");
  if (n > I.places[place_index].mult + kGuardTerms - 3)
    throw std::invalid_argument("expansion order exceeds the local precision");
  const auto& f = I.local[place_index].field;
  Jet out = jet_one(f, n);
  int val = 0;
  auto factor = [&](const LineFunction& l) {
    Laurent s = I.eval_line(l, place_index);
    if (s.is_zero()) throw std::invalid_argument("function vanishes identically at the place");
    return s;
  };
  for (const auto& l : fn.numerator) {
    Laurent s = factor(l);
    val += s.valuation();
    out = series_mul(out, s.unit_part(n), n);
  }
  for (const auto& l : fn.denominator) {
    Laurent s = factor(l);
    val -= s.valuation();
    out = series_mul(out, series_inverse(s.unit_part(n), n), n);
  }
  if (val != 0) throw std::invalid_argument("function is not a unit at the place (valuation " + std::to_string(val) + ")");
  return out;
}

GJElement GJGroup::embed(const Point& x0) const {
  const auto& I = *impl_;
  Point x = x0;
  if (!I.e && !x.inf) x.y = FieldElement::zero(I.k);
  bool rational = std::any_of(I.points.begin(), I.points.end(), [&](const Point& p) { return I.same_point(p, x); });
  if (!rational) throw std::invalid_argument("point " + x.to_string() + " is not a rational point");
  if (in_support(x)) throw std::invalid_argument("point " + x.to_string() + " lies in the modulus support");
  if (I.e) {
    GJElement r = zero();
    r.base = I.e->sub(x, I.base);
    return r;
  }
  auto one = FieldElement::one(I.k), zero_k = FieldElement::zero(I.k);
  RationalFunction fn;
  if (!x.inf) fn.numerator.push_back({zero_k, one, -x.x});
  if (!I.base.inf) fn.denominator.push_back({zero_k, one, -I.base.x});
  GJElement r{Point::infinity(), {}};
  for (std::size_t i = 0; i < I.places.size(); ++i) r.jets.push_back(jet_expand(fn, i, I.places[i].mult));
  return I.canonicalize(std::move(r));
}

std::uint64_t GJGroup::kernel_order() const {
  const auto& I = *impl_;
  if (I.places.empty()) return 1;
  std::uint64_t q = I.k->order();
  std::uint64_t n = 1;
  for (const auto& pl : I.places) {
    std::uint64_t qd = ipow(q, pl.degree);
    n = checked_mul(n, checked_mul(qd - 1, ipow(qd, pl.mult - 1)));
  }
  return n / (q - 1);
}

std::string GJGroup::kernel_name() const {
  const auto& I = *impl_;
  std::vector<std::pair<unsigned, unsigned>> shape;
  for (const auto& pl : I.places) shape.emplace_back(pl.degree, pl.mult);
  std::sort(shape.begin(), shape.end());
  using S = std::vector<std::pair<unsigned, unsigned>>;
  if (shape.empty()) return "trivial";
  if (I.e) {
    if (shape == S{{1, 2}}) return "k";
    if (shape == S{{1, 1}, {1, 1}}) return "k^x";
    if (shape == S{{2, 1}}) return "k_2^x/k^x";
    if (shape.size() == 1 && shape[0].first == 1)
      return "unipotent jets 1 + a_1 t + ... + a_" + std::to_string(shape[0].second - 1) + " t^" +
             std::to_string(shape[0].second - 1);
  } else {
    if (shape == S{{1, 1}, {1, 1}, {1, 1}}) return "(k^x)^2";
    if (shape == S{{1, 1}, {1, 2}}) return "k^x x k";
    if (shape == S{{1, 3}})
      return I.k->characteristic() == 2 ? "Witt-type: 1 + a t + b t^2 with (a,b)(c,d) = (a+c, b+d+ac)" : "k^2";
    if (shape == S{{3, 1}}) return "k_3^x/k^x";
    if (shape == S{{1, 1}, {2, 1}}) return "k_2^x";
  }
  return "unit jets modulo constants";
}

std::uint64_t GJGroup::jacobian_order() const { return impl_->jacobian_order; }

std::uint64_t GJGroup::order() const { return checked_mul(kernel_order(), jacobian_order()); }

std::vector<GJElement> GJGroup::kernel_elements() const {
  const auto& I = *impl_;
  if (kernel_order() > abgroup::kMaxStandardizeOrder) throw CapExceeded("kernel enumeration beyond 2^20 elements");
  std::vector<std::vector<Jet>> per_place;
  for (std::size_t i = 0; i < I.places.size(); ++i) {
    const auto& f = I.local[i].field;
    unsigned n = I.places[i].mult;
    std::vector<Jet> jets;
    for (std::uint64_t c0 = 1; c0 < f->order(); ++c0) {
      FieldElement lead(f, c0);
      if (i == I.normalizer && !I.is_canonical_c0(lead)) continue;
      std::uint64_t tails = ipow(f->order(), n - 1);
      for (std::uint64_t t = 0; t < tails; ++t) {
        Jet j{lead};
        std::uint64_t rest = t;
        for (unsigned c = 1; c < n; ++c) {
          j.push_back(FieldElement(f, rest % f->order()));
          rest /= f->order();
        }
        jets.push_back(std::move(j));
      }
    }
    per_place.push_back(std::move(jets));
  }
  std::vector<GJElement> out{GJElement{Point::infinity(), {}}};
  for (const auto& choices : per_place) {
    std::vector<GJElement> next;
    next.reserve(out.size() * choices.size());
    for (const auto& partial : out)
      for (const auto& j : choices) {
        GJElement x = partial;
        x.jets.push_back(j);
        next.push_back(std::move(x));
      }
    out = std::move(next);
  }
  return out;
}

std::vector<GJElement> GJGroup::enumerate() const {
  if (order() > abgroup::kMaxStandardizeOrder) throw CapExceeded("group enumeration beyond 2^20 elements");
  auto kernel = kernel_elements();
  std::vector<GJElement> out;
  if (!impl_->e) return kernel;
  for (const auto& p : impl_->points)
    for (auto x : kernel) {
      x.base = p;
      out.push_back(std::move(x));
    }
  return out;
}

GJElement GJGroup::random_element(std::mt19937_64& rng) const {
  const auto& I = *impl_;
  GJElement r{Point::infinity(), {}};
  if (I.e) r.base = I.points[std::uniform_int_distribution<std::size_t>(0, I.points.size() - 1)(rng)];
  for (std::size_t i = 0; i < I.places.size(); ++i) {
    const auto& f = I.local[i].field;
    std::uniform_int_distribution<std::uint64_t> any(0, f->order() - 1), unit(1, f->order() - 1);
    Jet j{FieldElement(f, unit(rng))};
    for (unsigned c = 1; c < I.places[i].mult; ++c) j.push_back(FieldElement(f, any(rng)));
    r.jets.push_back(std::move(j));
  }
  return I.canonicalize(std::move(r));
}

std::string GJGroup::key(const GJElement& a) const {
  std::string out;
  out.push_back(a.base.inf ? 1 : 0);
  if (!a.base.inf) {
    append_packed(out, a.base.x.packed());
    append_packed(out, impl_->e ? a.base.y.packed() : 0);
  }
  for (const auto& j : a.jets)
    for (const auto& c : j) append_packed(out, c.packed());
  return out;
}

GJElement GJGroup::parse_element(std::string_view text) const {
  const auto& I = *impl_;
  auto bar = text.find('|');
  if (bar == std::string_view::npos) throw std::invalid_argument("element must look like base|jets");
  GJElement r;
  std::string_view base = text.substr(0, bar);
  if (I.e)
    r.base = curve::parse_point(*I.e, base);
  else if (base != "inf")
    throw std::invalid_argument("elements on the projective line have base inf");
  std::string_view rest = text.substr(bar + 1);
  if (!I.places.empty()) {
    auto parts = split(rest, ';');
    if (parts.size() != I.places.size()) throw std::invalid_argument("wrong number of jets");
    for (std::size_t i = 0; i < parts.size(); ++i) {
      Jet j;
      for (auto tok : split(parts[i], ',')) j.push_back(ffield::parse_element(I.local[i].field, tok));
      r.jets.push_back(std::move(j));
    }
  } else if (!rest.empty()) {
    throw std::invalid_argument("this group has no jets");
  }
  require_member(*this, r);
  return r;
}

const Laurent& GJGroup::local_x(std::size_t i) const { return impl_->local.at(i).x; }
const Laurent& GJGroup::local_y(std::size_t i) const { return impl_->local.at(i).y; }
const SubfieldEmbedding& GJGroup::place_embedding(std::size_t i) const { return *impl_->local.at(i).emb; }

LineFunction line_through(const EllipticCurve& e, const Point& a, const Point& b) {
  const auto& f = e.field();
  auto zero = FieldElement::zero(f), one = FieldElement::one(f);
  if (a.inf && b.inf) return {zero, zero, one};
  if (a.inf) return {zero, one, -b.x};
  if (b.inf) return {zero, one, -a.x};
  if (a.x == b.x && a.y == -b.y) return {zero, one, -a.x};
  FieldElement lambda = e.slope(a, b);
  return {one, -lambda, -(a.y - lambda * a.x)};
}

GJElement forget(const GJGroup& from, const GJGroup& to, const GJElement& a) {
  if (from.genus() != to.genus() || !(from.base_point() == to.base_point()))
    throw std::invalid_argument("forgetful map needs the same curve and base point");
  if (from.genus() == 1 && !(from.curve() == to.curve()))
    throw std::invalid_argument("forgetful map needs the same curve");
  GJElement r{a.base, {}};
  for (const auto& target : to.places()) {
    std::size_t idx = from.places().size();
    for (std::size_t i = 0; i < from.places().size(); ++i) {
      const auto& src = from.places()[i];
      if (src.degree == target.degree && src.point == target.point) idx = i;
    }
    if (idx == from.places().size()) throw std::invalid_argument("target place missing from the larger modulus");
    if (from.places()[idx].mult < target.mult) throw std::invalid_argument("target multiplicity is larger");
    const Jet& j = a.jets[idx];
    r.jets.emplace_back(j.begin(), j.begin() + target.mult);
  }
  return to.canonicalize(std::move(r));
}

FieldElement smallest_irreducible_root(const FieldPtr& k, unsigned degree) {
  if (degree == 0) throw std::invalid_argument("degree must be positive");
  std::uint64_t q = k->order();
  std::uint64_t count = ipow(q, degree);
  auto one = FieldElement::one(k);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<FieldElement> c;
    std::uint64_t rest = idx;
    for (unsigned i = 0; i < degree; ++i) {
      c.emplace_back(k, rest % q);
      rest /= q;
    }
    c.push_back(one);
    ffield::Polynomial f(k, c);
    if (!ffield::is_irreducible(f)) continue;
    FieldPtr ext = place_field(k, degree);
    SubfieldEmbedding emb(k, ext);
    std::vector<FieldElement> ce;
    for (const auto& x : c) ce.push_back(emb.embed(x));
    auto rts = ffield::roots(ffield::Polynomial(ext, ce));
    if (rts.empty()) throw std::logic_error("irreducible polynomial without roots in the extension");
    return rts.front();
  }
  throw std::logic_error("no irreducible polynomial found");
}

GJGroup genus0_group(const FieldPtr& k, int i) {
  auto pt = [&](std::uint64_t v) { return Point::affine(FieldElement(k, v), FieldElement::zero(k)); };
  auto at = [](Point p, unsigned d, unsigned n) { return Place{d, n, std::move(p), Uniformizer::XMinusA}; };
  switch (i) {
    case 1: return GJGroup::projective_line(k, {at(pt(0), 1, 1), at(pt(1), 1, 1), at(Point::infinity(), 1, 1)});
    case 2: return GJGroup::projective_line(k, {at(pt(0), 1, 1), at(Point::infinity(), 1, 2)});
    case 3: return GJGroup::projective_line(k, {at(Point::infinity(), 1, 3)});
    case 4: {
      FieldElement a = smallest_irreducible_root(k, 3);
      return GJGroup::projective_line(k, {at(Point::affine(a, FieldElement::zero(a.field())), 3, 1)});
    }
    case 5: {
      FieldElement a = smallest_irreducible_root(k, 2);
      return GJGroup::projective_line(
          k, {at(Point::affine(a, FieldElement::zero(a.field())), 2, 1), at(Point::infinity(), 1, 1)});
    }
    default: throw std::invalid_argument("genus-0 family index must be 1..5");
  }
}

namespace {

std::vector<std::uint64_t> additive_coords(const FieldElement& x) { return x.coeffs(); }

}  // namespace

Genus0Coordinates::Genus0Coordinates(const GJGroup& g, int i) : group_(g), family_(i) {
  const FieldPtr& k = g.field();
  std::uint64_t q = k->order(), p = k->characteristic();
  unsigned e = k->degree();
  std::vector<std::uint64_t> moduli;
  switch (i) {
    case 1:
      moduli = {q - 1, q - 1};
      dlog_ = std::make_shared<ffield::DiscreteLog>(ffield::multiplicative_generator(k));
      break;
    case 2:
      moduli = {q - 1};
      for (unsigned c = 0; c < e; ++c) moduli.push_back(p);
      dlog_ = std::make_shared<ffield::DiscreteLog>(ffield::multiplicative_generator(k));
      break;
    case 3:
      if (p == 2) throw std::invalid_argument("no closed-form coordinates for m_3 in characteristic 2");
      moduli.assign(2 * e, p);
      break;
    case 4:
    case 5: {
      const auto& place = g.places().at(0);
      root_ = place.point.x;
      cyclic_order_ = i == 4 ? q * q + q + 1 : q * q - 1;
      moduli = {cyclic_order_};
      dlog_ = std::make_shared<ffield::DiscreteLog>(ffield::multiplicative_generator(root_.field()));
      break;
    }
    default: throw std::invalid_argument("genus-0 family index must be 1..5");
  }
  raw_ = abgroup::GroupSpec(moduli);
  iso_ = std::make_shared<abgroup::InvariantIso>(raw_);
  spec_ = iso_->target();
}

abgroup::GroupElement Genus0Coordinates::operator()(const GJElement& a) const {
  if (!group_.contains(a)) throw std::invalid_argument("element is not in the group");
  const auto& dl = dlog_;
  std::vector<std::uint64_t> c;
  switch (family_) {
    case 1: {
      const auto& inf = a.jets[2][0];
      c = {(*dl)(a.jets[0][0] / inf), (*dl)(a.jets[1][0] / inf)};
      break;
    }
    case 2: {
      const auto& c0 = a.jets[1][0];
      c = {(*dl)(a.jets[0][0] / c0)};
      for (auto v : additive_coords(-a.jets[1][1] / c0)) c.push_back(v);
      break;
    }
    case 3: {
      const auto& u = a.jets[0];
      FieldElement s = u[1] / u[0], t = u[2] / u[0];
      FieldElement two = FieldElement::from_int(s.field(), 2);
      for (auto v : additive_coords(-s)) c.push_back(v);
      for (auto v : additive_coords(s * s - two * t)) c.push_back(v);
      break;
    }
    case 4: c = {(*dl)(a.jets[0][0]) % cyclic_order_}; break;
    case 5: c = {(*dl)(a.jets[0][0] / group_.place_embedding(0).embed(a.jets[1][0])) % cyclic_order_}; break;
  }
  return iso_->forward(abgroup::GroupElement{c});
}

abgroup::GroupElement Genus0Coordinates::closed_form(const Point& x) const {
  const FieldPtr& k = group_.field();
  std::vector<std::uint64_t> c;
  auto one = FieldElement::one(k);
  switch (family_) {
    case 1: c = {(*dlog_)(x.x), (*dlog_)(one - x.x)}; break;
    case 2:
      c = {(*dlog_)(x.x)};
      for (auto v : additive_coords(x.x)) c.push_back(v);
      break;
    case 3:
      for (auto v : additive_coords(x.x)) c.push_back(v);
      for (auto v : additive_coords(x.x * x.x)) c.push_back(v);
      break;
    case 4:
      if (x.inf)
        c = {0};
      else
        c = {(*dlog_)(root_ - group_.place_embedding(0).embed(x.x)) % cyclic_order_};
      break;
    case 5: {
      FieldElement xe = group_.place_embedding(0).embed(x.x);
      c = {(*dlog_)((root_ - xe) / root_)};
      break;
    }
  }
  return iso_->forward(abgroup::GroupElement{c});
}

Genus0Family genus0_family(int i, const FieldPtr& k) {
  GJGroup g = genus0_group(k, i);
  Genus0Family out;
  if (i == 3 && k->characteristic() == 2) {
    auto elems = g.enumerate();
    auto std_form = abgroup::standardize(
        elems, g.zero(), [&](const GJElement& a, const GJElement& b) { return g.add(a, b); },
        [&](const GJElement& a) { return g.key(a); });
    out.spec = std_form.spec;
    for (const auto& x : g.embeddable_points())
      out.elements.push_back(std_form.forward(g.embed(x), [&](const GJElement& a) { return g.key(a); }));
    out.provenance = "jet engine on J_{3(inf)} over " + k->to_string() + ", standardized (Witt-type kernel)";
  } else {
    Genus0Coordinates coords(g, i);
    out.spec = coords.spec();
    for (const auto& x : g.embeddable_points()) out.elements.push_back(coords.closed_form(x));
    static const char* forms[] = {"", "{(x, 1-x)} in (k^x)^2", "{(x, x)} in k^x x k", "{(x, x^2)} in k^2",
                                  "{a - x} in k_3^x/k^x, a a root of the first irreducible cubic",
                                  "{(alpha - x)/alpha} in k_2^x, alpha a root of the first irreducible quadratic"};
    out.provenance = std::string("closed form ") + forms[i] + " over " + k->to_string() + " via discrete logs";
  }
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

std::vector<ConfigInfo> supported_configs() {
  return {
      {Family::G0M1, "g0-m1", 0, "(0)+(1)+(inf)", "sidon", ""},
      {Family::G0M2, "g0-m2", 0, "(0)+2(inf)", "sidon", ""},
      {Family::G0M3, "g0-m3", 0, "3(inf)", "sidon", ""},
      {Family::G0M4, "g0-m4", 0, "cubic orbit", "sidon", ""},
      {Family::G0M5, "g0-m5", 0, "quadratic orbit + (inf)", "sidon", ""},
      {Family::G1TwoP, "g1-2p", 1, "2(p)", "symmetric", "s(x) + s(2p - x)"},
      {Family::G1PQ, "g1-pq", 1, "(p)+(q)", "symmetric", "s(x) + s(p + q - x)"},
      {Family::G1Conj, "g1-conj", 1, "(p)+(p^Frob)", "symmetric", "s(x) + s(p + p^Frob - x)"},
      {Family::G1DP, "g1-dp", 1, "d(p), d = 3, 4", "sidon", ""},
      {Family::G2, "g2", 2, "0", "symmetric", "s(x) + s(i(x))"},
  };
}

const ConfigInfo& config_info(Family f) {
  static const auto table = supported_configs();
  for (const auto& c : table)
    if (c.family == f) return c;
  throw std::logic_error("unknown family");
}

Family parse_family(std::string_view id) {
  for (const auto& c : supported_configs())
    if (c.id == id) return c.family;
  throw std::invalid_argument("unknown family '" + std::string(id) + "'");
}

GJGroup elliptic_config(const EllipticCurve& e, Family f, unsigned d, std::mt19937_64* rng) {
  auto pts = curve::ec_points(e);
  auto pick = [&](const std::vector<Point>& from) -> Point {
    if (from.empty()) throw std::invalid_argument("no eligible point for the modulus");
    if (!rng) return from.front();
    return from[std::uniform_int_distribution<std::size_t>(0, from.size() - 1)(*rng)];
  };
  switch (f) {
    case Family::G1TwoP: return GJGroup::elliptic(e, {Place{1, 2, pick(pts)}});
    case Family::G1PQ: {
      Point p = pick(pts);
      std::vector<Point> rest;
      for (const auto& x : pts)
        if (!(x == p)) rest.push_back(x);
      Point q = pick(rest);
      return GJGroup::elliptic(e, {Place{1, 1, p}, Place{1, 1, q}});
    }
    case Family::G1DP:
      if (d < 3 || d > 4) throw std::invalid_argument("g1-dp supports d = 3 or 4");
      return GJGroup::elliptic(e, {Place{1, d, pick(pts)}});
    case Family::G1Conj: {
      FieldPtr k2 = place_field(e.field(), 2);
      SubfieldEmbedding emb(e.field(), k2);
      std::vector<Point> conj;
      for (const auto& x : curve::ec_points(e.base_change(emb)))
        if (!x.inf && (!emb.contains(x.x) || !emb.contains(x.y))) conj.push_back(x);
      return GJGroup::elliptic(e, {Place{2, 1, pick(conj)}});
    }
    default: throw std::invalid_argument("not an elliptic family");
  }
}

std::optional<Point> symmetric_partner(const GJGroup& g, const Point& x) {
  if (g.genus() != 1 || g.modulus_degree() != 2) return std::nullopt;
  const auto& e = g.curve();
  const auto& pl = g.places();
  Point sum;
  if (pl.size() == 2) {
    sum = e.add(pl[0].point, pl[1].point);
  } else if (pl[0].degree == 1) {
    sum = e.add(pl[0].point, pl[0].point);
  } else {
    const auto& emb = g.place_embedding(0);
    EllipticCurve e2 = e.base_change(emb);
    const Point& r = pl[0].point;
    unsigned ek = e.field()->degree();
    Point rc = Point::affine(ffield::frobenius_power(r.x, ek), ffield::frobenius_power(r.y, ek));
    Point s2 = e2.add(r, rc);
    sum = s2.inf ? s2 : Point::affine(emb.descend(s2.x), emb.descend(s2.y));
  }
  return e.sub(sum, x);
}

}  // namespace jacsidon::genjac
