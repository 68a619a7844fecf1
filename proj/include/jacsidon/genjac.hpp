#pragma once

// Generalized jacobians J_m(k) of the projective line and of elliptic curves.
//
// An element is a pair (P, jets): P is a point of J(k) (trivial on the line,
// a rational point on an elliptic curve) and jets are truncated unit parts,
// one per place of the modulus, taken modulo constants. The class of a
// divisor D of degree 0 prime to m with sum P is recorded through the
// function h with div(h) = D - D_P, where D_P = (P + b) - (b) and b is the
// base point; the jets are the unit parts of h in fixed local uniformizers.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "jacsidon/abgroup.hpp"
#include "jacsidon/elliptic.hpp"
#include "jacsidon/ffield.hpp"
#include "jacsidon/series.hpp"

namespace jacsidon::genjac {

/// A point of P^1 or of an elliptic curve. On P^1 only `x` is meaningful and
/// `inf` is the point at infinity; on an elliptic curve `inf` is 0_E.
using Point = curve::ECPoint;
using Jet = std::vector<FieldElement>;

enum class Uniformizer { XMinusA, Y, InvX, XOverY };
std::string uniformizer_name(Uniformizer u);

/// One Galois orbit of the modulus with its multiplicity. The representative
/// has coordinates in the degree-d extension of the base field.
struct Place {
  unsigned degree = 1;
  unsigned mult = 1;
  Point point;
  /// Assigned by the group from the uniformizer rule.
  Uniformizer tag = Uniformizer::XMinusA;
};

struct GJElement {
  Point base;
  std::vector<Jet> jets;

  bool operator==(const GJElement& o) const;
  /// `base|c0,c1;c0,...` with one jet per place
  std::string to_string() const;
};

/// A product of linear forms a*Y + b*X + c over the base field divided by
/// another such product. On P^1 the Y coefficient must vanish.
struct LineFunction {
  FieldElement y_coeff, x_coeff, constant;
};
struct RationalFunction {
  std::vector<LineFunction> numerator;
  std::vector<LineFunction> denominator;
};

class GJGroup {
 public:
  /// P^1 over k with the given modulus. Place representatives live in the
  /// fields make_spec(p, e d).
  static GJGroup projective_line(FieldPtr k, std::vector<Place> places, std::optional<Point> base = {});
  static GJGroup elliptic(curve::EllipticCurve e, std::vector<Place> places, std::optional<Point> base = {});

  unsigned genus() const;
  const FieldPtr& field() const;
  const std::vector<Place>& places() const;
  /// The elliptic curve; throws on P^1.
  const curve::EllipticCurve& curve() const;
  const Point& base_point() const;
  /// Sum of d n over the places.
  unsigned modulus_degree() const;
  /// g + max(deg m - 1, 0)
  unsigned dimension() const;
  /// `place(d,n)@coords;...`
  std::string modulus_string() const;

  /// All rational points of the curve, in coordinate order (affine points
  /// first on P^1, 0_E first on an elliptic curve).
  std::vector<Point> rational_points() const;
  bool in_support(const Point& x) const;
  /// Rational points outside the support of the modulus.
  std::vector<Point> embeddable_points() const;

  GJElement zero() const;
  GJElement add(const GJElement& a, const GJElement& b) const;
  GJElement neg(const GJElement& a) const;
  GJElement sub(const GJElement& a, const GJElement& b) const { return add(a, neg(b)); }
  GJElement mul(const GJElement& a, std::int64_t k) const;
  /// Class of (x) - (b).
  GJElement embed(const Point& x) const;
  /// Scales the jets into the canonical representative modulo constants.
  GJElement canonicalize(GJElement a) const;
  /// True when a is a canonical element of this group.
  bool contains(const GJElement& a) const;

  /// Order of the kernel of J_m(k) -> J(k).
  std::uint64_t kernel_order() const;
  /// Name of the kernel from the table of identifications.
  std::string kernel_name() const;
  /// |J(k)| (1 on P^1).
  std::uint64_t jacobian_order() const;
  std::uint64_t order() const;

  /// Every canonical element over the identity of J(k).
  std::vector<GJElement> kernel_elements() const;
  /// Every element; the order must be at most 2^20.
  std::vector<GJElement> enumerate() const;
  GJElement random_element(std::mt19937_64& rng) const;

  /// Hashable identity of an element.
  std::string key(const GJElement& a) const;
  GJElement parse_element(std::string_view text) const;

  /// First n coefficients of fn in the uniformizer of the place; fn must be
  /// a unit there.
  Jet jet_expand(const RationalFunction& fn, std::size_t place_index, unsigned n) const;
  /// Local expansions of the coordinate functions X and Y at a place.
  const Laurent& local_x(std::size_t place_index) const;
  const Laurent& local_y(std::size_t place_index) const;
  /// Embedding of k into the field of the place.
  const ffield::SubfieldEmbedding& place_embedding(std::size_t place_index) const;

  struct Impl;

 private:
  std::shared_ptr<const Impl> impl_;
};

/// The line through two rational points of an elliptic curve (the tangent
/// when they coincide, the vertical when they are opposite, the constant 1
/// when both are 0_E).
LineFunction line_through(const curve::EllipticCurve& e, const Point& a, const Point& b);

/// Forgetful map J_m -> J_m' for m >= m' sharing curve and base point.
GJElement forget(const GJGroup& from, const GJGroup& to, const GJElement& a);

/// Smallest monic irreducible polynomial of the given degree over k in
/// packed coefficient order, and its smallest root in make_spec(p, e d).
FieldElement smallest_irreducible_root(const FieldPtr& k, unsigned degree);

/// J_{m_i} on P^1 for the five orbit representatives m_1, ..., m_5.
GJGroup genus0_group(const FieldPtr& k, int i);

struct Genus0Family {
  abgroup::GroupSpec spec;
  std::vector<abgroup::GroupElement> elements;
  std::string provenance;
};

/// Closed-form sets S_1, ..., S_5 in standard coordinates via discrete logs.
/// S_3 in characteristic 2 comes from the jet engine.
Genus0Family genus0_family(int i, const FieldPtr& k);

/// Explicit isomorphism from J_{m_i}(k) (as built by genus0_group) onto the
/// ambient group of genus0_family(i, k), normalized so that the embedded set
/// maps to the closed form up to a translation. Not available for i = 3 in
/// characteristic 2.
class Genus0Coordinates {
 public:
  Genus0Coordinates(const GJGroup& g, int i);
  abgroup::GroupElement operator()(const GJElement& a) const;
  /// Closed-form coordinates of s(x) before translation.
  abgroup::GroupElement closed_form(const Point& x) const;
  const abgroup::GroupSpec& spec() const { return spec_; }

 private:
  GJGroup group_;
  int family_;
  abgroup::GroupSpec raw_;
  abgroup::GroupSpec spec_;
  std::shared_ptr<abgroup::InvariantIso> iso_;
  std::shared_ptr<ffield::DiscreteLog> dlog_;
  FieldElement root_;
  std::uint64_t cyclic_order_ = 0;
};

enum class Family { G0M1, G0M2, G0M3, G0M4, G0M5, G1TwoP, G1PQ, G1Conj, G1DP, G2 };

struct ConfigInfo {
  Family family;
  std::string id;
  unsigned genus;
  std::string modulus;
  std::string expected;  // "sidon" or "symmetric"
  std::string center_recipe;
};

std::vector<ConfigInfo> supported_configs();
const ConfigInfo& config_info(Family f);
/// Accepts `g0-m1`...`g0-m5`, `g1-2p`, `g1-pq`, `g1-conj`, `g1-dp`, `g2`.
Family parse_family(std::string_view id);

/// Elliptic configuration on e. Places are drawn with rng when given,
/// otherwise the first eligible points are used. `d` is the multiplicity for
/// g1-dp (3 or 4).
GJGroup elliptic_config(const curve::EllipticCurve& e, Family f, unsigned d = 3, std::mt19937_64* rng = nullptr);

/// The point p + q - x for a degree-2 modulus (p) + (q); nullopt otherwise.
std::optional<Point> symmetric_partner(const GJGroup& g, const Point& x);

}  // namespace jacsidon::genjac
