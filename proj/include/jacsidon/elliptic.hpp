#pragma once

// Elliptic curves y^2 = x^3 + a2 x^2 + a4 x + a6 over finite fields of odd
// characteristic, with the chord-tangent group law.

#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "jacsidon/ffield.hpp"

namespace jacsidon::curve {

using ffield::FieldElement;
using ffield::FieldPtr;

struct ECPoint {
  bool inf = true;
  FieldElement x;
  FieldElement y;

  static ECPoint infinity() { return {}; }
  static ECPoint affine(FieldElement x, FieldElement y) { return {false, std::move(x), std::move(y)}; }

  bool operator==(const ECPoint& o) const;
  /// Infinity first, then affine points by packed (x, y).
  bool operator<(const ECPoint& o) const;
  std::string to_string() const;
};

class EllipticCurve {
 public:
  EllipticCurve(FieldPtr field, FieldElement a2, FieldElement a4, FieldElement a6);
  /// Short form y^2 = x^3 + A x + B.
  static EllipticCurve short_form(const FieldPtr& field, std::uint64_t a, std::uint64_t b);

  const FieldPtr& field() const { return field_; }
  const FieldElement& a2() const { return a2_; }
  const FieldElement& a4() const { return a4_; }
  const FieldElement& a6() const { return a6_; }
  FieldElement discriminant() const;

  /// x^3 + a2 x^2 + a4 x + a6
  FieldElement rhs(const FieldElement& x) const;
  /// derivative of rhs: 3x^2 + 2 a2 x + a4
  FieldElement rhs_prime(const FieldElement& x) const;
  bool on_curve(const ECPoint& p) const;
  void require_on_curve(const ECPoint& p) const;

  ECPoint add(const ECPoint& p, const ECPoint& q) const;
  ECPoint neg(const ECPoint& p) const;
  ECPoint sub(const ECPoint& p, const ECPoint& q) const { return add(p, neg(q)); }
  ECPoint mul(const ECPoint& p, std::int64_t k) const;
  /// Slope of the chord or tangent through p and q (both affine, q != -p).
  FieldElement slope(const ECPoint& p, const ECPoint& q) const;

  /// The same curve over an extension field.
  EllipticCurve base_change(const ffield::SubfieldEmbedding& emb) const;
  ECPoint embed_point(const ECPoint& p, const ffield::SubfieldEmbedding& emb) const;

  /// `ec:<field spec>:A,B` for short form, `ec:<field spec>:a2,a4,a6` otherwise.
  std::string to_string() const;
  bool operator==(const EllipticCurve& o) const;

 private:
  FieldPtr field_;
  FieldElement a2_, a4_, a6_;
};

EllipticCurve parse_curve(std::string_view text);
ECPoint parse_point(const EllipticCurve& e, std::string_view text);

/// All rational points, sorted (infinity first).
std::vector<ECPoint> ec_points(const EllipticCurve& e);
std::uint64_t ec_group_order(const EllipticCurve& e);
std::uint64_t ec_point_order(const EllipticCurve& e, const ECPoint& p, std::uint64_t group_order);
/// First point (in sorted order) whose order equals the group order.
std::optional<ECPoint> ec_cyclic_generator(const EllipticCurve& e);

/// First curve in scan order whose rational points form a cyclic group of
/// order n. Characteristic >= 5 scans short forms (A, B); characteristic 3
/// scans (a2, a4, a6).
EllipticCurve find_cyclic_curve(const FieldPtr& field, std::uint64_t n);
/// Uniformly random nonsingular curve y^2 = x^3 + a2 x^2 + a4 x + a6.
EllipticCurve random_curve(const FieldPtr& field, std::mt19937_64& rng);
bool hasse_admissible(std::uint64_t q, std::uint64_t n);

}  // namespace jacsidon::curve
