#pragma once

// Genus-2 curves y^2 = f(x) with f monic squarefree of degree 5 and their
// jacobians in Mumford representation.

#include <string>
#include <string_view>
#include <vector>

#include "jacsidon/ffield.hpp"
#include "jacsidon/poly.hpp"

namespace jacsidon::curve {

using ffield::FieldElement;
using ffield::FieldPtr;
using ffield::Polynomial;

struct HypPoint {
  bool inf = true;
  FieldElement x;
  FieldElement y;

  static HypPoint infinity() { return {}; }
  static HypPoint affine(FieldElement x, FieldElement y) { return {false, std::move(x), std::move(y)}; }
  bool operator==(const HypPoint& o) const;
  bool operator<(const HypPoint& o) const;
  std::string to_string() const;
};

/// Reduced divisor class: the gcd divisor of (u, y - v) minus deg(u) times infinity.
struct MumfordDivisor {
  Polynomial u;
  Polynomial v;

  bool operator==(const MumfordDivisor& o) const { return u == o.u && v == o.v; }
  /// Degree of u first, then packed coefficients of u and v.
  bool operator<(const MumfordDivisor& o) const;
  /// `(u0,u1,...;v0,v1,...)`
  std::string to_string() const;
};

class HypCurve {
 public:
  HypCurve(FieldPtr field, Polynomial f);
  static HypCurve from_ints(const FieldPtr& field, const std::vector<std::int64_t>& coeffs);

  const FieldPtr& field() const { return field_; }
  const Polynomial& f() const { return f_; }

  bool on_curve(const HypPoint& p) const;
  bool is_valid(const MumfordDivisor& d) const;
  void require_valid(const MumfordDivisor& d) const;

  MumfordDivisor zero() const;
  MumfordDivisor neg(const MumfordDivisor& d) const;
  MumfordDivisor add(const MumfordDivisor& a, const MumfordDivisor& b) const;
  MumfordDivisor mul(const MumfordDivisor& d, std::int64_t k) const;

  /// Class of (P) - (infinity).
  MumfordDivisor point_class(const HypPoint& p) const;
  /// (x, y) -> (x, -y); fixes infinity.
  HypPoint involution(const HypPoint& p) const;

  HypCurve base_change(const ffield::SubfieldEmbedding& emb) const;

  /// Packed identity of a class, usable as a hash key (q <= 2^10).
  std::uint64_t key(const MumfordDivisor& d) const;

  /// `hyp:<field spec>:f0,f1,...,f5`
  std::string to_string() const;

 private:
  MumfordDivisor reduce(Polynomial u, Polynomial v) const;
  FieldPtr field_;
  Polynomial f_;
};

HypCurve parse_hyp_curve(std::string_view text);
MumfordDivisor parse_mumford(const HypCurve& c, std::string_view text);

/// Rational points, infinity first.
std::vector<HypPoint> hyp_points(const HypCurve& c);
/// Every rational divisor class, sorted.
std::vector<MumfordDivisor> jac_enumerate(const HypCurve& c);

}  // namespace jacsidon::curve
