#pragma once

// Finite fields F_{p^e} as F_p[X]/(modpoly).
//
// Elements are stored packed: the coefficient vector (c_0, ..., c_{e-1}) is
// encoded as the integer c_0 + c_1 p + ... + c_{e-1} p^{e-1}. The packed value
// doubles as the deterministic enumeration order of the field.

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace jacsidon::ffield {

class FieldSpec;
using FieldPtr = std::shared_ptr<const FieldSpec>;

inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 40;
inline constexpr std::uint64_t kMaxEnumerableOrder = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kMaxDiscreteLogOrder = std::uint64_t{1} << 40;

bool is_prime(std::uint64_t n);
/// Prime factors of n, ascending, without multiplicity.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

class FieldSpec {
 public:
  std::uint64_t characteristic() const { return p_; }
  unsigned degree() const { return e_; }
  std::uint64_t order() const { return q_; }
  /// Monic modulus, little-endian, e + 1 coefficients. For e = 1 this is X.
  const std::vector<std::uint64_t>& modpoly() const { return modpoly_; }

  /// `p^e:c0,c1,...,ce`
  std::string to_string() const;
  bool same_as(const FieldSpec& other) const;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t neg(std::uint64_t a) const;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t pow(std::uint64_t a, std::uint64_t k) const;
  std::uint64_t inv(std::uint64_t a) const;

  std::vector<std::uint64_t> unpack(std::uint64_t packed) const;
  std::uint64_t pack(std::span<const std::uint64_t> coeffs) const;

 private:
  friend FieldPtr make_spec(std::uint64_t p, unsigned e);
  friend FieldPtr make_spec_with_modpoly(std::uint64_t p, unsigned e,
                                         std::vector<std::uint64_t> modpoly);
  FieldSpec(std::uint64_t p, unsigned e, std::vector<std::uint64_t> modpoly);

  std::uint64_t p_;
  unsigned e_;
  std::uint64_t q_;
  std::vector<std::uint64_t> modpoly_;
  std::vector<std::uint64_t> p_powers_;
};

/// Field with p^e elements whose modulus is the lexicographically smallest
/// monic irreducible of degree e (coefficients compared from the constant term).
FieldPtr make_spec(std::uint64_t p, unsigned e);
/// Field with an explicit modulus; irreducibility is checked.
FieldPtr make_spec_with_modpoly(std::uint64_t p, unsigned e, std::vector<std::uint64_t> modpoly);
/// Parses `p^e:c0,...,ce`.
FieldPtr parse_spec(std::string_view text);

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldPtr field, std::uint64_t packed);

  static FieldElement zero(const FieldPtr& field) { return {field, 0}; }
  static FieldElement one(const FieldPtr& field) { return {field, 1}; }
  /// Image of an integer in the prime field.
  static FieldElement from_int(const FieldPtr& field, std::int64_t value);
  static FieldElement from_coeffs(const FieldPtr& field, std::span<const std::uint64_t> coeffs);
  /// The class of X, i.e. the generator of the power basis.
  static FieldElement generator_x(const FieldPtr& field);

  const FieldPtr& field() const { return field_; }
  const FieldSpec& spec() const { return *field_; }
  std::uint64_t packed() const { return value_; }
  std::vector<std::uint64_t> coeffs() const { return field_->unpack(value_); }
  bool is_zero() const { return value_ == 0; }
  bool is_one() const { return value_ == 1; }
  bool valid() const { return field_ != nullptr; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  FieldElement inv() const;
  FieldElement pow(std::uint64_t k) const;

  bool operator==(const FieldElement& o) const;
  std::strong_ordering operator<=>(const FieldElement& o) const { return value_ <=> o.value_; }

  /// Decimal for prime fields, dotted little-endian coefficients otherwise.
  std::string to_string() const;

 private:
  void check_same(const FieldElement& o) const;
  FieldPtr field_;
  std::uint64_t value_ = 0;
};

FieldElement parse_element(const FieldPtr& field, std::string_view text);

FieldElement frobenius(const FieldElement& a);
FieldElement frobenius_power(const FieldElement& a, unsigned k);
/// Norm to the subfield of degree `base_degree` (default: prime field).
/// The result stays in the field of `a`.
FieldElement norm_to_base(const FieldElement& a, unsigned base_degree = 1);
FieldElement trace_to_base(const FieldElement& a, unsigned base_degree = 1);

std::uint64_t multiplicative_order(const FieldElement& a);
/// Smallest packed element of multiplicative order p^e - 1.
FieldElement multiplicative_generator(const FieldPtr& field);

/// Baby-step giant-step logarithms to a fixed base, reusing the baby-step table.
class DiscreteLog {
 public:
  explicit DiscreteLog(FieldElement generator);
  std::uint64_t operator()(const FieldElement& x) const;
  const FieldElement& generator() const { return g_; }

 private:
  FieldElement g_;
  std::uint64_t group_order_;
  std::uint64_t step_;
  std::unordered_map<std::uint64_t, std::uint64_t> baby_;
  FieldElement giant_;  // g^{-step}
};

std::uint64_t discrete_log(const FieldElement& g, const FieldElement& x);

bool is_square(const FieldElement& a);
/// A square root of a square (Tonelli-Shanks, odd characteristic; Frobenius
/// inverse in characteristic 2). Throws if a is not a square.
FieldElement sqrt(const FieldElement& a);

/// Ring embedding F_{p^d} -> F_{p^e} for d | e, sending X to the smallest root
/// of the subfield modulus, plus coordinates over the subfield in the power
/// basis 1, T, ..., T^{e/d - 1} of the target generator T.
class SubfieldEmbedding {
 public:
  SubfieldEmbedding(FieldPtr sub, FieldPtr ext);

  const FieldPtr& sub() const { return sub_; }
  const FieldPtr& ext() const { return ext_; }
  unsigned relative_degree() const { return ext_->degree() / sub_->degree(); }

  FieldElement embed(const FieldElement& a) const;
  bool contains(const FieldElement& z) const;
  /// Preimage of an element of the image; throws otherwise.
  FieldElement descend(const FieldElement& z) const;
  /// Subfield coordinates (c_0, ..., c_{r-1}) with z = sum c_i T^i.
  std::vector<FieldElement> coordinates(const FieldElement& z) const;

 private:
  FieldPtr sub_;
  FieldPtr ext_;
  FieldElement root_;
  std::vector<std::vector<std::uint64_t>> inverse_;  // over F_p, row-major
};

FieldElement embed_subfield(const FieldElement& a, const FieldPtr& target);

}  // namespace jacsidon::ffield

template <>
struct std::hash<jacsidon::ffield::FieldElement> {
  std::size_t operator()(const jacsidon::ffield::FieldElement& a) const noexcept {
    return std::hash<std::uint64_t>{}(a.packed());
  }
};
