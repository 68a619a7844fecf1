#pragma once

// Sidon sets in groups close to (Z/p)^j x Z/n: an elliptic curve E over
// F_{p^j} with E(k) cyclic of order n, the generalized jacobian J_{2(0_E)},
// a dense box of the embedded curve, and a Freiman isomorphism of order 2
// into a product of cyclic groups.

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "jacsidon/abgroup.hpp"
#include "jacsidon/elliptic.hpp"
#include "jacsidon/genjac.hpp"
#include "jacsidon/sidon.hpp"

namespace jacsidon::embed {

using abgroup::GroupElement;
using abgroup::GroupSpec;

inline constexpr std::uint64_t kMaxFieldOrder = 1 << 14;
inline constexpr std::uint64_t kExhaustiveScanCells = 1'000'000;
inline constexpr int kGreedyRestarts = 1000;

struct EmbedParams {
  std::uint64_t p = 0;
  unsigned j = 1;
  std::uint64_t n = 0;
  /// n_1, ..., n_{j+1}
  std::vector<std::uint64_t> targets;
};

/// Throws std::invalid_argument naming the first violated hypothesis.
void validate(const EmbedParams& params);
/// Orders n allowed with p and j: coprime to p and inside the Hasse window.
std::vector<std::uint64_t> admissible_orders(std::uint64_t p, unsigned j);

/// J_{2(0_E)}(k) with an explicit isomorphism onto (Z/p)^j x Z/n.
class ESharp {
 public:
  static ESharp build(std::uint64_t p, unsigned j, std::uint64_t n);

  const genjac::GJGroup& group() const;
  const curve::EllipticCurve& curve() const;
  /// First point of E(k) of order n in sorted order.
  const curve::ECPoint& generator() const;
  /// a = 1 mod n, a = 0 mod p; x -> a x projects onto the n-torsion.
  std::uint64_t splitting_integer() const;
  /// (Z/p)^j x Z/n
  const GroupSpec& coordinates() const;
  /// Coordinates of the kernel part use the power basis of this modulus.
  std::string basis() const;

  /// The isomorphism t.
  GroupElement operator()(const genjac::GJElement& x) const;
  /// Images of the points of E(k) other than 0_E, in point order.
  std::vector<GroupElement> embedded_curve() const;
  /// t(s(x)) + t(s(-x)), the same for every x.
  GroupElement center() const;

  struct Impl;

 private:
  std::shared_ptr<const Impl> impl_;
};

/// Product of cyclic intervals {origin, ..., origin + length - 1} mod m.
struct IntervalBox {
  std::vector<std::uint64_t> moduli;
  std::vector<std::uint64_t> origins;
  std::vector<std::uint64_t> lengths;

  bool contains(const GroupElement& x) const;
  /// `[o1+l1 mod m1] x ...`
  std::string to_string() const;
};

struct BoxChoice {
  IntervalBox box;
  std::uint64_t count = 0;
  /// ceil(|points| / 2^rank), met by some box since the lengths are ceil(m/2).
  std::uint64_t required = 0;
  std::string method;  // "exhaustive" or "greedy"
};

/// A box with sides ceil(m_i / 2) holding at least `required` points.
/// Exhaustive over all origins (lexicographically least maximizer) when the
/// group has at most 10^6 elements, coordinate-wise greedy with restarts
/// otherwise. Throws std::runtime_error if the bound is not reached.
BoxChoice choose_intervals(const std::vector<GroupElement>& points, const GroupSpec& ambient,
                           std::uint64_t seed = 0);

/// Lifts each point to its offsets from the box origins and reduces them
/// modulo the targets. Requires 2 (l_i - 1) < min(m_i, n_i) for every side.
std::vector<GroupElement> freiman_project(const std::vector<GroupElement>& points, const IntervalBox& box,
                                          const GroupSpec& target);

/// True when x1 + x2 = x3 + x4 in the source exactly when it holds for the
/// images; compares the partitions of pairs by their sums.
bool is_freiman_order2(const std::vector<GroupElement>& source, const GroupSpec& source_group,
                       const std::vector<GroupElement>& image, const GroupSpec& target_group);

struct EmbedResult {
  EmbedParams params;
  std::string curve;
  std::string generator;
  std::string basis;
  std::uint64_t splitting_integer = 0;
  GroupSpec source;  // (Z/p)^j x Z/n
  GroupSpec target;  // prod Z/n_i
  std::vector<GroupElement> symmetric_set;
  GroupElement center;
  bool symmetric_certified = false;
  BoxChoice box;
  std::vector<GroupElement> box_points;
  std::vector<GroupElement> projected;
  bool freiman_certified = false;
  std::uint64_t dropped = 0;
  std::vector<GroupElement> sidon_set;
  sidon::SidonReport<GroupElement> report;
  /// floor((ceil((n - 1) / 2^{j+1}) - 2) / 2)
  std::uint64_t size_bound = 0;
};

/// The whole pipeline; every stage is certified before the next one runs.
EmbedResult construct(const EmbedParams& params, std::uint64_t seed = 0);

}  // namespace jacsidon::embed
