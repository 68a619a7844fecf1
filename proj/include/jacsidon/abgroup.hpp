#pragma once

// Finite abelian groups in standard form Z/n_1 x ... x Z/n_r.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "jacsidon/error.hpp"

namespace jacsidon::abgroup {

inline constexpr std::uint64_t kMaxGroupOrder = std::uint64_t{1} << 30;
inline constexpr std::uint64_t kMaxStandardizeOrder = std::uint64_t{1} << 20;

struct GroupElement {
  std::vector<std::uint64_t> coords;

  auto operator<=>(const GroupElement&) const = default;
  bool operator==(const GroupElement&) const = default;
};

struct GroupSpec {
  std::vector<std::uint64_t> moduli{1};
  std::string label;

  GroupSpec() = default;
  explicit GroupSpec(std::vector<std::uint64_t> m, std::string lbl = {});

  std::size_t rank() const { return moduli.size(); }
  /// Product of the moduli; throws CapExceeded past 2^30.
  std::uint64_t order() const;
  bool contains(const GroupElement& x) const;
  bool operator==(const GroupSpec& o) const { return moduli == o.moduli; }

  /// `Z/n1 x Z/n2 x ...`
  std::string to_string() const;
};

/// Accepts `Z/7 x Z/11`, `Z/7xZ/11`, `7,11`; a bare count repeats the
/// previous factor, so `Z/121x2` is Z/121 x Z/121.
GroupSpec parse_group(std::string_view text);

GroupElement g_zero(const GroupSpec& g);
GroupElement g_add(const GroupSpec& g, const GroupElement& a, const GroupElement& b);
GroupElement g_sub(const GroupSpec& g, const GroupElement& a, const GroupElement& b);
GroupElement g_neg(const GroupSpec& g, const GroupElement& a);
GroupElement g_scale(const GroupSpec& g, const GroupElement& a, std::int64_t k);
GroupElement g_reduce(const GroupSpec& g, const std::vector<std::int64_t>& coords);
std::uint64_t g_element_order(const GroupSpec& g, const GroupElement& a);

/// #{x : 2x = 0} = prod gcd(2, n_i).
std::uint64_t two_torsion_count(const GroupSpec& g);

/// Element index in lexicographic coordinate order (first coordinate most significant).
std::uint64_t g_index(const GroupSpec& g, const GroupElement& a);
GroupElement g_from_index(const GroupSpec& g, std::uint64_t index);
/// All elements in lexicographic order; order must be at most 2^20.
std::vector<GroupElement> g_enumerate(const GroupSpec& g);

/// `(c1,c2,...)`
std::string element_to_string(const GroupElement& a);
GroupElement parse_element(const GroupSpec& g, std::string_view text);

/// Explicit isomorphism from an arbitrary product of cyclic groups to its
/// invariant-factor form, via the prime-power decomposition.
class InvariantIso {
 public:
  explicit InvariantIso(GroupSpec source);
  const GroupSpec& source() const { return source_; }
  const GroupSpec& target() const { return target_; }
  GroupElement forward(const GroupElement& x) const;
  GroupElement backward(const GroupElement& y) const;

 private:
  struct Slot {
    std::uint64_t prime_power;
    std::size_t source_factor;
    std::size_t target_factor;
  };
  GroupSpec source_;
  GroupSpec target_;
  std::vector<Slot> slots_;
};

/// Invariant factors n_1 | n_2 | ... of an arbitrary product of cyclic groups.
GroupSpec invariant_form(const GroupSpec& g);

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);
std::uint64_t crt_pair(std::uint64_t a, std::uint64_t m, std::uint64_t b, std::uint64_t n);

/// Result of identifying an enumerated black-box group: invariant factors,
/// generators, and coordinate tables in both directions.
template <class E, class Key>
struct Standardized {
  GroupSpec spec;
  std::vector<E> generators;
  std::vector<E> table;  // indexed by g_index
  std::unordered_map<Key, std::uint64_t> index;

  template <class KeyFn>
  GroupElement forward(const E& x, KeyFn key) const {
    auto it = index.find(key(x));
    if (it == index.end()) throw std::invalid_argument("element outside the standardized group");
    return g_from_index(spec, it->second);
  }
  const E& backward(const GroupElement& y) const { return table.at(g_index(spec, y)); }
};

namespace detail {

template <class E, class Op>
E scalar_mul(E x, std::uint64_t k, const E& zero, Op& op) {
  E r = zero;
  while (k) {
    if (k & 1) r = op(r, x);
    k >>= 1;
    if (k) x = op(x, x);
  }
  return r;
}

}  // namespace detail

/// Identifies the structure of the group formed by `elements` under `op`.
/// `key` maps elements to a hashable identity. Works one Sylow subgroup at a
/// time: greedily adds an element of maximal order modulo the current span,
/// corrected so that its span meets the current span trivially.
template <class E, class Op, class KeyFn>
auto standardize(const std::vector<E>& elements, const E& zero, Op op, KeyFn key)
    -> Standardized<E, std::decay_t<decltype(key(zero))>> {
  using Key = std::decay_t<decltype(key(zero))>;
  const std::uint64_t n = elements.size();
  if (n == 0) throw std::invalid_argument("empty group");
  if (n > kMaxStandardizeOrder) throw CapExceeded("group order " + std::to_string(n) + " exceeds 2^20");

  auto mul = [&](const E& x, std::uint64_t k) { return detail::scalar_mul(x, k, zero, op); };

  // ell-part of each generator, per prime: list of (generator, exponent)
  std::vector<std::pair<std::uint64_t, std::vector<std::pair<E, unsigned>>>> parts;
  for (auto [ell, v] : factorize(n)) {
    std::uint64_t ell_v = 1;
    for (unsigned i = 0; i < v; ++i) ell_v *= ell;
    std::uint64_t cofactor = n / ell_v;

    // Sylow subgroup as the image of multiplication by the cofactor.
    std::vector<E> sylow;
    {
      std::unordered_map<Key, bool> seen;
      for (const auto& x : elements) {
        E y = mul(x, cofactor);
        if (seen.emplace(key(y), true).second) sylow.push_back(y);
      }
    }
    if (sylow.size() != ell_v) throw std::logic_error("black-box group is not abelian of the stated order");

    // Current span with coordinates in the chosen basis.
    std::unordered_map<Key, std::vector<std::uint64_t>> span;
    span.emplace(key(zero), std::vector<std::uint64_t>{});
    std::vector<E> span_elems{zero};
    std::vector<std::pair<E, unsigned>> basis;
    auto extend_coords = [](std::vector<std::uint64_t> c, std::size_t len) {
      c.resize(len, 0);
      return c;
    };

    while (span_elems.size() < ell_v) {
      // element of maximal order in the quotient by the span
      unsigned best_r = 0;
      const E* best = nullptr;
      for (const auto& x : sylow) {
        unsigned r = 0;
        E y = x;
        while (!span.count(key(y))) {
          y = mul(y, ell);
          ++r;
        }
        if (r > best_r) {
          best_r = r;
          best = &x;
        }
      }
      std::uint64_t ell_r = 1;
      for (unsigned i = 0; i < best_r; ++i) ell_r *= ell;
      E x = *best;
      auto c = extend_coords(span.at(key(mul(x, ell_r))), basis.size());
      for (std::size_t i = 0; i < basis.size(); ++i) {
        if (c[i] % ell_r != 0) throw std::logic_error("basis correction failed");
        std::uint64_t ord_i = 1;
        for (unsigned k = 0; k < basis[i].second; ++k) ord_i *= ell;
        std::uint64_t shift = c[i] / ell_r;
        if (shift) x = op(x, mul(basis[i].first, ord_i - shift % ord_i));
      }
      std::vector<E> new_elems;
      std::unordered_map<Key, std::vector<std::uint64_t>> new_span;
      E step = zero;
      for (std::uint64_t k = 0; k < ell_r; ++k) {
        for (const auto& s : span_elems) {
          E y = op(s, step);
          auto coords = extend_coords(span.at(key(s)), basis.size() + 1);
          coords[basis.size()] = k;
          if (!new_span.emplace(key(y), std::move(coords)).second)
            throw std::logic_error("basis element is not independent");
          new_elems.push_back(std::move(y));
        }
        step = op(step, x);
      }
      span = std::move(new_span);
      span_elems = std::move(new_elems);
      basis.emplace_back(x, best_r);
    }
    std::sort(basis.begin(), basis.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    parts.emplace_back(ell, std::move(basis));
  }

  // Combine the k-th largest cyclic factor of every Sylow part.
  std::size_t rank = 0;
  for (const auto& [ell, basis] : parts) rank = std::max(rank, basis.size());
  Standardized<E, Key> out;
  std::vector<std::uint64_t> moduli;
  for (std::size_t k = 0; k < rank; ++k) {
    E g = zero;
    std::uint64_t m = 1;
    for (const auto& [ell, basis] : parts) {
      if (k >= basis.size()) continue;
      g = op(g, basis[k].first);
      for (unsigned i = 0; i < basis[k].second; ++i) m *= ell;
    }
    out.generators.push_back(g);
    moduli.push_back(m);
  }
  std::reverse(out.generators.begin(), out.generators.end());
  std::reverse(moduli.begin(), moduli.end());
  if (moduli.empty()) {
    moduli.push_back(1);
    out.generators.push_back(zero);
  }
  out.spec = GroupSpec(moduli);

  std::vector<E> table{zero};
  for (std::size_t k = moduli.size(); k-- > 0;) {
    std::vector<E> next;
    next.reserve(table.size() * moduli[k]);
    E shift = zero;
    for (std::uint64_t c = 0; c < moduli[k]; ++c) {
      for (const auto& t : table) next.push_back(op(shift, t));
      shift = op(shift, out.generators[k]);
    }
    table = std::move(next);
  }
  for (std::uint64_t i = 0; i < table.size(); ++i) {
    if (!out.index.emplace(key(table[i]), i).second)
      throw std::logic_error("standardized coordinates are not injective");
  }
  for (const auto& x : elements)
    if (!out.index.count(key(x))) throw std::logic_error("element missing from standardized table");
  out.table = std::move(table);
  return out;
}

}  // namespace jacsidon::abgroup
