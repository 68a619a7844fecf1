#pragma once

// Sidon and symmetric Sidon certification, classification, desymmetrization,
// additive energy, difference profiles and exhaustive maximal-set search.
//
// The routines are templates over a group adapter `Ops` providing
//   E add(const E&, const E&) const;  E neg(const E&) const;
//   Key key(const E&) const;          bool less(const E&, const E&) const;
// where Key is hashable. Adapters for standard-form groups, generalized
// jacobians and genus-2 jacobians are provided.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "jacsidon/abgroup.hpp"
#include "jacsidon/error.hpp"
#include "jacsidon/genjac.hpp"
#include "jacsidon/hyperelliptic.hpp"

namespace jacsidon::sidon {

inline constexpr std::uint64_t kMaxSetSize = 1'000'000;
inline constexpr std::uint64_t kMaxPairs = 1'000'000'000;
inline constexpr std::uint64_t kExhaustiveCensusOrder = 120;
inline constexpr std::uint64_t kMaxCensusOrder = 512;

enum class Verdict { Sidon, Symmetric, Neither };
std::string verdict_name(Verdict v);
Verdict parse_verdict(std::string_view s);

template <class E>
struct QuadrupleWitness {
  E x1, x2, x3, x4, sum;
};

template <class E>
struct SidonReport {
  Verdict verdict = Verdict::Sidon;
  std::optional<E> center;
  std::vector<QuadrupleWitness<E>> witnesses;
  /// Why a symmetric check failed, when it is not a witness.
  std::string note;
  /// Additive energy, when requested.
  std::optional<std::uint64_t> energy;
};

struct SidonOptions {
  std::size_t witness_cap = 16;
  /// Collect every witness instead of stopping at the cap.
  bool all_witnesses = false;
  /// Also allow 2x = 2y for distinct x, y (the Babai-Sos variant).
  bool babai_sos = false;
  /// Fill SidonReport::energy.
  bool with_energy = false;
};

struct SpecOps {
  const abgroup::GroupSpec& g;
  abgroup::GroupElement add(const abgroup::GroupElement& a, const abgroup::GroupElement& b) const {
    return abgroup::g_add(g, a, b);
  }
  abgroup::GroupElement neg(const abgroup::GroupElement& a) const { return abgroup::g_neg(g, a); }
  std::uint64_t key(const abgroup::GroupElement& a) const { return abgroup::g_index(g, a); }
  bool less(const abgroup::GroupElement& a, const abgroup::GroupElement& b) const { return a < b; }
};

struct GJOps {
  const genjac::GJGroup& g;
  genjac::GJElement add(const genjac::GJElement& a, const genjac::GJElement& b) const { return g.add(a, b); }
  genjac::GJElement neg(const genjac::GJElement& a) const { return g.neg(a); }
  std::string key(const genjac::GJElement& a) const { return g.key(a); }
  bool less(const genjac::GJElement& a, const genjac::GJElement& b) const { return g.key(a) < g.key(b); }
};

struct HypOps {
  const curve::HypCurve& c;
  curve::MumfordDivisor add(const curve::MumfordDivisor& a, const curve::MumfordDivisor& b) const {
    return c.add(a, b);
  }
  curve::MumfordDivisor neg(const curve::MumfordDivisor& a) const { return c.neg(a); }
  std::uint64_t key(const curve::MumfordDivisor& a) const { return c.key(a); }
  bool less(const curve::MumfordDivisor& a, const curve::MumfordDivisor& b) const { return a < b; }
};

namespace detail {

template <class E, class Ops>
void check_budget(const std::vector<E>& s, const Ops& ops) {
  std::uint64_t n = s.size();
  if (n > kMaxSetSize) throw CapExceeded("set of size " + std::to_string(n) + " exceeds 10^6");
  if (n * (n + 1) / 2 > kMaxPairs) throw CapExceeded("pair count exceeds 10^9");
  std::unordered_set<std::decay_t<decltype(ops.key(s[0]))>> seen;
  for (const auto& x : s)
    if (!seen.insert(ops.key(x)).second) throw std::invalid_argument("set contains a repeated element");
}

}  // namespace detail

template <class E, class Ops>
std::uint64_t additive_energy(const std::vector<E>& s, const Ops& ops);

template <class E, class Ops>
SidonReport<E> verify_sidon_core(const std::vector<E>& s, const Ops& ops, const SidonOptions& opt) {
  SidonReport<E> r;
  if (s.empty()) return r;
  detail::check_budget(s, ops);
  using Key = std::decay_t<decltype(ops.key(s[0]))>;
  struct Slot {
    std::int64_t off_i = -1, off_j = -1;  // an off-diagonal pair
    std::int64_t diag = -1;               // a diagonal pair {x, x}
  };
  std::unordered_map<Key, Slot> sums;
  sums.reserve(s.size() * (s.size() + 1) / 2);
  auto witness = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d, const E& sum) {
    r.verdict = Verdict::Neither;
    r.witnesses.push_back({s[a], s[b], s[c], s[d], sum});
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i; j < s.size(); ++j) {
      E sum = ops.add(s[i], s[j]);
      Slot& slot = sums[ops.key(sum)];
      bool diagonal = i == j;
      bool clash = false;
      if (slot.off_i >= 0) {
        witness(slot.off_i, slot.off_j, i, j, sum);
        clash = true;
      } else if (slot.diag >= 0 && (!diagonal || !opt.babai_sos)) {
        witness(slot.diag, slot.diag, i, j, sum);
        clash = true;
      }
      if (!clash) {
        if (diagonal)
          slot.diag = static_cast<std::int64_t>(i);
        else
          slot.off_i = static_cast<std::int64_t>(i), slot.off_j = static_cast<std::int64_t>(j);
      }
      if (!opt.all_witnesses && r.witnesses.size() >= opt.witness_cap && r.verdict == Verdict::Neither) return r;
    }
  }
  return r;
}

template <class E, class Ops>
SidonReport<E> verify_sidon(const std::vector<E>& s, const Ops& ops, const SidonOptions& opt = {}) {
  auto r = verify_sidon_core(s, ops, opt);
  if (opt.with_energy) r.energy = additive_energy(s, ops);
  return r;
}

template <class E, class Ops>
SidonReport<E> verify_symmetric(const std::vector<E>& s, const Ops& ops, std::optional<E> center,
                                const SidonOptions& opt = {});

/// The forced center of a symmetric Sidon set, validated; nullopt otherwise.
template <class E, class Ops>
std::optional<E> find_center(const std::vector<E>& s, const Ops& ops) {
  if (s.empty()) return std::nullopt;
  std::optional<E> candidate;
  SidonOptions one;
  one.witness_cap = 1;
  auto rep = verify_sidon(s, ops, one);
  if (!rep.witnesses.empty())
    candidate = rep.witnesses.front().sum;
  else if (s.size() == 1)
    candidate = ops.add(s[0], s[0]);
  else if (s.size() == 2)
    candidate = ops.add(s[0], s[1]);
  else
    return std::nullopt;
  if (verify_symmetric(s, ops, candidate).verdict != Verdict::Symmetric) return std::nullopt;
  return candidate;
}

template <class E, class Ops>
SidonReport<E> verify_symmetric(const std::vector<E>& s, const Ops& ops, std::optional<E> center,
                                const SidonOptions& opt) {
  SidonReport<E> r;
  if (s.empty()) {
    r.verdict = Verdict::Neither;
    r.note = "empty set has no center";
    return r;
  }
  detail::check_budget(s, ops);
  if (!center) center = find_center(s, ops);
  if (!center) {
    r.verdict = Verdict::Neither;
    r.note = "no center candidate";
    return r;
  }
  using Key = std::decay_t<decltype(ops.key(s[0]))>;
  const E& a = *center;
  std::unordered_set<Key> keys;
  for (const auto& x : s) keys.insert(ops.key(x));
  for (const auto& x : s)
    if (!keys.count(ops.key(ops.add(a, ops.neg(x))))) {
      r.verdict = Verdict::Neither;
      r.note = "set is not invariant under x -> center - x";
      return r;
    }
  Key ka = ops.key(a);
  std::unordered_map<Key, std::pair<std::size_t, std::size_t>> sums;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i; j < s.size(); ++j) {
      E sum = ops.add(s[i], s[j]);
      Key k = ops.key(sum);
      if (k == ka) continue;
      auto [it, fresh] = sums.emplace(k, std::make_pair(i, j));
      if (!fresh) {
        r.verdict = Verdict::Neither;
        r.witnesses.push_back({s[it->second.first], s[it->second.second], s[i], s[j], sum});
        if (!opt.all_witnesses && r.witnesses.size() >= opt.witness_cap) return r;
      }
    }
  if (r.verdict == Verdict::Neither) return r;
  r.verdict = Verdict::Symmetric;
  r.center = a;
  if (opt.with_energy) r.energy = additive_energy(s, ops);
  return r;
}

template <class E, class Ops>
SidonReport<E> classify(const std::vector<E>& s, const Ops& ops, const SidonOptions& opt = {}) {
  auto rep = verify_sidon(s, ops, opt);
  if (rep.verdict == Verdict::Sidon) return rep;
  if (auto c = find_center(s, ops)) return verify_symmetric(s, ops, c, opt);
  return rep;
}

template <class E>
struct Desymmetrized {
  std::vector<E> elements;
  /// Elements with 2x = center, removed.
  std::vector<E> dropped;
};

/// Keeps the smaller element of each pair {x, center - x} and drops the
/// fixed points; the result is certified Sidon before it is returned.
template <class E, class Ops>
Desymmetrized<E> desymmetrize(const std::vector<E>& s, const E& center, const Ops& ops) {
  Desymmetrized<E> out;
  if (s.empty()) return out;
  if (verify_symmetric(s, ops, std::optional<E>(center)).verdict != Verdict::Symmetric)
    throw std::invalid_argument("set is not a symmetric Sidon set with the given center");
  auto kc = ops.key(center);
  for (const auto& x : s) {
    E partner = ops.add(center, ops.neg(x));
    if (ops.key(ops.add(x, x)) == kc)
      out.dropped.push_back(x);
    else if (ops.less(x, partner))
      out.elements.push_back(x);
  }
  std::sort(out.elements.begin(), out.elements.end(), [&](const E& a, const E& b) { return ops.less(a, b); });
  if (verify_sidon(out.elements, ops).verdict != Verdict::Sidon)
    throw std::logic_error("desymmetrized set failed certification");
  return out;
}

/// Like desymmetrize for a set S contained in a symmetric Sidon set with the
/// given center, without requiring S = center - S: drops the x with
/// 2x = center and keeps the smaller element of each pair {x, center - x}
/// lying in S. The result is certified Sidon.
template <class E, class Ops>
Desymmetrized<E> desymmetrize_subset(const std::vector<E>& s, const E& center, const Ops& ops) {
  Desymmetrized<E> out;
  if (s.empty()) return out;
  detail::check_budget(s, ops);
  using Key = std::decay_t<decltype(ops.key(s[0]))>;
  auto kc = ops.key(center);
  std::unordered_map<Key, std::size_t> index;
  for (std::size_t i = 0; i < s.size(); ++i) index[ops.key(s[i])] = i;
  for (const auto& x : s) {
    if (ops.key(ops.add(x, x)) == kc) {
      out.dropped.push_back(x);
      continue;
    }
    auto it = index.find(ops.key(ops.add(center, ops.neg(x))));
    if (it == index.end() || ops.less(x, s[it->second])) out.elements.push_back(x);
  }
  std::sort(out.elements.begin(), out.elements.end(), [&](const E& a, const E& b) { return ops.less(a, b); });
  if (verify_sidon(out.elements, ops).verdict != Verdict::Sidon)
    throw std::invalid_argument("set is not contained in a symmetric Sidon set with the given center");
  return out;
}

/// Number of ordered quadruples (x1, x2, x3, x4) in S^4 with x1 + x2 = x3 + x4.
template <class E, class Ops>
std::uint64_t additive_energy(const std::vector<E>& s, const Ops& ops) {
  if (s.empty()) return 0;
  detail::check_budget(s, ops);
  using Key = std::decay_t<decltype(ops.key(s[0]))>;
  std::unordered_map<Key, std::uint64_t> r;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i; j < s.size(); ++j) r[ops.key(ops.add(s[i], s[j]))] += i == j ? 1 : 2;
  std::uint64_t e = 0;
  for (const auto& [k, c] : r) e += c * c;
  return e;
}

/// Multiplicity of every difference x - y over ordered pairs x != y, keyed
/// by the difference, sorted in canonical order.
template <class E, class Ops>
std::vector<std::pair<E, std::uint64_t>> difference_profile(const std::vector<E>& s, const Ops& ops) {
  if (s.empty()) return {};
  detail::check_budget(s, ops);
  using Key = std::decay_t<decltype(ops.key(s[0]))>;
  std::unordered_map<Key, std::pair<E, std::uint64_t>> m;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (i == j) continue;
      E d = ops.add(s[i], ops.neg(s[j]));
      auto [it, fresh] = m.emplace(ops.key(d), std::make_pair(d, 0));
      ++it->second.second;
    }
  std::vector<std::pair<E, std::uint64_t>> out;
  for (auto& [k, v] : m) out.push_back(std::move(v));
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return ops.less(a.first, b.first); });
  return out;
}

struct CensusResult {
  std::uint64_t max_size = 0;
  std::vector<abgroup::GroupElement> witness;
  /// "exhaustive" (order <= 120) or "branch-and-bound" (order <= 512).
  std::string method;
  std::uint64_t nodes = 0;
};

/// Exact maximum size of a Sidon set in g, with the lexicographically first
/// witness containing 0 in search order.
CensusResult max_sidon_census(const abgroup::GroupSpec& g, bool babai_sos = false);

/// Independent reference: grows every Sidon set containing 0 one element at
/// a time, checking each candidate with verify_sidon. Small groups only.
std::uint64_t naive_max_sidon(const abgroup::GroupSpec& g);

/// O(|S|^4) reference scan for a non-trivial quadruple.
bool brute_force_is_sidon(const std::vector<abgroup::GroupElement>& s, const abgroup::GroupSpec& g);

}  // namespace jacsidon::sidon
