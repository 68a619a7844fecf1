#include "jacsidon/sidon.hpp"

#include <bitset>
#include <functional>
#include <numeric>

namespace jacsidon::sidon {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Sidon:
      return "sidon";
    case Verdict::Symmetric:
      return "symmetric";
    case Verdict::Neither:
      return "neither";
  }
  return "neither";
}

Verdict parse_verdict(std::string_view s) {
  if (s == "sidon") return Verdict::Sidon;
  if (s == "symmetric") return Verdict::Symmetric;
  if (s == "neither") return Verdict::Neither;
  throw std::invalid_argument("unknown verdict '" + std::string(s) + "'");
}

namespace {

using Bits = std::bitset<kMaxCensusOrder>;

struct Table {
  std::uint64_t n;
  std::vector<std::uint16_t> sum;  // n x n
  std::uint16_t add(std::size_t a, std::size_t b) const { return sum[a * n + b]; }
};

Table build_table(const abgroup::GroupSpec& g) {
  Table t;
  t.n = g.order();
  t.sum.resize(t.n * t.n);
  auto elems = abgroup::g_enumerate(g);
  for (std::size_t a = 0; a < t.n; ++a)
    for (std::size_t b = a; b < t.n; ++b) {
      auto s = static_cast<std::uint16_t>(abgroup::g_index(g, abgroup::g_add(g, elems[a], elems[b])));
      t.sum[a * t.n + b] = s;
      t.sum[b * t.n + a] = s;
    }
  return t;
}

struct Search {
  const Table& t;
  bool babai_sos;
  std::uint64_t bound;
  std::vector<std::uint16_t> chosen;
  std::vector<std::uint16_t> best;
  std::uint64_t nodes = 0;
  Bits off, diag;

  bool fits(std::uint16_t z) const {
    for (auto s : chosen) {
      auto v = t.add(z, s);
      if (off[v] || diag[v]) return false;
    }
    auto d = t.add(z, z);
    if (off[d]) return false;
    if (diag[d] && !babai_sos) return false;
    return true;
  }

  void push(std::uint16_t z) {
    for (auto s : chosen) off.set(t.add(z, s));
    diag.set(t.add(z, z));
    chosen.push_back(z);
  }

  void pop(const Bits& o, const Bits& d) {
    chosen.pop_back();
    off = o;
    diag = d;
  }

  void run(const std::vector<std::uint16_t>& candidates) {
    ++nodes;
    if (chosen.size() > best.size()) best = chosen;
    if (best.size() >= bound) return;
    if (chosen.size() + candidates.size() <= best.size()) return;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (chosen.size() + (candidates.size() - i) <= best.size() || best.size() >= bound) return;
      auto z = candidates[i];
      Bits o = off, d = diag;
      push(z);
      std::vector<std::uint16_t> next;
      next.reserve(candidates.size() - i);
      for (std::size_t j = i + 1; j < candidates.size(); ++j)
        if (fits(candidates[j])) next.push_back(candidates[j]);
      run(next);
      pop(o, d);
    }
  }
};

template <std::size_t N>
std::bitset<N> rotate(const std::bitset<N>& b, std::uint64_t s, std::uint64_t n, const std::bitset<N>& mask) {
  if (s == 0) return b;
  return ((b << s) | (b >> (n - s))) & mask;
}

// Search on Z/n in integer order. A set is Sidon exactly when the
// differences x - y over ordered pairs of distinct elements are distinct, so
// the state is the set D of used differences (with 0) and the set F of
// elements that would repeat one.
template <std::size_t N>
struct CyclicSearch {
  using Bits = std::bitset<N>;
  std::uint64_t n;
  std::uint64_t bound;
  Bits mask;
  std::vector<std::uint16_t> chosen, best;
  std::uint64_t nodes = 0;
  // elements v with gcd(v, n) below the current threshold
  Bits low_gcd;
  // Inverses of units mod n (0 elsewhere); set when the search runs over sets
  // normalized to contain {0, 1}.
  std::vector<std::uint16_t> inv;
  std::vector<std::uint16_t> product;  // n x n table of x * y mod n

  std::uint64_t sub(std::uint64_t x, std::uint64_t y) const { return x >= y ? x - y : x + n - y; }

  // With 0, 1, a the three smallest elements, the set is the normal form with
  // the least third element among all images x -> (x - t) / (s - t) over
  // pairs with s - t a unit; so no such image lies in [2, a).
  bool ratios_ok(std::uint64_t z) const {
    std::uint64_t a = chosen.size() >= 3 ? chosen[2] : z;
    auto bad = [&](std::uint64_t x, std::uint64_t t, std::uint64_t s) {
      std::uint64_t i = inv[sub(s, t)];
      if (!i) return false;
      std::uint64_t r = product[sub(x, t) * n + i];
      return r >= 2 && r < a;
    };
    // images of z itself are excluded by forbid_ratios
    for (auto t : chosen)
      for (auto s : chosen) {
        if (s == t) continue;
        if (bad(s, z, t) || bad(t, s, z)) return false;
      }
    return true;
  }

  // Candidates x with (x - t) / (s - t) in [2, a) for a new pair (t, s).
  void forbid_ratios(std::uint64_t z, Bits& forbidden) const {
    std::uint64_t a = chosen.size() >= 3 ? chosen[2] : z;
    auto mark = [&](std::uint64_t t, std::uint64_t s) {
      std::uint64_t d = sub(s, t);
      if (!inv[d]) return;
      for (std::uint64_t r = 2; r < a; ++r) forbidden.set((t + d * r) % n);
    };
    for (auto t : chosen) {
      mark(t, z);
      mark(z, t);
    }
    if (chosen.size() == 2) {
      mark(chosen[0], chosen[1]);
      mark(chosen[1], chosen[0]);
    }
  }

  // State after adding z to the chosen set.
  void extend(std::uint64_t z, const Bits& used, const Bits& forbidden, Bits& used2, Bits& forbidden2) const {
    Bits delta;
    for (auto s : chosen) {
      delta.set((z + n - s) % n);
      delta.set((s + n - z) % n);
    }
    used2 = used | delta;
    forbidden2 = forbidden | rotate(used2, z, n, mask) | rotate(low_gcd, z, n, mask);
    for (auto s : chosen) {
      forbidden2 |= rotate(delta, s, n, mask);
      // 2c = z + s makes c - z the negative of c - s
      std::uint64_t m = (z + s) % n;
      if (n % 2) {
        forbidden2.set(m % 2 ? (m + n) / 2 : m / 2);
      } else if (m % 2 == 0) {
        forbidden2.set(m / 2);
        forbidden2.set(m / 2 + n / 2);
      }
    }
    // c - z = n/2 is its own negative
    if (n % 2 == 0) forbidden2.set((z + n / 2) % n);
  }

  void run(const Bits& used, const Bits& forbidden, const Bits& candidates) {
    ++nodes;
    if (chosen.size() > best.size()) best = chosen;
    if (best.size() >= bound) return;
    if (chosen.size() + candidates.count() <= best.size()) return;
    Bits rest = candidates;
    for (std::size_t z = rest._Find_first(); z < n; z = rest._Find_next(z)) {
      rest.reset(z);
      if (chosen.size() + 1 + rest.count() <= best.size() || best.size() >= bound) return;
      if (!inv.empty() && chosen.size() >= 2 && !ratios_ok(z)) continue;
      Bits used2, forbidden2;
      extend(z, used, forbidden, used2, forbidden2);
      if (!inv.empty() && chosen.size() >= 2) forbid_ratios(z, forbidden2);
      chosen.push_back(static_cast<std::uint16_t>(z));
      run(used2, forbidden2, rest & ~forbidden2);
      chosen.pop_back();
    }
  }
};


template <std::size_t N>
std::vector<std::uint16_t> cyclic_census(std::uint64_t n, std::uint64_t bound, std::uint64_t& nodes) {
  using Bits = std::bitset<N>;
  CyclicSearch<N> c{n, bound, {}, {0}, {0}, 0, {}, {}, {}};
  for (std::uint64_t v = 0; v < n; ++v) c.mask.set(v);
  // Units act on Z/n preserving Sidon sets. Translating and scaling, a set
  // with a difference of gcd h with n contains {0, h}; the search runs over
  // h in increasing order and admits only differences of gcd >= h.
  for (std::uint64_t h = 1; h < n && c.best.size() < c.bound; ++h) {
    if (n % h) continue;
    c.low_gcd.reset();
    for (std::uint64_t v = 0; v < n; ++v)
      if (std::gcd(v, n) < h) c.low_gcd.set(v);
    Bits used, forbidden;
    used.set(0);
    forbidden = used | c.low_gcd;
    if (n % 2 == 0) forbidden.set(n / 2);
    if (forbidden.test(h)) continue;
    if (h == 1) {
      c.inv.assign(n, 0);
      c.product.assign(n * n, 0);
      for (std::uint64_t v = 0; v < n; ++v)
        for (std::uint64_t w = 0; w < n; ++w) {
          c.product[v * n + w] = static_cast<std::uint16_t>(v * w % n);
          if (v * w % n == 1) c.inv[v] = static_cast<std::uint16_t>(w);
        }
    } else {
      c.inv.clear();
    }
    Bits used2, forbidden2;
    c.extend(h, used, forbidden, used2, forbidden2);
    c.chosen.push_back(static_cast<std::uint16_t>(h));
    c.run(used2, forbidden2, c.mask & ~forbidden2);
    c.chosen.pop_back();
  }
  nodes = c.nodes;
  return c.best;
}

}  // namespace

CensusResult max_sidon_census(const abgroup::GroupSpec& g, bool babai_sos) {
  std::uint64_t n = g.order();
  if (n > kMaxCensusOrder)
    throw CapExceeded("census is limited to groups of order <= " + std::to_string(kMaxCensusOrder) + ", got " +
                      std::to_string(n));
  Table t = build_table(g);
  Search s{t, babai_sos, n, {}, {}, 0, {}, {}};
  if (!babai_sos) {
    // the |S|(|S|-1) differences of distinct elements are distinct and nonzero
    std::uint64_t k = 1;
    while ((k + 1) * k <= n - 1) ++k;
    s.bound = k;
  }
  CensusResult r;
  r.method = n <= kExhaustiveCensusOrder ? "exhaustive" : "branch-and-bound";
  std::vector<std::uint16_t> best;
  // Sidon sets are translation invariant, so the search fixes 0 in the set.
  if (g.rank() == 1 && n > 2 && !babai_sos) {
    if (n <= 64)
      best = cyclic_census<64>(n, s.bound, r.nodes);
    else if (n <= 128)
      best = cyclic_census<128>(n, s.bound, r.nodes);
    else if (n <= 256)
      best = cyclic_census<256>(n, s.bound, r.nodes);
    else
      best = cyclic_census<512>(n, s.bound, r.nodes);
  } else {
    s.push(0);
    s.best = s.chosen;
    std::vector<std::uint16_t> candidates;
    for (std::uint64_t z = 1; z < n; ++z)
      if (s.fits(static_cast<std::uint16_t>(z))) candidates.push_back(static_cast<std::uint16_t>(z));
    s.run(candidates);
    best = s.best;
    r.nodes = s.nodes;
  }
  std::sort(best.begin(), best.end());
  r.max_size = best.size();
  for (auto i : best) r.witness.push_back(abgroup::g_from_index(g, i));
  return r;
}

std::uint64_t naive_max_sidon(const abgroup::GroupSpec& g) {
  auto elems = abgroup::g_enumerate(g);
  std::uint64_t best = 0;
  std::vector<abgroup::GroupElement> cur{elems[0]};
  // A quadruple new to cur + z has z in one of its four slots.
  auto fresh_violation = [&](const abgroup::GroupElement& z) {
    std::vector<abgroup::GroupElement> all = cur;
    all.push_back(z);
    for (const auto& a : all)
      for (const auto& b : all)
        for (const auto& c : all) {
          const abgroup::GroupElement* q[4][4] = {{&z, &a, &b, &c}, {&a, &z, &b, &c}, {&a, &b, &z, &c}, {&a, &b, &c, &z}};
          for (auto& x : q) {
            if (*x[0] == *x[2] || *x[0] == *x[3]) continue;
            if (abgroup::g_add(g, *x[0], *x[1]) == abgroup::g_add(g, *x[2], *x[3])) return true;
          }
        }
    return false;
  };
  std::function<void(std::size_t)> grow = [&](std::size_t from) {
    best = std::max<std::uint64_t>(best, cur.size());
    for (std::size_t i = from; i < elems.size(); ++i) {
      if (fresh_violation(elems[i])) continue;
      cur.push_back(elems[i]);
      grow(i + 1);
      cur.pop_back();
    }
  };
  grow(1);
  return best;
}

bool brute_force_is_sidon(const std::vector<abgroup::GroupElement>& s, const abgroup::GroupSpec& g) {
  for (const auto& a : s)
    for (const auto& b : s)
      for (const auto& c : s)
        for (const auto& d : s) {
          if (a == c || a == d) continue;
          if (abgroup::g_add(g, a, b) == abgroup::g_add(g, c, d)) return false;
        }
  return true;
}

}  // namespace jacsidon::sidon
