#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "jacsidon/abgroup.hpp"
#include "jacsidon/elliptic.hpp"
#include "jacsidon/ffield.hpp"
#include "jacsidon/genjac.hpp"
#include "jacsidon/sidon.hpp"

using namespace jacsidon;
using namespace jacsidon::sidon;
using abgroup::GroupElement;
using abgroup::GroupSpec;

namespace {

GroupElement el(std::vector<std::uint64_t> c) { return {std::move(c)}; }

std::vector<GroupElement> cyc(std::vector<std::uint64_t> xs) {
  std::vector<GroupElement> out;
  for (auto x : xs) out.push_back(el({x}));
  return out;
}

// Direct reading of the definition over ordered quadruples.
bool oracle_sidon(const std::vector<GroupElement>& s, const GroupSpec& g, bool babai_sos = false) {
  for (const auto& a : s)
    for (const auto& b : s)
      for (const auto& c : s)
        for (const auto& d : s) {
          if (abgroup::g_add(g, a, b) != abgroup::g_add(g, c, d)) continue;
          if (a == c || a == d) continue;
          if (babai_sos && a == b && c == d) continue;
          return false;
        }
  return true;
}

bool oracle_symmetric(const std::vector<GroupElement>& s, const GroupSpec& g, const GroupElement& center) {
  std::set<GroupElement> in(s.begin(), s.end());
  for (const auto& x : s)
    if (!in.count(abgroup::g_sub(g, center, x))) return false;
  for (const auto& a : s)
    for (const auto& b : s)
      for (const auto& c : s)
        for (const auto& d : s) {
          if (abgroup::g_add(g, a, b) != abgroup::g_add(g, c, d)) continue;
          if (a == c || a == d || b == abgroup::g_sub(g, center, a)) continue;
          return false;
        }
  return true;
}

std::uint64_t oracle_energy(const std::vector<GroupElement>& s, const GroupSpec& g) {
  std::uint64_t count = 0;
  for (const auto& a : s)
    for (const auto& b : s)
      for (const auto& c : s)
        for (const auto& d : s) count += abgroup::g_add(g, a, b) == abgroup::g_add(g, c, d);
  return count;
}

std::uint64_t oracle_max_sidon(const GroupSpec& g, bool babai_sos = false) {
  // Every subset, by bitmask; tiny groups only.
  auto elems = abgroup::g_enumerate(g);
  std::uint64_t best = 0;
  for (std::uint64_t mask = 1; mask < (1ULL << elems.size()); ++mask) {
    std::vector<GroupElement> s;
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (mask >> i & 1) s.push_back(elems[i]);
    if (s.size() > best && oracle_sidon(s, g, babai_sos)) best = s.size();
  }
  return best;
}

GroupSpec random_group(std::mt19937_64& rng) {
  std::vector<std::uint64_t> moduli;
  std::size_t rank = 1 + rng() % 3;
  for (std::size_t i = 0; i < rank; ++i) moduli.push_back(2 + rng() % 12);
  return GroupSpec(moduli);
}

GroupElement random_element(const GroupSpec& g, std::mt19937_64& rng) {
  GroupElement x;
  for (auto m : g.moduli) x.coords.push_back(rng() % m);
  return x;
}

std::vector<GroupElement> random_set(const GroupSpec& g, std::size_t size, std::mt19937_64& rng) {
  std::set<GroupElement> s;
  size = std::min<std::uint64_t>(size, g.order());
  while (s.size() < size) s.insert(random_element(g, rng));
  std::vector<GroupElement> out(s.begin(), s.end());
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

}  // namespace

TEST_CASE("verify_sidon examples") {
  GroupSpec z7({7});
  SpecOps ops{z7};
  CHECK(verify_sidon(std::vector<GroupElement>{}, ops).verdict == Verdict::Sidon);
  CHECK(verify_sidon(cyc({4}), ops).verdict == Verdict::Sidon);
  auto good = verify_sidon(cyc({0, 1, 3}), ops);
  CHECK(good.verdict == Verdict::Sidon);
  CHECK(good.witnesses.empty());

  auto bad = verify_sidon(cyc({0, 1, 2}), ops);
  CHECK(bad.verdict == Verdict::Neither);
  REQUIRE(bad.witnesses.size() == 1);
  const auto& w = bad.witnesses[0];
  CHECK(w.x1 == el({0}));
  CHECK(w.x2 == el({2}));
  CHECK(w.x3 == el({1}));
  CHECK(w.x4 == el({1}));
  CHECK(w.sum == el({2}));

  CHECK_THROWS_AS(verify_sidon(cyc({1, 1}), ops), std::invalid_argument);
  GroupSpec big({1ULL << 21});
  SpecOps big_ops{big};
  std::vector<GroupElement> huge;
  for (std::uint64_t i = 0; i <= kMaxSetSize; ++i) huge.push_back(el({i}));
  CHECK_THROWS_AS(verify_sidon(huge, big_ops), CapExceeded);
}

TEST_CASE("witnesses are genuine and capped") {
  std::mt19937_64 rng(11);
  GroupSpec z23({23});
  SpecOps ops{z23};
  auto s = random_set(z23, 20, rng);
  auto r = verify_sidon(s, ops);
  CHECK(r.verdict == Verdict::Neither);
  CHECK(r.witnesses.size() == 16);
  for (const auto& w : r.witnesses) {
    CHECK(abgroup::g_add(z23, w.x1, w.x2) == w.sum);
    CHECK(abgroup::g_add(z23, w.x3, w.x4) == w.sum);
    CHECK(w.x1 != w.x3);
    CHECK(w.x1 != w.x4);
  }
  SidonOptions all;
  all.all_witnesses = true;
  CHECK(verify_sidon(s, ops, all).witnesses.size() > 16);
  SidonOptions two;
  two.witness_cap = 2;
  CHECK(verify_sidon(s, ops, two).witnesses.size() == 2);
}

TEST_CASE("verify_sidon agrees with the quadruple scan on random sets") {
  std::mt19937_64 rng(2024);
  int sidon = 0, not_sidon = 0;
  for (int trial = 0; trial < 400; ++trial) {
    GroupSpec g = random_group(rng);
    SpecOps ops{g};
    std::size_t size = 1 + rng() % std::min<std::uint64_t>(25, g.order());
    if (trial % 2) size = std::min<std::size_t>(size, 2 + rng() % 5);
    auto s = random_set(g, size, rng);
    bool expect = oracle_sidon(s, g);
    CHECK((verify_sidon(s, ops).verdict == Verdict::Sidon) == expect);
    CHECK(brute_force_is_sidon(s, g) == expect);
    SidonOptions bs;
    bs.babai_sos = true;
    CHECK((verify_sidon(s, ops, bs).verdict == Verdict::Sidon) == oracle_sidon(s, g, true));
    (expect ? sidon : not_sidon)++;
  }
  CHECK(sidon > 50);
  CHECK(not_sidon > 50);
}

TEST_CASE("Babai-Sos variant allows equal doubles only") {
  GroupSpec z4({4});
  SpecOps ops{z4};
  SidonOptions bs;
  bs.babai_sos = true;
  CHECK(verify_sidon(cyc({0, 2}), ops).verdict == Verdict::Neither);
  CHECK(verify_sidon(cyc({0, 2}), ops, bs).verdict == Verdict::Sidon);
  CHECK(verify_sidon(cyc({0, 1, 2}), ops, bs).verdict == Verdict::Neither);
}

TEST_CASE("symmetric sets and centers") {
  GroupSpec z7({7});
  SpecOps ops{z7};
  auto pair = verify_symmetric(cyc({2, 5}), ops, std::optional<GroupElement>(el({0})));
  CHECK(pair.verdict == Verdict::Symmetric);
  CHECK(verify_sidon(cyc({2, 5}), ops).verdict == Verdict::Sidon);
  CHECK(find_center(cyc({3}), ops) == el({6}));
  CHECK(find_center(cyc({2, 5}), ops) == el({0}));
  CHECK_FALSE(find_center(cyc({0, 1, 3}), ops).has_value());

  auto wrong = verify_symmetric(cyc({0, 1, 3}), ops, std::optional<GroupElement>(el({100 % 7})));
  CHECK(wrong.verdict == Verdict::Neither);
  CHECK(wrong.note.find("invariant") != std::string::npos);

  // Random symmetric closures T u (a - T) against the definition.
  std::mt19937_64 rng(5);
  int symmetric = 0;
  for (int trial = 0; trial < 600; ++trial) {
    GroupSpec g = random_group(rng);
    SpecOps gops{g};
    GroupElement a = random_element(g, rng);
    std::set<GroupElement> closed;
    for (const auto& t : random_set(g, 1 + rng() % 4, rng)) {
      closed.insert(t);
      closed.insert(abgroup::g_sub(g, a, t));
    }
    std::vector<GroupElement> s(closed.begin(), closed.end());
    bool expect = oracle_symmetric(s, g, a);
    auto r = verify_symmetric(s, gops, std::optional<GroupElement>(a));
    CHECK((r.verdict == Verdict::Symmetric) == expect);
    if (!expect) continue;
    ++symmetric;
    for (const auto& w : r.witnesses) CHECK(w.x2 == abgroup::g_sub(g, a, w.x1));
    auto c = find_center(s, gops);
    if (verify_sidon(s, gops).verdict == Verdict::Neither) {
      // the center is forced
      REQUIRE(c.has_value());
      CHECK(*c == a);
    }
    auto cls = classify(s, gops);
    CHECK(cls.verdict != Verdict::Neither);
  }
  CHECK(symmetric > 100);
}

TEST_CASE("classify is invariant under affine bijections") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 150; ++trial) {
    std::uint64_t n = 3 + rng() % 9;
    GroupSpec g({n, n});
    SpecOps ops{g};
    // random automorphism given by an invertible 2x2 matrix mod n
    std::uint64_t m[4];
    do {
      for (auto& v : m) v = rng() % n;
    } while (std::gcd((m[0] * m[3] + n * n - m[1] * m[2] % n) % n, n) != 1);
    auto phi = [&](const GroupElement& x) {
      return el({(m[0] * x.coords[0] + m[1] * x.coords[1]) % n, (m[2] * x.coords[0] + m[3] * x.coords[1]) % n});
    };
    GroupElement shift = random_element(g, rng);
    auto map = [&](const GroupElement& x) { return abgroup::g_add(g, phi(x), shift); };

    std::vector<GroupElement> s;
    if (trial % 2) {
      GroupElement a = random_element(g, rng);
      std::set<GroupElement> closed;
      for (const auto& t : random_set(g, 1 + rng() % 3, rng)) {
        closed.insert(t);
        closed.insert(abgroup::g_sub(g, a, t));
      }
      s.assign(closed.begin(), closed.end());
    } else {
      s = random_set(g, 2 + rng() % 5, rng);
    }
    std::vector<GroupElement> image;
    for (const auto& x : s) image.push_back(map(x));
    auto r1 = classify(s, ops);
    auto r2 = classify(image, ops);
    CHECK(r1.verdict == r2.verdict);
    if (r1.verdict == Verdict::Symmetric) {
      REQUIRE(r2.center.has_value());
      CHECK(*r2.center == abgroup::g_add(g, phi(*r1.center), abgroup::g_add(g, shift, shift)));
    }
  }
}

TEST_CASE("additive energy") {
  GroupSpec z7({7});
  SpecOps ops{z7};
  CHECK(additive_energy(cyc({3}), ops) == 1);
  CHECK(additive_energy(std::vector<GroupElement>{}, ops) == 0);
  CHECK(additive_energy(cyc({0, 1, 2}), ops) == oracle_energy(cyc({0, 1, 2}), z7));

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    GroupSpec g = random_group(rng);
    SpecOps gops{g};
    auto s = random_set(g, 1 + rng() % 12, rng);
    auto e = additive_energy(s, gops);
    CHECK(e == oracle_energy(s, g));
    if (oracle_sidon(s, g)) {
      std::uint64_t k = s.size();
      CHECK(e == 2 * k * k - k);
    }
    SidonOptions opt;
    opt.with_energy = true;
    CHECK(verify_sidon(s, gops, opt).energy == e);
  }
}

TEST_CASE("difference profiles") {
  GroupSpec z7({7});
  SpecOps ops{z7};
  CHECK(difference_profile(std::vector<GroupElement>{}, ops).empty());
  auto p = difference_profile(cyc({0, 1, 3}), ops);
  CHECK(p.size() == 6);
  for (const auto& [d, c] : p) CHECK(c == 1);

  auto s4 = genjac::genus0_family(4, ffield::make_spec(3, 1));
  REQUIRE(s4.spec.moduli == std::vector<std::uint64_t>{13});
  REQUIRE(s4.elements.size() == 4);
  auto prof = difference_profile(s4.elements, SpecOps{s4.spec});
  CHECK(prof.size() == 12);
  for (const auto& [d, c] : prof) {
    CHECK(d != el({0}));
    CHECK(c == 1);
  }
}

TEST_CASE("desymmetrize") {
  GroupSpec z7({7});
  SpecOps ops{z7};
  auto one = desymmetrize(cyc({2, 5}), el({0}), ops);
  CHECK(one.elements == cyc({2}));
  CHECK(one.dropped.empty());
  CHECK(desymmetrize(std::vector<GroupElement>{}, el({0}), ops).elements.empty());
  CHECK_THROWS_AS(desymmetrize(cyc({0, 1, 3}), el({0}), ops), std::invalid_argument);

  // {3} with center 6: 2*3 = 6, so it is dropped
  auto fixed = desymmetrize(cyc({3}), el({6}), ops);
  CHECK(fixed.elements.empty());
  CHECK(fixed.dropped.size() == 1);
}

TEST_CASE("elliptic symmetric sets desymmetrize to Sidon sets") {
  std::mt19937_64 rng(3);
  auto k = ffield::make_spec(11, 1);
  int done = 0;
  for (auto f : {genjac::Family::G1TwoP, genjac::Family::G1PQ, genjac::Family::G1Conj}) {
    for (int trial = 0; trial < 4; ++trial) {
      auto e = curve::random_curve(k, rng);
      genjac::GJGroup g = genjac::elliptic_config(e, f, 3, &rng);
      GJOps ops{g};
      std::vector<genjac::GJElement> s;
      for (const auto& x : g.embeddable_points()) s.push_back(g.embed(x));
      auto r = classify(s, ops);
      REQUIRE(r.verdict == Verdict::Symmetric);
      auto x = g.embeddable_points().front();
      auto partner = genjac::symmetric_partner(g, x);
      REQUIRE(partner.has_value());
      CHECK(*r.center == g.add(g.embed(x), g.embed(*partner)));

      auto d = desymmetrize(s, *r.center, ops);
      CHECK(verify_sidon(d.elements, ops).verdict == Verdict::Sidon);
      CHECK(2 * d.elements.size() + d.dropped.size() == s.size());
      CHECK(d.dropped.size() <= 4);
      ++done;
    }
  }
  CHECK(done == 12);
}

TEST_CASE("census on small groups") {
  CHECK(max_sidon_census(GroupSpec({7})).max_size == 3);
  CHECK(max_sidon_census(GroupSpec({2, 2})).max_size == 1);
  CHECK(max_sidon_census(GroupSpec({1})).max_size == 1);
  CHECK(max_sidon_census(GroupSpec({13})).max_size >= 4);
  CHECK(max_sidon_census(GroupSpec({2, 2}), true).max_size == oracle_max_sidon(GroupSpec({2, 2}), true));
  CHECK_THROWS_AS(max_sidon_census(abgroup::parse_group("Z/121x2")), CapExceeded);

  for (std::uint64_t n = 1; n <= 16; ++n) {
    GroupSpec g({n});
    auto r = max_sidon_census(g);
    CHECK(r.max_size == oracle_max_sidon(g));
    CHECK(r.witness.size() == r.max_size);
    CHECK(oracle_sidon(r.witness, g));
    CHECK(max_sidon_census(g, true).max_size == oracle_max_sidon(g, true));
  }
  for (auto moduli : std::vector<std::vector<std::uint64_t>>{{2, 4}, {3, 3}, {2, 2, 2}, {2, 6}, {4, 4}}) {
    GroupSpec g(moduli);
    CHECK(max_sidon_census(g).max_size == oracle_max_sidon(g));
  }
  for (std::uint64_t n = 17; n <= 30; ++n) CHECK(max_sidon_census(GroupSpec({n})).max_size == naive_max_sidon(GroupSpec({n})));
}

TEST_CASE("census on cyclic groups agrees with the coprime product form") {
  // Z/ab and Z/a x Z/b are isomorphic but take different search paths.
  for (auto [a, b] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{5, 7}, {4, 9}, {5, 9}, {7, 9}, {3, 22}}) {
    auto cyclic = max_sidon_census(GroupSpec({a * b}));
    auto product = max_sidon_census(GroupSpec({a, b}));
    CHECK(cyclic.max_size == product.max_size);
    CHECK(oracle_sidon(cyclic.witness, GroupSpec({a * b})));
    CHECK(oracle_sidon(product.witness, GroupSpec({a, b})));
  }
}
