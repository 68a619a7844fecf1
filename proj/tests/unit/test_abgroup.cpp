#include <map>
#include <random>

#include "doctest.h"
#include "jacsidon/abgroup.hpp"
#include "jacsidon/ffield.hpp"

using namespace jacsidon::abgroup;
namespace ff = jacsidon::ffield;

namespace {

GroupElement el(std::vector<std::uint64_t> c) { return {std::move(c)}; }

// Counts of elements killed by each divisor of the order; these determine a
// finite abelian group up to isomorphism.
std::map<std::uint64_t, std::uint64_t> torsion_profile(const GroupSpec& g) {
  std::map<std::uint64_t, std::uint64_t> out;
  std::uint64_t n = g.order();
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (n % d) continue;
    std::uint64_t count = 1;
    for (auto m : g.moduli) count *= std::gcd(d, m);
    out[d] = count;
  }
  return out;
}

std::uint64_t brute_two_torsion(const GroupSpec& g) {
  std::uint64_t count = 0;
  for (const auto& x : g_enumerate(g))
    if (g_add(g, x, x) == g_zero(g)) ++count;
  return count;
}

bool divides_chain(const GroupSpec& g) {
  for (std::size_t i = 1; i < g.rank(); ++i)
    if (g.moduli[i] % g.moduli[i - 1]) return false;
  return true;
}

}  // namespace

TEST_CASE("group arithmetic examples") {
  GroupSpec z7({7});
  CHECK(g_add(z7, el({3}), el({5})) == el({1}));
  GroupSpec z56({5, 6});
  CHECK(g_add(z56, el({4, 5}), el({3, 2})) == el({2, 1}));
  for (const auto& x : g_enumerate(z56)) CHECK(g_add(z56, x, g_neg(z56, x)) == g_zero(z56));
  CHECK_THROWS(g_add(z7, el({3}), el({3, 1})));
  CHECK_THROWS(g_add(z7, el({9}), el({1})));

  CHECK(two_torsion_count(z7) == 1);
  CHECK(two_torsion_count(GroupSpec({2, 4})) == 4);
  CHECK(two_torsion_count(z56) == 2);
  CHECK(g_scale(z56, el({1, 1}), -1) == el({4, 5}));
  CHECK(g_element_order(z56, el({1, 2})) == 15);
}

TEST_CASE("text forms") {
  CHECK(GroupSpec({7, 11}).to_string() == "Z/7 x Z/11");
  CHECK(parse_group("Z/7 x Z/11").moduli == std::vector<std::uint64_t>{7, 11});
  CHECK(parse_group("Z/7xZ/11").moduli == std::vector<std::uint64_t>{7, 11});
  CHECK(parse_group("Z/121x2").moduli == std::vector<std::uint64_t>{121, 121});
  CHECK(parse_group("5,6").moduli == std::vector<std::uint64_t>{5, 6});
  CHECK_THROWS(parse_group("Z/0"));
  CHECK(parse_element(GroupSpec({5, 6}), "(4,5)") == el({4, 5}));
  CHECK(element_to_string(el({4, 5})) == "(4,5)");
  CHECK_THROWS(parse_element(GroupSpec({5, 6}), "(5,5)"));
  GroupSpec trivial;
  CHECK(trivial.order() == 1);
  CHECK(g_enumerate(trivial).size() == 1);
}

TEST_CASE("two-torsion count matches brute force") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint64_t> pick(1, 12);
  for (int t = 0; t < 50; ++t) {
    std::vector<std::uint64_t> m;
    std::uint64_t n = 1;
    for (int k = 0; k < 3; ++k) {
      auto v = pick(rng);
      if (n * v > 10000) break;
      n *= v;
      m.push_back(v);
    }
    GroupSpec g(m);
    CHECK(two_torsion_count(g) == brute_two_torsion(g));
  }
}

TEST_CASE("invariant form isomorphism round trips") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::uint64_t> pick(1, 24);
  for (int t = 0; t < 40; ++t) {
    std::vector<std::uint64_t> m{pick(rng), pick(rng), pick(rng)};
    GroupSpec g(m);
    if (g.order() > 4000) continue;
    InvariantIso iso(g);
    CHECK(divides_chain(iso.target()));
    CHECK(torsion_profile(iso.target()) == torsion_profile(g));
    auto elems = g_enumerate(g);
    for (const auto& x : elems) CHECK(iso.backward(iso.forward(x)) == x);
    std::uniform_int_distribution<std::size_t> idx(0, elems.size() - 1);
    for (int k = 0; k < 50; ++k) {
      auto& a = elems[idx(rng)];
      auto& b = elems[idx(rng)];
      CHECK(iso.forward(g_add(g, a, b)) == g_add(iso.target(), iso.forward(a), iso.forward(b)));
    }
  }
  CHECK(invariant_form(GroupSpec({4, 6})).moduli == std::vector<std::uint64_t>{2, 12});
  CHECK(invariant_form(GroupSpec({1})).moduli == std::vector<std::uint64_t>{1});
}

TEST_CASE("standardize black-box groups") {
  SUBCASE("multiplicative group of F_7 is cyclic of order 6") {
    auto f = ff::make_spec(7, 1);
    std::vector<ff::FieldElement> units;
    for (std::uint64_t v = 1; v < 7; ++v) units.emplace_back(f, v);
    auto key = [](const ff::FieldElement& x) { return x.packed(); };
    auto s = standardize(units, ff::FieldElement::one(f), std::multiplies<>(), key);
    CHECK(s.spec.moduli == std::vector<std::uint64_t>{6});
    // forward is a discrete log to the chosen generator
    ff::DiscreteLog log(s.generators[0]);
    for (const auto& x : units) CHECK(s.forward(x, key).coords[0] == log(x));
  }
  SUBCASE("additive group of F_4 is elementary abelian") {
    auto f = ff::make_spec(2, 2);
    std::vector<ff::FieldElement> elems;
    for (std::uint64_t v = 0; v < 4; ++v) elems.emplace_back(f, v);
    auto key = [](const ff::FieldElement& x) { return x.packed(); };
    auto s = standardize(elems, ff::FieldElement::zero(f), std::plus<>(), key);
    CHECK(s.spec.moduli == std::vector<std::uint64_t>{2, 2});
  }
  SUBCASE("random products of cyclic groups") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<std::uint64_t> pick(1, 18);
    for (int t = 0; t < 30; ++t) {
      GroupSpec g({pick(rng), pick(rng), pick(rng)});
      if (g.order() > 3000) continue;
      auto elems = g_enumerate(g);
      auto op = [&](const GroupElement& a, const GroupElement& b) { return g_add(g, a, b); };
      auto key = [&](const GroupElement& a) { return g_index(g, a); };
      auto s = standardize(elems, g_zero(g), op, key);
      CHECK(divides_chain(s.spec));
      CHECK(s.spec.order() == g.order());
      CHECK(torsion_profile(s.spec) == torsion_profile(g));
      for (const auto& x : elems) CHECK(s.backward(s.forward(x, key)) == x);
      std::uniform_int_distribution<std::size_t> idx(0, elems.size() - 1);
      for (int k = 0; k < 100; ++k) {
        auto& a = elems[idx(rng)];
        auto& b = elems[idx(rng)];
        CHECK(s.forward(op(a, b), key) == g_add(s.spec, s.forward(a, key), s.forward(b, key)));
      }
    }
  }
  SUBCASE("trivial group") {
    GroupSpec g;
    auto elems = g_enumerate(g);
    auto s = standardize(
        elems, g_zero(g), [&](const GroupElement& a, const GroupElement& b) { return g_add(g, a, b); },
        [&](const GroupElement& a) { return g_index(g, a); });
    CHECK(s.spec.order() == 1);
  }
}
