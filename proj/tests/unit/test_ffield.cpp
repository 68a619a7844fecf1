#include <random>
#include <set>

#include "doctest.h"
#include "jacsidon/error.hpp"
#include "jacsidon/ffield.hpp"
#include "jacsidon/poly.hpp"

using namespace jacsidon::ffield;

namespace {

// Reference polynomial arithmetic over F_p on plain integer vectors.
using IntPoly = std::vector<long>;

IntPoly int_mod(IntPoly a, const IntPoly& m, long p) {
  while (a.size() >= m.size()) {
    long c = a.back() % p;
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = ((a[shift + i] - c * m[i]) % p + p) % p;
    a.pop_back();
  }
  return a;
}

// Irreducible iff no monic factor of degree 1..deg/2 divides it.
bool brute_irreducible(const IntPoly& f, long p) {
  int n = static_cast<int>(f.size()) - 1;
  for (int d = 1; d <= n / 2; ++d) {
    long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long code = 0; code < count; ++code) {
      IntPoly g(d + 1, 0);
      long c = code;
      for (int i = 0; i < d; ++i) {
        g[i] = c % p;
        c /= p;
      }
      g[d] = 1;
      auto r = int_mod(f, g, p);
      bool zero = true;
      for (auto v : r) zero = zero && v % p == 0;
      if (zero) return false;
    }
  }
  return true;
}

// First irreducible in the scan order where c0 is the most significant digit.
IntPoly brute_first_irreducible(long p, int e) {
  long count = 1;
  for (int i = 0; i < e; ++i) count *= p;
  for (long code = 0; code < count; ++code) {
    IntPoly f(e + 1, 0);
    long c = code;
    for (int i = e - 1; i >= 0; --i) {
      f[i] = c % p;
      c /= p;
    }
    f[e] = 1;
    if (brute_irreducible(f, p)) return f;
  }
  return {};
}

std::vector<FieldPtr> test_fields() {
  return {make_spec(2, 1), make_spec(7, 1), make_spec(2, 2), make_spec(3, 2), make_spec(2, 4),
          make_spec(5, 3), make_spec(3, 4), make_spec(13, 2)};
}

}  // namespace

TEST_CASE("make_spec picks the smallest irreducible modulus") {
  CHECK(make_spec(7, 1)->modpoly() == std::vector<std::uint64_t>{0, 1});
  CHECK(make_spec(2, 2)->modpoly() == std::vector<std::uint64_t>{1, 1, 1});
  CHECK(make_spec(3, 2)->modpoly() == std::vector<std::uint64_t>{1, 0, 1});
  CHECK(make_spec(3, 2)->to_string() == "3^2:1,0,1");

  for (auto [p, e] : std::vector<std::pair<long, int>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {5, 2}, {5, 3}, {7, 2}}) {
    auto expected = brute_first_irreducible(p, e);
    auto got = make_spec(p, e)->modpoly();
    CHECK(std::vector<long>(got.begin(), got.end()) == expected);
  }
  CHECK(make_spec(5, 3)->modpoly() == make_spec(5, 3)->modpoly());

  CHECK_THROWS(make_spec(6, 1));
  CHECK_THROWS(make_spec(5, 0));
  CHECK_THROWS_AS(make_spec(2, 41), jacsidon::CapExceeded);
  CHECK(parse_spec("3^2:1,0,1")->same_as(*make_spec(3, 2)));
  CHECK_THROWS(parse_spec("3^2:0,0,1"));
}

TEST_CASE("basic arithmetic examples") {
  auto f7 = make_spec(7, 1);
  CHECK(FieldElement(f7, 3).inv() == FieldElement(f7, 5));
  CHECK_THROWS(FieldElement::zero(f7).inv());

  auto f4 = make_spec(2, 2);
  auto x = FieldElement::generator_x(f4);
  CHECK((x * x).coeffs() == std::vector<std::uint64_t>{1, 1});
  CHECK(trace_to_base(x) == FieldElement::one(f4));

  CHECK_THROWS(FieldElement::one(f4) + FieldElement::one(f7));
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(7);
  for (const auto& f : test_fields()) {
    std::uniform_int_distribution<std::uint64_t> pick(0, f->order() - 1);
    for (int i = 0; i < 300; ++i) {
      FieldElement a(f, pick(rng)), b(f, pick(rng)), c(f, pick(rng));
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK(a - a == FieldElement::zero(f));
      if (!a.is_zero()) {
        CHECK(a * a.inv() == FieldElement::one(f));
        CHECK(a.pow(f->order() - 1).is_one());
      }
    }
  }
}

TEST_CASE("frobenius, norm and trace") {
  std::mt19937_64 rng(11);
  for (const auto& f : test_fields()) {
    std::uniform_int_distribution<std::uint64_t> pick(0, f->order() - 1);
    for (int i = 0; i < 100; ++i) {
      FieldElement a(f, pick(rng)), b(f, pick(rng));
      CHECK(frobenius(a + b) == frobenius(a) + frobenius(b));
      CHECK(frobenius(a * b) == frobenius(a) * frobenius(b));
      CHECK(frobenius_power(a, f->degree()) == a);
      auto n = norm_to_base(a);
      auto t = trace_to_base(a);
      CHECK(frobenius(n) == n);
      CHECK(frobenius(t) == t);
    }
  }
  auto f9 = make_spec(3, 2);
  for (std::uint64_t v = 0; v < 9; ++v) {
    FieldElement a(f9, v);
    CHECK(norm_to_base(a) == a.pow(4));
    CHECK(norm_to_base(a).packed() < 3);
  }
  auto f7 = make_spec(7, 1);
  for (std::uint64_t v = 0; v < 7; ++v) CHECK(frobenius(FieldElement(f7, v)) == FieldElement(f7, v));
  auto f16 = make_spec(2, 4);
  FieldElement z(f16, 11);
  CHECK(norm_to_base(z, 2) == z.pow(5));
}

TEST_CASE("generators and discrete logarithms") {
  auto f7 = make_spec(7, 1);
  CHECK(multiplicative_generator(f7) == FieldElement(f7, 3));
  CHECK(discrete_log(FieldElement(f7, 3), FieldElement(f7, 5)) == 5);
  CHECK(discrete_log(FieldElement(f7, 3), FieldElement::one(f7)) == 0);
  CHECK_THROWS(discrete_log(FieldElement(f7, 2), FieldElement(f7, 4)));
  CHECK_THROWS(discrete_log(FieldElement(f7, 3), FieldElement::zero(f7)));

  std::mt19937_64 rng(3);
  for (const auto& f : {make_spec(3, 4), make_spec(2, 10), make_spec(1009, 1), make_spec(5, 6)}) {
    auto g = multiplicative_generator(f);
    // smallest packed value of full order, checked by scanning orders
    for (std::uint64_t v = 1; v < g.packed(); ++v) CHECK(multiplicative_order(FieldElement(f, v)) < f->order() - 1);
    DiscreteLog log(g);
    std::uniform_int_distribution<std::uint64_t> pick(0, f->order() - 2);
    for (int i = 0; i < 1000; ++i) {
      auto d = pick(rng);
      CHECK(log(g.pow(d)) == d);
    }
  }
}

TEST_CASE("square roots") {
  for (const auto& f : test_fields()) {
    std::set<std::uint64_t> squares;
    for (std::uint64_t v = 0; v < f->order() && v < 4096; ++v) {
      FieldElement a(f, v);
      squares.insert((a * a).packed());
    }
    if (f->order() > 4096) continue;
    for (std::uint64_t v = 0; v < f->order(); ++v) {
      FieldElement a(f, v);
      CHECK(is_square(a) == (squares.count(v) == 1));
      if (is_square(a)) CHECK(sqrt(a) * sqrt(a) == a);
    }
  }
}

TEST_CASE("polynomial roots and irreducibility") {
  auto f = make_spec(5, 2);
  // (X - a)(X - b)(X^2 + X + ... ) with known roots
  FieldElement a(f, 7), b(f, 19);
  auto quad = Polynomial::from_ints(f, {2, 0, 1});  // X^2 + 2 irreducible over F_5, splits in F_25
  auto poly = Polynomial::linear_root(a) * Polynomial::linear_root(b);
  auto rts = roots(poly);
  REQUIRE(rts.size() == 2);
  CHECK(rts[0] == std::min(a, b));
  CHECK(rts[1] == std::max(a, b));
  CHECK(roots(quad).size() == 2);
  for (auto r : roots(quad)) CHECK(quad.evaluate(r).is_zero());

  auto f2 = make_spec(2, 3);
  auto cube = Polynomial::from_ints(f2, {1, 1, 0, 1});
  auto r2 = roots(cube);
  CHECK(r2.size() == 3);
  for (auto r : r2) CHECK(cube.evaluate(r).is_zero());

  auto x = xgcd(poly, quad);
  CHECK(x.g.degree() == 0);
  CHECK(x.s * poly + x.t * quad == x.g);
}

TEST_CASE("subfield embeddings") {
  auto f4 = make_spec(2, 2);
  auto f16 = make_spec(2, 4);
  auto x = FieldElement::generator_x(f4);
  auto img = embed_subfield(x, f16);
  CHECK(multiplicative_order(img) == 3);
  CHECK(embed_subfield(x, f4) == x);

  auto f3 = make_spec(3, 1);
  auto f27 = make_spec(3, 3);
  auto c = embed_subfield(FieldElement(f3, 2), f27);
  CHECK(c.coeffs() == std::vector<std::uint64_t>{2, 0, 0});
  CHECK_THROWS(SubfieldEmbedding(f4, make_spec(2, 3)));

  for (auto [d, e] : std::vector<std::pair<unsigned, unsigned>>{{1, 2}, {2, 4}, {2, 6}, {3, 6}}) {
    auto sub = make_spec(3, d);
    auto ext = make_spec(3, e);
    SubfieldEmbedding emb(sub, ext);
    std::set<std::uint64_t> image;
    for (std::uint64_t u = 0; u < sub->order(); ++u) {
      for (std::uint64_t v = 0; v < sub->order(); v += 3) {
        FieldElement s(sub, u), t(sub, v);
        CHECK(emb.embed(s * t) == emb.embed(s) * emb.embed(t));
        CHECK(emb.embed(s + t) == emb.embed(s) + emb.embed(t));
      }
      auto z = emb.embed(FieldElement(sub, u));
      CHECK(frobenius_power(z, d) == z);
      CHECK(emb.contains(z));
      CHECK(emb.descend(z) == FieldElement(sub, u));
      image.insert(z.packed());
    }
    CHECK(image.size() == sub->order());
    // coordinates reconstruct every element of the extension
    auto t = FieldElement::generator_x(ext);
    std::size_t outside = 0;
    for (std::uint64_t v = 0; v < ext->order(); v += 7) {
      FieldElement z(ext, v);
      auto co = emb.coordinates(z);
      FieldElement acc = FieldElement::zero(ext), pw = FieldElement::one(ext);
      for (auto& ci : co) {
        acc += emb.embed(ci) * pw;
        pw *= t;
      }
      CHECK(acc == z);
      if (!emb.contains(z)) ++outside;
    }
    CHECK(outside > 0);
  }
}
