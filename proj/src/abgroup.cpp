#include "jacsidon/abgroup.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <numeric>

namespace jacsidon::abgroup {

namespace {

std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument("not an unsigned integer: '" + std::string(s) + "'");
  return v;
}

void check_member(const GroupSpec& g, const GroupElement& a) {
  if (!g.contains(a))
    throw std::invalid_argument("element " + element_to_string(a) + " is not in " + g.to_string());
}

}  // namespace

GroupSpec::GroupSpec(std::vector<std::uint64_t> m, std::string lbl) : moduli(std::move(m)), label(std::move(lbl)) {
  if (moduli.empty()) moduli.push_back(1);
  for (auto n : moduli)
    if (n == 0) throw std::invalid_argument("cyclic factor of order 0");
}

std::uint64_t GroupSpec::order() const {
  std::uint64_t n = 1;
  for (auto m : moduli) {
    if (n > kMaxGroupOrder / m) throw CapExceeded("group order exceeds 2^30");
    n *= m;
  }
  return n;
}

bool GroupSpec::contains(const GroupElement& x) const {
  if (x.coords.size() != moduli.size()) return false;
  for (std::size_t i = 0; i < moduli.size(); ++i)
    if (x.coords[i] >= moduli[i]) return false;
  return true;
}

std::string GroupSpec::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    if (i) out += " x ";
    out += "Z/" + std::to_string(moduli[i]);
  }
  return out;
}

GroupSpec parse_group(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty group description");
  std::vector<std::uint64_t> moduli;
  if (s.find('Z') == std::string::npos) {
    std::size_t start = 0;
    while (start <= s.size()) {
      auto pos = s.find(',', start);
      moduli.push_back(parse_u64(std::string_view(s).substr(start, pos - start)));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
    return GroupSpec(moduli);
  }
  std::size_t start = 0;
  while (start <= s.size()) {
    auto pos = s.find('x', start);
    std::string_view tok = std::string_view(s).substr(start, pos == std::string::npos ? std::string::npos : pos - start);
    if (tok.rfind("Z/", 0) == 0) {
      moduli.push_back(parse_u64(tok.substr(2)));
    } else {
      auto count = parse_u64(tok);
      if (moduli.empty() || count == 0) throw std::invalid_argument("bad repeat count in group '" + s + "'");
      for (std::uint64_t i = 1; i < count; ++i) moduli.push_back(moduli.back());
    }
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return GroupSpec(moduli);
}

GroupElement g_zero(const GroupSpec& g) { return {std::vector<std::uint64_t>(g.rank(), 0)}; }

GroupElement g_add(const GroupSpec& g, const GroupElement& a, const GroupElement& b) {
  check_member(g, a);
  check_member(g, b);
  GroupElement r = a;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    r.coords[i] += b.coords[i];
    if (r.coords[i] >= g.moduli[i]) r.coords[i] -= g.moduli[i];
  }
  return r;
}

GroupElement g_neg(const GroupSpec& g, const GroupElement& a) {
  check_member(g, a);
  GroupElement r = a;
  for (std::size_t i = 0; i < g.rank(); ++i) r.coords[i] = r.coords[i] == 0 ? 0 : g.moduli[i] - r.coords[i];
  return r;
}

GroupElement g_sub(const GroupSpec& g, const GroupElement& a, const GroupElement& b) {
  return g_add(g, a, g_neg(g, b));
}

GroupElement g_reduce(const GroupSpec& g, const std::vector<std::int64_t>& coords) {
  if (coords.size() != g.rank()) throw std::invalid_argument("coordinate count does not match the group rank");
  GroupElement r;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    auto m = static_cast<std::int64_t>(g.moduli[i]);
    std::int64_t c = coords[i] % m;
    r.coords.push_back(static_cast<std::uint64_t>(c < 0 ? c + m : c));
  }
  return r;
}

GroupElement g_scale(const GroupSpec& g, const GroupElement& a, std::int64_t k) {
  check_member(g, a);
  GroupElement r = a;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    auto m = static_cast<__int128>(g.moduli[i]);
    __int128 c = (static_cast<__int128>(a.coords[i]) * k) % m;
    if (c < 0) c += m;
    r.coords[i] = static_cast<std::uint64_t>(c);
  }
  return r;
}

std::uint64_t g_element_order(const GroupSpec& g, const GroupElement& a) {
  check_member(g, a);
  std::uint64_t ord = 1;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    std::uint64_t oi = g.moduli[i] / std::gcd(g.moduli[i], a.coords[i]);
    ord = std::lcm(ord, oi);
  }
  return ord;
}

std::uint64_t two_torsion_count(const GroupSpec& g) {
  std::uint64_t n = 1;
  for (auto m : g.moduli) n *= std::gcd<std::uint64_t>(2, m);
  return n;
}

std::uint64_t g_index(const GroupSpec& g, const GroupElement& a) {
  check_member(g, a);
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < g.rank(); ++i) idx = idx * g.moduli[i] + a.coords[i];
  return idx;
}

GroupElement g_from_index(const GroupSpec& g, std::uint64_t index) {
  GroupElement r{std::vector<std::uint64_t>(g.rank(), 0)};
  for (std::size_t i = g.rank(); i-- > 0;) {
    r.coords[i] = index % g.moduli[i];
    index /= g.moduli[i];
  }
  if (index != 0) throw std::out_of_range("group index out of range");
  return r;
}

std::vector<GroupElement> g_enumerate(const GroupSpec& g) {
  std::uint64_t n = g.order();
  if (n > kMaxStandardizeOrder) throw CapExceeded("enumeration of " + g.to_string() + " exceeds 2^20 elements");
  std::vector<GroupElement> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(g_from_index(g, i));
  return out;
}

std::string element_to_string(const GroupElement& a) {
  std::string out = "(";
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(a.coords[i]);
  }
  return out + ")";
}

GroupElement parse_element(const GroupSpec& g, std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')') s += c;
  GroupElement r;
  std::size_t start = 0;
  while (!s.empty() && start <= s.size()) {
    auto pos = s.find(',', start);
    r.coords.push_back(parse_u64(std::string_view(s).substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  check_member(g, r);
  return r;
}

// ------------------------------------------------------------ invariant form

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::uint64_t crt_pair(std::uint64_t a, std::uint64_t m, std::uint64_t b, std::uint64_t n) {
  // x = a mod m, x = b mod n, gcd(m, n) = 1
  if (m == 1) return b % n;
  if (n == 1) return a % m;
  __int128 mm = m, nn = n;
  // inverse of m mod n by extended Euclid
  __int128 t = 0, new_t = 1, r = nn, new_r = mm % nn;
  while (new_r != 0) {
    __int128 q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) throw std::invalid_argument("CRT moduli are not coprime");
  if (t < 0) t += nn;
  __int128 diff = (static_cast<__int128>(b) - a) % nn;
  if (diff < 0) diff += nn;
  __int128 k = diff * t % nn;
  return static_cast<std::uint64_t>(a + k * mm);
}

InvariantIso::InvariantIso(GroupSpec source) : source_(std::move(source)) {
  // per prime: (exponent, prime power, source factor) sorted by exponent
  std::map<std::uint64_t, std::vector<std::tuple<unsigned, std::uint64_t, std::size_t>>> by_prime;
  for (std::size_t i = 0; i < source_.rank(); ++i) {
    for (auto [ell, e] : factorize(source_.moduli[i])) {
      std::uint64_t pp = 1;
      for (unsigned k = 0; k < e; ++k) pp *= ell;
      by_prime[ell].emplace_back(e, pp, i);
    }
  }
  std::size_t rank = 0;
  for (auto& [ell, list] : by_prime) {
    std::stable_sort(list.begin(), list.end(),
                     [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });
    rank = std::max(rank, list.size());
  }
  std::vector<std::uint64_t> moduli(std::max<std::size_t>(rank, 1), 1);
  for (const auto& [ell, list] : by_prime) {
    for (std::size_t k = 0; k < list.size(); ++k) {
      std::size_t target = rank - 1 - k;
      auto [e, pp, src] = list[k];
      moduli[target] *= pp;
      slots_.push_back({pp, src, target});
    }
  }
  target_ = GroupSpec(moduli, source_.label);
}

GroupElement InvariantIso::forward(const GroupElement& x) const {
  check_member(source_, x);
  GroupElement y = g_zero(target_);
  std::vector<std::uint64_t> acc_mod(target_.rank(), 1);
  for (const auto& s : slots_) {
    std::uint64_t comp = x.coords[s.source_factor] % s.prime_power;
    y.coords[s.target_factor] = crt_pair(y.coords[s.target_factor], acc_mod[s.target_factor], comp, s.prime_power);
    acc_mod[s.target_factor] *= s.prime_power;
  }
  return y;
}

GroupElement InvariantIso::backward(const GroupElement& y) const {
  check_member(target_, y);
  GroupElement x = g_zero(source_);
  std::vector<std::uint64_t> acc_mod(source_.rank(), 1);
  for (const auto& s : slots_) {
    std::uint64_t comp = y.coords[s.target_factor] % s.prime_power;
    x.coords[s.source_factor] = crt_pair(x.coords[s.source_factor], acc_mod[s.source_factor], comp, s.prime_power);
    acc_mod[s.source_factor] *= s.prime_power;
  }
  return x;
}

GroupSpec invariant_form(const GroupSpec& g) { return InvariantIso(g).target(); }

}  // namespace jacsidon::abgroup
