#include "jacsidon/embed.hpp"

#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "jacsidon/ffield.hpp"

namespace jacsidon::embed {

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::uint64_t point_key(const curve::ECPoint& pt, std::uint64_t q) {
  return pt.inf ? q * q : pt.x.packed() * q + pt.y.packed();
}

}  // namespace

void validate(const EmbedParams& params) {
  const auto& [p, j, n, targets] = params;
  if (!ffield::is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
  if (p == 2) throw std::invalid_argument("p = 2 is not supported (elliptic curves need odd characteristic)");
  if (j < 1) throw std::invalid_argument("j must be at least 1");
  if (j > 14 || ipow(p, j) > kMaxFieldOrder)
    throw std::invalid_argument("p^j exceeds " + std::to_string(kMaxFieldOrder));
  std::uint64_t q = ipow(p, j);
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (std::gcd(n, p) != 1)
    throw std::invalid_argument("n = " + std::to_string(n) + " is not coprime to p = " + std::to_string(p));
  if (!curve::hasse_admissible(q, n))
    throw std::invalid_argument("|p^j + 1 - n| > 2 p^(j/2) for p^j = " + std::to_string(q) +
                                ", n = " + std::to_string(n));
  if (targets.size() != j + 1)
    throw std::invalid_argument("expected " + std::to_string(j + 1) + " target moduli, got " +
                                std::to_string(targets.size()));
  for (unsigned i = 0; i < j; ++i)
    if (targets[i] < p)
      throw std::invalid_argument("target n_" + std::to_string(i + 1) + " = " + std::to_string(targets[i]) +
                                  " is smaller than p = " + std::to_string(p));
  if (targets[j] < n)
    throw std::invalid_argument("target n_" + std::to_string(j + 1) + " = " + std::to_string(targets[j]) +
                                " is smaller than n = " + std::to_string(n));
}

std::vector<std::uint64_t> admissible_orders(std::uint64_t p, unsigned j) {
  std::uint64_t q = ipow(p, j);
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; n <= 2 * q + 2; ++n)
    if (std::gcd(n, p) == 1 && curve::hasse_admissible(q, n)) out.push_back(n);
  return out;
}

struct ESharp::Impl {
  genjac::GJGroup group;
  curve::EllipticCurve curve;
  curve::ECPoint generator;
  std::uint64_t p = 0, n = 0, q = 0;
  unsigned j = 0;
  std::uint64_t a = 0;
  GroupSpec coords;
  std::unordered_map<std::uint64_t, std::uint64_t> dlog;  // point key -> exponent
};

ESharp ESharp::build(std::uint64_t p, unsigned j, std::uint64_t n) {
  EmbedParams check{p, j, n, std::vector<std::uint64_t>(j, p)};
  check.targets.push_back(n);
  validate(check);
  auto k = ffield::make_spec(p, j);
  auto e = curve::find_cyclic_curve(k, n);
  genjac::Place origin{1, 2, genjac::Point::infinity()};
  auto impl = std::make_shared<Impl>(Impl{genjac::GJGroup::elliptic(e, {origin}), e,
                                          *curve::ec_cyclic_generator(e), p, n, k->order(), j, 0, {}, {}});
  // a = p (p^{-1} mod n)
  std::uint64_t inv = 0;
  for (std::uint64_t v = 1; v < n; ++v)
    if (p * v % n == 1) {
      inv = v;
      break;
    }
  impl->a = p * inv;
  std::vector<std::uint64_t> moduli(j, p);
  moduli.push_back(n);
  impl->coords = GroupSpec(moduli);
  curve::ECPoint cur = curve::ECPoint::infinity();
  for (std::uint64_t i = 0; i < n; ++i) {
    impl->dlog[point_key(cur, impl->q)] = i;
    cur = e.add(cur, impl->generator);
  }
  ESharp out;
  out.impl_ = std::move(impl);
  return out;
}

const genjac::GJGroup& ESharp::group() const { return impl_->group; }
const curve::EllipticCurve& ESharp::curve() const { return impl_->curve; }
const curve::ECPoint& ESharp::generator() const { return impl_->generator; }
std::uint64_t ESharp::splitting_integer() const { return impl_->a; }
const GroupSpec& ESharp::coordinates() const { return impl_->coords; }
std::string ESharp::basis() const { return impl_->curve.field()->to_string(); }

GroupElement ESharp::operator()(const genjac::GJElement& x) const {
  const auto& g = impl_->group;
  // x - a x lies in the kernel, a unipotent jet 1 + c t mod t^2 with c in k
  auto torsion = g.mul(x, static_cast<std::int64_t>(impl_->a));
  auto kernel = g.sub(x, torsion);
  if (!kernel.base.inf) throw std::logic_error("splitting integer does not kill the curve part");
  const auto& jet = kernel.jets.at(0);
  if (!jet.at(0).is_one())
    throw std::logic_error("kernel jet is not normalized");
  auto digits = g.field()->unpack(jet.at(1).packed());
  GroupElement out;
  for (unsigned i = 0; i < impl_->j; ++i) out.coords.push_back(i < digits.size() ? digits[i] : 0);
  auto it = impl_->dlog.find(point_key(x.base, impl_->q));
  if (it == impl_->dlog.end()) throw std::logic_error("point outside the cyclic group");
  out.coords.push_back(it->second);
  return out;
}

std::vector<GroupElement> ESharp::embedded_curve() const {
  std::vector<GroupElement> out;
  for (const auto& pt : curve::ec_points(impl_->curve))
    if (!pt.inf) out.push_back((*this)(impl_->group.embed(pt)));
  return out;
}

GroupElement ESharp::center() const {
  const auto& g = impl_->group;
  for (const auto& pt : curve::ec_points(impl_->curve))
    if (!pt.inf) return (*this)(g.add(g.embed(pt), g.embed(impl_->curve.neg(pt))));
  return abgroup::g_zero(impl_->coords);
}

bool IntervalBox::contains(const GroupElement& x) const {
  for (std::size_t i = 0; i < moduli.size(); ++i)
    if ((x.coords[i] + moduli[i] - origins[i]) % moduli[i] >= lengths[i]) return false;
  return true;
}

std::string IntervalBox::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    if (i) out += " x ";
    out += "[" + std::to_string(origins[i]) + "+" + std::to_string(lengths[i]) + " mod " +
           std::to_string(moduli[i]) + "]";
  }
  return out;
}

namespace {

std::uint64_t count_in(const std::vector<GroupElement>& points, const IntervalBox& box) {
  std::uint64_t c = 0;
  for (const auto& x : points) c += box.contains(x);
  return c;
}

}  // namespace

BoxChoice choose_intervals(const std::vector<GroupElement>& points, const GroupSpec& ambient, std::uint64_t seed) {
  if (points.empty()) throw std::invalid_argument("no points to cover");
  const auto& m = ambient.moduli;
  std::size_t r = m.size();
  BoxChoice out;
  out.box.moduli = m;
  for (auto mi : m) out.box.lengths.push_back((mi + 1) / 2);
  out.required = (points.size() + (1ULL << r) - 1) >> r;

  std::uint64_t cells = 1;
  bool small = true;
  for (auto mi : m) {
    cells *= mi;
    if (cells > kExhaustiveScanCells) small = false;
  }
  if (small) {
    // window[o] = number of points in the box with origin o, built one axis
    // at a time with cyclic sliding sums
    std::vector<std::uint64_t> grid(cells, 0);
    for (const auto& x : points) grid[abgroup::g_index(ambient, x)]++;
    std::uint64_t stride = cells;
    for (std::size_t d = 0; d < r; ++d) {
      stride /= m[d];
      std::uint64_t len = out.box.lengths[d];
      std::vector<std::uint64_t> next(cells, 0);
      for (std::uint64_t base = 0; base < cells; ++base) {
        if ((base / stride) % m[d] != 0) continue;
        std::uint64_t sum = 0;
        for (std::uint64_t i = 0; i < len; ++i) sum += grid[base + (i % m[d]) * stride];
        for (std::uint64_t o = 0; o < m[d]; ++o) {
          next[base + o * stride] = sum;
          sum -= grid[base + o * stride];
          sum += grid[base + ((o + len) % m[d]) * stride];
        }
      }
      grid.swap(next);
    }
    std::uint64_t best = 0;
    for (std::uint64_t i = 1; i < cells; ++i)
      if (grid[i] > grid[best]) best = i;
    out.box.origins = abgroup::g_from_index(ambient, best).coords;
    out.count = grid[best];
    out.method = "exhaustive";
  } else {
    std::mt19937_64 rng(seed);
    IntervalBox box = out.box;
    std::uint64_t best = 0;
    for (int restart = 0; restart < kGreedyRestarts && best < out.required; ++restart) {
      box.origins.clear();
      for (auto mi : m) box.origins.push_back(rng() % mi);
      std::uint64_t cur = count_in(points, box);
      for (bool improved = true; improved;) {
        improved = false;
        for (std::size_t d = 0; d < r; ++d) {
          std::uint64_t keep = box.origins[d];
          for (std::uint64_t o = 0; o < m[d]; ++o) {
            box.origins[d] = o;
            std::uint64_t c = count_in(points, box);
            if (c > cur) {
              cur = c;
              keep = o;
              improved = true;
            }
          }
          box.origins[d] = keep;
        }
      }
      if (cur > best) {
        best = cur;
        out.box.origins = box.origins;
      }
    }
    out.count = best;
    out.method = "greedy";
  }
  if (out.count != count_in(points, out.box)) throw std::logic_error("box count mismatch");
  if (out.count < out.required)
    throw std::runtime_error("no box with " + std::to_string(out.required) + " points found (best " +
                             std::to_string(out.count) + ")");
  return out;
}

std::vector<GroupElement> freiman_project(const std::vector<GroupElement>& points, const IntervalBox& box,
                                          const GroupSpec& target) {
  std::size_t r = box.moduli.size();
  if (target.rank() != r) throw std::invalid_argument("target rank does not match the box");
  for (std::size_t i = 0; i < r; ++i) {
    std::uint64_t top = 2 * (box.lengths[i] - 1);
    if (top >= box.moduli[i] || top >= target.moduli[i])
      throw std::invalid_argument("side " + std::to_string(i + 1) + ": sums of offsets up to " + std::to_string(top) +
                                  " do not fit below " + std::to_string(std::min(box.moduli[i], target.moduli[i])));
  }
  std::vector<GroupElement> out;
  for (const auto& x : points) {
    if (!box.contains(x)) throw std::invalid_argument("point outside the box");
    GroupElement y;
    for (std::size_t i = 0; i < r; ++i) {
      std::uint64_t lift = (x.coords[i] + box.moduli[i] - box.origins[i]) % box.moduli[i];
      y.coords.push_back(lift % target.moduli[i]);
    }
    out.push_back(y);
  }
  return out;
}

bool is_freiman_order2(const std::vector<GroupElement>& source, const GroupSpec& source_group,
                       const std::vector<GroupElement>& image, const GroupSpec& target_group) {
  if (source.size() != image.size()) return false;
  // pairs (i <= j) grouped by sum must induce the same partition on both sides
  std::unordered_map<std::uint64_t, std::uint64_t> first_src, first_img;
  std::uint64_t pair = 0;
  for (std::size_t i = 0; i < source.size(); ++i)
    for (std::size_t j = i; j < source.size(); ++j, ++pair) {
      auto ks = abgroup::g_index(source_group, abgroup::g_add(source_group, source[i], source[j]));
      auto ki = abgroup::g_index(target_group, abgroup::g_add(target_group, image[i], image[j]));
      auto a = first_src.emplace(ks, pair).first->second;
      auto b = first_img.emplace(ki, pair).first->second;
      if (a != b) return false;
    }
  return true;
}

EmbedResult construct(const EmbedParams& params, std::uint64_t seed) {
  validate(params);
  EmbedResult r;
  r.params = params;
  auto es = ESharp::build(params.p, params.j, params.n);
  r.curve = es.curve().to_string();
  r.generator = es.generator().to_string();
  r.basis = es.basis();
  r.splitting_integer = es.splitting_integer();
  r.source = es.coordinates();
  r.target = GroupSpec(params.targets);

  sidon::SpecOps src{r.source};
  r.symmetric_set = es.embedded_curve();
  r.center = es.center();
  r.symmetric_certified =
      sidon::verify_symmetric(r.symmetric_set, src, std::optional<GroupElement>(r.center)).verdict ==
      sidon::Verdict::Symmetric;
  if (!r.symmetric_certified) throw std::logic_error("embedded curve is not a symmetric Sidon set");

  r.box = choose_intervals(r.symmetric_set, r.source, seed);
  for (const auto& x : r.symmetric_set)
    if (r.box.box.contains(x)) r.box_points.push_back(x);

  // keep one point of each pair {x, center - x} inside the box, then project
  auto thin = sidon::desymmetrize_subset(r.box_points, r.center, src);
  r.dropped = thin.dropped.size();
  r.projected = freiman_project(r.box_points, r.box.box, r.target);
  r.freiman_certified = is_freiman_order2(r.box_points, r.source, r.projected, r.target);
  if (!r.freiman_certified) throw std::logic_error("projection is not a Freiman isomorphism of order 2");
  r.sidon_set = freiman_project(thin.elements, r.box.box, r.target);
  std::sort(r.sidon_set.begin(), r.sidon_set.end());

  r.report = sidon::verify_sidon(r.sidon_set, sidon::SpecOps{r.target});
  std::uint64_t shift = params.j + 1;
  std::uint64_t box_bound = (params.n - 1 + (1ULL << shift) - 1) >> shift;
  r.size_bound = box_bound >= 2 ? (box_bound - 2) / 2 : 0;
  return r;
}

}  // namespace jacsidon::embed
