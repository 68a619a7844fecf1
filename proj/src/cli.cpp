#include "jacsidon/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "jacsidon/elliptic.hpp"
#include "jacsidon/embed.hpp"
#include "jacsidon/error.hpp"
#include "jacsidon/genjac.hpp"
#include "jacsidon/hyperelliptic.hpp"

namespace jacsidon::cli {

namespace {

using genjac::Family;
using genjac::GJElement;
using genjac::GJGroup;
using sidon::SidonOptions;
using sidon::SidonReport;
using sidon::SpecOps;
using sidon::Verdict;

ffield::FieldPtr field_of_order(std::uint64_t q) {
  auto f = abgroup::factorize(q);
  if (q < 2 || f.size() != 1) throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");
  return ffield::make_spec(f[0].first, f[0].second);
}

Json element_json(const GroupElement& x) { return Json(x.coords); }

GroupElement element_from_json(const GroupSpec& g, const Json& j) {
  if (!j.is_array() || j.size() != g.rank())
    throw std::invalid_argument("element " + j.dump() + " does not match " + g.to_string());
  std::vector<std::int64_t> c;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw std::invalid_argument("element " + j.dump() + " has a non-integer coordinate");
    c.push_back(v.get<std::int64_t>());
  }
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] < 0 || static_cast<std::uint64_t>(c[i]) >= g.moduli[i])
      throw std::invalid_argument("element " + j.dump() + " is not reduced in " + g.to_string());
  return g_reduce(g, c);
}

/// Identifies the enumerated group with its invariant-factor form and
/// records the generators as provenance.
template <class E, class Op, class Key, class Name>
void standardize_into(ConstructedSet& out, const std::vector<E>& all, const E& zero, Op op, Key key, Name name,
                      const std::vector<E>& embedded, std::optional<E> center) {
  auto st = abgroup::standardize(all, zero, op, key);
  out.group = st.spec;
  for (const auto& x : embedded) out.elements.push_back(st.forward(x, key));
  std::sort(out.elements.begin(), out.elements.end());
  if (center) out.recipe_center = st.forward(*center, key);
  Json gens = Json::array();
  for (const auto& g : st.generators) gens.push_back(name(g));
  out.provenance["coordinates"] = {{"method", "invariant factors of the enumerated group"}, {"generators", gens}};
}

std::pair<std::string, std::optional<unsigned>> split_family(const std::string& id) {
  auto colon = id.find(':');
  if (colon == std::string::npos) return {id, std::nullopt};
  std::string rest = id.substr(colon + 1);
  if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("bad multiplicity in family id '" + id + "'");
  return {id.substr(0, colon), static_cast<unsigned>(std::stoul(rest))};
}

void construct_elliptic(ConstructedSet& out, const ffield::FieldPtr& k, Family fam, unsigned d,
                        const FamilyRequest& req) {
  if (k->characteristic() == 2) throw std::invalid_argument("genus-1 families need odd characteristic");
  std::mt19937_64 rng(req.seed.value_or(0));
  std::mt19937_64* place_rng = req.seed ? &rng : nullptr;
  std::optional<GJGroup> g;
  if (!req.curve.empty()) {
    auto e = curve::parse_curve(req.curve);
    if (!e.field()->same_as(*k)) throw std::invalid_argument("curve is not defined over " + k->to_string());
    g = genjac::elliptic_config(e, fam, d, place_rng);
  } else {
    // random curves until one carries the required places
    for (int attempt = 0; attempt < 64 && !g; ++attempt) {
      try {
        g = genjac::elliptic_config(curve::random_curve(k, rng), fam, d, place_rng);
      } catch (const std::invalid_argument&) {
      }
    }
    if (!g) throw std::invalid_argument("no curve over " + k->to_string() + " carries this modulus");
  }
  if (g->order() > abgroup::kMaxStandardizeOrder)
    throw CapExceeded("group order " + std::to_string(g->order()) + " exceeds 2^20");
  out.modulus_degree = g->modulus_degree();
  std::vector<GJElement> embedded;
  auto pts = g->embeddable_points();
  for (const auto& x : pts) embedded.push_back(g->embed(x));
  std::optional<GJElement> center;
  if (!pts.empty())
    if (auto partner = genjac::symmetric_partner(*g, pts.front()))
      center = g->add(g->embed(pts.front()), g->embed(*partner));
  out.provenance["curve"] = g->curve().to_string();
  out.provenance["modulus"] = g->modulus_string();
  out.provenance["base_point"] = g->base_point().to_string();
  out.provenance["kernel"] = g->kernel_name();
  out.provenance["kernel_order"] = g->kernel_order();
  out.provenance["curve_order"] = g->jacobian_order();
  standardize_into(
      out, g->enumerate(), g->zero(), [&](const GJElement& a, const GJElement& b) { return g->add(a, b); },
      [&](const GJElement& a) { return g->key(a); }, [](const GJElement& a) { return a.to_string(); }, embedded,
      center);
}

void construct_genus2(ConstructedSet& out, const ffield::FieldPtr& k, const FamilyRequest& req) {
  if (req.f.size() != 6) throw std::invalid_argument("g2 needs --f with six coefficients f0,...,f5");
  if (k->characteristic() == 2) throw std::invalid_argument("g2 needs odd characteristic");
  double rq = std::sqrt(static_cast<double>(k->order()));
  if (std::pow(rq + 1, 4) > static_cast<double>(abgroup::kMaxStandardizeOrder))
    throw CapExceeded("jacobian over " + k->to_string() + " may exceed 2^20 classes");
  auto c = curve::HypCurve::from_ints(k, req.f);
  std::vector<curve::MumfordDivisor> embedded;
  auto pts = curve::hyp_points(c);
  for (const auto& x : pts) embedded.push_back(c.point_class(x));
  std::optional<curve::MumfordDivisor> center;
  if (!pts.empty()) center = c.add(c.point_class(pts.front()), c.point_class(c.involution(pts.front())));
  out.modulus_degree = 0;
  out.provenance["curve"] = c.to_string();
  out.provenance["modulus"] = "0";
  out.provenance["base_point"] = "inf";
  using D = curve::MumfordDivisor;
  standardize_into(
      out, curve::jac_enumerate(c), c.zero(), [&](const D& a, const D& b) { return c.add(a, b); },
      [&](const D& a) { return c.key(a); }, [](const D& a) { return a.to_string(); }, embedded, center);
}

// Exact comparisons in Z[sqrt q].
struct Surd {
  __int128 a = 0, b = 0;  // a + b sqrt(q)
};

Surd mul(const Surd& x, const Surd& y, __int128 q) { return {x.a * y.a + x.b * y.b * q, x.a * y.b + x.b * y.a}; }

Surd power(Surd x, unsigned k, __int128 q) {
  Surd r{1, 0};
  while (k--) r = mul(r, x, q);
  return r;
}

/// Sign of n - (a + b sqrt q).
int compare(__int128 n, const Surd& s, __int128 q) {
  __int128 c = n - s.a;
  auto sgn = [](__int128 v) { return (v > 0) - (v < 0); };
  if (s.b == 0) return sgn(c);
  if (s.b > 0) {
    if (c <= 0) return -1;
    return sgn(c * c - s.b * s.b * q);
  }
  if (c >= 0) return 1;
  return sgn(s.b * s.b * q - c * c);
}

std::string format_surd(const Surd& s, std::uint64_t q) {
  double v = static_cast<double>(s.a) + static_cast<double>(s.b) * std::sqrt(static_cast<double>(q));
  std::ostringstream o;
  o << static_cast<long long>(s.a);
  if (s.b != 0) o << (s.b > 0 ? " + " : " - ") << static_cast<long long>(s.b > 0 ? s.b : -s.b) << "*sqrt(" << q << ")";
  o << " ~ " << std::fixed << std::setprecision(3) << v;
  return o.str();
}

Json read_input(const std::string& path) {
  if (path.empty() || path == "-") return Json::parse(std::cin);
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return Json::parse(in);
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot write " + path);
  f << text;
}

struct Common {
  std::string out_path;
  std::string format = "json";
  std::string expect;
  std::size_t witness_cap = 16;
  bool all_witnesses = false;
  bool babai_sos = false;
  bool energy = false;

  SidonOptions options() const {
    SidonOptions o;
    o.witness_cap = witness_cap;
    o.all_witnesses = all_witnesses;
    o.babai_sos = babai_sos;
    o.with_energy = energy;
    return o;
  }
};

void add_output_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("-o,--out", c.out_path, "Output path (stdout when omitted)");
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

void add_report_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--expect", c.expect, "Expected verdict")->check(CLI::IsMember({"sidon", "symmetric", "neither"}));
  cmd->add_option("--witness-cap", c.witness_cap, "Witness quadruples to keep");
  cmd->add_flag("--all-witnesses", c.all_witnesses, "Keep every witness quadruple");
  cmd->add_flag("--babai-sos", c.babai_sos, "Also reject 2x = 2y with x != y");
  cmd->add_flag("--energy", c.energy, "Report the additive energy");
}

void add_family_flags(CLI::App* cmd, FamilyRequest& r, std::string& f_text, std::uint64_t& seed) {
  cmd->add_option("--family", r.family, "Family id: g0-m1..g0-m5, g1-2p, g1-pq, g1-conj, g1-dp[:d], g2")->required();
  cmd->add_option("--q", r.q, "Field order")->required();
  cmd->add_option("--d", r.d, "Multiplicity for g1-dp");
  cmd->add_option("--f", f_text, "Coefficients f0,...,f5 of the genus-2 quintic");
  cmd->add_option("--curve", r.curve, "Elliptic curve as printed in provenance, e.g. ec:7^1:0,1:0,3 (random when omitted)");
  cmd->add_option("--seed", seed, "Seed for random curves and places");
}

std::string render(const SetFile& s, const std::string& format) {
  if (format == "csv") return set_file_to_csv(s);
  return set_file_to_json(s).dump(2) + "\n";
}

int verdict_exit(const SidonReport<GroupElement>& r, const std::string& expected) {
  if (expected.empty()) return kOk;
  return sidon::verdict_name(r.verdict) == expected ? kOk : kMismatch;
}

}  // namespace

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad integer '" + item + "'");
    }
    if (used != item.size()) throw std::invalid_argument("bad integer '" + item + "'");
    out.push_back(v);
  }
  return out;
}

ConstructedSet construct_family(const FamilyRequest& req) {
  auto [id, dpart] = split_family(req.family);
  Family fam = genjac::parse_family(id);
  const auto& info = genjac::config_info(fam);
  auto k = field_of_order(req.q);
  ConstructedSet out;
  out.family = req.family;
  out.genus = info.genus;
  out.expected = info.expected;
  out.field_order = req.q;
  out.provenance = Json::object();
  out.provenance["family"] = req.family;
  out.provenance["field"] = k->to_string();
  if (info.genus == 0) {
    int i = static_cast<int>(fam) - static_cast<int>(Family::G0M1) + 1;
    auto g = genjac::genus0_group(k, i);
    auto f0 = genjac::genus0_family(i, k);
    out.modulus_degree = g.modulus_degree();
    out.group = f0.spec;
    out.elements = f0.elements;
    out.provenance["modulus"] = g.modulus_string();
    out.provenance["coordinates"] = f0.provenance;
  } else if (fam == Family::G2) {
    construct_genus2(out, k, req);
  } else {
    unsigned d = dpart.value_or(req.d);
    if (fam == Family::G1DP) out.provenance["multiplicity"] = d;
    construct_elliptic(out, k, fam, d, req);
  }
  return out;
}

std::vector<BoundCheck> check_bounds(std::uint64_t q, unsigned genus, unsigned modulus_degree, std::uint64_t set_size,
                                     std::uint64_t group_order) {
  const __int128 Q = q;
  const __int128 g = genus;
  std::vector<BoundCheck> out;
  auto add = [&](std::string name, std::string what, std::uint64_t value, const Surd& bound, bool lower) {
    int c = compare(value, bound, Q);
    bool ok = lower ? c >= 0 : c <= 0;
    out.push_back({std::move(name), what + " = " + std::to_string(value) + (lower ? " >= " : " <= ") + format_surd(bound, q), ok});
  };
  add("set lower", "|S|", set_size, Surd{Q + 1 - modulus_degree, -2 * g}, true);
  add("set upper", "|S|", set_size, Surd{Q + 1, 2 * g}, false);
  unsigned torus = modulus_degree > 0 ? modulus_degree - 1 : 0;
  Surd lo = mul(power({Q - 1, 0}, torus, Q), power({Q + 1, -2}, genus, Q), Q);
  Surd hi = mul(power({Q + 1, 0}, torus, Q), power({Q + 1, 2}, genus, Q), Q);
  add("group lower", "|A|", group_order, lo, true);
  add("group upper", "|A|", group_order, hi, false);
  return out;
}

Json report_to_json(const SidonReport<GroupElement>& r) {
  Json j = Json::object();
  j["verdict"] = sidon::verdict_name(r.verdict);
  j["center"] = r.center ? element_json(*r.center) : Json();
  Json w = Json::array();
  for (const auto& q : r.witnesses)
    w.push_back({{"x1", element_json(q.x1)},
                 {"x2", element_json(q.x2)},
                 {"x3", element_json(q.x3)},
                 {"x4", element_json(q.x4)},
                 {"sum", element_json(q.sum)}});
  j["witnesses"] = w;
  if (!r.note.empty()) j["note"] = r.note;
  if (r.energy) j["energy"] = *r.energy;
  return j;
}

Json set_file_to_json(const SetFile& s) {
  Json j = Json::object();
  j["group"] = s.group.to_string();
  j["moduli"] = s.group.moduli;
  Json el = Json::array();
  for (const auto& x : s.elements) el.push_back(element_json(x));
  j["size"] = s.elements.size();
  j["elements"] = el;
  j["seed"] = s.seed ? Json(*s.seed) : Json();
  j["provenance"] = s.provenance;
  j["report"] = s.report;
  return j;
}

SetFile set_file_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("set file must be a JSON object");
  SetFile s;
  if (j.contains("moduli")) {
    s.group = GroupSpec(j.at("moduli").get<std::vector<std::uint64_t>>());
  } else if (j.contains("group")) {
    s.group = abgroup::parse_group(j.at("group").get<std::string>());
  } else {
    throw std::invalid_argument("set file has no group");
  }
  if (j.contains("group") && abgroup::parse_group(j.at("group").get<std::string>()) != s.group)
    throw std::invalid_argument("group and moduli disagree");
  if (!j.contains("elements") || !j.at("elements").is_array()) throw std::invalid_argument("set file has no elements");
  for (const auto& e : j.at("elements")) s.elements.push_back(element_from_json(s.group, e));
  if (j.contains("provenance")) s.provenance = j.at("provenance");
  if (j.contains("seed") && !j.at("seed").is_null()) s.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("report")) s.report = j.at("report");
  return s;
}

std::string set_file_to_csv(const SetFile& s) {
  std::ostringstream o;
  for (std::size_t i = 0; i < s.group.rank(); ++i) o << (i ? "," : "") << "c" << i + 1;
  o << "\n";
  for (const auto& x : s.elements) {
    for (std::size_t i = 0; i < x.coords.size(); ++i) o << (i ? "," : "") << x.coords[i];
    o << "\n";
  }
  return o.str();
}

SetFile to_set_file(const ConstructedSet& c, std::optional<std::uint64_t> seed, const sidon::SidonOptions& opt) {
  SetFile s;
  s.group = c.group;
  s.elements = c.elements;
  s.seed = seed;
  s.provenance = c.provenance;
  s.provenance["genus"] = c.genus;
  s.provenance["modulus_degree"] = c.modulus_degree;
  s.provenance["expected"] = c.expected;
  if (c.recipe_center) s.provenance["recipe_center"] = element_json(*c.recipe_center);
  s.report = report_to_json(sidon::classify(s.elements, SpecOps{s.group}, opt));
  return s;
}

namespace {

std::optional<GroupElement> stored_center(const SetFile& s) {
  if (s.report.is_object() && s.report.contains("center") && !s.report.at("center").is_null())
    return element_from_json(s.group, s.report.at("center"));
  return std::nullopt;
}

std::string stored_verdict(const SetFile& s) {
  if (s.report.is_object() && s.report.contains("verdict")) return s.report.at("verdict").get<std::string>();
  return {};
}

std::string census_csv(const Json& j) {
  std::ostringstream o;
  o << "key,value\n";
  for (const auto& [k, v] : j.items()) {
    std::string text = v.is_string() ? v.get<std::string>() : v.dump();
    bool quote = text.find(',') != std::string::npos || text.find('"') != std::string::npos;
    if (quote) {
      std::string esc;
      for (char ch : text) esc += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      text = "\"" + esc + "\"";
    }
    o << k << "," << text << "\n";
  }
  return o.str();
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Replaces `--config path` by the flags the file lists; flags given on the
/// command line take precedence.
std::vector<std::string> expand_config(CLI::App& app, int argc, const char* const* argv) {
  std::vector<std::string> args(argv, argv + argc);
  std::string path;
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw std::invalid_argument("--config needs a path");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      kept.push_back(args[i]);
    }
  }
  if (path.empty()) return args;
  CLI::App* sub = nullptr;
  for (std::size_t i = 1; i < kept.size() && !sub; ++i) sub = app.get_subcommand_no_throw(kept[i]);
  if (!sub) throw std::invalid_argument("--config needs a subcommand");
  auto given = [&](const std::string& flag) {
    for (const auto& a : kept)
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    return false;
  };
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    std::replace(key.begin(), key.end(), '_', '-');
    if (key == "input") {
      kept.push_back(value);
      continue;
    }
    std::string flag = "--" + key;
    const CLI::Option* opt = sub->get_option_no_throw(flag);
    if (!opt) throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (given(flag)) continue;
    if (opt->get_expected_min() == 0) {
      if (value == "true" || value == "1" || value == "yes") kept.push_back(flag);
      else if (value != "false" && value != "0" && value != "no")
        throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": '" + key + "' expects true or false");
    } else {
      kept.push_back(flag);
      kept.push_back(value);
    }
  }
  return kept;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sidon and symmetric Sidon sets from generalized jacobians"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  Common common;
  FamilyRequest fam;
  std::string f_text;
  std::uint64_t seed = 0;
  std::string in_path;
  std::string center_text;
  std::string group_text;
  embed::EmbedParams ep;
  std::string targets_text;

  std::string config_path;
  auto configure = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "File of key = value lines mirroring the flags");
  };

  auto* construct = app.add_subcommand("construct", "Build a family and write its set file");
  add_family_flags(construct, fam, f_text, seed);
  add_output_flags(construct, common);
  add_report_flags(construct, common);
  configure(construct);

  auto* verify = app.add_subcommand("verify", "Check a set file against its recorded verdict");
  auto* classify = app.add_subcommand("classify", "Classify a set file from scratch");
  auto* desym = app.add_subcommand("desymmetrize", "Keep one element of each pair {x, center - x}");
  for (auto* cmd : {verify, classify, desym}) {
    cmd->add_option("input", in_path, "Set file (stdin when omitted or '-')");
    add_output_flags(cmd, common);
    add_report_flags(cmd, common);
    configure(cmd);
  }
  desym->add_option("--center", center_text, "Center as (c1,...); taken from the report or searched otherwise");

  auto* emb = app.add_subcommand("embed", "Sidon set in a product of cyclic groups through E#");
  emb->add_option("--p", ep.p, "Characteristic")->required();
  emb->add_option("--j", ep.j, "Extension degree");
  emb->add_option("--n", ep.n, "Order of the cyclic curve group")->required();
  emb->add_option("--targets", targets_text, "n_1,...,n_{j+1}")->required();
  emb->add_option("--seed", seed, "Seed for the greedy box search");
  add_output_flags(emb, common);
  add_report_flags(emb, common);
  configure(emb);

  auto* census = app.add_subcommand("census", "Largest Sidon set of a small group");
  census->add_option("--group", group_text, "Group, e.g. Z/13 or Z/4xZ/6")->required();
  census->add_flag("--babai-sos", common.babai_sos, "Also reject 2x = 2y with x != y");
  add_output_flags(census, common);
  configure(census);

  auto* bounds = app.add_subcommand("bounds", "Compare |S| and |A| with the point-count windows");
  add_family_flags(bounds, fam, f_text, seed);
  add_output_flags(bounds, common);
  configure(bounds);

  try {
    auto args = expand_config(app, argc, argv);
    std::vector<const char*> ptrs;
    for (const auto& a : args) ptrs.push_back(a.c_str());
    app.parse(static_cast<int>(ptrs.size()), ptrs.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    auto opt = common.options();
    if (construct->parsed() || bounds->parsed()) {
      auto* cmd = construct->parsed() ? construct : bounds;
      if (!f_text.empty()) fam.f = parse_int_list(f_text);
      if (cmd->count("--seed") > 0) fam.seed = seed;
      auto c = construct_family(fam);
      if (construct->parsed()) {
        auto s = to_set_file(c, fam.seed, opt);
        write_output(common.out_path, render(s, common.format), out);
        return common.expect.empty() ? kOk : (stored_verdict(s) == common.expect ? kOk : kMismatch);
      }
      auto checks = check_bounds(c.field_order, c.genus, c.modulus_degree, c.elements.size(), c.group.order());
      bool all = std::all_of(checks.begin(), checks.end(), [](const BoundCheck& b) { return b.pass; });
      std::ostringstream o;
      if (common.format == "csv") {
        o << "name,pass,statement\n";
        for (const auto& b : checks) o << b.name << "," << (b.pass ? "true" : "false") << ",\"" << b.statement << "\"\n";
      } else {
        Json j = {{"family", c.family},
                  {"q", c.field_order},
                  {"genus", c.genus},
                  {"modulus_degree", c.modulus_degree},
                  {"group", c.group.to_string()},
                  {"set_size", c.elements.size()},
                  {"group_order", c.group.order()}};
        Json arr = Json::array();
        for (const auto& b : checks) arr.push_back({{"name", b.name}, {"statement", b.statement}, {"pass", b.pass}});
        j["checks"] = arr;
        j["all_pass"] = all;
        o << j.dump(2) << "\n";
      }
      write_output(common.out_path, o.str(), out);
      return all ? kOk : kMismatch;
    }

    if (verify->parsed() || classify->parsed() || desym->parsed()) {
      SetFile s = set_file_from_json(read_input(in_path));
      SpecOps ops{s.group};
      if (verify->parsed()) {
        auto center = stored_center(s);
        std::string before = stored_verdict(s);
        auto rep = center ? sidon::verify_symmetric(s.elements, ops, center, opt)
                          : sidon::verify_sidon(s.elements, ops, opt);
        s.report = report_to_json(rep);
        write_output(common.out_path, render(s, common.format), out);
        if (!common.expect.empty()) return verdict_exit(rep, common.expect);
        return before.empty() || before == sidon::verdict_name(rep.verdict) ? kOk : kMismatch;
      }
      if (classify->parsed()) {
        auto rep = sidon::classify(s.elements, ops, opt);
        s.report = report_to_json(rep);
        write_output(common.out_path, render(s, common.format), out);
        return verdict_exit(rep, common.expect);
      }
      std::optional<GroupElement> center;
      if (!center_text.empty())
        center = abgroup::parse_element(s.group, center_text);
      else
        center = stored_center(s);
      if (!center) center = sidon::find_center(s.elements, ops);
      if (!center) throw std::invalid_argument("set is not a symmetric Sidon set");
      auto d = sidon::desymmetrize(s.elements, *center, ops);
      SetFile o;
      o.group = s.group;
      o.elements = d.elements;
      o.seed = s.seed;
      o.provenance = {{"operation", "desymmetrize"},
                      {"rule", "keep the lexicographically smaller of x and center - x"},
                      {"center", element_json(*center)},
                      {"dropped", Json::array()},
                      {"source", s.provenance}};
      for (const auto& x : d.dropped) o.provenance["dropped"].push_back(element_json(x));
      auto rep = sidon::verify_sidon(o.elements, ops, opt);
      o.report = report_to_json(rep);
      write_output(common.out_path, render(o, common.format), out);
      return verdict_exit(rep, common.expect);
    }

    if (emb->parsed()) {
      for (auto t : parse_int_list(targets_text)) {
        if (t <= 0) throw std::invalid_argument("targets must be positive");
        ep.targets.push_back(static_cast<std::uint64_t>(t));
      }
      auto r = embed::construct(ep, seed);
      SetFile s;
      s.group = r.target;
      s.elements = r.sidon_set;
      s.seed = seed;
      Json box = {{"moduli", r.box.box.moduli},     {"origins", r.box.box.origins},
                  {"lengths", r.box.box.lengths},   {"text", r.box.box.to_string()},
                  {"points", r.box.count},          {"required", r.box.required},
                  {"method", r.box.method}};
      s.provenance = {{"operation", "embed"},
                      {"p", ep.p},
                      {"j", ep.j},
                      {"n", ep.n},
                      {"targets", ep.targets},
                      {"curve", r.curve},
                      {"generator", r.generator},
                      {"basis", r.basis},
                      {"splitting_integer", r.splitting_integer},
                      {"source_group", r.source.to_string()},
                      {"symmetric_size", r.symmetric_set.size()},
                      {"symmetric_center", element_json(r.center)},
                      {"symmetric_certified", r.symmetric_certified},
                      {"box", box},
                      {"freiman_certified", r.freiman_certified},
                      {"dropped", r.dropped},
                      {"size_bound", r.size_bound}};
      auto rep = sidon::verify_sidon(s.elements, SpecOps{s.group}, opt);
      s.report = report_to_json(rep);
      write_output(common.out_path, render(s, common.format), out);
      return verdict_exit(rep, common.expect);
    }

    if (census->parsed()) {
      auto g = abgroup::parse_group(group_text);
      auto res = sidon::max_sidon_census(g, common.babai_sos);
      Json w = Json::array();
      for (const auto& x : res.witness) w.push_back(element_json(x));
      Json j = {{"group", g.to_string()},   {"moduli", g.moduli},       {"babai_sos", common.babai_sos},
                {"max_size", res.max_size}, {"witness", w},             {"method", res.method},
                {"nodes", res.nodes}};
      write_output(common.out_path, common.format == "csv" ? census_csv(j) : j.dump(2) + "\n", out);
      return kOk;
    }
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace jacsidon::cli
