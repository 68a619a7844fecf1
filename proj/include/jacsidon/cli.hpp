#pragma once

// Command-line front end and the family constructions it shares with the
// acceptance suite and the Python module.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jacsidon/abgroup.hpp"
#include "jacsidon/sidon.hpp"
#include "json.hpp"

namespace jacsidon::cli {

using abgroup::GroupElement;
using abgroup::GroupSpec;
using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kMismatch = 1, kUsage = 2, kCap = 3 };

struct FamilyRequest {
  /// `g0-m1`...`g0-m5`, `g1-2p`, `g1-pq`, `g1-conj`, `g1-dp[:d]`, `g2`
  std::string family;
  std::uint64_t q = 0;
  /// Multiplicity for g1-dp when the id carries none.
  unsigned d = 3;
  /// f0..f5 for g2 (monic quintic).
  std::vector<std::int64_t> f;
  /// Optional elliptic curve text; a random curve is drawn otherwise.
  std::string curve;
  /// Draws random places and curves when set; first eligible choices otherwise.
  std::optional<std::uint64_t> seed;
};

struct ConstructedSet {
  std::string family;
  unsigned genus = 0;
  unsigned modulus_degree = 0;
  std::uint64_t field_order = 0;
  std::string expected;  // "sidon" or "symmetric"
  GroupSpec group;
  std::vector<GroupElement> elements;
  /// s(x) + s(x') for the partner x' of the first embedded point.
  std::optional<GroupElement> recipe_center;
  Json provenance;
};

/// Builds the set in standard coordinates. Genus 1 and 2 groups are
/// identified by enumeration, so their order must be at most 2^20.
ConstructedSet construct_family(const FamilyRequest& req);

/// Parses `1,0,0,0,0,1`.
std::vector<std::int64_t> parse_int_list(const std::string& text);

struct BoundCheck {
  std::string name;
  std::string statement;
  bool pass = false;
};

/// The point-count window for |S| and the torus-times-abelian-variety
/// window for |A|, compared exactly.
std::vector<BoundCheck> check_bounds(std::uint64_t q, unsigned genus, unsigned modulus_degree, std::uint64_t set_size,
                                     std::uint64_t group_order);

Json report_to_json(const sidon::SidonReport<GroupElement>& r);

struct SetFile {
  GroupSpec group;
  std::vector<GroupElement> elements;
  Json provenance = Json::object();
  std::optional<std::uint64_t> seed;
  Json report;  // null when absent
};

Json set_file_to_json(const SetFile& s);
SetFile set_file_from_json(const Json& j);
std::string set_file_to_csv(const SetFile& s);

/// Set file of a constructed family with its classification report.
SetFile to_set_file(const ConstructedSet& c, std::optional<std::uint64_t> seed, const sidon::SidonOptions& opt = {});

/// Runs the command line; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace jacsidon::cli
