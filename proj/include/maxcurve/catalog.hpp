#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "maxcurve/gf.hpp"

// Curve catalog: JSON entries of kind kummer, plane or elliptic, each with
// the constants it is expected to reproduce. Kummer entries give f densely
// ("f", little-endian) or as [exponent, coefficient] pairs ("f_sparse").
namespace maxcurve::catalog {

using Json = nlohmann::json;

// Default catalog location; MAXCURVE_CATALOG overrides it.
std::filesystem::path default_path();

// Integer, "3+2*t" string, or little-endian coefficient array.
gf::Elem parse_coeff(const gf::FieldPtr& F, const Json& value);

struct Check {
  std::string name;
  Json expected;
  Json actual;
  bool pass;
};

struct EntryResult {
  std::string name;
  std::string kind;
  std::uint64_t field_size;
  std::string claim;
  std::vector<Check> checks;
  Json data;  // computed quantities
  bool pass() const;
};

std::uint64_t entry_field_size(const Json& entry);
EntryResult verify_entry(const Json& entry, unsigned threads);
// Entries whose base field has the given size, or all when field is empty.
std::vector<EntryResult> verify_catalog(const Json& catalog, std::optional<std::uint64_t> field, unsigned threads);

Json to_json(const EntryResult& r);

}  // namespace maxcurve::catalog
