#pragma once

#include <filesystem>
#include <vector>

#include "json.hpp"
#include "maxcurve/sieve.hpp"

// Config-driven scan over candidate group orders. Each case supplies the
// admissible contribution values and filters, or structured patterns when the
// group structure is known, plus printed constants and claims to compare with.
// Claims marked "assert" decide the pass/fail verdict; the rest are reported.
namespace maxcurve::sieve {

using Json = nlohmann::json;

Json load_json_file(const std::filesystem::path& file);

// Expands {"points": [...]} or {"base", "step", "m": [lo, hi]} family specs.
// Members with a negative entry are dropped and counted in *negative, or
// rejected when negative is null.
std::vector<Solution> expand_families(const Json& families, std::size_t* negative = nullptr);

Problem problem_from_case(const Json& scan_case, std::uint64_t q, std::uint64_t quotient_genus);

// One report row per case; rows keep the config order. Solution lists longer
// than 20000 are omitted from the row (solution_count is always present).
Json scan_case(const Json& scan_case, std::uint64_t q, std::uint64_t quotient_genus, bool include_solutions = true);
Json run_scan(const Json& config, unsigned threads, bool include_solutions = true);

}  // namespace maxcurve::sieve
