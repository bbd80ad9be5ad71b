#include <fstream>
#include <set>
#include <cstdlib>

#include "doctest.h"
#include "maxcurve/catalog.hpp"

using namespace maxcurve;
using namespace maxcurve::catalog;

namespace {

const Json& shipped() {
  static const Json doc = [] {
    std::ifstream in(std::filesystem::path(MAXCURVE_DATA_DIR) / "catalog.json");
    return Json::parse(in);
  }();
  return doc;
}

const Check* find_check(const EntryResult& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("every shipped entry verifies") {
  const auto results = verify_catalog(shipped(), std::nullopt, 2);
  CHECK(results.size() == shipped()["entries"].size());
  std::size_t kummer_entries = 0;
  for (const auto& r : results) {
    CAPTURE(r.name);
    CHECK(r.pass());
    CHECK(!r.claim.empty());
    if (r.kind == "kummer") {
      ++kummer_entries;
      const auto* branch = find_check(r, "branch_rule_matches_oracle");
      REQUIRE(branch != nullptr);
      CHECK(branch->pass);
      if (const auto* spec = find_check(r, "spectrum_not_forbidden")) CHECK(spec->pass);
    }
  }
  CHECK(kummer_entries >= 12);
}

TEST_CASE("field filter") {
  const auto f25 = verify_catalog(shipped(), 25, 1);
  std::set<std::string> names;
  for (const auto& r : f25) {
    CHECK(r.field_size == 25);
    names.insert(r.name);
  }
  for (const auto* n : {"H_6 over F_25", "H_3 over F_25", "H_2 over F_25", "D over F_25", "D Weierstrass over F_5",
                        "C over F_25", "Z over F_25", "Fermat sextic over F_25"}) {
    CHECK(names.count(n) == 1);
  }
  const auto expect_count = [&](const std::string& name, std::uint64_t n) {
    for (const auto& r : f25) {
      if (r.name == name) return r.data.value("places", r.data.value("count_p2", r.data.value("affine_count", 0ull))) == n;
    }
    return false;
  };
  CHECK(expect_count("H_6 over F_25", 126));
  CHECK(expect_count("H_3 over F_25", 66));
  CHECK(expect_count("H_2 over F_25", 46));
  CHECK(expect_count("D over F_25", 36));
  CHECK(expect_count("D Weierstrass over F_5", 36));
  CHECK(verify_catalog(shipped(), 7, 1).empty());
}

TEST_CASE("coefficient parsing") {
  auto F = gf::field_make(5, 2);
  CHECK(parse_coeff(F, Json(-1)) == 4);
  CHECK(parse_coeff(F, Json("3+2*t")) == 3 + 2 * 5);
  CHECK(parse_coeff(F, Json::parse("[3, 2]")) == 13);
  CHECK_THROWS_AS(parse_coeff(F, Json(1.5)), std::invalid_argument);
}

TEST_CASE("mismatched expectations fail") {
  auto entry = Json::parse(R"({"name": "bad H_6", "kind": "kummer", "p": 5, "k": 2, "m": 6,
      "f_sparse": [[1, 1], [5, 1]], "expected_genus": 10, "expected_count": 127, "maximal": true,
      "claim": "deliberately wrong count"})");
  const auto r = verify_entry(entry, 1);
  CHECK_FALSE(r.pass());
  CHECK_FALSE(find_check(r, "place_count")->pass);
  CHECK(find_check(r, "genus")->pass);
  CHECK_THROWS_AS(verify_entry(Json::parse(R"({"name": "x", "kind": "conic", "p": 5})"), 1), std::invalid_argument);
  CHECK_THROWS_AS(verify_entry(Json::parse(R"({"name": "x", "kind": "kummer", "p": 5, "k": 2})"), 1),
                  std::invalid_argument);
}

TEST_CASE("catalog path override") {
  ::setenv("MAXCURVE_CATALOG", "/tmp/elsewhere.json", 1);
  CHECK(default_path() == "/tmp/elsewhere.json");
  ::unsetenv("MAXCURVE_CATALOG");
  CHECK(default_path() == std::filesystem::path(MAXCURVE_DATA_DIR) / "catalog.json");
}
