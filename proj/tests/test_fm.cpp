#include "doctest.h"
#include "maxcurve/fm.hpp"

using namespace maxcurve;
using namespace maxcurve::fm;

namespace {

kummer::PlaneModel plane_model(const gf::FieldPtr& F) {
  return kummer::PlaneModel(F, {{1, 0, 0},
                                {F->from_int(7), 1, 1},
                                {F->from_int(21), 2, 2},
                                {F->from_int(35), 3, 3},
                                {F->from_int(28), 4, 4},
                                {F->from_int(2), 7, 0},
                                {F->from_int(2), 0, 7}});
}

}  // namespace

TEST_CASE("known maximal primes") {
  for (std::uint64_t p : {71, 251, 503, 2591}) {
    const auto r = fm_check(p);
    CAPTURE(p);
    CHECK(r.maximal);
    CHECK(r.trace == 0);
    CHECK(r.count_p == p + 1);
    CHECK(r.count_p2 == (p + 1) * (p + 1));
    CHECK(r.predicted == static_cast<std::int64_t>(p * p + 1 + 14 * p));
    CHECK(r.pm1_mod14);
    CHECK(r.pm1_mod7);
  }
  CHECK(fm_check(71).predicted == 6036);
  CHECK(fm_check(71).predicted == 7 * 5184 - 6 * 5041 - 6);
}

TEST_CASE("record fields") {
  const auto r = fm_check(13);
  CHECK(r.mod7 == 6);
  CHECK(r.mod14 == 13);
  CHECK(r.pm1_mod7);
  CHECK(r.pm1_mod14);
  for (std::uint64_t p = 3; p < 400; p += 2) {
    if (!is_prime(p) || p == 7) continue;
    const auto rec = fm_check(p);
    const auto P = static_cast<std::int64_t>(p), n1 = static_cast<std::int64_t>(rec.count_p);
    CHECK(static_cast<std::int64_t>(rec.count_p2) == n1 * (2 * P + 2 - n1));
    CHECK(rec.trace == P + 1 - n1);
    CHECK(rec.predicted == 7 * static_cast<std::int64_t>(rec.count_p2) - 6 * P * P - 6);
    CHECK(rec.maximal == (rec.trace == 0));
    // For odd p the two residue conditions coincide.
    CHECK(rec.pm1_mod7 == rec.pm1_mod14);
  }
  CHECK(kAutOrder == 84 * (kGenus - 1));
}

TEST_CASE("scan") {
  CHECK(fm_scan(10).empty());
  const auto found = fm_scan(2600);
  std::vector<std::uint64_t> primes;
  for (const auto& r : found) {
    CHECK(r.trace == 0);
    CHECK((r.p % 14 == 1 || r.p % 14 == 13));
    primes.push_back(r.p);
  }
  for (std::uint64_t p : {71, 251, 503, 2591}) CHECK(std::find(primes.begin(), primes.end(), p) != primes.end());
  for (const auto& r : fm_scan(70)) CHECK(r.trace == 0);
}

TEST_CASE("bad primes") {
  CHECK_THROWS_AS(fm_check(2), std::invalid_argument);
  CHECK_THROWS_AS(fm_check(7), std::invalid_argument);
  CHECK_THROWS_AS(fm_check(15), std::invalid_argument);
  CHECK_THROWS_AS(fm_plane_affine_count(101), std::invalid_argument);
  CHECK_THROWS_AS(fm_plane_affine_count(9), std::invalid_argument);
}

TEST_CASE("plane model") {
  CHECK(fm_plane_affine_count(13) == 308);
  CHECK(fm_plane_affine_count(13, 3) == 308);
  const auto F = gf::field_make(13, 2);
  const auto M = plane_model(F);
  CHECK(kummer::affine_plane_count(M) == 308);
  std::uint64_t below = 0, above = 0;
  for (gf::Elem x = 0; x < F->size(); ++x) {
    for (gf::Elem y = 0; y < F->size(); ++y) {
      if (M.eval(x, y) != 0) continue;
      REQUIRE(M.eval(y, x) == 0);
      below += x < y;
      above += x > y;
    }
  }
  CHECK(below == above);
  const auto cross = fm_plane_cross_check(13);
  CHECK(cross.affine == 308);
  CHECK(cross.predicted - static_cast<std::int64_t>(cross.affine) == cross.correction);
}
