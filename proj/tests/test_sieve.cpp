#include <algorithm>
#include <random>

#include "doctest.h"
#include "maxcurve/grouptab.hpp"
#include "maxcurve/pgu.hpp"
#include "maxcurve/scan.hpp"
#include "maxcurve/sieve.hpp"

using namespace maxcurve;
using namespace maxcurve::sieve;

namespace {

Problem plain(std::uint64_t target, std::vector<std::uint64_t> values, std::uint64_t cap) {
  Problem P{target, {}, cap, {}};
  for (auto v : values) P.contributions.push_back({v, std::nullopt});
  return P;
}

// Nested loops over the first components, remainder solved for the last.
std::vector<Solution> naive(const Problem& P) {
  const std::size_t n = P.contributions.size();
  std::vector<Solution> out;
  Solution s(n, 0);
  auto rec = [&](auto&& self, std::size_t t, std::uint64_t rest) -> void {
    const std::uint64_t v = P.contributions[t].value;
    if (t + 1 == n) {
      if (rest % v != 0) return;
      s[t] = rest / v;
      if (satisfies(P, s)) out.push_back(s);
      return;
    }
    for (std::uint64_t c = 0; c * v <= rest; ++c) {
      s[t] = c;
      self(self, t + 1, rest - c * v);
    }
  };
  rec(rec, 0, P.target);
  std::sort(out.begin(), out.end());
  return out;
}

bool contains_all(const std::vector<Solution>& big, const std::vector<Solution>& small) {
  return std::all_of(small.begin(), small.end(),
                     [&](const Solution& s) { return std::binary_search(big.begin(), big.end(), s); });
}

grouptab::GroupTable fixture(const std::string& name) {
  return grouptab::import_group(std::filesystem::path(MAXCURVE_DATA_DIR) / "groups" / (name + ".json"));
}

}  // namespace

TEST_CASE("sieve reproductions") {
  using S = std::vector<Solution>;
  CHECK(enumerate(plain(4200, {72, 2}, 63)).empty());
  CHECK(enumerate(plain(4128, {72, 2}, 69)) == S{{57, 12}});
  CHECK(enumerate(plain(4104, {72, 3}, 71)) == S{{57, 0}});
  CHECK(enumerate(plain(4008, {72, 2}, 79)) == S{{55, 24}});
  CHECK(enumerate(plain(3996, {72, 3}, 80)) == S{{55, 12}});
  CHECK(enumerate(plain(3624, {72, 2}, 111)) == S{{49, 48}, {50, 12}});
  CHECK(enumerate(plain(0, {72, 2, 3}, 10)) == S{{0, 0, 0}});
  CHECK(enumerate(plain(5, {72, 2}, 10)).empty());
}

TEST_CASE("problem validation") {
  CHECK_THROWS_AS(enumerate(plain(10, {}, 5)), std::invalid_argument);
  CHECK_THROWS_AS(enumerate(plain(10, {0, 2}, 5)), std::invalid_argument);
  auto P = plain(10, {2}, 5);
  P.filters.push_back(Fixed{3, 1});
  CHECK_THROWS_AS(enumerate(P), std::invalid_argument);
  P.filters = {Congruence{0, 0, 1}};
  CHECK_THROWS_AS(enumerate(P), std::invalid_argument);
  CHECK(describe(Congruence{1, 3, 2}) == "n1 = 2 mod 3");
}

TEST_CASE("enumeration matches naive loops on random instances") {
  std::mt19937_64 rng(2024);
  const std::vector<std::uint64_t> pool{1, 2, 3, 5, 7, 72, 73, 11, 13};
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + rng() % 3;
    std::vector<std::uint64_t> values;
    while (values.size() < n) {
      const auto v = pool[rng() % pool.size()];
      if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
    }
    auto P = plain(rng() % 5001, values, rng() % 300);
    if (values[0] == 1 || (n > 1 && values[1] == 1)) P.target %= 600;
    for (std::size_t t = 0; t < n; ++t) {
      if (rng() % 4 == 0) P.contributions[t].cap = rng() % 80;
    }
    switch (rng() % 6) {
      case 0: P.filters.push_back(LowerBound{rng() % n, rng() % 20}); break;
      case 1: P.filters.push_back(UpperBound{rng() % n, rng() % 60}); break;
      case 2: P.filters.push_back(Congruence{rng() % n, 2 + rng() % 4, rng() % 4}); break;
      case 3: P.filters.push_back(TotalAtLeast{rng() % 50}); break;
      case 4: P.filters.push_back(Fixed{rng() % n, rng() % 30}); break;
      default: break;
    }
    const auto got = enumerate(P);
    CAPTURE(i);
    REQUIRE(std::is_sorted(got.begin(), got.end()));
    REQUIRE(std::adjacent_find(got.begin(), got.end()) == got.end());
    REQUIRE(got == naive(P));
    std::size_t streamed = 0;
    enumerate_stream(P, [&](const Solution& s) { REQUIRE(s == got[streamed++]); });
    REQUIRE(streamed == got.size());
  }
}

TEST_CASE("monotonicity") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 60; ++i) {
    const std::uint64_t D = 2000 + rng() % 2500;
    const std::uint64_t cap = 40 + rng() % 120;
    const auto base = enumerate(plain(D, {72, 2}, cap));
    CHECK(contains_all(enumerate(plain(D, {72, 2}, cap + 1 + rng() % 50)), base));
    auto wider = enumerate(plain(D, {72, 2, 3}, cap));
    std::vector<Solution> padded;
    for (auto s : base) {
      s.push_back(0);
      padded.push_back(s);
    }
    CHECK(contains_all(wider, padded));
  }
}

TEST_CASE("order window") {
  const auto w = order_window(71, 7);
  CHECK(w.cover_euler == 4968);
  CHECK(w.quotient_points == 6036);
  CHECK(w.cover_points == 357912);
  CHECK(w.lower == 60);
  CHECK(w.upper == 414);
  const auto orders = h72_genus7_orders();
  const std::vector<std::uint64_t> expect{60,  63,  64,  70,  71,  72,  80,  81,  84,  90,  96,  105,
                                          108, 112, 120, 126, 128, 135, 140, 142, 144, 160, 162, 168,
                                          180, 189, 192, 210, 213, 216, 224, 240, 243, 252, 270, 280,
                                          284, 288, 315, 320, 324, 336, 355, 360, 378, 384, 405};
  CHECK(orders == expect);
  CHECK(orders.size() == 47);
  CHECK(std::find(orders.begin(), orders.end(), 100) == orders.end());
  CHECK(std::find(orders.begin(), orders.end(), 414) == orders.end());
  const auto N = pgu::pgu_order(71).value;
  for (auto n : orders) CHECK(N % n == 0);
  CHECK(required_different(71, 7, 64) == 4200);
  CHECK(required_different(71, 7, 355) == 708);
  CHECK_THROWS_AS(required_different(71, 7, 415), MathError);
  CHECK_THROWS_AS(order_window(71, 1), std::invalid_argument);
}

TEST_CASE("pattern values") {
  CHECK(pattern_values(Pattern{"C71", {{70, {2, 73}}}}) == std::vector<std::uint64_t>{140, 5110});
  const Pattern p355{"C71:C5", {{70, {2, 73}}, {284, {2, 0}}}};
  const auto v = pattern_values(p355);
  CHECK(std::find(v.begin(), v.end(), 708) != v.end());
  CHECK(pattern_values(Pattern{"empty", {}}) == std::vector<std::uint64_t>{0});
  CHECK_THROWS_AS(pattern_values(Pattern{"bad", {{3, {}}}}), std::invalid_argument);
}

TEST_CASE("profile filter") {
  const std::vector<ProfileRule> involutions{{0, {2}, ProfileMode::Exact}};
  for (const auto* name : {"c70", "d35", "c5_d7", "c7_d5"}) {
    const auto G = fixture(name);
    const auto verdict = profile_filter(G, Solution{57, 12}, involutions);
    CHECK_FALSE(verdict.accepted);
  }
  const auto S3 = fixture("s3");
  CHECK(profile_filter(S3, Solution{0, 0, 0}, std::vector<ProfileRule>{}).accepted);
  CHECK(profile_filter(S3, Solution{0, 0, 0}, std::vector<ProfileRule>{{0, {2}, ProfileMode::AtMost}}).accepted);
  CHECK(profile_filter(S3, Solution{3, 0}, std::vector<ProfileRule>{{0, {2}, ProfileMode::Exact}}).accepted);
  const auto g90 = fixture("c5_d9");
  const std::vector<ProfileRule> order3{{2, {3}, ProfileMode::ClassSum}};
  CHECK_FALSE(profile_filter(g90, Solution{53, 6, 12}, order3).accepted);
  CHECK(profile_filter(g90, Solution{53, 6, 2}, order3).accepted);
  CHECK_THROWS_AS(profile_filter(g90, Solution{1}, order3), std::invalid_argument);
}

TEST_CASE("family expansion") {
  const auto fam = Json::parse(R"([{"base": [53, 0, 24], "step": [0, 3, -2], "m": [2, 4]}, {"points": [[1, 2, 3]]}])");
  CHECK(expand_families(fam) == std::vector<Solution>{{53, 6, 20}, {53, 9, 18}, {53, 12, 16}, {1, 2, 3}});
  const auto neg = Json::parse(R"([{"base": [0, 4], "step": [1, -2], "m": [0, 3]}])");
  std::size_t dropped = 0;
  CHECK(expand_families(neg, &dropped).size() == 3);
  CHECK(dropped == 1);
  CHECK_THROWS_AS(expand_families(neg), std::invalid_argument);
}

TEST_CASE("shipped scan config") {
  const auto config = load_json_file(std::filesystem::path(MAXCURVE_DATA_DIR) / "h72_genus7_scan.json");
  const auto report = run_scan(config, 2, false);
  CHECK(report["order_count"] == 47);
  CHECK(report["config_covers_orders"] == true);
  CHECK(report["asserted_claims_verified"] == true);
  for (const auto& row : report["rows"]) {
    const auto order = row["order"].get<std::uint64_t>();
    CHECK(row["D"].get<std::uint64_t>() == 4968 - 12 * order);
    CHECK(row["cap"].get<std::uint64_t>() == order - 1);
  }
  // Repeated runs give identical reports.
  CHECK(run_scan(config, 1, false) == report);
}
