#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "maxcurve/gf.hpp"

using namespace maxcurve;
using gf::Elem;

namespace {

// Schoolbook product of coefficient vectors reduced by the field's modulus,
// kept separate from Field::mul.
Elem slow_mul(const gf::Field& F, Elem a, Elem b) {
  const unsigned k = F.k();
  const auto p = F.p();
  const auto ca = F.coeffs(a), cb = F.coeffs(b);
  std::vector<std::uint64_t> prod(2 * k, 0);
  for (unsigned i = 0; i < k; ++i) {
    for (unsigned j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
  }
  const auto& mod = F.modulus();
  for (unsigned d = 2 * k - 1; d >= k; --d) {
    const auto c = prod[d];
    if (c == 0) continue;
    for (unsigned i = 0; i <= k; ++i) prod[d - k + i] = (prod[d - k + i] + (p - c) * mod[i] % p) % p;
  }
  prod.resize(k);
  return F.from_coeffs(prod);
}

bool has_root_mod_p(const std::vector<std::uint64_t>& f, std::uint64_t p) {
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t v = 0;
    for (std::size_t i = f.size(); i-- > 0;) v = (v * x + f[i]) % p;
    if (v == 0) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("field construction and sizes") {
  CHECK(gf::field_make(5, 2)->size() == 25);
  CHECK(gf::field_make(71, 2)->size() == 5041);
  auto F = gf::field_make(7, 6);
  std::set<Elem> seen;
  std::vector<std::uint64_t> c(6, 0);
  for (std::uint64_t n = 0; n < 117649; ++n) {
    std::uint64_t r = n;
    for (auto& x : c) {
      x = r % 7;
      r /= 7;
    }
    seen.insert(F->from_coeffs(c));
  }
  CHECK(seen.size() == 117649);
  CHECK_THROWS_AS(gf::field_make(6, 2), std::invalid_argument);
  CHECK_THROWS_AS(gf::field_make(5, 7), std::invalid_argument);
  CHECK_THROWS_AS(gf::field_make(5, 0), std::invalid_argument);
}

TEST_CASE("modulus is the least monic irreducible, highest coefficient first") {
  // Quadratics and cubics are irreducible iff they have no root.
  for (std::uint64_t p : {2, 3, 5, 7, 11, 71}) {
    for (unsigned k : {2u, 3u}) {
      std::vector<std::uint64_t> expect;
      // Enumerate coefficients below the leading one, most significant first.
      const std::uint64_t total = k == 2 ? p * p : p * p * p;
      for (std::uint64_t n = 0; n < total && expect.empty(); ++n) {
        std::vector<std::uint64_t> f(k + 1, 0);
        f[k] = 1;
        std::uint64_t r = n;
        for (unsigned i = 0; i < k; ++i) {
          f[i] = r % p;
          r /= p;
        }
        if (!has_root_mod_p(f, p)) expect = f;
      }
      CHECK(gf::field_make(p, k)->modulus() == expect);
    }
  }
}

TEST_CASE("multiplication agrees with schoolbook reduction") {
  for (auto [p, k] : {std::pair{5ull, 2u}, {7ull, 2u}, {3ull, 3u}, {2ull, 6u}, {3ull, 4u}}) {
    auto F = gf::field_make(p, k);
    for (Elem a = 0; a < F->size(); ++a) {
      for (Elem b = 0; b < F->size(); ++b) REQUIRE(F->mul(a, b) == slow_mul(*F, a, b));
    }
  }
  auto F = gf::field_make(7, 6);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20000; ++i) {
    const Elem a = rng() % F->size(), b = rng() % F->size();
    REQUIRE(F->mul(a, b) == slow_mul(*F, a, b));
  }
}

TEST_CASE("field axioms, exhaustive up to 5041 elements") {
  for (auto [p, k] : {std::pair{2ull, 2u}, {3ull, 2u}, {5ull, 2u}, {7ull, 2u}, {2ull, 3u}, {3ull, 3u}}) {
    auto F = gf::field_make(p, k);
    const Elem n = F->size();
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = 0; b < n; ++b) {
        REQUIRE(F->add(a, b) == F->add(b, a));
        REQUIRE(F->mul(a, b) == F->mul(b, a));
        REQUIRE(F->sub(F->add(a, b), b) == a);
        for (Elem c = 0; c < n; ++c) {
          REQUIRE(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
          REQUIRE(F->add(F->add(a, b), c) == F->add(a, F->add(b, c)));
          REQUIRE(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
        }
      }
    }
  }
  for (std::uint64_t p : {11, 13, 17, 23, 31, 71}) {
    auto F = gf::field_make(p, 2);
    const Elem n = F->size();
    for (Elem a = 0; a < n; ++a) {
      REQUIRE(F->add(a, F->neg(a)) == 0);
      REQUIRE(F->mul(a, 1) == a);
      if (a != 0) {
        REQUIRE(F->mul(a, F->inv(a)) == 1);
        REQUIRE(F->pow(a, n - 1) == 1);
      }
    }
    std::mt19937_64 rng(p);
    for (int i = 0; i < 10000; ++i) {
      const Elem a = rng() % n, b = rng() % n, c = rng() % n;
      REQUIRE(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
      REQUIRE(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
    }
  }
  auto F = gf::field_make(5, 2);
  CHECK_THROWS_AS(F->inv(0), MathError);
}

TEST_CASE("frobenius fixes exactly the prime field") {
  for (auto [p, k] : {std::pair{5ull, 2u}, {7ull, 2u}, {7ull, 4u}, {3ull, 5u}, {2ull, 6u}}) {
    auto F = gf::field_make(p, k);
    std::uint64_t fixed = 0;
    for (Elem a = 0; a < F->size(); ++a) {
      for (Elem b = 0; b < F->size(); b += 1 + F->size() / 50) {
        REQUIRE(F->frobenius(F->add(a, b)) == F->add(F->frobenius(a), F->frobenius(b)));
        REQUIRE(F->frobenius(F->mul(a, b)) == F->mul(F->frobenius(a), F->frobenius(b)));
      }
      REQUIRE(F->frobenius(a) == F->pow(a, p));
      if (F->frobenius(a) == a) ++fixed;
    }
    CHECK(fixed == p);
  }
}

TEST_CASE("element orders") {
  auto F25 = gf::field_make(5, 2);
  CHECK(F25->order(1) == 1);
  CHECK(F25->order(F25->generator()) == 24);
  for (Elem a = 1; a < 25; ++a) {
    std::uint64_t n = 1;
    for (Elem x = a; x != 1; x = F25->mul(x, a)) ++n;
    REQUIRE(F25->order(a) == n);
  }
  CHECK_THROWS_AS(F25->order(0), MathError);
  auto F71 = gf::field_make(71, 2);
  CHECK(F71->order(F71->generator()) == 5040);
  // Table-free route on a field too large for discrete logs.
  auto big = gf::field_make(7, 6);
  CHECK(!big->has_log_table() == (big->size() > gf::Field::kLogTableLimit));
  CHECK((117648 % big->order(big->from_int(3))) == 0);
}

TEST_CASE("m-th root counts") {
  auto F = gf::field_make(5, 2);
  CHECK(gf::count_mth_roots(*F, 0, 7) == 1);
  CHECK(gf::count_mth_roots(*F, 1, 2) == 2);
  for (std::uint64_t m = 1; m <= 30; ++m) {
    std::vector<std::uint64_t> brute(25, 0);
    for (Elem y = 0; y < 25; ++y) ++brute[F->pow(y, m)];
    std::uint64_t total = 0;
    for (Elem c = 0; c < 25; ++c) {
      REQUIRE(gf::count_mth_roots(*F, c, m) == brute[c]);
      total += gf::count_mth_roots(*F, c, m);
    }
    CHECK(total == 25);
  }
  CHECK_THROWS_AS(gf::count_mth_roots(*F, 1, 0), std::invalid_argument);
}

TEST_CASE("norm and trace") {
  auto F = gf::field_make(7, 2);
  std::uint64_t kernel = 0;
  for (Elem a = 0; a < 49; ++a) {
    const auto nt = gf::norm_trace(*F, a, 1);
    REQUIRE(nt.norm == F->pow(a, 8));
    REQUIRE(nt.trace == F->add(a, F->pow(a, 7)));
    REQUIRE(F->in_subfield(nt.norm, 1));
    if (F->add(F->pow(a, 7), a) == 0) ++kernel;
  }
  CHECK(kernel == 7);
  auto F25 = gf::field_make(5, 2);
  for (Elem a = 0; a < 25; ++a) {
    for (Elem b = 0; b < 25; ++b) {
      REQUIRE(gf::norm_trace(*F25, F25->add(a, b), 1).trace ==
              F25->add(gf::norm_trace(*F25, a, 1).trace, gf::norm_trace(*F25, b, 1).trace));
    }
  }
  auto F6 = gf::field_make(3, 6);
  for (Elem a = 0; a < F6->size(); a += 17) {
    const auto nt = gf::norm_trace(*F6, a, 2);
    REQUIRE(F6->in_subfield(nt.norm, 2));
    REQUIRE(F6->in_subfield(nt.trace, 2));
    REQUIRE(nt.norm == F6->pow(a, 1 + 9 + 81));
  }
  CHECK_THROWS_AS(gf::norm_trace(*F6, 1, 4), std::invalid_argument);
}

TEST_CASE("element serialization") {
  auto F = gf::field_make(5, 2);
  const auto e = gf::FieldElement::parse(F, "3+2*t");
  CHECK(e.coeff_list() == std::vector<std::int64_t>{3, 2});
  std::vector<std::int64_t> c{3, 2};
  CHECK(gf::FieldElement::from_json_coeffs(F, c) == e);
  for (Elem a = 0; a < 25; ++a) {
    const gf::FieldElement x(F, a);
    REQUIRE(gf::FieldElement::parse(F, x.to_string()) == x);
  }
  CHECK(gf::FieldElement::parse(F, "2*t^1+3") == e);
  CHECK_THROWS_AS(gf::FieldElement::parse(F, "t^2"), std::invalid_argument);
  CHECK_THROWS_AS(gf::FieldElement::parse(F, "3+*t"), std::invalid_argument);
  const gf::FieldElement other(gf::field_make(7, 2), 3);
  CHECK_THROWS_AS(e + other, std::invalid_argument);
  CHECK_THROWS_AS(e / gf::FieldElement(F, 0), MathError);
}

TEST_CASE("subfield embedding is a ring homomorphism") {
  auto small = gf::field_make(5, 2), big = gf::field_make(5, 6);
  const gf::Embedding emb(small, big);
  std::set<Elem> image;
  for (Elem a = 0; a < 25; ++a) {
    image.insert(emb(a));
    REQUIRE(big->in_subfield(emb(a), 2));
    for (Elem b = 0; b < 25; ++b) {
      REQUIRE(emb(small->add(a, b)) == big->add(emb(a), emb(b)));
      REQUIRE(emb(small->mul(a, b)) == big->mul(emb(a), emb(b)));
    }
  }
  CHECK(image.size() == 25);
}
