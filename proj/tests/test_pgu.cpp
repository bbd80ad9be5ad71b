#include <random>
#include <set>

#include "doctest.h"
#include "maxcurve/pgu.hpp"
#include "support.hpp"

using namespace maxcurve;
using namespace maxcurve::pgu;
using maxcurve::testing::closed_elements;
using maxcurve::testing::unitary_closure;

namespace {

std::shared_ptr<const HermitianGeometry> geometry(std::uint64_t q, Model model = Model::Fermat) {
  return std::make_shared<const HermitianGeometry>(q, model);
}

Mat3 conjugate(const Field& F, const Mat3& tau, const Mat3& sigma) {
  return canonical(F, mat_mul(F, mat_mul(F, tau, sigma), mat_inverse(F, tau)));
}

// Closure of random unitary matrices taken modulo scalars.
std::uint64_t brute_group_order(std::uint64_t q, unsigned gens) {
  auto G = geometry(q);
  std::mt19937_64 rng(q);
  std::vector<Mat3> g;
  for (unsigned i = 0; i < gens; ++i) g.push_back(random_unitary(*G, rng));
  return unitary_closure(G, g).size();
}

}  // namespace

TEST_CASE("group order") {
  CHECK(pgu_order(2).value == 216);
  CHECK(pgu_order(3).value == 6048);
  CHECK(brute_group_order(2, 4) == 216);
  CHECK(brute_group_order(3, 4) == 6048);
  const auto big = pgu_order(71);
  CHECK(big.value == 357911ull * 357912ull * 5040ull);
  const Factorization expect{{2, 7}, {3, 5}, {5, 1}, {7, 1}, {71, 3}, {1657, 1}};
  CHECK(big.factors == expect);
}

TEST_CASE("isotropic point counts") {
  for (std::uint64_t q : {2, 3, 5, 7}) {
    CHECK(geometry(q)->isotropic_count() == q * q * q + 1);
    CHECK(geometry(q, Model::Alternate)->isotropic_count() == q * q * q + 1);
  }
  CHECK(geometry(71)->isotropic_count() == 357912);
}

TEST_CASE("unitarity and projective order") {
  auto G = geometry(7);
  const auto& F = G->f2();
  CHECK(G->is_unitary(mat_identity()));
  CHECK(projective_order(*G, mat_identity()) == 1);
  std::mt19937_64 rng(3);
  int rejected = 0;
  for (int i = 0; i < 200; ++i) {
    Mat3 M;
    for (auto& e : M) e = rng() % F.size();
    if (mat_det(F, M) == 0) continue;
    rejected += !G->is_unitary(M);
  }
  CHECK(rejected > 190);
  CHECK_THROWS_AS(G->is_unitary(Mat3{}), MathError);
  // Generator of F_{71^2}^* in the alternate model.
  auto A = geometry(71, Model::Alternate);
  const auto& F71 = A->f2();
  const Elem xi = F71.generator();
  const Mat3 D = mat_diag(F71.pow(xi, 72), xi, 1);
  CHECK(A->is_unitary(D));
  CHECK(projective_order(*A, D) == 5040);
}

TEST_CASE("fixed points and classification") {
  auto G = geometry(7);
  const auto& F = G->f2();
  const Elem minus_one = F.from_int(-1);
  SUBCASE("homology") {
    for (Elem a : G->norm_one()) {
      if (a == 1) continue;
      const Mat3 M = mat_diag(a, 1, 1);
      const auto c = classify(*G, M);
      CHECK(c.type == ElementType::Homology);
      CHECK(c.locus.has_axis);
      CHECK(c.locus.isolated.size() == 1);
      CHECK(c.locus.axis_curve_points.size() == 8);
      CHECK(contribution_table(c.type, 7) == 8);
    }
    CHECK(classify(*G, mat_diag(minus_one, 1, 1)).type == ElementType::Homology);
  }
  SUBCASE("tame triangle off the curve") {
    const auto& units = G->norm_one();
    const Mat3 M = mat_diag(units[1], units[2], 1);
    REQUIRE(units[1] != units[2]);
    const auto c = classify(*G, M);
    CHECK(c.type == ElementType::TameTriangleB1);
    CHECK(c.locus.isolated.size() == 3);
    CHECK(c.locus.curve_points().empty());
    CHECK(contribution_table(c.type, 7) == 0);
    CHECK(contribution_valuation(*G, M) == 0);
  }
  SUBCASE("elation") {
    const auto gens = elation_group(*G);
    REQUIRE(!gens.empty());
    const auto c = classify(*G, gens[0]);
    CHECK(c.type == ElementType::Elation);
    CHECK(c.order == 7);
    const auto pts = c.locus.curve_points();
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].rational());
    CHECK(local_valuation(*G, gens[0], pts[0], 64) == 9);
    CHECK_THROWS_AS(local_valuation(*G, gens[0], pts[0], 2), PrecisionExhausted);
  }
  SUBCASE("non-elation unipotent") {
    const auto gens = nonelation_cyclic(*G);
    const auto c = classify(*G, gens[0]);
    CHECK(c.type == ElementType::NonElationUnipotent);
    CHECK(contribution_valuation(*G, gens[0]) == 2);
  }
  SUBCASE("singer") {
    const auto gens = singer_cyclic(*G, 0);
    const auto c = classify(*G, gens[0]);
    CHECK(c.order == 43);
    CHECK(c.type == ElementType::SingerB3);
    const auto pts = c.locus.curve_points();
    CHECK(pts.size() == 3);
    for (const auto& P : pts) CHECK_FALSE(P.rational());
    CHECK(contribution_valuation(*G, gens[0]) == 3);
  }
  SUBCASE("mixed order 2p") {
    const auto gens = mixed_cyclic(*G);
    const auto c = classify(*G, gens[0]);
    CHECK(c.order == 14);
    CHECK(c.type == ElementType::MixedPd);
    CHECK(contribution_valuation(*G, gens[0]) == 1);
  }
  CHECK_THROWS_AS(fixed_points(*G, mat_identity()), std::invalid_argument);
}

TEST_CASE("contribution table values") {
  CHECK(contribution_table(ElementType::TameTriangleB1, 71) == 0);
  CHECK(contribution_table(ElementType::Elation, 71) == 73);
  CHECK(contribution_table(ElementType::Homology, 71) == 72);
  CHECK(contribution_table(ElementType::NonElationUnipotent, 71) == 2);
  CHECK(contribution_table(ElementType::MixedPd, 71) == 1);
  CHECK(contribution_table(ElementType::SingerB3, 5) == 3);
  CHECK(contribution_table(ElementType::TameTriangleB2, 71) == 2);
  CHECK_THROWS_AS(contribution_table(ElementType::Identity, 5), std::invalid_argument);
}

TEST_CASE("table and valuation routes agree on canned subgroups") {
  for (std::uint64_t q : {3, 5}) {
    auto G = geometry(q);
    std::vector<std::vector<Mat3>> groups{diagonal_cyclic(*G, q + 1), torus_cyclic(*G), elation_group(*G),
                                          nonelation_cyclic(*G), mixed_cyclic(*G), singer_cyclic(*G, 0),
                                          triangle_stabilizer(*G)};
    for (const auto& gens : groups) {
      for (const auto& M : closed_elements(G, gens)) {
        if (mat_is_scalar(M)) continue;
        const auto rep = compare_contributions(*G, M);
        CAPTURE(q);
        CAPTURE(to_string(rep.type));
        REQUIRE(rep.agree);
        REQUIRE(rep.i_table == rep.i_valuation);
      }
    }
  }
}

TEST_CASE("classification is conjugation invariant") {
  for (std::uint64_t q : {3, 5, 7}) {
    auto G = geometry(q);
    const auto& F = G->f2();
    std::mt19937_64 rng(100 + q);
    for (int i = 0; i < 150; ++i) {
      const Mat3 sigma = random_unitary(*G, rng);
      if (mat_is_scalar(sigma)) continue;
      const Mat3 tau = random_unitary(*G, rng);
      const Mat3 conj = conjugate(F, tau, sigma);
      const auto a = classify(*G, sigma), b = classify(*G, conj);
      REQUIRE(a.type == b.type);
      REQUIRE(a.order == b.order);
      REQUIRE(contribution_table(a.type, q) == contribution_table(b.type, q));
      REQUIRE(a.locus.curve_points().size() == b.locus.curve_points().size());
    }
  }
}

TEST_CASE("quotient genera") {
  auto G7 = geometry(7);
  CHECK(subgroup_different(*G7, closed_elements(G7, diagonal_cyclic(*G7, 4))).quotient_genus == 3);
  const auto el = subgroup_different(*G7, closed_elements(G7, elation_group(*G7)));
  CHECK(el.quotient_genus == 0);
  CHECK(el.different_degree == 6 * 9);
  const auto ne = subgroup_different(*G7, closed_elements(G7, nonelation_cyclic(*G7)));
  CHECK(ne.quotient_genus == 3);
  CHECK(ne.different_degree == 6 * 2);
  // Order-3 subgroup of a Singer group of order 21 on H_6.
  auto G5 = geometry(5);
  const auto singer = singer_cyclic(*G5, 0).at(0);
  CHECK(projective_order(*G5, singer) == 21);
  const Mat3 s3 = canonical(G5->f2(), mat_pow(G5->f2(), singer, 7));
  const auto z = subgroup_different(*G5, closed_elements(G5, {s3}));
  CHECK(z.different_degree == 6);
  CHECK(z.quotient_genus == 3);
  CHECK_THROWS_AS(subgroup_different(*G5, std::vector<Mat3>{}), std::invalid_argument);
}

TEST_CASE("random closed subgroups satisfy riemann-hurwitz") {
  int tested = 0;
  for (std::uint64_t q : {3, 5, 7}) {
    auto G = geometry(q);
    const auto& F = G->f2();
    std::mt19937_64 rng(7 * q);
    const std::vector<std::vector<Mat3>> pools{diagonal_cyclic(*G, q + 1), triangle_stabilizer(*G), sylow_p(*G),
                                               torus_cyclic(*G), singer_cyclic(*G, 1)};
    for (int i = 0; i < 34; ++i) {
      std::vector<Mat3> gens;
      if (i % 3 == 0) {
        gens.push_back(random_unitary(*G, rng));
      } else {
        // One or two random members of a canned group, moved by a random conjugation.
        const auto members = closed_elements(G, pools[rng() % pools.size()]);
        const Mat3 tau = random_unitary(*G, rng);
        for (int j = 0; j < 1 + i % 2; ++j) gens.push_back(conjugate(F, tau, members[rng() % members.size()]));
      }
      const auto elems = closed_elements(G, gens);
      DifferentResult r{};
      REQUIRE_NOTHROW(r = subgroup_different(*G, elems));
      const std::int64_t lhs = 2 * static_cast<std::int64_t>(hermitian_genus(q)) - 2;
      const std::int64_t rhs = static_cast<std::int64_t>(elems.size()) * (2 * static_cast<std::int64_t>(r.quotient_genus) - 2) +
                               static_cast<std::int64_t>(r.different_degree);
      REQUIRE(lhs == rhs);
      ++tested;
    }
  }
  CHECK(tested == 102);
}

TEST_CASE("canned generators") {
  auto G = geometry(5);
  const auto d = diagonal_cyclic(*G, 6);
  REQUIRE(d.size() == 1);
  CHECK(serialize(G->f2(), d[0]) == std::vector<std::string>{"1", "0", "0", "0", "3+4*t", "0", "0", "0", "3+4*t"});
  CHECK(closed_elements(G, d).size() == 6);
  CHECK(closed_elements(G, torus_cyclic(*G)).size() == 24);
  CHECK(closed_elements(G, sylow_p(*G)).size() == 125);
  CHECK(closed_elements(G, triangle_stabilizer(*G)).size() == 36);
  CHECK(closed_elements(G, elation_group(*G)).size() == 5);
  CHECK_THROWS_AS(diagonal_cyclic(*G, 4), std::invalid_argument);
  CHECK_THROWS_AS(HermitianGeometry(4), std::invalid_argument);
  // Seeded search is reproducible.
  CHECK(singer_cyclic(*G, 3) == singer_cyclic(*G, 3));
  // Alternate-model elements carried over to the Fermat model stay unitary.
  auto A = geometry(5, Model::Alternate);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) CHECK(G->is_unitary(transport(*G, random_unitary(*A, rng), Model::Alternate)));
}
