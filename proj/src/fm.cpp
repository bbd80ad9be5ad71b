#include "maxcurve/fm.hpp"

#include <stdexcept>

namespace maxcurve::fm {

kummer::EllipticCurve fm_elliptic(std::uint64_t p) { return kummer::EllipticCurve(p, 1, -114, -127); }

FMRecord fm_check(std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("fm_check: p must be prime");
  const std::int64_t disc = kummer::cubic_discriminant(1, -114, -127);
  if (p == 2 || disc % static_cast<std::int64_t>(p) == 0) {
    throw std::invalid_argument("fm_check: bad reduction at p = " + std::to_string(p));
  }
  const auto E = fm_elliptic(p);
  FMRecord r{};
  r.p = p;
  r.mod7 = p % 7;
  r.mod14 = p % 14;
  r.pm1_mod7 = r.mod7 == 1 || r.mod7 == 6;
  r.pm1_mod14 = r.mod14 == 1 || r.mod14 == 13;
  r.count_p = kummer::elliptic_count(E);
  r.trace = static_cast<std::int64_t>(p + 1) - static_cast<std::int64_t>(r.count_p);
  r.count_p2 = kummer::elliptic_count_ext(E);
  const auto pp = static_cast<std::int64_t>(p * p);
  r.predicted = 7 * static_cast<std::int64_t>(r.count_p2) - 6 * pp - 6;
  r.maximal = r.trace == 0;
  return r;
}

std::vector<FMRecord> fm_scan(std::uint64_t limit) {
  std::vector<FMRecord> out;
  for (std::uint64_t p = 3; p <= limit; p += 2) {
    if (p % 14 != 1 && p % 14 != 13) continue;
    if (!is_prime(p)) continue;
    auto r = fm_check(p);
    if (r.maximal) out.push_back(r);
  }
  return out;
}

std::uint64_t fm_plane_affine_count(std::uint64_t p, unsigned threads) {
  if (!is_prime(p)) throw std::invalid_argument("fm_plane_affine_count: p must be prime");
  if (p > kPlaneScanLimit) throw std::invalid_argument("fm_plane_affine_count: p exceeds the scan bound 100");
  auto F = gf::field_make(p, 2);
  std::vector<kummer::Term> terms{{F->from_int(1), 0, 0}, {F->from_int(7), 1, 1},  {F->from_int(21), 2, 2},
                                  {F->from_int(35), 3, 3}, {F->from_int(28), 4, 4}, {F->from_int(2), 7, 0},
                                  {F->from_int(2), 0, 7}};
  std::erase_if(terms, [](const kummer::Term& t) { return t.coeff == 0; });
  return kummer::affine_plane_count(kummer::PlaneModel(F, std::move(terms)), threads);
}

PlaneCrossCheck fm_plane_cross_check(std::uint64_t p, unsigned threads) {
  const auto rec = fm_check(p);
  const auto affine = fm_plane_affine_count(p, threads);
  return {affine, rec.predicted, rec.predicted - static_cast<std::int64_t>(affine)};
}

}  // namespace maxcurve::fm
