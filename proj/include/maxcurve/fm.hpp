#pragma once

#include <cstdint>
#include <vector>

#include "maxcurve/kummer.hpp"

// Genus-7 curve with automorphism group PSL(2,8), handled through the
// elliptic curve y^2 = x^3 + x^2 - 114x - 127 that it covers 7-to-1.
namespace maxcurve::fm {

inline constexpr std::uint64_t kGenus = 7;
inline constexpr std::uint64_t kAutOrder = 504;

kummer::EllipticCurve fm_elliptic(std::uint64_t p);

struct FMRecord {
  std::uint64_t p;
  std::uint64_t mod7;
  std::uint64_t mod14;
  bool pm1_mod7;   // p = +-1 mod 7
  bool pm1_mod14;  // p = +-1 mod 14
  std::uint64_t count_p;    // |E(F_p)|
  std::int64_t trace;
  std::uint64_t count_p2;   // |E(F_{p^2})|
  std::int64_t predicted;   // 7 |E(F_{p^2})| - 6p^2 - 6
  bool maximal;             // trace == 0
};

// Throws for non-primes and for 2 and 7 (bad reduction).
FMRecord fm_check(std::uint64_t p);
// Primes p <= limit with p = +-1 mod 14 and trace 0.
std::vector<FMRecord> fm_scan(std::uint64_t limit);

inline constexpr std::uint64_t kPlaneScanLimit = 100;

// Affine zeros over F_{p^2} of the singular plane model
// 1 + 7xy + 21x^2y^2 + 35x^3y^3 + 28x^4y^4 + 2x^7 + 2y^7, p <= 100.
std::uint64_t fm_plane_affine_count(std::uint64_t p, unsigned threads = 1);

struct PlaneCrossCheck {
  std::uint64_t affine;
  std::int64_t predicted;
  std::int64_t correction;  // predicted - affine; not explained by this code
};
PlaneCrossCheck fm_plane_cross_check(std::uint64_t p, unsigned threads = 1);

}  // namespace maxcurve::fm
