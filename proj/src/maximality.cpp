#include "maxcurve/maximality.hpp"

#include <stdexcept>

#include "maxcurve/gf.hpp"

namespace maxcurve::maximality {

std::uint64_t hw_max_count(std::uint64_t q, std::uint64_t g) { return q * q + 1 + 2 * q * g; }

GenusSpectrum genus_spectrum(std::uint64_t q) {
  if (q < 2) throw std::invalid_argument("genus_spectrum: q must be at least 2");
  return {q, q * (q - 1) / 2, (q - 1) * (q - 1) / 4, (q * q - q + 4) / 6};
}

SpectrumClass spectrum_classify(std::uint64_t q, std::uint64_t g) {
  const auto s = genus_spectrum(q);
  if (g == s.g0) return SpectrumClass::Top;
  if (g == s.g1) return SpectrumClass::Second;
  if (g <= s.g2) return SpectrumClass::BelowG2;
  return SpectrumClass::Forbidden;
}

std::string to_string(SpectrumClass c) {
  switch (c) {
    case SpectrumClass::Top: return "top";
    case SpectrumClass::Second: return "second";
    case SpectrumClass::BelowG2: return "below_g2";
    case SpectrumClass::Forbidden: return "forbidden";
  }
  return "?";
}

std::uint64_t eq1_genus(std::uint64_t a1, std::uint64_t a2, std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("eq1_genus: p must be prime");
  if ((a1 * (p - 1)) % 2 != 0) throw MathError("eq1_genus: a1 (p-1) is odd");
  return a1 * (p - 1) / 2 + a2 * p;
}

std::int64_t rh_orbit_eval(std::uint64_t group_order, std::uint64_t quotient_genus,
                           const std::vector<OrbitData>& orbits) {
  if (group_order == 0) throw std::invalid_argument("rh_orbit_eval: empty group");
  const auto n = static_cast<std::int64_t>(group_order);
  std::int64_t v = n * (2 * static_cast<std::int64_t>(quotient_genus) - 2);
  for (const auto& o : orbits) {
    if (o.size == 0 || group_order % o.size != 0) {
      throw MathError("rh_orbit_eval: orbit size does not divide the group order");
    }
    if (o.stabilizer * o.size != group_order) {
      throw MathError("rh_orbit_eval: stabilizer order inconsistent with orbit size");
    }
    v += static_cast<std::int64_t>(o.size) * (static_cast<std::int64_t>(o.stabilizer) - 1) +
         static_cast<std::int64_t>(o.size * o.wild);
  }
  return v;
}

std::uint64_t rh_quotient_genus(std::uint64_t genus, std::uint64_t group_order, std::uint64_t different_degree) {
  if (group_order == 0) throw std::invalid_argument("rh_quotient_genus: empty group");
  const std::int64_t lhs = 2 * static_cast<std::int64_t>(genus) - 2 - static_cast<std::int64_t>(different_degree);
  const auto n = static_cast<std::int64_t>(group_order);
  if (lhs % n != 0) throw MathError("quotient genus: 2g-2-deg(Diff) not divisible by |G|");
  const std::int64_t twice = lhs / n + 2;
  if (twice % 2 != 0) throw MathError("quotient genus: odd Euler characteristic");
  if (twice < 0) throw MathError("quotient genus: negative");
  return static_cast<std::uint64_t>(twice / 2);
}

bool hurwitz_gate(std::uint64_t aut_order, std::uint64_t g) {
  if (g < 2) throw std::invalid_argument("hurwitz_gate: requires g >= 2");
  return aut_order > 84 * (g - 1);
}

int galois_cover_condition(std::uint64_t a1, std::uint64_t a2, std::uint64_t p) {
  const std::uint64_t top = p * p - p + 4;
  if (a1 > top / (3 * (p - 1))) return 1;
  const std::uint64_t a2_bound = top / (6 * p);
  if (a2 > a2_bound) return 2;
  if (2 * (a1 + a2) >= p - 1) return 3;  // a2 <= a2_bound holds here
  return 0;
}

}  // namespace maxcurve::maximality
