#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace maxcurve::maximality {

// q^2 + 1 + 2qg
std::uint64_t hw_max_count(std::uint64_t q, std::uint64_t g);

struct GenusSpectrum {
  std::uint64_t q;
  std::uint64_t g0;  // q(q-1)/2
  std::uint64_t g1;  // floor((q-1)^2/4)
  std::uint64_t g2;  // floor((q^2-q+4)/6)
};
GenusSpectrum genus_spectrum(std::uint64_t q);

enum class SpectrumClass { Top, Second, BelowG2, Forbidden };
SpectrumClass spectrum_classify(std::uint64_t q, std::uint64_t g);
std::string to_string(SpectrumClass c);

// a1 (p-1)/2 + a2 p; throws when a1 (p-1) is odd.
std::uint64_t eq1_genus(std::uint64_t a1, std::uint64_t a2, std::uint64_t p);

struct OrbitData {
  std::uint64_t size;
  std::uint64_t stabilizer;  // must equal group_order / size
  std::uint64_t wild;        // extra different exponent per point beyond stabilizer - 1
};

// |G| (2g'-2) + sum over orbits of size (stab - 1) + size * wild
std::int64_t rh_orbit_eval(std::uint64_t group_order, std::uint64_t quotient_genus,
                           const std::vector<OrbitData>& orbits);

// Inverts the formula above for g' given 2g-2; throws on inexact division or
// negative genus.
std::uint64_t rh_quotient_genus(std::uint64_t genus, std::uint64_t group_order, std::uint64_t different_degree);

bool hurwitz_gate(std::uint64_t aut_order, std::uint64_t g);

// Three sufficient conditions, each implying g > floor((p^2-p+4)/6); 0 when
// none applies, otherwise the index of the first one that holds.
int galois_cover_condition(std::uint64_t a1, std::uint64_t a2, std::uint64_t p);

}  // namespace maxcurve::maximality
