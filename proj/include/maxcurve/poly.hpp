#pragma once

#include <cstdint>
#include <vector>

#include "maxcurve/gf.hpp"

// Dense univariate polynomials over a gf::Field, little-endian coefficients.
namespace maxcurve::poly {

using gf::Elem;
using gf::Field;
using Poly = std::vector<Elem>;

void trim(Poly& f);
int degree(const Poly& f);  // -1 for the zero polynomial
bool is_zero(const Poly& f);
Elem lead(const Poly& f);
Poly monic(const Field& F, const Poly& f);
Poly x_minus(const Field& F, Elem a);

Poly add(const Field& F, const Poly& a, const Poly& b);
Poly sub(const Field& F, const Poly& a, const Poly& b);
Poly mul(const Field& F, const Poly& a, const Poly& b);
Poly scale(const Field& F, const Poly& a, Elem c);
void divmod(const Field& F, const Poly& a, const Poly& b, Poly& q, Poly& r);
Poly rem(const Field& F, const Poly& a, const Poly& b);
Poly quot(const Field& F, const Poly& a, const Poly& b);  // exact division
Poly gcd(const Field& F, Poly a, Poly b);                 // monic
Poly powmod(const Field& F, Poly base, std::uint64_t e, const Poly& mod);
Poly derivative(const Field& F, const Poly& f);
Elem eval(const Field& F, const Poly& f, Elem x);

struct FactorPower {
  Poly factor;  // monic irreducible
  unsigned multiplicity;
};

// Monic irreducible factorization; deterministic ordering by (degree,
// multiplicity, coefficients).
std::vector<FactorPower> factor(const Field& F, const Poly& f);

// Distinct roots in F, ascending by code.
std::vector<Elem> roots(const Field& F, const Poly& f);

}  // namespace maxcurve::poly
