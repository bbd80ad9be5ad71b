#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "maxcurve/gf.hpp"
#include "maxcurve/poly.hpp"

namespace maxcurve::kummer {

using gf::Elem;
using gf::Field;
using gf::FieldPtr;
using poly::Poly;

// y^m = f(x) over the base field.
class KummerCurve {
 public:
  KummerCurve(FieldPtr base, std::uint64_t m, Poly f);

  const Field& field() const { return *base_; }
  const FieldPtr& field_ptr() const { return base_; }
  std::uint64_t m() const { return m_; }
  const Poly& f() const { return f_; }

 private:
  FieldPtr base_;
  std::uint64_t m_;
  Poly f_;
};

struct ZeroBundle {
  Poly factor;                // monic irreducible factor of f
  unsigned degree;            // its degree: number of conjugate roots
  unsigned multiplicity;
  std::optional<Elem> root;   // set when degree == 1
};

std::vector<ZeroBundle> multiplicity_profile(const Field& F, const Poly& f);

std::uint64_t kummer_genus(const KummerCurve& C);

// Rational places above x = a where f = (x-a)^r h, h(a) = h_at. The same
// rule serves infinity with r = deg f and h_at = leading coefficient.
std::uint64_t branch_rule_count(const Field& F, std::uint64_t m, std::uint64_t r, Elem h_at);
// Independent check: chain of monomial blow-ups on A^m = B^r h, then a scan
// of the exceptional fiber over the whole field.
std::uint64_t branch_oracle_count(const Field& F, std::uint64_t m, std::uint64_t r, Elem h_at);

struct BranchRecord {
  std::optional<Elem> point;  // empty for infinity
  std::uint64_t multiplicity;
  Elem h_at;
  std::uint64_t rule;
  std::uint64_t oracle;
};

struct PlaceBreakdown {
  std::uint64_t unramified = 0;  // above a with f(a) != 0
  std::uint64_t above_zeros = 0;
  std::uint64_t above_infinity = 0;
  std::vector<BranchRecord> branches;
  std::uint64_t total() const { return unramified + above_zeros + above_infinity; }
};

PlaceBreakdown place_breakdown(const KummerCurve& C, unsigned threads = 1);
std::uint64_t kummer_place_count(const KummerCurve& C, unsigned threads = 1);

struct Term {
  Elem coeff;
  unsigned x_exp;
  unsigned y_exp;
};

class PlaneModel {
 public:
  PlaneModel(FieldPtr base, std::vector<Term> terms);
  const Field& field() const { return *base_; }
  const std::vector<Term>& terms() const { return terms_; }
  Elem eval(Elem x, Elem y) const;

 private:
  FieldPtr base_;
  std::vector<Term> terms_;
};

std::uint64_t affine_plane_count(const PlaneModel& M, unsigned threads = 1);

// y^2 = x^3 + a2 x^2 + a4 x + a6 over F_p, p odd.
class EllipticCurve {
 public:
  EllipticCurve(std::uint64_t p, std::int64_t a2, std::int64_t a4, std::int64_t a6);
  static EllipticCurve short_form(std::uint64_t p, std::int64_t A, std::int64_t B) {
    return EllipticCurve(p, 0, A, B);
  }
  std::uint64_t p() const { return p_; }
  std::uint64_t rhs(std::uint64_t x) const;
  // Discriminant of the cubic, reduced mod p.
  std::uint64_t discriminant() const;

 private:
  std::uint64_t p_;
  std::uint64_t a2_, a4_, a6_;
};

// Discriminant of x^3 + a2 x^2 + a4 x + a6 over the integers.
std::int64_t cubic_discriminant(std::int64_t a2, std::int64_t a4, std::int64_t a6);

std::uint64_t elliptic_count(const EllipticCurve& E);
std::int64_t elliptic_trace(const EllipticCurve& E);
std::uint64_t elliptic_count_ext(const EllipticCurve& E);

}  // namespace maxcurve::kummer
