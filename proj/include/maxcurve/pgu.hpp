#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "maxcurve/gf.hpp"

namespace maxcurve::pgu {

using gf::Elem;
using gf::Field;
using gf::FieldPtr;

using Mat3 = std::array<Elem, 9>;  // row-major
using Vec3 = std::array<Elem, 3>;

Mat3 mat_identity();
Mat3 mat_diag(Elem a, Elem b, Elem c);
Mat3 mat_mul(const Field& F, const Mat3& A, const Mat3& B);
Vec3 mat_apply(const Field& F, const Mat3& A, const Vec3& v);
Elem mat_det(const Field& F, const Mat3& A);
Mat3 mat_inverse(const Field& F, const Mat3& A);  // throws on singular input
Mat3 mat_pow(const Field& F, Mat3 A, std::uint64_t e);
Mat3 mat_scale(const Field& F, const Mat3& A, Elem c);
bool mat_is_scalar(const Mat3& A);
// Scale so that the first nonzero entry (row-major) is 1.
Mat3 canonical(const Field& F, const Mat3& A);
Mat3 mat_map(const Mat3& A, const gf::Embedding& emb);

struct GroupOrder {
  std::uint64_t value;
  Factorization factors;
};
// q^3 (q^3+1)(q^2-1)
GroupOrder pgu_order(std::uint64_t q);

enum class Model { Fermat, Alternate };

// Hermitian curve as the isotropic points of h(v, w) = sum H_ij v_i^q w_j.
// Fermat: H = I, curve x^{q+1}+y^{q+1}+z^{q+1} = 0.
// Alternate: curve x^q z + x z^q = y^{q+1}.
class HermitianGeometry {
 public:
  HermitianGeometry(std::uint64_t q, Model model = Model::Fermat);

  std::uint64_t q() const { return q_; }
  Model model() const { return model_; }
  const Field& f2() const { return *f2_; }
  const FieldPtr& f2_ptr() const { return f2_; }
  const Field& f6() const { return *f6_; }
  const gf::Embedding& embed() const { return *emb_; }
  const Mat3& form() const { return H_; }
  // B with B^{*T} H B = I
  const Mat3& orthonormal_basis() const { return B_; }
  // The same for the alternate form, kept for transporting canned elements.
  const Mat3& alternate_basis() const { return B_alt_; }

  Elem conj(Elem a) const { return f2_->pow(a, q_); }
  Mat3 conj_transpose(const Mat3& A) const;
  // h(v, w) over F_{q^2}
  Elem hermitian(const Vec3& v, const Vec3& w) const;
  // The curve polynomial evaluated over F_{q^6}.
  Elem curve_value6(const Vec3& v) const;
  bool is_unitary(const Mat3& M) const;
  std::uint64_t isotropic_count() const;

  // F_{q^2} element a with a^{q+1} = nu for nu in F_q^*
  Elem norm_preimage(Elem nu) const;
  // The q+1 elements of norm 1.
  const std::vector<Elem>& norm_one() const { return norm_one_; }

 private:
  std::uint64_t q_;
  Model model_;
  FieldPtr f2_;
  FieldPtr f6_;
  std::shared_ptr<const gf::Embedding> emb_;
  Mat3 H_;
  Mat3 H6_;
  Mat3 B_;
  Mat3 B_alt_;
  std::vector<Elem> norm_one_;
};

// Least n >= 1 with M^n scalar.
std::uint64_t projective_order(const HermitianGeometry& G, const Mat3& M);

enum class ElementType {
  Identity,
  Homology,
  TameTriangleB1,
  TameTriangleB2,
  SingerB3,
  Elation,
  NonElationUnipotent,
  MixedPd
};
std::string to_string(ElementType t);

// Projective point, first nonzero coordinate 1. coords are over F_{q^6};
// rational points also keep their F_{q^2} coordinates.
struct FixedPoint {
  Vec3 coords;
  std::optional<Vec3> rational_coords;
  bool on_curve;
  bool rational() const { return rational_coords.has_value(); }
};

struct FixedLocus {
  std::vector<FixedPoint> isolated;
  bool has_axis = false;  // a line of fixed points
  std::vector<FixedPoint> axis_curve_points;
  std::vector<FixedPoint> curve_points() const;
};

FixedLocus fixed_points(const HermitianGeometry& G, const Mat3& M);

struct Classification {
  ElementType type;
  std::uint64_t order;
  FixedLocus locus;
};
Classification classify(const HermitianGeometry& G, const Mat3& M);

std::uint64_t contribution_table(ElementType t, std::uint64_t q);

class PrecisionExhausted : public MathError {
 public:
  using MathError::MathError;
};

// Valuation of sigma(t) - t at a fixed curve point P, from a truncated
// power-series branch; doubles the precision up to max_precision.
unsigned local_valuation(const HermitianGeometry& G, const Mat3& M, const FixedPoint& P, unsigned max_precision);
std::uint64_t contribution_valuation(const HermitianGeometry& G, const Mat3& M);

struct ContributionReport {
  Mat3 element;
  ElementType type;
  std::uint64_t order;
  std::uint64_t i_table;
  std::uint64_t i_valuation;
  bool agree;
};
ContributionReport compare_contributions(const HermitianGeometry& G, const Mat3& M);

struct DifferentResult {
  std::uint64_t different_degree;
  std::uint64_t quotient_genus;
};
// Elements: the full list of a closed subgroup, identity included.
DifferentResult subgroup_different(const HermitianGeometry& G, std::span<const Mat3> elements);

std::uint64_t hermitian_genus(std::uint64_t q);

// Canned generator sets; all returned matrices are canonical.
std::vector<Mat3> diagonal_cyclic(const HermitianGeometry& G, std::uint64_t d);
std::vector<Mat3> torus_cyclic(const HermitianGeometry& G);  // order q^2-1
std::vector<Mat3> elation_group(const HermitianGeometry& G);
std::vector<Mat3> nonelation_cyclic(const HermitianGeometry& G);
std::vector<Mat3> mixed_cyclic(const HermitianGeometry& G);  // order 2p
std::vector<Mat3> sylow_p(const HermitianGeometry& G);
std::vector<Mat3> triangle_stabilizer(const HermitianGeometry& G);
// Seeded search for an element of order q^2-q+1.
std::vector<Mat3> singer_cyclic(const HermitianGeometry& G, std::uint64_t seed);

// Uniform random element of PGU(3,q) in the geometry's coordinates.
Mat3 random_unitary(const HermitianGeometry& G, std::mt19937_64& rng);

// Rewrite an element given in the coordinates of model `from` into G's.
Mat3 transport(const HermitianGeometry& G, const Mat3& M, Model from);

std::vector<std::string> serialize(const Field& F, const Mat3& M);

}  // namespace maxcurve::pgu
