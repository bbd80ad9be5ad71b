#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace maxcurve {

// Raised for violated mathematical preconditions (inexact division, singular
// input, ...). Usage problems surface as std::invalid_argument.
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Factorization = std::vector<std::pair<std::uint64_t, unsigned>>;

bool is_prime(std::uint64_t n);
Factorization factorize(std::uint64_t n);
std::uint64_t ipow(std::uint64_t base, unsigned exp);

}  // namespace maxcurve

namespace maxcurve::gf {

// Elements are packed base-p digit strings: c0 + c1*p + ... + c_{k-1}*p^{k-1}
// where c_i is the coefficient of t^i in F_p[t]/(modulus).
using Elem = std::uint64_t;

class Field {
 public:
  static constexpr std::uint64_t kLogTableLimit = 10'000'000;
  static constexpr unsigned kMaxDegree = 6;

  Field(std::uint64_t p, unsigned k);

  std::uint64_t p() const { return p_; }
  unsigned k() const { return k_; }
  std::uint64_t size() const { return size_; }
  // Monic modulus, little-endian, length k+1.
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }
  bool has_log_table() const { return !exp_.empty(); }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(std::int64_t v) const;
  Elem from_coeffs(std::span<const std::uint64_t> c) const;
  std::array<std::uint64_t, kMaxDegree> coeffs(Elem a) const;
  bool valid(Elem a) const { return a < size_; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  // a^(p^times)
  Elem frobenius(Elem a, unsigned times = 1) const;

  // Least n with a^n = 1.
  std::uint64_t order(Elem a) const;
  // Smallest code whose multiplicative order is size-1.
  Elem generator() const { return gen_; }
  // g^e and discrete log base generator(); log requires the table.
  Elem exp(std::uint64_t e) const;
  std::uint64_t log(Elem a) const;

  const Factorization& unit_factors() const { return unit_factors_; }
  bool in_subfield(Elem a, unsigned d) const;

  std::string to_string(Elem a) const;

 private:
  Elem mul_generic(Elem a, Elem b) const;

  std::uint64_t p_;
  unsigned k_;
  std::uint64_t size_;
  std::vector<std::uint64_t> modulus_;
  std::array<std::uint64_t, kMaxDegree + 1> ppow_{};
  Factorization unit_factors_;
  Elem gen_ = 1;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

using FieldPtr = std::shared_ptr<const Field>;

// Lexicographically least monic irreducible modulus (highest coefficient
// compared first), so serialized elements are reproducible.
FieldPtr field_make(std::uint64_t p, unsigned k);

// Irreducibility over F_p of a monic polynomial given little-endian.
bool is_irreducible_mod_p(std::span<const std::uint64_t> f, std::uint64_t p);

// #{y : y^m = c}
std::uint64_t count_mth_roots(const Field& F, Elem c, std::uint64_t m);

struct NormTrace {
  Elem norm;
  Elem trace;
};
NormTrace norm_trace(const Field& F, Elem a, unsigned subfield_degree);

// Value type pairing an element with its field, for user-facing arithmetic.
class FieldElement {
 public:
  FieldElement(FieldPtr field, Elem v);
  static FieldElement from_json_coeffs(FieldPtr field, std::span<const std::int64_t> c);
  static FieldElement parse(FieldPtr field, const std::string& text);

  const FieldPtr& field() const { return field_; }
  Elem value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement pow(std::uint64_t e) const;
  FieldElement inverse() const;
  bool operator==(const FieldElement& o) const;

  std::uint64_t order() const;
  std::vector<std::int64_t> coeff_list() const;
  std::string to_string() const;

 private:
  const Field& checked(const FieldElement& o) const;
  FieldPtr field_;
  Elem v_;
};

// Image of a subfield inside a larger field, fixed by the least root of the
// small modulus.
class Embedding {
 public:
  Embedding(FieldPtr small, FieldPtr big);
  Elem operator()(Elem a) const;
  const Field& small() const { return *small_; }
  const Field& big() const { return *big_; }

 private:
  FieldPtr small_;
  FieldPtr big_;
  std::vector<Elem> basis_;
  std::vector<Elem> table_;
};

}  // namespace maxcurve::gf
