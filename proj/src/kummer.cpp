#include "maxcurve/kummer.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "maxcurve/parallel.hpp"

namespace maxcurve {

unsigned default_threads() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

}  // namespace maxcurve

namespace maxcurve::kummer {

KummerCurve::KummerCurve(FieldPtr base, std::uint64_t m, Poly f)
    : base_(std::move(base)), m_(m), f_(std::move(f)) {
  poly::trim(f_);
  if (m_ < 2) throw std::invalid_argument("kummer: exponent must be at least 2");
  if (m_ % base_->p() == 0) throw std::invalid_argument("kummer: p divides m (wild cover not supported)");
  if (f_.empty()) throw std::invalid_argument("kummer: f is zero");
  if (poly::degree(f_) < 1) throw std::invalid_argument("kummer: f is constant");
  std::uint64_t g = m_;
  for (const auto& z : multiplicity_profile(*base_, f_)) g = std::gcd<std::uint64_t>(g, z.multiplicity);
  if (g != 1) {
    throw std::invalid_argument("kummer: f is a " + std::to_string(g) + "-th power, curve is reducible");
  }
}

std::vector<ZeroBundle> multiplicity_profile(const Field& F, const Poly& f) {
  std::vector<ZeroBundle> out;
  for (auto& fp : poly::factor(F, f)) {
    ZeroBundle z{fp.factor, static_cast<unsigned>(poly::degree(fp.factor)), fp.multiplicity, std::nullopt};
    if (z.degree == 1) z.root = F.neg(fp.factor[0]);
    out.push_back(std::move(z));
  }
  return out;
}

std::uint64_t kummer_genus(const KummerCurve& C) {
  const auto m = static_cast<std::int64_t>(C.m());
  std::int64_t twice = -2 * m;
  for (const auto& z : multiplicity_profile(C.field(), C.f())) {
    twice += static_cast<std::int64_t>(z.degree) *
             (m - static_cast<std::int64_t>(std::gcd<std::uint64_t>(C.m(), z.multiplicity)));
  }
  const auto n = static_cast<std::uint64_t>(poly::degree(C.f()));
  if (n % C.m() != 0) twice += m - static_cast<std::int64_t>(std::gcd(C.m(), n));
  twice += 2;
  if (twice < 0 || twice % 2 != 0) throw MathError("kummer_genus: inconsistent ramification data");
  return static_cast<std::uint64_t>(twice / 2);
}

// Calibrated against branch_oracle_count; see tests.
constexpr std::uint64_t kBranchExponent = 1;

std::uint64_t branch_rule_count(const Field& F, std::uint64_t m, std::uint64_t r, Elem h_at) {
  if (h_at == 0) throw MathError("branch rule: h must not vanish at the point");
  const std::uint64_t d = std::gcd(m, r);
  return gf::count_mth_roots(F, F.pow(h_at, kBranchExponent), d);
}

std::uint64_t branch_oracle_count(const Field& F, std::uint64_t m, std::uint64_t r, Elem h_at) {
  if (h_at == 0) throw MathError("branch oracle: h must not vanish at the point");
  // Local equation A^alpha = B^beta * h with h a unit at the origin.
  std::uint64_t alpha = m, beta = r;
  while (beta != 0) {
    if (beta >= alpha) {
      beta -= alpha;  // A = B*A'
    } else {
      alpha -= beta;  // B = A*B'; the exceptional curve meets the strict transform only at the origin
    }
  }
  // Exceptional fiber: A^alpha = h(origin).
  std::uint64_t count = 0;
  for (Elem z = 0; z < F.size(); ++z) {
    if (F.pow(z, alpha) == h_at) ++count;
  }
  return count;
}

PlaceBreakdown place_breakdown(const KummerCurve& C, unsigned threads) {
  const Field& F = C.field();
  const Poly& f = C.f();
  PlaceBreakdown out;
  out.unramified = parallel_sum(F.size(), threads, [&](std::uint64_t a) -> std::uint64_t {
    const Elem v = poly::eval(F, f, a);
    return v == 0 ? 0 : gf::count_mth_roots(F, v, C.m());
  });
  for (const auto& z : multiplicity_profile(F, f)) {
    if (!z.root) continue;
    Poly h = f;
    for (unsigned i = 0; i < z.multiplicity; ++i) h = poly::quot(F, h, z.factor);
    const Elem h_at = poly::eval(F, h, *z.root);
    BranchRecord b{z.root, z.multiplicity, h_at, branch_rule_count(F, C.m(), z.multiplicity, h_at),
                   branch_oracle_count(F, C.m(), z.multiplicity, h_at)};
    out.above_zeros += b.rule;
    out.branches.push_back(b);
  }
  const auto n = static_cast<std::uint64_t>(poly::degree(f));
  const Elem lc = poly::lead(f);
  // At infinity y^m = s^(-n) * h(s) with h(0) = lc; inverting y gives the
  // standard chart with h(0) = 1/lc, which the oracle scans.
  BranchRecord inf{std::nullopt, n, lc, branch_rule_count(F, C.m(), n, lc),
                   branch_oracle_count(F, C.m(), n, F.inv(lc))};
  out.above_infinity = inf.rule;
  out.branches.push_back(inf);
  return out;
}

std::uint64_t kummer_place_count(const KummerCurve& C, unsigned threads) {
  return place_breakdown(C, threads).total();
}

PlaneModel::PlaneModel(FieldPtr base, std::vector<Term> terms) : base_(std::move(base)) {
  for (auto& t : terms) {
    if (!base_->valid(t.coeff)) throw std::invalid_argument("plane model: coefficient out of range");
    if (t.coeff != 0) terms_.push_back(t);
  }
  if (terms_.empty()) throw std::invalid_argument("plane model: zero polynomial");
}

Elem PlaneModel::eval(Elem x, Elem y) const {
  const Field& F = *base_;
  Elem s = 0;
  for (const auto& t : terms_) s = F.add(s, F.mul(t.coeff, F.mul(F.pow(x, t.x_exp), F.pow(y, t.y_exp))));
  return s;
}

std::uint64_t affine_plane_count(const PlaneModel& M, unsigned threads) {
  const Field& F = M.field();
  unsigned dy = 0;
  for (const auto& t : M.terms()) dy = std::max(dy, t.y_exp);
  return parallel_sum(F.size(), threads, [&](std::uint64_t x) -> std::uint64_t {
    // Coefficients in y for this x, then Horner over all y.
    std::vector<Elem> c(dy + 1, 0);
    for (const auto& t : M.terms()) c[t.y_exp] = F.add(c[t.y_exp], F.mul(t.coeff, F.pow(x, t.x_exp)));
    std::uint64_t n = 0;
    for (Elem y = 0; y < F.size(); ++y) {
      Elem v = 0;
      for (unsigned j = dy + 1; j-- > 0;) v = F.add(F.mul(v, y), c[j]);
      if (v == 0) ++n;
    }
    return n;
  });
}

namespace {

std::uint64_t reduce(std::int64_t v, std::uint64_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

}  // namespace

std::int64_t cubic_discriminant(std::int64_t b, std::int64_t c, std::int64_t d) {
  return 18 * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * c * c * c - 27 * d * d;
}

EllipticCurve::EllipticCurve(std::uint64_t p, std::int64_t a2, std::int64_t a4, std::int64_t a6)
    : p_(p), a2_(reduce(a2, p)), a4_(reduce(a4, p)), a6_(reduce(a6, p)) {
  if (!is_prime(p) || p == 2) throw std::invalid_argument("elliptic curve: p must be an odd prime");
  if (p >= (1ULL << 31)) throw std::invalid_argument("elliptic curve: p too large for exhaustive scan");
  if (discriminant() == 0) {
    throw MathError("elliptic curve: singular reduction at p = " + std::to_string(p));
  }
}

std::uint64_t EllipticCurve::discriminant() const {
  const auto b = static_cast<__int128>(a2_), c = static_cast<__int128>(a4_), d = static_cast<__int128>(a6_);
  const __int128 P = p_;
  __int128 v = (18 * b % P * c % P * d - 4 * (b * b % P * b % P) * d + b * b % P * (c * c % P) -
                4 * (c * c % P * c % P) - 27 * (d * d % P)) %
               P;
  if (v < 0) v += P;
  return static_cast<std::uint64_t>(v);
}

std::uint64_t EllipticCurve::rhs(std::uint64_t x) const {
  return ((x * x % p_ * x) % p_ + a2_ * (x * x % p_) % p_ + a4_ * x % p_ + a6_) % p_;
}

std::uint64_t elliptic_count(const EllipticCurve& E) {
  const std::uint64_t p = E.p();
  std::uint64_t n = 1;
  for (std::uint64_t x = 0; x < p; ++x) {
    const std::uint64_t r = E.rhs(x);
    if (r == 0) {
      n += 1;
    } else if (powmod(r, (p - 1) / 2, p) == 1) {
      n += 2;
    }
  }
  return n;
}

std::int64_t elliptic_trace(const EllipticCurve& E) {
  return static_cast<std::int64_t>(E.p()) + 1 - static_cast<std::int64_t>(elliptic_count(E));
}

std::uint64_t elliptic_count_ext(const EllipticCurve& E) {
  const auto p = static_cast<std::int64_t>(E.p());
  const std::int64_t t = elliptic_trace(E);
  return static_cast<std::uint64_t>(p * p + 1 - (t * t - 2 * p));
}

}  // namespace maxcurve::kummer
