#include "maxcurve/gf.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "maxcurve/poly.hpp"

namespace maxcurve {

namespace {

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t sp : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % sp == 0) return n == sp;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Factorization factorize(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factorize: zero");
  Factorization out;
  auto take = [&](std::uint64_t d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.emplace_back(d, e);
  };
  take(2);
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) take(d);
    if (n > 1 && is_prime(n)) break;
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

}  // namespace maxcurve

namespace maxcurve::gf {

namespace {

using Vec = std::vector<std::uint64_t>;

// Small F_p[x] helpers used only to certify the modulus.
void trim_p(Vec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Vec rem_p(Vec a, const Vec& m, std::uint64_t p) {
  trim_p(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t inv_lead = powmod64(m.back(), p - 2, p);
  while (a.size() > dm) {
    const std::uint64_t c = a.back() * inv_lead % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t j = 0; j <= dm; ++j) {
      a[shift + j] = (a[shift + j] + (p - c) * m[j]) % p;
    }
    trim_p(a);
  }
  return a;
}

Vec mulmod_p(const Vec& a, const Vec& b, const Vec& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Vec r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  return rem_p(std::move(r), m, p);
}

Vec powmod_p(Vec base, std::uint64_t e, const Vec& m, std::uint64_t p) {
  Vec r{1};
  r = rem_p(r, m, p);
  base = rem_p(base, m, p);
  while (e) {
    if (e & 1) r = mulmod_p(r, base, m, p);
    base = mulmod_p(base, base, m, p);
    e >>= 1;
  }
  return r;
}

Vec gcd_p(Vec a, Vec b, std::uint64_t p) {
  trim_p(a);
  trim_p(b);
  while (!b.empty()) {
    Vec r = rem_p(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

bool is_irreducible_mod_p(std::span<const std::uint64_t> f_in, std::uint64_t p) {
  Vec f(f_in.begin(), f_in.end());
  trim_p(f);
  if (f.size() < 2) return false;
  const std::size_t k = f.size() - 1;
  if (k == 1) return true;
  const Vec x{0, 1};
  Vec xp = x;
  for (std::size_t i = 1; i <= k; ++i) {
    xp = powmod_p(xp, p, f, p);
    Vec diff = xp;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim_p(diff);
    if (i < k) {
      if (diff.empty()) return false;
      if (gcd_p(diff, f, p).size() != 1) return false;
    } else if (!diff.empty()) {
      return false;
    }
  }
  return true;
}

Field::Field(std::uint64_t p, unsigned k) : p_(p), k_(k) {
  if (!is_prime(p)) throw std::invalid_argument("field_make: p is not prime");
  if (p >= (1ULL << 31)) throw std::invalid_argument("field_make: p too large");
  if (k < 1 || k > kMaxDegree) throw std::invalid_argument("field_make: degree out of range");
  ppow_[0] = 1;
  for (unsigned i = 1; i <= k; ++i) ppow_[i] = ppow_[i - 1] * p;
  size_ = ppow_[k];

  // Search monic x^k + c, c ascending as a base-p number.
  bool found = false;
  for (std::uint64_t c = 0; c < size_ && !found; ++c) {
    Vec f(k + 1);
    std::uint64_t t = c;
    for (unsigned i = 0; i < k; ++i) {
      f[i] = t % p;
      t /= p;
    }
    f[k] = 1;
    if (is_irreducible_mod_p(f, p)) {
      modulus_ = f;
      found = true;
    }
  }
  if (!found) throw std::logic_error("field_make: no irreducible modulus found");

  unit_factors_ = factorize(size_ - 1);
  const std::uint64_t n = size_ - 1;
  for (Elem g = 1; g < size_; ++g) {
    bool primitive = true;
    for (auto [l, e] : unit_factors_) {
      if (pow(g, n / l) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      gen_ = g;
      break;
    }
  }

  if (size_ <= kLogTableLimit && size_ > 2) {
    std::vector<std::uint32_t> ex(n), lg(size_, 0);
    Elem cur = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
      ex[i] = static_cast<std::uint32_t>(cur);
      lg[cur] = static_cast<std::uint32_t>(i);
      cur = mul_generic(cur, gen_);
    }
    if (cur != 1) throw std::logic_error("field_make: generator check failed");
    exp_ = std::move(ex);
    log_ = std::move(lg);
  }
}

FieldPtr field_make(std::uint64_t p, unsigned k) { return std::make_shared<const Field>(p, k); }

Elem Field::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += static_cast<std::int64_t>(p_);
  return static_cast<Elem>(r);
}

Elem Field::from_coeffs(std::span<const std::uint64_t> c) const {
  if (c.size() > k_) throw std::invalid_argument("field element: too many coefficients");
  Elem r = 0;
  for (std::size_t i = 0; i < c.size(); ++i) r += (c[i] % p_) * ppow_[i];
  return r;
}

std::array<std::uint64_t, Field::kMaxDegree> Field::coeffs(Elem a) const {
  std::array<std::uint64_t, kMaxDegree> c{};
  for (unsigned i = 0; i < k_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

Elem Field::add(Elem a, Elem b) const {
  if (k_ == 1) {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem r = 0;
  for (unsigned i = 0; i < k_; ++i) {
    std::uint64_t s = a % p_ + b % p_;
    a /= p_;
    b /= p_;
    if (s >= p_) s -= p_;
    r += s * ppow_[i];
  }
  return r;
}

Elem Field::neg(Elem a) const {
  if (k_ == 1) return a == 0 ? 0 : p_ - a;
  Elem r = 0;
  for (unsigned i = 0; i < k_; ++i) {
    std::uint64_t d = a % p_;
    a /= p_;
    r += (d == 0 ? 0 : p_ - d) * ppow_[i];
  }
  return r;
}

Elem Field::sub(Elem a, Elem b) const {
  if (k_ == 1) return a >= b ? a - b : a + p_ - b;
  Elem r = 0;
  for (unsigned i = 0; i < k_; ++i) {
    std::uint64_t da = a % p_, db = b % p_;
    a /= p_;
    b /= p_;
    r += (da >= db ? da - db : da + p_ - db) * ppow_[i];
  }
  return r;
}

Elem Field::mul_generic(Elem a, Elem b) const {
  if (k_ == 1) return a * b % p_;
  auto ca = coeffs(a), cb = coeffs(b);
  std::array<std::uint64_t, 2 * kMaxDegree> r{};
  for (unsigned i = 0; i < k_; ++i) {
    if (!ca[i]) continue;
    for (unsigned j = 0; j < k_; ++j) r[i + j] = (r[i + j] + ca[i] * cb[j]) % p_;
  }
  for (int i = 2 * static_cast<int>(k_) - 2; i >= static_cast<int>(k_); --i) {
    const std::uint64_t c = r[i];
    if (!c) continue;
    r[i] = 0;
    for (unsigned j = 0; j < k_; ++j) {
      r[i - k_ + j] = (r[i - k_ + j] + (p_ - c) * modulus_[j]) % p_;
    }
  }
  Elem out = 0;
  for (unsigned i = 0; i < k_; ++i) out += r[i] * ppow_[i];
  return out;
}

Elem Field::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  if (!exp_.empty()) {
    std::uint64_t s = static_cast<std::uint64_t>(log_[a]) + log_[b];
    const std::uint64_t n = size_ - 1;
    if (s >= n) s -= n;
    return exp_[s];
  }
  return mul_generic(a, b);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (!exp_.empty()) {
    const std::uint64_t n = size_ - 1;
    const auto s = static_cast<std::uint64_t>(static_cast<unsigned __int128>(log_[a]) * e % n);
    return exp_[s];
  }
  Elem r = 1;
  while (e) {
    if (e & 1) r = mul_generic(r, a);
    a = mul_generic(a, a);
    e >>= 1;
  }
  return r;
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw MathError("division by zero in F_" + std::to_string(size_));
  if (!exp_.empty()) {
    const std::uint64_t n = size_ - 1;
    return exp_[(n - log_[a]) % n];
  }
  return pow(a, size_ - 2);
}

Elem Field::frobenius(Elem a, unsigned times) const { return pow(a, ppow_[times % k_]); }

std::uint64_t Field::order(Elem a) const {
  if (a == 0) throw MathError("element_order: zero has no multiplicative order");
  const std::uint64_t n = size_ - 1;
  if (!exp_.empty()) return n / std::gcd<std::uint64_t>(log_[a], n);
  std::uint64_t o = n;
  for (auto [l, e] : unit_factors_) {
    for (unsigned j = 0; j < e; ++j) {
      if (pow(a, o / l) == 1) {
        o /= l;
      } else {
        break;
      }
    }
  }
  return o;
}

Elem Field::exp(std::uint64_t e) const {
  const std::uint64_t n = size_ - 1;
  if (!exp_.empty()) return exp_[e % n];
  return pow(gen_, e % n);
}

std::uint64_t Field::log(Elem a) const {
  if (a == 0) throw MathError("log of zero");
  if (exp_.empty()) throw std::logic_error("discrete log table not available for this field");
  return log_[a];
}

bool Field::in_subfield(Elem a, unsigned d) const {
  if (d == 0 || k_ % d != 0) throw std::invalid_argument("subfield degree must divide k");
  return frobenius(a, d) == a;
}

std::string Field::to_string(Elem a) const {
  if (a == 0) return "0";
  auto c = coeffs(a);
  std::string out;
  for (unsigned i = 0; i < k_; ++i) {
    if (!c[i]) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c[i]);
    } else {
      if (c[i] != 1) out += std::to_string(c[i]) + "*";
      out += "t";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

std::uint64_t count_mth_roots(const Field& F, Elem c, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("count_mth_roots: m must be positive");
  if (c == 0) return 1;
  const std::uint64_t n = F.size() - 1;
  const std::uint64_t g = std::gcd(m, n);
  return F.pow(c, n / g) == 1 ? g : 0;
}

NormTrace norm_trace(const Field& F, Elem a, unsigned d) {
  if (d == 0 || F.k() % d != 0) throw std::invalid_argument("norm_trace: d must divide k");
  NormTrace r{1, 0};
  for (unsigned i = 0; i < F.k() / d; ++i) {
    const Elem c = F.frobenius(a, d * i);
    r.norm = F.mul(r.norm, c);
    r.trace = F.add(r.trace, c);
  }
  return r;
}

// ---- FieldElement ----

FieldElement::FieldElement(FieldPtr field, Elem v) : field_(std::move(field)), v_(v) {
  if (!field_) throw std::invalid_argument("field element without field");
  if (!field_->valid(v_)) throw std::invalid_argument("field element code out of range");
}

FieldElement FieldElement::from_json_coeffs(FieldPtr field, std::span<const std::int64_t> c) {
  if (c.size() > field->k()) throw std::invalid_argument("field element: too many coefficients");
  std::vector<std::uint64_t> u;
  for (auto v : c) u.push_back(field->from_int(v));
  const Elem e = field->from_coeffs(u);
  return FieldElement(std::move(field), e);
}

FieldElement FieldElement::parse(FieldPtr field, const std::string& text) {
  // Accepts sums of terms "c", "c*t", "t^e", "c*t^e" with optional signs.
  const Field& F = *field;
  std::vector<std::int64_t> coeff(F.k(), 0);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto number = [&](std::int64_t& out) {
    skip();
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) return false;
    out = std::stoll(text.substr(start, i - start));
    return true;
  };
  skip();
  if (i == text.size()) throw std::invalid_argument("empty field element");
  while (i < text.size()) {
    int sign = 1;
    skip();
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      if (text[i] == '-') sign = -1;
      ++i;
    }
    std::int64_t c = 1;
    bool has_c = number(c);
    skip();
    unsigned e = 0;
    if (i < text.size() && text[i] == '*') {
      if (!has_c) throw std::invalid_argument("malformed field element: " + text);
      ++i;
      skip();
    }
    if (i < text.size() && text[i] == 't') {
      ++i;
      e = 1;
      skip();
      if (i < text.size() && text[i] == '^') {
        ++i;
        std::int64_t ee = 0;
        if (!number(ee)) throw std::invalid_argument("malformed exponent: " + text);
        e = static_cast<unsigned>(ee);
      }
    } else if (!has_c) {
      throw std::invalid_argument("malformed field element: " + text);
    }
    if (e >= F.k()) throw std::invalid_argument("power of t exceeds degree: " + text);
    coeff[e] += sign * c;
    skip();
  }
  return from_json_coeffs(std::move(field), coeff);
}

const Field& FieldElement::checked(const FieldElement& o) const {
  if (field_ != o.field_ &&
      (field_->p() != o.field_->p() || field_->k() != o.field_->k() ||
       field_->modulus() != o.field_->modulus())) {
    throw std::invalid_argument("field element context mismatch");
  }
  return *field_;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  return {field_, checked(o).add(v_, o.v_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  return {field_, checked(o).sub(v_, o.v_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  return {field_, checked(o).mul(v_, o.v_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
  return {field_, checked(o).div(v_, o.v_)};
}
FieldElement FieldElement::operator-() const { return {field_, field_->neg(v_)}; }
FieldElement FieldElement::pow(std::uint64_t e) const { return {field_, field_->pow(v_, e)}; }
FieldElement FieldElement::inverse() const { return {field_, field_->inv(v_)}; }
bool FieldElement::operator==(const FieldElement& o) const {
  checked(o);
  return v_ == o.v_;
}
std::uint64_t FieldElement::order() const { return field_->order(v_); }

std::vector<std::int64_t> FieldElement::coeff_list() const {
  auto c = field_->coeffs(v_);
  return {c.begin(), c.begin() + field_->k()};
}

std::string FieldElement::to_string() const { return field_->to_string(v_); }

// ---- Embedding ----

Embedding::Embedding(FieldPtr small, FieldPtr big) : small_(std::move(small)), big_(std::move(big)) {
  if (small_->p() != big_->p() || big_->k() % small_->k() != 0) {
    throw std::invalid_argument("embedding: not a subfield");
  }
  const Field& B = *big_;
  poly::Poly m;
  for (auto c : small_->modulus()) m.push_back(B.from_int(static_cast<std::int64_t>(c)));
  auto rts = poly::roots(B, m);
  if (rts.empty()) throw std::logic_error("embedding: modulus has no root in the big field");
  const Elem w = rts.front();
  Elem cur = 1;
  for (unsigned i = 0; i < small_->k(); ++i) {
    basis_.push_back(cur);
    cur = B.mul(cur, w);
  }
  if (small_->size() <= 1'000'000) {
    table_.resize(small_->size());
    for (Elem a = 0; a < small_->size(); ++a) {
      auto c = small_->coeffs(a);
      Elem r = 0;
      for (unsigned i = 0; i < small_->k(); ++i) r = B.add(r, B.mul(B.from_int(static_cast<std::int64_t>(c[i])), basis_[i]));
      table_[a] = r;
    }
  }
}

Elem Embedding::operator()(Elem a) const {
  if (!table_.empty()) return table_[a];
  const Field& B = *big_;
  auto c = small_->coeffs(a);
  Elem r = 0;
  for (unsigned i = 0; i < small_->k(); ++i) r = B.add(r, B.mul(B.from_int(static_cast<std::int64_t>(c[i])), basis_[i]));
  return r;
}

}  // namespace maxcurve::gf
