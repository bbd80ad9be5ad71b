#include "maxcurve/poly.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace maxcurve::poly {

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const Poly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
    if (f[i] != 0) return i;
  }
  return -1;
}

bool is_zero(const Poly& f) { return degree(f) < 0; }

Elem lead(const Poly& f) {
  const int d = degree(f);
  return d < 0 ? 0 : f[d];
}

Poly monic(const Field& F, const Poly& f) {
  Poly r = f;
  trim(r);
  if (r.empty()) return r;
  return scale(F, r, F.inv(r.back()));
}

Poly x_minus(const Field& F, Elem a) { return {F.neg(a), 1}; }

Poly add(const Field& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  }
  trim(r);
  return r;
}

Poly sub(const Field& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  }
  trim(r);
  return r;
}

Poly mul(const Field& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
  }
  trim(r);
  return r;
}

Poly scale(const Field& F, const Poly& a, Elem c) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
  trim(r);
  return r;
}

void divmod(const Field& F, const Poly& a, const Poly& b, Poly& q, Poly& r) {
  const int db = degree(b);
  if (db < 0) throw MathError("polynomial division by zero");
  r = a;
  trim(r);
  const int da = degree(r);
  q.assign(da >= db ? da - db + 1 : 0, 0);
  const Elem inv_lead = F.inv(b[db]);
  for (int i = da; i >= db; --i) {
    const Elem c = F.mul(r[i], inv_lead);
    if (c == 0) continue;
    q[i - db] = c;
    for (int j = 0; j <= db; ++j) r[i - db + j] = F.sub(r[i - db + j], F.mul(c, b[j]));
  }
  trim(r);
  trim(q);
}

Poly rem(const Field& F, const Poly& a, const Poly& b) {
  Poly q, r;
  divmod(F, a, b, q, r);
  return r;
}

Poly quot(const Field& F, const Poly& a, const Poly& b) {
  Poly q, r;
  divmod(F, a, b, q, r);
  if (!r.empty()) throw MathError("inexact polynomial division");
  return q;
}

Poly gcd(const Field& F, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, a);
}

Poly powmod(const Field& F, Poly base, std::uint64_t e, const Poly& mod) {
  Poly r = rem(F, Poly{1}, mod);
  base = rem(F, base, mod);
  while (e) {
    if (e & 1) r = rem(F, mul(F, r, base), mod);
    e >>= 1;
    if (e) base = rem(F, mul(F, base, base), mod);
  }
  return r;
}

Poly derivative(const Field& F, const Poly& f) {
  if (f.size() < 2) return {};
  Poly r(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) {
    r[i - 1] = F.mul(F.from_int(static_cast<std::int64_t>(i % F.p())), f[i]);
  }
  trim(r);
  return r;
}

Elem eval(const Field& F, const Poly& f, Elem x) {
  Elem r = 0;
  for (std::size_t i = f.size(); i-- > 0;) r = F.add(F.mul(r, x), f[i]);
  return r;
}

namespace {

// f(x) = g(x)^p; requires f' = 0.
Poly pth_root(const Field& F, const Poly& f) {
  const std::uint64_t p = F.p();
  Poly r;
  for (std::size_t i = 0; i < f.size(); i += p) r.push_back(F.pow(f[i], F.size() / p));
  trim(r);
  return r;
}

void squarefree(const Field& F, const Poly& f, unsigned mult, std::vector<std::pair<Poly, unsigned>>& out) {
  if (degree(f) <= 0) return;
  Poly df = derivative(F, f);
  if (df.empty()) {
    squarefree(F, pth_root(F, f), mult * static_cast<unsigned>(F.p()), out);
    return;
  }
  Poly c = gcd(F, f, df);
  Poly w = quot(F, f, c);
  unsigned i = 1;
  while (degree(w) > 0) {
    Poly y = gcd(F, w, c);
    Poly z = quot(F, w, y);
    if (degree(z) > 0) out.emplace_back(monic(F, z), i * mult);
    ++i;
    w = y;
    c = quot(F, c, y);
  }
  if (degree(c) > 0) squarefree(F, pth_root(F, c), mult * static_cast<unsigned>(F.p()), out);
}

Poly random_poly(const Field& F, int below_degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(0, F.size() - 1);
  Poly r(below_degree);
  for (auto& c : r) c = dist(rng);
  trim(r);
  return r;
}

// Splits a product of distinct monic irreducibles of common degree d.
void equal_degree(const Field& F, const Poly& g, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
  const int n = degree(g);
  if (n == d) {
    out.push_back(monic(F, g));
    return;
  }
  const std::uint64_t Q = F.size();
  for (;;) {
    Poly r = random_poly(F, n, rng);
    if (degree(r) <= 0) continue;
    Poly s;
    if (F.p() == 2) {
      // Absolute trace to F_2 of r over the degree-d extension.
      const std::uint64_t steps = static_cast<std::uint64_t>(d) * F.k();
      Poly t = rem(F, r, g);
      Poly acc = t;
      for (std::uint64_t i = 1; i < steps; ++i) {
        t = rem(F, mul(F, t, t), g);
        acc = add(F, acc, t);
      }
      s = acc;
    } else {
      // r^((Q^d-1)/2) computed as (prod_i r^(Q^i))^((Q-1)/2).
      Poly t = rem(F, r, g);
      Poly prod = t;
      for (int i = 1; i < d; ++i) {
        t = powmod(F, t, Q, g);
        prod = rem(F, mul(F, prod, t), g);
      }
      s = sub(F, powmod(F, prod, (Q - 1) / 2, g), Poly{1});
    }
    Poly h = gcd(F, g, s);
    const int dh = degree(h);
    if (dh > 0 && dh < n) {
      equal_degree(F, h, d, rng, out);
      equal_degree(F, quot(F, g, h), d, rng, out);
      return;
    }
  }
}

bool poly_less(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

}  // namespace

std::vector<FactorPower> factor(const Field& F, const Poly& f_in) {
  Poly f = f_in;
  trim(f);
  if (f.empty()) throw MathError("factor: zero polynomial");
  std::vector<FactorPower> result;
  std::vector<std::pair<Poly, unsigned>> sqf;
  squarefree(F, monic(F, f), 1, sqf);
  std::mt19937_64 rng(0x5eedULL);
  const Poly x{0, 1};
  for (auto& [g0, mult] : sqf) {
    Poly g = g0;
    Poly h = x;
    for (int d = 1; degree(g) >= 2 * d; ++d) {
      h = powmod(F, h, F.size(), g);
      Poly gd = gcd(F, g, sub(F, h, x));
      if (degree(gd) > 0) {
        std::vector<Poly> parts;
        equal_degree(F, gd, d, rng, parts);
        for (auto& part : parts) result.push_back({part, mult});
        g = quot(F, g, gd);
        h = rem(F, h, g);
      }
    }
    if (degree(g) > 0) result.push_back({monic(F, g), mult});
  }
  std::sort(result.begin(), result.end(), [](const FactorPower& a, const FactorPower& b) {
    if (a.factor.size() != b.factor.size()) return a.factor.size() < b.factor.size();
    if (a.multiplicity != b.multiplicity) return a.multiplicity < b.multiplicity;
    return poly_less(a.factor, b.factor);
  });
  return result;
}

std::vector<Elem> roots(const Field& F, const Poly& f_in) {
  Poly f = f_in;
  trim(f);
  if (f.empty()) throw MathError("roots: zero polynomial");
  if (degree(f) == 0) return {};
  f = monic(F, f);
  const Poly x{0, 1};
  Poly g = gcd(F, f, sub(F, powmod(F, x, F.size(), f), x));
  std::vector<Elem> out;
  if (degree(g) <= 0) return out;
  std::mt19937_64 rng(0x5eedULL);
  std::vector<Poly> lin;
  equal_degree(F, g, 1, rng, lin);
  for (auto& l : lin) out.push_back(F.neg(l[0]));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace maxcurve::poly
