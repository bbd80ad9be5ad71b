#include "maxcurve/sieve.hpp"

#include <algorithm>
#include <stdexcept>

#include "maxcurve/maximality.hpp"
#include "maxcurve/pgu.hpp"

namespace maxcurve::sieve {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void validate(const Problem& P) {
  if (P.contributions.empty()) throw std::invalid_argument("sieve: no contribution values");
  for (const auto& c : P.contributions) {
    if (c.value == 0) throw std::invalid_argument("sieve: contribution values must be positive");
  }
  for (const auto& f : P.filters) {
    const std::size_t comp = std::visit(
        Overloaded{[](const TotalAtLeast&) { return std::size_t{0}; }, [](const auto& x) { return x.component; }}, f);
    if (comp >= P.contributions.size()) throw std::invalid_argument("sieve: filter refers to a missing component");
    if (const auto* c = std::get_if<Congruence>(&f); c && c->modulus == 0) {
      throw std::invalid_argument("sieve: congruence modulus must be positive");
    }
  }
}

struct Bounds {
  std::vector<std::uint64_t> lo, hi;
};

Bounds component_bounds(const Problem& P) {
  const std::size_t n = P.contributions.size();
  Bounds b{std::vector<std::uint64_t>(n, 0), std::vector<std::uint64_t>(n, P.cap)};
  for (std::size_t t = 0; t < n; ++t) {
    if (P.contributions[t].cap) b.hi[t] = std::min(b.hi[t], *P.contributions[t].cap);
    b.hi[t] = std::min(b.hi[t], P.target / P.contributions[t].value);
  }
  for (const auto& f : P.filters) {
    std::visit(Overloaded{[&](const LowerBound& x) { b.lo[x.component] = std::max(b.lo[x.component], x.bound); },
                          [&](const UpperBound& x) { b.hi[x.component] = std::min(b.hi[x.component], x.bound); },
                          [&](const Fixed& x) {
                            b.lo[x.component] = std::max(b.lo[x.component], x.value);
                            b.hi[x.component] = std::min(b.hi[x.component], x.value);
                          },
                          [](const auto&) {}},
               f);
  }
  return b;
}

}  // namespace

std::string describe(const Filter& f) {
  return std::visit(
      Overloaded{[](const LowerBound& x) { return "n" + std::to_string(x.component) + " >= " + std::to_string(x.bound); },
                 [](const UpperBound& x) { return "n" + std::to_string(x.component) + " <= " + std::to_string(x.bound); },
                 [](const Fixed& x) { return "n" + std::to_string(x.component) + " = " + std::to_string(x.value); },
                 [](const Congruence& x) {
                   return "n" + std::to_string(x.component) + " = " + std::to_string(x.residue) + " mod " +
                          std::to_string(x.modulus);
                 },
                 [](const TotalAtLeast& x) { return "total >= " + std::to_string(x.bound); }},
      f);
}

bool satisfies(const Problem& P, const Solution& s) {
  if (s.size() != P.contributions.size()) return false;
  std::uint64_t sum = 0, total = 0;
  for (std::size_t t = 0; t < s.size(); ++t) {
    const auto& c = P.contributions[t];
    if (c.cap && s[t] > *c.cap) return false;
    sum += c.value * s[t];
    total += s[t];
  }
  if (sum != P.target || total > P.cap) return false;
  for (const auto& f : P.filters) {
    const bool ok = std::visit(Overloaded{[&](const LowerBound& x) { return s[x.component] >= x.bound; },
                                          [&](const UpperBound& x) { return s[x.component] <= x.bound; },
                                          [&](const Fixed& x) { return s[x.component] == x.value; },
                                          [&](const Congruence& x) { return s[x.component] % x.modulus == x.residue % x.modulus; },
                                          [&](const TotalAtLeast& x) { return total >= x.bound; }},
                               f);
    if (!ok) return false;
  }
  return true;
}

void enumerate_stream(const Problem& P, const std::function<void(const Solution&)>& sink) {
  validate(P);
  const std::size_t n = P.contributions.size();
  const Bounds b = component_bounds(P);
  // Largest value among components t..n-1, to prune unreachable remainders.
  std::vector<std::uint64_t> max_tail(n + 1, 0);
  for (std::size_t t = n; t-- > 0;) max_tail[t] = std::max(max_tail[t + 1], P.contributions[t].value);
  Solution cur(n, 0);
  std::function<void(std::size_t, std::uint64_t, std::uint64_t)> rec = [&](std::size_t t, std::uint64_t rest,
                                                                          std::uint64_t room) {
    if (t == n) {
      if (rest == 0 && satisfies(P, cur)) sink(cur);
      return;
    }
    const std::uint64_t v = P.contributions[t].value;
    if (rest > max_tail[t] * room) return;
    const std::uint64_t hi = std::min({b.hi[t], rest / v, room});
    for (std::uint64_t c = b.lo[t]; c <= hi; ++c) {
      cur[t] = c;
      rec(t + 1, rest - c * v, room - c);
    }
    cur[t] = 0;
  };
  rec(0, P.target, P.cap);
}

std::vector<Solution> enumerate(const Problem& P) {
  std::vector<Solution> out;
  enumerate_stream(P, [&](const Solution& s) { out.push_back(s); });
  return out;
}

OrderWindow order_window(std::uint64_t q, std::uint64_t quotient_genus) {
  if (quotient_genus < 2) throw std::invalid_argument("order_window: quotient genus must be at least 2");
  const std::uint64_t g = pgu::hermitian_genus(q);
  OrderWindow w{};
  w.cover_euler = 2 * g - 2;
  w.quotient_euler = 2 * quotient_genus - 2;
  w.cover_points = maximality::hw_max_count(q, g);
  w.quotient_points = maximality::hw_max_count(q, quotient_genus);
  w.lower = (w.cover_points + w.quotient_points - 1) / w.quotient_points;
  w.upper = w.cover_euler / w.quotient_euler;
  return w;
}

std::vector<std::uint64_t> candidate_orders(std::uint64_t q, std::uint64_t quotient_genus) {
  const auto w = order_window(q, quotient_genus);
  const std::uint64_t N = pgu::pgu_order(q).value;
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = w.lower; n <= w.upper; ++n) {
    if (N % n == 0) out.push_back(n);
  }
  return out;
}

std::vector<std::uint64_t> h72_genus7_orders() { return candidate_orders(71, 7); }

std::uint64_t required_different(std::uint64_t q, std::uint64_t quotient_genus, std::uint64_t group_order) {
  const auto w = order_window(q, quotient_genus);
  const std::uint64_t used = group_order * w.quotient_euler;
  if (used > w.cover_euler) throw MathError("required_different: group too large for the quotient genus");
  return w.cover_euler - used;
}

std::vector<std::uint64_t> pattern_values(const Pattern& p) {
  std::set<std::uint64_t> acc{0};
  for (const auto& t : p.terms) {
    if (t.choices.empty()) throw std::invalid_argument("pattern: term without choices");
    std::set<std::uint64_t> next;
    for (auto a : acc) {
      for (auto c : t.choices) next.insert(a + t.count * c);
    }
    acc = std::move(next);
  }
  return {acc.begin(), acc.end()};
}

ProfileVerdict profile_filter(const grouptab::GroupTable& G, const Solution& s, std::span<const ProfileRule> rules) {
  const auto& spectrum = G.order_spectrum();
  for (const auto& r : rules) {
    if (r.component >= s.size()) throw std::invalid_argument("profile_filter: rule refers to a missing component");
    const std::uint64_t want = s[r.component];
    std::uint64_t have = 0;
    for (auto o : r.eligible_orders) {
      if (auto it = spectrum.find(o); it != spectrum.end()) have += it->second;
    }
    const std::string where = "n" + std::to_string(r.component) + " = " + std::to_string(want);
    switch (r.mode) {
      case ProfileMode::Exact:
        if (want != have) return {false, where + " but the group has " + std::to_string(have) + " eligible elements"};
        break;
      case ProfileMode::AtMost:
        if (want > have) return {false, where + " exceeds the " + std::to_string(have) + " eligible elements"};
        break;
      case ProfileMode::ClassSum: {
        std::vector<std::uint64_t> sizes;
        for (auto o : r.eligible_orders) {
          auto part = G.class_sizes_of_order(o);
          sizes.insert(sizes.end(), part.begin(), part.end());
        }
        if (!grouptab::class_sum_reachable(sizes, want)) {
          return {false, where + " is not a sum of eligible class lengths"};
        }
        break;
      }
    }
  }
  return {true, "accepted"};
}

}  // namespace maxcurve::sieve
