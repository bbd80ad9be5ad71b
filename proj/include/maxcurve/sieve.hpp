#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "maxcurve/grouptab.hpp"

namespace maxcurve::sieve {

struct Contribution {
  std::uint64_t value;
  std::optional<std::uint64_t> cap;  // unbounded when empty
};

struct LowerBound {
  std::size_t component;
  std::uint64_t bound;
};
struct UpperBound {
  std::size_t component;
  std::uint64_t bound;
};
struct Fixed {
  std::size_t component;
  std::uint64_t value;
};
struct Congruence {
  std::size_t component;
  std::uint64_t modulus;
  std::uint64_t residue;
};
struct TotalAtLeast {
  std::uint64_t bound;
};
using Filter = std::variant<LowerBound, UpperBound, Fixed, Congruence, TotalAtLeast>;

std::string describe(const Filter& f);

struct Problem {
  std::uint64_t target;
  std::vector<Contribution> contributions;
  std::uint64_t cap;  // bound on the total count, |G| - 1 in the scan
  std::vector<Filter> filters;
};

// Counts per contribution, in the order of Problem::contributions.
using Solution = std::vector<std::uint64_t>;

bool satisfies(const Problem& P, const Solution& s);
// Lexicographic order, duplicate-free.
void enumerate_stream(const Problem& P, const std::function<void(const Solution&)>& sink);
std::vector<Solution> enumerate(const Problem& P);

// Hasse-Weil count ratio and Euler characteristic ratio bound |G|; returned
// orders are the divisors of |PGU(3,q)| in that window.
struct OrderWindow {
  std::uint64_t cover_euler;     // 2g(H_{q+1}) - 2
  std::uint64_t quotient_euler;  // 2g' - 2
  std::uint64_t cover_points;    // |H_{q+1}(F_{q^2})|
  std::uint64_t quotient_points;
  std::uint64_t lower;
  std::uint64_t upper;
};
OrderWindow order_window(std::uint64_t q, std::uint64_t quotient_genus);
std::vector<std::uint64_t> candidate_orders(std::uint64_t q, std::uint64_t quotient_genus);
std::vector<std::uint64_t> h72_genus7_orders();  // q = 71, g' = 7
// 2g(H_{q+1}) - 2 - |G| (2g' - 2)
std::uint64_t required_different(std::uint64_t q, std::uint64_t quotient_genus, std::uint64_t group_order);

// Structured different degree: sum over terms of count * (one of choices).
struct PatternTerm {
  std::uint64_t count;
  std::vector<std::uint64_t> choices;
};
struct Pattern {
  std::string label;
  std::vector<PatternTerm> terms;
};
std::vector<std::uint64_t> pattern_values(const Pattern& p);

enum class ProfileMode { Exact, AtMost, ClassSum };
struct ProfileRule {
  std::size_t component;
  std::set<std::uint64_t> eligible_orders;
  ProfileMode mode;
};
struct ProfileVerdict {
  bool accepted;
  std::string reason;
};
// Exact: the count equals #elements with eligible order. AtMost: the count is
// at most that number. ClassSum: the count is a sum of lengths of classes of
// eligible elements.
ProfileVerdict profile_filter(const grouptab::GroupTable& G, const Solution& s, std::span<const ProfileRule> rules);

}  // namespace maxcurve::sieve
