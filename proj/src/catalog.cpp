#include "maxcurve/catalog.hpp"

#include <cstdlib>
#include <stdexcept>

#include "maxcurve/kummer.hpp"
#include "maxcurve/maximality.hpp"

namespace maxcurve::catalog {

namespace {

Check make_check(std::string name, const Json& expected, const Json& actual) {
  return {std::move(name), expected, actual, expected == actual};
}

std::uint64_t require_u64(const Json& entry, const char* key) {
  if (!entry.contains(key) || !entry[key].is_number_integer() || entry[key].get<std::int64_t>() < 0) {
    throw std::invalid_argument("catalog entry " + entry.value("name", std::string("?")) + ": missing \"" + key + "\"");
  }
  return entry[key].get<std::uint64_t>();
}

gf::FieldPtr entry_field(const Json& entry) {
  return gf::field_make(require_u64(entry, "p"), entry.value("k", 2u));
}

void verify_kummer(const Json& e, unsigned threads, EntryResult& r) {
  auto F = entry_field(e);
  poly::Poly f;
  if (e.contains("f_sparse")) {
    for (const auto& t : e["f_sparse"]) {
      const auto exp = t.at(0).get<std::size_t>();
      if (f.size() <= exp) f.resize(exp + 1, F->zero());
      f[exp] = F->add(f[exp], parse_coeff(F, t.at(1)));
    }
  } else {
    for (const auto& c : e.at("f")) f.push_back(parse_coeff(F, c));
  }
  const kummer::KummerCurve C(F, require_u64(e, "m"), f);
  const std::uint64_t genus = kummer::kummer_genus(C);
  const auto places = kummer::place_breakdown(C, threads);
  const std::uint64_t count = places.total();
  const std::uint64_t q = ipow(F->p(), F->k() / 2);
  r.data = {{"genus", genus},
            {"places", count},
            {"unramified", places.unramified},
            {"above_zeros", places.above_zeros},
            {"above_infinity", places.above_infinity}};
  if (e.contains("expected_genus")) r.checks.push_back(make_check("genus", e["expected_genus"], genus));
  if (e.contains("expected_count")) r.checks.push_back(make_check("place_count", e["expected_count"], count));
  bool branches_agree = true;
  for (const auto& b : places.branches) branches_agree = branches_agree && b.rule == b.oracle;
  r.checks.push_back(make_check("branch_rule_matches_oracle", true, branches_agree));
  if (e.contains("maximal")) {
    if (F->k() % 2 != 0) throw std::invalid_argument("catalog: maximality needs a field of square order");
    const bool maximal = count == maximality::hw_max_count(q, genus);
    r.data["hasse_weil_bound"] = maximality::hw_max_count(q, genus);
    r.checks.push_back(make_check("maximal", e["maximal"], maximal));
    if (maximal) {
      const auto cls = maximality::spectrum_classify(q, genus);
      r.data["spectrum"] = maximality::to_string(cls);
      r.checks.push_back(make_check("spectrum_not_forbidden", true, cls != maximality::SpectrumClass::Forbidden));
    }
  }
}

void verify_plane(const Json& e, unsigned threads, EntryResult& r) {
  auto F = entry_field(e);
  std::vector<kummer::Term> terms;
  for (const auto& t : e.at("terms")) {
    terms.push_back({parse_coeff(F, t.at(0)), t.at(1).get<unsigned>(), t.at(2).get<unsigned>()});
  }
  const std::uint64_t affine = kummer::affine_plane_count(kummer::PlaneModel(F, std::move(terms)), threads);
  r.data = {{"affine_count", affine}};
  if (e.contains("expected_affine_count")) {
    r.checks.push_back(make_check("affine_count", e["expected_affine_count"], affine));
  }
}

void verify_elliptic(const Json& e, EntryResult& r) {
  const auto a = e.at("a").get<std::vector<std::int64_t>>();
  if (a.size() != 3) throw std::invalid_argument("catalog: elliptic entry needs a = [a2, a4, a6]");
  const std::uint64_t p = require_u64(e, "p");
  const kummer::EllipticCurve E(p, a[0], a[1], a[2]);
  const auto n1 = kummer::elliptic_count(E);
  const auto n2 = kummer::elliptic_count_ext(E);
  r.data = {{"count_p", n1}, {"trace", kummer::elliptic_trace(E)}, {"count_p2", n2}};
  if (e.contains("expected_count")) r.checks.push_back(make_check("count_p2", e["expected_count"], n2));
  if (e.contains("maximal")) {
    r.checks.push_back(make_check("maximal", e["maximal"], n2 == maximality::hw_max_count(p, 1)));
  }
}

}  // namespace

std::filesystem::path default_path() {
  if (const char* env = std::getenv("MAXCURVE_CATALOG"); env && *env) return env;
#ifdef MAXCURVE_DATA_DIR
  return std::filesystem::path(MAXCURVE_DATA_DIR) / "catalog.json";
#else
  return "data/catalog.json";
#endif
}

gf::Elem parse_coeff(const gf::FieldPtr& F, const Json& value) {
  if (value.is_number_integer()) return F->from_int(value.get<std::int64_t>());
  if (value.is_string()) return gf::FieldElement::parse(F, value.get<std::string>()).value();
  if (value.is_array()) {
    const auto c = value.get<std::vector<std::int64_t>>();
    return gf::FieldElement::from_json_coeffs(F, c).value();
  }
  throw std::invalid_argument("catalog: malformed coefficient " + value.dump());
}

bool EntryResult::pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

std::uint64_t entry_field_size(const Json& entry) {
  const std::uint64_t p = require_u64(entry, "p");
  // Elliptic entries are counted over F_p but checked over F_{p^2}.
  if (entry.value("kind", "") == "elliptic") return p * p;
  return ipow(p, entry.value("k", 2u));
}

EntryResult verify_entry(const Json& entry, unsigned threads) {
  EntryResult r{entry.value("name", ""), entry.value("kind", ""), entry_field_size(entry), entry.value("claim", ""), {}, {}};
  try {
    if (r.kind == "kummer") {
      verify_kummer(entry, threads, r);
    } else if (r.kind == "plane") {
      verify_plane(entry, threads, r);
    } else if (r.kind == "elliptic") {
      verify_elliptic(entry, r);
    } else {
      throw std::invalid_argument("catalog: unknown kind \"" + r.kind + "\"");
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("catalog entry " + r.name + ": " + e.what());
  }
  return r;
}

std::vector<EntryResult> verify_catalog(const Json& catalog, std::optional<std::uint64_t> field, unsigned threads) {
  std::vector<EntryResult> out;
  for (const auto& e : catalog.at("entries")) {
    if (field && entry_field_size(e) != *field) continue;
    out.push_back(verify_entry(e, threads));
  }
  return out;
}

Json to_json(const EntryResult& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"check", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
  }
  return {{"name", r.name},   {"kind", r.kind}, {"field_size", r.field_size}, {"claim", r.claim},
          {"data", r.data},   {"checks", checks}, {"pass", r.pass()}};
}

}  // namespace maxcurve::catalog
