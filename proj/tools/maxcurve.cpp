// maxcurve command-line tool. Every subcommand builds one JSON report with its
// inputs, outputs and pass/fail assertions; the exit code is 0 when all
// assertions pass, 1 when one fails and 2 on usage errors.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "maxcurve/catalog.hpp"
#include "maxcurve/fm.hpp"
#include "maxcurve/grouptab.hpp"
#include "maxcurve/kummer.hpp"
#include "maxcurve/maximality.hpp"
#include "maxcurve/parallel.hpp"
#include "maxcurve/pgu.hpp"
#include "maxcurve/scan.hpp"
#include "maxcurve/sieve.hpp"

namespace {

using Json = nlohmann::json;
using namespace maxcurve;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Report {
  std::string command;
  Json inputs = Json::object();
  Json outputs = Json::object();
  Json assertions = Json::array();

  void check(const std::string& name, const std::string& claim, bool pass) {
    assertions.push_back({{"name", name}, {"claim", claim}, {"pass", pass}});
  }
  bool pass() const {
    for (const auto& a : assertions) {
      if (!a["pass"].get<bool>()) return false;
    }
    return true;
  }
  Json to_json() const {
    Json citations = Json::array();
    for (const auto& a : assertions) {
      if (!a["claim"].get<std::string>().empty()) citations.push_back(a["claim"]);
    }
    return {{"command", command}, {"inputs", inputs},         {"outputs", outputs},
            {"citations", citations}, {"assertions", assertions}, {"pass", pass()}};
  }
};

struct Options {
  bool json = false;
  bool csv = false;
  unsigned threads = default_threads();
  std::uint64_t seed = 0;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::uint64_t to_u64(const std::string& s) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    throw UsageError("expected a non-negative integer, got \"" + s + "\"");
  }
  if (used != s.size() || s.starts_with('-')) throw UsageError("expected a non-negative integer, got \"" + s + "\"");
  return v;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const auto& s : split(text, ',')) out.push_back(to_u64(s));
  return out;
}

bool parse_bool(const std::string& s) {
  if (s == "true" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "no" || s == "0") return false;
  throw UsageError("expected true or false, got \"" + s + "\"");
}

void flatten(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    const std::string v = j.is_string() ? j.get<std::string>() : j.dump();
    const bool quote = v.find_first_of(",\"\n") != std::string::npos;
    out << prefix << ',';
    if (quote) {
      out << '"';
      for (char c : v) out << (c == '"' ? std::string("\"\"") : std::string(1, c));
      out << '"';
    } else {
      out << v;
    }
    out << '\n';
  }
}

void emit(const Report& r, const Options& opt) {
  const Json j = r.to_json();
  if (opt.json) {
    std::cout << j.dump(2) << '\n';
  } else if (opt.csv) {
    std::cout << "key,value\n";
    flatten(j, "", std::cout);
  } else {
    std::cout << r.command << '\n';
    const std::string body = r.outputs.dump(2);
    if (body.size() <= 4000) {
      std::cout << body << '\n';
    } else {
      std::cout << "(outputs omitted, " << body.size() << " bytes; use --json)\n";
    }
    for (const auto& a : r.assertions) {
      std::cout << (a["pass"].get<bool>() ? "PASS " : "FAIL ") << a["name"].get<std::string>();
      if (!a["claim"].get<std::string>().empty()) std::cout << ": " << a["claim"].get<std::string>();
      std::cout << '\n';
    }
  }
}

// Kummer curve y^m = f(x) over F_{p^k} from --p --k --m --f.
struct CurveArgs {
  std::uint64_t p = 0;
  unsigned k = 2;
  std::uint64_t m = 0;
  std::string f;
};

void add_curve_options(CLI::App* sub, CurveArgs& c) {
  sub->add_option("--p", c.p, "characteristic")->required();
  sub->add_option("--k", c.k, "extension degree of the base field")->capture_default_str();
  sub->add_option("--m", c.m, "exponent m in y^m = f(x)")->required();
  sub->add_option("--f", c.f, "coefficients of f, constant term first, comma separated (e.g. 0,1,0,0,0,1 or 3+2*t)")
      ->required();
}

kummer::KummerCurve make_curve(const CurveArgs& c, Json& inputs) {
  auto F = gf::field_make(c.p, c.k);
  poly::Poly f;
  for (const auto& s : split(c.f, ',')) {
    f.push_back(gf::FieldElement::parse(F, s).value());
  }
  inputs = {{"p", c.p}, {"k", c.k}, {"m", c.m}, {"f", split(c.f, ',')}};
  return kummer::KummerCurve(F, c.m, f);
}

std::uint64_t half_degree_q(const kummer::KummerCurve& C) {
  if (C.field().k() % 2 != 0) throw UsageError("maximality needs a base field of square order (even --k)");
  return ipow(C.field().p(), C.field().k() / 2);
}

pgu::Model parse_model(const std::string& s) {
  if (s == "fermat") return pgu::Model::Fermat;
  if (s == "alternate") return pgu::Model::Alternate;
  throw UsageError("unknown model \"" + s + "\"");
}

std::vector<pgu::Mat3> canned_generators(const pgu::HermitianGeometry& G, const std::string& name,
                                         std::uint64_t order, std::uint64_t seed) {
  if (name == "diagonal") {
    if (order == 0) throw UsageError("--subgroup diagonal needs --order");
    return pgu::diagonal_cyclic(G, order);
  }
  if (name == "torus") return pgu::torus_cyclic(G);
  if (name == "elation") return pgu::elation_group(G);
  if (name == "nonelation") return pgu::nonelation_cyclic(G);
  if (name == "mixed") return pgu::mixed_cyclic(G);
  if (name == "sylow") return pgu::sylow_p(G);
  if (name == "triangle") return pgu::triangle_stabilizer(G);
  if (name == "singer") return pgu::singer_cyclic(G, seed);
  throw UsageError("unknown subgroup \"" + name + "\"");
}

grouptab::GroupTable unitary_closure(std::shared_ptr<const pgu::HermitianGeometry> G,
                                     const std::vector<pgu::Mat3>& gens) {
  auto kind = std::make_shared<grouptab::UnitaryKind>(G);
  std::vector<grouptab::Key> keys;
  for (const auto& M : gens) keys.push_back(kind->make(M));
  return grouptab::GroupTable::closure(kind, std::move(keys));
}

Json spectrum_json(const grouptab::OrderSpectrum& s) {
  Json out = Json::object();
  for (const auto& [o, n] : s) out[std::to_string(o)] = n;
  return out;
}

Json solution_list(const std::vector<sieve::Solution>& sols) {
  Json out = Json::array();
  for (const auto& s : sols) out.push_back(s);
  return out;
}

std::filesystem::path data_path(const std::string& file) {
#ifdef MAXCURVE_DATA_DIR
  return std::filesystem::path(MAXCURVE_DATA_DIR) / file;
#else
  return std::filesystem::path("data") / file;
#endif
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations for maximal curves, Hermitian quotients and PGU(3,q) different sums"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_flag("--json", opt.json, "print the JSON report");
  app.add_flag("--csv", opt.csv, "print the report flattened to key,value rows");
  app.add_option("--threads", opt.threads, "worker threads (default: hardware concurrency)");
  app.add_option("--seed", opt.seed, "seed for the randomized Singer search and random elements")->capture_default_str();

  Report report;
  std::function<void()> action;

  // count
  CurveArgs count_args;
  std::optional<std::uint64_t> count_expect;
  auto* count = app.add_subcommand("count", "degree-one places of y^m = f(x)");
  add_curve_options(count, count_args);
  count->add_option("--expect", count_expect, "assert this place count");
  count->callback([&] {
    action = [&] {
      report.command = "count";
      const auto C = make_curve(count_args, report.inputs);
      const auto b = kummer::place_breakdown(C, opt.threads);
      bool agree = true;
      for (const auto& br : b.branches) agree = agree && br.rule == br.oracle;
      report.outputs = {{"places", b.total()},
                        {"unramified", b.unramified},
                        {"above_zeros", b.above_zeros},
                        {"above_infinity", b.above_infinity}};
      report.check("branch_rule_matches_oracle", "rational branches above critical values: rule and blow-up scan agree",
                   agree);
      if (count_expect) {
        report.check("place_count", "place count equals " + std::to_string(*count_expect), b.total() == *count_expect);
      }
    };
  });

  // genus
  CurveArgs genus_args;
  std::optional<std::uint64_t> genus_expect;
  auto* genus = app.add_subcommand("genus", "genus of y^m = f(x)");
  add_curve_options(genus, genus_args);
  genus->add_option("--expect", genus_expect, "assert this genus");
  genus->callback([&] {
    action = [&] {
      report.command = "genus";
      const auto C = make_curve(genus_args, report.inputs);
      const auto g = kummer::kummer_genus(C);
      report.outputs = {{"genus", g}};
      if (genus_expect) report.check("genus", "genus equals " + std::to_string(*genus_expect), g == *genus_expect);
    };
  });

  // maximal
  CurveArgs max_args;
  std::optional<std::string> max_expect;
  auto* maximal = app.add_subcommand("maximal", "compare the place count with q^2 + 1 + 2qg");
  add_curve_options(maximal, max_args);
  maximal->add_option("--expect", max_expect, "assert maximality (true/false)");
  maximal->callback([&] {
    action = [&] {
      report.command = "maximal";
      const auto C = make_curve(max_args, report.inputs);
      const auto q = half_degree_q(C);
      const auto g = kummer::kummer_genus(C);
      const auto n = kummer::kummer_place_count(C, opt.threads);
      const auto bound = maximality::hw_max_count(q, g);
      const bool is_max = n == bound;
      report.outputs = {{"q", q}, {"genus", g}, {"places", n}, {"hasse_weil_bound", bound}, {"maximal", is_max},
                        {"spectrum", maximality::to_string(maximality::spectrum_classify(q, g))}};
      if (max_expect) {
        const bool want = parse_bool(*max_expect);
        report.check("maximal", std::string("curve is ") + (want ? "" : "not ") + "maximal", is_max == want);
      }
      if (is_max) {
        report.check("spectrum_not_forbidden", "maximal curves avoid the forbidden genus ranges",
                     maximality::spectrum_classify(q, g) != maximality::SpectrumClass::Forbidden);
      }
    };
  });

  // classify
  std::uint64_t cls_q = 0;
  std::string cls_model = "fermat", cls_matrix, cls_canned;
  std::uint64_t cls_random = 0, cls_order = 0;
  auto* classify = app.add_subcommand("classify", "type, order and different contribution of elements of PGU(3,q)");
  classify->add_option("--q", cls_q, "prime q")->required();
  classify->add_option("--model", cls_model, "fermat or alternate")->capture_default_str();
  auto* o_matrix = classify->add_option("--matrix", cls_matrix, "9 entries, row-major, comma separated");
  auto* o_random = classify->add_option("--random", cls_random, "classify this many seeded random elements");
  auto* o_canned = classify->add_option("--canned", cls_canned,
                                        "classify every nonidentity element of a canned subgroup "
                                        "(diagonal, torus, elation, nonelation, mixed, sylow, triangle, singer)");
  classify->add_option("--order", cls_order, "cyclic order for --canned diagonal");
  o_matrix->excludes(o_random)->excludes(o_canned);
  o_random->excludes(o_canned);
  classify->callback([&] {
    action = [&] {
      report.command = "classify";
      auto G = std::make_shared<const pgu::HermitianGeometry>(cls_q, parse_model(cls_model));
      report.inputs = {{"q", cls_q}, {"model", cls_model}};
      std::vector<pgu::Mat3> elems;
      if (!cls_matrix.empty()) {
        const auto parts = split(cls_matrix, ',');
        if (parts.size() != 9) throw UsageError("--matrix needs 9 entries");
        pgu::Mat3 M{};
        for (std::size_t i = 0; i < 9; ++i) M[i] = gf::FieldElement::parse(G->f2_ptr(), parts[i]).value();
        if (!G->is_unitary(M)) throw UsageError("--matrix is not unitary for the chosen model");
        elems.push_back(pgu::canonical(G->f2(), M));
        report.inputs["matrix"] = parts;
      } else if (cls_random > 0) {
        std::mt19937_64 rng(opt.seed);
        for (std::uint64_t i = 0; i < cls_random; ++i) elems.push_back(pgu::random_unitary(*G, rng));
        report.inputs["random"] = cls_random;
        report.inputs["seed"] = opt.seed;
      } else if (!cls_canned.empty()) {
        const auto table = unitary_closure(G, canned_generators(*G, cls_canned, cls_order, opt.seed));
        elems = grouptab::unitary_elements(table);
        report.inputs["canned"] = cls_canned;
      } else {
        throw UsageError("classify needs --matrix, --random or --canned");
      }
      Json rows = Json::array();
      std::map<std::string, std::uint64_t> by_type;
      bool agree = true;
      std::uint64_t compared = 0;
      for (const auto& M : elems) {
        if (pgu::mat_is_scalar(M)) continue;
        const auto rep = pgu::compare_contributions(*G, M);
        ++compared;
        ++by_type[pgu::to_string(rep.type)];
        agree = agree && rep.agree;
        if (elems.size() <= 64) {
          rows.push_back({{"matrix", pgu::serialize(G->f2(), M)},
                          {"type", pgu::to_string(rep.type)},
                          {"order", rep.order},
                          {"i_table", rep.i_table},
                          {"i_valuation", rep.i_valuation},
                          {"agree", rep.agree}});
        }
      }
      report.outputs = {{"compared", compared}, {"types", by_type}};
      if (!rows.empty()) report.outputs["elements"] = rows;
      report.check("contribution_routes_agree",
                   "different contribution from the type table equals the local valuation computation", agree);
    };
  });

  // quotient-genus
  std::uint64_t qg_q = 0, qg_order = 0;
  std::string qg_model = "fermat", qg_subgroup, qg_group;
  std::optional<std::uint64_t> qg_expect;
  auto* qgenus = app.add_subcommand("quotient-genus", "genus of H_{q+1}/G by the different degree");
  qgenus->add_option("--q", qg_q, "prime q");
  qgenus->add_option("--model", qg_model, "fermat or alternate")->capture_default_str();
  auto* o_sub = qgenus->add_option("--subgroup", qg_subgroup,
                                   "canned subgroup: diagonal, torus, elation, nonelation, mixed, sylow, triangle, singer");
  qgenus->add_option("--order", qg_order,
                     "diagonal: cyclic order; otherwise keep the elements whose order divides this (abelian groups)");
  auto* o_group = qgenus->add_option("--group", qg_group, "unitary group file");
  o_sub->excludes(o_group);
  qgenus->add_option("--expect", qg_expect, "assert this quotient genus");
  qgenus->callback([&] {
    action = [&] {
      report.command = "quotient-genus";
      std::optional<grouptab::GroupTable> table;
      std::shared_ptr<const pgu::HermitianGeometry> G;
      if (!qg_group.empty()) {
        table.emplace(grouptab::import_group(qg_group));
        const auto* kind = dynamic_cast<const grouptab::UnitaryKind*>(&table->kind());
        if (!kind) throw UsageError("--group must hold a unitary group");
        G = std::shared_ptr<const pgu::HermitianGeometry>(std::shared_ptr<const pgu::HermitianGeometry>{}, &kind->geometry());
        report.inputs = {{"group", std::filesystem::path(qg_group).filename().string()}};
      } else if (!qg_subgroup.empty()) {
        if (qg_q == 0) throw UsageError("--subgroup needs --q");
        G = std::make_shared<const pgu::HermitianGeometry>(qg_q, parse_model(qg_model));
        table.emplace(unitary_closure(G, canned_generators(*G, qg_subgroup, qg_order, opt.seed)));
        report.inputs = {{"q", qg_q}, {"model", qg_model}, {"subgroup", qg_subgroup}};
        if (qg_order) report.inputs["order"] = qg_order;
        if (qg_order && qg_subgroup != "diagonal") {
          std::vector<pgu::Mat3> keep;
          for (const auto& M : grouptab::unitary_elements(*table)) {
            if (qg_order % pgu::projective_order(*G, M) == 0) keep.push_back(M);
          }
          table.emplace(unitary_closure(G, keep));
        }
      } else {
        throw UsageError("quotient-genus needs --subgroup or --group");
      }
      const auto elems = grouptab::unitary_elements(*table);
      // Throws MathError when Riemann-Hurwitz gives a non-integral or negative genus.
      const auto res = pgu::subgroup_different(*G, elems);
      report.outputs = {{"q", G->q()},
                        {"group_order", elems.size()},
                        {"cover_genus", pgu::hermitian_genus(G->q())},
                        {"different_degree", res.different_degree},
                        {"quotient_genus", res.quotient_genus},
                        {"order_spectrum", spectrum_json(table->order_spectrum())}};
      report.check("riemann_hurwitz_integral", "2g - 2 - deg(Delta) is divisible by 2|G| with nonnegative quotient genus",
                   true);  // reached only when subgroup_different did not throw
      if (qg_expect) {
        report.check("quotient_genus", "quotient genus equals " + std::to_string(*qg_expect),
                     res.quotient_genus == *qg_expect);
      }
    };
  });

  // sieve
  std::uint64_t sv_target = 0, sv_cap = 0;
  std::string sv_values;
  std::vector<std::string> sv_lower, sv_upper, sv_fixed, sv_mod;
  std::optional<std::uint64_t> sv_expect_count;
  auto* sv = app.add_subcommand("sieve", "solutions of sum c_t n_t = D with sum n_t <= cap");
  sv->add_option("--target", sv_target, "different degree D")->required();
  sv->add_option("--values", sv_values, "contribution values, comma separated")->required();
  sv->add_option("--cap", sv_cap, "bound on the total count, |G| - 1")->required();
  sv->add_option("--lower", sv_lower, "component:bound, n_component >= bound");
  sv->add_option("--upper", sv_upper, "component:bound, n_component <= bound");
  sv->add_option("--fixed", sv_fixed, "component:value");
  sv->add_option("--mod", sv_mod, "component:modulus:residue");
  sv->add_option("--expect-count", sv_expect_count, "assert the number of solutions");
  sv->callback([&] {
    action = [&] {
      report.command = "sieve";
      sieve::Problem P{sv_target, {}, sv_cap, {}};
      for (auto v : parse_u64_list(sv_values)) P.contributions.push_back({v, std::nullopt});
      auto pair = [](const std::string& s, std::size_t n) {
        const auto parts = split(s, ':');
        if (parts.size() != n) throw UsageError("malformed filter \"" + s + "\"");
        std::vector<std::uint64_t> out;
        for (const auto& x : parts) out.push_back(to_u64(x));
        return out;
      };
      for (const auto& s : sv_lower) {
        const auto v = pair(s, 2);
        P.filters.push_back(sieve::LowerBound{v[0], v[1]});
      }
      for (const auto& s : sv_upper) {
        const auto v = pair(s, 2);
        P.filters.push_back(sieve::UpperBound{v[0], v[1]});
      }
      for (const auto& s : sv_fixed) {
        const auto v = pair(s, 2);
        P.filters.push_back(sieve::Fixed{v[0], v[1]});
      }
      for (const auto& s : sv_mod) {
        const auto v = pair(s, 3);
        P.filters.push_back(sieve::Congruence{v[0], v[1], v[2]});
      }
      Json filters = Json::array();
      for (const auto& f : P.filters) filters.push_back(sieve::describe(f));
      report.inputs = {{"target", sv_target}, {"values", parse_u64_list(sv_values)}, {"cap", sv_cap}, {"filters", filters}};
      const auto sols = sieve::enumerate(P);
      report.outputs = {{"solution_count", sols.size()}, {"solutions", solution_list(sols)}};
      bool valid = true;
      for (const auto& s : sols) valid = valid && sieve::satisfies(P, s);
      report.check("solutions_satisfy_problem", "every listed decomposition satisfies the equation, cap and filters",
                   valid);
      if (sv_expect_count) {
        report.check("solution_count", "exactly " + std::to_string(*sv_expect_count) + " decompositions",
                     sols.size() == *sv_expect_count);
      }
    };
  });

  // scan-orders
  std::string scan_config;
  bool scan_no_solutions = false;
  auto* scan = app.add_subcommand("scan-orders", "run the per-order different-degree scan from a config file");
  scan->add_option("--config", scan_config, "scan config (default: shipped data/h72_genus7_scan.json)");
  scan->add_flag("--no-solutions", scan_no_solutions, "omit solution lists from the report");
  scan->callback([&] {
    action = [&] {
      report.command = "scan-orders";
      const auto path = scan_config.empty() ? data_path("h72_genus7_scan.json") : std::filesystem::path(scan_config);
      const auto cfg = sieve::load_json_file(path);
      report.inputs = {{"config", path.filename().string()}, {"q", cfg.at("q")}, {"quotient_genus", cfg.at("quotient_genus")}};
      report.outputs = sieve::run_scan(cfg, opt.threads, !scan_no_solutions);
      const auto& out = report.outputs;
      report.check("config_covers_orders", "config lists exactly the divisors of |PGU(3,q)| in the order window",
                   out["config_covers_orders"].get<bool>());
      if (cfg.at("q") == 71 && cfg.at("quotient_genus") == 7) {
        report.check("order_count", "47 candidate group orders between 60 and 414", out["order_count"] == 47);
      }
      for (const auto& row : out["rows"]) {
        for (const auto& c : row["claims"]) {
          if (c["asserted"].get<bool>()) report.check("order " + row["order"].dump(), c["claim"], c["verified"].get<bool>());
        }
      }
    };
  });

  // fm-check
  std::vector<std::uint64_t> fm_p;
  std::optional<std::uint64_t> fm_scan_limit, fm_plane;
  std::optional<std::string> fm_expect;
  auto* fmc = app.add_subcommand("fm-check", "elliptic quotient of the genus-7 curve with automorphism group PSL(2,8)");
  fmc->add_option("--p", fm_p, "primes to check");
  fmc->add_option("--scan", fm_scan_limit, "list primes p <= limit, p = +-1 mod 14, with trace 0");
  fmc->add_option("--plane", fm_plane, "affine count of the plane model over F_{p^2}, p <= 100");
  fmc->add_option("--expect-maximal", fm_expect, "assert maximality for every --p");
  fmc->callback([&] {
    action = [&] {
      report.command = "fm-check";
      if (fm_p.empty() && !fm_scan_limit && !fm_plane) throw UsageError("fm-check needs --p, --scan or --plane");
      auto rec_json = [](const fm::FMRecord& r) {
        return Json{{"p", r.p},           {"mod7", r.mod7},         {"mod14", r.mod14},
                    {"pm1_mod7", r.pm1_mod7}, {"pm1_mod14", r.pm1_mod14}, {"count_p", r.count_p},
                    {"trace", r.trace},   {"count_p2", r.count_p2}, {"predicted", r.predicted},
                    {"maximal", r.maximal}};
      };
      report.check("hurwitz_equality", "504 = 84(7 - 1)", fm::kAutOrder == 84 * (fm::kGenus - 1));
      if (!fm_p.empty()) {
        report.inputs["p"] = fm_p;
        Json recs = Json::array();
        for (auto p : fm_p) {
          const auto r = fm::fm_check(p);
          recs.push_back(rec_json(r));
          const auto pi = static_cast<std::int64_t>(p);
          report.check("trace_identity p=" + std::to_string(p), "N_{p^2} = N_p (2p + 2 - N_p)",
                       static_cast<std::int64_t>(r.count_p2) ==
                           static_cast<std::int64_t>(r.count_p) * (2 * pi + 2 - static_cast<std::int64_t>(r.count_p)));
          if (r.maximal) {
            report.check("predicted_count p=" + std::to_string(p), "maximal case: 7|E(F_{p^2})| - 6p^2 - 6 = p^2 + 1 + 14p",
                         r.predicted == static_cast<std::int64_t>(maximality::hw_max_count(p, fm::kGenus)));
          }
          if (fm_expect) {
            const bool want = parse_bool(*fm_expect);
            report.check("maximal p=" + std::to_string(p),
                         "genus-7 curve " + std::string(want ? "is" : "is not") + " maximal over F_{p^2}",
                         r.maximal == want);
          }
        }
        report.outputs["records"] = recs;
      }
      if (fm_scan_limit) {
        report.inputs["scan"] = *fm_scan_limit;
        Json recs = Json::array();
        Json primes = Json::array();
        bool all_zero = true;
        for (const auto& r : fm::fm_scan(*fm_scan_limit)) {
          recs.push_back(rec_json(r));
          primes.push_back(r.p);
          all_zero = all_zero && r.trace == 0;
        }
        report.outputs["scan"] = {{"limit", *fm_scan_limit}, {"primes", primes}, {"records", recs}};
        report.check("scan_trace_zero", "scanned primes all have trace 0", all_zero);
      }
      if (fm_plane) {
        report.inputs["plane"] = *fm_plane;
        const auto c = fm::fm_plane_cross_check(*fm_plane, opt.threads);
        report.outputs["plane"] = {{"p", *fm_plane},
                                   {"affine_count", c.affine},
                                   {"predicted", c.predicted},
                                   {"unexplained_correction", c.correction}};
      }
    };
  });

  // catalog verify
  std::optional<std::uint64_t> cat_field;
  std::string cat_path;
  auto* cat = app.add_subcommand("catalog", "curve catalog operations");
  cat->require_subcommand(1);
  auto* verify = cat->add_subcommand("verify", "recompute every catalog entry");
  verify->add_option("--field", cat_field, "restrict to entries over the field of this size");
  verify->add_option("--catalog", cat_path, "catalog file (default: MAXCURVE_CATALOG or the shipped catalog)");
  verify->callback([&] {
    action = [&] {
      report.command = "catalog verify";
      const auto path = cat_path.empty() ? catalog::default_path() : std::filesystem::path(cat_path);
      const auto doc = sieve::load_json_file(path);
      report.inputs = {{"catalog", path.filename().string()}};
      if (cat_field) report.inputs["field"] = *cat_field;
      Json entries = Json::array();
      for (const auto& r : catalog::verify_catalog(doc, cat_field, opt.threads)) {
        entries.push_back(catalog::to_json(r));
        report.check(r.name, r.claim, r.pass());
      }
      if (entries.empty()) throw UsageError("no catalog entry matches the requested field");
      report.outputs = {{"entries", entries}};
    };
  });

  // group import
  std::string grp_file;
  std::size_t grp_cap = grouptab::GroupTable::kDefaultCap;
  std::optional<std::uint64_t> grp_expect_order;
  std::vector<std::string> grp_class_sum;
  auto* grp = app.add_subcommand("group", "finite group operations");
  grp->require_subcommand(1);
  auto* imp = grp->add_subcommand("import", "close imported generators and report group statistics");
  imp->add_option("file", grp_file, "group file")->required();
  imp->add_option("--cap", grp_cap, "closure size limit")->capture_default_str();
  imp->add_option("--expect-order", grp_expect_order, "assert the group order");
  imp->add_option("--class-sum", grp_class_sum,
                  "order:target[:yes|no], report whether target is a sum of class lengths of that element order");
  imp->callback([&] {
    action = [&] {
      report.command = "group import";
      const auto G = grouptab::import_group(grp_file, grp_cap);
      report.inputs = {{"file", std::filesystem::path(grp_file).filename().string()}};
      Json classes = Json::array();
      for (const auto& c : G.conjugacy_classes()) classes.push_back({{"order", c.element_order}, {"size", c.members.size()}});
      std::uint64_t total = 0;
      bool divides = true;
      for (const auto& c : G.conjugacy_classes()) {
        total += c.members.size();
        divides = divides && G.size() % c.members.size() == 0;
      }
      report.outputs = {{"kind", G.kind().name()},
                        {"order", G.size()},
                        {"order_spectrum", spectrum_json(G.order_spectrum())},
                        {"class_count", G.conjugacy_classes().size()},
                        {"classes", classes},
                        {"center_order", G.center().size()}};
      report.check("spectrum_two_routes", "order spectrum from the table equals the per-element computation",
                   G.order_spectrum() == G.order_spectrum_by_kind());
      report.check("class_sizes", "class sizes divide |G| and sum to |G|", divides && total == G.size());
      if (grp_expect_order) {
        report.check("order", "group order equals " + std::to_string(*grp_expect_order), G.size() == *grp_expect_order);
      }
      Json sums = Json::array();
      for (const auto& spec : grp_class_sum) {
        const auto parts = split(spec, ':');
        if (parts.size() != 2 && parts.size() != 3) throw UsageError("malformed --class-sum \"" + spec + "\"");
        const auto order = to_u64(parts[0]), target = to_u64(parts[1]);
        const auto sizes = G.class_sizes_of_order(order);
        const auto witness = grouptab::class_sum_witness(sizes, target);
        sums.push_back({{"order", order}, {"target", target}, {"class_sizes", sizes}, {"reachable", witness.has_value()},
                        {"witness", witness ? Json(*witness) : Json(nullptr)}});
        if (parts.size() == 3) {
          const bool want = parse_bool(parts[2]);
          report.check("class_sum " + parts[0] + ":" + parts[1],
                       std::to_string(target) + (want ? " is" : " is not") + " a sum of lengths of classes of order " +
                           parts[0],
                       witness.has_value() == want);
        }
      }
      if (!sums.empty()) report.outputs["class_sums"] = sums;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (opt.threads == 0) opt.threads = 1;
  try {
    action();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n' << app.help();
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const MathError& e) {
    report.check("computation", e.what(), false);
    emit(report, opt);
    return 1;
  }
  emit(report, opt);
  return report.pass() ? 0 : 1;
}
