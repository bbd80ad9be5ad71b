#include "maxcurve/grouptab.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace maxcurve::grouptab {

std::size_t KeyHash::operator()(const Key& k) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (auto v : k) {
    h ^= v;
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

Key PermutationKind::make(std::span<const std::int64_t> images) const {
  if (images.size() != degree_) throw std::invalid_argument("permutation: wrong degree");
  Key k(degree_);
  std::vector<bool> hit(degree_, false);
  for (std::size_t i = 0; i < degree_; ++i) {
    const auto v = images[i];
    if (v < 0 || static_cast<std::size_t>(v) >= degree_ || hit[v]) {
      throw std::invalid_argument("permutation: images are not a bijection of 0..n-1");
    }
    hit[v] = true;
    k[i] = static_cast<std::uint32_t>(v);
  }
  return k;
}

Key PermutationKind::identity() const {
  Key k(degree_);
  std::iota(k.begin(), k.end(), 0u);
  return k;
}

Key PermutationKind::multiply(const Key& a, const Key& b) const {
  Key k(degree_);
  for (std::size_t i = 0; i < degree_; ++i) k[i] = b[a[i]];
  return k;
}

Key PermutationKind::inverse(const Key& a) const {
  Key k(degree_);
  for (std::size_t i = 0; i < degree_; ++i) k[a[i]] = static_cast<std::uint32_t>(i);
  return k;
}

std::uint64_t PermutationKind::order(const Key& a) const {
  std::vector<bool> seen(degree_, false);
  std::uint64_t l = 1;
  for (std::size_t i = 0; i < degree_; ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = a[j]) {
      seen[j] = true;
      ++len;
    }
    l = std::lcm(l, len);
  }
  return l;
}

namespace {

Key key_of(const pgu::Mat3& M) {
  Key k(9);
  for (int i = 0; i < 9; ++i) k[i] = static_cast<std::uint32_t>(M[i]);
  return k;
}

}  // namespace

Key UnitaryKind::make(const pgu::Mat3& M) const {
  for (auto a : M) {
    if (!geom_->f2().valid(a)) throw std::invalid_argument("unitary element: entry outside the field");
  }
  if (pgu::mat_det(geom_->f2(), M) == 0) throw std::invalid_argument("unitary element: singular matrix");
  if (!geom_->is_unitary(M)) throw std::invalid_argument("unitary element: matrix does not preserve the form");
  return key_of(pgu::canonical(geom_->f2(), M));
}

pgu::Mat3 UnitaryKind::matrix(const Key& k) const {
  pgu::Mat3 M;
  for (int i = 0; i < 9; ++i) M[i] = k[i];
  return M;
}

Key UnitaryKind::identity() const { return key_of(pgu::mat_identity()); }

Key UnitaryKind::multiply(const Key& a, const Key& b) const {
  const auto& F = geom_->f2();
  return key_of(pgu::canonical(F, pgu::mat_mul(F, matrix(a), matrix(b))));
}

Key UnitaryKind::inverse(const Key& a) const {
  const auto& F = geom_->f2();
  return key_of(pgu::canonical(F, pgu::mat_inverse(F, matrix(a))));
}

std::uint64_t UnitaryKind::order(const Key& a) const { return pgu::projective_order(*geom_, matrix(a)); }

GroupTable GroupTable::closure(std::shared_ptr<const ElementKind> kind, std::vector<Key> generators,
                               std::size_t cap) {
  if (cap < 1) throw std::invalid_argument("closure: cap must be positive");
  GroupTable G;
  G.kind_ = std::move(kind);
  G.gens_ = std::move(generators);
  const Key id = G.kind_->identity();
  G.elems_.push_back(id);
  G.index_.emplace(id, 0);
  for (std::size_t i = 0; i < G.elems_.size(); ++i) {
    for (const auto& g : G.gens_) {
      Key x = G.kind_->multiply(G.elems_[i], g);
      if (G.index_.contains(x)) continue;
      if (G.elems_.size() >= cap) {
        throw MathError("closure: more than " + std::to_string(cap) + " elements");
      }
      G.index_.emplace(x, static_cast<std::uint32_t>(G.elems_.size()));
      G.elems_.push_back(std::move(x));
    }
  }
  return G;
}

std::optional<std::uint32_t> GroupTable::index_of(const Key& k) const {
  auto it = index_.find(k);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t GroupTable::product(std::uint32_t a, std::uint32_t b) const {
  auto i = index_of(kind_->multiply(elems_[a], elems_[b]));
  if (!i) throw MathError("group table: product left the table");
  return *i;
}

std::uint64_t GroupTable::element_order(std::uint32_t i) const {
  std::uint64_t n = 1;
  std::uint32_t x = i;
  while (x != 0) {
    x = product(x, i);
    if (++n > elems_.size()) throw MathError("group table: element order exceeds |G|");
  }
  return n;
}

const OrderSpectrum& GroupTable::order_spectrum() const {
  std::call_once(stats_->spectrum_once, [this] {
    for (std::uint32_t i = 0; i < elems_.size(); ++i) ++stats_->spectrum[element_order(i)];
  });
  return stats_->spectrum;
}

OrderSpectrum GroupTable::order_spectrum_by_kind() const {
  OrderSpectrum s;
  for (const auto& k : elems_) ++s[kind_->order(k)];
  return s;
}

void GroupTable::compute_classes() const {
  const auto n = static_cast<std::uint32_t>(elems_.size());
  std::vector<std::pair<std::uint32_t, std::uint32_t>> conj;  // (g, g^-1) indices
  for (const auto& g : gens_) {
    auto gi = index_of(g);
    auto ginv = index_of(kind_->inverse(g));
    if (!gi || !ginv) throw MathError("group table: generator missing from table");
    conj.emplace_back(*gi, *ginv);
  }
  std::vector<std::int32_t> cls(n, -1);
  auto& out = stats_->classes;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (cls[s] >= 0) continue;
    const auto id = static_cast<std::int32_t>(out.size());
    ConjugacyClass c{{s}, 0};
    cls[s] = id;
    for (std::size_t head = 0; head < c.members.size(); ++head) {
      const std::uint32_t x = c.members[head];
      for (auto [g, gi] : conj) {
        const std::uint32_t y = product(product(gi, x), g);
        if (cls[y] < 0) {
          cls[y] = id;
          c.members.push_back(y);
        }
      }
    }
    std::sort(c.members.begin(), c.members.end());
    c.element_order = element_order(s);
    out.push_back(std::move(c));
  }
  for (const auto& c : out) {
    if (c.members.size() == 1) stats_->center.push_back(c.members[0]);
  }
  std::sort(stats_->center.begin(), stats_->center.end());
}

const std::vector<ConjugacyClass>& GroupTable::conjugacy_classes() const {
  std::call_once(stats_->classes_once, [this] { compute_classes(); });
  return stats_->classes;
}

const std::vector<std::uint32_t>& GroupTable::center() const {
  conjugacy_classes();
  return stats_->center;
}

std::vector<std::uint64_t> GroupTable::class_sizes_of_order(std::uint64_t order) const {
  std::vector<std::uint64_t> out;
  for (const auto& c : conjugacy_classes()) {
    if (c.element_order == order) out.push_back(c.members.size());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<pgu::Mat3> unitary_elements(const GroupTable& G) {
  const auto* u = dynamic_cast<const UnitaryKind*>(&G.kind());
  if (!u) throw std::invalid_argument("unitary_elements: not a unitary group");
  std::vector<pgu::Mat3> out;
  out.reserve(G.size());
  for (const auto& k : G.elements()) out.push_back(u->matrix(k));
  return out;
}

namespace {

using nlohmann::json;

gf::Elem parse_field_entry(const gf::FieldPtr& F, const json& v) {
  if (v.is_string()) return gf::FieldElement::parse(F, v.get<std::string>()).value();
  if (v.is_number_integer()) {
    const std::int64_t c[] = {v.get<std::int64_t>()};
    return gf::FieldElement::from_json_coeffs(F, c).value();
  }
  if (v.is_array()) {
    std::vector<std::int64_t> c;
    for (const auto& x : v) {
      if (!x.is_number_integer()) throw std::invalid_argument("group file: coefficient is not an integer");
      c.push_back(x.get<std::int64_t>());
    }
    return gf::FieldElement::from_json_coeffs(F, c).value();
  }
  throw std::invalid_argument("group file: field element must be a string or coefficient array");
}

}  // namespace

GroupTable import_group_json(const std::string& text, std::size_t cap) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("group file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) {
    throw std::invalid_argument("group file: missing \"kind\"");
  }
  const json gens = doc.value("generators", json::array());
  if (!gens.is_array()) throw std::invalid_argument("group file: \"generators\" must be an array");
  const std::string kind = doc["kind"].get<std::string>();
  if (kind == "perm") {
    std::size_t degree = doc.value("degree", std::size_t{0});
    if (degree == 0 && !gens.empty()) degree = gens[0].size();
    auto K = std::make_shared<PermutationKind>(degree);
    std::vector<Key> keys;
    for (const auto& g : gens) {
      if (!g.is_array()) throw std::invalid_argument("group file: permutation must be an image array");
      std::vector<std::int64_t> im;
      for (const auto& x : g) {
        if (!x.is_number_integer()) throw std::invalid_argument("group file: permutation image is not an integer");
        im.push_back(x.get<std::int64_t>());
      }
      keys.push_back(K->make(im));
    }
    return GroupTable::closure(K, std::move(keys), cap);
  }
  if (kind == "unitary") {
    if (!doc.contains("q") || !doc["q"].is_number_unsigned()) throw std::invalid_argument("group file: missing q");
    const std::string model = doc.value("model", std::string("fermat"));
    if (model != "fermat" && model != "alternate") throw std::invalid_argument("group file: unknown model");
    auto geom = std::make_shared<const pgu::HermitianGeometry>(
        doc["q"].get<std::uint64_t>(), model == "fermat" ? pgu::Model::Fermat : pgu::Model::Alternate);
    auto K = std::make_shared<UnitaryKind>(geom);
    std::vector<Key> keys;
    for (const auto& g : gens) {
      if (!g.is_array() || g.size() != 9) throw std::invalid_argument("group file: matrix needs 9 entries");
      pgu::Mat3 M;
      for (int i = 0; i < 9; ++i) M[i] = parse_field_entry(geom->f2_ptr(), g[i]);
      keys.push_back(K->make(M));
    }
    return GroupTable::closure(K, std::move(keys), cap);
  }
  throw std::invalid_argument("group file: unknown kind \"" + kind + "\"");
}

GroupTable import_group(const std::filesystem::path& file, std::size_t cap) {
  std::ifstream in(file);
  if (!in) throw std::invalid_argument("group file: cannot open " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return import_group_json(ss.str(), cap);
}

std::optional<std::vector<std::uint64_t>> class_sum_witness(std::span<const std::uint64_t> sizes,
                                                            std::uint64_t target) {
  // from[s] = index of the item that first reached sum s
  constexpr std::int64_t kUnreached = -2;
  std::vector<std::int64_t> from(target + 1, kUnreached);
  from[0] = -1;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const std::uint64_t w = sizes[i];
    if (w > target) continue;
    for (std::uint64_t s = target; s + 1 > w; --s) {
      if (from[s] == kUnreached && from[s - w] != kUnreached && from[s - w] != static_cast<std::int64_t>(i)) {
        from[s] = static_cast<std::int64_t>(i);
      }
    }
  }
  if (from[target] == kUnreached) return std::nullopt;
  std::vector<std::uint64_t> chosen;
  for (std::uint64_t s = target; s > 0;) {
    const auto i = static_cast<std::size_t>(from[s]);
    chosen.push_back(sizes[i]);
    s -= sizes[i];
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

bool class_sum_reachable(std::span<const std::uint64_t> sizes, std::uint64_t target) {
  return class_sum_witness(sizes, target).has_value();
}

}  // namespace maxcurve::grouptab
