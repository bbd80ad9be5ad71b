#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "maxcurve/pgu.hpp"

namespace maxcurve::grouptab {

// Canonical element encoding: permutation images, or the 9 entries of the
// canonical projective representative.
using Key = std::vector<std::uint32_t>;

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept;
};

class ElementKind {
 public:
  virtual ~ElementKind() = default;
  virtual std::string name() const = 0;
  virtual Key identity() const = 0;
  virtual Key multiply(const Key& a, const Key& b) const = 0;
  virtual Key inverse(const Key& a) const = 0;
  // Order computed from the element's own structure, independent of any table.
  virtual std::uint64_t order(const Key& a) const = 0;
};

class PermutationKind final : public ElementKind {
 public:
  explicit PermutationKind(std::size_t degree) : degree_(degree) {}
  // Validates a 0-based image array.
  Key make(std::span<const std::int64_t> images) const;
  std::string name() const override { return "perm"; }
  Key identity() const override;
  Key multiply(const Key& a, const Key& b) const override;  // apply a, then b
  Key inverse(const Key& a) const override;
  std::uint64_t order(const Key& a) const override;  // lcm of cycle lengths
  std::size_t degree() const { return degree_; }

 private:
  std::size_t degree_;
};

class UnitaryKind final : public ElementKind {
 public:
  explicit UnitaryKind(std::shared_ptr<const pgu::HermitianGeometry> geometry) : geom_(std::move(geometry)) {}
  // Validates unitarity and stores the canonical representative.
  Key make(const pgu::Mat3& M) const;
  pgu::Mat3 matrix(const Key& k) const;
  const pgu::HermitianGeometry& geometry() const { return *geom_; }
  std::string name() const override { return "unitary"; }
  Key identity() const override;
  Key multiply(const Key& a, const Key& b) const override;
  Key inverse(const Key& a) const override;
  std::uint64_t order(const Key& a) const override;  // pgu::projective_order

 private:
  std::shared_ptr<const pgu::HermitianGeometry> geom_;
};

using OrderSpectrum = std::map<std::uint64_t, std::uint64_t>;

struct ConjugacyClass {
  std::vector<std::uint32_t> members;
  std::uint64_t element_order;
};

class GroupTable {
 public:
  static constexpr std::size_t kDefaultCap = 2'000'000;

  static GroupTable closure(std::shared_ptr<const ElementKind> kind, std::vector<Key> generators,
                            std::size_t cap = kDefaultCap);

  std::size_t size() const { return elems_.size(); }
  const Key& element(std::size_t i) const { return elems_[i]; }
  const std::vector<Key>& elements() const { return elems_; }
  const std::vector<Key>& generators() const { return gens_; }
  const ElementKind& kind() const { return *kind_; }
  std::optional<std::uint32_t> index_of(const Key& k) const;
  std::uint32_t product(std::uint32_t a, std::uint32_t b) const;

  // Order by repeated multiplication inside the table.
  std::uint64_t element_order(std::uint32_t i) const;
  const OrderSpectrum& order_spectrum() const;
  // Same statistic from ElementKind::order.
  OrderSpectrum order_spectrum_by_kind() const;
  const std::vector<ConjugacyClass>& conjugacy_classes() const;
  const std::vector<std::uint32_t>& center() const;
  // Class lengths of the elements of the given order.
  std::vector<std::uint64_t> class_sizes_of_order(std::uint64_t order) const;

 private:
  struct Stats {
    std::once_flag spectrum_once;
    OrderSpectrum spectrum;
    std::once_flag classes_once;
    std::vector<ConjugacyClass> classes;
    std::vector<std::uint32_t> center;
  };

  GroupTable() : stats_(std::make_unique<Stats>()) {}
  void compute_classes() const;

  std::shared_ptr<const ElementKind> kind_;
  std::vector<Key> gens_;
  std::vector<Key> elems_;
  std::unordered_map<Key, std::uint32_t, KeyHash> index_;
  std::unique_ptr<Stats> stats_;
};

std::vector<pgu::Mat3> unitary_elements(const GroupTable& G);

// Group file: {"kind": "perm"|"unitary", "q": int, "model": "fermat"|"alternate",
// "generators": [...]}. Throws std::invalid_argument on malformed input.
GroupTable import_group_json(const std::string& text, std::size_t cap = GroupTable::kDefaultCap);
GroupTable import_group(const std::filesystem::path& file, std::size_t cap = GroupTable::kDefaultCap);

// Sub-multiset of sizes summing to target; the witness lists the chosen sizes.
std::optional<std::vector<std::uint64_t>> class_sum_witness(std::span<const std::uint64_t> sizes,
                                                            std::uint64_t target);
bool class_sum_reachable(std::span<const std::uint64_t> sizes, std::uint64_t target);

}  // namespace maxcurve::grouptab
