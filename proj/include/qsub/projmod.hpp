#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qsub/categories.hpp"
#include "qsub/partitions.hpp"
#include "qsub/words.hpp"

namespace qsub {

// q is dominated by p: same frame and qp = q = pq.
bool dominated(const ColoredPartition& q, const ColoredPartition& p);

// A witness r in cat with r*r = p and rr* = q, if one exists.
std::optional<ColoredPartition> equivalent(const CategorySpec& cat, const ColoredPartition& p,
                                           const ColoredPartition& q);

// Conjugation by a category element: r p r*, where upper(r) is the frame of p.
ColoredPartition conjugate_by(const ColoredPartition& r, const ColoredPartition& p);

// Which closure rules a module computation applies.
struct ModuleRules {
  bool tensor = true;
  bool reverse = true;
  bool conjugation = true;  // r p r* for every r in the category
  bool equivalence = true;
  bool domination = true;
};

// The projective partitions of a category up to a point bound, with the
// results of every closure operation tabulated once.
class ProjectiveUniverse {
 public:
  ProjectiveUniverse(CategorySpec cat, std::size_t point_bound);

  const CategorySpec& category() const noexcept { return cat_; }
  std::size_t point_bound() const noexcept { return bound_; }
  std::size_t size() const noexcept { return proj_.size(); }
  const std::vector<ColoredPartition>& projectives() const noexcept { return proj_; }
  const ColoredPartition& at(std::size_t i) const { return proj_[i]; }
  std::optional<std::size_t> index_of(const ColoredPartition& p) const;
  // Recolors white for categories that ignore colors.
  ColoredPartition normalize(const ColoredPartition& p) const;

  std::int32_t tensor_of(std::size_t a, std::size_t b) const { return tensor_[a * proj_.size() + b]; }
  std::size_t reverse_of(std::size_t a) const { return reverse_[a]; }
  const std::vector<std::uint32_t>& conjugates_of(std::size_t a) const { return conj_[a]; }
  const std::vector<std::uint32_t>& equivalent_to(std::size_t a) const { return classes_[class_of_[a]]; }
  std::size_t class_of(std::size_t a) const { return class_of_[a]; }
  std::size_t class_count() const noexcept { return classes_.size(); }
  const std::vector<std::uint32_t>& dominated_by(std::size_t a) const { return dominated_[a]; }

 private:
  CategorySpec cat_;
  std::size_t bound_;
  std::vector<ColoredPartition> proj_;
  std::unordered_map<ColoredPartition, std::size_t, ColoredPartitionHash> index_;
  std::vector<std::int32_t> tensor_;
  std::vector<std::size_t> reverse_;
  std::vector<std::vector<std::uint32_t>> conj_;
  std::vector<std::size_t> class_of_;
  std::vector<std::vector<std::uint32_t>> classes_;
  std::vector<std::vector<std::uint32_t>> dominated_;
};

class ProjectiveModule {
 public:
  ProjectiveModule(const ProjectiveUniverse* universe, std::vector<bool> mask, std::string name = {});

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  std::string category_label() const { return universe_->category().label(); }
  std::size_t point_bound() const { return universe_->point_bound(); }
  // Always true: membership is only known up to the point bound.
  bool truncated() const noexcept { return true; }

  std::size_t size() const;
  bool contains(const ColoredPartition& p) const;
  const std::vector<bool>& mask() const noexcept { return mask_; }
  std::vector<ColoredPartition> members() const;

  // Header "category;bound;name", then one partition per line in sorted order.
  std::string dump() const;

  friend bool operator==(const ProjectiveModule& a, const ProjectiveModule& b) { return a.mask_ == b.mask_; }

 private:
  const ProjectiveUniverse* universe_;
  std::vector<bool> mask_;
  std::string name_;
};

ProjectiveModule closure(const ProjectiveUniverse& u, const std::vector<ColoredPartition>& gens,
                         const ModuleRules& rules = {});

// Members p, q of one frame with qpq outside the module.
struct StabilityReport {
  bool stable = true;
  std::size_t checked = 0;
  std::vector<std::pair<ColoredPartition, ColoredPartition>> failures;
};
StabilityReport check_stability(const ProjectiveModule& m);

struct CatalogEntry {
  std::string name;
  std::vector<ColoredPartition> generators;
  std::function<bool(const ColoredPartition&)> predicate;
};

// Modules the classification predicts for a named orthogonal category (and P2).
std::vector<CatalogEntry> catalog(CategoryName cat);
// Module of the colored pair category whose through-words lie in spec.
CatalogEntry cu_catalog_entry(const AdmissibleSetSpec& spec);

ProjectiveModule truncation(const ProjectiveUniverse& u, const CatalogEntry& entry);

// Name of the catalog entry whose truncation equals the closure of gens.
std::string classify_module(const ProjectiveUniverse& u, const std::vector<ColoredPartition>& gens);

struct ModuleLattice {
  std::vector<ProjectiveModule> modules;  // distinct, in discovery order
};
// Closures of single projective generators, closed under joins.
ModuleLattice module_lattice(const ProjectiveUniverse& u);

}  // namespace qsub
