#pragma once

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "qsub/partitions.hpp"

namespace qsub {

enum class CategoryName : std::uint8_t { CU, NC2, NC12, NC12Prime, NC12Sharp, NCEven, NCPrime, NC, P2 };

std::string to_string(CategoryName c);
CategoryName parse_category(std::string_view text);
// Every category except CU ignores colors.
bool is_colored(CategoryName c);
const std::vector<CategoryName>& orthogonal_categories();

// Largest frame (upper + lower points) accepted by enumerate.
inline constexpr std::size_t kMaxFramePoints = 12;

class CategorySpec {
 public:
  CategorySpec(CategoryName name) : name_(name) {}  // NOLINT: implicit on purpose

  // Closure of gens and the white identity under tensor, composition, adjoint
  // and the four rotations, keeping partitions with at most point_bound points.
  static CategorySpec generated(const std::vector<ColoredPartition>& gens, std::size_t point_bound);

  bool is_named() const noexcept { return !closure_; }
  CategoryName name() const;
  std::string label() const;
  bool colored() const;
  std::size_t point_bound() const;  // generated categories only
  const std::vector<ColoredPartition>& members() const;  // generated categories only

  bool contains(const ColoredPartition& p) const;

 private:
  struct Closure;
  CategoryName name_ = CategoryName::NC;
  std::shared_ptr<const Closure> closure_;
};

bool contains(const CategorySpec& cat, const ColoredPartition& p);

// All members of cat with the given colored frame, sorted.
std::vector<ColoredPartition> enumerate(const CategorySpec& cat, const ColorWord& upper, const ColorWord& lower);

// Memoizes enumerate for named categories; optionally persists to a directory
// with one partition per line in files named <cat>_<upper>_<lower>.txt.
class EnumerationCache {
 public:
  explicit EnumerationCache(std::optional<std::filesystem::path> dir = std::nullopt);

  const std::vector<ColoredPartition>& get(CategoryName cat, const ColorWord& upper, const ColorWord& lower);

  std::size_t hits() const noexcept { return hits_; }
  std::size_t misses() const noexcept { return misses_; }
  std::optional<std::filesystem::path> directory() const { return dir_; }

 private:
  using Key = std::tuple<CategoryName, ColorWord, ColorWord>;
  std::optional<std::filesystem::path> dir_;
  std::map<Key, std::shared_ptr<const std::vector<ColoredPartition>>> memo_;
  mutable std::shared_mutex mutex_;
  std::atomic<std::size_t> hits_{0};
  std::atomic<std::size_t> misses_{0};
};

}  // namespace qsub
