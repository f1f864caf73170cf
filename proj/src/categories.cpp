#include "qsub/categories.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "qsub/errors.hpp"

namespace qsub {

namespace {

struct NameEntry {
  CategoryName name;
  const char* text;
};

constexpr NameEntry kNames[] = {
    {CategoryName::CU, "CU"},           {CategoryName::NC2, "NC2"},
    {CategoryName::NC12, "NC12"},       {CategoryName::NC12Prime, "NC12prime"},
    {CategoryName::NC12Sharp, "NC12sharp"}, {CategoryName::NCEven, "NCeven"},
    {CategoryName::NCPrime, "NCprime"}, {CategoryName::NC, "NC"},
    {CategoryName::P2, "P2"},
};

}  // namespace

std::string to_string(CategoryName c) {
  for (const auto& e : kNames)
    if (e.name == c) return e.text;
  return "?";
}

CategoryName parse_category(std::string_view text) {
  for (const auto& e : kNames)
    if (text == e.text) return e.name;
  throw ParseError("unknown category \"" + std::string(text) + "\"");
}

bool is_colored(CategoryName c) { return c == CategoryName::CU; }

const std::vector<CategoryName>& orthogonal_categories() {
  static const std::vector<CategoryName> cats = {
      CategoryName::NC2,    CategoryName::NC12,    CategoryName::NC12Prime, CategoryName::NC12Sharp,
      CategoryName::NCEven, CategoryName::NC,      CategoryName::NCPrime};
  return cats;
}

// ---------------------------------------------------------------------------
// Membership predicates

namespace {

std::size_t count_singletons(const std::vector<std::size_t>& sizes) {
  return static_cast<std::size_t>(std::count(sizes.begin(), sizes.end(), std::size_t{1}));
}

bool sizes_at_most_two(const std::vector<std::size_t>& sizes) {
  return std::all_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s <= 2; });
}

// Each pair block has an even number of singletons strictly between its points
// in the circular order.
bool singletons_even_between_pairs(const ColoredPartition& p, const std::vector<std::size_t>& sizes) {
  const auto order = circular_order(p);
  std::vector<std::size_t> first(p.block_count(), SIZE_MAX);
  std::vector<std::size_t> singles_before(order.size() + 1, 0);
  for (std::size_t i = 0; i < order.size(); ++i)
    singles_before[i + 1] = singles_before[i] + (sizes[p.block_of(order[i])] == 1 ? 1 : 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto b = p.block_of(order[i]);
    if (sizes[b] != 2) continue;
    if (first[b] == SIZE_MAX) {
      first[b] = i;
      continue;
    }
    if ((singles_before[i] - singles_before[first[b] + 1]) % 2 != 0) return false;
  }
  return true;
}

bool named_contains(CategoryName cat, const ColoredPartition& p) {
  if (cat == CategoryName::CU) return is_cu_partition(p);
  const auto sizes = block_sizes(p);
  if (cat == CategoryName::P2)
    return std::all_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s == 2; });
  if (!is_noncrossing(p)) return false;
  switch (cat) {
    case CategoryName::NC2:
      return std::all_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s == 2; });
    case CategoryName::NC12: return sizes_at_most_two(sizes);
    case CategoryName::NC12Prime: return sizes_at_most_two(sizes) && count_singletons(sizes) % 2 == 0;
    case CategoryName::NC12Sharp:
      return sizes_at_most_two(sizes) && count_singletons(sizes) % 2 == 0 &&
             singletons_even_between_pairs(p, sizes);
    case CategoryName::NCEven:
      return std::all_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s % 2 == 0; });
    case CategoryName::NCPrime:
      return std::count_if(sizes.begin(), sizes.end(), [](std::size_t s) { return s % 2 == 1; }) % 2 == 0;
    case CategoryName::NC: return true;
    default: return false;
  }
}

// Set partitions of a frame, built point by point along the circular order.
// Crossings and oversized blocks are cut off as soon as they appear.
class FrameEnumerator {
 public:
  FrameEnumerator(const ColorWord& upper, const ColorWord& lower, bool noncrossing, std::size_t max_block)
      : upper_(upper), lower_(lower), noncrossing_(noncrossing), max_block_(max_block) {
    ColoredPartition frame = all_singletons(upper, lower);
    order_ = circular_order(frame);
    n_ = order_.size();
    label_.assign(n_, 0);
  }

  void run(const std::function<void(const ColoredPartition&)>& emit) {
    emit_ = &emit;
    first_.clear();
    last_.clear();
    size_.clear();
    step(0);
  }

 private:
  void step(std::size_t i) {
    if (i == n_) {
      std::vector<std::uint8_t> b(n_);
      for (std::size_t j = 0; j < n_; ++j) b[order_[j]] = label_[j];
      (*emit_)(ColoredPartition(upper_, lower_, std::move(b)));
      return;
    }
    for (std::size_t y = 0; y < first_.size(); ++y) {
      if (size_[y] >= max_block_) continue;
      if (noncrossing_ && crosses(y, i)) continue;
      label_[i] = static_cast<std::uint8_t>(y);
      const std::size_t saved = last_[y];
      last_[y] = i;
      ++size_[y];
      step(i + 1);
      --size_[y];
      last_[y] = saved;
    }
    label_[i] = static_cast<std::uint8_t>(first_.size());
    first_.push_back(i);
    last_.push_back(i);
    size_.push_back(1);
    step(i + 1);
    first_.pop_back();
    last_.pop_back();
    size_.pop_back();
  }

  bool crosses(std::size_t y, std::size_t i) const {
    const std::size_t b = last_[y];
    for (std::size_t c = b + 1; c < i; ++c)
      if (first_[label_[c]] < b) return true;
    return false;
  }

  ColorWord upper_, lower_;
  bool noncrossing_;
  std::size_t max_block_;
  std::vector<std::size_t> order_;
  std::size_t n_ = 0;
  std::vector<std::uint8_t> label_;
  std::vector<std::size_t> first_, last_, size_;
  const std::function<void(const ColoredPartition&)>* emit_ = nullptr;
};

std::vector<ColoredPartition> enumerate_named(CategoryName cat, const ColorWord& upper, const ColorWord& lower) {
  const std::size_t n = upper.size() + lower.size();
  if (n > kMaxFramePoints)
    throw FrameTooLarge(std::to_string(n) + " points exceeds " + std::to_string(kMaxFramePoints));
  const bool nc = cat != CategoryName::P2;
  std::size_t max_block = n == 0 ? 1 : n;
  switch (cat) {
    case CategoryName::CU: case CategoryName::NC2: case CategoryName::NC12:
    case CategoryName::NC12Prime: case CategoryName::NC12Sharp: case CategoryName::P2:
      max_block = 2;
      break;
    default: break;
  }
  std::vector<ColoredPartition> out;
  FrameEnumerator en(upper, lower, nc, max_block);
  en.run([&](const ColoredPartition& p) {
    if (named_contains(cat, p)) out.push_back(p);
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Generated categories

struct CategorySpec::Closure {
  std::vector<ColoredPartition> gens;
  std::size_t bound = 0;
  std::vector<ColoredPartition> members;
  std::unordered_set<ColoredPartition, ColoredPartitionHash> index;
};

CategorySpec CategorySpec::generated(const std::vector<ColoredPartition>& gens, std::size_t point_bound) {
  auto cl = std::make_shared<Closure>();
  cl->gens = gens;
  cl->bound = point_bound;
  std::vector<ColoredPartition> members;
  std::unordered_map<ColorWord, std::vector<std::size_t>, ColorWordHash> by_upper, by_lower;
  std::deque<ColoredPartition> queue;
  auto push = [&](const ColoredPartition& p) {
    if (p.size() > point_bound) return;
    if (cl->index.insert(p).second) queue.push_back(p);
  };
  push(identity(Color::White));
  for (const auto& g : gens) push(g);
  while (!queue.empty()) {
    ColoredPartition p = queue.front();
    queue.pop_front();
    push(adjoint(p));
    if (p.upper_size() > 0) {
      push(rotate(p, Corner::UpperLeftDown));
      push(rotate(p, Corner::UpperRightDown));
    }
    if (p.lower_size() > 0) {
      push(rotate(p, Corner::LowerLeftUp));
      push(rotate(p, Corner::LowerRightUp));
    }
    const std::size_t idx = members.size();
    members.push_back(p);
    by_upper[p.upper()].push_back(idx);
    by_lower[p.lower()].push_back(idx);
    for (std::size_t j = 0; j <= idx; ++j) {
      const auto& q = members[j];
      if (p.size() + q.size() <= point_bound) {
        push(tensor(p, q));
        push(tensor(q, p));
      }
    }
    // p on top of anything whose upper row is lower(p), and below anything ending in upper(p)
    if (auto it = by_upper.find(p.lower()); it != by_upper.end())
      for (auto j : std::vector<std::size_t>(it->second)) push(members[j] * p);
    if (auto it = by_lower.find(p.upper()); it != by_lower.end())
      for (auto j : std::vector<std::size_t>(it->second)) push(p * members[j]);
  }
  std::sort(members.begin(), members.end());
  cl->members = std::move(members);
  CategorySpec spec(CategoryName::NC);
  spec.closure_ = std::move(cl);
  return spec;
}

CategoryName CategorySpec::name() const {
  if (closure_) throw PreconditionViolated("generated category has no catalog name");
  return name_;
}

std::string CategorySpec::label() const {
  if (!closure_) return to_string(name_);
  std::string s = "generated(";
  for (std::size_t i = 0; i < closure_->gens.size(); ++i) s += (i ? " " : "") + closure_->gens[i].str();
  return s + ";" + std::to_string(closure_->bound) + ")";
}

bool CategorySpec::colored() const { return closure_ ? true : is_colored(name_); }

std::size_t CategorySpec::point_bound() const {
  if (!closure_) throw PreconditionViolated("named category has no point bound");
  return closure_->bound;
}

const std::vector<ColoredPartition>& CategorySpec::members() const {
  if (!closure_) throw PreconditionViolated("named category has no finite member list");
  return closure_->members;
}

bool CategorySpec::contains(const ColoredPartition& p) const {
  if (closure_) return closure_->index.count(p) != 0;
  return named_contains(name_, p);
}

bool contains(const CategorySpec& cat, const ColoredPartition& p) { return cat.contains(p); }

std::vector<ColoredPartition> enumerate(const CategorySpec& cat, const ColorWord& upper, const ColorWord& lower) {
  if (cat.is_named()) return enumerate_named(cat.name(), upper, lower);
  std::vector<ColoredPartition> out;
  for (const auto& p : cat.members())
    if (p.upper() == upper && p.lower() == lower) out.push_back(p);
  return out;
}

// ---------------------------------------------------------------------------
// Cache

namespace {

constexpr const char* kEnumerationVersion = "qsub-enumerate-3 circular-rgs nc-prune";

std::string version_tag() {
  std::ostringstream os;
  os << std::hex << std::hash<std::string>{}(kEnumerationVersion);
  return os.str();
}

}  // namespace

EnumerationCache::EnumerationCache(std::optional<std::filesystem::path> dir) {
  if (dir) {
    dir_ = *dir / version_tag();
    std::filesystem::create_directories(*dir_);
  }
}

const std::vector<ColoredPartition>& EnumerationCache::get(CategoryName cat, const ColorWord& upper,
                                                            const ColorWord& lower) {
  Key key{cat, upper, lower};
  {
    std::shared_lock lock(mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) {
      ++hits_;
      return *it->second;
    }
  }
  std::vector<ColoredPartition> result;
  bool loaded = false;
  std::filesystem::path file;
  if (dir_) {
    file = *dir_ / (to_string(cat) + "_" + upper.str() + "_" + lower.str() + ".txt");
    std::ifstream in(file);
    if (in) {
      std::string line;
      while (std::getline(in, line))
        if (!line.empty()) result.push_back(ColoredPartition::parse(line));
      loaded = true;
    }
  }
  if (!loaded) {
    result = enumerate_named(cat, upper, lower);
    if (dir_) {
      auto tmp = file;
      tmp += ".tmp";
      {
        std::ofstream out(tmp);
        for (const auto& p : result) out << p.str() << '\n';
      }
      std::filesystem::rename(tmp, file);
    }
  }
  std::unique_lock lock(mutex_);
  auto [it, inserted] = memo_.emplace(key, std::make_shared<const std::vector<ColoredPartition>>(std::move(result)));
  if (inserted) ++misses_; else ++hits_;
  return *it->second;
}

}  // namespace qsub
