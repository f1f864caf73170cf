#include "qsub/projmod.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "qsub/errors.hpp"
#include "qsub/union_find.hpp"

namespace qsub {

bool dominated(const ColoredPartition& q, const ColoredPartition& p) {
  if (q.upper() != p.upper() || q.lower() != p.lower() || p.upper() != p.lower()) return false;
  return q * p == q && p * q == q;
}

std::optional<ColoredPartition> equivalent(const CategorySpec& cat, const ColoredPartition& p,
                                           const ColoredPartition& q) {
  for (const auto& r : enumerate(cat, p.upper(), q.upper())) {
    auto rs = adjoint(r);
    if (rs * r == p && r * rs == q) return r;
  }
  return std::nullopt;
}

ColoredPartition conjugate_by(const ColoredPartition& r, const ColoredPartition& p) {
  return r * (p * adjoint(r));
}

// ---------------------------------------------------------------------------

namespace {

std::vector<ColorWord> frames_for(const CategorySpec& cat, std::size_t half) {
  if (cat.colored()) return all_words(half);
  std::vector<ColorWord> out;
  for (std::size_t k = 0; k <= half; ++k) out.push_back(ColorWord::repeat(Color::White, k));
  return out;
}

}  // namespace

ProjectiveUniverse::ProjectiveUniverse(CategorySpec cat, std::size_t point_bound)
    : cat_(std::move(cat)), bound_(point_bound) {
  const auto frames = frames_for(cat_, bound_ / 2);
  for (const auto& w : frames)
    for (const auto& p : enumerate(cat_, w, w))
      if (is_projective(p)) proj_.push_back(p);
  std::sort(proj_.begin(), proj_.end());
  for (std::size_t i = 0; i < proj_.size(); ++i) index_.emplace(proj_[i], i);
  const std::size_t n = proj_.size();

  tensor_.assign(n * n, -1);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (proj_[a].size() + proj_[b].size() <= bound_) {
        auto idx = index_of(tensor(proj_[a], proj_[b]));
        if (!idx) throw ClosureViolation("tensor product left the projectives of " + cat_.label());
        tensor_[a * n + b] = static_cast<std::int32_t>(*idx);
      }

  reverse_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    auto idx = index_of(normalize(reverse(proj_[a])));
    if (!idx) throw ClosureViolation("reverse of " + proj_[a].str() + " is not in " + cat_.label());
    reverse_[a] = *idx;
  }

  std::unordered_map<ColorWord, std::vector<std::uint32_t>, ColorWordHash> by_frame;
  for (std::size_t a = 0; a < n; ++a) by_frame[proj_[a].upper()].push_back(static_cast<std::uint32_t>(a));

  conj_.assign(n, {});
  detail::UnionFind uf(n);
  for (const auto& w : frames) {
    for (const auto& w2 : frames) {
      for (const auto& r : enumerate(cat_, w, w2)) {
        const auto rs = adjoint(r);
        auto a = index_of(rs * r), b = index_of(r * rs);
        if (a && b) uf.unite(*a, *b);
        auto it = by_frame.find(w);
        if (it == by_frame.end()) continue;
        for (auto pi : it->second) {
          auto res = index_of(r * (proj_[pi] * rs));
          if (!res) throw ClosureViolation("conjugate is not projective: " + r.str() + " / " + proj_[pi].str());
          conj_[pi].push_back(static_cast<std::uint32_t>(*res));
        }
      }
    }
  }
  for (auto& v : conj_) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  class_of_.assign(n, 0);
  std::unordered_map<std::size_t, std::size_t> root_class;
  for (std::size_t a = 0; a < n; ++a) {
    auto [it, fresh] = root_class.emplace(uf.find(a), classes_.size());
    if (fresh) classes_.emplace_back();
    class_of_[a] = it->second;
    classes_[it->second].push_back(static_cast<std::uint32_t>(a));
  }

  dominated_.assign(n, {});
  for (const auto& [frame, members] : by_frame)
    for (auto a : members)
      for (auto b : members)
        if (dominated(proj_[b], proj_[a])) dominated_[a].push_back(b);
}

std::optional<std::size_t> ProjectiveUniverse::index_of(const ColoredPartition& p) const {
  auto it = index_.find(normalize(p));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ColoredPartition ProjectiveUniverse::normalize(const ColoredPartition& p) const {
  return cat_.colored() ? p : forget_colors(p);
}

// ---------------------------------------------------------------------------

ProjectiveModule::ProjectiveModule(const ProjectiveUniverse* universe, std::vector<bool> mask, std::string name)
    : universe_(universe), mask_(std::move(mask)), name_(std::move(name)) {}

std::size_t ProjectiveModule::size() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), true));
}

bool ProjectiveModule::contains(const ColoredPartition& p) const {
  auto idx = universe_->index_of(p);
  return idx && mask_[*idx];
}

std::vector<ColoredPartition> ProjectiveModule::members() const {
  std::vector<ColoredPartition> out;
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (mask_[i]) out.push_back(universe_->at(i));
  return out;
}

std::string ProjectiveModule::dump() const {
  std::ostringstream os;
  os << category_label() << ';' << point_bound() << ';' << name_ << '\n';
  for (const auto& p : members()) os << p.str() << '\n';
  return os.str();
}

namespace {

std::vector<bool> close_mask(const ProjectiveUniverse& u, std::vector<bool> mask, const ModuleRules& rules) {
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) queue.push_back(i);
  std::vector<std::size_t> done;
  auto add = [&](std::size_t i) {
    if (!mask[i]) {
      mask[i] = true;
      queue.push_back(i);
    }
  };
  while (!queue.empty()) {
    const std::size_t p = queue.front();
    queue.pop_front();
    if (rules.reverse) add(u.reverse_of(p));
    if (rules.conjugation)
      for (auto q : u.conjugates_of(p)) add(q);
    if (rules.equivalence)
      for (auto q : u.equivalent_to(p)) add(q);
    if (rules.domination)
      for (auto q : u.dominated_by(p)) add(q);
    done.push_back(p);
    if (rules.tensor) {
      for (auto q : done) {
        if (auto t = u.tensor_of(p, q); t >= 0) add(static_cast<std::size_t>(t));
        if (auto t = u.tensor_of(q, p); t >= 0) add(static_cast<std::size_t>(t));
      }
    }
  }
  return mask;
}

}  // namespace

ProjectiveModule closure(const ProjectiveUniverse& u, const std::vector<ColoredPartition>& gens,
                         const ModuleRules& rules) {
  std::vector<bool> mask(u.size(), false);
  for (const auto& g : gens) {
    auto idx = u.index_of(g);
    if (!idx)
      throw PreconditionViolated(g.str() + " is not a projective of " + u.category().label() + " within " +
                                 std::to_string(u.point_bound()) + " points");
    mask[*idx] = true;
  }
  return ProjectiveModule(&u, close_mask(u, std::move(mask), rules));
}

StabilityReport check_stability(const ProjectiveModule& m) {
  StabilityReport rep;
  const auto members = m.members();
  for (const auto& p : members) {
    for (const auto& q : members) {
      if (p.upper() != q.upper()) continue;
      ++rep.checked;
      auto qpq = q * (p * q);
      if (!m.contains(qpq)) {
        rep.stable = false;
        rep.failures.emplace_back(p, q);
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

ColoredPartition white(std::string_view s) { return ColoredPartition::parse(s); }

std::size_t row_points(const ColoredPartition& p) { return p.upper_size(); }

bool no_through(const ColoredPartition& p) { return through_block_count(p) == 0; }

bool through_blocks_even(const ColoredPartition& p) {
  std::vector<std::size_t> up(p.block_count(), 0);
  std::vector<bool> down(p.block_count(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.is_upper(i)) ++up[p.block_of(i)]; else down[p.block_of(i)] = true;
  }
  for (std::size_t b = 0; b < up.size(); ++b)
    if (up[b] > 0 && down[b] && up[b] % 2 != 0) return false;
  return true;
}

CatalogEntry entry(std::string name, std::vector<ColoredPartition> gens,
                   std::function<bool(const ColoredPartition&)> pred) {
  return {std::move(name), std::move(gens), std::move(pred)};
}

}  // namespace

std::vector<CatalogEntry> catalog(CategoryName cat) {
  const auto two_strands = white("oo;oo;1,2,1,2");
  const auto cap_cup = white("oo;oo;1,1,2,2");
  const auto four_block = white("oo;oo;1,1,1,1");
  auto proj0 = entry("Proj0", {}, no_through);
  auto all = entry("Proj", {white("o;o;1,1")}, [](const ColoredPartition&) { return true; });
  auto even_rows = entry("Proj2", {two_strands}, [](const ColoredPartition& p) { return row_points(p) % 2 == 0; });
  auto even_through = entry("Proj2", {two_strands},
                            [](const ColoredPartition& p) { return through_block_count(p) % 2 == 0; });
  auto cap_class = entry("<cap cap*>", {cap_cup},
                         [](const ColoredPartition& p) { return no_through(p) && row_points(p) % 2 == 0; });
  switch (cat) {
    case CategoryName::NC2: return {proj0, even_rows, all};
    case CategoryName::NC12: return {proj0, even_through, all};
    case CategoryName::NC12Prime:
    case CategoryName::NC12Sharp: return {proj0, cap_class, even_rows, all};
    case CategoryName::NCEven:
      return {proj0, entry("Proj1/2", {four_block}, through_blocks_even), even_rows, all};
    case CategoryName::NC: return {proj0, all};
    case CategoryName::NCPrime: return {proj0, cap_class, all};
    case CategoryName::P2: return {proj0, even_rows, all};
    case CategoryName::CU: break;
  }
  throw PreconditionViolated("the colored pair category has a word-indexed catalog");
}

CatalogEntry cu_catalog_entry(const AdmissibleSetSpec& spec) {
  return {"P(" + spec.str() + ")", {}, [spec](const ColoredPartition& p) { return member(spec, through_word(p)); }};
}

ProjectiveModule truncation(const ProjectiveUniverse& u, const CatalogEntry& e) {
  std::vector<bool> mask(u.size(), false);
  for (std::size_t i = 0; i < u.size(); ++i) mask[i] = e.predicate(u.at(i));
  return ProjectiveModule(&u, std::move(mask), e.name);
}

namespace {

std::vector<AdmissibleSetSpec> spec_candidates(std::size_t half) {
  std::vector<AdmissibleSetSpec> out{AdmissibleSetSpec::empty()};
  const auto top = static_cast<std::uint32_t>(half / 2 + 1);
  for (std::uint32_t k = 0; k <= top; ++k) out.push_back(AdmissibleSetSpec::white(k));
  for (std::uint32_t k = 1; k <= top; ++k) out.push_back(AdmissibleSetSpec::black(k));
  for (std::uint32_t a = 1; a <= top; ++a)
    for (std::uint32_t b = 1; b <= top; ++b) out.push_back(AdmissibleSetSpec::pair(a, b));
  for (std::uint32_t k = 1; k <= half + 1; ++k) out.push_back(AdmissibleSetSpec::mod(k));
  return out;
}

}  // namespace

std::string classify_module(const ProjectiveUniverse& u, const std::vector<ColoredPartition>& gens) {
  auto m = closure(u, gens);
  const auto& cat = u.category();
  if (cat.is_named() && cat.name() == CategoryName::CU) {
    for (const auto& spec : spec_candidates(u.point_bound() / 2))
      if (truncation(u, cu_catalog_entry(spec)) == m) return "P(" + spec.str() + ")";
  } else if (cat.is_named()) {
    for (const auto& e : catalog(cat.name()))
      if (truncation(u, e) == m) return e.name;
  }
  throw NoCatalogMatch("module with " + std::to_string(m.size()) + " members in " + cat.label());
}

ModuleLattice module_lattice(const ProjectiveUniverse& u) {
  ModuleLattice lat;
  const ModuleRules rules;
  auto insert = [&](std::vector<bool> mask) {
    for (const auto& m : lat.modules)
      if (m.mask() == mask) return false;
    lat.modules.emplace_back(&u, std::move(mask));
    return true;
  };
  for (std::size_t i = 0; i < u.size(); ++i) {
    std::vector<bool> mask(u.size(), false);
    mask[i] = true;
    insert(close_mask(u, std::move(mask), rules));
  }
  for (bool grew = true; grew;) {
    grew = false;
    const std::size_t n = lat.modules.size();
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        std::vector<bool> mask = lat.modules[a].mask();
        const auto& mb = lat.modules[b].mask();
        for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = mask[i] || mb[i];
        if (insert(close_mask(u, std::move(mask), rules))) grew = true;
      }
    }
  }
  return lat;
}

}  // namespace qsub
