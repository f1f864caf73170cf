#include <doctest.h>

#include <filesystem>

#include "oracles.hpp"
#include "qsub/categories.hpp"
#include "qsub/errors.hpp"

using namespace qsub;

static ColoredPartition P(const char* s) { return ColoredPartition::parse(s); }
static ColorWord W(const char* s) { return ColorWord::parse(s); }

TEST_CASE("names round trip") {
  for (auto c : {CategoryName::CU, CategoryName::NC2, CategoryName::NC12, CategoryName::NC12Prime,
                 CategoryName::NC12Sharp, CategoryName::NCEven, CategoryName::NCPrime, CategoryName::NC,
                 CategoryName::P2})
    CHECK(parse_category(to_string(c)) == c);
  CHECK_THROWS_AS(parse_category("XX"), ParseError);
  CHECK(orthogonal_categories().size() == 7);
  CHECK(is_colored(CategoryName::CU));
  CHECK_FALSE(is_colored(CategoryName::NC2));
}

TEST_CASE("membership examples") {
  CHECK(contains(CategoryName::NC2, P("oo;e;1,1")));
  CHECK_FALSE(contains(CategoryName::CU, P("oo;oo;1,2,2,1")));
  CHECK(contains(CategoryName::NCPrime, P("e;oo;1,2")));
  CHECK_FALSE(contains(CategoryName::NCPrime, P("e;o;1")));
  CHECK(contains(CategoryName::CU, P("ox;e;1,1")));
  CHECK_FALSE(contains(CategoryName::CU, P("oo;e;1,1")));
}

TEST_CASE("enumeration examples") {
  CHECK(enumerate(CategoryName::NC, ColorWord{}, W("oooo")).size() == 14);
  CHECK(enumerate(CategoryName::NC2, ColorWord{}, W("oooo")).size() == 2);
  auto cu = enumerate(CategoryName::CU, ColorWord{}, W("ox"));
  REQUIRE(cu.size() == 1);
  CHECK(cu[0] == P("e;ox;1,1"));
  CHECK_THROWS_AS(enumerate(CategoryName::NC, W("ooooooo"), W("oooooo")), FrameTooLarge);
}

TEST_CASE("enumeration agrees with filtering all set partitions") {
  const std::vector<std::pair<CategoryName, std::string>> cats = {
      {CategoryName::NC2, "NC2"},       {CategoryName::NC12, "NC12"},     {CategoryName::NC12Prime, "NC12prime"},
      {CategoryName::NC12Sharp, "NC12sharp"}, {CategoryName::NCEven, "NCeven"}, {CategoryName::NCPrime, "NCprime"},
      {CategoryName::NC, "NC"},         {CategoryName::P2, "P2"}};
  for (const auto& [c, name] : cats)
    for (std::size_t k = 0; k <= 4; ++k)
      for (std::size_t l = 0; k + l <= 7; ++l) {
        auto up = ColorWord::repeat(Color::White, k), lo = ColorWord::repeat(Color::White, l);
        CHECK_MESSAGE(enumerate(c, up, lo) == oracle::brute_enumerate(name, up, lo), name, " ", k, ",", l);
      }
  for (const auto& up : all_words(3))
    for (const auto& lo : all_words(4))
      if (up.size() + lo.size() <= 7) CHECK(enumerate(CategoryName::CU, up, lo) == oracle::brute_enumerate("CU", up, lo));
}

TEST_CASE("enumeration counts follow the classical sequences") {
  for (std::size_t n = 0; n <= 10; ++n) {
    auto lo = ColorWord::repeat(Color::White, n);
    CHECK(enumerate(CategoryName::NC, ColorWord{}, lo).size() == oracle::catalan(n));
    CHECK(enumerate(CategoryName::NC12, ColorWord{}, lo).size() == oracle::motzkin(n));
    if (n % 2 == 0) {
      CHECK(enumerate(CategoryName::NC2, ColorWord{}, lo).size() == oracle::catalan(n / 2));
      CHECK(enumerate(CategoryName::NCEven, ColorWord{}, lo).size() == oracle::fuss_even(n / 2));
      std::uint64_t df = 1;
      for (std::size_t i = 1; i < n; i += 2) df *= i;
      CHECK(enumerate(CategoryName::P2, ColorWord{}, lo).size() == df);
    }
  }
}

TEST_CASE("colored pair vectors agree with interval counting") {
  for (const auto& w : all_words(8)) CHECK(enumerate(CategoryName::CU, ColorWord{}, w).size() == oracle::cu_vectors(w));
}

TEST_CASE("closure of the white identity is the colored pair category") {
  auto gen = CategorySpec::generated({}, 6);
  std::set<ColoredPartition> got(gen.members().begin(), gen.members().end());
  std::set<ColoredPartition> ref;
  for (const auto& up : all_words(6))
    for (const auto& lo : all_words(6 - up.size()))
      for (const auto& p : oracle::brute_enumerate("CU", up, lo)) ref.insert(p);
  CHECK(got == ref);
}

TEST_CASE("closure of the color-changing identity is symmetric under recoloring") {
  auto gen = CategorySpec::generated({P("o;x;1,1")}, 4);
  for (const auto& p : gen.members()) {
    const std::size_t n = p.size();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<Color> up, lo;
      for (std::size_t i = 0; i < n; ++i) ((i < p.upper_size()) ? up : lo).push_back(mask >> i & 1 ? Color::Black : Color::White);
      CHECK(gen.contains(ColoredPartition(ColorWord(up), ColorWord(lo), p.blocks())));
    }
  }
}

TEST_CASE("closure of the four-block covers every even noncrossing shape up to 6 points") {
  auto gen = CategorySpec::generated({P("oo;oo;1,1,1,1")}, 6);
  std::set<ColoredPartition> shapes;
  std::size_t total = 0;
  for (const auto& p : gen.members()) {
    auto wp = forget_colors(p);
    CHECK(contains(CategoryName::NCEven, wp));
    shapes.insert(wp);
  }
  for (std::size_t k = 0; k <= 6; ++k)
    for (std::size_t l = 0; k + l <= 6; ++l)
      total += enumerate(CategoryName::NCEven, ColorWord::repeat(Color::White, k), ColorWord::repeat(Color::White, l)).size();
  // every member is in NCeven, so equal counts mean equal sets
  CHECK(shapes.size() == total);
}

TEST_CASE("enumeration cache persists and round trips") {
  auto dir = std::filesystem::temp_directory_path() / "qsub_cache_test";
  std::filesystem::remove_all(dir);
  std::vector<ColoredPartition> first;
  {
    EnumerationCache cache(dir);
    first = cache.get(CategoryName::NC, W("ooo"), W("oo"));
    CHECK(cache.misses() == 1);
    cache.get(CategoryName::NC, W("ooo"), W("oo"));
    CHECK(cache.hits() == 1);
  }
  {
    EnumerationCache cache(dir);
    auto again = cache.get(CategoryName::NC, W("ooo"), W("oo"));
    CHECK(again == first);
    CHECK(again == enumerate(CategoryName::NC, W("ooo"), W("oo")));
  }
  std::filesystem::remove_all(dir);
}
