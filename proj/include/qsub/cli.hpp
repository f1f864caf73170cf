#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace qsub::cli {

struct Config {
  std::string command;
  std::string suite;
  std::string category;
  std::string gens;        // comma separated words or partitions
  std::size_t bound = 8;
  unsigned n = 4;
  std::size_t depth = 2;
  double tol = 1e-9;
  std::uint64_t seed = 1;
  std::string format = "text";
  std::optional<std::string> cache_dir;
  // suite specific
  std::optional<std::uint32_t> k;
  std::size_t len = 4;
  std::size_t points = 6;
  std::string base = "m2";
  std::size_t samples = 1000;
  std::string upper, lower;

  nlohmann::json to_json() const;
};

struct Report {
  nlohmann::json config;
  nlohmann::json results;
  bool pass = false;
  std::vector<std::string> text;  // human-readable lines

  int exit_code() const { return pass ? 0 : 1; }
  std::string render(const std::string& format) const;
};

Report classify_words(const Config& c);
Report table(const Config& c);
Report enumerate_frame(const Config& c);
Report module_closure(const Config& c);
Report verify_laws(const Config& c);
Report verify_fusion_rank(const Config& c);
Report verify_psi(const Config& c);
Report verify_trees(const Config& c);
Report verify_reduce(const Config& c);

// Dispatches on command (and suite for "verify").
Report run(const Config& c);

}  // namespace qsub::cli
