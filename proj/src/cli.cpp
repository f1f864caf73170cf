#include "qsub/cli.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "qsub/categories.hpp"
#include "qsub/errors.hpp"
#include "qsub/fusion.hpp"
#include "qsub/linreal.hpp"
#include "qsub/partitions.hpp"
#include "qsub/projmod.hpp"
#include "qsub/qgraph.hpp"
#include "qsub/words.hpp"

namespace qsub::cli {

using nlohmann::json;

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  // partitions contain commas, so ' ' and '|' also separate items
  bool partition_mode = s.find(';') != std::string::npos;
  for (char ch : s) {
    bool sep = ch == ' ' || ch == '|' || (!partition_mode && ch == ',');
    if (sep) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty() || out.empty()) out.push_back(cur);
  return out;
}

json words_json(const std::vector<ColorWord>& ws) {
  json a = json::array();
  for (const auto& w : ws) a.push_back(w.str());
  return a;
}

Report make_report(const Config& c) {
  Report r;
  r.config = c.to_json();
  r.results = json::object();
  return r;
}

const std::map<CategoryName, std::size_t>& expected_counts() {
  static const std::map<CategoryName, std::size_t> m = {
      {CategoryName::NC2, 3},       {CategoryName::NC12, 3},   {CategoryName::NC12Prime, 4},
      {CategoryName::NC12Sharp, 4}, {CategoryName::NCEven, 4}, {CategoryName::NC, 2},
      {CategoryName::NCPrime, 3},
  };
  return m;
}

std::string q(const QuadraticNumber& x) { return x.str(); }

}  // namespace

json Config::to_json() const {
  json j = {{"command", command}, {"format", format}, {"seed", seed}};
  if (!suite.empty()) j["suite"] = suite;
  if (!category.empty()) j["category"] = category;
  if (!gens.empty()) j["gens"] = gens;
  j["bound"] = bound;
  j["N"] = n;
  j["depth"] = depth;
  j["tol"] = tol;
  if (k) j["k"] = *k;
  j["len"] = len;
  j["points"] = points;
  j["base"] = base;
  j["samples"] = samples;
  if (cache_dir) j["cache_dir"] = *cache_dir;
  if (!upper.empty() || !lower.empty()) {
    j["upper"] = upper;
    j["lower"] = lower;
  }
  return j;
}

std::string Report::render(const std::string& format) const {
  if (format == "json") {
    json j = {{"config", config}, {"results", results}, {"verdict", pass ? "pass" : "fail"}};
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  for (const auto& line : text) os << line << "\n";
  os << "verdict: " << (pass ? "pass" : "fail") << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------

Report classify_words(const Config& c) {
  Report r = make_report(c);
  std::vector<ColorWord> gens;
  for (const auto& s : split_list(c.gens)) gens.push_back(ColorWord::parse(s));
  auto res = classify(gens, c.bound);
  bool ok = res.missing.empty() && res.extra.empty();
  r.results = {{"generators", words_json(gens)},
               {"spec", res.spec.str()},
               {"bound", res.bound},
               {"work_bound", res.work_bound},
               {"may_be_larger", res.may_be_larger},
               {"missing", words_json(res.missing)},
               {"extra", words_json(res.extra)}};
  r.pass = ok;
  r.text.push_back("generators: " + words_json(gens).dump());
  r.text.push_back("spec: " + res.spec.str() + (res.may_be_larger ? " (parameter may be larger)" : ""));
  r.text.push_back("compared at length " + std::to_string(res.bound) + ", generated up to " +
                   std::to_string(res.work_bound));
  r.text.push_back("missing: " + words_json(res.missing).dump() + "  extra: " + words_json(res.extra).dump());
  return r;
}

Report table(const Config& c) {
  Report r = make_report(c);
  bool all_ok = true;
  json cats = json::array();
  for (CategoryName name : orthogonal_categories()) {
    ProjectiveUniverse u(name, c.bound);
    auto lattice = module_lattice(u);
    auto entries = catalog(name);
    std::vector<ProjectiveModule> truncs;
    for (const auto& e : entries) truncs.push_back(truncation(u, e));

    json mods = json::array();
    std::size_t unmatched = 0;
    for (auto& m : lattice.modules) {
      std::string label;
      for (std::size_t i = 0; i < entries.size(); ++i)
        if (truncs[i] == m) label = label.empty() ? entries[i].name : label + "=" + entries[i].name;
      if (label.empty()) {
        ++unmatched;
        label = "unmatched";
      }
      mods.push_back({{"name", label}, {"size", m.size()}});
    }
    std::vector<std::string> missing;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      bool found = std::any_of(lattice.modules.begin(), lattice.modules.end(),
                               [&](const ProjectiveModule& m) { return m == truncs[i]; });
      if (!found) missing.push_back(entries[i].name);
    }
    std::size_t expected = expected_counts().at(name);
    bool ok = lattice.modules.size() == expected && unmatched == 0 && missing.empty();
    json flags = json::array();
    if (c.bound == 0)
      flags.push_back("degenerate");
    else if (!ok && c.bound < 8)
      flags.push_back("bound too small");
    all_ok = all_ok && ok;
    cats.push_back({{"category", to_string(name)},
                    {"projectives", u.size()},
                    {"modules", mods},
                    {"count", lattice.modules.size()},
                    {"expected", expected},
                    {"missing_catalog", missing},
                    {"flags", flags},
                    {"match", ok}});

    std::string line = to_string(name) + ": " + std::to_string(lattice.modules.size()) + " modules (expected " +
                       std::to_string(expected) + ") ";
    for (const auto& m : mods) line += " " + m["name"].get<std::string>() + "[" + std::to_string(m["size"].get<std::size_t>()) + "]";
    for (const auto& f : flags) line += "  <" + f.get<std::string>() + ">";
    if (!missing.empty()) {
      line += "  missing:";
      for (const auto& s : missing) line += " " + s;
    }
    line += ok ? "  ok" : "  MISMATCH";
    r.text.push_back(line);
  }
  r.results = {{"point_bound", c.bound}, {"categories", cats}};
  r.pass = all_ok;
  return r;
}

Report enumerate_frame(const Config& c) {
  Report r = make_report(c);
  EnumerationCache cache(c.cache_dir ? std::optional<std::filesystem::path>(*c.cache_dir) : std::nullopt);
  CategoryName name = parse_category(c.category);
  auto up = ColorWord::parse(c.upper), lo = ColorWord::parse(c.lower);
  const auto& parts = cache.get(name, up, lo);
  json list = json::array();
  for (const auto& p : parts) {
    list.push_back(p.str());
    r.text.push_back(p.str());
  }
  r.results = {{"category", to_string(name)}, {"count", parts.size()}, {"partitions", list}};
  r.text.push_back("count: " + std::to_string(parts.size()));
  r.pass = true;
  return r;
}

Report module_closure(const Config& c) {
  Report r = make_report(c);
  CategoryName name = parse_category(c.category);
  ProjectiveUniverse u(name, c.bound);
  std::vector<ColoredPartition> gens;
  for (const auto& s : split_list(c.gens))
    if (!s.empty()) gens.push_back(ColoredPartition::parse(s));
  auto m = closure(u, gens);
  std::string cls;
  try {
    cls = classify_module(u, gens);
  } catch (const NoCatalogMatch&) {
    cls = "unmatched";
  }
  m.set_name(cls);
  auto st = check_stability(m);
  json members = json::array();
  for (const auto& p : m.members()) members.push_back(p.str());
  r.results = {{"category", to_string(name)}, {"size", m.size()},   {"classification", cls},
               {"stable", st.stable},         {"members", members}};
  std::istringstream dump(m.dump());
  for (std::string line; std::getline(dump, line);) r.text.push_back(line);
  r.text.push_back("stable: " + std::string(st.stable ? "yes" : "no"));
  r.pass = cls != "unmatched";
  return r;
}

Report verify_laws(const Config& c) {
  Report r = make_report(c);
  auto rep = check_laws(c.n, c.points);
  r.results = {{"N", rep.n},
               {"max_points", rep.max_points},
               {"adjoint_checked", rep.adjoint_checked},
               {"tensor_checked", rep.tensor_checked},
               {"loop_checked", rep.loop_checked},
               {"loop_with_loops", rep.loop_with_loops},
               {"orientation", to_string(rep.orientation)},
               {"failures", rep.failures}};
  r.pass = rep.passed();
  r.text.push_back("N=" + std::to_string(rep.n) + " points<=" + std::to_string(rep.max_points));
  r.text.push_back("adjoint " + std::to_string(rep.adjoint_checked) + ", tensor " +
                   std::to_string(rep.tensor_checked) + ", loop " + std::to_string(rep.loop_checked) + " (" +
                   std::to_string(rep.loop_with_loops) + " closing loops)");
  r.text.push_back("orientation: " + to_string(rep.orientation));
  for (const auto& f : rep.failures) r.text.push_back("failure: " + f);
  return r;
}

Report verify_fusion_rank(const Config& c) {
  Report r = make_report(c);
  json rows = json::array();
  bool ok = true;
  for (const auto& w : all_words(c.len)) {
    auto fold = trivial_multiplicity(w);
    auto dim = fixed_points_dim(w, c.n);
    auto count = enumerate(CategoryName::CU, ColorWord{}, w).size();
    bool eq = fold == dim && dim == count;
    ok = ok && eq;
    rows.push_back({{"word", w.str()}, {"fold", fold}, {"fixed_dim", dim}, {"diagrams", count}, {"equal", eq}});
    if (!eq || fold != 0)
      r.text.push_back(w.str() + ": fold " + std::to_string(fold) + ", fixed " + std::to_string(dim) +
                       ", diagrams " + std::to_string(count) + (eq ? "" : "  MISMATCH"));
  }
  r.results = {{"N", c.n}, {"max_len", c.len}, {"words", rows}};
  r.text.push_back(std::to_string(rows.size()) + " words checked, nonzero rows shown");
  r.pass = ok;
  return r;
}

Report verify_psi(const Config& c) {
  Report r = make_report(c);
  std::vector<std::uint32_t> ks;
  if (c.k)
    ks = {*c.k};
  else
    ks = {0, 1, 2};
  bool ok = true;
  json per_k = json::array();
  auto base_u = [](const ColorWord& a, const ColorWord& b) { return product_u(a, b); };
  for (auto k : ks) {
    auto spec = AdmissibleSetSpec::white(k);
    // labels: words of White(k); Psi lands in White(k+1)
    std::size_t bij_checked = 0, bij_fail = 0;
    for (const auto& v : slice(AdmissibleSetSpec::white(k + 1), 2 * c.len)) {
      ++bij_checked;
      auto x = psi_inverse(v);
      bool good = psi(x) == v;
      for (const auto& letter : x) good = good && member(spec, letter);
      if (!good) ++bij_fail;
    }
    // injectivity on the other side: sequences of letters up to the same total length
    std::size_t inj_fail = 0;
    auto letters_upto = [&](std::size_t n) {
      auto ls = slice(spec, n);
      std::erase_if(ls, [](const ColorWord& w) { return w.size() % 2 != 0; });
      return ls;
    };
    const auto long_letters = letters_upto(2 * c.len >= 2 ? 2 * c.len - 2 : 0);
    std::vector<WreathWord> seqs = {WreathWord{}};
    std::set<ColorWord> images = {psi(WreathWord{})};
    for (std::size_t i = 0; i < seqs.size(); ++i) {
      std::size_t used = psi(seqs[i]).size();
      for (const auto& a : long_letters) {
        if (used + a.size() + 2 > 2 * c.len) continue;
        auto next = seqs[i];
        next.push_back(a);
        if (!images.insert(psi(next)).second) ++inj_fail;
        seqs.push_back(std::move(next));
      }
    }
    if (seqs.size() != bij_checked) ++inj_fail;

    const auto letters = letters_upto(c.len);
    WreathRing ring(base_u);
    std::size_t hom_checked = 0, hom_fail = 0;
    for (const auto& a : letters)
      for (const auto& b : letters) {
        ++hom_checked;
        auto lhs = psi(ring.product(WreathWord{a}, WreathWord{b}));
        auto rhs = product_u(psi(WreathWord{a}), psi(WreathWord{b}));
        if (lhs != rhs) {
          ++hom_fail;
          if (hom_fail <= 5)
            r.text.push_back("k=" + std::to_string(k) + " [" + a.str() + "]x[" + b.str() + "]: " +
                             to_string(lhs) + " vs " + to_string(rhs));
        }
      }
    bool k_ok = bij_fail == 0 && inj_fail == 0 && hom_fail == 0;
    ok = ok && k_ok;
    per_k.push_back({{"k", k},
                     {"bijection_checked", bij_checked},
                     {"bijection_failures", bij_fail + inj_fail},
                     {"homomorphism_checked", hom_checked},
                     {"homomorphism_failures", hom_fail}});
    r.text.push_back("k=" + std::to_string(k) + ": bijection on " + std::to_string(bij_checked) + " words, " +
                     std::to_string(bij_fail + inj_fail) + " failures; homomorphism on " +
                     std::to_string(hom_checked) + " letter pairs, " + std::to_string(hom_fail) + " failures");
  }
  r.results = {{"max_word_len", 2 * c.len}, {"max_letter_len", c.len}, {"per_k", per_k}};
  r.pass = ok;
  return r;
}

namespace {

QuantumSpace parse_base(const std::string& s) {
  if (s.size() >= 2 && (s[0] == 'c' || s[0] == 'm')) {
    std::uint32_t n = 0;
    try {
      n = static_cast<std::uint32_t>(std::stoul(s.substr(1)));
    } catch (const std::exception&) {
      throw ParseError("bad base: " + s);
    }
    if (n < 2) throw ParseError("base dimension must be at least 2: " + s);
    return s[0] == 'c' ? QuantumSpace::classical(n) : QuantumSpace::matrix(n);
  }
  throw ParseError("bad base (expected cN or mN): " + s);
}

json schur_json(const SchurReport& s) {
  json levels = json::array();
  for (const auto& l : s.levels)
    levels.push_back({{"level", l.level},
                      {"identity", q(l.identity)},
                      {"lift", q(l.lift)},
                      {"mm_star", q(l.mm_star)},
                      {"lift_norm_ratio", q(l.lift_norm_ratio)}});
  return {{"convention", to_string(s.convention)},
          {"delta", q(s.delta)},
          {"delta_k", q(s.delta_k)},
          {"claimed", q(s.claimed)},
          {"levels", levels},
          {"decomposes", s.decomposes},
          {"identity_equals_lift", s.identity_equals_lift},
          {"matches_claim", s.matches_claim},
          {"level_dependent", s.level_dependent},
          {"verdict", s.verdict}};
}

}  // namespace

Report verify_trees(const Config& c) {
  Report r = make_report(c);
  QuantumSpace base = parse_base(c.base);
  bool ok = true;
  json conv = json::array();
  for (auto cv : {AdjointConvention::Weighted, AdjointConvention::PerLevel}) {
    auto s = schur_constants(base, c.depth, cv);
    ok = ok && s.decomposes && !s.verdict.empty();
    conv.push_back(schur_json(s));
    r.text.push_back(to_string(cv) + ": delta_k = " + q(s.delta_k) + ", claimed constant " + q(s.claimed));
    for (const auto& l : s.levels)
      r.text.push_back("  level " + std::to_string(l.level) + ": Id " + q(l.identity) + ", A " + q(l.lift) +
                       ", m m* " + q(l.mm_star));
    r.text.push_back("  " + s.verdict);
  }
  auto tc = tree_checks(base, c.depth);
  bool tc_ok = tc.delta_form && tc.state_unital && tc.state_positive && tc.adjacency_self_adjoint_preserving;
  ok = ok && tc_ok;
  r.results["schur"] = conv;
  r.results["tree_checks"] = {{"delta_form", tc.delta_form},
                              {"state_unital", tc.state_unital},
                              {"state_positive", tc.state_positive},
                              {"adjacency_self_adjoint_preserving", tc.adjacency_self_adjoint_preserving}};
  r.text.push_back(std::string("tree checks: ") + (tc_ok ? "ok" : "FAILED"));

  if (base.kind == QuantumSpace::Kind::Classical) {
    auto g = classical_graph(base.n, c.depth);
    std::size_t expect = 0, pw = 1;
    for (std::size_t i = 0; i <= c.depth; ++i, pw *= base.n) expect += pw;
    bool g_ok = g.vertices.size() == expect && g.edges.size() + 1 == expect && g.binary;
    ok = ok && g_ok;
    r.results["classical_graph"] = {
        {"vertices", g.vertices.size()}, {"edges", g.edges.size()}, {"binary", g.binary}, {"ok", g_ok}};
    r.text.push_back("classical tree: " + std::to_string(g.vertices.size()) + " vertices, " +
                     std::to_string(g.edges.size()) + " edges" + (g.binary ? ", 0/1 entries" : ", NON-BINARY"));
  }
  if (base.kind == QuantumSpace::Kind::MatrixTrace) {
    json runs = json::array();
    double worst = 0;
    bool a_ok = true;
    for (std::uint64_t i = 0; i < 10; ++i) {
      auto v = haar_unitary(base.n, c.seed + i);
      auto a = action_commutes(base.n, c.depth, v, c.tol);
      a_ok = a_ok && a.commutes && a.state_preserved;
      worst = std::max(worst, a.max_error);
      runs.push_back({{"seed", c.seed + i}, {"commutes", a.commutes}, {"state_preserved", a.state_preserved},
                      {"max_error", a.max_error}});
    }
    ok = ok && a_ok;
    r.results["action"] = {{"runs", runs}, {"max_error", worst}, {"ok", a_ok}};
    std::ostringstream os;
    os << "action of 10 Haar unitaries: " << (a_ok ? "commutes" : "FAILED") << ", max error " << worst;
    r.text.push_back(os.str());
  }
  r.results["base"] = base.str();
  r.results["depth"] = c.depth;
  r.pass = ok;
  return r;
}

Report verify_reduce(const Config& c) {
  Report r = make_report(c);
  std::uint32_t kmax = c.k.value_or(4);
  std::size_t maxlen = c.len;
  // every word with max prefix balance exactly k in 1..kmax
  std::vector<std::pair<ColorWord, std::uint32_t>> pool;
  for (std::uint32_t k = 1; k <= kmax; ++k)
    for (const auto& w : slice(AdmissibleSetSpec::white(k), maxlen)) {
      auto pb = prefix_balances(w);
      if (!pb.empty() && *std::max_element(pb.begin(), pb.end()) == static_cast<int>(k)) pool.emplace_back(w, k);
    }
  if (pool.empty()) throw PreconditionViolated("no words with the requested parameters");
  std::mt19937_64 rng(c.seed);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::size_t failures = 0;
  std::size_t longest_trace = 0;
  for (std::size_t s = 0; s < c.samples; ++s) {
    const auto& [w, k] = pool[pick(rng)];
    auto trace = reduce(w, k);
    bool good = !trace.empty() && trace.front() == w &&
                trace.back() == ColorWord::repeat(Color::White, k) + ColorWord::repeat(Color::Black, k);
    for (std::size_t i = 1; good && i < trace.size(); ++i) good = is_elementary_cancellation(trace[i - 1], trace[i]);
    longest_trace = std::max(longest_trace, trace.size());
    if (!good) {
      ++failures;
      if (failures <= 5) r.text.push_back("failed: " + w.str() + " (k=" + std::to_string(k) + ")");
    }
  }
  r.results = {{"pool", pool.size()},       {"samples", c.samples}, {"failures", failures},
               {"longest_trace", longest_trace}, {"max_k", kmax},      {"max_len", maxlen}};
  r.text.push_back(std::to_string(c.samples) + " samples from " + std::to_string(pool.size()) + " words, " +
                   std::to_string(failures) + " failures");
  r.pass = failures == 0;
  return r;
}

Report run(const Config& c) {
  if (c.command == "classify-words") return classify_words(c);
  if (c.command == "table") return table(c);
  if (c.command == "enumerate") return enumerate_frame(c);
  if (c.command == "module") return module_closure(c);
  if (c.command == "verify") {
    if (c.suite == "laws") return verify_laws(c);
    if (c.suite == "fusion-rank") return verify_fusion_rank(c);
    if (c.suite == "psi") return verify_psi(c);
    if (c.suite == "trees") return verify_trees(c);
    if (c.suite == "reduce") return verify_reduce(c);
    throw PreconditionViolated("unknown suite: " + c.suite);
  }
  throw PreconditionViolated("unknown command: " + c.command);
}

}  // namespace qsub::cli
