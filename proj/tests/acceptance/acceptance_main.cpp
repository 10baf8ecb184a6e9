// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Each check compares the engine against an independent oracle or
// invariant and enforces a wall-clock budget.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oracle/tree_oracle.hpp"
#include "test_util.hpp"
#include "treeswap/corpus_io.hpp"
#include "treeswap/graph_sim.hpp"
#include "treeswap/sampler.hpp"
#include "treeswap/subtree.hpp"
#include "treeswap/swapper.hpp"

namespace ts = treeswap;
namespace oracle = treeswap::oracle;
using treeswap::testing::data_path;

namespace {

// Collects the first few failure messages of a criterion.
class Check {
 public:
  void fail(const std::string& msg) {
    if (failures_++ < 5) messages_.push_back(msg);
  }
  void expect(bool cond, const std::function<std::string()>& msg) {
    if (!cond) fail(msg());
  }
  bool ok() const { return failures_ == 0; }
  std::size_t failures() const { return failures_; }
  const std::vector<std::string>& messages() const { return messages_; }

 private:
  std::size_t failures_ = 0;
  std::vector<std::string> messages_;
};

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<std::string(Check&)> body;  // returns a short summary
};

std::vector<ts::BiSentence> load_pair(const std::string& stem) {
  return ts::align_bitext(ts::read_conllu(data_path(stem + ".en.conllu")),
                          ts::read_conllu(data_path(stem + ".de.conllu")));
}

// `# text = ...` lines of a CoNLL-U file, in order.
std::vector<std::string> text_comments(const std::string& file) {
  std::vector<std::string> out;
  for (const std::string& line : ts::testing::read_lines(data_path(file))) {
    const std::string prefix = "# text = ";
    if (line.rfind(prefix, 0) == 0) out.push_back(line.substr(prefix.size()));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string eligibility_suite(Check& c) {
  auto corpus = load_pair("eligibility");
  std::map<std::string, const ts::BiSentence*> by_id;
  for (const auto& b : corpus) by_id[b.source.sent_id.value_or("")] = &b;

  std::size_t rows = 0;
  std::set<std::string> reasons_seen;
  for (const std::string& line : ts::testing::read_lines(data_path("eligibility.expected.tsv"))) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream in(line);
    std::string id, type, expected;
    std::getline(in, id, '\t');
    std::getline(in, type, '\t');
    std::getline(in, expected, '\t');
    ++rows;
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      c.fail("no fixture " + id);
      continue;
    }
    auto e = ts::check_eligibility(*it->second, ts::parse_swap_type(type));
    const std::string got = e.ok() ? "eligible" : std::string(ts::to_string(e.rejection().reason));
    reasons_seen.insert(expected);
    c.expect(got == expected, [&] { return id + "/" + type + ": expected " + expected + ", got " + got; });
  }
  c.expect(reasons_seen.size() == 5, [] { return std::string("fixtures do not cover every outcome"); });
  return std::to_string(rows) + " expectations";
}

// ---------------------------------------------------------------------------

struct LabeledShape {
  std::size_t shape = 0;
  std::vector<std::uint8_t> labels;
  ts::LabeledTree tree;
};

struct ScoredMapping {
  int base = 0;  // cost with every mapped pair relabeled for free
  oracle::Mapping pairs;
};

std::string ged_oracle(Check& c) {
  const std::vector<std::string> alphabet = {"NOUN", "ADJ", "DET"};
  std::vector<std::vector<int>> shapes;
  for (int n = 1; n <= 5; ++n) {
    for (auto& s : oracle::ordered_tree_shapes(n)) shapes.push_back(std::move(s));
  }

  std::vector<LabeledShape> trees;
  for (std::size_t s = 0; s < shapes.size(); ++s) {
    const std::size_t n = shapes[s].size();
    std::size_t count = 1;
    for (std::size_t k = 0; k < n; ++k) count *= alphabet.size();
    for (std::size_t code = 0; code < count; ++code) {
      std::vector<std::uint8_t> labels(n);
      std::vector<std::string> names(n);
      std::size_t rest = code;
      for (std::size_t k = 0; k < n; ++k) {
        labels[k] = static_cast<std::uint8_t>(rest % alphabet.size());
        names[k] = alphabet[labels[k]];
        rest /= alphabet.size();
      }
      trees.push_back(LabeledShape{s, labels, ts::LabeledTree(names, shapes[s])});
    }
  }

  // Only maximal mappings need to be scored: a relabel costs at most 2 and
  // a delete plus an insert at least 2, so adding a pair never costs more.
  std::vector<std::vector<ScoredMapping>> mappings(shapes.size() * shapes.size());
  for (std::size_t a = 0; a < shapes.size(); ++a) {
    for (std::size_t b = 0; b < shapes.size(); ++b) {
      auto& out = mappings[a * shapes.size() + b];
      const std::vector<int> zeros1(shapes[a].size(), 0), zeros2(shapes[b].size(), 0);
      for (auto& m : oracle::tree_mappings(shapes[a], shapes[b], true)) {
        int base = oracle::mapping_cost(m, zeros1, shapes[a], zeros2, shapes[b]);
        out.push_back(ScoredMapping{base, std::move(m)});
      }
      std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.base < y.base; });
    }
  }

  std::size_t pairs = 0;
  for (const LabeledShape& t1 : trees) {
    for (const LabeledShape& t2 : trees) {
      int best = std::numeric_limits<int>::max();
      for (const ScoredMapping& m : mappings[t1.shape * shapes.size() + t2.shape]) {
        if (m.base >= best) break;
        int cost = m.base;
        for (auto [x, y] : m.pairs) cost += t1.labels[static_cast<std::size_t>(x)] != t2.labels[static_cast<std::size_t>(y)] ? 2 : 0;
        best = std::min(best, cost);
      }
      const int got = ts::ged(t1.tree, t2.tree);
      ++pairs;
      c.expect(got == best, [&] {
        std::ostringstream os;
        os << "ged mismatch on shapes " << t1.shape << "/" << t2.shape << ": " << got << " vs " << best;
        return os.str();
      });
    }
  }

  std::mt19937_64 gen(2023);
  for (int trial = 0; trial < 10000; ++trial) {
    const int n1 = 1 + static_cast<int>(gen() % 8), n2 = 1 + static_cast<int>(gen() % 8);
    ts::LabeledTree a(oracle::random_labels(gen, n1, alphabet), oracle::random_parents(gen, n1));
    ts::LabeledTree b(oracle::random_labels(gen, n2, alphabet), oracle::random_parents(gen, n2));
    const double sim = ts::ged_similarity(a, b);
    c.expect(sim >= 0.0 && sim <= 1.0, [&] { return "similarity out of range: " + std::to_string(sim); });
    c.expect(ts::ged_similarity(a, a) == 1.0, [] { return std::string("identical trees not at 1"); });
  }
  return std::to_string(pairs) + " exhaustive pairs (" + std::to_string(trees.size()) +
         " trees), 10000 random";
}

// ---------------------------------------------------------------------------

std::string levenshtein_oracle(Check& c) {
  const std::vector<std::string> alphabet = {"NOUN", "VERB", "ADJ", "DET"};
  std::mt19937_64 gen(77);
  for (int trial = 0; trial < 10000; ++trial) {
    auto a = oracle::random_labels(gen, static_cast<int>(gen() % 11), alphabet);
    auto b = oracle::random_labels(gen, static_cast<int>(gen() % 11), alphabet);
    const std::size_t want = oracle::levenshtein_table(a, b);
    const std::size_t got = ts::levenshtein(a, b);
    c.expect(got == want, [&] { return "trial " + std::to_string(trial) + ": " + std::to_string(got) +
                                       " vs " + std::to_string(want); });
  }
  return "10000 pairs";
}

// ---------------------------------------------------------------------------

std::string edge_mapping_properties(Check& c) {
  const std::vector<std::string> alphabet = {"NOUN", "ADJ", "DET", "ADP"};
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 10000; ++trial) {
    const int n1 = 1 + static_cast<int>(gen() % 8), n2 = 1 + static_cast<int>(gen() % 8);
    ts::LabeledTree g1(oracle::random_labels(gen, n1, alphabet), oracle::random_parents(gen, n1));
    ts::LabeledTree g2(oracle::random_labels(gen, n2, alphabet), oracle::random_parents(gen, n2));
    const std::uint64_t seed = gen();
    ts::Rng r1(seed), r2(seed);
    const ts::EdgeMapping m = ts::edge_mapping(g1, g2, r1);
    const ts::EdgeMapping again = ts::edge_mapping(g1, g2, r2);
    c.expect(m.pairs == again.pairs, [&] { return "nondeterministic mapping, trial " + std::to_string(trial); });

    std::set<int> used1, used2;
    for (auto [p1, p2] : m.pairs) {
      c.expect(used1.insert(p1).second && used2.insert(p2).second,
               [&] { return "mapping not injective, trial " + std::to_string(trial); });
      c.expect(g1.parent(p1) >= 0 && g2.parent(p2) >= 0, [] { return std::string("root mapped as edge"); });
      if (g1.parent(p1) < 0 || g2.parent(p2) < 0) continue;
      const ts::Edge e1{g1.label(g1.parent(p1)), g1.label(p1), p1};
      const ts::Edge e2{g2.label(g2.parent(p2)), g2.label(p2), p2};
      const int score = (e1.head_label == e2.head_label) + (e1.dep_label == e2.dep_label);
      c.expect(score >= 1, [&] { return "zero-score pair, trial " + std::to_string(trial); });
    }
    c.expect(m.size() <= std::min(g1.edge_count(), g2.edge_count()),
             [&] { return "mapping larger than an edge set, trial " + std::to_string(trial); });

    ts::Rng r3(seed), r4(seed);
    const double j = ts::em_similarity(g1, g2, r3);
    c.expect(j >= 0.0 && j <= 1.0, [&] { return "J out of range: " + std::to_string(j); });
    c.expect(ts::em_similarity(g1, g1, r4) == 1.0, [&] { return "J != 1 on identical trees, trial " +
                                                                 std::to_string(trial); });
  }
  return "10000 pairs";
}

// ---------------------------------------------------------------------------

// Lowercases ASCII and two-byte Latin-1 capitals; enough to compare texts
// that may differ only in recasing.
std::string fold(const std::string& s) {
  std::string out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const auto ch = static_cast<unsigned char>(s[k]);
    if (ch == ' ') continue;
    if (ch >= 'A' && ch <= 'Z') {
      out.push_back(static_cast<char>(ch + 32));
    } else if (ch == 0xC3 && k + 1 < s.size()) {
      auto next = static_cast<unsigned char>(s[k + 1]);
      if (next >= 0x80 && next <= 0x9E && next != 0x97) next = static_cast<unsigned char>(next + 0x20);
      out.push_back(static_cast<char>(ch));
      out.push_back(static_cast<char>(next));
      ++k;
    } else {
      out.push_back(static_cast<char>(ch));
    }
  }
  return out;
}

// Expected token sequence of a splice, built from the raw sentences.
std::string spliced_forms(const ts::DepSentence& receiver, ts::TokenSpan rs, const ts::DepSentence& donor,
                          ts::TokenSpan ds) {
  std::string out;
  for (const ts::Token& t : receiver.tokens) {
    if (t.index == rs.lo) {
      for (int k = ds.lo; k <= ds.hi; ++k) out += donor.tokens[static_cast<std::size_t>(k - 1)].form;
    }
    if (t.index < rs.lo || t.index > rs.hi) out += t.form;
  }
  return fold(out);
}

std::vector<ts::SwapPlan> toy_plans(const ts::Pool& pool, ts::Method method) {
  ts::SamplerConfig cfg;
  cfg.method = method;
  cfg.seed = 42;
  return ts::sample_plans(pool, cfg, 600).plans;
}

std::string swap_correctness(Check& c) {
  const auto corpus = load_pair("toy");
  const auto en_text = text_comments("toy.en.conllu");
  const auto de_text = text_comments("toy.de.conllu");
  if (en_text.size() != corpus.size() || de_text.size() != corpus.size()) {
    c.fail("toy corpus text comments missing");
    return "";
  }

  std::size_t plans = 0, identities = 0, involutions = 0;
  for (ts::SwapType type : {ts::SwapType::object, ts::SwapType::subject}) {
    const ts::Pool pool = ts::build_pool(corpus, type);
    for (ts::Method method : {ts::Method::random, ts::Method::ged, ts::Method::em}) {
      for (const ts::SwapPlan& plan : toy_plans(pool, method)) {
        ++plans;
        auto [into_a, into_b] = ts::swap_pair(plan);
        const std::pair<const ts::EligiblePair*, const ts::EligiblePair*> dirs[] = {
            {plan.pair_a, plan.pair_b}, {plan.pair_b, plan.pair_a}};
        const ts::AugmentedPair* outs[] = {&into_a, &into_b};
        for (int d = 0; d < 2; ++d) {
          const ts::EligiblePair& r = *dirs[d].first;
          const ts::EligiblePair& dn = *dirs[d].second;
          const ts::AugmentedPair& out = *outs[d];
          // Conservation and simultaneity: each side holds exactly the
          // receiver's tokens outside its span plus the same donor's tokens
          // for that side.
          const std::string want_src = spliced_forms(r.bisentence->source, r.src_subtree.span,
                                                     dn.bisentence->source, dn.src_subtree.span);
          const std::string want_tgt = spliced_forms(r.bisentence->target, r.tgt_subtree.span,
                                                     dn.bisentence->target, dn.tgt_subtree.span);
          c.expect(fold(out.source_text) == want_src, [&] { return "source tokens: " + out.source_text; });
          c.expect(fold(out.target_text) == want_tgt, [&] { return "target tokens: " + out.target_text; });
        }

        // Swap back: splice the receiver's original span into the result.
        for (int d = 0; d < 2; ++d) {
          const ts::EligiblePair& r = *dirs[d].first;
          const ts::EligiblePair& dn = *dirs[d].second;
          for (bool source : {true, false}) {
            const ts::DepSentence& rs = source ? r.bisentence->source : r.bisentence->target;
            const ts::DepSentence& ds = source ? dn.bisentence->source : dn.bisentence->target;
            const ts::TokenSpan rspan = source ? r.src_subtree.span : r.tgt_subtree.span;
            const ts::TokenSpan dspan = source ? dn.src_subtree.span : dn.tgt_subtree.span;
            auto once = ts::splice(rs, rspan, ts::span_tokens(ds, dspan));
            ts::TokenSpan landed{rspan.lo, rspan.lo + dspan.length() - 1};
            auto back = ts::splice(once, landed, ts::span_tokens(rs, rspan));
            const bool cap = ts::starts_uppercase(rs.tokens[0].form);
            const std::string restored = ts::detokenize(ts::recase(back, cap));
            const std::string& original = (source ? en_text : de_text)[r.pair_id()];
            ++involutions;
            c.expect(restored == original, [&] { return "swap-back: '" + restored + "' vs '" + original + "'"; });
          }
        }
      }
    }

    for (const ts::EligiblePair& p : pool.pairs) {
      auto [x, y] = ts::swap_pair(ts::SwapPlan{&p, &p, type, ts::Method::random, std::nullopt});
      ++identities;
      for (const ts::AugmentedPair* out : {&x, &y}) {
        c.expect(out->source_text == en_text[p.pair_id()], [&] { return "identity: " + out->source_text; });
        c.expect(out->target_text == de_text[p.pair_id()], [&] { return "identity: " + out->target_text; });
      }
    }
  }
  return std::to_string(plans) + " plans, " + std::to_string(identities) + " identity swaps, " +
         std::to_string(involutions) + " swap-backs";
}

// ---------------------------------------------------------------------------

struct RunFiles {
  std::string src, tgt, prov, stats;
};

int run_cli(const ts::testing::TempDir& dir, int k, RunFiles& files) {
  auto p = [&](const std::string& name) { return (dir / (name + std::to_string(k))).string(); };
  files = {p("out.en."), p("out.de."), p("prov.tsv."), p("stats.json.")};
  const std::string cmd = std::string(TREESWAP_CLI) + " augment --src " + data_path("toy.en.conllu").string() +
                          " --tgt " + data_path("toy.de.conllu").string() + " --out-src " + files.src +
                          " --out-tgt " + files.tgt + " --provenance " + files.prov + " --stats " +
                          files.stats + " --seed 42 --method ged --threshold 0.5 --ratio 3 >/dev/null";
  return ts::testing::run_command(cmd);
}

std::string pipeline_determinism(Check& c) {
  ts::testing::TempDir dir;
  std::vector<std::string> contents;
  nlohmann::json report;
  for (int k = 0; k < 3; ++k) {
    RunFiles f;
    const int code = run_cli(dir, k, f);
    c.expect(code == 0, [&] { return "augment exited " + std::to_string(code); });
    if (code != 0) return "";
    contents.push_back(ts::testing::read_file(f.src) + '\x1e' + ts::testing::read_file(f.tgt) + '\x1e' +
                       ts::testing::read_file(f.prov));
    report = nlohmann::json::parse(ts::testing::read_file(f.stats));
  }
  c.expect(contents[0] == contents[1] && contents[1] == contents[2],
           [] { return std::string("outputs differ across runs"); });

  auto n = [&](const char* key) { return report.at(key).get<std::size_t>(); };
  const std::size_t originals = n("originals");
  const std::size_t target = static_cast<std::size_t>(std::llround(3.0 * static_cast<double>(originals)));
  c.expect(originals == 200, [&] { return "originals = " + std::to_string(originals); });
  c.expect(n("target") == target, [&] { return "target = " + std::to_string(n("target")); });
  c.expect(n("augmented_emitted") + n("dedup_dropped") == 2 * n("plans"),
           [] { return std::string("emitted + dropped != 2 * plans"); });
  c.expect(n("augmented_emitted") + n("shortfall") + n("dedup_dropped") == target,
           [] { return std::string("emitted + shortfall + dropped != round(3 * originals)"); });
  std::ostringstream os;
  os << "3 runs; plans=" << n("plans") << " emitted=" << n("augmented_emitted")
     << " dropped=" << n("dedup_dropped") << " shortfall=" << n("shortfall") << " target=" << target;
  return os.str();
}

// ---------------------------------------------------------------------------

std::string provenance_revalidation(Check& c) {
  ts::testing::TempDir dir;
  RunFiles f;
  if (int code = run_cli(dir, 0, f); code != 0) {
    c.fail("augment exited " + std::to_string(code));
    return "";
  }
  const auto corpus = load_pair("toy");
  const auto src = ts::testing::read_lines(f.src);
  const auto tgt = ts::testing::read_lines(f.tgt);
  const auto prov = ts::testing::read_lines(f.prov);
  if (prov.empty() || prov[0] != ts::kProvenanceHeader) {
    c.fail("provenance header missing");
    return "";
  }
  const std::size_t offset = corpus.size();
  c.expect(src.size() == offset + prov.size() - 1 && tgt.size() == src.size(),
           [&] { return "line counts: " + std::to_string(src.size()) + " / " + std::to_string(prov.size()); });

  std::size_t rows = 0;
  for (std::size_t k = 1; k < prov.size() && offset + k - 1 < src.size(); ++k) {
    const ts::ProvenanceRecord rec = ts::parse_provenance(prov[k]);
    const bool a_receives = rec.direction == ts::Direction::a_receives_b;
    const ts::BiSentence& receiver = corpus.at(a_receives ? rec.donor_a : rec.donor_b);
    const ts::BiSentence& donor = corpus.at(a_receives ? rec.donor_b : rec.donor_a);
    auto er = ts::check_eligibility(receiver, rec.swap_type);
    auto ed = ts::check_eligibility(donor, rec.swap_type);
    if (!er || !ed) {
      c.fail("provenance names an ineligible donor: " + prov[k]);
      continue;
    }
    const std::string s = ts::replace_subtree(receiver.source, er->src_subtree.span, donor.source,
                                              ed->src_subtree.span);
    const std::string t = ts::replace_subtree(receiver.target, er->tgt_subtree.span, donor.target,
                                              ed->tgt_subtree.span);
    ++rows;
    c.expect(s == src[offset + k - 1], [&] { return "row " + std::to_string(k) + " source: " + s; });
    c.expect(t == tgt[offset + k - 1], [&] { return "row " + std::to_string(k) + " target: " + t; });
  }
  return std::to_string(rows) + " rows";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"eligibility suite", 1.0, eligibility_suite},
      {"GED oracle equivalence", 60.0, ged_oracle},
      {"Levenshtein oracle equivalence", 5.0, levenshtein_oracle},
      {"edge mapping properties", 30.0, edge_mapping_properties},
      {"swap correctness", 5.0, swap_correctness},
      {"pipeline determinism and accounting", 10.0, pipeline_determinism},
      {"provenance re-validation", 5.0, provenance_revalidation},
  };

  int failed = 0;
  for (const Criterion& cr : criteria) {
    Check check;
    std::string summary;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      summary = cr.body(check);
    } catch (const std::exception& e) {
      check.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < cr.budget_seconds;
    const bool pass = check.ok() && in_time;
    failed += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << "  " << cr.name << "  (" << std::fixed << std::setprecision(3)
              << secs << " s / " << std::setprecision(0) << cr.budget_seconds << " s)  " << summary << '\n';
    if (!in_time) std::cout << "      over time budget\n";
    if (!check.ok()) {
      std::cout << "      " << check.failures() << " failure(s)\n";
      for (const std::string& m : check.messages()) std::cout << "      " << m << '\n';
    }
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criterion(s) failed") << '\n';
  return failed == 0 ? 0 : 1;
}
