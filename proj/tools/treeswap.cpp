// treeswap: augment a parallel CoNLL-U corpus by swapping object/subject
// subtrees across bisentences.
//
//   treeswap augment --src s.conllu --tgt t.conllu --out-src s.txt --out-tgt t.txt
//   treeswap stats   --src s.conllu --tgt t.conllu --method ged
//   treeswap score   a.conllu b.conllu --swap object --method ged
//
// Exit status: 0 success, 1 usage/config error, 2 data error.

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "treeswap/pipeline.hpp"
#include "treeswap/types.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

void print_report(const treeswap::RunReport& r, bool augment) {
  std::cout << "originals\t" << r.originals << '\n'
            << "eligible_object\t" << r.eligible_object << '\n'
            << "eligible_subject\t" << r.eligible_subject << '\n';
  if (augment) {
    std::cout << "target\t" << r.target << '\n'
              << "plans\t" << r.plans << '\n'
              << "augmented_emitted\t" << r.augmented_emitted << '\n'
              << "dedup_dropped\t" << r.dedup_dropped << '\n'
              << "shortfall\t" << r.shortfall << '\n';
  }
  for (const auto& [type, hist] : r.similarity_histogram) {
    std::cout << "histogram_" << treeswap::to_string(type);
    for (std::size_t c : hist) std::cout << '\t' << c;
    std::cout << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TreeSwap: subtree-swapping augmentation for parallel corpora"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML/INI file; keys mirror the long flag names");

  treeswap::RunConfig cfg;
  std::string method = "ged";
  std::string swap = "both";
  std::string out_prov, stats_path;
  bool no_originals = false;

  app.add_option("--src", cfg.src_conllu, "Source-side CoNLL-U");
  app.add_option("--tgt", cfg.tgt_conllu, "Target-side CoNLL-U");
  app.add_option("--out-src", cfg.out_src, "Augmented source text");
  app.add_option("--out-tgt", cfg.out_tgt, "Augmented target text");
  app.add_option("--provenance", out_prov, "Provenance TSV");
  app.add_option("--method", method, "Sampling method")
      ->check(CLI::IsMember({"random", "ged", "em"}))
      ->capture_default_str();
  app.add_option("--threshold", cfg.sampler.threshold, "Similarity threshold")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app.add_option("--ratio", cfg.sampler.ratio, "Augmented pairs per original pair")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--swap", swap, "Subtree type")
      ->check(CLI::IsMember({"object", "subject", "both"}))
      ->capture_default_str();
  cfg.sampler.seed = 42;
  app.add_option("--seed", cfg.sampler.seed, "Random seed")->capture_default_str();
  app.add_option("--max-attempts-factor", cfg.sampler.max_attempts_factor,
                 "Draw budget per requested pair")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--no-originals", no_originals, "Write augmented lines only");
  app.add_option("--stats", stats_path, "Machine-readable run report (JSON)");
  app.add_option("--draws", cfg.stats_draws, "Pair draws for the stats histogram")
      ->capture_default_str();

  CLI::App* augment = app.add_subcommand("augment", "Generate augmented bitext");
  CLI::App* stats = app.add_subcommand("stats", "Report eligibility and similarity statistics");
  CLI::App* score = app.add_subcommand("score", "Similarity of two sentences' subtrees");
  std::string score_a, score_b;
  score->add_option("a", score_a, "First CoNLL-U file")->required();
  score->add_option("b", score_b, "Second CoNLL-U file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    cfg.sampler.method = treeswap::parse_method(method);
    cfg.sampler.swap_scope = treeswap::parse_swap_scope(swap);
    cfg.include_originals = !no_originals;
    if (!out_prov.empty()) cfg.out_provenance = out_prov;
    if (!stats_path.empty()) cfg.stats_path = stats_path;

    if (augment->parsed()) {
      print_report(treeswap::run_augment(cfg), true);
    } else if (stats->parsed()) {
      print_report(treeswap::run_stats(cfg), false);
    } else if (score->parsed()) {
      if (cfg.sampler.swap_scope == treeswap::SwapScope::both) {
        throw treeswap::ConfigError("score needs --swap object or --swap subject");
      }
      const treeswap::SwapType type = cfg.sampler.swap_scope == treeswap::SwapScope::object
                                          ? treeswap::SwapType::object
                                          : treeswap::SwapType::subject;
      double sim = treeswap::score_pair(score_a, score_b, type, cfg.sampler.method, cfg.sampler.seed);
      std::cout << std::fixed << std::setprecision(4) << sim << '\n';
    }
  } catch (const treeswap::ConfigError& e) {
    std::cerr << "treeswap: config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "treeswap: config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const treeswap::DataError& e) {
    std::cerr << "treeswap: data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "treeswap: internal error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
