#include "treeswap/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "treeswap/corpus_io.hpp"
#include "treeswap/graph_sim.hpp"
#include "treeswap/rng.hpp"
#include "treeswap/swapper.hpp"

namespace treeswap {
namespace {

namespace fs = std::filesystem;

struct Corpus {
  std::vector<BiSentence> bitext;
  Pool object_pool;
  Pool subject_pool;
};

Corpus load(const RunConfig& cfg) {
  Corpus c;
  c.bitext = align_bitext(read_conllu(cfg.src_conllu), read_conllu(cfg.tgt_conllu));
  c.object_pool = build_pool(c.bitext, SwapType::object);
  c.subject_pool = build_pool(c.bitext, SwapType::subject);
  return c;
}

void fill_eligibility(const Corpus& c, RunReport& r) {
  r.originals = c.bitext.size();
  r.eligible_object = c.object_pool.size();
  r.eligible_subject = c.subject_pool.size();
  r.rejections_object = c.object_pool.rejections;
  r.rejections_subject = c.subject_pool.rejections;
}

std::vector<SwapType> types_in(SwapScope s) {
  switch (s) {
    case SwapScope::object: return {SwapType::object};
    case SwapScope::subject: return {SwapType::subject};
    case SwapScope::both: return {SwapType::object, SwapType::subject};
  }
  return {};
}

std::string pair_key(const std::string& src, const std::string& tgt) { return src + '\n' + tgt; }

void write_stats(const RunConfig& cfg, const RunReport& r) {
  if (!cfg.stats_path) return;
  std::ofstream out(*cfg.stats_path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + cfg.stats_path->string());
  out << r.to_json() << '\n';
  if (!out) throw IoError("write failed: " + cfg.stats_path->string());
}

bool same_file(const fs::path& a, const fs::path& b) {
  std::error_code ec;
  return fs::weakly_canonical(a, ec) == fs::weakly_canonical(b, ec);
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

void RunConfig::validate(bool writes_output) const {
  sampler.validate();
  if (src_conllu.empty() || tgt_conllu.empty()) throw ConfigError("--src and --tgt are required");
  if (!writes_output) return;
  if (out_src.empty() || out_tgt.empty()) throw ConfigError("--out-src and --out-tgt are required");

  std::vector<fs::path> outputs{out_src, out_tgt};
  if (out_provenance) outputs.push_back(*out_provenance);
  if (stats_path) outputs.push_back(*stats_path);
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    for (const fs::path& in : {src_conllu, tgt_conllu}) {
      if (same_file(in, outputs[i])) {
        throw ConfigError("output path " + outputs[i].string() + " is also an input");
      }
    }
    for (std::size_t j = i + 1; j < outputs.size(); ++j) {
      if (same_file(outputs[i], outputs[j])) {
        throw ConfigError("output path " + outputs[i].string() + " given twice");
      }
    }
  }
}

std::size_t histogram_bin(double similarity) {
  if (!(similarity > 0.0)) return 0;
  auto bin = static_cast<std::size_t>(similarity * static_cast<double>(kHistogramBins));
  return std::min(bin, kHistogramBins - 1);
}

std::string RunReport::to_json() const {
  nlohmann::json j;
  j["originals"] = originals;
  j["eligible_object"] = eligible_object;
  j["eligible_subject"] = eligible_subject;
  for (RejectReason reason : kAllRejectReasons) {
    const std::string name(to_string(reason));
    j["rejections.object." + name] = rejections_object[reason];
    j["rejections.subject." + name] = rejections_subject[reason];
  }
  j["target"] = target;
  j["plans"] = plans;
  j["augmented_emitted"] = augmented_emitted;
  j["dedup_dropped"] = dedup_dropped;
  j["shortfall"] = shortfall;
  j["lines_written"] = lines_written;
  j["wall_time"] = wall_time;
  if (histogram_draws > 0 || !similarity_histogram.empty()) {
    j["histogram_draws"] = histogram_draws;
    for (const auto& [type, hist] : similarity_histogram) {
      for (std::size_t b = 0; b < hist.size(); ++b) {
        j["similarity_histogram." + std::string(to_string(type)) + "." + std::to_string(b)] = hist[b];
      }
    }
  }
  return j.dump(2);
}

RunReport run_augment(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  cfg.validate(true);

  const Corpus corpus = load(cfg);
  RunReport report;
  fill_eligibility(corpus, report);
  report.target = augmentation_target(cfg.sampler.ratio, corpus.bitext.size());

  std::map<SwapType, std::size_t> targets;
  switch (cfg.sampler.swap_scope) {
    case SwapScope::object: targets[SwapType::object] = report.target; break;
    case SwapScope::subject: targets[SwapType::subject] = report.target; break;
    case SwapScope::both: {
      auto [obj, subj] = split_target(report.target);
      targets[SwapType::object] = obj;
      targets[SwapType::subject] = subj;
      break;
    }
  }

  std::unordered_set<std::string> seen;
  for (const BiSentence& b : corpus.bitext) {
    seen.insert(pair_key(detokenize(surface_tokens(b.source)), detokenize(surface_tokens(b.target))));
  }

  std::vector<AugmentedPair> augmented;
  for (const auto& [type, type_target] : targets) {
    const Pool& pool = type == SwapType::object ? corpus.object_pool : corpus.subject_pool;
    const SampleResult sampled = sample_plans(pool, cfg.sampler, type_target);
    report.plans += sampled.plans.size();
    for (const SwapPlan& plan : sampled.plans) {
      auto [first, second] = swap_pair(plan);
      for (AugmentedPair* a : {&first, &second}) {
        if (seen.insert(pair_key(a->source_text, a->target_text)).second) {
          augmented.push_back(std::move(*a));
        } else {
          ++report.dedup_dropped;
        }
      }
    }
  }
  report.augmented_emitted = augmented.size();
  report.shortfall = report.target - 2 * report.plans;

  std::span<const BiSentence> originals;
  if (cfg.include_originals) originals = corpus.bitext;
  const WriteCounts counts =
      write_output(originals, augmented, cfg.out_src, cfg.out_tgt, cfg.out_provenance);
  report.lines_written = counts.lines;

  report.wall_time = elapsed_since(t0);
  write_stats(cfg, report);
  return report;
}

RunReport run_stats(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  cfg.validate(false);

  const Corpus corpus = load(cfg);
  RunReport report;
  fill_eligibility(corpus, report);

  if (cfg.sampler.method != Method::random) {
    report.histogram_draws = cfg.stats_draws;
    for (SwapType type : types_in(cfg.sampler.swap_scope)) {
      const Pool& pool = type == SwapType::object ? corpus.object_pool : corpus.subject_pool;
      Histogram& hist = report.similarity_histogram[type];
      hist.fill(0);
      if (pool.size() < 2) continue;
      Rng rng(derive_seed(cfg.sampler.seed, "stats", {static_cast<std::uint64_t>(type)}));
      for (std::size_t d = 0; d < cfg.stats_draws; ++d) {
        std::size_t i = rng.below(pool.size());
        std::size_t j = rng.below(pool.size() - 1);
        if (j >= i) ++j;
        ++hist[histogram_bin(*pair_similarity(pool, i, j, cfg.sampler.method, cfg.sampler.seed))];
      }
    }
  }

  report.wall_time = elapsed_since(t0);
  write_stats(cfg, report);
  return report;
}

double score_pair(const fs::path& a, const fs::path& b, SwapType swap_type, Method method,
                  std::uint64_t seed) {
  if (method == Method::random) throw ConfigError("score needs method ged or em");

  auto first_subtree = [&](const fs::path& path) {
    std::vector<DepSentence> sentences = read_conllu(path);
    if (sentences.empty()) throw DataError(path.string() + ": no sentences");
    Outcome<Subtree> st = check_sentence(sentences.front(), swap_type);
    if (!st) {
      throw DataError(path.string() + ": ineligible (" + std::string(to_string(st.rejection().reason)) +
                      "): " + st.rejection().detail);
    }
    return LabeledTree::from_subtree(sentences.front(), *st);
  };
  const LabeledTree ta = first_subtree(a);
  const LabeledTree tb = first_subtree(b);
  if (method == Method::ged) return ged_similarity(ta, tb);
  Rng rng(derive_seed(seed, "em", {0, 1, static_cast<std::uint64_t>(swap_type)}));
  return em_similarity(ta, tb, rng);
}

}  // namespace treeswap
