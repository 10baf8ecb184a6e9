#include "treeswap/sampler.hpp"

#include <cmath>
#include <unordered_set>

#include "treeswap/rng.hpp"

namespace treeswap {

std::string_view to_string(SwapScope s) {
  switch (s) {
    case SwapScope::object: return "object";
    case SwapScope::subject: return "subject";
    case SwapScope::both: return "both";
  }
  return "?";
}

SwapScope parse_swap_scope(std::string_view s) {
  if (s == "object") return SwapScope::object;
  if (s == "subject") return SwapScope::subject;
  if (s == "both") return SwapScope::both;
  throw std::invalid_argument("unknown swap type: " + std::string(s));
}

void SamplerConfig::validate() const {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw ConfigError("threshold must lie in [0, 1], got " + std::to_string(threshold));
  }
  if (!(ratio > 0.0) || !std::isfinite(ratio)) {
    throw ConfigError("ratio must be a positive number, got " + std::to_string(ratio));
  }
  if (max_attempts_factor == 0) throw ConfigError("max_attempts_factor must be positive");
}

std::size_t RejectionStats::total() const {
  std::size_t t = 0;
  for (std::size_t c : counts) t += c;
  return t;
}

RejectionStats& RejectionStats::operator+=(const RejectionStats& o) {
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += o.counts[i];
  return *this;
}

Pool build_pool(std::span<const BiSentence> corpus, SwapType swap_type) {
  Pool pool;
  pool.swap_type = swap_type;
  for (const BiSentence& b : corpus) {
    Outcome<EligiblePair> e = check_eligibility(b, swap_type);
    if (!e) {
      ++pool.rejections[e.rejection().reason];
      continue;
    }
    pool.source_trees.push_back(LabeledTree::from_subtree(b.source, e->src_subtree));
    pool.pairs.push_back(*e);
  }
  return pool;
}

std::optional<double> pair_similarity(const Pool& pool, std::size_t i, std::size_t j,
                                      Method method, std::uint64_t seed) {
  if (i > j) std::swap(i, j);
  switch (method) {
    case Method::random:
      return std::nullopt;
    case Method::ged:
      return ged_similarity(pool.source_trees[i], pool.source_trees[j]);
    case Method::em: {
      Rng rng(derive_seed(seed, "em", {pool.pairs[i].pair_id(), pool.pairs[j].pair_id(),
                                       static_cast<std::uint64_t>(pool.swap_type)}));
      return em_similarity(pool.source_trees[i], pool.source_trees[j], rng);
    }
  }
  return std::nullopt;
}

SampleResult sample_plans(const Pool& pool, const SamplerConfig& cfg, std::size_t target_count) {
  SampleResult result;
  result.requested = target_count;

  const std::uint64_t n = pool.size();
  const std::size_t max_plans = target_count / 2;
  if (n < 2 || max_plans == 0) return result;

  const std::uint64_t distinct_pairs = n * (n - 1) / 2;
  const std::uint64_t budget = cfg.max_attempts_factor * target_count;
  Rng rng(derive_seed(cfg.seed, "sample", {static_cast<std::uint64_t>(pool.swap_type)}));
  std::unordered_set<std::uint64_t> seen;

  while (result.plans.size() < max_plans && result.attempts < budget &&
         seen.size() < distinct_pairs) {
    ++result.attempts;
    std::size_t i = rng.below(n);
    std::size_t j = rng.below(n - 1);
    if (j >= i) ++j;
    if (i > j) std::swap(i, j);
    if (!seen.insert(i * n + j).second) continue;

    std::optional<double> sim = pair_similarity(pool, i, j, cfg.method, cfg.seed);
    if (cfg.method != Method::random && *sim < cfg.threshold) continue;
    result.plans.push_back(SwapPlan{&pool.pairs[i], &pool.pairs[j], pool.swap_type, cfg.method, sim});
  }
  result.achieved = 2 * result.plans.size();
  return result;
}

std::pair<std::size_t, std::size_t> split_target(std::size_t target_count) {
  const std::size_t subject = 2 * (target_count / 2 / 2);
  return {target_count - subject, subject};
}

std::size_t augmentation_target(double ratio, std::size_t originals) {
  return static_cast<std::size_t>(std::llround(ratio * static_cast<double>(originals)));
}

}  // namespace treeswap
