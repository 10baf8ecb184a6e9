#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "treeswap/graph_sim.hpp"
#include "treeswap/subtree.hpp"
#include "treeswap/types.hpp"

namespace treeswap {

enum class SwapScope { object, subject, both };

std::string_view to_string(SwapScope s);
SwapScope parse_swap_scope(std::string_view s);

struct SamplerConfig {
  Method method = Method::ged;
  double threshold = 0.5;
  double ratio = 3.0;
  SwapScope swap_scope = SwapScope::both;
  std::uint64_t seed = 0;
  std::uint64_t max_attempts_factor = 200;

  // Throws ConfigError when a field is out of range.
  void validate() const;
};

struct RejectionStats {
  std::array<std::size_t, kRejectReasonCount> counts{};

  std::size_t& operator[](RejectReason r) { return counts[static_cast<std::size_t>(r)]; }
  std::size_t operator[](RejectReason r) const { return counts[static_cast<std::size_t>(r)]; }
  std::size_t total() const;
  RejectionStats& operator+=(const RejectionStats& o);
};

// Eligible bisentences for one swap type, in corpus order, with the
// source-side similarity trees precomputed.
struct Pool {
  SwapType swap_type = SwapType::object;
  std::vector<EligiblePair> pairs;
  std::vector<LabeledTree> source_trees;
  RejectionStats rejections;

  std::size_t size() const { return pairs.size(); }
};

// `corpus` must outlive the pool.
Pool build_pool(std::span<const BiSentence> corpus, SwapType swap_type);

struct SwapPlan {
  const EligiblePair* pair_a = nullptr;  // owned by the pool
  const EligiblePair* pair_b = nullptr;
  SwapType swap_type = SwapType::object;
  Method method = Method::random;
  std::optional<double> similarity;
};

struct SampleResult {
  std::vector<SwapPlan> plans;
  std::size_t requested = 0;  // augmented bisentences asked for
  std::size_t achieved = 0;   // 2 * plans
  std::size_t attempts = 0;

  std::size_t shortfall() const { return requested - achieved; }
};

// Similarity of the source-side subtrees of pool entries i and j under
// `method` (absent for random). The em edge mapping draws from a stream
// derived from (seed, pair ids), so the value is a pure function of its
// arguments.
std::optional<double> pair_similarity(const Pool& pool, std::size_t i, std::size_t j,
                                      Method method, std::uint64_t seed);

// Draws unordered pairs of distinct pool entries uniformly from a stream
// derived from cfg.seed and the pool's swap type, accepting a draw when its
// similarity reaches cfg.threshold (always, for random). Each plan yields two
// augmented bisentences, so at most target_count / 2 plans are produced.
// Already-used pairs are not re-drawn into a plan. Sampling stops after
// cfg.max_attempts_factor * target_count draws.
SampleResult sample_plans(const Pool& pool, const SamplerConfig& cfg, std::size_t target_count);

// Splits a total target between object and subject pools for SwapScope::both.
// Both shares are even where possible; object gets the remainder.
std::pair<std::size_t, std::size_t> split_target(std::size_t target_count);

// round(ratio * originals)
std::size_t augmentation_target(double ratio, std::size_t originals);

}  // namespace treeswap
