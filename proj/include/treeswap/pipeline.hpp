#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "treeswap/sampler.hpp"
#include "treeswap/types.hpp"

namespace treeswap {

struct RunConfig {
  std::filesystem::path src_conllu;
  std::filesystem::path tgt_conllu;
  std::filesystem::path out_src;
  std::filesystem::path out_tgt;
  std::optional<std::filesystem::path> out_provenance;
  SamplerConfig sampler;
  bool include_originals = true;
  std::optional<std::filesystem::path> stats_path;
  std::size_t stats_draws = 10000;

  // Throws ConfigError. Output paths are only checked when `writes_output`.
  void validate(bool writes_output) const;
};

inline constexpr std::size_t kHistogramBins = 10;
using Histogram = std::array<std::size_t, kHistogramBins>;

// Bin of a similarity value: [0, 0.1), ..., [0.9, 1.0].
std::size_t histogram_bin(double similarity);

struct RunReport {
  std::size_t originals = 0;
  std::size_t eligible_object = 0;
  std::size_t eligible_subject = 0;
  RejectionStats rejections_object;
  RejectionStats rejections_subject;
  std::size_t target = 0;
  std::size_t plans = 0;
  std::size_t augmented_emitted = 0;
  std::size_t dedup_dropped = 0;
  std::size_t shortfall = 0;
  std::size_t lines_written = 0;
  double wall_time = 0.0;

  // Filled by run_stats for methods ged and em.
  std::size_t histogram_draws = 0;
  std::map<SwapType, Histogram> similarity_histogram;

  // Flat key/value document; identical runs differ only in "wall_time".
  std::string to_json() const;
};

// Full pipeline: read, align, filter, sample, swap, dedup, write.
RunReport run_augment(const RunConfig& cfg);

// Eligibility counts and, for ged/em, a similarity histogram over
// cfg.stats_draws seeded pair draws per swap type. Writes nothing but the
// optional stats report.
RunReport run_stats(const RunConfig& cfg);

// Similarity between the swap_type subtrees of the first sentences of two
// files. Throws DataError naming the failed constraint for ineligible input.
double score_pair(const std::filesystem::path& a, const std::filesystem::path& b,
                  SwapType swap_type, Method method, std::uint64_t seed);

}  // namespace treeswap
