#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treeswap/sampler.hpp"
#include "treeswap/subtree.hpp"
#include "treeswap/types.hpp"

namespace treeswap {

// What survives of a token once it leaves its dependency tree.
struct SurfaceToken {
  std::string form;
  std::string upos;
  bool space_after = true;
  bool was_initial = false;  // first token of the sentence it came from
  bool operator==(const SurfaceToken&) const = default;
};

std::vector<SurfaceToken> surface_tokens(const DepSentence& sentence);

// Tokens of `span` with their original flags.
std::vector<SurfaceToken> span_tokens(const DepSentence& sentence, TokenSpan span);

// tokens[..lo-1] ++ replacement ++ tokens[hi+1..]. The last replacement token
// takes over the space_after flag of the replaced span's last token, so the
// boundary spacing of the receiver is kept on both sides of the splice.
// Throws std::logic_error on an invalid span or an empty replacement.
std::vector<SurfaceToken> splice(std::span<const SurfaceToken> tokens, TokenSpan span,
                                 std::span<const SurfaceToken> replacement);
std::vector<SurfaceToken> splice(const DepSentence& sentence, TokenSpan span,
                                 std::span<const SurfaceToken> replacement);

// Sentence-initial recasing. Uppercases a lowercase first letter at position 0
// when the receiver's original sentence started capitalized, and lowercases
// formerly sentence-initial tokens that moved inward unless they are PROPN.
std::vector<SurfaceToken> recase(std::vector<SurfaceToken> tokens, bool original_first_was_capitalized);

std::string detokenize(std::span<const SurfaceToken> tokens);

// First letter case helpers (ASCII, Latin-1, Latin Extended-A).
bool starts_uppercase(std::string_view s);
bool starts_lowercase(std::string_view s);
std::string upper_first(std::string_view s);
std::string lower_first(std::string_view s);

// `receiver` with its `receiver_span` replaced by `donor_span` of `donor`,
// recased and detokenized.
std::string replace_subtree(const DepSentence& receiver, TokenSpan receiver_span,
                            const DepSentence& donor, TokenSpan donor_span);

// Both swap directions of a plan: first A receiving B's subtrees, then B
// receiving A's. Source and target are spliced from the same donor.
std::pair<AugmentedPair, AugmentedPair> swap_pair(const SwapPlan& plan);

}  // namespace treeswap
