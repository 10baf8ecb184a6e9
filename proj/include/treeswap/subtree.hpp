#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "treeswap/types.hpp"

namespace treeswap {

// Inclusive 1-based token range.
struct TokenSpan {
  int lo = 0;
  int hi = 0;
  int length() const { return hi - lo + 1; }
  bool operator==(const TokenSpan&) const = default;
};

// A token plus all of its descendants. Only contiguous subtrees are
// representable: members == {span.lo, ..., span.hi}.
struct Subtree {
  int root_index = 0;
  std::vector<int> members;  // sorted
  TokenSpan span;
  std::string root_upos;
  bool operator==(const Subtree&) const = default;
};

// Order matters: check_eligibility reports the first failed constraint.
enum class RejectReason { multiple_or_missing_edge, non_contiguous, pos_mismatch, no_noun };
inline constexpr std::size_t kRejectReasonCount = 4;
inline constexpr std::array<RejectReason, kRejectReasonCount> kAllRejectReasons = {
    RejectReason::multiple_or_missing_edge, RejectReason::non_contiguous,
    RejectReason::pos_mismatch, RejectReason::no_noun};

std::string_view to_string(RejectReason r);

struct Rejection {
  RejectReason reason;
  std::string detail;
};

// Either a value or the rejection that prevented it.
template <typename T>
class Outcome {
 public:
  Outcome(T value) : v_(std::move(value)) {}
  Outcome(Rejection r) : v_(std::move(r)) {}

  bool ok() const { return std::holds_alternative<T>(v_); }
  explicit operator bool() const { return ok(); }
  const T& value() const { return std::get<T>(v_); }
  const T& operator*() const { return value(); }
  const T* operator->() const { return &value(); }
  const Rejection& rejection() const { return std::get<Rejection>(v_); }

 private:
  std::variant<T, Rejection> v_;
};

struct EligiblePair {
  const BiSentence* bisentence = nullptr;  // owned by the corpus
  SwapType swap_type = SwapType::object;
  Subtree src_subtree;
  Subtree tgt_subtree;

  std::size_t pair_id() const { return bisentence->pair_id; }
};

// Index of the single dependent attached with `relation`; absent when the
// relation occurs zero or several times. Matching is exact on the bare
// relation, so "nsubj:pass" never counts as "nsubj".
std::optional<int> find_unique_edge(const DepSentence& sentence, std::string_view relation);

// Root index plus all descendants, sorted.
std::vector<int> collect_members(const DepSentence& sentence, int root_index);

// Rejects with non_contiguous when the members do not form one span.
Outcome<Subtree> extract_subtree(const DepSentence& sentence, int root_index);

bool contains_noun(const DepSentence& sentence, const Subtree& subtree);

// Single-sentence variant of the eligibility constraints (edge uniqueness,
// contiguity, noun content). Used where no aligned partner exists.
Outcome<Subtree> check_sentence(const DepSentence& sentence, SwapType swap_type);

// Applies all constraints to both sides of `b`, in order:
//   1. each side has exactly one obj and exactly one nsubj edge
//   2. the swap_type subtree is contiguous on both sides
//   3. source and target subtree roots share UPOS
//   4. each subtree contains a NOUN or PROPN
// `b` must outlive the returned pair.
Outcome<EligiblePair> check_eligibility(const BiSentence& b, SwapType swap_type);

}  // namespace treeswap
