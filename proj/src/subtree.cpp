#include "treeswap/subtree.hpp"

#include <algorithm>

namespace treeswap {
namespace {

bool has_unique_core_edges(const DepSentence& s) {
  return find_unique_edge(s, "obj") && find_unique_edge(s, "nsubj");
}

}  // namespace

std::string_view to_string(RejectReason r) {
  switch (r) {
    case RejectReason::multiple_or_missing_edge: return "multiple_or_missing_edge";
    case RejectReason::non_contiguous: return "non_contiguous";
    case RejectReason::pos_mismatch: return "pos_mismatch";
    case RejectReason::no_noun: return "no_noun";
  }
  return "?";
}

std::optional<int> find_unique_edge(const DepSentence& sentence, std::string_view relation) {
  std::optional<int> found;
  for (const Token& t : sentence.tokens) {
    if (t.deprel != relation) continue;
    if (found) return std::nullopt;
    found = t.index;
  }
  return found;
}

std::vector<int> collect_members(const DepSentence& sentence, int root_index) {
  const std::size_t n = sentence.size();
  std::vector<std::vector<int>> kids(n + 1);
  for (const Token& t : sentence.tokens) kids[static_cast<std::size_t>(t.head)].push_back(t.index);

  std::vector<int> members;
  std::vector<int> stack{root_index};
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    members.push_back(cur);
    for (int c : kids[static_cast<std::size_t>(cur)]) stack.push_back(c);
  }
  std::sort(members.begin(), members.end());
  return members;
}

Outcome<Subtree> extract_subtree(const DepSentence& sentence, int root_index) {
  Subtree st;
  st.root_index = root_index;
  st.members = collect_members(sentence, root_index);
  st.span = {st.members.front(), st.members.back()};
  st.root_upos = sentence.at(root_index).upos;
  if (st.span.length() != static_cast<int>(st.members.size())) {
    return Rejection{RejectReason::non_contiguous,
                     "subtree of token " + std::to_string(root_index) + " has gaps in [" +
                         std::to_string(st.span.lo) + ", " + std::to_string(st.span.hi) + "]"};
  }
  return st;
}

bool contains_noun(const DepSentence& sentence, const Subtree& subtree) {
  return std::any_of(subtree.members.begin(), subtree.members.end(), [&](int i) {
    const std::string& upos = sentence.at(i).upos;
    return upos == "NOUN" || upos == "PROPN";
  });
}

Outcome<Subtree> check_sentence(const DepSentence& sentence, SwapType swap_type) {
  if (!has_unique_core_edges(sentence)) {
    return Rejection{RejectReason::multiple_or_missing_edge,
                     "sentence lacks exactly one obj and one nsubj edge"};
  }
  int root = *find_unique_edge(sentence, relation_for(swap_type));
  Outcome<Subtree> st = extract_subtree(sentence, root);
  if (!st) return st;
  if (!contains_noun(sentence, *st)) {
    return Rejection{RejectReason::no_noun, "subtree contains no NOUN or PROPN"};
  }
  return st;
}

Outcome<EligiblePair> check_eligibility(const BiSentence& b, SwapType swap_type) {
  if (!has_unique_core_edges(b.source)) {
    return Rejection{RejectReason::multiple_or_missing_edge,
                     "source lacks exactly one obj and one nsubj edge"};
  }
  if (!has_unique_core_edges(b.target)) {
    return Rejection{RejectReason::multiple_or_missing_edge,
                     "target lacks exactly one obj and one nsubj edge"};
  }

  const std::string_view rel = relation_for(swap_type);
  Outcome<Subtree> src = extract_subtree(b.source, *find_unique_edge(b.source, rel));
  if (!src) return Rejection{src.rejection().reason, "source " + src.rejection().detail};
  Outcome<Subtree> tgt = extract_subtree(b.target, *find_unique_edge(b.target, rel));
  if (!tgt) return Rejection{tgt.rejection().reason, "target " + tgt.rejection().detail};

  if (src->root_upos != tgt->root_upos) {
    return Rejection{RejectReason::pos_mismatch,
                     "subtree roots " + src->root_upos + " vs " + tgt->root_upos};
  }
  if (!contains_noun(b.source, *src)) {
    return Rejection{RejectReason::no_noun, "source subtree contains no NOUN or PROPN"};
  }
  if (!contains_noun(b.target, *tgt)) {
    return Rejection{RejectReason::no_noun, "target subtree contains no NOUN or PROPN"};
  }
  return EligiblePair{&b, swap_type, *src, *tgt};
}

}  // namespace treeswap
