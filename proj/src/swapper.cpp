#include "treeswap/swapper.hpp"

#include <stdexcept>

namespace treeswap {
namespace {

struct CodePoint {
  char32_t value = 0;
  std::size_t length = 0;  // bytes consumed; 0 for an empty string
};

CodePoint decode_first(std::string_view s) {
  if (s.empty()) return {};
  const auto b0 = static_cast<unsigned char>(s[0]);
  if (b0 < 0x80) return {b0, 1};
  if ((b0 & 0xE0) == 0xC0 && s.size() >= 2) {
    return {static_cast<char32_t>(((b0 & 0x1F) << 6) | (static_cast<unsigned char>(s[1]) & 0x3F)), 2};
  }
  // Outside the mapped ranges; treated as caseless.
  return {0xFFFD, 1};
}

std::string encode(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
  return out;
}

// Latin Extended-A pairs: even code point upper in [0x100,0x137] and
// [0x14A,0x177]; odd code point upper in [0x139,0x148] and [0x179,0x17E].
bool ext_a_even_upper(char32_t cp) {
  return (cp >= 0x100 && cp <= 0x137 && cp != 0x130 && cp != 0x131) || (cp >= 0x14A && cp <= 0x177);
}
bool ext_a_odd_upper(char32_t cp) {
  return (cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E);
}

char32_t to_upper(char32_t cp) {
  if (cp >= 'a' && cp <= 'z') return cp - 0x20;
  if (cp >= 0xE0 && cp <= 0xFE && cp != 0xF7) return cp - 0x20;
  if (ext_a_even_upper(cp) && (cp % 2 == 1)) return cp - 1;
  if (ext_a_odd_upper(cp) && (cp % 2 == 0)) return cp - 1;
  return cp;
}

char32_t to_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  if (ext_a_even_upper(cp) && (cp % 2 == 0)) return cp + 1;
  if (ext_a_odd_upper(cp) && (cp % 2 == 1)) return cp + 1;
  return cp;
}

std::string map_first(std::string_view s, char32_t (*fn)(char32_t)) {
  CodePoint cp = decode_first(s);
  if (cp.length == 0 || cp.value == 0xFFFD) return std::string(s);
  char32_t mapped = fn(cp.value);
  if (mapped == cp.value) return std::string(s);
  return encode(mapped) + std::string(s.substr(cp.length));
}

AugmentedPair transplant(const EligiblePair& receiver, const EligiblePair& donor) {
  const BiSentence& r = *receiver.bisentence;
  const BiSentence& d = *donor.bisentence;
  AugmentedPair out;
  out.source_text = replace_subtree(r.source, receiver.src_subtree.span, d.source, donor.src_subtree.span);
  out.target_text = replace_subtree(r.target, receiver.tgt_subtree.span, d.target, donor.tgt_subtree.span);
  return out;
}

}  // namespace

bool starts_uppercase(std::string_view s) {
  CodePoint cp = decode_first(s);
  return cp.length > 0 && cp.value != 0xFFFD && to_lower(cp.value) != cp.value;
}

bool starts_lowercase(std::string_view s) {
  CodePoint cp = decode_first(s);
  return cp.length > 0 && cp.value != 0xFFFD && to_upper(cp.value) != cp.value;
}

std::string upper_first(std::string_view s) { return map_first(s, to_upper); }
std::string lower_first(std::string_view s) { return map_first(s, to_lower); }

std::vector<SurfaceToken> surface_tokens(const DepSentence& sentence) {
  return span_tokens(sentence, {1, static_cast<int>(sentence.size())});
}

std::vector<SurfaceToken> span_tokens(const DepSentence& sentence, TokenSpan span) {
  std::vector<SurfaceToken> out;
  out.reserve(static_cast<std::size_t>(std::max(0, span.length())));
  for (int i = span.lo; i <= span.hi; ++i) {
    const Token& t = sentence.at(i);
    out.push_back(SurfaceToken{t.form, t.upos, t.space_after, i == 1});
  }
  return out;
}

std::vector<SurfaceToken> splice(std::span<const SurfaceToken> tokens, TokenSpan span,
                                 std::span<const SurfaceToken> replacement) {
  const int n = static_cast<int>(tokens.size());
  if (span.lo < 1 || span.hi > n || span.lo > span.hi) {
    throw std::logic_error("splice: span [" + std::to_string(span.lo) + ", " +
                           std::to_string(span.hi) + "] invalid for " + std::to_string(n) + " tokens");
  }
  if (replacement.empty()) throw std::logic_error("splice: empty replacement");

  std::vector<SurfaceToken> out;
  out.reserve(tokens.size() - static_cast<std::size_t>(span.length()) + replacement.size());
  out.insert(out.end(), tokens.begin(), tokens.begin() + (span.lo - 1));
  out.insert(out.end(), replacement.begin(), replacement.end());
  out.back().space_after = tokens[static_cast<std::size_t>(span.hi - 1)].space_after;
  out.insert(out.end(), tokens.begin() + span.hi, tokens.end());
  return out;
}

std::vector<SurfaceToken> splice(const DepSentence& sentence, TokenSpan span,
                                 std::span<const SurfaceToken> replacement) {
  return splice(surface_tokens(sentence), span, replacement);
}

std::vector<SurfaceToken> recase(std::vector<SurfaceToken> tokens, bool original_first_was_capitalized) {
  if (tokens.empty()) return tokens;
  if (original_first_was_capitalized && starts_lowercase(tokens[0].form)) {
    tokens[0].form = upper_first(tokens[0].form);
  }
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    SurfaceToken& t = tokens[i];
    if (t.was_initial && t.upos != "PROPN" && starts_uppercase(t.form)) t.form = lower_first(t.form);
  }
  return tokens;
}

std::string detokenize(std::span<const SurfaceToken> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    out += tokens[i].form;
    if (i + 1 < tokens.size() && tokens[i].space_after) out += ' ';
  }
  return out;
}

std::string replace_subtree(const DepSentence& receiver, TokenSpan receiver_span,
                            const DepSentence& donor, TokenSpan donor_span) {
  const std::vector<SurfaceToken> replacement = span_tokens(donor, donor_span);
  const bool capitalized = !receiver.tokens.empty() && starts_uppercase(receiver.tokens[0].form);
  return detokenize(recase(splice(receiver, receiver_span, replacement), capitalized));
}

std::pair<AugmentedPair, AugmentedPair> swap_pair(const SwapPlan& plan) {
  const EligiblePair& a = *plan.pair_a;
  const EligiblePair& b = *plan.pair_b;
  ProvenanceRecord prov{a.pair_id(), b.pair_id(), plan.swap_type, plan.method, plan.similarity,
                        Direction::a_receives_b};

  AugmentedPair into_a = transplant(a, b);
  into_a.provenance = prov;
  AugmentedPair into_b = transplant(b, a);
  prov.direction = Direction::b_receives_a;
  into_b.provenance = prov;
  return {std::move(into_a), std::move(into_b)};
}

}  // namespace treeswap
