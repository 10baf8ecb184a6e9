#include "treeswap/types.hpp"

namespace treeswap {

std::vector<int> DepSentence::children(int index) const {
  std::vector<int> out;
  for (const Token& t : tokens) {
    if (t.head == index) out.push_back(t.index);
  }
  return out;
}

std::string_view to_string(SwapType t) {
  return t == SwapType::object ? "object" : "subject";
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::random: return "random";
    case Method::ged: return "ged";
    case Method::em: return "em";
  }
  return "?";
}

std::string_view to_string(Direction d) {
  return d == Direction::a_receives_b ? "a_receives_b" : "b_receives_a";
}

SwapType parse_swap_type(std::string_view s) {
  if (s == "object") return SwapType::object;
  if (s == "subject") return SwapType::subject;
  throw std::invalid_argument("unknown swap type: " + std::string(s));
}

Method parse_method(std::string_view s) {
  if (s == "random") return Method::random;
  if (s == "ged") return Method::ged;
  if (s == "em") return Method::em;
  throw std::invalid_argument("unknown method: " + std::string(s));
}

Direction parse_direction(std::string_view s) {
  if (s == "a_receives_b") return Direction::a_receives_b;
  if (s == "b_receives_a") return Direction::b_receives_a;
  throw std::invalid_argument("unknown direction: " + std::string(s));
}

std::string_view relation_for(SwapType t) {
  return t == SwapType::object ? "obj" : "nsubj";
}

}  // namespace treeswap
