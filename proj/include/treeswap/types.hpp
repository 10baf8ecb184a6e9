#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace treeswap {

// One CoNLL-U word row. Indices are 1-based; head 0 marks the root.
struct Token {
  int index = 0;
  std::string form;
  std::string upos;
  int head = 0;
  std::string deprel;  // lowercased, subtype kept ("nsubj:pass")
  bool space_after = true;

  bool operator==(const Token&) const = default;
};

// A dependency tree over a token sequence. tokens[i].index == i + 1.
struct DepSentence {
  std::optional<std::string> sent_id;
  std::vector<Token> tokens;
  int root_index = 0;

  std::size_t size() const { return tokens.size(); }
  const Token& at(int index) const { return tokens.at(static_cast<std::size_t>(index - 1)); }

  // Children of `index` in surface order; index 0 yields the root.
  std::vector<int> children(int index) const;

  bool operator==(const DepSentence&) const = default;
};

struct BiSentence {
  std::size_t pair_id = 0;
  DepSentence source;
  DepSentence target;
};

enum class SwapType { object, subject };
enum class Method { random, ged, em };
enum class Direction { a_receives_b, b_receives_a };

std::string_view to_string(SwapType t);
std::string_view to_string(Method m);
std::string_view to_string(Direction d);

// Throw std::invalid_argument on unknown names.
SwapType parse_swap_type(std::string_view s);
Method parse_method(std::string_view s);
Direction parse_direction(std::string_view s);

// The UD relation extracted for each swap type.
std::string_view relation_for(SwapType t);

struct ProvenanceRecord {
  std::size_t donor_a = 0;
  std::size_t donor_b = 0;
  SwapType swap_type = SwapType::object;
  Method method = Method::random;
  std::optional<double> similarity;
  Direction direction = Direction::a_receives_b;
};

// A synthetic bisentence produced by one swap direction.
struct AugmentedPair {
  std::string source_text;
  std::string target_text;
  ProvenanceRecord provenance;
};

// Errors surfaced by the engine. The CLI maps DataError subclasses to exit
// status 2 and ConfigError to exit status 1.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public DataError {
 public:
  using DataError::DataError;
};

class StructureError : public DataError {
 public:
  using DataError::DataError;
};

class AlignmentError : public DataError {
 public:
  using DataError::DataError;
};

class IoError : public DataError {
 public:
  using DataError::DataError;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace treeswap
