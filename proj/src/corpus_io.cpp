#include "treeswap/corpus_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "treeswap/swapper.hpp"

namespace treeswap {
namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::optional<int> to_int(const std::string& s) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool space_after_from_misc(const std::string& misc) {
  if (misc == "_") return true;
  for (const std::string& item : split(misc, '|')) {
    if (item == "SpaceAfter=No") return false;
  }
  return true;
}

std::string sentence_label(const DepSentence& s, std::size_t ordinal) {
  if (s.sent_id) return "sent_id " + *s.sent_id;
  return "sentence " + std::to_string(ordinal);
}

class BlockParser {
 public:
  explicit BlockParser(const std::string& name) : name_(name) {}

  void line(const std::string& raw, std::size_t line_no) {
    std::string text = raw;
    if (!text.empty() && text.back() == '\r') text.pop_back();

    if (text.empty()) {
      flush();
      return;
    }
    if (!open_) {
      open_ = true;
      current_ = DepSentence{};
      ++ordinal_;
    }
    if (text[0] == '#') {
      comment(text);
      return;
    }
    row(text, line_no);
  }

  std::vector<DepSentence> finish() {
    flush();
    return std::move(out_);
  }

 private:
  [[noreturn]] void fail(std::size_t line_no, const std::string& msg) const {
    throw ParseError(name_ + ": sentence " + std::to_string(ordinal_) + ", line " +
                     std::to_string(line_no) + ": " + msg);
  }

  void comment(const std::string& text) {
    static constexpr std::string_view kKey = "sent_id";
    std::size_t pos = text.find_first_not_of("# ");
    if (pos == std::string::npos || text.compare(pos, kKey.size(), kKey) != 0) return;
    std::size_t eq = text.find('=', pos + kKey.size());
    if (eq == std::string::npos) return;
    std::size_t v = text.find_first_not_of(' ', eq + 1);
    current_.sent_id = v == std::string::npos ? std::string() : text.substr(v);
  }

  void row(const std::string& text, std::size_t line_no) {
    std::vector<std::string> cols = split(text, '\t');
    if (cols.size() != 10) {
      fail(line_no, "expected 10 tab-separated columns, found " + std::to_string(cols.size()));
    }
    const std::string& id = cols[0];
    if (id.find('-') != std::string::npos || id.find('.') != std::string::npos) return;

    std::optional<int> index = to_int(id);
    if (!index) fail(line_no, "non-integer token id '" + id + "'");
    int expected = static_cast<int>(current_.tokens.size()) + 1;
    if (*index != expected) {
      fail(line_no, "token id " + id + " out of sequence (expected " + std::to_string(expected) + ")");
    }
    std::optional<int> head = to_int(cols[6]);
    if (!head) fail(line_no, "non-integer head '" + cols[6] + "'");
    if (cols[1].empty() || cols[3].empty() || cols[7].empty()) {
      fail(line_no, "empty FORM, UPOS or DEPREL column");
    }

    Token tok;
    tok.index = *index;
    tok.form = cols[1];
    tok.upos = cols[3];
    tok.head = *head;
    tok.deprel = lowercase(cols[7]);
    tok.space_after = space_after_from_misc(cols[9]);
    current_.tokens.push_back(std::move(tok));
  }

  void flush() {
    if (!open_) return;
    open_ = false;
    // A block of comments only carries no sentence.
    if (current_.tokens.empty()) return;
    validate_tree(current_, name_ + ": " + sentence_label(current_, ordinal_));
    for (const Token& t : current_.tokens) {
      if (t.head == 0) current_.root_index = t.index;
    }
    out_.push_back(std::move(current_));
  }

  std::string name_;
  std::vector<DepSentence> out_;
  DepSentence current_;
  bool open_ = false;
  std::size_t ordinal_ = 0;
};

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  return out;
}

void close_checked(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

void validate_tree(const DepSentence& sentence, const std::string& where) {
  const int n = static_cast<int>(sentence.tokens.size());
  int roots = 0;
  for (const Token& t : sentence.tokens) {
    if (t.head < 0 || t.head > n) {
      throw StructureError(where + ": head " + std::to_string(t.head) + " of token " +
                           std::to_string(t.index) + " out of range");
    }
    if (t.head == t.index) {
      throw StructureError(where + ": token " + std::to_string(t.index) + " is its own head");
    }
    if (t.head == 0) ++roots;
  }
  if (roots != 1) {
    throw StructureError(where + ": expected exactly one root, found " + std::to_string(roots));
  }
  for (const Token& t : sentence.tokens) {
    int cur = t.index;
    for (int steps = 0; cur != 0; ++steps) {
      if (steps > n) {
        throw StructureError(where + ": cycle through token " + std::to_string(t.index));
      }
      cur = sentence.tokens[static_cast<std::size_t>(cur - 1)].head;
    }
  }
}

std::vector<DepSentence> parse_conllu(std::istream& in, const std::string& name) {
  BlockParser parser(name);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) parser.line(line, ++line_no);
  return parser.finish();
}

std::vector<DepSentence> read_conllu(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  return parse_conllu(in, path.string());
}

void write_conllu(std::ostream& out, std::span<const DepSentence> sentences) {
  for (const DepSentence& s : sentences) {
    if (s.sent_id) out << "# sent_id = " << *s.sent_id << '\n';
    for (const Token& t : s.tokens) {
      out << t.index << '\t' << t.form << "\t_\t" << t.upos << "\t_\t_\t" << t.head << '\t'
          << t.deprel << "\t_\t" << (t.space_after ? "_" : "SpaceAfter=No") << '\n';
    }
    out << '\n';
  }
}

std::vector<BiSentence> align_bitext(std::vector<DepSentence> src, std::vector<DepSentence> tgt) {
  if (src.size() != tgt.size()) {
    throw AlignmentError("source/target sentence counts differ: " + std::to_string(src.size()) +
                         " vs " + std::to_string(tgt.size()));
  }
  std::vector<BiSentence> out;
  out.reserve(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    out.push_back(BiSentence{i, std::move(src[i]), std::move(tgt[i])});
  }
  return out;
}

std::string format_provenance(const ProvenanceRecord& rec) {
  std::ostringstream os;
  os << rec.donor_a << '\t' << rec.donor_b << '\t' << to_string(rec.swap_type) << '\t'
     << to_string(rec.method) << '\t';
  if (rec.similarity) {
    os << std::fixed << std::setprecision(6) << *rec.similarity;
  } else {
    os << "NA";
  }
  os << '\t' << to_string(rec.direction);
  return os.str();
}

ProvenanceRecord parse_provenance(const std::string& row) {
  std::vector<std::string> cols = split(row, '\t');
  if (cols.size() != 6) throw ParseError("provenance row: expected 6 columns: " + row);
  ProvenanceRecord rec;
  auto donor = [&](const std::string& s) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw ParseError("provenance row: bad donor id '" + s + "'");
    }
    return v;
  };
  try {
    rec.donor_a = donor(cols[0]);
    rec.donor_b = donor(cols[1]);
    rec.swap_type = parse_swap_type(cols[2]);
    rec.method = parse_method(cols[3]);
    if (cols[4] != "NA") rec.similarity = std::stod(cols[4]);
    rec.direction = parse_direction(cols[5]);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("provenance row: ") + e.what());
  }
  return rec;
}

WriteCounts write_output(std::span<const BiSentence> originals,
                         std::span<const AugmentedPair> augmented,
                         const std::filesystem::path& out_src,
                         const std::filesystem::path& out_tgt,
                         const std::optional<std::filesystem::path>& out_prov) {
  WriteCounts counts;
  std::ofstream src = open_for_write(out_src);
  std::ofstream tgt = open_for_write(out_tgt);

  for (const BiSentence& b : originals) {
    src << detokenize(surface_tokens(b.source)) << '\n';
    tgt << detokenize(surface_tokens(b.target)) << '\n';
    ++counts.originals;
  }
  for (const AugmentedPair& a : augmented) {
    src << a.source_text << '\n';
    tgt << a.target_text << '\n';
    ++counts.augmented;
  }
  counts.lines = counts.originals + counts.augmented;
  close_checked(src, out_src);
  close_checked(tgt, out_tgt);

  if (out_prov) {
    std::ofstream prov = open_for_write(*out_prov);
    prov << kProvenanceHeader << '\n';
    for (const AugmentedPair& a : augmented) {
      prov << format_provenance(a.provenance) << '\n';
      ++counts.provenance_rows;
    }
    close_checked(prov, *out_prov);
  }
  return counts;
}

}  // namespace treeswap
