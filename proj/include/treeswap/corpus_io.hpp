#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treeswap/types.hpp"

namespace treeswap {

// Reads a CoNLL-U v2 file. Multi-word token ranges ("1-2") and empty nodes
// ("1.1") are skipped; of the comment lines only `# sent_id = ...` is kept.
// Throws ParseError for malformed rows and StructureError for sentences
// that do not form a single rooted tree.
std::vector<DepSentence> read_conllu(const std::filesystem::path& path);

// Same as read_conllu, reading from a stream. `name` is used in messages.
std::vector<DepSentence> parse_conllu(std::istream& in, const std::string& name);

// Checks the tree invariants of an assembled sentence; throws StructureError.
void validate_tree(const DepSentence& sentence, const std::string& where);

// Writes sentences back as CoNLL-U. Columns the engine does not model are
// written as "_".
void write_conllu(std::ostream& out, std::span<const DepSentence> sentences);

// Pairs sentences by position; throws AlignmentError ("3 vs 2") on length
// mismatch.
std::vector<BiSentence> align_bitext(std::vector<DepSentence> src, std::vector<DepSentence> tgt);

struct WriteCounts {
  std::size_t lines = 0;
  std::size_t originals = 0;
  std::size_t augmented = 0;
  std::size_t provenance_rows = 0;
};

inline constexpr const char* kProvenanceHeader =
    "donor_a\tdonor_b\tswap_type\tmethod\tsimilarity\tdirection";

// Renders one provenance data row (no trailing newline).
std::string format_provenance(const ProvenanceRecord& rec);

// Parses a data row produced by format_provenance.
ProvenanceRecord parse_provenance(const std::string& row);

// Writes originals (detokenized) followed by augmented pairs, one sentence
// per line, line i of both files aligned. Throws IoError naming the path.
WriteCounts write_output(std::span<const BiSentence> originals,
                         std::span<const AugmentedPair> augmented,
                         const std::filesystem::path& out_src,
                         const std::filesystem::path& out_tgt,
                         const std::optional<std::filesystem::path>& out_prov);

}  // namespace treeswap
