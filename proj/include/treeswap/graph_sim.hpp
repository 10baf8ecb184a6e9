#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "treeswap/rng.hpp"
#include "treeswap/subtree.hpp"
#include "treeswap/types.hpp"

namespace treeswap {

// Rooted tree of UPOS labels. Positions follow surface word order; children
// are ordered by position.
class LabeledTree {
 public:
  // parents[p] is the parent position of p, or -1 for the single root.
  // Throws std::invalid_argument unless the parents describe one tree.
  LabeledTree(std::vector<std::string> labels, std::vector<int> parents);

  // Tree over the members of `subtree`, labeled with their UPOS.
  static LabeledTree from_subtree(const DepSentence& sentence, const Subtree& subtree);

  std::size_t size() const { return labels_.size(); }
  std::size_t edge_count() const { return labels_.size() - 1; }
  int root() const { return root_; }
  const std::string& label(int p) const { return labels_[static_cast<std::size_t>(p)]; }
  int parent(int p) const { return parents_[static_cast<std::size_t>(p)]; }
  const std::vector<int>& children(int p) const { return children_[static_cast<std::size_t>(p)]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<int>& parents() const { return parents_; }

 private:
  std::vector<std::string> labels_;
  std::vector<int> parents_;
  std::vector<std::vector<int>> children_;
  int root_ = 0;
};

struct Edge {
  std::string head_label;
  std::string dep_label;
  int dep_position = 0;
  bool operator==(const Edge&) const = default;
};

// One edge per non-root node, ordered by dependent position.
std::vector<Edge> edges(const LabeledTree& t);

struct EdgeMapping {
  // (dependent position in g1, dependent position in g2)
  std::vector<std::pair<int, int>> pairs;
  std::size_t size() const { return pairs.size(); }
};

// Unit-cost insert/delete/substitute distance.
std::size_t levenshtein(std::span<const std::string> a, std::span<const std::string> b);

// Ordered labeled tree edit distance. Relabeling costs 2 when labels differ;
// deleting or inserting a node costs 1 for the node plus 1 for the edge to its
// parent, so 2 for every node but a tree root, which costs 1.
int ged(const LabeledTree& t1, const LabeledTree& t2);

// Upper bound of ged: delete all of t1, insert all of t2.
inline int ged_max(const LabeledTree& t1, const LabeledTree& t2) {
  return static_cast<int>(2 * t1.size() - 1 + 2 * t2.size() - 1);
}

// (d_max - ged) / d_max, clamped to [0, 1].
double ged_similarity(const LabeledTree& t1, const LabeledTree& t2);

// Number of coinciding endpoint labels: head with head, dependent with
// dependent.
int edge_score(const Edge& e1, const Edge& e2);

// Labels on the path from the root down to the edge's dependent, inclusive.
std::vector<std::string> route(const Edge& e, const LabeledTree& t);

// Greedy injective edge matching. For each edge of g1 in dependent-position
// order, candidates are the unmapped edges of g2 with a positive score;
// ties are narrowed to the best score, then the smallest route distance,
// and the survivor is drawn from `rng`.
EdgeMapping edge_mapping(const LabeledTree& g1, const LabeledTree& g2, Rng& rng);

// Jaccard index |m| / (|E1| + |E2| - |m|); 1 when both trees are edgeless.
double em_similarity(const LabeledTree& g1, const LabeledTree& g2, Rng& rng);

}  // namespace treeswap
