#include "treeswap/graph_sim.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace treeswap {
namespace {

// Post-order view used by the tree edit distance.
struct PostOrder {
  std::vector<int> position;   // post-order rank k (1-based) -> tree position
  std::vector<int> leftmost;   // k -> rank of leftmost leaf descendant
  std::vector<int> keyroots;   // ascending
  std::vector<int> node_cost;  // k -> insert/delete cost

  explicit PostOrder(const LabeledTree& t) {
    const std::size_t n = t.size();
    position.assign(n + 1, 0);
    leftmost.assign(n + 1, 0);
    node_cost.assign(n + 1, 0);
    int next = 0;
    visit(t, t.root(), next);

    std::vector<bool> seen(n + 1, false);
    for (int k = static_cast<int>(n); k >= 1; --k) {
      const int l = leftmost[static_cast<std::size_t>(k)];
      if (!seen[static_cast<std::size_t>(l)]) {
        seen[static_cast<std::size_t>(l)] = true;
        keyroots.push_back(k);
      }
    }
    std::reverse(keyroots.begin(), keyroots.end());
  }

 private:
  int visit(const LabeledTree& t, int p, int& next) {
    int first_leaf = 0;
    for (int c : t.children(p)) {
      int l = visit(t, c, next);
      if (first_leaf == 0) first_leaf = l;
    }
    const int k = ++next;
    const std::size_t ks = static_cast<std::size_t>(k);
    position[ks] = p;
    leftmost[ks] = first_leaf == 0 ? k : first_leaf;
    node_cost[ks] = t.parent(p) < 0 ? 1 : 2;
    return leftmost[ks];
  }
};

class Matrix {
 public:
  void resize(std::size_t rows, std::size_t cols) {
    cols_ = cols;
    data_.assign(rows * cols, 0);
  }
  int& operator()(int r, int c) {
    return data_[static_cast<std::size_t>(r) * cols_ + static_cast<std::size_t>(c)];
  }

 private:
  std::vector<int> data_;
  std::size_t cols_ = 0;
};

}  // namespace

LabeledTree::LabeledTree(std::vector<std::string> labels, std::vector<int> parents)
    : labels_(std::move(labels)), parents_(std::move(parents)) {
  const int n = static_cast<int>(labels_.size());
  if (n == 0) throw std::invalid_argument("LabeledTree: empty tree");
  if (parents_.size() != labels_.size()) {
    throw std::invalid_argument("LabeledTree: labels/parents size mismatch");
  }
  children_.assign(labels_.size(), {});
  int roots = 0;
  for (int p = 0; p < n; ++p) {
    const int par = parents_[static_cast<std::size_t>(p)];
    if (par == -1) {
      root_ = p;
      ++roots;
    } else if (par < 0 || par >= n || par == p) {
      throw std::invalid_argument("LabeledTree: bad parent of position " + std::to_string(p));
    } else {
      children_[static_cast<std::size_t>(par)].push_back(p);
    }
  }
  if (roots != 1) throw std::invalid_argument("LabeledTree: expected exactly one root");
  for (int p = 0; p < n; ++p) {
    int cur = p;
    for (int steps = 0; cur != -1; ++steps) {
      if (steps > n) throw std::invalid_argument("LabeledTree: cycle");
      cur = parents_[static_cast<std::size_t>(cur)];
    }
  }
}

LabeledTree LabeledTree::from_subtree(const DepSentence& sentence, const Subtree& subtree) {
  const auto& m = subtree.members;
  auto pos_of = [&](int token_index) {
    auto it = std::lower_bound(m.begin(), m.end(), token_index);
    return (it != m.end() && *it == token_index) ? static_cast<int>(it - m.begin()) : -1;
  };
  std::vector<std::string> labels;
  std::vector<int> parents;
  labels.reserve(m.size());
  parents.reserve(m.size());
  for (int idx : m) {
    const Token& t = sentence.at(idx);
    labels.push_back(t.upos);
    parents.push_back(idx == subtree.root_index ? -1 : pos_of(t.head));
  }
  return LabeledTree(std::move(labels), std::move(parents));
}

std::vector<Edge> edges(const LabeledTree& t) {
  std::vector<Edge> out;
  out.reserve(t.edge_count());
  for (int p = 0; p < static_cast<int>(t.size()); ++p) {
    if (t.parent(p) < 0) continue;
    out.push_back(Edge{t.label(t.parent(p)), t.label(p), p});
  }
  return out;
}

std::size_t levenshtein(std::span<const std::string> a, std::span<const std::string> b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

// Zhang-Shasha keyroot decomposition.
int ged(const LabeledTree& t1, const LabeledTree& t2) {
  const PostOrder a(t1), b(t2);
  const int n1 = static_cast<int>(t1.size());
  const int n2 = static_cast<int>(t2.size());

  thread_local Matrix relabel, td, fd;
  relabel.resize(static_cast<std::size_t>(n1 + 1), static_cast<std::size_t>(n2 + 1));
  td.resize(static_cast<std::size_t>(n1 + 1), static_cast<std::size_t>(n2 + 1));
  fd.resize(static_cast<std::size_t>(n1 + 1), static_cast<std::size_t>(n2 + 1));
  for (int x = 1; x <= n1; ++x) {
    for (int y = 1; y <= n2; ++y) {
      relabel(x, y) = t1.label(a.position[static_cast<std::size_t>(x)]) ==
                              t2.label(b.position[static_cast<std::size_t>(y)])
                          ? 0
                          : 2;
    }
  }

  for (int i : a.keyroots) {
    for (int j : b.keyroots) {
      const int li = a.leftmost[static_cast<std::size_t>(i)];
      const int lj = b.leftmost[static_cast<std::size_t>(j)];
      fd(li - 1, lj - 1) = 0;
      for (int x = li; x <= i; ++x) {
        fd(x, lj - 1) = fd(x - 1, lj - 1) + a.node_cost[static_cast<std::size_t>(x)];
      }
      for (int y = lj; y <= j; ++y) {
        fd(li - 1, y) = fd(li - 1, y - 1) + b.node_cost[static_cast<std::size_t>(y)];
      }
      for (int x = li; x <= i; ++x) {
        const int lx = a.leftmost[static_cast<std::size_t>(x)];
        const int del = a.node_cost[static_cast<std::size_t>(x)];
        for (int y = lj; y <= j; ++y) {
          const int ly = b.leftmost[static_cast<std::size_t>(y)];
          const int ins = b.node_cost[static_cast<std::size_t>(y)];
          const int best_gap = std::min(fd(x - 1, y) + del, fd(x, y - 1) + ins);
          if (lx == li && ly == lj) {
            fd(x, y) = std::min(best_gap, fd(x - 1, y - 1) + relabel(x, y));
            td(x, y) = fd(x, y);
          } else {
            fd(x, y) = std::min(best_gap, fd(lx - 1, ly - 1) + td(x, y));
          }
        }
      }
    }
  }
  return td(n1, n2);
}

double ged_similarity(const LabeledTree& t1, const LabeledTree& t2) {
  const double dmax = ged_max(t1, t2);
  const double sim = (dmax - ged(t1, t2)) / dmax;
  return std::clamp(sim, 0.0, 1.0);
}

int edge_score(const Edge& e1, const Edge& e2) {
  return (e1.head_label == e2.head_label ? 1 : 0) + (e1.dep_label == e2.dep_label ? 1 : 0);
}

std::vector<std::string> route(const Edge& e, const LabeledTree& t) {
  std::vector<std::string> out;
  for (int p = e.dep_position; p != -1; p = t.parent(p)) out.push_back(t.label(p));
  std::reverse(out.begin(), out.end());
  return out;
}

EdgeMapping edge_mapping(const LabeledTree& g1, const LabeledTree& g2, Rng& rng) {
  const std::vector<Edge> e1s = edges(g1);
  const std::vector<Edge> e2s = edges(g2);
  std::vector<std::vector<std::string>> routes2;
  routes2.reserve(e2s.size());
  for (const Edge& e : e2s) routes2.push_back(route(e, g2));

  EdgeMapping mapping;
  std::vector<bool> used(e2s.size(), false);
  std::vector<std::size_t> cands;
  for (const Edge& e1 : e1s) {
    int best_score = 0;
    for (std::size_t k = 0; k < e2s.size(); ++k) {
      if (!used[k]) best_score = std::max(best_score, edge_score(e1, e2s[k]));
    }
    if (best_score < 1) continue;

    const std::vector<std::string> r1 = route(e1, g1);
    std::size_t best_dist = std::numeric_limits<std::size_t>::max();
    cands.clear();
    for (std::size_t k = 0; k < e2s.size(); ++k) {
      if (used[k] || edge_score(e1, e2s[k]) != best_score) continue;
      const std::size_t d = levenshtein(r1, routes2[k]);
      if (d < best_dist) {
        best_dist = d;
        cands.clear();
      }
      if (d == best_dist) cands.push_back(k);
    }
    const std::size_t pick = cands[rng.below(cands.size())];
    used[pick] = true;
    mapping.pairs.emplace_back(e1.dep_position, e2s[pick].dep_position);
  }
  return mapping;
}

double em_similarity(const LabeledTree& g1, const LabeledTree& g2, Rng& rng) {
  const std::size_t n1 = g1.edge_count();
  const std::size_t n2 = g2.edge_count();
  if (n1 == 0 && n2 == 0) return 1.0;
  if (n1 == 0 || n2 == 0) return 0.0;
  const double m = static_cast<double>(edge_mapping(g1, g2, rng).size());
  return m / (static_cast<double>(n1 + n2) - m);
}

}  // namespace treeswap
