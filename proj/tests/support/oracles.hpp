#pragma once

// Test-only reference implementations. They share nothing with the library
// algorithms they check beyond the tree model.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fastkassim/assignment.hpp"
#include "fastkassim/treebank.hpp"

namespace oracle {

// --- Tree edit distance by direct forest recursion -------------------------

struct Tree;
using Forest = std::vector<std::shared_ptr<const Tree>>;
struct Tree {
  std::string label;
  Forest children;
};

inline std::shared_ptr<const Tree> to_tree(const fastkassim::ParseTree& t, fastkassim::NodeId id) {
  auto out = std::make_shared<Tree>();
  out->label = t.node(id).label;
  for (auto c : t.node(id).children) out->children.push_back(to_tree(t, c));
  return out;
}

inline std::string key(const Forest& f) {
  std::string s;
  for (const auto& t : f) {
    s += '(';
    s += t->label;
    s += ' ';
    s += key(t->children);
    s += ')';
  }
  return s;
}

inline std::size_t count(const Forest& f) {
  std::size_t n = 0;
  for (const auto& t : f) n += 1 + count(t->children);
  return n;
}

// Removing the rightmost root v of F leaves F minus v with v's children
// spliced in its place.
inline Forest drop_root(const Forest& f) {
  Forest out(f.begin(), f.end() - 1);
  for (const auto& c : f.back()->children) out.push_back(c);
  return out;
}

inline std::size_t forest_distance(const Forest& f, const Forest& g, std::map<std::string, std::size_t>& memo) {
  if (f.empty()) return count(g);
  if (g.empty()) return count(f);
  const std::string k = key(f) + "|" + key(g);
  if (auto it = memo.find(k); it != memo.end()) return it->second;
  const auto& v = f.back();
  const auto& w = g.back();
  const Forest f_rest(f.begin(), f.end() - 1);
  const Forest g_rest(g.begin(), g.end() - 1);
  std::size_t best = forest_distance(drop_root(f), g, memo) + 1;
  best = std::min(best, forest_distance(f, drop_root(g), memo) + 1);
  best = std::min(best, forest_distance(v->children, w->children, memo) + (v->label == w->label ? 0 : 1) +
                            forest_distance(f_rest, g_rest, memo));
  memo.emplace(k, best);
  return best;
}

inline std::size_t naive_tree_edit_distance(const fastkassim::ParseTree& a, const fastkassim::ParseTree& b) {
  std::map<std::string, std::size_t> memo;
  return forest_distance({to_tree(a, a.root())}, {to_tree(b, b.root())}, memo);
}

// --- Assignment by exhaustive search ----------------------------------------

inline double brute_force_assignment(const fastkassim::ScoreMatrix& m, bool maximize) {
  const fastkassim::ScoreMatrix w = m.rows() > m.cols() ? m.transposed() : m;
  std::vector<char> used(w.cols(), 0);
  double best = maximize ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
  std::vector<std::size_t> pick(w.rows());
  auto rec = [&](auto&& self, std::size_t r) -> void {
    if (r == w.rows()) {
      double s = 0.0;
      for (std::size_t k = 0; k < w.rows(); ++k) s += w(k, pick[k]);
      best = maximize ? std::max(best, s) : std::min(best, s);
      return;
    }
    for (std::size_t c = 0; c < w.cols(); ++c) {
      if (used[c]) continue;
      used[c] = 1;
      pick[r] = c;
      self(self, r + 1);
      used[c] = 0;
    }
  };
  rec(rec, 0);
  return best;
}

// --- Labels ------------------------------------------------------------------

// Copy of t with every label passed through f.
template <typename F>
fastkassim::ParseTree relabel(const fastkassim::ParseTree& t, F f) {
  fastkassim::ParseTree::Builder b;
  std::vector<fastkassim::NodeId> ids(t.size());
  ids[0] = b.add_root(f(t.node(0).label));
  for (fastkassim::NodeId k = 1; k < t.size(); ++k) {
    const auto& n = t.node(k);
    ids[k] = n.bare ? b.add_token(ids[n.parent], f(n.label)) : b.add_child(ids[n.parent], f(n.label));
  }
  return std::move(b).build();
}

}  // namespace oracle
