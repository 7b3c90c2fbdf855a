#include "fastkassim/treedit.hpp"

#include <algorithm>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fastkassim {

namespace {

// Postorder view of a tree: 1-based indices, leftmost-leaf table, keyroots.
struct Postorder {
  std::vector<int> label;     // label id per postorder index
  std::vector<int> leftmost;  // l(i)
  std::vector<int> keyroots;  // ascending
};

Postorder make_postorder(const ParseTree& t, std::unordered_map<std::string_view, int>& ids) {
  const std::size_t n = t.size();
  Postorder p;
  p.label.assign(n + 1, 0);
  p.leftmost.assign(n + 1, 0);

  std::vector<int> post_of(n, 0);
  std::vector<std::pair<NodeId, std::size_t>> stack{{t.root(), 0}};
  int counter = 0;
  while (!stack.empty()) {
    auto& [id, next] = stack.back();
    const Node& node = t.node(id);
    if (next < node.children.size()) {
      NodeId child = node.children[next++];
      stack.emplace_back(child, 0);
      continue;
    }
    int idx = ++counter;
    post_of[id] = idx;
    auto [it, inserted] = ids.try_emplace(node.label, static_cast<int>(ids.size()));
    p.label[idx] = it->second;
    p.leftmost[idx] = node.children.empty() ? idx : p.leftmost[post_of[node.children.front()]];
    stack.pop_back();
  }

  // Keyroot: the highest node for each distinct leftmost leaf.
  std::vector<int> highest(n + 1, 0);
  for (int i = 1; i <= static_cast<int>(n); ++i) highest[p.leftmost[i]] = i;
  for (int i = 1; i <= static_cast<int>(n); ++i)
    if (highest[p.leftmost[i]] == i) p.keyroots.push_back(i);
  return p;
}

}  // namespace

std::size_t tree_edit_distance(const ParseTree& t1, const ParseTree& t2) {
  std::unordered_map<std::string_view, int> ids;
  const Postorder a = make_postorder(t1, ids);
  const Postorder b = make_postorder(t2, ids);
  const int n = static_cast<int>(t1.size());
  const int m = static_cast<int>(t2.size());

  std::vector<int> treedist(static_cast<std::size_t>(n + 1) * (m + 1), 0);
  std::vector<int> forest(static_cast<std::size_t>(n + 2) * (m + 2), 0);
  auto td = [&](int i, int j) -> int& { return treedist[static_cast<std::size_t>(i) * (m + 1) + j]; };

  for (int i : a.keyroots) {
    for (int j : b.keyroots) {
      const int li = a.leftmost[i];
      const int lj = b.leftmost[j];
      const int rows = i - li + 2;
      const int cols = j - lj + 2;
      auto fd = [&](int x, int y) -> int& { return forest[static_cast<std::size_t>(x) * cols + y]; };

      fd(0, 0) = 0;
      for (int x = 1; x < rows; ++x) fd(x, 0) = fd(x - 1, 0) + 1;
      for (int y = 1; y < cols; ++y) fd(0, y) = fd(0, y - 1) + 1;
      for (int x = 1; x < rows; ++x) {
        const int i1 = li + x - 1;
        for (int y = 1; y < cols; ++y) {
          const int j1 = lj + y - 1;
          const int del = fd(x - 1, y) + 1;
          const int ins = fd(x, y - 1) + 1;
          if (a.leftmost[i1] == li && b.leftmost[j1] == lj) {
            const int rel = fd(x - 1, y - 1) + (a.label[i1] == b.label[j1] ? 0 : 1);
            fd(x, y) = std::min({del, ins, rel});
            td(i1, j1) = fd(x, y);
          } else {
            const int px = a.leftmost[i1] - li;
            const int py = b.leftmost[j1] - lj;
            fd(x, y) = std::min({del, ins, fd(px, py) + td(i1, j1)});
          }
        }
      }
    }
  }
  return static_cast<std::size_t>(td(n, m));
}

double cassim_normalized_distance(const ParseTree& t1, const ParseTree& t2) {
  const std::size_t denom = t1.size() + t2.size() - 2;
  if (denom == 0) return t1.node(t1.root()).label == t2.node(t2.root()).label ? 0.0 : 1.0;
  double d = static_cast<double>(tree_edit_distance(t1, t2)) / static_cast<double>(denom);
  return std::clamp(d, 0.0, 1.0);
}

}  // namespace fastkassim
