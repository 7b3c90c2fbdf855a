#include "fastkassim/treebank.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <utility>

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include "fastkassim/error.hpp"

namespace fastkassim {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = kFnvOffset) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
bool is_delim(char c) { return is_space(c) || c == '(' || c == ')'; }

}  // namespace

std::string normalize_label(std::string_view label) {
  if (std::all_of(label.begin(), label.end(), [](char c) { return static_cast<unsigned char>(c) < 0x80; }))
    return std::string(label);

  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) return std::string(label);

  icu::UnicodeString text = icu::UnicodeString::fromUTF8(icu::StringPiece(label.data(), static_cast<int32_t>(label.size())));
  if (nfc->isNormalized(text, status) && U_SUCCESS(status)) return std::string(label);
  status = U_ZERO_ERROR;
  icu::UnicodeString normalized = nfc->normalize(text, status);
  if (U_FAILURE(status)) return std::string(label);
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

// --- Builder -----------------------------------------------------------

NodeId ParseTree::Builder::add_root(std::string label) {
  pending_.clear();
  pending_.push_back({std::move(label), {}, false});
  return 0;
}

NodeId ParseTree::Builder::add_child(NodeId parent, std::string label) {
  auto id = static_cast<NodeId>(pending_.size());
  pending_.push_back({std::move(label), {}, false});
  pending_[parent].children.push_back(id);
  return id;
}

NodeId ParseTree::Builder::add_token(NodeId parent, std::string label) {
  NodeId id = add_child(parent, std::move(label));
  pending_[id].bare = true;
  return id;
}

ParseTree ParseTree::Builder::build() && {
  ParseTree tree;
  if (pending_.empty()) throw Error(ErrorCode::EmptyInput, "tree has no nodes");

  // Re-number into preorder.
  std::vector<NodeId> order;
  order.reserve(pending_.size());
  std::vector<NodeId> remap(pending_.size());
  std::vector<NodeId> stack{0};
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    remap[id] = static_cast<NodeId>(order.size());
    order.push_back(id);
    const auto& kids = pending_[id].children;
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }

  tree.nodes_.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    Pending& p = pending_[order[i]];
    if (p.label.empty()) throw Error(ErrorCode::EmptyLabel, "node " + std::to_string(i) + " has an empty label");
    Node& n = tree.nodes_[i];
    n.label = std::move(p.label);
    n.label_hash = fnv1a(n.label);
    n.children.reserve(p.children.size());
    for (NodeId c : p.children) {
      n.children.push_back(remap[c]);
      tree.nodes_[remap[c]].parent = static_cast<NodeId>(i);
    }
    n.bare = p.bare && p.children.empty();
  }
  pending_.clear();

  std::map<std::string_view, std::vector<NodeId>> by_label;
  std::unordered_map<std::string_view, std::uint32_t> first_seen;
  std::uint64_t h = kFnvOffset;
  std::uint64_t shape = kFnvOffset;
  tree.pattern_.reserve(tree.nodes_.size());
  for (std::size_t i = 0; i < tree.nodes_.size(); ++i) {
    Node& n = tree.nodes_[i];
    if (n.children.empty()) {
      n.kind = NodeKind::Terminal;
    } else {
      bool all_terminal = std::all_of(n.children.begin(), n.children.end(),
                                      [&](NodeId c) { return tree.nodes_[c].children.empty(); });
      n.kind = all_terminal ? NodeKind::Preterminal : NodeKind::Internal;
      ++tree.nonterminal_count_;
      by_label[n.label].push_back(static_cast<NodeId>(i));
    }
    h = mix(h, n.label_hash);
    h = mix(h, n.children.size());
    auto [it, fresh] = first_seen.emplace(n.label, static_cast<std::uint32_t>(first_seen.size()));
    tree.pattern_.push_back(it->second);
    shape = mix(shape, it->second);
    shape = mix(shape, n.children.size());
  }
  tree.structure_hash_ = h;
  tree.shape_hash_ = shape;
  tree.groups_.reserve(by_label.size());
  for (auto& [label, ids] : by_label) tree.groups_.push_back({ids.front(), std::move(ids)});
  tree.group_of_.assign(tree.nodes_.size(), kNoGroup);
  tree.group_rank_.assign(tree.nodes_.size(), 0);
  for (std::size_t g = 0; g < tree.groups_.size(); ++g) {
    const auto& ids = tree.groups_[g].nodes;
    for (std::size_t r = 0; r < ids.size(); ++r) {
      tree.group_of_[ids[r]] = static_cast<std::uint32_t>(g);
      tree.group_rank_[ids[r]] = static_cast<std::uint32_t>(r);
    }
  }
  return tree;
}

bool operator==(const ParseTree& a, const ParseTree& b) {
  if (a.size() != b.size() || a.structure_hash_ != b.structure_hash_) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Node& x = a.nodes_[i];
    const Node& y = b.nodes_[i];
    if (x.label != y.label || x.children != y.children) return false;
  }
  return true;
}

// --- Bracketed reader/writer --------------------------------------------

ParseTree read_bracketed(std::string_view text) {
  std::size_t pos = 0;
  const std::size_t end = text.size();
  auto skip_space = [&] {
    while (pos < end && is_space(text[pos])) ++pos;
  };
  auto read_token = [&] {
    std::size_t start = pos;
    while (pos < end && !is_delim(text[pos])) ++pos;
    return text.substr(start, pos - start);
  };

  skip_space();
  if (pos == end) throw ParseError(ErrorCode::EmptyInput, pos, "empty tree text");
  if (text[pos] != '(') throw ParseError(ErrorCode::UnbalancedParens, pos, "expected '('");

  ParseTree::Builder builder;
  std::vector<NodeId> open;
  bool have_root = false;
  while (true) {
    skip_space();
    if (pos == end) break;
    char c = text[pos];
    if (c == '(') {
      if (open.empty() && have_root) throw ParseError(ErrorCode::UnbalancedParens, pos, "content after the root closed");
      std::size_t label_at = ++pos;
      skip_space();
      if (pos < end && !is_delim(text[pos])) label_at = pos;
      std::string_view label = read_token();
      if (label.empty()) throw ParseError(ErrorCode::EmptyLabel, label_at, "node without a label");
      NodeId id = open.empty() ? builder.add_root(normalize_label(label))
                               : builder.add_child(open.back(), normalize_label(label));
      have_root = true;
      open.push_back(id);
    } else if (c == ')') {
      if (open.empty()) throw ParseError(ErrorCode::UnbalancedParens, pos, "unmatched ')'");
      open.pop_back();
      ++pos;
    } else {
      std::size_t at = pos;
      std::string_view token = read_token();
      if (open.empty()) throw ParseError(ErrorCode::UnbalancedParens, at, "token outside any bracket");
      builder.add_token(open.back(), normalize_label(token));
    }
  }
  if (!open.empty()) throw ParseError(ErrorCode::UnbalancedParens, end, "unclosed '(' at end of input");
  return std::move(builder).build();
}

std::string write_bracketed(const ParseTree& tree) {
  std::string out;
  if (tree.empty()) return out;
  // Frames: (node, next child index).
  std::vector<std::pair<NodeId, std::size_t>> stack{{tree.root(), 0}};
  out += '(';
  out += tree.node(tree.root()).label;
  while (!stack.empty()) {
    auto& [id, next] = stack.back();
    const Node& n = tree.node(id);
    if (next == n.children.size()) {
      out += ')';
      stack.pop_back();
      continue;
    }
    NodeId child = n.children[next++];
    const Node& c = tree.node(child);
    out += ' ';
    if (c.bare) {
      out += c.label;
    } else {
      out += '(';
      out += c.label;
      stack.emplace_back(child, 0);
    }
  }
  return out;
}

std::uint64_t same_label_pairs(const ParseTree& t1, const ParseTree& t2) {
  auto g1 = t1.label_groups();
  auto g2 = t2.label_groups();
  std::uint64_t total = 0;
  std::size_t i = 0, j = 0;
  while (i < g1.size() && j < g2.size()) {
    int cmp = t1.node(g1[i].representative).label.compare(t2.node(g2[j].representative).label);
    if (cmp < 0) {
      ++i;
    } else if (cmp > 0) {
      ++j;
    } else {
      total += static_cast<std::uint64_t>(g1[i].nodes.size()) * g2[j].nodes.size();
      ++i;
      ++j;
    }
  }
  return total;
}

int compare_canonical(const ParseTree& a, const ParseTree& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  if (a.structure_hash() != b.structure_hash()) return a.structure_hash() < b.structure_hash() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Node& x = a.node(static_cast<NodeId>(i));
    const Node& y = b.node(static_cast<NodeId>(i));
    if (int c = x.label.compare(y.label); c != 0) return c < 0 ? -1 : 1;
    if (x.children.size() != y.children.size()) return x.children.size() < y.children.size() ? -1 : 1;
  }
  return 0;
}

int compare_shape(const ParseTree& a, const ParseTree& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  if (a.shape_hash() != b.shape_hash()) return a.shape_hash() < b.shape_hash() ? -1 : 1;
  const auto pa = a.label_pattern();
  const auto pb = b.label_pattern();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (pa[i] != pb[i]) return pa[i] < pb[i] ? -1 : 1;
    const auto ca = a.node(static_cast<NodeId>(i)).children.size();
    const auto cb = b.node(static_cast<NodeId>(i)).children.size();
    if (ca != cb) return ca < cb ? -1 : 1;
  }
  return 0;
}

}  // namespace fastkassim
