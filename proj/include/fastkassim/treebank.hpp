#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fastkassim {

using NodeId = std::uint32_t;

enum class NodeKind { Terminal, Preterminal, Internal };

struct Node {
  std::string label;
  std::uint64_t label_hash = 0;
  std::vector<NodeId> children;
  NodeId parent = 0;
  NodeKind kind = NodeKind::Terminal;
  bool bare = false;  // terminal written as a bare token rather than "(X)"

  bool is_terminal() const { return kind == NodeKind::Terminal; }
};

/// Non-terminal nodes sharing one label, in document order.
struct LabelGroup {
  NodeId representative;  // first node carrying the label
  std::vector<NodeId> nodes;
};

/// Rooted, ordered, labeled constituency tree. Nodes are stored in preorder,
/// so the root is always node 0 and iteration order equals document order.
/// Immutable once built.
class ParseTree {
 public:
  class Builder {
   public:
    NodeId add_root(std::string label);
    NodeId add_child(NodeId parent, std::string label);
    /// Adds a word token; it serializes without parentheses.
    NodeId add_token(NodeId parent, std::string label);
    ParseTree build() &&;

   private:
    struct Pending {
      std::string label;
      std::vector<NodeId> children;
      bool bare = false;
    };
    std::vector<Pending> pending_;
  };

  ParseTree() = default;

  NodeId root() const { return 0; }
  const Node& node(NodeId id) const { return nodes_[id]; }
  std::span<const Node> nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  std::size_t nonterminal_count() const { return nonterminal_count_; }

  /// Non-terminal label groups sorted by label bytes.
  std::span<const LabelGroup> label_groups() const { return groups_; }
  static constexpr std::uint32_t kNoGroup = 0xffffffffu;
  /// Index into label_groups() of a non-terminal node, kNoGroup for terminals.
  std::uint32_t group_of(NodeId id) const { return group_of_[id]; }
  /// Position of a non-terminal node within its label group.
  std::uint32_t group_rank(NodeId id) const { return group_rank_[id]; }

  /// Hash over labels and shape; equal trees hash equally.
  std::uint64_t structure_hash() const { return structure_hash_; }

  /// Per node in preorder: index of the node's label in order of first
  /// appearance. Invariant under any bijective relabeling.
  std::span<const std::uint32_t> label_pattern() const { return pattern_; }
  /// Hash over shape and label_pattern.
  std::uint64_t shape_hash() const { return shape_hash_; }

  friend bool operator==(const ParseTree& a, const ParseTree& b);

 private:
  std::vector<Node> nodes_;
  std::vector<LabelGroup> groups_;
  std::vector<std::uint32_t> group_of_;
  std::vector<std::uint32_t> group_rank_;
  std::size_t nonterminal_count_ = 0;
  std::uint64_t structure_hash_ = 0;
  std::vector<std::uint32_t> pattern_;
  std::uint64_t shape_hash_ = 0;
};

struct Document {
  std::string id;
  std::vector<ParseTree> trees;
};

ParseTree read_bracketed(std::string_view text);
std::string write_bracketed(const ParseTree& tree);

/// Total node count, terminals included.
inline std::size_t size(const ParseTree& tree) { return tree.size(); }

/// Number of (n1, n2) non-terminal pairs with equal labels across the trees.
std::uint64_t same_label_pairs(const ParseTree& t1, const ParseTree& t2);

/// Total order over tree structures: size, then structure hash, then a
/// preorder comparison of (label, arity). Returns <0, 0 or >0.
int compare_canonical(const ParseTree& a, const ParseTree& b);

/// Like compare_canonical but blind to the label text: size, then shape and
/// label_pattern. Two trees compare equal iff one is a relabeling of the other.
int compare_shape(const ParseTree& a, const ParseTree& b);

/// NFC-normalizes a UTF-8 label. ASCII input is returned unchanged.
std::string normalize_label(std::string_view label);

}  // namespace fastkassim
