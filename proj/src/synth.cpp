#include "fastkassim/synth.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace fastkassim::synth {

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return uniform_index(rng, n); }

bool is_phrase(std::string_view label) {
  static const std::vector<std::string_view> phrases = {"S", "NP", "VP", "PP", "SBAR", "ADJP", "ADVP", "WHADVP"};
  return std::find(phrases.begin(), phrases.end(), label) != phrases.end();
}

using Template = std::vector<std::string_view>;

const std::map<std::string_view, std::vector<Template>>& grammar() {
  static const std::map<std::string_view, std::vector<Template>> g = {
      {"S", {{"NP", "VP"}, {"NP", "VP", "."}, {"SBAR", ",", "NP", "VP", "."}, {"ADVP", "NP", "VP"}, {"S", "CC", "S"}}},
      {"NP",
       {{"DT", "NN"}, {"DT", "JJ", "NN"}, {"PRP"}, {"NNP"}, {"DT", "NNS"}, {"NP", "PP"}, {"NP", "SBAR"}, {"NP", "CC", "NP"}}},
      {"VP",
       {{"VBZ", "NP"}, {"VBD", "NP", "PP"}, {"VBP", "SBAR"}, {"MD", "VP"}, {"VBZ", "ADJP"}, {"VBD", "VP"}, {"VBG", "NP"}}},
      {"PP", {{"IN", "NP"}}},
      {"SBAR", {{"IN", "S"}, {"WHADVP", "S"}}},
      {"ADJP", {{"JJ"}, {"RB", "JJ"}, {"JJ", "CC", "JJ"}}},
      {"ADVP", {{"RB"}, {"RB", "PP"}}},
      {"WHADVP", {{"WRB"}}},
  };
  return g;
}

std::size_t min_size(const Template& t) {
  std::size_t s = 1;
  for (auto label : t) s += is_phrase(label) ? 3 : 2;
  return s;
}

void expand(ParseTree::Builder& b, std::mt19937_64& rng, NodeId node, std::string_view label, std::size_t budget) {
  const auto& options = grammar().at(label);
  std::vector<const Template*> fitting, recursive;
  for (const auto& t : options) {
    if (min_size(t) > std::max<std::size_t>(budget, 3)) continue;
    fitting.push_back(&t);
    if (std::any_of(t.begin(), t.end(), [](auto l) { return is_phrase(l); })) recursive.push_back(&t);
  }
  if (fitting.empty()) fitting.push_back(&*std::min_element(options.begin(), options.end(),
                                                              [](const auto& a, const auto& c) { return min_size(a) < min_size(c); }));
  const auto& pool = (budget > 12 && !recursive.empty()) ? recursive : fitting;
  const Template& chosen = *pool[pick(rng, pool.size())];

  std::size_t phrases = 0, fixed = 1;
  for (auto l : chosen) {
    if (is_phrase(l))
      ++phrases;
    else
      fixed += 2;
  }
  const std::size_t rest = budget > fixed ? budget - fixed : 0;
  for (auto l : chosen) {
    NodeId child = b.add_child(node, std::string(l));
    if (is_phrase(l)) {
      expand(b, rng, child, l, phrases ? rest / phrases : 0);
    } else {
      std::string word = (l == "." || l == ",") ? std::string(l) : "w" + std::to_string(pick(rng, 500));
      b.add_token(child, std::move(word));
    }
  }
}

}  // namespace

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<std::size_t>(x % n);
}

ParseTree random_small_tree(std::mt19937_64& rng, std::size_t max_nodes, std::size_t alphabet_size) {
  max_nodes = std::max<std::size_t>(max_nodes, 2);
  const std::size_t n = 2 + pick(rng, max_nodes - 1);
  // Random recursive tree: node k attaches to a uniformly chosen earlier node.
  std::vector<std::size_t> parent(n, 0);
  for (std::size_t k = 1; k < n; ++k) parent[k] = pick(rng, k);
  std::vector<std::vector<std::size_t>> kids(n);
  for (std::size_t k = 1; k < n; ++k) kids[parent[k]].push_back(k);

  auto label_for = [&](std::size_t k) {
    if (kids[k].empty()) return std::string(1, static_cast<char>('a' + pick(rng, 3)));
    return std::string(1, static_cast<char>('A' + pick(rng, alphabet_size)));
  };
  ParseTree::Builder b;
  std::vector<NodeId> ids(n);
  ids[0] = b.add_root(label_for(0));
  for (std::size_t k = 1; k < n; ++k) {
    ids[k] = kids[k].empty() ? b.add_token(ids[parent[k]], label_for(k)) : b.add_child(ids[parent[k]], label_for(k));
  }
  return std::move(b).build();
}

ParseTree random_parse_tree(std::mt19937_64& rng, std::size_t target_size) {
  ParseTree::Builder b;
  NodeId root = b.add_root("ROOT");
  NodeId s = b.add_child(root, "S");
  expand(b, rng, s, "S", target_size > 2 ? target_size - 2 : 1);
  return std::move(b).build();
}

ParseTree relabel_disjoint(const ParseTree& tree, std::string_view prefix) {
  ParseTree::Builder b;
  std::vector<NodeId> ids(tree.size());
  ids[0] = b.add_root(std::string(prefix) + "0");
  for (NodeId k = 1; k < tree.size(); ++k) {
    const Node& n = tree.node(k);
    std::string label = std::string(prefix) + std::to_string(k);
    ids[k] = n.bare ? b.add_token(ids[n.parent], std::move(label)) : b.add_child(ids[n.parent], std::move(label));
  }
  return std::move(b).build();
}

Document random_document(std::mt19937_64& rng, std::string id, std::size_t sentences, std::size_t min_size,
                         std::size_t max_size) {
  Document doc{std::move(id), {}};
  for (std::size_t k = 0; k < sentences; ++k) {
    std::size_t target = min_size + pick(rng, max_size - min_size + 1);
    doc.trees.push_back(random_parse_tree(rng, target));
  }
  return doc;
}

}  // namespace fastkassim::synth
