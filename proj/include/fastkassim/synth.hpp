#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <string>
#include <string_view>

#include "fastkassim/treebank.hpp"

// Random tree generators for tests, the benchmark harness and the bench CLI.
namespace fastkassim::synth {

/// Uniform draw from [0, n) by rejection on raw mt19937_64 output; unlike
/// std::uniform_int_distribution the sequence is identical on every platform.
std::size_t uniform_index(std::mt19937_64& rng, std::size_t n);

/// Arbitrary ordered tree with at most max_nodes nodes (>= 2) and labels
/// drawn from the first alphabet_size capital letters. Leaves are tokens
/// from a lowercase alphabet. Always has at least one non-terminal.
ParseTree random_small_tree(std::mt19937_64& rng, std::size_t max_nodes, std::size_t alphabet_size = 3);

/// Treebank-like sentence tree (S/NP/VP/PP/... over POS preterminals and word
/// tokens) of roughly target_size nodes.
ParseTree random_parse_tree(std::mt19937_64& rng, std::size_t target_size);

/// Copy of tree with the same shape where every node gets a label unique to
/// this copy: prefix + preorder index.
ParseTree relabel_disjoint(const ParseTree& tree, std::string_view prefix);

/// Document of `sentences` treebank-like trees with sizes in [min_size, max_size].
Document random_document(std::mt19937_64& rng, std::string id, std::size_t sentences, std::size_t min_size,
                         std::size_t max_size);

}  // namespace fastkassim::synth
