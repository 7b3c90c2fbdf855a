#pragma once

#include <cstddef>

#include "fastkassim/treebank.hpp"

namespace fastkassim {

/// Unit-cost ordered tree edit distance (Zhang-Shasha). Terminals are
/// ordinary nodes here.
std::size_t tree_edit_distance(const ParseTree& t1, const ParseTree& t2);

/// Edit distance scaled by size(t1) + size(t2) - 2 and clamped to [0, 1].
/// Two single-node trees (zero denominator) give 0 when their labels match
/// and 1 otherwise.
double cassim_normalized_distance(const ParseTree& t1, const ParseTree& t2);

}  // namespace fastkassim
