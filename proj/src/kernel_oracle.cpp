// Brute-force reference for the tree kernel. Builds every matched fragment
// pairing as an explicit list of node pairs; shares nothing with the
// memoized recursion beyond the tree model.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "fastkassim/error.hpp"
#include "fastkassim/kernel.hpp"

namespace fastkassim {

namespace {

using Mapping = std::vector<std::pair<NodeId, NodeId>>;

std::vector<Mapping> mappings_at(const ParseTree& t1, NodeId n1, const ParseTree& t2, NodeId n2, int sigma) {
  const Node& a = t1.node(n1);
  const Node& b = t2.node(n2);
  if (a.children.empty() || b.children.empty() || a.label != b.label) return {};
  if (a.kind == NodeKind::Preterminal && b.kind == NodeKind::Preterminal) return {Mapping{{n1, n2}}};

  std::vector<Mapping> partial{Mapping{{n1, n2}}};
  for (NodeId c1 : a.children) {
    std::vector<Mapping> choices;
    if (sigma == 1) choices.emplace_back();  // leave c1 out of the fragment
    for (NodeId c2 : b.children) {
      for (auto& m : mappings_at(t1, c1, t2, c2, sigma)) choices.push_back(std::move(m));
    }
    std::vector<Mapping> next;
    for (const Mapping& p : partial) {
      for (const Mapping& c : choices) {
        Mapping joined = p;
        joined.insert(joined.end(), c.begin(), c.end());
        next.push_back(std::move(joined));
      }
    }
    partial = std::move(next);
    if (partial.empty()) break;
  }
  return partial;
}

double oriented_total(const ParseTree& a, const ParseTree& b, const KernelConfig& cfg) {
  double total = 0.0;
  for (NodeId n1 = 0; n1 < a.size(); ++n1) {
    for (NodeId n2 = 0; n2 < b.size(); ++n2) {
      for (const Mapping& m : mappings_at(a, n1, b, n2, cfg.sigma))
        total += std::pow(cfg.lambda, static_cast<double>(m.size()));
    }
  }
  return total;
}

}  // namespace

double enumerate_common_fragments(const ParseTree& t1, const ParseTree& t2, const KernelConfig& cfg,
                                  std::size_t cap) {
  cfg.validate();
  if (t1.size() * t2.size() > cap)
    throw Error(ErrorCode::OracleCapExceeded, "size product " + std::to_string(t1.size() * t2.size()) +
                                                  " exceeds oracle cap " + std::to_string(cap));
  const int order = compare_shape(t1, t2);
  if (order == 0 && !(t1 == t2)) return (oriented_total(t1, t2, cfg) + oriented_total(t2, t1, cfg)) / 2.0;
  return order > 0 ? oriented_total(t2, t1, cfg) : oriented_total(t1, t2, cfg);
}

}  // namespace fastkassim
