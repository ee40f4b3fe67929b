#ifndef PROOFNET_DEPGRAPH_HPP
#define PROOFNET_DEPGRAPH_HPP

#include <cstddef>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "proofnet/verification.hpp"

namespace proofnet {

/// Shallow dependency graph over word positions (0-based premise indices).
struct DependencyGraph {
  std::vector<std::size_t> nodes;                                    // positions, ascending
  std::vector<std::string> words;                                    // parallel to nodes
  std::set<std::tuple<std::size_t, std::size_t, std::string>> edges; // head, dependent, label
  std::size_t root = 0;
};

/// Reads the graph off a decorated term: complement applications project an
/// edge from the functor's head to the argument's head, adjunct applications
/// from the argument's head to the functor's head; abstractions are
/// transparent and variable-headed dependents contribute no edge. Throws
/// HeadlessTerm when the whole term has no lexical head.
DependencyGraph extract_depgraph(const LambdaTerm& term);

/// CoNLL-like TSV: one `position word head label` line per word, positions
/// 1-based, head 0 and label ROOT for the root.
std::string depgraph_to_tsv(const DependencyGraph& graph);

}  // namespace proofnet

#endif  // PROOFNET_DEPGRAPH_HPP
