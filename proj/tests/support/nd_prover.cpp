#include "support/nd_prover.hpp"

#include <stdexcept>
#include <vector>

namespace oracle {

namespace {

using proofnet::FrameNode;
using proofnet::NodeId;
using proofnet::ProofFrame;

struct Prover {
  const ProofFrame& frame;
  long budget = 20'000'000;

  void spend() {
    if (--budget <= 0) throw std::runtime_error("nd prover budget exceeded");
  }

  // All derivations of the (negative) goal node from exactly the given
  // positive resources.
  std::set<LinkSet> prove(const std::vector<NodeId>& context, NodeId goal) {
    spend();
    const FrameNode& g = frame.nodes[goal];
    if (!g.is_atom()) {
      // implication introduction: hypothesize the argument subtree
      std::vector<NodeId> extended = context;
      extended.push_back(g.children[0]);
      return prove(extended, g.children[1]);
    }
    std::set<LinkSet> out;
    for (std::size_t pick = 0; pick < context.size(); ++pick) {
      // focus one resource and unfold its curried spine
      std::vector<NodeId> rest;
      for (std::size_t i = 0; i < context.size(); ++i) {
        if (i != pick) rest.push_back(context[i]);
      }
      NodeId spine = context[pick];
      std::vector<NodeId> args;
      while (!frame.nodes[spine].is_atom()) {
        args.push_back(frame.nodes[spine].children[0]);
        spine = frame.nodes[spine].children[1];
      }
      const FrameNode& result = frame.nodes[spine];
      if (result.content.atom != g.content.atom) continue;
      std::pair<std::size_t, std::size_t> link{*g.atom_index, *result.atom_index};
      for (const LinkSet& sub : prove_args(rest, args, 0)) {
        LinkSet links = sub;
        links.insert(link);
        out.insert(std::move(links));
      }
    }
    return out;
  }

  // Derivations of every remaining argument, splitting `context` among them.
  std::set<LinkSet> prove_args(const std::vector<NodeId>& context,
                               const std::vector<NodeId>& args, std::size_t next) {
    spend();
    if (next == args.size()) {
      if (context.empty()) return {LinkSet{}};
      return {};
    }
    // the last argument takes everything that is left
    if (next + 1 == args.size()) return prove(context, args[next]);
    std::set<LinkSet> out;
    const std::size_t m = context.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
      std::vector<NodeId> taken, left;
      for (std::size_t i = 0; i < m; ++i) {
        if (mask >> i & 1) {
          taken.push_back(context[i]);
        } else {
          left.push_back(context[i]);
        }
      }
      std::set<LinkSet> first = prove(taken, args[next]);
      if (first.empty()) continue;
      std::set<LinkSet> rest = prove_args(left, args, next + 1);
      for (const LinkSet& a : first) {
        for (const LinkSet& b : rest) {
          LinkSet merged = a;
          merged.insert(b.begin(), b.end());
          out.insert(std::move(merged));
        }
      }
    }
    return out;
  }
};

}  // namespace

std::set<LinkSet> nd_derivations(const ProofFrame& frame) {
  Prover prover{frame};
  std::vector<NodeId> context;
  for (const auto& [word, root] : frame.premises) context.push_back(root);
  return prover.prove(context, frame.goal);
}

bool nd_derivable(const ProofFrame& frame) { return !nd_derivations(frame).empty(); }

}  // namespace oracle
