#ifndef PROOFNET_FRAME_HPP
#define PROOFNET_FRAME_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "proofnet/types.hpp"

namespace proofnet {

enum class Polarity { Positive, Negative };

inline Polarity flip(Polarity p) {
  return p == Polarity::Positive ? Polarity::Negative : Polarity::Positive;
}

using NodeId = std::size_t;
constexpr std::size_t kGoalPremise = static_cast<std::size_t>(-1);

/// One node of a formula decomposition tree. Implication nodes carry the
/// fused symbol and exactly two children (argument first, then result);
/// atoms are leaves and carry their global index.
struct FrameNode {
  NodeId id = 0;
  FrameSymbol content;
  Polarity polarity = Polarity::Positive;
  std::optional<NodeId> parent;
  std::vector<NodeId> children;            // {argument, result} for impls
  std::optional<std::size_t> atom_index;   // atoms only
  std::size_t premise = kGoalPremise;      // owning premise, kGoalPremise for the goal tree

  bool is_atom() const { return content.tag == FrameSymbol::Tag::Atom; }
};

/// The polarized decomposition trees of a sequent. Premise roots are
/// positive, the goal root negative; atom occurrences are indexed densely
/// left-to-right over premises then goal.
struct ProofFrame {
  std::vector<std::pair<std::string, NodeId>> premises;  // word, root
  NodeId goal = 0;
  std::vector<FrameNode> nodes;       // id == vector position
  std::vector<NodeId> atom_index;     // global atom position -> node id

  const FrameNode& node(NodeId id) const { return nodes[id]; }
  const FrameNode& atom(std::size_t index) const { return nodes[atom_index[index]]; }
  std::size_t atom_count() const { return atom_index.size(); }
};

struct InvarianceReport {
  // atom -> (negative count, positive count)
  std::map<Atom, std::pair<std::size_t, std::size_t>> counts;
  bool ok = false;
};

/// Decomposes premises and goal into a proof frame. All types must be
/// sequent types (non-diamond roots); throws WellFormednessError otherwise.
ProofFrame build_frame(const std::vector<std::pair<std::string, Type>>& premises,
                       const Type& goal);

/// Counts positive and negative occurrences per atom; ok iff they agree for
/// every atom.
InvarianceReport count_invariance(const ProofFrame& frame);

/// `[SOS]` + each premise's fused prefix serialization + `[SEP]` after each
/// premise. The goal type is carried out-of-band and not emitted.
std::vector<FrameSymbol> flatten_frame(const ProofFrame& frame);

/// Decodes a flattened sequence back into a frame with the supplied goal.
/// Words come back empty. Throws IllFormedSequence carrying the index of the
/// offending segment.
ProofFrame parse_frame_sequence(const std::vector<FrameSymbol>& symbols, const Type& goal);

/// Rebuilds the type of premise `i` (or of the goal) from its decomposition
/// tree.
Type premise_type(const ProofFrame& frame, std::size_t i);
Type goal_type(const ProofFrame& frame);

/// Sequent text format: first line `goal: <type>`, then one `<word>\t<type>`
/// line per premise.
std::vector<std::pair<std::string, Type>> parse_sequent_text(const std::string& text,
                                                             const Vocabulary& vocab,
                                                             Type* goal_out);
std::string sequent_to_text(const ProofFrame& frame);

/// Frames with equal premises (words and types) and equal goal.
bool same_frame(const ProofFrame& a, const ProofFrame& b);

}  // namespace proofnet

#endif  // PROOFNET_FRAME_HPP
