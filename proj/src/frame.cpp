#include "proofnet/frame.hpp"

#include <cassert>
#include <sstream>

#include "proofnet/errors.hpp"

namespace proofnet {

namespace {

struct FrameBuilder {
  ProofFrame frame;

  NodeId add_node(FrameSymbol content, Polarity polarity, std::optional<NodeId> parent,
                  std::size_t premise) {
    NodeId id = frame.nodes.size();
    FrameNode n;
    n.id = id;
    n.content = std::move(content);
    n.polarity = polarity;
    n.parent = parent;
    n.premise = premise;
    frame.nodes.push_back(std::move(n));
    return id;
  }

  // Decomposition per the polarity rules: under a positive implication the
  // argument is negative and the result positive; under a negative one the
  // reverse. Decorations fuse into the implication node and do not affect
  // polarity.
  NodeId decompose(const Type& t, Polarity p, std::optional<NodeId> parent, std::size_t premise) {
    switch (t.kind()) {
      case Type::Kind::Atomic: {
        NodeId id = add_node(FrameSymbol::atom_sym(t.atom()), p, parent, premise);
        frame.nodes[id].atom_index = frame.atom_index.size();
        frame.atom_index.push_back(id);
        return id;
      }
      case Type::Kind::Arrow: {
        const Type& a = t.argument();
        FrameSymbol sym = a.kind() == Type::Kind::Diamond
                              ? FrameSymbol::diamond_impl(a.label().name())
                              : FrameSymbol::bare_impl();
        const Type& arg = a.kind() == Type::Kind::Diamond ? a.inner() : a;
        NodeId id = add_node(std::move(sym), p, parent, premise);
        NodeId arg_id = decompose(arg, flip(p), id, premise);
        NodeId res_id = decompose(t.result(), p, id, premise);
        frame.nodes[id].children = {arg_id, res_id};
        return id;
      }
      case Type::Kind::Box: {
        const Type& arr = t.inner();
        NodeId id = add_node(FrameSymbol::box_impl(t.label().name()), p, parent, premise);
        NodeId arg_id = decompose(arr.argument(), flip(p), id, premise);
        NodeId res_id = decompose(arr.result(), p, id, premise);
        frame.nodes[id].children = {arg_id, res_id};
        return id;
      }
      case Type::Kind::Diamond:
        throw WellFormednessError("diamond may only appear as the immediate argument of an arrow");
    }
    assert(false);
    return 0;
  }
};

}  // namespace

ProofFrame build_frame(const std::vector<std::pair<std::string, Type>>& premises,
                       const Type& goal) {
  FrameBuilder b;
  for (std::size_t i = 0; i < premises.size(); ++i) {
    if (!is_sequent_type(premises[i].second)) {
      throw WellFormednessError("premise " + std::to_string(i) + " has a diamond root");
    }
    NodeId root = b.decompose(premises[i].second, Polarity::Positive, std::nullopt, i);
    b.frame.premises.emplace_back(premises[i].first, root);
  }
  if (!is_sequent_type(goal)) throw WellFormednessError("goal has a diamond root");
  b.frame.goal = b.decompose(goal, Polarity::Negative, std::nullopt, kGoalPremise);
  return std::move(b.frame);
}

InvarianceReport count_invariance(const ProofFrame& frame) {
  InvarianceReport report;
  for (NodeId id : frame.atom_index) {
    const FrameNode& n = frame.nodes[id];
    auto& entry = report.counts[n.content.atom];
    if (n.polarity == Polarity::Negative) {
      ++entry.first;
    } else {
      ++entry.second;
    }
  }
  report.ok = true;
  for (const auto& [atom, counts] : report.counts) {
    if (counts.first != counts.second) report.ok = false;
  }
  return report;
}

namespace {

void serialize_subtree(const ProofFrame& frame, NodeId id, std::vector<FrameSymbol>& out) {
  const FrameNode& n = frame.nodes[id];
  out.push_back(n.content);
  for (NodeId child : n.children) serialize_subtree(frame, child, out);
}

}  // namespace

std::vector<FrameSymbol> flatten_frame(const ProofFrame& frame) {
  std::vector<FrameSymbol> out;
  out.push_back(FrameSymbol::sos());
  for (const auto& [word, root] : frame.premises) {
    serialize_subtree(frame, root, out);
    out.push_back(FrameSymbol::sep());
  }
  return out;
}

ProofFrame parse_frame_sequence(const std::vector<FrameSymbol>& symbols, const Type& goal) {
  if (symbols.empty() || symbols.front().tag != FrameSymbol::Tag::Sos) {
    throw IllFormedSequence("sequence must start with [SOS]");
  }
  std::vector<std::vector<FrameSymbol>> segments;
  std::vector<FrameSymbol> current;
  bool terminated = true;
  for (std::size_t i = 1; i < symbols.size(); ++i) {
    const FrameSymbol& s = symbols[i];
    if (s.tag == FrameSymbol::Tag::Sos) {
      throw IllFormedSequence("[SOS] inside the sequence", segments.size());
    }
    if (s.tag == FrameSymbol::Tag::Sep) {
      segments.push_back(std::move(current));
      current.clear();
      terminated = true;
    } else {
      current.push_back(s);
      terminated = false;
    }
  }
  if (!terminated) {
    throw IllFormedSequence("sequence does not end with [SEP]", segments.size());
  }
  std::vector<std::pair<std::string, Type>> premises;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    try {
      premises.emplace_back("", from_polish(segments[i]));
    } catch (const IllFormedSequence& e) {
      throw IllFormedSequence(std::string(e.what()) + " (segment " + std::to_string(i) + ")", i);
    }
  }
  return build_frame(premises, goal);
}

Type premise_type(const ProofFrame& frame, std::size_t i) {
  std::vector<FrameSymbol> symbols;
  serialize_subtree(frame, frame.premises.at(i).second, symbols);
  return from_polish(symbols);
}

Type goal_type(const ProofFrame& frame) {
  std::vector<FrameSymbol> symbols;
  serialize_subtree(frame, frame.goal, symbols);
  return from_polish(symbols);
}

std::vector<std::pair<std::string, Type>> parse_sequent_text(const std::string& text,
                                                             const Vocabulary& vocab,
                                                             Type* goal_out) {
  std::istringstream in(text);
  std::string line;
  std::optional<Type> goal;
  std::vector<std::pair<std::string, Type>> premises;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (!goal) {
      const std::string prefix = "goal:";
      if (line.rfind(prefix, 0) != 0) {
        throw SyntaxError("first line must be 'goal: <type>'", 0);
      }
      goal = parse_type(line.substr(prefix.size()), vocab);
      continue;
    }
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw SyntaxError("premise line " + std::to_string(lineno) + " lacks a tab separator", 0);
    }
    std::string word = line.substr(0, tab);
    premises.emplace_back(word, parse_type(line.substr(tab + 1), vocab));
  }
  if (!goal) throw SyntaxError("sequent file has no goal line", 0);
  *goal_out = *goal;
  return premises;
}

std::string sequent_to_text(const ProofFrame& frame) {
  std::ostringstream out;
  out << "goal: " << print_type(goal_type(frame)) << "\n";
  for (std::size_t i = 0; i < frame.premises.size(); ++i) {
    out << frame.premises[i].first << "\t" << print_type(premise_type(frame, i)) << "\n";
  }
  return out.str();
}

bool same_frame(const ProofFrame& a, const ProofFrame& b) {
  if (a.premises.size() != b.premises.size()) return false;
  if (goal_type(a) != goal_type(b)) return false;
  for (std::size_t i = 0; i < a.premises.size(); ++i) {
    if (a.premises[i].first != b.premises[i].first) return false;
    if (premise_type(a, i) != premise_type(b, i)) return false;
  }
  return true;
}

}  // namespace proofnet
