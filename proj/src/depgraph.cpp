#include "proofnet/depgraph.hpp"

#include <map>
#include <sstream>

#include "proofnet/errors.hpp"

namespace proofnet {

namespace {

struct Head {
  bool lexical = false;
  std::size_t position = 0;  // premise index when lexical
};

// Head of a subterm: the lexical constant at the bottom of its functor
// spine. Adjunct applications are headed by their argument (non-head
// functions), abstractions by their body; a bare variable yields no head.
Head head_of(const LambdaTerm& t) {
  switch (t.kind()) {
    case LambdaTerm::Kind::Var:
      return {};
    case LambdaTerm::Kind::Lex:
      return {true, t.premise()};
    case LambdaTerm::Kind::App:
      return head_of(t.fn());
    case LambdaTerm::Kind::AdjunctApp:
      return head_of(t.arg());
    case LambdaTerm::Kind::Abs:
      return head_of(t.body());
  }
  return {};
}

void collect(const LambdaTerm& t, DependencyGraph& g,
             std::map<std::size_t, std::string>& words) {
  switch (t.kind()) {
    case LambdaTerm::Kind::Var:
      return;
    case LambdaTerm::Kind::Lex:
      words[t.premise()] = t.word();
      return;
    case LambdaTerm::Kind::App: {
      if (t.label()) {
        Head h = head_of(t.fn());
        Head d = head_of(t.arg());
        // Variable-headed dependents are gaps; they project no edge.
        if (h.lexical && d.lexical) {
          g.edges.emplace(h.position, d.position, t.label()->name());
        }
      }
      collect(t.fn(), g, words);
      collect(t.arg(), g, words);
      return;
    }
    case LambdaTerm::Kind::AdjunctApp: {
      Head h = head_of(t.arg());  // the modified phrase heads the edge
      Head d = head_of(t.fn());
      if (h.lexical && d.lexical) {
        g.edges.emplace(h.position, d.position, t.label()->name());
      }
      collect(t.fn(), g, words);
      collect(t.arg(), g, words);
      return;
    }
    case LambdaTerm::Kind::Abs:
      collect(t.body(), g, words);
      return;
  }
}

}  // namespace

DependencyGraph extract_depgraph(const LambdaTerm& term) {
  Head root = head_of(term);
  if (!root.lexical) {
    throw HeadlessTerm("term has no lexical head at the top level");
  }
  DependencyGraph g;
  g.root = root.position;
  std::map<std::size_t, std::string> words;
  collect(term, g, words);
  for (const auto& [position, word] : words) {
    g.nodes.push_back(position);
    g.words.push_back(word);
  }
  return g;
}

std::string depgraph_to_tsv(const DependencyGraph& g) {
  // position word head label, positions 1-based, 0/ROOT for the root
  std::map<std::size_t, std::pair<std::size_t, std::string>> incoming;
  for (const auto& [head, dependent, label] : g.edges) {
    incoming[dependent] = {head + 1, label};
  }
  std::ostringstream out;
  for (std::size_t k = 0; k < g.nodes.size(); ++k) {
    std::size_t position = g.nodes[k];
    out << position + 1 << '\t' << g.words[k] << '\t';
    if (position == g.root) {
      out << 0 << '\t' << "ROOT";
    } else {
      auto it = incoming.find(position);
      if (it == incoming.end()) {
        out << '_' << '\t' << '_';
      } else {
        out << it->second.first << '\t' << it->second.second;
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace proofnet
