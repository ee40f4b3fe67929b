#include "proofnet/json_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "proofnet/errors.hpp"

namespace proofnet {

using nlohmann::json;

namespace {

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw SyntaxError(std::string(what) + ": " + e.what(), 0);
  }
}

std::string dump(const json& j, bool pretty) { return pretty ? j.dump(2) + "\n" : j.dump(); }

json frame_json(const ProofFrame& frame) {
  json premises = json::array();
  for (std::size_t i = 0; i < frame.premises.size(); ++i) {
    premises.push_back(
        {{"word", frame.premises[i].first}, {"type", print_type(premise_type(frame, i))}});
  }
  return {{"goal", print_type(goal_type(frame))}, {"premises", premises}};
}

ProofFrame frame_from(const json& j, const Vocabulary& vocab) {
  if (!j.is_object() || !j.contains("goal") || !j.contains("premises")) {
    throw SyntaxError("frame JSON needs 'goal' and 'premises'", 0);
  }
  Type goal = parse_type(j.at("goal").get<std::string>(), vocab);
  std::vector<std::pair<std::string, Type>> premises;
  for (const auto& p : j.at("premises")) {
    premises.emplace_back(p.at("word").get<std::string>(),
                          parse_type(p.at("type").get<std::string>(), vocab));
  }
  return build_frame(premises, goal);
}

json links_json(const ProofStructure& s) {
  json links = json::array();
  for (const auto& [neg, pos] : s.links) links.push_back({neg, pos});
  return links;
}

}  // namespace

std::string frame_to_json(const ProofFrame& frame, bool pretty) {
  return dump(frame_json(frame), pretty);
}

ProofFrame frame_from_json(const std::string& text, const Vocabulary& vocab) {
  return frame_from(parse_json(text, "frame JSON"), vocab);
}

std::string structure_to_json(const ProofStructure& s, bool pretty) {
  return dump({{"frame", frame_json(s.frame)}, {"links", links_json(s)}}, pretty);
}

ProofStructure structure_from_json(const std::string& text, const Vocabulary& vocab) {
  json j = parse_json(text, "structure JSON");
  if (!j.is_object() || !j.contains("frame") || !j.contains("links")) {
    throw SyntaxError("structure JSON needs 'frame' and 'links'", 0);
  }
  ProofStructure s{frame_from(j.at("frame"), vocab), {}};
  for (const auto& pair : j.at("links")) {
    if (!pair.is_array() || pair.size() != 2) {
      throw SyntaxError("each link must be a [negative, positive] pair", 0);
    }
    s.links.emplace(pair[0].get<std::size_t>(), pair[1].get<std::size_t>());
  }
  std::string why;
  if (!validate_structure(s.frame, s.links, &why)) {
    throw ShapeMismatch("structure JSON does not encode a perfect matching: " + why);
  }
  return s;
}

std::string links_to_json(const ProofStructure& s) {
  return json{{"links", links_json(s)}}.dump();
}

std::string scores_to_json(const std::vector<ScoreMatrix>& scores, const ProofFrame& frame,
                           bool pretty) {
  std::map<Atom, AtomChains> chains;
  for (AtomChains& c : partition_atoms(frame)) chains[c.atom] = std::move(c);
  json out = json::object();
  for (const ScoreMatrix& s : scores) {
    const AtomChains& c = chains.at(s.atom);
    json row_major = json::array();
    for (double v : s.matrix.data()) row_major.push_back(v);
    out[s.atom.token()] = {
        {"negatives", c.negatives}, {"positives", c.positives}, {"scores", row_major}};
  }
  return dump(out, pretty);
}

std::vector<ScoreMatrix> scores_from_json(const std::string& text, const ProofFrame& frame) {
  json j = parse_json(text, "score JSON");
  if (!j.is_object()) throw SyntaxError("score JSON must be an object keyed by atom", 0);
  std::map<std::string, AtomChains> chains;
  for (AtomChains& c : partition_atoms(frame)) chains[c.atom.token()] = std::move(c);
  std::vector<ScoreMatrix> out;
  for (const auto& [token, entry] : j.items()) {
    auto it = chains.find(token);
    if (it == chains.end()) {
      throw MissingAtomTable("score file names atom '" + token + "' absent from the frame");
    }
    const AtomChains& c = it->second;
    std::vector<std::size_t> negatives = entry.at("negatives").get<std::vector<std::size_t>>();
    std::vector<std::size_t> positives = entry.at("positives").get<std::vector<std::size_t>>();
    if (negatives != c.negatives || positives != c.positives) {
      throw ShapeMismatch("score chains for '" + token + "' disagree with the frame");
    }
    const json& raw = entry.at("scores");
    std::size_t rows = c.negatives.size();
    std::size_t cols = c.positives.size();
    Matrix m(rows, cols);
    if (raw.is_array() && !raw.empty() && raw[0].is_array()) {
      if (raw.size() != rows) {
        throw ShapeMismatch("score matrix for '" + token + "' has " + std::to_string(raw.size()) +
                            " rows, expected " + std::to_string(rows));
      }
      for (std::size_t i = 0; i < rows; ++i) {
        if (raw[i].size() != cols) {
          throw ShapeMismatch("score matrix for '" + token + "' row " + std::to_string(i) +
                              " has " + std::to_string(raw[i].size()) + " columns, expected " +
                              std::to_string(cols));
        }
        for (std::size_t k = 0; k < cols; ++k) m.at(i, k) = raw[i][k].get<double>();
      }
    } else {
      if (raw.size() != rows * cols) {
        throw ShapeMismatch("score matrix for '" + token + "' has " + std::to_string(raw.size()) +
                            " entries, expected " + std::to_string(rows * cols));
      }
      for (std::size_t k = 0; k < rows * cols; ++k) m.data()[k] = raw[k].get<double>();
    }
    out.push_back(ScoreMatrix{c.atom, std::move(m)});
  }
  for (const auto& [token, c] : chains) {
    if (!c.negatives.empty() && !j.contains(token)) {
      throw MissingAtomTable("score file lacks atom '" + token + "'");
    }
  }
  return out;
}

namespace {

json term_json(const LambdaTerm& t) {
  switch (t.kind()) {
    case LambdaTerm::Kind::Var:
      return {{"kind", "var"}, {"name", t.name()}};
    case LambdaTerm::Kind::Lex:
      return {{"kind", "lex"},
              {"word", t.word()},
              {"premise", t.premise()},
              {"type", print_type(t.lex_type())}};
    case LambdaTerm::Kind::App: {
      json j{{"kind", "app"}, {"fn", term_json(t.fn())}, {"arg", term_json(t.arg())}};
      j["complement"] = t.label() ? json(t.label()->name()) : json(nullptr);
      return j;
    }
    case LambdaTerm::Kind::AdjunctApp:
      return {{"kind", "adjunct_app"},
              {"adjunct", t.label()->name()},
              {"fn", term_json(t.fn())},
              {"arg", term_json(t.arg())}};
    case LambdaTerm::Kind::Abs: {
      json j{{"kind", "abs"}, {"var", t.name()}, {"body", term_json(t.body())}};
      j["complement"] = t.label() ? json(t.label()->name()) : json(nullptr);
      return j;
    }
  }
  return {};
}

}  // namespace

std::string term_to_json(const LambdaTerm& t, bool pretty) { return dump(term_json(t), pretty); }

std::string depgraph_to_json(const DependencyGraph& g, bool pretty) {
  json nodes = json::array();
  for (std::size_t k = 0; k < g.nodes.size(); ++k) {
    nodes.push_back({{"position", g.nodes[k]}, {"word", g.words[k]}});
  }
  json edges = json::array();
  for (const auto& [head, dependent, label] : g.edges) {
    edges.push_back({{"head", head}, {"dependent", dependent}, {"label", label}});
  }
  return dump({{"root", g.root}, {"nodes", nodes}, {"edges", edges}}, pretty);
}

std::string verdict_to_json(const NetVerdict& v) {
  json j{{"valid", v.valid}};
  if (v.failure) {
    j["failure"] = failure_name(*v.failure);
    j["witness_nodes"] = v.nodes;
    if (v.link) j["witness_link"] = {v.link->first, v.link->second};
  }
  return j.dump();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SyntaxError("cannot open file: " + path, 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SyntaxError("cannot write file: " + path, 0);
  out << content;
}

}  // namespace proofnet
