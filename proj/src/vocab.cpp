#include "proofnet/vocab.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "proofnet/errors.hpp"

namespace proofnet {

Vocabulary::Vocabulary(std::set<std::string> complements, std::set<std::string> adjuncts,
                       std::set<std::string> atoms)
    : complements_(std::move(complements)),
      adjuncts_(std::move(adjuncts)),
      atoms_(std::move(atoms)) {
  for (const auto& name : complements_) {
    if (adjuncts_.count(name)) {
      throw WellFormednessError("label '" + name + "' appears in both complement and adjunct sets");
    }
  }
}

Vocabulary Vocabulary::defaults() {
  return Vocabulary(
      {"su", "obj", "predc", "body", "cnj", "vc", "pc", "obcomp", "cmp_body", "rel_body", "ld"},
      {"det", "mod"});
}

std::optional<LabelKind> Vocabulary::kind_of(const std::string& name) const {
  if (complements_.count(name)) return LabelKind::Complement;
  if (adjuncts_.count(name)) return LabelKind::Adjunct;
  return std::nullopt;
}

DepLabel Vocabulary::complement(const std::string& name) const {
  if (!complements_.count(name)) {
    throw WellFormednessError("'" + name + "' is not a complement label");
  }
  return DepLabel(name, LabelKind::Complement);
}

DepLabel Vocabulary::adjunct(const std::string& name) const {
  if (!adjuncts_.count(name)) {
    throw WellFormednessError("'" + name + "' is not an adjunct label");
  }
  return DepLabel(name, LabelKind::Adjunct);
}

bool Vocabulary::atom_allowed(const std::string& token) const {
  return atoms_.empty() || atoms_.count(token) > 0;
}

Vocabulary Vocabulary::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw SyntaxError(std::string("vocabulary JSON: ") + e.what(), 0);
  }
  auto read_set = [&](const char* key) {
    std::set<std::string> out;
    if (j.contains(key)) {
      for (const auto& v : j.at(key)) out.insert(v.get<std::string>());
    }
    return out;
  };
  std::set<std::string> complements = read_set("complements");
  std::set<std::string> adjuncts = read_set("adjuncts");
  if (complements.empty() && adjuncts.empty()) {
    throw SyntaxError("vocabulary JSON defines no labels", 0);
  }
  return Vocabulary(std::move(complements), std::move(adjuncts), read_set("atoms"));
}

Vocabulary Vocabulary::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SyntaxError("cannot open vocabulary file: " + path, 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

}  // namespace proofnet
