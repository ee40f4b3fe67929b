#ifndef PROOFNET_VOCAB_HPP
#define PROOFNET_VOCAB_HPP

#include <optional>
#include <set>
#include <string>

namespace proofnet {

enum class LabelKind { Complement, Adjunct };

/// A dependency label. Complement labels decorate head arguments (diamond,
/// term superscripts); adjunct labels decorate non-head functions (box, term
/// subscripts). The two vocabularies are disjoint, so the name determines the
/// kind once a vocabulary is fixed.
class DepLabel {
 public:
  DepLabel(std::string name, LabelKind kind) : name_(std::move(name)), kind_(kind) {}

  const std::string& name() const { return name_; }
  LabelKind kind() const { return kind_; }

  bool operator==(const DepLabel& o) const = default;
  auto operator<=>(const DepLabel& o) const = default;

 private:
  std::string name_;
  LabelKind kind_;
};

/// Label (and optionally atom) vocabularies. Label membership is what decides
/// whether `<l>` / `[l]` tokens are accepted and which kind they carry. Atoms
/// are an open class unless an explicit atom list is configured.
class Vocabulary {
 public:
  /// The labels and atoms of the default grammar.
  static Vocabulary defaults();

  /// Loads a JSON vocabulary `{"complements": [...], "adjuncts": [...],
  /// "atoms": [...]}`. Empty or missing "atoms" leaves the atom class open.
  /// Throws SyntaxError on malformed files or overlapping label sets.
  static Vocabulary from_json_file(const std::string& path);
  static Vocabulary from_json_text(const std::string& text);

  std::optional<LabelKind> kind_of(const std::string& name) const;

  /// Looks `name` up and builds the label; throws WellFormednessError if the
  /// name is unknown or of the wrong kind.
  DepLabel complement(const std::string& name) const;
  DepLabel adjunct(const std::string& name) const;

  bool atom_allowed(const std::string& token) const;
  bool atoms_closed() const { return !atoms_.empty(); }

  const std::set<std::string>& complements() const { return complements_; }
  const std::set<std::string>& adjuncts() const { return adjuncts_; }
  const std::set<std::string>& atoms() const { return atoms_; }

  Vocabulary(std::set<std::string> complements, std::set<std::string> adjuncts,
             std::set<std::string> atoms = {});

 private:
  std::set<std::string> complements_;
  std::set<std::string> adjuncts_;
  std::set<std::string> atoms_;  // empty = open class
};

}  // namespace proofnet

#endif  // PROOFNET_VOCAB_HPP
