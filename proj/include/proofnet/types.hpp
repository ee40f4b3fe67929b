#ifndef PROOFNET_TYPES_HPP
#define PROOFNET_TYPES_HPP

#include <compare>
#include <memory>
#include <string>
#include <vector>

#include "proofnet/vocab.hpp"

namespace proofnet {

/// An atomic type: a base token plus an optional feature (`s_main` is base
/// "s" with feature "main"). Two atoms are equal only if both parts match.
struct Atom {
  std::string base;
  std::string feature;  // empty = no feature

  Atom() = default;
  explicit Atom(std::string b, std::string f = "") : base(std::move(b)), feature(std::move(f)) {}

  /// The surface token: `base` or `base_feature`.
  std::string token() const { return feature.empty() ? base : base + "_" + feature; }

  /// Splits a surface token at its first underscore.
  static Atom from_token(const std::string& token);

  bool operator==(const Atom&) const = default;
  auto operator<=>(const Atom&) const = default;
};

/// Formulas of the implication-only linear type grammar with complement
/// (diamond) and adjunct (box) decorations. Immutable; copies share nodes.
///
/// Construction enforces the placement discipline:
///   - a diamond's inner type is a plain atom or arrow,
///   - a box wraps an arrow whose argument is not diamond-decorated,
///   - no arrow result is diamond-decorated.
/// A diamond is only meaningful as the immediate argument of an arrow;
/// sequent positions (premises, goals, arguments of operations taking "well
/// formed" types) additionally require a non-diamond root, checked by
/// `is_sequent_type`.
class Type {
 public:
  enum class Kind { Atomic, Arrow, Diamond, Box };

  static Type atomic(Atom a);
  static Type arrow(Type argument, Type result);
  static Type diamond(DepLabel label, Type inner);
  static Type box(DepLabel label, Type inner);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }

  const Atom& atom() const;            // Atomic
  const Type& argument() const;        // Arrow
  const Type& result() const;          // Arrow
  const DepLabel& label() const;       // Diamond | Box
  const Type& inner() const;           // Diamond | Box

  bool operator==(const Type& o) const;
  bool operator!=(const Type& o) const { return !(*this == o); }

 private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

bool is_sequent_type(const Type& t);

/// order(atom) = 0; order(a -o r) = max(order(a) + 1, order(r));
/// decorations are transparent.
int order(const Type& t);

/// One token of the fused prefix serialization. Decorations are merged into
/// the implication they accompany, so an implication serializes as exactly
/// one of DiamondImpl / BoxImpl / BareImpl.
struct FrameSymbol {
  enum class Tag { Sos, Sep, Atom, DiamondImpl, BoxImpl, BareImpl };

  Tag tag = Tag::BareImpl;
  proofnet::Atom atom;  // Tag::Atom
  std::string label;    // DiamondImpl | BoxImpl

  static FrameSymbol sos() { return {Tag::Sos, {}, {}}; }
  static FrameSymbol sep() { return {Tag::Sep, {}, {}}; }
  static FrameSymbol atom_sym(proofnet::Atom a) { return {Tag::Atom, std::move(a), {}}; }
  static FrameSymbol diamond_impl(std::string l) { return {Tag::DiamondImpl, {}, std::move(l)}; }
  static FrameSymbol box_impl(std::string l) { return {Tag::BoxImpl, {}, std::move(l)}; }
  static FrameSymbol bare_impl() { return {Tag::BareImpl, {}, {}}; }

  bool is_impl() const {
    return tag == Tag::DiamondImpl || tag == Tag::BoxImpl || tag == Tag::BareImpl;
  }

  /// Surface form: `[SOS]`, `[SEP]`, `<label>`, `[label]`, `-o`, atom token.
  std::string token() const;

  bool operator==(const FrameSymbol&) const = default;
};

/// Parses the concrete type syntax: atoms `np`, `s_main`; right-associative
/// arrows `a -o b`; modal prefixes `<d> a`, `[m](a -o b)`; parentheses.
/// Throws SyntaxError (with offset) or WellFormednessError.
Type parse_type(const std::string& text, const Vocabulary& vocab);

/// Canonical text form; round-trips with parse_type.
std::string print_type(const Type& t);

/// Depth-first-left-first fused prefix serialization.
std::vector<FrameSymbol> to_polish(const Type& t);

/// Inverse of to_polish. Rejects sequences that do not meet the inductive
/// constructors (arity violations, trailing symbols, empty input, embedded
/// SOS/SEP, diamond directly over box) with IllFormedSequence.
Type from_polish(const std::vector<FrameSymbol>& symbols);

/// Token <-> symbol conversion for the flattened text format (one symbol per
/// whitespace-separated token).
FrameSymbol symbol_from_token(const std::string& token, const Vocabulary& vocab);
std::vector<FrameSymbol> symbols_from_text(const std::string& text, const Vocabulary& vocab);
std::string symbols_to_text(const std::vector<FrameSymbol>& symbols);

}  // namespace proofnet

#endif  // PROOFNET_TYPES_HPP
