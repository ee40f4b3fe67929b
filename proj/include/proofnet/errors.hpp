#ifndef PROOFNET_ERRORS_HPP
#define PROOFNET_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace proofnet {

/// Lexical or grammatical error in type/sequent/symbol text. `position` is a
/// 0-based character offset into the offending input when known.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& msg, std::size_t position)
      : std::runtime_error(msg + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Structurally parseable but violates the modality placement discipline.
class WellFormednessError : public std::runtime_error {
 public:
  explicit WellFormednessError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A prefix symbol sequence that does not meet the inductive constructors:
/// arity violations, trailing symbols, empty input. `segment` is the index of
/// the offending premise segment when decoding whole-frame sequences.
class IllFormedSequence : public std::runtime_error {
 public:
  explicit IllFormedSequence(const std::string& msg, std::size_t segment = 0)
      : std::runtime_error(msg), segment_(segment) {}
  std::size_t segment() const { return segment_; }

 private:
  std::size_t segment_;
};

/// Matrix/chain dimension disagreement, or a matrix that is not a permutation.
class ShapeMismatch : public std::runtime_error {
 public:
  explicit ShapeMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

/// A frame atom has no corresponding permutation table.
class MissingAtomTable : public std::runtime_error {
 public:
  explicit MissingAtomTable(const std::string& msg) : std::runtime_error(msg) {}
};

/// Count invariance does not hold where an operation requires it.
class InvarianceViolated : public std::runtime_error {
 public:
  explicit InvarianceViolated(const std::string& msg) : std::runtime_error(msg) {}
};

/// An enumeration budget was hit before the stream could complete.
class Exhausted : public std::runtime_error {
 public:
  explicit Exhausted(const std::string& msg) : std::runtime_error(msg) {}
};

/// A term whose top-level spine bottoms out in a bare variable.
class HeadlessTerm : public std::runtime_error {
 public:
  explicit HeadlessTerm(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace proofnet

#endif  // PROOFNET_ERRORS_HPP
