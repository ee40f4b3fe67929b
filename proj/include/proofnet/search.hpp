#ifndef PROOFNET_SEARCH_HPP
#define PROOFNET_SEARCH_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "proofnet/verification.hpp"

namespace proofnet {

/// Caps for exhaustive enumeration. Hitting a cap raises an explicit
/// Exhausted signal; streams never truncate silently.
struct SearchBudget {
  std::uint64_t max_structures = 1'000'000;
  std::size_t max_atoms_per_type = 8;
};

/// Number of perfect matchings of the frame: the product of n! over the
/// per-atom chain lengths, saturating at uint64 max.
std::uint64_t structure_count(const ProofFrame& frame);

/// Streams every proof structure of a frame in deterministic lexicographic
/// order: atoms sorted by token, each atom's permutation advancing
/// lexicographically, the last atom fastest. Construction throws
/// InvarianceViolated (or Exhausted when a chain exceeds the per-type cap);
/// next() throws Exhausted when the structure cap is passed with structures
/// remaining.
class StructureEnumerator {
 public:
  StructureEnumerator(const ProofFrame& frame, SearchBudget budget);

  std::optional<ProofStructure> next();

  std::uint64_t yielded() const { return yielded_; }

 private:
  ProofFrame frame_;
  SearchBudget budget_;
  std::vector<AtomChains> chains_;                  // non-empty atoms only
  std::vector<std::vector<std::size_t>> perms_;     // per chain: row -> column
  bool done_ = false;
  std::uint64_t yielded_ = 0;

  bool advance();
};

/// Filters the structure stream through net verification; yields only valid
/// nets paired with their terms.
class NetEnumerator {
 public:
  NetEnumerator(const ProofFrame& frame, SearchBudget budget) : inner_(frame, budget) {}

  std::optional<std::pair<ProofStructure, LambdaTerm>> next();

 private:
  StructureEnumerator inner_;
};

enum class Derivability { No, Yes, Exhausted };

/// True iff at least one proof net exists within budget; Exhausted when the
/// cap was hit before any net was found.
Derivability derivable(const ProofFrame& frame, SearchBudget budget);

}  // namespace proofnet

#endif  // PROOFNET_SEARCH_HPP
