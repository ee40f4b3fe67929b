#include "proofnet/search.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "proofnet/errors.hpp"

namespace proofnet {

std::uint64_t structure_count(const ProofFrame& frame) {
  std::uint64_t total = 1;
  const std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
  for (const AtomChains& chains : partition_atoms(frame)) {
    std::uint64_t f = 1;
    for (std::uint64_t k = 2; k <= chains.negatives.size(); ++k) {
      if (f > cap / k) return cap;
      f *= k;
    }
    if (f != 0 && total > cap / f) return cap;
    total *= f;
  }
  return total;
}

StructureEnumerator::StructureEnumerator(const ProofFrame& frame, SearchBudget budget)
    : frame_(frame), budget_(budget) {
  if (!count_invariance(frame).ok) {
    throw InvarianceViolated("count invariance does not hold; nothing to enumerate");
  }
  std::vector<AtomChains> partition = partition_atoms(frame);
  for (AtomChains& chains : partition) {
    if (chains.negatives.empty()) continue;
    if (chains.negatives.size() > budget_.max_atoms_per_type) {
      throw Exhausted("atom '" + chains.atom.token() + "' has " +
                      std::to_string(chains.negatives.size()) +
                      " occurrences per polarity, over the cap of " +
                      std::to_string(budget_.max_atoms_per_type));
    }
    chains_.push_back(std::move(chains));
  }
  perms_.resize(chains_.size());
  for (std::size_t k = 0; k < chains_.size(); ++k) {
    perms_[k].resize(chains_[k].negatives.size());
    std::iota(perms_[k].begin(), perms_[k].end(), 0);
  }
}

bool StructureEnumerator::advance() {
  // Odometer over per-atom permutations, last atom fastest, each digit
  // running in lexicographic order.
  for (std::size_t k = perms_.size(); k-- > 0;) {
    if (std::next_permutation(perms_[k].begin(), perms_[k].end())) return true;
    // wrapped back to identity, carry on to the next atom
  }
  return false;
}

std::optional<ProofStructure> StructureEnumerator::next() {
  if (done_) return std::nullopt;
  if (yielded_ >= budget_.max_structures) {
    throw Exhausted("structure cap of " + std::to_string(budget_.max_structures) +
                    " hit with structures remaining");
  }
  ProofStructure s{frame_, {}};
  for (std::size_t k = 0; k < chains_.size(); ++k) {
    const AtomChains& chains = chains_[k];
    for (std::size_t i = 0; i < perms_[k].size(); ++i) {
      s.links.emplace(chains.negatives[i], chains.positives[perms_[k][i]]);
    }
  }
  ++yielded_;
  if (!advance()) done_ = true;
  return s;
}

std::optional<std::pair<ProofStructure, LambdaTerm>> NetEnumerator::next() {
  while (auto s = inner_.next()) {
    auto [verdict, term] = verify_and_extract(*s);
    if (verdict.valid) {
      return std::make_pair(std::move(*s), std::move(*term));
    }
  }
  return std::nullopt;
}

Derivability derivable(const ProofFrame& frame, SearchBudget budget) {
  if (!count_invariance(frame).ok) return Derivability::No;
  try {
    NetEnumerator nets(frame, budget);
    if (nets.next().has_value()) return Derivability::Yes;
    return Derivability::No;
  } catch (const Exhausted&) {
    return Derivability::Exhausted;
  }
}

}  // namespace proofnet
