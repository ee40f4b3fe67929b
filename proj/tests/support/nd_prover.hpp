#ifndef TESTS_SUPPORT_ND_PROVER_HPP
#define TESTS_SUPPORT_ND_PROVER_HPP

#include <set>
#include <utility>

#include "proofnet/frame.hpp"

namespace oracle {

using LinkSet = std::set<std::pair<std::size_t, std::size_t>>;

/// Backward-chaining natural-deduction search over the frame's occurrence
/// trees: implication goals are introduced, atomic goals eliminated against
/// the curried spine of a focused resource, splitting the remaining context
/// among the spine's arguments. Completely independent of the net-traversal
/// path; used only as a test oracle.
///
/// Returns every derivation's induced axiom-link set (negative, positive),
/// deduplicated. Modal decorations are transparent.
std::set<LinkSet> nd_derivations(const proofnet::ProofFrame& frame);

bool nd_derivable(const proofnet::ProofFrame& frame);

}  // namespace oracle

#endif  // TESTS_SUPPORT_ND_PROVER_HPP
