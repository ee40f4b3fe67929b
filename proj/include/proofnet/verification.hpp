#ifndef PROOFNET_VERIFICATION_HPP
#define PROOFNET_VERIFICATION_HPP

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "proofnet/linking.hpp"

namespace proofnet {

/// Linear lambda terms with lexical constants and dependency decorations, in
/// beta-normal eta-long form. Complement labels ride on applications and
/// binders (superscripts); adjunct application is a distinguished node so the
/// head/non-head distinction stays pattern-matchable.
class LambdaTerm {
 public:
  enum class Kind { Var, Lex, App, AdjunctApp, Abs };

  static LambdaTerm var(std::string name);
  static LambdaTerm lex(std::string word, std::size_t premise, Type type);
  static LambdaTerm app(LambdaTerm fn, LambdaTerm arg, std::optional<DepLabel> complement);
  static LambdaTerm adjunct_app(LambdaTerm fn, DepLabel adjunct, LambdaTerm arg);
  static LambdaTerm abs(std::string var, std::optional<DepLabel> complement, LambdaTerm body);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }

  const std::string& name() const;       // Var | Abs (bound name)
  const std::string& word() const;       // Lex
  std::size_t premise() const;           // Lex
  const Type& lex_type() const;          // Lex
  const LambdaTerm& fn() const;          // App | AdjunctApp
  const LambdaTerm& arg() const;         // App | AdjunctApp
  const LambdaTerm& body() const;        // Abs
  const std::optional<DepLabel>& label() const;  // App | Abs (complement), AdjunctApp (adjunct)

 private:
  struct Node;
  explicit LambdaTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

enum class NetFailure { Cyclic, Disconnected, ScopeViolation };

/// Verdict of the net traversal. On failure, `nodes` holds the witness node
/// set (the revisited node, the unvisited region, or the binder/use pair) and
/// `link` the offending axiom link when one is implicated.
struct NetVerdict {
  bool valid = false;
  std::optional<NetFailure> failure;
  std::set<NodeId> nodes;
  std::optional<std::pair<std::size_t, std::size_t>> link;

  static NetVerdict ok() { return {true, std::nullopt, {}, std::nullopt}; }
};

std::string failure_name(NetFailure f);

/// Traverses the structure from the goal, deciding proof-net correctness and
/// reading back the term in the same pass. The term is produced only for
/// valid nets and is beta-normal eta-long by construction, with fresh
/// variables x0, x1, ... in traversal order.
std::pair<NetVerdict, std::optional<LambdaTerm>> verify_and_extract(
    const ProofStructure& structure);

bool is_proof_net(const ProofStructure& structure);

/// ASCII-oriented rendering: application `(f (a)^c)`, adjunct application
/// `((f)_m a)`, abstraction `λx^c.body`; bare variables print without parens
/// or superscripts. `with_types` adds `::type` to lexical constants.
std::string print_term(const LambdaTerm& t, bool with_types = false);

/// Alpha-equivalence (bound names ignored; words, premise indices and all
/// labels compared).
bool alpha_equal(const LambdaTerm& a, const LambdaTerm& b);

/// Every lexical constant used exactly once, every bound variable used
/// exactly once inside its body.
bool is_linear(const LambdaTerm& t);

/// Checks the term against `expected` under the frame's premise types.
bool check_term_type(const LambdaTerm& t, const ProofFrame& frame, const Type& expected);

}  // namespace proofnet

#endif  // PROOFNET_VERIFICATION_HPP
