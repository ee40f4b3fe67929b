#include "proofnet/verification.hpp"

#include <cassert>
#include <map>
#include <sstream>

#include "proofnet/errors.hpp"

namespace proofnet {

struct LambdaTerm::Node {
  Kind kind;
  std::string name;                  // Var name | Abs bound name | Lex word
  std::size_t premise = 0;           // Lex
  std::optional<Type> type;          // Lex
  std::optional<DepLabel> label;     // App/Abs complement | AdjunctApp adjunct
  std::vector<LambdaTerm> sub;       // App/AdjunctApp: {fn, arg}; Abs: {body}
};

LambdaTerm LambdaTerm::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->name = std::move(name);
  return LambdaTerm(std::move(n));
}

LambdaTerm LambdaTerm::lex(std::string word, std::size_t premise, Type type) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Lex;
  n->name = std::move(word);
  n->premise = premise;
  n->type = std::move(type);
  return LambdaTerm(std::move(n));
}

LambdaTerm LambdaTerm::app(LambdaTerm fn, LambdaTerm arg, std::optional<DepLabel> complement) {
  if (complement && complement->kind() != LabelKind::Complement) {
    throw WellFormednessError("application label '" + complement->name() + "' is not a complement");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::App;
  n->label = std::move(complement);
  n->sub = {std::move(fn), std::move(arg)};
  return LambdaTerm(std::move(n));
}

LambdaTerm LambdaTerm::adjunct_app(LambdaTerm fn, DepLabel adjunct, LambdaTerm arg) {
  if (adjunct.kind() != LabelKind::Adjunct) {
    throw WellFormednessError("adjunct application label '" + adjunct.name() + "' is not an adjunct");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::AdjunctApp;
  n->label = std::move(adjunct);
  n->sub = {std::move(fn), std::move(arg)};
  return LambdaTerm(std::move(n));
}

LambdaTerm LambdaTerm::abs(std::string var, std::optional<DepLabel> complement, LambdaTerm body) {
  if (complement && complement->kind() != LabelKind::Complement) {
    throw WellFormednessError("binder label '" + complement->name() + "' is not a complement");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Abs;
  n->name = std::move(var);
  n->label = std::move(complement);
  n->sub = {std::move(body)};
  return LambdaTerm(std::move(n));
}

LambdaTerm::Kind LambdaTerm::kind() const { return node_->kind; }
const std::string& LambdaTerm::name() const { return node_->name; }
const std::string& LambdaTerm::word() const { return node_->name; }
std::size_t LambdaTerm::premise() const { return node_->premise; }
const Type& LambdaTerm::lex_type() const { return *node_->type; }
const LambdaTerm& LambdaTerm::fn() const { return node_->sub[0]; }
const LambdaTerm& LambdaTerm::arg() const { return node_->sub[1]; }
const LambdaTerm& LambdaTerm::body() const { return node_->sub[0]; }
const std::optional<DepLabel>& LambdaTerm::label() const { return node_->label; }

std::string failure_name(NetFailure f) {
  switch (f) {
    case NetFailure::Cyclic:
      return "cyclic";
    case NetFailure::Disconnected:
      return "disconnected";
    case NetFailure::ScopeViolation:
      return "scope-violation";
  }
  return "";
}

// --- net traversal ------------------------------------------------------------

namespace {

enum class Visit { Unvisited, InProgress, Done };

struct TraversalFailure {
  NetVerdict verdict;
};

struct Binder {
  std::string name;
  bool open = false;
  bool used = false;
};

/// Walks the structure from the goal. Negative nodes are read (axiom link at
/// atoms, abstraction at implications); positive nodes are unfolded upward
/// along their spine until a premise root (lexical constant) or the positive
/// child of a negative implication (bound variable).
class Traversal {
 public:
  explicit Traversal(const ProofStructure& s) : frame_(s.frame) {
    states_.assign(frame_.nodes.size(), Visit::Unvisited);
    for (const auto& [neg, pos] : s.links) {
      link_of_negative_[neg] = pos;
    }
  }

  std::pair<NetVerdict, std::optional<LambdaTerm>> run() {
    LambdaTerm term = LambdaTerm::var("");
    try {
      term = read_negative(frame_.goal);
    } catch (const TraversalFailure& f) {
      return {f.verdict, std::nullopt};
    }
    std::set<NodeId> unvisited;
    for (NodeId id = 0; id < states_.size(); ++id) {
      if (states_[id] != Visit::Done) unvisited.insert(id);
    }
    if (!unvisited.empty()) {
      NetVerdict v;
      v.valid = false;
      v.failure = NetFailure::Disconnected;
      v.nodes = std::move(unvisited);
      return {v, std::nullopt};
    }
    return {NetVerdict::ok(), term};
  }

 private:
  const ProofFrame& frame_;
  std::vector<Visit> states_;
  std::map<std::size_t, std::size_t> link_of_negative_;  // atom index -> atom index
  std::map<NodeId, Binder> binders_;                     // negative impl node -> binder
  int fresh_ = 0;

  [[noreturn]] void fail_cyclic(NodeId at) {
    NetVerdict v;
    v.valid = false;
    v.failure = NetFailure::Cyclic;
    v.nodes = {at};
    throw TraversalFailure{v};
  }

  [[noreturn]] void fail_scope(NodeId binder_node, NodeId use,
                               std::optional<std::pair<std::size_t, std::size_t>> link) {
    NetVerdict v;
    v.valid = false;
    v.failure = NetFailure::ScopeViolation;
    v.nodes = {binder_node, use};
    v.link = link;
    throw TraversalFailure{v};
  }

  void enter(NodeId id) {
    if (states_[id] != Visit::Unvisited) fail_cyclic(id);
    states_[id] = Visit::InProgress;
  }

  LambdaTerm read_negative(NodeId id) {
    const FrameNode& n = frame_.nodes[id];
    assert(n.polarity == Polarity::Negative);
    enter(id);
    LambdaTerm term = LambdaTerm::var("");
    if (n.is_atom()) {
      std::size_t neg_index = *n.atom_index;
      std::size_t pos_index = link_of_negative_.at(neg_index);
      auto link = std::make_pair(neg_index, pos_index);
      term = unfold_positive(frame_.atom_index[pos_index], link);
    } else {
      Binder& binder = binders_[id];
      binder.name = "x" + std::to_string(fresh_++);
      binder.open = true;
      std::optional<DepLabel> var_label;
      if (n.content.tag == FrameSymbol::Tag::DiamondImpl) {
        var_label = DepLabel(n.content.label, LabelKind::Complement);
      }
      LambdaTerm body = read_negative(n.children[1]);
      binder.open = false;
      term = LambdaTerm::abs(binder.name, std::move(var_label), std::move(body));
    }
    states_[id] = Visit::Done;
    return term;
  }

  LambdaTerm unfold_positive(NodeId id, std::optional<std::pair<std::size_t, std::size_t>> via) {
    const FrameNode& n = frame_.nodes[id];
    assert(n.polarity == Polarity::Positive);
    enter(id);
    LambdaTerm term = LambdaTerm::var("");
    if (!n.parent.has_value()) {
      // Premise root: the spine bottoms out at a lexical constant.
      assert(n.premise != kGoalPremise);
      term = LambdaTerm::lex(frame_.premises[n.premise].first, n.premise,
                             premise_type(frame_, n.premise));
    } else {
      const FrameNode& parent = frame_.nodes[*n.parent];
      if (parent.polarity == Polarity::Positive) {
        // Result child of a positive implication: one application step.
        assert(parent.children[1] == id);
        LambdaTerm fn = unfold_positive(parent.id, std::nullopt);
        LambdaTerm arg = read_negative(parent.children[0]);
        switch (parent.content.tag) {
          case FrameSymbol::Tag::DiamondImpl:
            term = LambdaTerm::app(std::move(fn), std::move(arg),
                                   DepLabel(parent.content.label, LabelKind::Complement));
            break;
          case FrameSymbol::Tag::BoxImpl:
            term = LambdaTerm::adjunct_app(
                std::move(fn), DepLabel(parent.content.label, LabelKind::Adjunct), std::move(arg));
            break;
          default:
            term = LambdaTerm::app(std::move(fn), std::move(arg), std::nullopt);
        }
      } else {
        // Positive child of a negative implication: a bound variable. When
        // the hypothesis is functional, its own children are consumed by the
        // surrounding eta-long spine, not here.
        assert(parent.children[0] == id);
        auto it = binders_.find(parent.id);
        if (it == binders_.end() || !it->second.open) {
          fail_scope(parent.id, id, via);
        }
        it->second.used = true;
        term = LambdaTerm::var(it->second.name);
      }
    }
    states_[id] = Visit::Done;
    return term;
  }
};

}  // namespace

std::pair<NetVerdict, std::optional<LambdaTerm>> verify_and_extract(
    const ProofStructure& structure) {
  std::string why;
  if (!validate_structure(structure.frame, structure.links, &why)) {
    throw ShapeMismatch("verify_and_extract requires a perfect matching: " + why);
  }
  return Traversal(structure).run();
}

bool is_proof_net(const ProofStructure& structure) {
  return verify_and_extract(structure).first.valid;
}

// --- printing -----------------------------------------------------------------

namespace {

std::string lex_repr(const LambdaTerm& t, bool with_types) {
  if (with_types) return t.word() + "::" + print_type(t.lex_type());
  return t.word();
}

std::string print_rec(const LambdaTerm& t, bool with_types);

// Arguments and adjunct functors print inside parentheses so the decoration
// has something to attach to; variables stay bare.
std::string parenthesized(const LambdaTerm& t, bool with_types) {
  switch (t.kind()) {
    case LambdaTerm::Kind::App:
    case LambdaTerm::Kind::AdjunctApp:
      return print_rec(t, with_types);  // already (...)
    default:
      return "(" + print_rec(t, with_types) + ")";
  }
}

std::string print_rec(const LambdaTerm& t, bool with_types) {
  switch (t.kind()) {
    case LambdaTerm::Kind::Var:
      return t.name();
    case LambdaTerm::Kind::Lex:
      return lex_repr(t, with_types);
    case LambdaTerm::Kind::Abs: {
      std::string head = "λ" + t.name();
      if (t.label()) head += "^" + t.label()->name();
      return head + "." + print_rec(t.body(), with_types);
    }
    case LambdaTerm::Kind::App: {
      std::string fn = print_rec(t.fn(), with_types);
      std::string arg;
      if (t.arg().is(LambdaTerm::Kind::Var)) {
        arg = t.arg().name();  // the binder already displays the label
      } else if (t.label()) {
        arg = parenthesized(t.arg(), with_types) + "^" + t.label()->name();
      } else if (t.arg().is(LambdaTerm::Kind::Lex)) {
        arg = lex_repr(t.arg(), with_types);
      } else {
        arg = parenthesized(t.arg(), with_types);
      }
      return "(" + fn + " " + arg + ")";
    }
    case LambdaTerm::Kind::AdjunctApp: {
      std::string fn = parenthesized(t.fn(), with_types) + "_" + t.label()->name();
      std::string arg;
      if (t.arg().is(LambdaTerm::Kind::Var)) {
        arg = t.arg().name();
      } else if (t.arg().is(LambdaTerm::Kind::Lex)) {
        arg = lex_repr(t.arg(), with_types);
      } else {
        arg = parenthesized(t.arg(), with_types);
      }
      return "(" + fn + " " + arg + ")";
    }
  }
  return "";
}

}  // namespace

std::string print_term(const LambdaTerm& t, bool with_types) { return print_rec(t, with_types); }

// --- term predicates ----------------------------------------------------------

namespace {

bool alpha_rec(const LambdaTerm& a, const LambdaTerm& b,
               std::map<std::string, int>& env_a, std::map<std::string, int>& env_b, int& depth) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case LambdaTerm::Kind::Var: {
      auto ia = env_a.find(a.name());
      auto ib = env_b.find(b.name());
      if (ia == env_a.end() || ib == env_b.end()) {
        return ia == env_a.end() && ib == env_b.end() && a.name() == b.name();
      }
      return ia->second == ib->second;
    }
    case LambdaTerm::Kind::Lex:
      return a.word() == b.word() && a.premise() == b.premise();
    case LambdaTerm::Kind::App:
    case LambdaTerm::Kind::AdjunctApp:
      return a.label() == b.label() && alpha_rec(a.fn(), b.fn(), env_a, env_b, depth) &&
             alpha_rec(a.arg(), b.arg(), env_a, env_b, depth);
    case LambdaTerm::Kind::Abs: {
      if (a.label() != b.label()) return false;
      int mark = depth++;
      auto old_a = env_a.find(a.name()) != env_a.end()
                       ? std::optional<int>(env_a[a.name()])
                       : std::nullopt;
      auto old_b = env_b.find(b.name()) != env_b.end()
                       ? std::optional<int>(env_b[b.name()])
                       : std::nullopt;
      env_a[a.name()] = mark;
      env_b[b.name()] = mark;
      bool ok = alpha_rec(a.body(), b.body(), env_a, env_b, depth);
      if (old_a) env_a[a.name()] = *old_a; else env_a.erase(a.name());
      if (old_b) env_b[b.name()] = *old_b; else env_b.erase(b.name());
      return ok;
    }
  }
  return false;
}

void count_uses(const LambdaTerm& t, std::map<std::string, int>& vars,
                std::map<std::size_t, int>& lexes) {
  switch (t.kind()) {
    case LambdaTerm::Kind::Var:
      ++vars[t.name()];
      return;
    case LambdaTerm::Kind::Lex:
      ++lexes[t.premise()];
      return;
    case LambdaTerm::Kind::App:
    case LambdaTerm::Kind::AdjunctApp:
      count_uses(t.fn(), vars, lexes);
      count_uses(t.arg(), vars, lexes);
      return;
    case LambdaTerm::Kind::Abs:
      count_uses(t.body(), vars, lexes);
      return;
  }
}

bool linear_rec(const LambdaTerm& t) {
  if (t.is(LambdaTerm::Kind::Abs)) {
    std::map<std::string, int> vars;
    std::map<std::size_t, int> lexes;
    count_uses(t.body(), vars, lexes);
    if (vars[t.name()] != 1) return false;
    return linear_rec(t.body());
  }
  if (t.is(LambdaTerm::Kind::App) || t.is(LambdaTerm::Kind::AdjunctApp)) {
    return linear_rec(t.fn()) && linear_rec(t.arg());
  }
  return true;
}

}  // namespace

bool alpha_equal(const LambdaTerm& a, const LambdaTerm& b) {
  std::map<std::string, int> env_a, env_b;
  int depth = 0;
  return alpha_rec(a, b, env_a, env_b, depth);
}

bool is_linear(const LambdaTerm& t) {
  if (!linear_rec(t)) return false;
  std::map<std::string, int> vars;
  std::map<std::size_t, int> lexes;
  count_uses(t, vars, lexes);
  for (const auto& [premise, count] : lexes) {
    if (count != 1) return false;
  }
  return true;
}

// --- bidirectional type check ---------------------------------------------------

namespace {

struct TypeEnv {
  const ProofFrame& frame;
  std::map<std::string, Type> vars;
};

std::optional<Type> synth(const LambdaTerm& t, TypeEnv& env);
bool check(const LambdaTerm& t, const Type& expected, TypeEnv& env);

std::optional<Type> synth(const LambdaTerm& t, TypeEnv& env) {
  switch (t.kind()) {
    case LambdaTerm::Kind::Var: {
      auto it = env.vars.find(t.name());
      if (it == env.vars.end()) return std::nullopt;
      return it->second;
    }
    case LambdaTerm::Kind::Lex:
      return premise_type(env.frame, t.premise());
    case LambdaTerm::Kind::App: {
      auto fn_type = synth(t.fn(), env);
      if (!fn_type || fn_type->kind() != Type::Kind::Arrow) return std::nullopt;
      const Type& arg_slot = fn_type->argument();
      if (arg_slot.kind() == Type::Kind::Diamond) {
        if (!t.label() || t.label()->name() != arg_slot.label().name()) return std::nullopt;
        if (!check(t.arg(), arg_slot.inner(), env)) return std::nullopt;
      } else {
        if (t.label()) return std::nullopt;
        if (!check(t.arg(), arg_slot, env)) return std::nullopt;
      }
      return fn_type->result();
    }
    case LambdaTerm::Kind::AdjunctApp: {
      auto fn_type = synth(t.fn(), env);
      if (!fn_type || fn_type->kind() != Type::Kind::Box) return std::nullopt;
      if (fn_type->label().name() != t.label()->name()) return std::nullopt;
      const Type& arrow = fn_type->inner();
      if (!check(t.arg(), arrow.argument(), env)) return std::nullopt;
      return arrow.result();
    }
    case LambdaTerm::Kind::Abs:
      return std::nullopt;  // abstractions only check against an expected type
  }
  return std::nullopt;
}

bool check(const LambdaTerm& t, const Type& expected, TypeEnv& env) {
  if (t.is(LambdaTerm::Kind::Abs)) {
    const Type* want = &expected;
    if (want->kind() == Type::Kind::Box) want = &want->inner();  // boxes are transparent to binding
    if (want->kind() != Type::Kind::Arrow) return false;
    const Type& arg_slot = want->argument();
    Type bound = arg_slot.kind() == Type::Kind::Diamond ? arg_slot.inner() : arg_slot;
    if (arg_slot.kind() == Type::Kind::Diamond) {
      if (!t.label() || t.label()->name() != arg_slot.label().name()) return false;
    } else if (t.label()) {
      return false;
    }
    auto saved = env.vars.find(t.name()) != env.vars.end()
                     ? std::optional<Type>(env.vars.at(t.name()))
                     : std::nullopt;
    env.vars.insert_or_assign(t.name(), bound);
    bool ok = check(t.body(), want->result(), env);
    if (saved) {
      env.vars.insert_or_assign(t.name(), *saved);
    } else {
      env.vars.erase(t.name());
    }
    return ok;
  }
  auto got = synth(t, env);
  return got && *got == expected;
}

}  // namespace

bool check_term_type(const LambdaTerm& t, const ProofFrame& frame, const Type& expected) {
  TypeEnv env{frame, {}};
  return check(t, expected, env);
}

}  // namespace proofnet
