#include "proofnet/types.hpp"

#include <cassert>
#include <cctype>
#include <sstream>

#include "proofnet/errors.hpp"

namespace proofnet {

struct Type::Node {
  Kind kind;
  Atom atom;                      // Atomic
  std::optional<DepLabel> label;  // Diamond | Box
  std::vector<Type> sub;          // Arrow: {argument, result}; Diamond/Box: {inner}
};

Type Type::atomic(Atom a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atomic;
  n->atom = std::move(a);
  return Type(std::move(n));
}

Type Type::arrow(Type argument, Type result) {
  if (result.kind() == Kind::Diamond) {
    throw WellFormednessError("diamond may not decorate an arrow result");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Arrow;
  n->sub = {std::move(argument), std::move(result)};
  return Type(std::move(n));
}

Type Type::diamond(DepLabel label, Type inner) {
  if (label.kind() != LabelKind::Complement) {
    throw WellFormednessError("diamond label '" + label.name() + "' is not a complement label");
  }
  if (inner.kind() != Kind::Atomic && inner.kind() != Kind::Arrow) {
    throw WellFormednessError("diamond must wrap a plain atom or arrow");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Diamond;
  n->label = std::move(label);
  n->sub = {std::move(inner)};
  return Type(std::move(n));
}

Type Type::box(DepLabel label, Type inner) {
  if (label.kind() != LabelKind::Adjunct) {
    throw WellFormednessError("box label '" + label.name() + "' is not an adjunct label");
  }
  if (inner.kind() != Kind::Arrow) {
    throw WellFormednessError("box must wrap an arrow");
  }
  if (inner.argument().kind() == Kind::Diamond) {
    throw WellFormednessError(
        "box may not wrap an arrow with a diamond-decorated argument");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Box;
  n->label = std::move(label);
  n->sub = {std::move(inner)};
  return Type(std::move(n));
}

Type::Kind Type::kind() const { return node_->kind; }

const Atom& Type::atom() const {
  assert(node_->kind == Kind::Atomic);
  return node_->atom;
}

const Type& Type::argument() const {
  assert(node_->kind == Kind::Arrow);
  return node_->sub[0];
}

const Type& Type::result() const {
  assert(node_->kind == Kind::Arrow);
  return node_->sub[1];
}

const DepLabel& Type::label() const {
  assert(node_->label.has_value());
  return *node_->label;
}

const Type& Type::inner() const {
  assert(node_->kind == Kind::Diamond || node_->kind == Kind::Box);
  return node_->sub[0];
}

bool Type::operator==(const Type& o) const {
  if (node_ == o.node_) return true;
  if (kind() != o.kind()) return false;
  switch (kind()) {
    case Kind::Atomic:
      return atom() == o.atom();
    case Kind::Arrow:
      return argument() == o.argument() && result() == o.result();
    case Kind::Diamond:
    case Kind::Box:
      return label() == o.label() && inner() == o.inner();
  }
  return false;
}

bool is_sequent_type(const Type& t) { return t.kind() != Type::Kind::Diamond; }

int order(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Atomic:
      return 0;
    case Type::Kind::Arrow:
      return std::max(order(t.argument()) + 1, order(t.result()));
    case Type::Kind::Diamond:
    case Type::Kind::Box:
      return order(t.inner());
  }
  return 0;
}

Atom Atom::from_token(const std::string& token) {
  auto underscore = token.find('_');
  if (underscore == std::string::npos) return Atom(token);
  return Atom(token.substr(0, underscore), token.substr(underscore + 1));
}

std::string FrameSymbol::token() const {
  switch (tag) {
    case Tag::Sos:
      return "[SOS]";
    case Tag::Sep:
      return "[SEP]";
    case Tag::Atom:
      return atom.token();
    case Tag::DiamondImpl:
      return "<" + label + ">";
    case Tag::BoxImpl:
      return "[" + label + "]";
    case Tag::BareImpl:
      return "-o";
  }
  return "";
}

// --- concrete type syntax ---------------------------------------------------

namespace {

bool is_token_start(char c) { return std::islower(static_cast<unsigned char>(c)); }

bool is_token_char(char c) {
  return std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) ||
         c == '_';
}

bool valid_atom_token(const std::string& s) {
  if (s.empty() || !is_token_start(s[0])) return false;
  bool seen_underscore = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (!is_token_char(c)) return false;
    if (c == '_') {
      if (i == 0 || i + 1 == s.size()) return false;
      seen_underscore = true;
    } else if (!seen_underscore && std::isdigit(static_cast<unsigned char>(c))) {
      return false;  // digits only in the feature part
    }
  }
  return true;
}

bool valid_label_token(const std::string& s) {
  if (s.empty() || !is_token_start(s[0])) return false;
  for (char c : s) {
    if (!is_token_char(c)) return false;
  }
  return true;
}

struct TypeParser {
  const std::string& text;
  const Vocabulary& vocab;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& msg) { throw SyntaxError(msg, pos); }

  std::string read_word() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && is_token_char(text[pos])) ++pos;
    if (pos == start) fail("expected an identifier");
    return text.substr(start, pos - start);
  }

  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  bool try_consume_arrow() {
    skip_ws();
    if (pos + 1 < text.size() && text[pos] == '-' && text[pos + 1] == 'o') {
      pos += 2;
      return true;
    }
    return false;
  }

  // impl := operand ('-o' impl)?
  Type parse_impl() {
    Type lhs = parse_operand();
    if (try_consume_arrow()) {
      Type rhs = parse_impl();
      return Type::arrow(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  // operand := '<'label'>' operand | '['label']' operand | '(' impl ')' | atom
  Type parse_operand() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    char c = text[pos];
    if (c == '<') {
      ++pos;
      std::size_t label_pos = pos;
      std::string name = read_word();
      expect('>');
      if (!valid_label_token(name)) throw SyntaxError("bad label token '" + name + "'", label_pos);
      DepLabel label = vocab.complement(name);
      Type inner = parse_operand();
      return Type::diamond(std::move(label), std::move(inner));
    }
    if (c == '[') {
      ++pos;
      std::size_t label_pos = pos;
      std::string name = read_word();
      expect(']');
      if (!valid_label_token(name)) throw SyntaxError("bad label token '" + name + "'", label_pos);
      DepLabel label = vocab.adjunct(name);
      Type inner = parse_operand();
      return Type::box(std::move(label), std::move(inner));
    }
    if (c == '(') {
      ++pos;
      Type t = parse_impl();
      expect(')');
      return t;
    }
    std::size_t token_pos = pos;
    std::string token = read_word();
    if (!valid_atom_token(token)) throw SyntaxError("bad atom token '" + token + "'", token_pos);
    if (!vocab.atom_allowed(token)) {
      throw SyntaxError("atom '" + token + "' is not in the configured vocabulary", token_pos);
    }
    return Type::atomic(Atom::from_token(token));
  }
};

}  // namespace

Type parse_type(const std::string& text, const Vocabulary& vocab) {
  TypeParser p{text, vocab};
  Type t = p.parse_impl();
  if (!p.at_end()) p.fail("trailing input after type");
  if (!is_sequent_type(t)) {
    throw WellFormednessError("diamond may only appear as the immediate argument of an arrow");
  }
  return t;
}

namespace {

void print_into(const Type& t, std::ostringstream& out) {
  switch (t.kind()) {
    case Type::Kind::Atomic:
      out << t.atom().token();
      return;
    case Type::Kind::Arrow: {
      const Type& a = t.argument();
      // Arrow arguments that are themselves arrows need parentheses; modal
      // prefixes bind tighter and handle their own grouping.
      if (a.kind() == Type::Kind::Arrow) {
        out << '(';
        print_into(a, out);
        out << ')';
      } else {
        print_into(a, out);
      }
      out << " -o ";
      print_into(t.result(), out);
      return;
    }
    case Type::Kind::Diamond:
    case Type::Kind::Box: {
      const char open = t.kind() == Type::Kind::Diamond ? '<' : '[';
      const char close = t.kind() == Type::Kind::Diamond ? '>' : ']';
      out << open << t.label().name() << close;
      const Type& inner = t.inner();
      if (inner.kind() == Type::Kind::Atomic) {
        out << ' ';
        print_into(inner, out);
      } else {
        out << '(';
        print_into(inner, out);
        out << ')';
      }
      return;
    }
  }
}

}  // namespace

std::string print_type(const Type& t) {
  std::ostringstream out;
  print_into(t, out);
  return out.str();
}

// --- fused prefix serialization ----------------------------------------------

namespace {

void polish_into(const Type& t, std::vector<FrameSymbol>& out) {
  switch (t.kind()) {
    case Type::Kind::Atomic:
      out.push_back(FrameSymbol::atom_sym(t.atom()));
      return;
    case Type::Kind::Arrow: {
      const Type& a = t.argument();
      if (a.kind() == Type::Kind::Diamond) {
        out.push_back(FrameSymbol::diamond_impl(a.label().name()));
        polish_into(a.inner(), out);
      } else {
        out.push_back(FrameSymbol::bare_impl());
        polish_into(a, out);
      }
      polish_into(t.result(), out);
      return;
    }
    case Type::Kind::Box: {
      const Type& arr = t.inner();
      out.push_back(FrameSymbol::box_impl(t.label().name()));
      polish_into(arr.argument(), out);
      polish_into(arr.result(), out);
      return;
    }
    case Type::Kind::Diamond:
      // Unreachable for sequent types; diamonds fuse into their arrow.
      throw WellFormednessError("cannot serialize a bare diamond type");
  }
}

struct PolishParser {
  const std::vector<FrameSymbol>& symbols;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) {
    throw IllFormedSequence(msg + " (symbol " + std::to_string(pos) + ")");
  }

  const FrameSymbol& next() {
    if (pos >= symbols.size()) fail("sequence ends before the type is complete");
    return symbols[pos++];
  }

  Type parse() {
    const FrameSymbol& s = next();
    switch (s.tag) {
      case FrameSymbol::Tag::Atom:
        return Type::atomic(s.atom);
      case FrameSymbol::Tag::BareImpl: {
        Type arg = parse();
        Type res = parse();
        return make_arrow(std::move(arg), std::move(res));
      }
      case FrameSymbol::Tag::DiamondImpl: {
        std::string label = s.label;
        Type inner = parse();
        if (inner.kind() != Type::Kind::Atomic && inner.kind() != Type::Kind::Arrow) {
          fail("diamond '<" + label + ">' wraps a decorated type");
        }
        Type res = parse();
        return make_arrow(Type::diamond(DepLabel(label, LabelKind::Complement), std::move(inner)),
                          std::move(res));
      }
      case FrameSymbol::Tag::BoxImpl: {
        std::string label = s.label;
        Type arg = parse();
        if (arg.kind() == Type::Kind::Diamond) fail("box '[" + label + "]' over a diamond argument");
        Type res = parse();
        return Type::box(DepLabel(label, LabelKind::Adjunct),
                         make_arrow(std::move(arg), std::move(res)));
      }
      case FrameSymbol::Tag::Sos:
      case FrameSymbol::Tag::Sep:
        fail("control symbol inside a type segment");
    }
    fail("unrecognized symbol");
  }

  Type make_arrow(Type arg, Type res) {
    if (res.kind() == Type::Kind::Diamond) fail("diamond in result position");
    return Type::arrow(std::move(arg), std::move(res));
  }
};

}  // namespace

std::vector<FrameSymbol> to_polish(const Type& t) {
  std::vector<FrameSymbol> out;
  polish_into(t, out);
  return out;
}

Type from_polish(const std::vector<FrameSymbol>& symbols) {
  if (symbols.empty()) throw IllFormedSequence("empty symbol sequence");
  PolishParser p{symbols};
  Type t = p.parse();
  if (p.pos != symbols.size()) {
    throw IllFormedSequence("trailing symbols after a complete type (symbol " +
                            std::to_string(p.pos) + ")");
  }
  return t;
}

// --- flattened token format ---------------------------------------------------

FrameSymbol symbol_from_token(const std::string& token, const Vocabulary& vocab) {
  if (token == "[SOS]") return FrameSymbol::sos();
  if (token == "[SEP]") return FrameSymbol::sep();
  if (token == "-o") return FrameSymbol::bare_impl();
  if (token.size() >= 3 && token.front() == '<' && token.back() == '>') {
    std::string name = token.substr(1, token.size() - 2);
    if (!valid_label_token(name)) throw SyntaxError("bad label token '" + token + "'", 0);
    vocab.complement(name);  // membership check
    return FrameSymbol::diamond_impl(name);
  }
  if (token.size() >= 3 && token.front() == '[' && token.back() == ']') {
    std::string name = token.substr(1, token.size() - 2);
    if (!valid_label_token(name)) throw SyntaxError("bad label token '" + token + "'", 0);
    vocab.adjunct(name);
    return FrameSymbol::box_impl(name);
  }
  if (!valid_atom_token(token)) throw SyntaxError("bad symbol token '" + token + "'", 0);
  if (!vocab.atom_allowed(token)) {
    throw SyntaxError("atom '" + token + "' is not in the configured vocabulary", 0);
  }
  return FrameSymbol::atom_sym(Atom::from_token(token));
}

std::vector<FrameSymbol> symbols_from_text(const std::string& text, const Vocabulary& vocab) {
  std::vector<FrameSymbol> out;
  std::istringstream in(text);
  std::string token;
  while (in >> token) out.push_back(symbol_from_token(token, vocab));
  return out;
}

std::string symbols_to_text(const std::vector<FrameSymbol>& symbols) {
  std::ostringstream out;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i) out << ' ';
    out << symbols[i].token();
  }
  return out.str();
}

}  // namespace proofnet
