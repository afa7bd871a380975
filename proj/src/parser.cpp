#include "lfhh/parser.hpp"

#include <cctype>
#include <optional>

#include "lfhh/util.hpp"

namespace lfhh {

namespace {

enum class Tok {
  kIdent,
  kColon,
  kDot,
  kLBrace,
  kRBrace,
  kLBracket,
  kRBracket,
  kLParen,
  kRParen,
  kArrow,   // ->
  kDArrow,  // =>
  kAmp,
  kEnd,
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::kIdent: return "identifier";
    case Tok::kColon: return "':'";
    case Tok::kDot: return "'.'";
    case Tok::kLBrace: return "'{'";
    case Tok::kRBrace: return "'}'";
    case Tok::kLBracket: return "'['";
    case Tok::kRBracket: return "']'";
    case Tok::kLParen: return "'('";
    case Tok::kRParen: return "')'";
    case Tok::kArrow: return "'->'";
    case Tok::kDArrow: return "'=>'";
    case Tok::kAmp: return "'&'";
    case Tok::kEnd: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;

  std::string describe() const {
    return kind == Tok::kIdent ? "'" + text + "'" : tok_name(kind);
  }
};

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '%') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    int l = line;
    int co = col;
    auto push = [&](Tok k, std::string s, size_t n) {
      out.push_back(Token{k, std::move(s), l, co});
      advance(n);
    };
    if (c == ':') {
      push(Tok::kColon, ":", 1);
    } else if (c == '.') {
      push(Tok::kDot, ".", 1);
    } else if (c == '{') {
      push(Tok::kLBrace, "{", 1);
    } else if (c == '}') {
      push(Tok::kRBrace, "}", 1);
    } else if (c == '[') {
      push(Tok::kLBracket, "[", 1);
    } else if (c == ']') {
      push(Tok::kRBracket, "]", 1);
    } else if (c == '(') {
      push(Tok::kLParen, "(", 1);
    } else if (c == ')') {
      push(Tok::kRParen, ")", 1);
    } else if (c == '&') {
      push(Tok::kAmp, "&", 1);
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      push(Tok::kArrow, "->", 2);
    } else if (c == '=' && i + 1 < text.size() && text[i + 1] == '>') {
      push(Tok::kDArrow, "=>", 2);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                                 text[j] == '_' || text[j] == '\'')) {
        ++j;
      }
      push(Tok::kIdent, text.substr(i, j - i), j - i);
    } else {
      throw ParseError(line, col, "a token", std::string("'") + c + "'");
    }
  }
  out.push_back(Token{Tok::kEnd, "", line, col});
  return out;
}

// ---------------------------------------------------------------------------
// LF parsing

struct LfParser {
  std::vector<Token> toks;
  size_t pos = 0;
  LfSignature sig;  // the signature names resolve against
  std::vector<Name> scope;

  const Token& peek() const { return toks[pos]; }

  Token take(Tok kind, const std::string& what) {
    if (peek().kind != kind) throw ParseError(peek().line, peek().column, what, peek().describe());
    return toks[pos++];
  }

  bool at(Tok kind) const { return peek().kind == kind; }

  bool at_ident(const char* text) const {
    return peek().kind == Tok::kIdent && peek().text == text;
  }

  [[noreturn]] void unbound(const Token& t, const std::string& what) {
    throw ParseError(t.line, t.column, what, "undeclared name '" + t.text + "'", true);
  }

  bool in_scope(const Name& n) const {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
      if (*it == n) return true;
    }
    return false;
  }

  LfObject object_ident(const Token& t) {
    if (in_scope(t.text)) return LfObject::var(t.text);
    if (sig.lookup(t.text)) return LfObject::constant(t.text);
    unbound(t, "a declared constant or bound variable");
  }

  LfObject object_atom() {
    if (at(Tok::kLParen)) {
      take(Tok::kLParen, "'('");
      LfObject m = object();
      take(Tok::kRParen, "')'");
      return m;
    }
    Token t = take(Tok::kIdent, "an object expression");
    return object_ident(t);
  }

  bool starts_object_atom() const { return at(Tok::kIdent) || at(Tok::kLParen); }

  LfObject object() {
    if (at(Tok::kLBracket)) {
      take(Tok::kLBracket, "'['");
      Token x = take(Tok::kIdent, "a binder name");
      take(Tok::kColon, "':'");
      LfFamily annot = family();
      take(Tok::kRBracket, "']'");
      scope.push_back(x.text);
      LfObject body = object();
      scope.pop_back();
      return LfObject::lam(x.text, annot, body);
    }
    LfObject m = object_atom();
    while (starts_object_atom()) m = LfObject::app(m, object_atom());
    return m;
  }

  LfFamily family_head(const Token& t) {
    if (in_scope(t.text)) {
      throw ParseError(t.line, t.column, "a family constant",
                       "bound variable '" + t.text + "' (variables cannot head a family)");
    }
    if (t.text == "type") {
      throw ParseError(t.line, t.column, "a type family", "the kind 'type'");
    }
    if (sig.lookup(t.text)) return LfFamily::constant(t.text);
    unbound(t, "a declared family constant");
  }

  LfFamily family() {
    if (at(Tok::kLBrace)) {
      take(Tok::kLBrace, "'{'");
      Token x = take(Tok::kIdent, "a binder name");
      take(Tok::kColon, "':'");
      LfFamily domain = family();
      take(Tok::kRBrace, "'}'");
      scope.push_back(x.text);
      LfFamily body = family();
      scope.pop_back();
      return LfFamily::pi(x.text, domain, body);
    }
    if (at(Tok::kLParen)) {
      take(Tok::kLParen, "'('");
      LfFamily a = family();
      take(Tok::kRParen, "')'");
      while (starts_object_atom()) a = LfFamily::app(a, object_atom());
      return a;
    }
    Token t = take(Tok::kIdent, "a type family");
    LfFamily a = family_head(t);
    while (starts_object_atom()) a = LfFamily::app(a, object_atom());
    return a;
  }

  // A classifier is a kind ({x:A}* type) or a family; decided by the target.
  std::variant<LfKind, LfFamily> classifier() {
    if (at(Tok::kLBrace)) {
      take(Tok::kLBrace, "'{'");
      Token x = take(Tok::kIdent, "a binder name");
      take(Tok::kColon, "':'");
      LfFamily domain = family();
      take(Tok::kRBrace, "'}'");
      scope.push_back(x.text);
      std::variant<LfKind, LfFamily> rest = classifier();
      scope.pop_back();
      if (auto* k = std::get_if<LfKind>(&rest)) {
        return LfKind::pi(x.text, domain, *k);
      }
      return LfFamily::pi(x.text, domain, std::get<LfFamily>(rest));
    }
    if (at_ident("type")) {
      take(Tok::kIdent, "'type'");
      return LfKind::type();
    }
    return family();
  }
};

}  // namespace

SourceSignature parse_signature_source(const std::string& text) {
  SourceSignature out;
  out.text = text;
  LfParser p;
  p.toks = lex(text);
  while (!p.at(Tok::kEnd)) {
    Token name = p.take(Tok::kIdent, "a declaration name");
    p.take(Tok::kColon, "':'");
    std::variant<LfKind, LfFamily> c = p.classifier();
    p.take(Tok::kDot, "'.'");
    LfDecl decl{name.text, std::move(c)};
    p.sig.push(decl);
    out.signature.push(std::move(decl));
    out.decl_locations.emplace_back(name.line, name.column);
  }
  return out;
}

LfSignature parse_signature(const std::string& text) {
  return parse_signature_source(text).signature;
}

std::pair<LfObject, LfFamily> parse_judgment(const std::string& text, const LfSignature& sig) {
  LfParser p;
  p.toks = lex(text);
  p.sig = sig;
  LfObject m = p.object();
  p.take(Tok::kColon, "':'");
  LfFamily a = p.family();
  p.take(Tok::kEnd, "end of judgment");
  return {std::move(m), std::move(a)};
}

LfObject parse_object(const std::string& text, const LfSignature& sig) {
  LfParser p;
  p.toks = lex(text);
  p.sig = sig;
  LfObject m = p.object();
  p.take(Tok::kEnd, "end of expression");
  return m;
}

LfFamily parse_family(const std::string& text, const LfSignature& sig) {
  LfParser p;
  p.toks = lex(text);
  p.sig = sig;
  LfFamily a = p.family();
  p.take(Tok::kEnd, "end of expression");
  return a;
}

// ---------------------------------------------------------------------------
// Clause parsing

namespace {

// Polarity-free parse tree; converted to goal or clause afterwards.
struct ParsedFormula {
  enum class Kind { kAtom, kTrue, kAnd, kImplies, kForall };
  Kind kind = Kind::kTrue;
  std::optional<Atom> atom;
  Name binder;
  std::optional<SimpleType> binder_type;
  std::vector<ParsedFormula> children;
};

struct HHParser {
  std::vector<Token> toks;
  size_t pos = 0;
  const ReflectedSignature* reflected = nullptr;
  std::vector<std::pair<Name, SimpleType>> scope;

  const Token& peek() const { return toks[pos]; }

  Token take(Tok kind, const std::string& what) {
    if (peek().kind != kind) throw ParseError(peek().line, peek().column, what, peek().describe());
    return toks[pos++];
  }

  bool at(Tok kind) const { return peek().kind == kind; }

  bool at_ident(const char* text) const {
    return peek().kind == Tok::kIdent && peek().text == text;
  }

  SimpleType simple_type_atom() {
    if (at(Tok::kLParen)) {
      take(Tok::kLParen, "'('");
      SimpleType t = simple_type();
      take(Tok::kRParen, "')'");
      return t;
    }
    Token t = take(Tok::kIdent, "'tm' or 'ty'");
    if (t.text == "tm") return SimpleType::tm();
    if (t.text == "ty") return SimpleType::ty();
    throw ParseError(t.line, t.column, "'tm' or 'ty'", t.describe());
  }

  SimpleType simple_type() {
    SimpleType t = simple_type_atom();
    if (at(Tok::kArrow)) {
      take(Tok::kArrow, "'->'");
      return SimpleType::arrow(std::move(t), simple_type());
    }
    return t;
  }

  STerm term_ident(const Token& t) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
      if (it->first == t.text) return STerm::var(it->first, it->second);
    }
    if (const ReflectedConstant* c = reflected_lookup(*reflected, t.text)) {
      return STerm::constant(c->name, c->type);
    }
    throw ParseError(t.line, t.column, "a declared constant or bound variable",
                     "undeclared name '" + t.text + "'", true);
  }

  STerm term_atom() {
    if (at(Tok::kLParen)) {
      take(Tok::kLParen, "'('");
      STerm t = term();
      take(Tok::kRParen, "')'");
      return t;
    }
    Token t = take(Tok::kIdent, "a term");
    return term_ident(t);
  }

  bool starts_term_atom() const { return at(Tok::kIdent) || at(Tok::kLParen); }

  STerm term() {
    if (at(Tok::kLBracket)) {
      Token open = take(Tok::kLBracket, "'['");
      Token x = take(Tok::kIdent, "a binder name");
      take(Tok::kColon, "':'");
      SimpleType annot = simple_type();
      take(Tok::kRBracket, "']'");
      scope.emplace_back(x.text, annot);
      STerm body = term();
      scope.pop_back();
      (void)open;
      return STerm::lam(x.text, annot, body);
    }
    STerm t = term_atom();
    while (starts_term_atom()) {
      Token next = peek();
      try {
        t = STerm::app(t, term_atom());
      } catch (const SimpleTypeError& e) {
        throw ParseError(next.line, next.column, "a well-typed application", e.what());
      }
    }
    return t;
  }

  ParsedFormula unit() {
    if (at(Tok::kLParen)) {
      take(Tok::kLParen, "'('");
      ParsedFormula f = formula();
      take(Tok::kRParen, "')'");
      return f;
    }
    Token t = take(Tok::kIdent, "an atom, 'true', or 'forall'");
    if (t.text == "true") {
      ParsedFormula f;
      f.kind = ParsedFormula::Kind::kTrue;
      return f;
    }
    if (t.text == "hastype") {
      STerm subject = term_atom();
      STerm type = term_atom();
      if (!(st_type_of(type) == SimpleType::ty())) {
        throw ParseError(t.line, t.column, "a term of type ty as the second argument",
                         "ill-typed atom");
      }
      ParsedFormula f;
      f.kind = ParsedFormula::Kind::kAtom;
      f.atom = Atom{HastypeAtom{std::move(subject), std::move(type)}};
      return f;
    }
    if (t.text == "istype") {
      STerm type = term_atom();
      if (!(st_type_of(type) == SimpleType::ty())) {
        throw ParseError(t.line, t.column, "a term of type ty", "ill-typed atom");
      }
      ParsedFormula f;
      f.kind = ParsedFormula::Kind::kAtom;
      f.atom = Atom{IstypeAtom{std::move(type)}};
      return f;
    }
    throw ParseError(t.line, t.column, "an atom, 'true', or 'forall'", t.describe());
  }

  ParsedFormula formula() {
    if (at_ident("forall")) {
      take(Tok::kIdent, "'forall'");
      Token x = take(Tok::kIdent, "a binder name");
      take(Tok::kColon, "':'");
      SimpleType t = simple_type();
      take(Tok::kDot, "'.'");
      scope.emplace_back(x.text, t);
      ParsedFormula body = formula();
      scope.pop_back();
      ParsedFormula f;
      f.kind = ParsedFormula::Kind::kForall;
      f.binder = x.text;
      f.binder_type = t;
      f.children.push_back(std::move(body));
      return f;
    }
    ParsedFormula left = unit();
    while (at(Tok::kAmp)) {
      take(Tok::kAmp, "'&'");
      ParsedFormula right = unit();
      ParsedFormula f;
      f.kind = ParsedFormula::Kind::kAnd;
      f.children.push_back(std::move(left));
      f.children.push_back(std::move(right));
      left = std::move(f);
    }
    if (at(Tok::kDArrow)) {
      take(Tok::kDArrow, "'=>'");
      ParsedFormula rhs = formula();
      ParsedFormula f;
      f.kind = ParsedFormula::Kind::kImplies;
      f.children.push_back(std::move(left));
      f.children.push_back(std::move(rhs));
      return f;
    }
    return left;
  }
};

HHGoal formula_to_goal(const ParsedFormula& f, const Token& where);
HHClause formula_to_clause(const ParsedFormula& f, const Token& where);

HHGoal formula_to_goal(const ParsedFormula& f, const Token& where) {
  switch (f.kind) {
    case ParsedFormula::Kind::kAtom: return HHGoal::atom(*f.atom);
    case ParsedFormula::Kind::kTrue: return HHGoal::truth();
    case ParsedFormula::Kind::kAnd:
      return HHGoal::conj(formula_to_goal(f.children[0], where),
                          formula_to_goal(f.children[1], where));
    case ParsedFormula::Kind::kImplies:
      return HHGoal::implies(formula_to_clause(f.children[0], where),
                             formula_to_goal(f.children[1], where));
    case ParsedFormula::Kind::kForall:
      return HHGoal::forall(f.binder, *f.binder_type, formula_to_goal(f.children[0], where));
  }
  throw ParseError(where.line, where.column, "a goal", "unreachable");
}

HHClause formula_to_clause(const ParsedFormula& f, const Token& where) {
  switch (f.kind) {
    case ParsedFormula::Kind::kAtom: return HHClause::atom(*f.atom);
    case ParsedFormula::Kind::kTrue:
      throw ParseError(where.line, where.column, "a program clause",
                       "'true' (not a clause)");
    case ParsedFormula::Kind::kAnd:
      throw ParseError(where.line, where.column, "a program clause",
                       "a conjunction (not a clause)");
    case ParsedFormula::Kind::kImplies:
      return HHClause::implies(formula_to_goal(f.children[0], where),
                               formula_to_clause(f.children[1], where));
    case ParsedFormula::Kind::kForall:
      return HHClause::forall(f.binder, *f.binder_type,
                              formula_to_clause(f.children[0], where));
  }
  throw ParseError(where.line, where.column, "a clause", "unreachable");
}

}  // namespace

HHProgram parse_hh_program(const std::string& text, const ReflectedSignature& reflected) {
  HHParser p;
  p.toks = lex(text);
  p.reflected = &reflected;
  HHProgram out;
  while (!p.at(Tok::kEnd)) {
    Token start = p.peek();
    ParsedFormula f = p.formula();
    p.take(Tok::kDot, "'.'");
    out.clauses.push_back(formula_to_clause(f, start));
  }
  return out;
}

HHClause parse_hh_clause(const std::string& text, const ReflectedSignature& reflected) {
  HHParser p;
  p.toks = lex(text);
  p.reflected = &reflected;
  Token start = p.peek();
  ParsedFormula f = p.formula();
  if (p.at(Tok::kDot)) p.take(Tok::kDot, "'.'");
  p.take(Tok::kEnd, "end of clause");
  return formula_to_clause(f, start);
}

HHGoal parse_hh_goal(const std::string& text, const ReflectedSignature& reflected) {
  HHParser p;
  p.toks = lex(text);
  p.reflected = &reflected;
  Token start = p.peek();
  ParsedFormula f = p.formula();
  if (p.at(Tok::kDot)) p.take(Tok::kDot, "'.'");
  p.take(Tok::kEnd, "end of goal");
  return formula_to_goal(f, start);
}

}  // namespace lfhh
