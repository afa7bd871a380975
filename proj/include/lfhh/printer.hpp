#pragma once

#include <string>

#include "lfhh/hh.hpp"
#include "lfhh/lf.hpp"
#include "lfhh/simple.hpp"

namespace lfhh {

// Canonical concrete syntax. LF follows the Twelf convention: `{x:A} B` for
// dependent products, `[x:A] m` for abstractions, application by
// juxtaposition, `type` for the base kind. Clauses and goals print with
// explicit quantifier types (`forall x : T. ...`), `=>` for implication
// (right-associative, non-atomic premises parenthesized), `&` for
// conjunction, `true` for the empty goal. Binder display names are freshened
// against everything in scope, so printing is deterministic on α-classes.

std::string print_simple_type(const SimpleType& t);
std::string print_sterm(const STerm& t);

std::string print_object(const LfObject& t);
std::string print_family(const LfFamily& t);
std::string print_kind(const LfKind& t);
std::string print_decl(const LfDecl& d);
std::string print_signature(const LfSignature& sig);

std::string print_atom(const Atom& a);
std::string print_goal(const HHGoal& g);
std::string print_clause(const HHClause& c);
// One clause per line, each terminated by '.'.
std::string print_program(const HHProgram& p);

}  // namespace lfhh
