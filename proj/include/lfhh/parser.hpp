#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lfhh/erasure.hpp"
#include "lfhh/hh.hpp"
#include "lfhh/lf.hpp"

namespace lfhh {

// Concrete syntax (Twelf-flavored):
//   signature   name : classifier.        one declaration per sentence
//   products    {x : A} B                 kinds end in `type`
//   abstraction [x : A] m
//   application juxtaposition; arguments parenthesized unless atomic
//   comments    % to end of line
// Clause syntax: `forall x : T. F`, `F => G` (right-associative, non-atomic
// premises parenthesized), `&`, `true`, `hastype t T`, `istype T`.

struct ParseError : std::runtime_error {
  int line;
  int column;
  std::string expected;  // what the parser was looking for
  std::string found;
  bool unbound;  // name-resolution failure rather than a syntax error

  ParseError(int l, int c, std::string exp, std::string fnd, bool unb = false)
      : std::runtime_error("parse error at " + std::to_string(l) + ":" + std::to_string(c) +
                           ": expected " + exp + ", found " + fnd),
        line(l),
        column(c),
        expected(std::move(exp)),
        found(std::move(fnd)),
        unbound(unb) {}
};

struct SourceSignature {
  std::string text;
  LfSignature signature;
  std::vector<std::pair<int, int>> decl_locations;  // line/column per declaration
};

SourceSignature parse_signature_source(const std::string& text);
LfSignature parse_signature(const std::string& text);

// `m : A` with names resolved against the signature and binders.
std::pair<LfObject, LfFamily> parse_judgment(const std::string& text, const LfSignature& sig);

// Standalone term/family parsers (closed expressions over the signature).
LfObject parse_object(const std::string& text, const LfSignature& sig);
LfFamily parse_family(const std::string& text, const LfSignature& sig);

// Clause program in canonical syntax; constants typed by the reflected table.
HHProgram parse_hh_program(const std::string& text, const ReflectedSignature& reflected);
HHClause parse_hh_clause(const std::string& text, const ReflectedSignature& reflected);
HHGoal parse_hh_goal(const std::string& text, const ReflectedSignature& reflected);

}  // namespace lfhh
