#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "lfhh/names.hpp"

namespace lfhh {

// ---------------------------------------------------------------------------
// Simple types over the two base types `ty` (type expressions) and `tm`
// (object expressions).

struct SimpleTypeNode;

class SimpleType {
 public:
  static SimpleType ty();
  static SimpleType tm();
  static SimpleType arrow(SimpleType dom, SimpleType cod);

  bool is_ty() const;
  bool is_tm() const;
  bool is_arrow() const;
  const SimpleType& dom() const;  // pre: is_arrow()
  const SimpleType& cod() const;  // pre: is_arrow()

  const SimpleTypeNode& node() const { return *node_; }

 private:
  explicit SimpleType(std::shared_ptr<const SimpleTypeNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const SimpleTypeNode> node_;
};

struct TyNode {};
struct TmNode {};
struct ArrowNode {
  SimpleType dom;
  SimpleType cod;
};

struct SimpleTypeNode {
  std::variant<TyNode, TmNode, ArrowNode> v;
};

bool operator==(const SimpleType& a, const SimpleType& b);
inline bool operator!=(const SimpleType& a, const SimpleType& b) { return !(a == b); }

// Arity of a (possibly nested) arrow type and its final codomain.
int arrow_arity(const SimpleType& t);
SimpleType arrow_target(const SimpleType& t);

// ---------------------------------------------------------------------------
// Simply typed terms. Bound variables are canonical de Bruijn indices with a
// display hint retained on the binder; free variables and constants carry
// their simple types, which keeps type reconstruction local. Metavariables
// appear only in prover states.

class STerm;
struct STermNode;

// Raised when a public constructor would build an ill-typed term.
struct SimpleTypeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class STerm {
 public:
  static STerm constant(Name name, SimpleType type);
  static STerm var(Name name, SimpleType type);
  static STerm meta(Name name, SimpleType type);
  static STerm bound(int index);

  // Checked application: fun must have an arrow type whose domain matches arg.
  static STerm app(STerm fun, STerm arg);
  // λbinder:annot. body, abstracting the free variable `binder` in body.
  static STerm lam(const Name& binder, SimpleType annot, STerm body);
  // Body is already de Bruijn-closed for this binder (internal construction).
  static STerm lam_raw(Name hint, SimpleType annot, STerm body);
  // Unchecked application, for internal rewriting only.
  static STerm app_raw(STerm fun, STerm arg);

  const STermNode& node() const { return *node_; }
  const std::shared_ptr<const STermNode>& ptr() const { return node_; }

 private:
  explicit STerm(std::shared_ptr<const STermNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const STermNode> node_;
};

struct StConst {
  Name name;
  SimpleType type;
};
struct StVar {
  Name name;
  SimpleType type;
};
struct StBound {
  int index;
};
struct StMeta {
  Name name;
  SimpleType type;
};
struct StApp {
  STerm fun;
  STerm arg;
};
struct StLam {
  Name hint;
  SimpleType annot;
  STerm body;
};

struct STermNode {
  std::variant<StConst, StVar, StBound, StMeta, StApp, StLam> v;
};

// α-equivalence: structural equality ignoring binder display hints.
// Annotations and carried types participate.
bool alpha_equal(const STerm& a, const STerm& b);
inline bool operator==(const STerm& a, const STerm& b) { return alpha_equal(a, b); }
inline bool operator!=(const STerm& a, const STerm& b) { return !(a == b); }

// Simple type of a locally closed term. Throws SimpleTypeError on malformed
// applications (cannot happen for terms built through checked constructors).
SimpleType st_type_of(const STerm& t);

// Capture-avoiding substitution of a free variable.
STerm st_subst_free(const STerm& t, const Name& var, const STerm& replacement);

// Replace Bound(0) of a binder body with a locally closed term.
STerm st_open(const STerm& body, const STerm& replacement);
// Abstract the free variable `var` as Bound(0); result is a binder body.
STerm st_close(const STerm& t, const Name& var);

// Simultaneous substitution of metavariables.
STerm st_subst_metas(const STerm& t, const std::map<Name, STerm>& values);

NameSet st_free_vars(const STerm& t);
NameSet st_meta_names(const STerm& t);

struct StNormalizeOptions {
  // When set, results are η-long as well as β-normal. Default on: the prover
  // compares terms in η-long form.
  bool eta_long = true;
};

// β(η)-normal form; total on simply typed terms.
STerm st_normalize(const STerm& t, StNormalizeOptions options = {});

// Spine view helpers: t = head applied to args, head not an application.
STerm st_spine_head(const STerm& t);
std::vector<STerm> st_spine_args(const STerm& t);
STerm st_make_spine(STerm head, const std::vector<STerm>& args);

}  // namespace lfhh
