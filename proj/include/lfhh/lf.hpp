#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "lfhh/names.hpp"

namespace lfhh {

// LF expressions at the three levels: kinds, type families, objects.
// Bound variables are de Bruijn indices with display hints on binders; free
// variables are named, so α-equivalence is plain structural equality.
// Families have no λ and no variables at the head: the head of any
// application chain is a family constant.

class LfObject;
class LfFamily;
class LfKind;
struct LfObjectNode;
struct LfFamilyNode;
struct LfKindNode;

class LfObject {
 public:
  static LfObject constant(Name name);
  static LfObject var(Name name);
  static LfObject bound(int index);
  static LfObject app(LfObject fun, LfObject arg);
  // [binder:annot] body, abstracting the free variable `binder`.
  static LfObject lam(const Name& binder, LfFamily annot, LfObject body);
  static LfObject lam_raw(Name hint, LfFamily annot, LfObject body);

  const LfObjectNode& node() const { return *node_; }

 private:
  explicit LfObject(std::shared_ptr<const LfObjectNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const LfObjectNode> node_;
};

class LfFamily {
 public:
  static LfFamily constant(Name name);
  static LfFamily app(LfFamily head, LfObject arg);
  // {binder:domain} body, abstracting the free object variable `binder`.
  static LfFamily pi(const Name& binder, LfFamily domain, LfFamily body);
  static LfFamily pi_raw(Name hint, LfFamily domain, LfFamily body);

  const LfFamilyNode& node() const { return *node_; }

 private:
  explicit LfFamily(std::shared_ptr<const LfFamilyNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const LfFamilyNode> node_;
};

class LfKind {
 public:
  static LfKind type();
  static LfKind pi(const Name& binder, LfFamily domain, LfKind body);
  static LfKind pi_raw(Name hint, LfFamily domain, LfKind body);

  const LfKindNode& node() const { return *node_; }

 private:
  explicit LfKind(std::shared_ptr<const LfKindNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const LfKindNode> node_;
};

struct ObjConst {
  Name name;
};
struct ObjVar {
  Name name;
};
struct ObjBound {
  int index;
};
struct ObjApp {
  LfObject fun;
  LfObject arg;
};
struct ObjLam {
  Name hint;
  LfFamily annot;
  LfObject body;
};
struct LfObjectNode {
  std::variant<ObjConst, ObjVar, ObjBound, ObjApp, ObjLam> v;
};

struct FamConst {
  Name name;
};
struct FamApp {
  LfFamily head;
  LfObject arg;
};
struct FamPi {
  Name hint;
  LfFamily domain;
  LfFamily body;
};
struct LfFamilyNode {
  std::variant<FamConst, FamApp, FamPi> v;
};

struct KindType {};
struct KindPi {
  Name hint;
  LfFamily domain;
  LfKind body;
};
struct LfKindNode {
  std::variant<KindType, KindPi> v;
};

// ---------------------------------------------------------------------------
// α-equivalence (structural, binder hints ignored; annotations participate).

bool alpha_equal(const LfObject& a, const LfObject& b);
bool alpha_equal(const LfFamily& a, const LfFamily& b);
bool alpha_equal(const LfKind& a, const LfKind& b);

inline bool operator==(const LfObject& a, const LfObject& b) { return alpha_equal(a, b); }
inline bool operator!=(const LfObject& a, const LfObject& b) { return !(a == b); }
inline bool operator==(const LfFamily& a, const LfFamily& b) { return alpha_equal(a, b); }
inline bool operator!=(const LfFamily& a, const LfFamily& b) { return !(a == b); }
inline bool operator==(const LfKind& a, const LfKind& b) { return alpha_equal(a, b); }
inline bool operator!=(const LfKind& a, const LfKind& b) { return !(a == b); }

// ---------------------------------------------------------------------------
// Substitution of a free object variable; capture-free by construction.

LfObject subst_object(const LfObject& target, const Name& var, const LfObject& replacement);
LfFamily subst_object(const LfFamily& target, const Name& var, const LfObject& replacement);
LfKind subst_object(const LfKind& target, const Name& var, const LfObject& replacement);

// Binder body manipulation (Bound(0) of the outermost binder).
LfObject open_object(const LfObject& body, const LfObject& replacement);
LfFamily open_family(const LfFamily& body, const LfObject& replacement);
LfKind open_kind(const LfKind& body, const LfObject& replacement);
LfObject close_object(const LfObject& t, const Name& var);
LfFamily close_family(const LfFamily& t, const Name& var);
LfKind close_kind(const LfKind& t, const Name& var);

NameSet lf_free_vars(const LfObject& t);
NameSet lf_free_vars(const LfFamily& t);

// β-normalization. Families normalize their embedded objects; there is no
// family-level β. η is handled at comparison time, not here.
LfObject lf_normalize(const LfObject& t);
LfFamily lf_normalize(const LfFamily& t);
LfKind lf_normalize(const LfKind& t);

// β(η)-convertibility after normalization; η compares a λ against a neutral
// term by expansion at the mismatch.
bool lf_equal_modulo(const LfObject& a, const LfObject& b, bool eta);
bool lf_equal_modulo(const LfFamily& a, const LfFamily& b, bool eta);
bool lf_equal_modulo(const LfKind& a, const LfKind& b, bool eta);

// Object-level node count: leaves 1, App 1 + |fun| + |arg|, Lam 1 + |body|
// (annotations excluded). This is the size metric of the enumeration tools.
int object_node_count(const LfObject& t);

// ---------------------------------------------------------------------------
// Signatures and contexts

struct LfDecl {
  Name name;
  // LfKind: family-level declaration; LfFamily: object-level declaration.
  std::variant<LfKind, LfFamily> classifier;

  bool is_family() const { return std::holds_alternative<LfKind>(classifier); }
  const LfKind& kind() const { return std::get<LfKind>(classifier); }
  const LfFamily& type() const { return std::get<LfFamily>(classifier); }
};

class LfSignature {
 public:
  LfSignature() = default;
  explicit LfSignature(std::vector<LfDecl> decls) : decls_(std::move(decls)) {}

  const std::vector<LfDecl>& decls() const { return decls_; }
  void push(LfDecl d) { decls_.push_back(std::move(d)); }
  const LfDecl* lookup(const Name& name) const;
  bool empty() const { return decls_.empty(); }

 private:
  std::vector<LfDecl> decls_;
};

struct LfContext {
  std::vector<std::pair<Name, LfFamily>> bindings;

  const LfFamily* lookup(const Name& name) const;
  LfContext extended(Name name, LfFamily type) const;
  NameSet names() const;
};

}  // namespace lfhh
