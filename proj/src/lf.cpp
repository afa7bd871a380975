#include "lfhh/lf.hpp"

#include <algorithm>

#include "lfhh/util.hpp"

namespace lfhh {

// ---------------------------------------------------------------------------
// Construction

namespace {

template <class Node, class V>
std::shared_ptr<const Node> mk(V v) {
  return std::make_shared<const Node>(Node{std::move(v)});
}

}  // namespace

LfObject LfObject::constant(Name name) {
  return LfObject(mk<LfObjectNode>(ObjConst{std::move(name)}));
}
LfObject LfObject::var(Name name) { return LfObject(mk<LfObjectNode>(ObjVar{std::move(name)})); }
LfObject LfObject::bound(int index) { return LfObject(mk<LfObjectNode>(ObjBound{index})); }
LfObject LfObject::app(LfObject fun, LfObject arg) {
  return LfObject(mk<LfObjectNode>(ObjApp{std::move(fun), std::move(arg)}));
}
LfObject LfObject::lam_raw(Name hint, LfFamily annot, LfObject body) {
  return LfObject(mk<LfObjectNode>(ObjLam{std::move(hint), std::move(annot), std::move(body)}));
}
LfObject LfObject::lam(const Name& binder, LfFamily annot, LfObject body) {
  return lam_raw(binder, std::move(annot), close_object(body, binder));
}

LfFamily LfFamily::constant(Name name) {
  return LfFamily(mk<LfFamilyNode>(FamConst{std::move(name)}));
}
LfFamily LfFamily::app(LfFamily head, LfObject arg) {
  return LfFamily(mk<LfFamilyNode>(FamApp{std::move(head), std::move(arg)}));
}
LfFamily LfFamily::pi_raw(Name hint, LfFamily domain, LfFamily body) {
  return LfFamily(mk<LfFamilyNode>(FamPi{std::move(hint), std::move(domain), std::move(body)}));
}
LfFamily LfFamily::pi(const Name& binder, LfFamily domain, LfFamily body) {
  return pi_raw(binder, std::move(domain), close_family(body, binder));
}

LfKind LfKind::type() {
  static const LfKind k{LfKind(mk<LfKindNode>(KindType{}))};
  return k;
}
LfKind LfKind::pi_raw(Name hint, LfFamily domain, LfKind body) {
  return LfKind(mk<LfKindNode>(KindPi{std::move(hint), std::move(domain), std::move(body)}));
}
LfKind LfKind::pi(const Name& binder, LfFamily domain, LfKind body) {
  return pi_raw(binder, std::move(domain), close_kind(body, binder));
}

// ---------------------------------------------------------------------------
// α-equivalence

bool alpha_equal(const LfObject& a, const LfObject& b) {
  if (&a.node() == &b.node()) return true;
  return std::visit(
      Overloaded{
          [&](const ObjConst& x) {
            const auto* y = std::get_if<ObjConst>(&b.node().v);
            return y && x.name == y->name;
          },
          [&](const ObjVar& x) {
            const auto* y = std::get_if<ObjVar>(&b.node().v);
            return y && x.name == y->name;
          },
          [&](const ObjBound& x) {
            const auto* y = std::get_if<ObjBound>(&b.node().v);
            return y && x.index == y->index;
          },
          [&](const ObjApp& x) {
            const auto* y = std::get_if<ObjApp>(&b.node().v);
            return y && alpha_equal(x.fun, y->fun) && alpha_equal(x.arg, y->arg);
          },
          [&](const ObjLam& x) {
            const auto* y = std::get_if<ObjLam>(&b.node().v);
            return y && alpha_equal(x.annot, y->annot) && alpha_equal(x.body, y->body);
          },
      },
      a.node().v);
}

bool alpha_equal(const LfFamily& a, const LfFamily& b) {
  if (&a.node() == &b.node()) return true;
  return std::visit(
      Overloaded{
          [&](const FamConst& x) {
            const auto* y = std::get_if<FamConst>(&b.node().v);
            return y && x.name == y->name;
          },
          [&](const FamApp& x) {
            const auto* y = std::get_if<FamApp>(&b.node().v);
            return y && alpha_equal(x.head, y->head) && alpha_equal(x.arg, y->arg);
          },
          [&](const FamPi& x) {
            const auto* y = std::get_if<FamPi>(&b.node().v);
            return y && alpha_equal(x.domain, y->domain) && alpha_equal(x.body, y->body);
          },
      },
      a.node().v);
}

bool alpha_equal(const LfKind& a, const LfKind& b) {
  if (&a.node() == &b.node()) return true;
  return std::visit(
      Overloaded{
          [&](const KindType&) { return std::holds_alternative<KindType>(b.node().v); },
          [&](const KindPi& x) {
            const auto* y = std::get_if<KindPi>(&b.node().v);
            return y && alpha_equal(x.domain, y->domain) && alpha_equal(x.body, y->body);
          },
      },
      a.node().v);
}

// ---------------------------------------------------------------------------
// Bound-variable substitution (shared by open/close at all three levels)

namespace {

LfObject subst_bound_obj(const LfObject& t, int depth, const LfObject& r);
LfFamily subst_bound_fam(const LfFamily& t, int depth, const LfObject& r);
LfKind subst_bound_kind(const LfKind& t, int depth, const LfObject& r);

LfObject subst_bound_obj(const LfObject& t, int depth, const LfObject& r) {
  return std::visit(
      Overloaded{
          [&](const ObjBound& n) { return n.index == depth ? r : t; },
          [&](const ObjApp& n) {
            return LfObject::app(subst_bound_obj(n.fun, depth, r),
                                 subst_bound_obj(n.arg, depth, r));
          },
          [&](const ObjLam& n) {
            return LfObject::lam_raw(n.hint, subst_bound_fam(n.annot, depth, r),
                                     subst_bound_obj(n.body, depth + 1, r));
          },
          [&](const auto&) { return t; },
      },
      t.node().v);
}

LfFamily subst_bound_fam(const LfFamily& t, int depth, const LfObject& r) {
  return std::visit(
      Overloaded{
          [&](const FamConst&) { return t; },
          [&](const FamApp& n) {
            return LfFamily::app(subst_bound_fam(n.head, depth, r),
                                 subst_bound_obj(n.arg, depth, r));
          },
          [&](const FamPi& n) {
            return LfFamily::pi_raw(n.hint, subst_bound_fam(n.domain, depth, r),
                                    subst_bound_fam(n.body, depth + 1, r));
          },
      },
      t.node().v);
}

LfKind subst_bound_kind(const LfKind& t, int depth, const LfObject& r) {
  return std::visit(
      Overloaded{
          [&](const KindType&) { return t; },
          [&](const KindPi& n) {
            return LfKind::pi_raw(n.hint, subst_bound_fam(n.domain, depth, r),
                                  subst_bound_kind(n.body, depth + 1, r));
          },
      },
      t.node().v);
}

LfObject close_obj(const LfObject& t, const Name& var, int depth);
LfFamily close_fam(const LfFamily& t, const Name& var, int depth);
LfKind close_kind_rec(const LfKind& t, const Name& var, int depth);

LfObject close_obj(const LfObject& t, const Name& var, int depth) {
  return std::visit(
      Overloaded{
          [&](const ObjVar& n) { return n.name == var ? LfObject::bound(depth) : t; },
          [&](const ObjApp& n) {
            return LfObject::app(close_obj(n.fun, var, depth), close_obj(n.arg, var, depth));
          },
          [&](const ObjLam& n) {
            return LfObject::lam_raw(n.hint, close_fam(n.annot, var, depth),
                                     close_obj(n.body, var, depth + 1));
          },
          [&](const auto&) { return t; },
      },
      t.node().v);
}

LfFamily close_fam(const LfFamily& t, const Name& var, int depth) {
  return std::visit(
      Overloaded{
          [&](const FamConst&) { return t; },
          [&](const FamApp& n) {
            return LfFamily::app(close_fam(n.head, var, depth), close_obj(n.arg, var, depth));
          },
          [&](const FamPi& n) {
            return LfFamily::pi_raw(n.hint, close_fam(n.domain, var, depth),
                                    close_fam(n.body, var, depth + 1));
          },
      },
      t.node().v);
}

LfKind close_kind_rec(const LfKind& t, const Name& var, int depth) {
  return std::visit(
      Overloaded{
          [&](const KindType&) { return t; },
          [&](const KindPi& n) {
            return LfKind::pi_raw(n.hint, close_fam(n.domain, var, depth),
                                  close_kind_rec(n.body, var, depth + 1));
          },
      },
      t.node().v);
}

}  // namespace

LfObject open_object(const LfObject& body, const LfObject& r) {
  return subst_bound_obj(body, 0, r);
}
LfFamily open_family(const LfFamily& body, const LfObject& r) {
  return subst_bound_fam(body, 0, r);
}
LfKind open_kind(const LfKind& body, const LfObject& r) { return subst_bound_kind(body, 0, r); }

LfObject close_object(const LfObject& t, const Name& var) { return close_obj(t, var, 0); }
LfFamily close_family(const LfFamily& t, const Name& var) { return close_fam(t, var, 0); }
LfKind close_kind(const LfKind& t, const Name& var) { return close_kind_rec(t, var, 0); }

// ---------------------------------------------------------------------------
// Free-variable substitution

LfObject subst_object(const LfObject& target, const Name& var, const LfObject& r) {
  return std::visit(
      Overloaded{
          [&](const ObjVar& n) { return n.name == var ? r : target; },
          [&](const ObjApp& n) {
            return LfObject::app(subst_object(n.fun, var, r), subst_object(n.arg, var, r));
          },
          [&](const ObjLam& n) {
            return LfObject::lam_raw(n.hint, subst_object(n.annot, var, r),
                                     subst_object(n.body, var, r));
          },
          [&](const auto&) { return target; },
      },
      target.node().v);
}

LfFamily subst_object(const LfFamily& target, const Name& var, const LfObject& r) {
  return std::visit(
      Overloaded{
          [&](const FamConst&) { return target; },
          [&](const FamApp& n) {
            return LfFamily::app(subst_object(n.head, var, r), subst_object(n.arg, var, r));
          },
          [&](const FamPi& n) {
            return LfFamily::pi_raw(n.hint, subst_object(n.domain, var, r),
                                    subst_object(n.body, var, r));
          },
      },
      target.node().v);
}

LfKind subst_object(const LfKind& target, const Name& var, const LfObject& r) {
  return std::visit(
      Overloaded{
          [&](const KindType&) { return target; },
          [&](const KindPi& n) {
            return LfKind::pi_raw(n.hint, subst_object(n.domain, var, r),
                                  subst_object(n.body, var, r));
          },
      },
      target.node().v);
}

namespace {

void collect_obj_free(const LfObject& t, NameSet& out) {
  std::visit(
      Overloaded{
          [&](const ObjVar& n) { out.insert(n.name); },
          [&](const ObjApp& n) {
            collect_obj_free(n.fun, out);
            collect_obj_free(n.arg, out);
          },
          [&](const ObjLam& n) {
            for (const auto& name : lf_free_vars(n.annot)) out.insert(name);
            collect_obj_free(n.body, out);
          },
          [&](const auto&) {},
      },
      t.node().v);
}

}  // namespace

NameSet lf_free_vars(const LfObject& t) {
  NameSet out;
  collect_obj_free(t, out);
  return out;
}

NameSet lf_free_vars(const LfFamily& t) {
  NameSet out;
  std::visit(
      Overloaded{
          [&](const FamConst&) {},
          [&](const FamApp& n) {
            for (const auto& x : lf_free_vars(n.head)) out.insert(x);
            for (const auto& x : lf_free_vars(n.arg)) out.insert(x);
          },
          [&](const FamPi& n) {
            for (const auto& x : lf_free_vars(n.domain)) out.insert(x);
            for (const auto& x : lf_free_vars(n.body)) out.insert(x);
          },
      },
      t.node().v);
  return out;
}

// ---------------------------------------------------------------------------
// Normalization and convertibility

namespace {

LfObject obj_whnf(const LfObject& t) {
  LfObject cur = t;
  for (;;) {
    const auto* app = std::get_if<ObjApp>(&cur.node().v);
    if (!app) return cur;
    LfObject fun = obj_whnf(app->fun);
    if (const auto* lam = std::get_if<ObjLam>(&fun.node().v)) {
      cur = open_object(lam->body, app->arg);
    } else {
      return LfObject::app(fun, app->arg);
    }
  }
}

LfObject obj_nf(const LfObject& t, NameSet& used) {
  LfObject w = obj_whnf(t);
  return std::visit(
      Overloaded{
          [&](const ObjLam& n) {
            Name x = fresh_name(n.hint.empty() ? Name("x") : n.hint, used);
            used.insert(x);
            LfObject body = obj_nf(open_object(n.body, LfObject::var(x)), used);
            return LfObject::lam_raw(n.hint, lf_normalize(n.annot),
                                     close_object(body, x));
          },
          [&](const ObjApp& n) {
            return LfObject::app(obj_nf(n.fun, used), obj_nf(n.arg, used));
          },
          [&](const auto&) { return w; },
      },
      w.node().v);
}

}  // namespace

LfObject lf_normalize(const LfObject& t) {
  NameSet used = lf_free_vars(t);
  return obj_nf(t, used);
}

LfFamily lf_normalize(const LfFamily& t) {
  return std::visit(
      Overloaded{
          [&](const FamConst&) { return t; },
          [&](const FamApp& n) {
            return LfFamily::app(lf_normalize(n.head), lf_normalize(n.arg));
          },
          [&](const FamPi& n) {
            return LfFamily::pi_raw(n.hint, lf_normalize(n.domain), lf_normalize(n.body));
          },
      },
      t.node().v);
}

LfKind lf_normalize(const LfKind& t) {
  return std::visit(
      Overloaded{
          [&](const KindType&) { return t; },
          [&](const KindPi& n) {
            return LfKind::pi_raw(n.hint, lf_normalize(n.domain), lf_normalize(n.body));
          },
      },
      t.node().v);
}

namespace {

bool eq_norm_fam(const LfFamily& a, const LfFamily& b, bool eta, NameSet& used);

// Compare β-normal objects; `eta` enables the λ-vs-neutral expansion rule.
bool eq_norm_obj(const LfObject& a, const LfObject& b, bool eta, NameSet& used) {
  const auto* la = std::get_if<ObjLam>(&a.node().v);
  const auto* lb = std::get_if<ObjLam>(&b.node().v);
  if (la && lb) {
    if (!eq_norm_fam(la->annot, lb->annot, eta, used)) return false;
    Name x = fresh_name("x", used);
    used.insert(x);
    return eq_norm_obj(open_object(la->body, LfObject::var(x)),
                       open_object(lb->body, LfObject::var(x)), eta, used);
  }
  if (eta && (la || lb)) {
    // λ vs neutral: compare bodies after applying the neutral side.
    const ObjLam* lam = la ? la : lb;
    const LfObject& neutral = la ? b : a;
    Name x = fresh_name("x", used);
    used.insert(x);
    LfObject lam_body = open_object(lam->body, LfObject::var(x));
    LfObject applied = LfObject::app(neutral, LfObject::var(x));
    return la ? eq_norm_obj(lam_body, applied, eta, used)
              : eq_norm_obj(applied, lam_body, eta, used);
  }
  if (const auto* xa = std::get_if<ObjApp>(&a.node().v)) {
    const auto* xb = std::get_if<ObjApp>(&b.node().v);
    return xb && eq_norm_obj(xa->fun, xb->fun, eta, used) &&
           eq_norm_obj(xa->arg, xb->arg, eta, used);
  }
  return alpha_equal(a, b);
}

bool eq_norm_fam(const LfFamily& a, const LfFamily& b, bool eta, NameSet& used) {
  return std::visit(
      Overloaded{
          [&](const FamConst& x) {
            const auto* y = std::get_if<FamConst>(&b.node().v);
            return y && x.name == y->name;
          },
          [&](const FamApp& x) {
            const auto* y = std::get_if<FamApp>(&b.node().v);
            return y && eq_norm_fam(x.head, y->head, eta, used) &&
                   eq_norm_obj(x.arg, y->arg, eta, used);
          },
          [&](const FamPi& x) {
            const auto* y = std::get_if<FamPi>(&b.node().v);
            if (!y || !eq_norm_fam(x.domain, y->domain, eta, used)) return false;
            Name v = fresh_name("x", used);
            used.insert(v);
            return eq_norm_fam(open_family(x.body, LfObject::var(v)),
                               open_family(y->body, LfObject::var(v)), eta, used);
          },
      },
      a.node().v);
}

}  // namespace

bool lf_equal_modulo(const LfObject& a, const LfObject& b, bool eta) {
  LfObject na = lf_normalize(a);
  LfObject nb = lf_normalize(b);
  NameSet used = lf_free_vars(na);
  for (const auto& x : lf_free_vars(nb)) used.insert(x);
  return eq_norm_obj(na, nb, eta, used);
}

bool lf_equal_modulo(const LfFamily& a, const LfFamily& b, bool eta) {
  LfFamily na = lf_normalize(a);
  LfFamily nb = lf_normalize(b);
  NameSet used = lf_free_vars(na);
  for (const auto& x : lf_free_vars(nb)) used.insert(x);
  return eq_norm_fam(na, nb, eta, used);
}

namespace {

void kind_free_vars(const LfKind& k, NameSet& out) {
  if (const auto* p = std::get_if<KindPi>(&k.node().v)) {
    for (const auto& x : lf_free_vars(p->domain)) out.insert(x);
    kind_free_vars(p->body, out);
  }
}

}  // namespace

bool lf_equal_modulo(const LfKind& a, const LfKind& b, bool eta) {
  const auto* pa = std::get_if<KindPi>(&a.node().v);
  const auto* pb = std::get_if<KindPi>(&b.node().v);
  if (!pa && !pb) return true;
  if (!pa || !pb) return false;
  if (!lf_equal_modulo(pa->domain, pb->domain, eta)) return false;
  NameSet used;
  kind_free_vars(a, used);
  kind_free_vars(b, used);
  Name v = fresh_name("x", used);
  return lf_equal_modulo(open_kind(pa->body, LfObject::var(v)),
                         open_kind(pb->body, LfObject::var(v)), eta);
}

int object_node_count(const LfObject& t) {
  return std::visit(
      Overloaded{
          [&](const ObjApp& n) {
            return 1 + object_node_count(n.fun) + object_node_count(n.arg);
          },
          [&](const ObjLam& n) { return 1 + object_node_count(n.body); },
          [&](const auto&) { return 1; },
      },
      t.node().v);
}

// ---------------------------------------------------------------------------
// Signatures and contexts

const LfDecl* LfSignature::lookup(const Name& name) const {
  for (const LfDecl& d : decls_) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

const LfFamily* LfContext::lookup(const Name& name) const {
  for (auto it = bindings.rbegin(); it != bindings.rend(); ++it) {
    if (it->first == name) return &it->second;
  }
  return nullptr;
}

LfContext LfContext::extended(Name name, LfFamily type) const {
  LfContext out = *this;
  out.bindings.emplace_back(std::move(name), std::move(type));
  return out;
}

NameSet LfContext::names() const {
  NameSet out;
  for (const auto& [n, _] : bindings) out.insert(n);
  return out;
}

}  // namespace lfhh
