#include "lfhh/simple.hpp"

#include <algorithm>

#include "lfhh/util.hpp"

namespace lfhh {

namespace {

std::shared_ptr<const SimpleTypeNode> mk_type(std::variant<TyNode, TmNode, ArrowNode> v) {
  return std::make_shared<const SimpleTypeNode>(SimpleTypeNode{std::move(v)});
}

}  // namespace

SimpleType SimpleType::ty() {
  static const SimpleType t{mk_type(TyNode{})};
  return t;
}

SimpleType SimpleType::tm() {
  static const SimpleType t{mk_type(TmNode{})};
  return t;
}

SimpleType SimpleType::arrow(SimpleType dom, SimpleType cod) {
  return SimpleType(mk_type(ArrowNode{std::move(dom), std::move(cod)}));
}

bool SimpleType::is_ty() const { return std::holds_alternative<TyNode>(node_->v); }
bool SimpleType::is_tm() const { return std::holds_alternative<TmNode>(node_->v); }
bool SimpleType::is_arrow() const { return std::holds_alternative<ArrowNode>(node_->v); }

const SimpleType& SimpleType::dom() const { return std::get<ArrowNode>(node_->v).dom; }
const SimpleType& SimpleType::cod() const { return std::get<ArrowNode>(node_->v).cod; }

bool operator==(const SimpleType& a, const SimpleType& b) {
  if (&a.node() == &b.node()) return true;
  return std::visit(
      Overloaded{
          [&](const TyNode&) { return b.is_ty(); },
          [&](const TmNode&) { return b.is_tm(); },
          [&](const ArrowNode& n) {
            return b.is_arrow() && n.dom == b.dom() && n.cod == b.cod();
          },
      },
      a.node().v);
}

int arrow_arity(const SimpleType& t) {
  int n = 0;
  SimpleType cur = t;
  while (cur.is_arrow()) {
    ++n;
    cur = cur.cod();
  }
  return n;
}

SimpleType arrow_target(const SimpleType& t) {
  SimpleType cur = t;
  while (cur.is_arrow()) cur = cur.cod();
  return cur;
}

// ---------------------------------------------------------------------------
// STerm construction

namespace {

std::shared_ptr<const STermNode> mk_node(
    std::variant<StConst, StVar, StBound, StMeta, StApp, StLam> v) {
  return std::make_shared<const STermNode>(STermNode{std::move(v)});
}

}  // namespace

STerm STerm::constant(Name name, SimpleType type) {
  return STerm(mk_node(StConst{std::move(name), std::move(type)}));
}
STerm STerm::var(Name name, SimpleType type) {
  return STerm(mk_node(StVar{std::move(name), std::move(type)}));
}
STerm STerm::meta(Name name, SimpleType type) {
  return STerm(mk_node(StMeta{std::move(name), std::move(type)}));
}
STerm STerm::bound(int index) { return STerm(mk_node(StBound{index})); }

STerm STerm::app_raw(STerm fun, STerm arg) {
  return STerm(mk_node(StApp{std::move(fun), std::move(arg)}));
}

STerm STerm::lam_raw(Name hint, SimpleType annot, STerm body) {
  return STerm(mk_node(StLam{std::move(hint), std::move(annot), std::move(body)}));
}

STerm STerm::app(STerm fun, STerm arg) {
  SimpleType ft = st_type_of(fun);
  if (!ft.is_arrow()) throw SimpleTypeError("application of a non-function term");
  SimpleType at = st_type_of(arg);
  if (!(ft.dom() == at)) throw SimpleTypeError("application argument type mismatch");
  return app_raw(std::move(fun), std::move(arg));
}

STerm STerm::lam(const Name& binder, SimpleType annot, STerm body) {
  return lam_raw(binder, std::move(annot), st_close(body, binder));
}

// ---------------------------------------------------------------------------
// Traversals

bool alpha_equal(const STerm& a, const STerm& b) {
  if (&a.node() == &b.node()) return true;
  return std::visit(
      Overloaded{
          [&](const StConst& x) {
            const auto* y = std::get_if<StConst>(&b.node().v);
            return y && x.name == y->name && x.type == y->type;
          },
          [&](const StVar& x) {
            const auto* y = std::get_if<StVar>(&b.node().v);
            return y && x.name == y->name && x.type == y->type;
          },
          [&](const StBound& x) {
            const auto* y = std::get_if<StBound>(&b.node().v);
            return y && x.index == y->index;
          },
          [&](const StMeta& x) {
            const auto* y = std::get_if<StMeta>(&b.node().v);
            return y && x.name == y->name && x.type == y->type;
          },
          [&](const StApp& x) {
            const auto* y = std::get_if<StApp>(&b.node().v);
            return y && alpha_equal(x.fun, y->fun) && alpha_equal(x.arg, y->arg);
          },
          [&](const StLam& x) {
            const auto* y = std::get_if<StLam>(&b.node().v);
            return y && x.annot == y->annot && alpha_equal(x.body, y->body);
          },
      },
      a.node().v);
}

namespace {

SimpleType type_of_rec(const STerm& t, std::vector<SimpleType>& binders) {
  return std::visit(
      Overloaded{
          [&](const StConst& n) { return n.type; },
          [&](const StVar& n) { return n.type; },
          [&](const StMeta& n) { return n.type; },
          [&](const StBound& n) -> SimpleType {
            int pos = static_cast<int>(binders.size()) - 1 - n.index;
            if (pos < 0) throw SimpleTypeError("dangling bound variable");
            return binders[static_cast<size_t>(pos)];
          },
          [&](const StApp& n) -> SimpleType {
            SimpleType ft = type_of_rec(n.fun, binders);
            if (!ft.is_arrow()) throw SimpleTypeError("application of a non-function term");
            SimpleType at = type_of_rec(n.arg, binders);
            if (!(ft.dom() == at)) throw SimpleTypeError("application argument type mismatch");
            return ft.cod();
          },
          [&](const StLam& n) -> SimpleType {
            binders.push_back(n.annot);
            SimpleType bt = type_of_rec(n.body, binders);
            binders.pop_back();
            return SimpleType::arrow(n.annot, bt);
          },
      },
      t.node().v);
}

}  // namespace

SimpleType st_type_of(const STerm& t) {
  std::vector<SimpleType> binders;
  return type_of_rec(t, binders);
}

namespace {

// Substitute `replacement` (locally closed) for Bound(depth).
STerm subst_bound(const STerm& t, int depth, const STerm& replacement) {
  return std::visit(
      Overloaded{
          [&](const StBound& n) { return n.index == depth ? replacement : t; },
          [&](const StApp& n) {
            return STerm::app_raw(subst_bound(n.fun, depth, replacement),
                                  subst_bound(n.arg, depth, replacement));
          },
          [&](const StLam& n) {
            return STerm::lam_raw(n.hint, n.annot, subst_bound(n.body, depth + 1, replacement));
          },
          [&](const auto&) { return t; },
      },
      t.node().v);
}

STerm close_rec(const STerm& t, const Name& var, int depth) {
  return std::visit(
      Overloaded{
          [&](const StVar& n) { return n.name == var ? STerm::bound(depth) : t; },
          [&](const StApp& n) {
            return STerm::app_raw(close_rec(n.fun, var, depth), close_rec(n.arg, var, depth));
          },
          [&](const StLam& n) {
            return STerm::lam_raw(n.hint, n.annot, close_rec(n.body, var, depth + 1));
          },
          [&](const auto&) { return t; },
      },
      t.node().v);
}

}  // namespace

STerm st_open(const STerm& body, const STerm& replacement) {
  return subst_bound(body, 0, replacement);
}

STerm st_close(const STerm& t, const Name& var) { return close_rec(t, var, 0); }

STerm st_subst_free(const STerm& t, const Name& var, const STerm& replacement) {
  return std::visit(
      Overloaded{
          [&](const StVar& n) { return n.name == var ? replacement : t; },
          [&](const StApp& n) {
            return STerm::app_raw(st_subst_free(n.fun, var, replacement),
                                  st_subst_free(n.arg, var, replacement));
          },
          [&](const StLam& n) {
            return STerm::lam_raw(n.hint, n.annot, st_subst_free(n.body, var, replacement));
          },
          [&](const auto&) { return t; },
      },
      t.node().v);
}

STerm st_subst_metas(const STerm& t, const std::map<Name, STerm>& values) {
  return std::visit(
      Overloaded{
          [&](const StMeta& n) {
            auto it = values.find(n.name);
            return it == values.end() ? t : it->second;
          },
          [&](const StApp& n) {
            return STerm::app_raw(st_subst_metas(n.fun, values), st_subst_metas(n.arg, values));
          },
          [&](const StLam& n) {
            return STerm::lam_raw(n.hint, n.annot, st_subst_metas(n.body, values));
          },
          [&](const auto&) { return t; },
      },
      t.node().v);
}

namespace {

void collect_free(const STerm& t, NameSet& out) {
  std::visit(
      Overloaded{
          [&](const StVar& n) { out.insert(n.name); },
          [&](const StApp& n) {
            collect_free(n.fun, out);
            collect_free(n.arg, out);
          },
          [&](const StLam& n) { collect_free(n.body, out); },
          [&](const auto&) {},
      },
      t.node().v);
}

void collect_metas(const STerm& t, NameSet& out) {
  std::visit(
      Overloaded{
          [&](const StMeta& n) { out.insert(n.name); },
          [&](const StApp& n) {
            collect_metas(n.fun, out);
            collect_metas(n.arg, out);
          },
          [&](const StLam& n) { collect_metas(n.body, out); },
          [&](const auto&) {},
      },
      t.node().v);
}

}  // namespace

NameSet st_free_vars(const STerm& t) {
  NameSet out;
  collect_free(t, out);
  return out;
}

NameSet st_meta_names(const STerm& t) {
  NameSet out;
  collect_metas(t, out);
  return out;
}

// ---------------------------------------------------------------------------
// Normalization

STerm st_spine_head(const STerm& t) {
  const STerm* cur = &t;
  while (const auto* app = std::get_if<StApp>(&cur->node().v)) cur = &app->fun;
  return *cur;
}

std::vector<STerm> st_spine_args(const STerm& t) {
  std::vector<STerm> rev;
  const STerm* cur = &t;
  while (const auto* app = std::get_if<StApp>(&cur->node().v)) {
    rev.push_back(app->arg);
    cur = &app->fun;
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

STerm st_make_spine(STerm head, const std::vector<STerm>& args) {
  STerm cur = std::move(head);
  for (const STerm& a : args) cur = STerm::app_raw(cur, a);
  return cur;
}

namespace {

// Weak head normal form; input locally closed.
STerm whnf(const STerm& t) {
  STerm head = st_spine_head(t);
  std::vector<STerm> args = st_spine_args(t);
  size_t next = 0;
  while (next < args.size()) {
    if (const auto* lam = std::get_if<StLam>(&head.node().v)) {
      STerm contractum = st_open(lam->body, args[next]);
      ++next;
      std::vector<STerm> inner_rev;
      const STerm* cur = &contractum;
      while (const auto* app = std::get_if<StApp>(&cur->node().v)) {
        inner_rev.push_back(app->arg);
        cur = &app->fun;
      }
      head = *cur;
      args.insert(args.begin() + static_cast<long>(next), inner_rev.rbegin(), inner_rev.rend());
    } else {
      break;
    }
  }
  STerm out = head;
  for (size_t i = next; i < args.size(); ++i) out = STerm::app_raw(out, args[i]);
  return out;
}

STerm beta_nf(const STerm& t, NameSet& used) {
  STerm w = whnf(t);
  if (const auto* lam = std::get_if<StLam>(&w.node().v)) {
    Name x = fresh_name(lam->hint.empty() ? Name("x") : lam->hint, used);
    used.insert(x);
    STerm body = beta_nf(st_open(lam->body, STerm::var(x, lam->annot)), used);
    return STerm::lam_raw(lam->hint, lam->annot, st_close(body, x));
  }
  STerm head = st_spine_head(w);
  std::vector<STerm> nargs;
  for (const STerm& a : st_spine_args(w)) nargs.push_back(beta_nf(a, used));
  return st_make_spine(head, nargs);
}

// η-expansion of a β-normal term at the given type.
STerm eta_expand(const STerm& t, const SimpleType& type, NameSet& used) {
  if (type.is_arrow()) {
    if (const auto* lam = std::get_if<StLam>(&t.node().v)) {
      Name x = fresh_name(lam->hint.empty() ? Name("x") : lam->hint, used);
      used.insert(x);
      STerm body = eta_expand(st_open(lam->body, STerm::var(x, lam->annot)), type.cod(), used);
      return STerm::lam_raw(lam->hint, lam->annot, st_close(body, x));
    }
    Name x = fresh_name("x", used);
    used.insert(x);
    STerm body = eta_expand(STerm::app_raw(t, STerm::var(x, type.dom())), type.cod(), used);
    return STerm::lam_raw(x, type.dom(), st_close(body, x));
  }
  // Base type: expand spine arguments at their domain types.
  STerm head = st_spine_head(t);
  std::vector<STerm> args = st_spine_args(t);
  SimpleType ht = st_type_of(head);
  std::vector<STerm> nargs;
  nargs.reserve(args.size());
  for (const STerm& a : args) {
    nargs.push_back(eta_expand(a, ht.dom(), used));
    ht = ht.cod();
  }
  return st_make_spine(head, nargs);
}

}  // namespace

STerm st_normalize(const STerm& t, StNormalizeOptions options) {
  NameSet used = st_free_vars(t);
  STerm nf = beta_nf(t, used);
  if (options.eta_long) nf = eta_expand(nf, st_type_of(nf), used);
  return nf;
}

}  // namespace lfhh
