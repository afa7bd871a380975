#include "lfhh/kernel.hpp"

#include <sstream>

#include "lfhh/printer.hpp"
#include "lfhh/util.hpp"

namespace lfhh {

const char* type_error_kind_name(TypeErrorKind k) {
  switch (k) {
    case TypeErrorKind::kUnboundName: return "unbound-name";
    case TypeErrorKind::kNotAFunction: return "not-a-function";
    case TypeErrorKind::kDomainMismatch: return "domain-mismatch";
    case TypeErrorKind::kKindMismatch: return "kind-mismatch";
    case TypeErrorKind::kIllFormedSignature: return "ill-formed-signature";
  }
  return "unknown";
}

std::string TypeError::render() const {
  std::ostringstream os;
  os << type_error_kind_name(kind) << ": " << message;
  if (expected && got) {
    os << " (expected " << print_family(*expected) << ", got " << print_family(*got) << ")";
  }
  if (!path.empty()) {
    os << " at path [";
    for (size_t i = 0; i < path.size(); ++i) os << (i ? " " : "") << path[i];
    os << "]";
  }
  return os.str();
}

namespace {

struct KernelFailure {
  TypeError error;
};

const LfKind& kind_type_value() {
  static const LfKind k = LfKind::type();
  return k;
}

struct Checker {
  const LfSignature& sig;
  KernelOptions opt;
  std::vector<int> path;

  struct PathGuard {
    Checker& c;
    PathGuard(Checker& checker, int i) : c(checker) { c.path.push_back(i); }
    ~PathGuard() { c.path.pop_back(); }
  };

  [[noreturn]] void fail(TypeErrorKind kind, std::string msg,
                         std::optional<LfFamily> expected = std::nullopt,
                         std::optional<LfFamily> got = std::nullopt) {
    throw KernelFailure{
        TypeError{kind, path, std::move(msg), std::move(expected), std::move(got)}};
  }

  bool conv(const LfFamily& a, const LfFamily& b) const {
    return lf_equal_modulo(a, b, opt.eta_conversion);
  }

  NameSet scope_names(const LfContext& ctx) const {
    NameSet out = ctx.names();
    for (const LfDecl& d : sig.decls()) out.insert(d.name);
    return out;
  }

  Name fresh_var(const LfContext& ctx, const Name& hint, const NameSet& extra) const {
    NameSet used = scope_names(ctx);
    used.insert(extra.begin(), extra.end());
    return fresh_name(hint.empty() ? Name("x") : hint, used);
  }

  // --- kinds ---------------------------------------------------------------

  DerivationTree check_kind(const LfContext& ctx, const LfKind& k) {
    return std::visit(
        Overloaded{
            [&](const KindType&) {
              return DerivationTree{"kind-type", ctx, k, std::nullopt, {}};
            },
            [&](const KindPi& n) {
              DerivationTree dom_tree = [&] {
                PathGuard g(*this, 0);
                auto [dk, tree] = infer_family(ctx, n.domain);
                if (dk != kind_type_value()) {
                  fail(TypeErrorKind::kKindMismatch,
                       "binder domain must be a type, found a higher-kinded family");
                }
                return tree;
              }();
              Name x = fresh_var(ctx, n.hint, lf_free_vars(n.domain));
              LfContext inner = ctx.extended(x, lf_normalize(n.domain));
              DerivationTree body_tree = [&] {
                PathGuard g(*this, 1);
                return check_kind(inner, open_kind(n.body, LfObject::var(x)));
              }();
              return DerivationTree{
                  "kind-pi", ctx, k, std::nullopt, {std::move(dom_tree), std::move(body_tree)}};
            },
        },
        k.node().v);
  }

  // --- families ------------------------------------------------------------

  std::pair<LfKind, DerivationTree> infer_family(const LfContext& ctx, const LfFamily& a) {
    return std::visit(
        Overloaded{
            [&](const FamConst& n) -> std::pair<LfKind, DerivationTree> {
              const LfDecl* d = sig.lookup(n.name);
              if (!d) fail(TypeErrorKind::kUnboundName, "undeclared family constant " + n.name);
              if (!d->is_family()) {
                fail(TypeErrorKind::kUnboundName,
                     n.name + " is an object constant, not a type family");
              }
              LfKind nf = lf_normalize(d->kind());
              return {nf, DerivationTree{"fam-const", ctx, a, nf, {}}};
            },
            [&](const FamApp& n) -> std::pair<LfKind, DerivationTree> {
              auto [hk, head_tree] = [&] {
                PathGuard g(*this, 0);
                return infer_family(ctx, n.head);
              }();
              const auto* pi = std::get_if<KindPi>(&hk.node().v);
              if (!pi) {
                fail(TypeErrorKind::kKindMismatch,
                     "family applied to an argument but its kind is type");
              }
              auto [at, arg_tree] = [&] {
                PathGuard g(*this, 1);
                return infer_object(ctx, n.arg);
              }();
              if (!conv(pi->domain, at)) {
                fail(TypeErrorKind::kKindMismatch, "family index has the wrong type",
                     lf_normalize(pi->domain), at);
              }
              LfKind nf = lf_normalize(open_kind(pi->body, n.arg));
              return {nf, DerivationTree{"fam-app", ctx, a, nf,
                                         {std::move(head_tree), std::move(arg_tree)}}};
            },
            [&](const FamPi& n) -> std::pair<LfKind, DerivationTree> {
              DerivationTree dom_tree = [&] {
                PathGuard g(*this, 0);
                auto [dk, tree] = infer_family(ctx, n.domain);
                if (dk != kind_type_value()) {
                  fail(TypeErrorKind::kKindMismatch,
                       "binder domain must be a type, found a higher-kinded family");
                }
                return tree;
              }();
              Name x = fresh_var(ctx, n.hint, lf_free_vars(n.domain));
              LfContext inner = ctx.extended(x, lf_normalize(n.domain));
              DerivationTree body_tree = [&] {
                PathGuard g(*this, 1);
                auto [bk, tree] = infer_family(inner, open_family(n.body, LfObject::var(x)));
                if (bk != kind_type_value()) {
                  fail(TypeErrorKind::kKindMismatch,
                       "product body must be a type, found a higher-kinded family");
                }
                return tree;
              }();
              return {kind_type_value(),
                      DerivationTree{"fam-pi", ctx, a, kind_type_value(),
                                     {std::move(dom_tree), std::move(body_tree)}}};
            },
        },
        a.node().v);
  }

  // --- objects -------------------------------------------------------------

  std::pair<LfFamily, DerivationTree> infer_object(const LfContext& ctx, const LfObject& m) {
    return std::visit(
        Overloaded{
            [&](const ObjConst& n) -> std::pair<LfFamily, DerivationTree> {
              const LfDecl* d = sig.lookup(n.name);
              if (!d) fail(TypeErrorKind::kUnboundName, "undeclared constant " + n.name);
              if (d->is_family()) {
                fail(TypeErrorKind::kUnboundName,
                     n.name + " is a type family, not an object constant");
              }
              LfFamily nf = lf_normalize(d->type());
              return {nf, DerivationTree{"obj-const", ctx, m, nf, {}}};
            },
            [&](const ObjVar& n) -> std::pair<LfFamily, DerivationTree> {
              const LfFamily* t = ctx.lookup(n.name);
              if (!t) fail(TypeErrorKind::kUnboundName, "unbound variable " + n.name);
              LfFamily nf = lf_normalize(*t);
              return {nf, DerivationTree{"obj-var", ctx, m, nf, {}}};
            },
            [&](const ObjBound&) -> std::pair<LfFamily, DerivationTree> {
              fail(TypeErrorKind::kUnboundName, "dangling bound variable");
            },
            [&](const ObjApp& n) -> std::pair<LfFamily, DerivationTree> {
              auto [ft, fun_tree] = [&] {
                PathGuard g(*this, 0);
                return infer_object(ctx, n.fun);
              }();
              const auto* pi = std::get_if<FamPi>(&ft.node().v);
              if (!pi) {
                fail(TypeErrorKind::kNotAFunction,
                     "applied term has atomic type " + print_family(ft));
              }
              auto [at, arg_tree] = [&] {
                PathGuard g(*this, 1);
                return infer_object(ctx, n.arg);
              }();
              if (!conv(pi->domain, at)) {
                fail(TypeErrorKind::kDomainMismatch, "argument type does not match domain",
                     lf_normalize(pi->domain), at);
              }
              LfFamily nf = lf_normalize(open_family(pi->body, n.arg));
              return {nf, DerivationTree{"obj-app", ctx, m, nf,
                                         {std::move(fun_tree), std::move(arg_tree)}}};
            },
            [&](const ObjLam& n) -> std::pair<LfFamily, DerivationTree> {
              DerivationTree annot_tree = [&] {
                PathGuard g(*this, 0);
                auto [ak, tree] = infer_family(ctx, n.annot);
                if (ak != kind_type_value()) {
                  fail(TypeErrorKind::kKindMismatch,
                       "binder annotation must be a type, found a higher-kinded family");
                }
                return tree;
              }();
              LfFamily annot_nf = lf_normalize(n.annot);
              NameSet extra = lf_free_vars(n.body);
              for (const auto& v : lf_free_vars(n.annot)) extra.insert(v);
              Name x = fresh_var(ctx, n.hint, extra);
              LfContext inner = ctx.extended(x, annot_nf);
              auto [bt, body_tree] = [&] {
                PathGuard g(*this, 1);
                return infer_object(inner, open_object(n.body, LfObject::var(x)));
              }();
              LfFamily nf = LfFamily::pi_raw(n.hint, annot_nf, close_family(bt, x));
              return {nf, DerivationTree{"obj-lam", ctx, m, nf,
                                         {std::move(annot_tree), std::move(body_tree)}}};
            },
        },
        m.node().v);
  }

  DerivationTree check_object_against(const LfContext& ctx, const LfObject& m,
                                      const LfFamily& a) {
    const auto* lam = std::get_if<ObjLam>(&m.node().v);
    if (lam) {
      LfFamily a_nf = lf_normalize(a);
      if (const auto* pi = std::get_if<FamPi>(&a_nf.node().v)) {
        DerivationTree annot_tree = [&] {
          PathGuard g(*this, 0);
          auto [ak, tree] = infer_family(ctx, lam->annot);
          if (ak != kind_type_value()) {
            fail(TypeErrorKind::kKindMismatch,
                 "binder annotation must be a type, found a higher-kinded family");
          }
          if (!conv(lam->annot, pi->domain)) {
            fail(TypeErrorKind::kDomainMismatch, "binder annotation does not match domain",
                 lf_normalize(pi->domain), lf_normalize(lam->annot));
          }
          return tree;
        }();
        NameSet extra = lf_free_vars(m);
        for (const auto& v : lf_free_vars(a_nf)) extra.insert(v);
        Name x = fresh_var(ctx, lam->hint, extra);
        LfContext inner = ctx.extended(x, lf_normalize(pi->domain));
        DerivationTree body_tree = [&] {
          PathGuard g(*this, 1);
          return check_object_against(inner, open_object(lam->body, LfObject::var(x)),
                                      open_family(pi->body, LfObject::var(x)));
        }();
        return DerivationTree{"check-lam", ctx, m, a_nf,
                              {std::move(annot_tree), std::move(body_tree)}};
      }
    }
    auto [inferred, tree] = infer_object(ctx, m);
    if (!conv(inferred, a)) {
      fail(TypeErrorKind::kDomainMismatch, "term does not have the required type",
           lf_normalize(a), inferred);
    }
    return DerivationTree{"check-conv", ctx, m, lf_normalize(a), {std::move(tree)}};
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// Public entry points

CheckResult check_signature(const LfSignature& sig, KernelOptions options) {
  LfSignature prefix;
  LfContext empty;
  DerivationTree chain{"sig-empty", empty, prefix, std::nullopt, {}};
  for (size_t i = 0; i < sig.decls().size(); ++i) {
    const LfDecl& d = sig.decls()[i];
    TypeError wrapped{TypeErrorKind::kIllFormedSignature,
                      {static_cast<int>(i)},
                      "",
                      std::nullopt,
                      std::nullopt};
    if (prefix.lookup(d.name)) {
      wrapped.message = "duplicate declaration of " + d.name;
      return CheckResult{std::nullopt, wrapped, options.conversion_name()};
    }
    try {
      Checker checker{prefix, options, {}};
      DerivationTree classifier_tree =
          d.is_family() ? checker.check_kind(empty, d.kind()) : [&] {
            auto [k, tree] = checker.infer_family(empty, d.type());
            if (k != LfKind::type()) {
              checker.fail(TypeErrorKind::kKindMismatch,
                           "object declaration classifier must have kind type");
            }
            return tree;
          }();
      LfSignature extended = prefix;
      extended.push(d);
      chain = DerivationTree{d.is_family() ? "sig-fam" : "sig-obj",
                             empty,
                             extended,
                             std::nullopt,
                             {std::move(chain), std::move(classifier_tree)}};
      prefix.push(d);
    } catch (const KernelFailure& f) {
      wrapped.message = "declaration " + d.name + ": " + f.error.render();
      wrapped.path.insert(wrapped.path.end(), f.error.path.begin(), f.error.path.end());
      wrapped.expected = f.error.expected;
      wrapped.got = f.error.got;
      return CheckResult{std::nullopt, wrapped, options.conversion_name()};
    }
  }
  return CheckResult{std::move(chain), std::nullopt, options.conversion_name()};
}

KindOutcome check_family(const LfSignature& sig, const LfContext& ctx, const LfFamily& a,
                         KernelOptions options) {
  try {
    Checker checker{sig, options, {}};
    auto [k, tree] = checker.infer_family(ctx, a);
    return KindOutcome{std::move(k), std::move(tree), std::nullopt};
  } catch (const KernelFailure& f) {
    return KindOutcome{std::nullopt, std::nullopt, f.error};
  }
}

InferOutcome infer_object(const LfSignature& sig, const LfContext& ctx, const LfObject& m,
                          KernelOptions options) {
  try {
    Checker checker{sig, options, {}};
    auto [t, tree] = checker.infer_object(ctx, m);
    return InferOutcome{std::move(t), std::move(tree), std::nullopt};
  } catch (const KernelFailure& f) {
    return InferOutcome{std::nullopt, std::nullopt, f.error};
  }
}

CheckResult check_object(const LfSignature& sig, const LfContext& ctx, const LfObject& m,
                         const LfFamily& a, KernelOptions options) {
  try {
    Checker checker{sig, options, {}};
    DerivationTree tree = checker.check_object_against(ctx, m, a);
    return CheckResult{std::move(tree), std::nullopt, options.conversion_name()};
  } catch (const KernelFailure& f) {
    return CheckResult{std::nullopt, f.error, options.conversion_name()};
  }
}

bool equal_family(const LfSignature&, const LfContext&, const LfFamily& a, const LfFamily& b,
                  KernelOptions options) {
  return lf_equal_modulo(a, b, options.eta_conversion);
}

// ---------------------------------------------------------------------------
// Independent derivation replay

namespace {

bool contexts_equal(const LfContext& a, const LfContext& b) {
  if (a.bindings.size() != b.bindings.size()) return false;
  for (size_t i = 0; i < a.bindings.size(); ++i) {
    if (a.bindings[i].first != b.bindings[i].first) return false;
    if (!alpha_equal(a.bindings[i].second, b.bindings[i].second)) return false;
  }
  return true;
}

struct Validator {
  KernelOptions opt;

  bool conv(const LfFamily& a, const LfFamily& b) const {
    return lf_equal_modulo(a, b, opt.eta_conversion);
  }

  template <class T>
  static const T* subject_as(const DerivationTree& t) {
    return std::get_if<T>(&t.subject);
  }

  static std::optional<LfFamily> family_classifier(const DerivationTree& t) {
    if (!t.classifier) return std::nullopt;
    if (const auto* f = std::get_if<LfFamily>(&*t.classifier)) return *f;
    return std::nullopt;
  }

  static std::optional<LfKind> kind_classifier(const DerivationTree& t) {
    if (!t.classifier) return std::nullopt;
    if (const auto* k = std::get_if<LfKind>(&*t.classifier)) return *k;
    return std::nullopt;
  }

  // Premise context must be `outer` extended by exactly one binding whose type
  // is α-equal to `expected_type`; returns the binder name.
  static std::optional<Name> extension_var(const LfContext& outer, const LfContext& inner,
                                           const LfFamily& expected_type) {
    if (inner.bindings.size() != outer.bindings.size() + 1) return std::nullopt;
    LfContext trimmed = inner;
    auto last = trimmed.bindings.back();
    trimmed.bindings.pop_back();
    if (!contexts_equal(trimmed, outer)) return std::nullopt;
    if (!alpha_equal(last.second, expected_type)) return std::nullopt;
    if (outer.lookup(last.first)) return std::nullopt;  // shadowing would be unsound
    return last.first;
  }

  bool validate(const LfSignature& sig, const DerivationTree& t) const {
    const std::string& r = t.rule;
    if (r == "kind-type") {
      const auto* k = subject_as<LfKind>(t);
      return k && std::holds_alternative<KindType>(k->node().v) && t.premises.empty() &&
             !t.classifier;
    }
    if (r == "kind-pi") {
      const auto* k = subject_as<LfKind>(t);
      if (!k || t.premises.size() != 2) return false;
      const auto* pi = std::get_if<KindPi>(&k->node().v);
      if (!pi) return false;
      const DerivationTree& dom = t.premises[0];
      const DerivationTree& body = t.premises[1];
      const auto* dom_subject = subject_as<LfFamily>(dom);
      if (!dom_subject || !alpha_equal(*dom_subject, pi->domain)) return false;
      auto dom_kind = kind_classifier(dom);
      if (!dom_kind || *dom_kind != LfKind::type()) return false;
      if (!contexts_equal(dom.ctx, t.ctx)) return false;
      auto x = extension_var(t.ctx, body.ctx, lf_normalize(pi->domain));
      if (!x) return false;
      const auto* body_subject = subject_as<LfKind>(body);
      if (!body_subject || !alpha_equal(*body_subject, open_kind(pi->body, LfObject::var(*x))))
        return false;
      return validate(sig, dom) && validate(sig, body);
    }
    if (r == "fam-const") {
      const auto* a = subject_as<LfFamily>(t);
      if (!a || !t.premises.empty()) return false;
      const auto* c = std::get_if<FamConst>(&a->node().v);
      if (!c) return false;
      const LfDecl* d = sig.lookup(c->name);
      if (!d || !d->is_family()) return false;
      auto k = kind_classifier(t);
      return k && alpha_equal(*k, lf_normalize(d->kind()));
    }
    if (r == "fam-app") {
      const auto* a = subject_as<LfFamily>(t);
      if (!a || t.premises.size() != 2) return false;
      const auto* app = std::get_if<FamApp>(&a->node().v);
      if (!app) return false;
      const DerivationTree& head = t.premises[0];
      const DerivationTree& arg = t.premises[1];
      const auto* head_subject = subject_as<LfFamily>(head);
      const auto* arg_subject = subject_as<LfObject>(arg);
      if (!head_subject || !alpha_equal(*head_subject, app->head)) return false;
      if (!arg_subject || !alpha_equal(*arg_subject, app->arg)) return false;
      if (!contexts_equal(head.ctx, t.ctx) || !contexts_equal(arg.ctx, t.ctx)) return false;
      auto head_kind = kind_classifier(head);
      if (!head_kind) return false;
      const auto* pi = std::get_if<KindPi>(&head_kind->node().v);
      if (!pi) return false;
      auto arg_type = family_classifier(arg);
      if (!arg_type || !conv(pi->domain, *arg_type)) return false;
      auto k = kind_classifier(t);
      if (!k || !alpha_equal(*k, lf_normalize(open_kind(pi->body, app->arg)))) return false;
      return validate(sig, head) && validate(sig, arg);
    }
    if (r == "fam-pi") {
      const auto* a = subject_as<LfFamily>(t);
      if (!a || t.premises.size() != 2) return false;
      const auto* pi = std::get_if<FamPi>(&a->node().v);
      if (!pi) return false;
      const DerivationTree& dom = t.premises[0];
      const DerivationTree& body = t.premises[1];
      const auto* dom_subject = subject_as<LfFamily>(dom);
      if (!dom_subject || !alpha_equal(*dom_subject, pi->domain)) return false;
      auto dom_kind = kind_classifier(dom);
      if (!dom_kind || *dom_kind != LfKind::type()) return false;
      if (!contexts_equal(dom.ctx, t.ctx)) return false;
      auto x = extension_var(t.ctx, body.ctx, lf_normalize(pi->domain));
      if (!x) return false;
      const auto* body_subject = subject_as<LfFamily>(body);
      if (!body_subject ||
          !alpha_equal(*body_subject, open_family(pi->body, LfObject::var(*x))))
        return false;
      auto body_kind = kind_classifier(body);
      if (!body_kind || *body_kind != LfKind::type()) return false;
      auto k = kind_classifier(t);
      if (!k || *k != LfKind::type()) return false;
      return validate(sig, dom) && validate(sig, body);
    }
    if (r == "obj-const") {
      const auto* m = subject_as<LfObject>(t);
      if (!m || !t.premises.empty()) return false;
      const auto* c = std::get_if<ObjConst>(&m->node().v);
      if (!c) return false;
      const LfDecl* d = sig.lookup(c->name);
      if (!d || d->is_family()) return false;
      auto f = family_classifier(t);
      return f && alpha_equal(*f, lf_normalize(d->type()));
    }
    if (r == "obj-var") {
      const auto* m = subject_as<LfObject>(t);
      if (!m || !t.premises.empty()) return false;
      const auto* v = std::get_if<ObjVar>(&m->node().v);
      if (!v) return false;
      const LfFamily* bound = t.ctx.lookup(v->name);
      if (!bound) return false;
      auto f = family_classifier(t);
      return f && alpha_equal(*f, lf_normalize(*bound));
    }
    if (r == "obj-app") {
      const auto* m = subject_as<LfObject>(t);
      if (!m || t.premises.size() != 2) return false;
      const auto* app = std::get_if<ObjApp>(&m->node().v);
      if (!app) return false;
      const DerivationTree& fun = t.premises[0];
      const DerivationTree& arg = t.premises[1];
      const auto* fun_subject = subject_as<LfObject>(fun);
      const auto* arg_subject = subject_as<LfObject>(arg);
      if (!fun_subject || !alpha_equal(*fun_subject, app->fun)) return false;
      if (!arg_subject || !alpha_equal(*arg_subject, app->arg)) return false;
      if (!contexts_equal(fun.ctx, t.ctx) || !contexts_equal(arg.ctx, t.ctx)) return false;
      auto fun_type = family_classifier(fun);
      if (!fun_type) return false;
      const auto* pi = std::get_if<FamPi>(&fun_type->node().v);
      if (!pi) return false;
      auto arg_type = family_classifier(arg);
      if (!arg_type || !conv(pi->domain, *arg_type)) return false;
      auto f = family_classifier(t);
      if (!f || !alpha_equal(*f, lf_normalize(open_family(pi->body, app->arg)))) return false;
      return validate(sig, fun) && validate(sig, arg);
    }
    if (r == "obj-lam") {
      const auto* m = subject_as<LfObject>(t);
      if (!m || t.premises.size() != 2) return false;
      const auto* lam = std::get_if<ObjLam>(&m->node().v);
      if (!lam) return false;
      const DerivationTree& annot = t.premises[0];
      const DerivationTree& body = t.premises[1];
      const auto* annot_subject = subject_as<LfFamily>(annot);
      if (!annot_subject || !alpha_equal(*annot_subject, lam->annot)) return false;
      auto annot_kind = kind_classifier(annot);
      if (!annot_kind || *annot_kind != LfKind::type()) return false;
      if (!contexts_equal(annot.ctx, t.ctx)) return false;
      LfFamily annot_nf = lf_normalize(lam->annot);
      auto x = extension_var(t.ctx, body.ctx, annot_nf);
      if (!x) return false;
      const auto* body_subject = subject_as<LfObject>(body);
      if (!body_subject ||
          !alpha_equal(*body_subject, open_object(lam->body, LfObject::var(*x))))
        return false;
      auto body_type = family_classifier(body);
      if (!body_type) return false;
      auto f = family_classifier(t);
      if (!f) return false;
      LfFamily expected =
          LfFamily::pi_raw(lam->hint, annot_nf, close_family(*body_type, *x));
      if (!alpha_equal(*f, expected)) return false;
      return validate(sig, annot) && validate(sig, body);
    }
    if (r == "check-lam") {
      const auto* m = subject_as<LfObject>(t);
      if (!m || t.premises.size() != 2) return false;
      const auto* lam = std::get_if<ObjLam>(&m->node().v);
      if (!lam) return false;
      auto f = family_classifier(t);
      if (!f) return false;
      const auto* pi = std::get_if<FamPi>(&f->node().v);
      if (!pi) return false;
      if (!conv(lam->annot, pi->domain)) return false;
      const DerivationTree& annot = t.premises[0];
      const DerivationTree& body = t.premises[1];
      const auto* annot_subject = subject_as<LfFamily>(annot);
      if (!annot_subject || !alpha_equal(*annot_subject, lam->annot)) return false;
      auto annot_kind = kind_classifier(annot);
      if (!annot_kind || *annot_kind != LfKind::type()) return false;
      auto x = extension_var(t.ctx, body.ctx, lf_normalize(pi->domain));
      if (!x) return false;
      const auto* body_subject = subject_as<LfObject>(body);
      if (!body_subject ||
          !alpha_equal(*body_subject, open_object(lam->body, LfObject::var(*x))))
        return false;
      auto body_type = family_classifier(body);
      if (!body_type || !alpha_equal(*body_type, open_family(pi->body, LfObject::var(*x))))
        return false;
      return validate(sig, annot) && validate(sig, body);
    }
    if (r == "check-conv") {
      const auto* m = subject_as<LfObject>(t);
      if (!m || t.premises.size() != 1) return false;
      const DerivationTree& inner = t.premises[0];
      const auto* inner_subject = subject_as<LfObject>(inner);
      if (!inner_subject || !alpha_equal(*inner_subject, *m)) return false;
      if (!contexts_equal(inner.ctx, t.ctx)) return false;
      auto inferred = family_classifier(inner);
      auto required = family_classifier(t);
      if (!inferred || !required || !conv(*inferred, *required)) return false;
      return validate(sig, inner);
    }
    if (r == "sig-empty") {
      const auto* s = subject_as<LfSignature>(t);
      return s && s->decls().empty() && t.premises.empty();
    }
    if (r == "sig-fam" || r == "sig-obj") {
      const auto* s = subject_as<LfSignature>(t);
      if (!s || s->decls().empty() || t.premises.size() != 2) return false;
      const LfDecl& last = s->decls().back();
      if (r == "sig-fam" && !last.is_family()) return false;
      if (r == "sig-obj" && last.is_family()) return false;
      LfSignature prefix(
          std::vector<LfDecl>(s->decls().begin(), s->decls().end() - 1));
      if (prefix.lookup(last.name)) return false;
      const DerivationTree& prev = t.premises[0];
      const DerivationTree& classifier = t.premises[1];
      const auto* prev_sig = subject_as<LfSignature>(prev);
      if (!prev_sig || prev_sig->decls().size() != prefix.decls().size()) return false;
      for (size_t i = 0; i < prefix.decls().size(); ++i) {
        const LfDecl& x = prefix.decls()[i];
        const LfDecl& y = prev_sig->decls()[i];
        if (x.name != y.name || x.is_family() != y.is_family()) return false;
        if (x.is_family() ? !alpha_equal(x.kind(), y.kind())
                          : !alpha_equal(x.type(), y.type()))
          return false;
      }
      if (!classifier.ctx.bindings.empty()) return false;
      if (r == "sig-fam") {
        const auto* k = subject_as<LfKind>(classifier);
        if (!k || !alpha_equal(*k, last.kind())) return false;
      } else {
        const auto* a = subject_as<LfFamily>(classifier);
        if (!a || !alpha_equal(*a, last.type())) return false;
        auto kc = kind_classifier(classifier);
        if (!kc || *kc != LfKind::type()) return false;
      }
      return validate(prefix, prev) && validate(prefix, classifier);
    }
    return false;
  }
};

}  // namespace

bool validate_derivation(const LfSignature& sig, const DerivationTree& tree,
                         KernelOptions options) {
  try {
    return Validator{options}.validate(sig, tree);
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace lfhh
