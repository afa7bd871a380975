#include "lfhh/erasure.hpp"

#include "lfhh/printer.hpp"
#include "lfhh/util.hpp"

namespace lfhh {

SimpleType erase_classifier(const LfFamily& a, ObjectTypePolicy policy) {
  switch (policy) {
    case ObjectTypePolicy::kCollapsed:
      break;
  }
  return std::visit(
      Overloaded{
          [&](const FamConst&) { return SimpleType::tm(); },
          [&](const FamApp&) { return SimpleType::tm(); },
          [&](const FamPi& n) {
            return SimpleType::arrow(erase_classifier(n.domain, policy),
                                     erase_classifier(n.body, policy));
          },
      },
      a.node().v);
}

SimpleType erase_classifier(const LfKind& k, ObjectTypePolicy policy) {
  return std::visit(
      Overloaded{
          [&](const KindType&) { return SimpleType::ty(); },
          [&](const KindPi& n) {
            return SimpleType::arrow(erase_classifier(n.domain, policy),
                                     erase_classifier(n.body, policy));
          },
      },
      k.node().v);
}

ReflectedSignature reflect_signature(const LfSignature& sig) {
  ReflectedSignature out;
  out.reserve(sig.decls().size());
  for (const LfDecl& d : sig.decls()) {
    SimpleType t = d.is_family() ? erase_classifier(d.kind()) : erase_classifier(d.type());
    out.push_back(ReflectedConstant{d.name, std::move(t)});
  }
  return out;
}

const ReflectedConstant* reflected_lookup(const ReflectedSignature& reflected, const Name& name) {
  for (const ReflectedConstant& c : reflected) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

struct Eraser {
  const ReflectedSignature& reflected;

  STerm constant(const Name& name) const {
    const ReflectedConstant* c = reflected_lookup(reflected, name);
    if (!c) throw EncodeError(EncodeErrorKind::kUnboundName, "undeclared constant " + name);
    return STerm::constant(c->name, c->type);
  }

  STerm object(const LfObject& m, const LfContext& ctx, NameSet& used) const {
    return std::visit(
        Overloaded{
            [&](const ObjConst& n) { return constant(n.name); },
            [&](const ObjVar& n) -> STerm {
              const LfFamily* t = ctx.lookup(n.name);
              if (!t) {
                throw EncodeError(EncodeErrorKind::kUnboundName,
                                  "free variable " + n.name + " has no declared type");
              }
              return STerm::var(n.name, erase_classifier(*t));
            },
            [&](const ObjBound&) -> STerm {
              throw EncodeError(EncodeErrorKind::kUnboundName, "dangling bound variable");
            },
            [&](const ObjApp& n) -> STerm {
              STerm fun = object(n.fun, ctx, used);
              STerm arg = object(n.arg, ctx, used);
              try {
                return STerm::app(std::move(fun), std::move(arg));
              } catch (const SimpleTypeError& e) {
                throw EncodeError(EncodeErrorKind::kSimpleTypeMismatch,
                                  std::string("erasure is not simply typable: ") + e.what());
              }
            },
            [&](const ObjLam& n) -> STerm {
              SimpleType annot = erase_classifier(n.annot);
              Name x = fresh_name(n.hint.empty() ? Name("x") : n.hint, used);
              used.insert(x);
              LfContext inner = ctx.extended(x, n.annot);
              STerm body = object(open_object(n.body, LfObject::var(x)), inner, used);
              return STerm::lam(x, std::move(annot), std::move(body));
            },
        },
        m.node().v);
  }

  STerm family_term(const LfFamily& a, const LfContext& ctx, NameSet& used) const {
    return std::visit(
        Overloaded{
            [&](const FamConst& n) { return constant(n.name); },
            [&](const FamApp& n) -> STerm {
              STerm head = family_term(n.head, ctx, used);
              STerm arg = object(n.arg, ctx, used);
              try {
                return STerm::app(std::move(head), std::move(arg));
              } catch (const SimpleTypeError& e) {
                throw EncodeError(EncodeErrorKind::kSimpleTypeMismatch,
                                  std::string("erasure is not simply typable: ") + e.what());
              }
            },
            [&](const FamPi&) -> STerm {
              throw EncodeError(EncodeErrorKind::kNotAtomic,
                                "product type in atomic position: " + print_family(a));
            },
        },
        a.node().v);
  }

  NameSet initial_names(const LfContext& ctx) const {
    NameSet used;
    for (const ReflectedConstant& c : reflected) used.insert(c.name);
    for (const auto& [name, _] : ctx.bindings) used.insert(name);
    return used;
  }
};

}  // namespace

STerm erase_object(const ReflectedSignature& reflected, const LfObject& m, const LfContext& ctx) {
  Eraser eraser{reflected};
  NameSet used = eraser.initial_names(ctx);
  for (const auto& v : lf_free_vars(m)) used.insert(v);
  return eraser.object(m, ctx, used);
}

STerm erase_object(const LfSignature& sig, const LfObject& m, const LfContext& ctx) {
  return erase_object(reflect_signature(sig), m, ctx);
}

STerm erase_family_term(const ReflectedSignature& reflected, const LfFamily& a,
                        const LfContext& ctx) {
  Eraser eraser{reflected};
  NameSet used = eraser.initial_names(ctx);
  for (const auto& v : lf_free_vars(a)) used.insert(v);
  return eraser.family_term(a, ctx, used);
}

STerm erase_family_term(const LfSignature& sig, const LfFamily& a, const LfContext& ctx) {
  return erase_family_term(reflect_signature(sig), a, ctx);
}

}  // namespace lfhh
