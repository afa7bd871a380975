#include "lfhh/encoding.hpp"

#include "lfhh/printer.hpp"
#include "lfhh/util.hpp"

namespace lfhh {

namespace {

constexpr StNormalizeOptions kBetaOnly{false};

struct EncodingBuilder {
  const ReflectedSignature& reflected;
  NameSet used;

  explicit EncodingBuilder(const ReflectedSignature& r) : reflected(r) {
    for (const ReflectedConstant& c : r) used.insert(c.name);
  }

  void reserve_names(const STerm& subject, const LfContext& ctx) {
    for (const auto& v : st_free_vars(subject)) used.insert(v);
    for (const auto& [n, _] : ctx.bindings) used.insert(n);
  }

  Atom hastype_atom(const LfFamily& a, const STerm& subject, const LfContext& ctx) {
    STerm type_term = st_normalize(erase_family_term(reflected, a, ctx), kBetaOnly);
    return Atom{HastypeAtom{st_normalize(subject, kBetaOnly), std::move(type_term)}};
  }

  HHGoal goal(const LfFamily& a, const STerm& subject, const LfContext& ctx) {
    if (const auto* pi = std::get_if<FamPi>(&a.node().v)) {
      SimpleType dom = erase_classifier(pi->domain);
      SimpleType subject_type = st_type_of(subject);
      if (!subject_type.is_arrow() || subject_type.dom() != dom) {
        throw EncodeError(EncodeErrorKind::kSimpleTypeMismatch,
                          "subject type does not match the erased classifier");
      }
      Name x = fresh_name(pi->hint.empty() ? Name("x") : pi->hint, used);
      used.insert(x);
      STerm xv = STerm::var(x, dom);
      HHClause hyp = clause(pi->domain, xv, ctx);
      HHGoal body = goal(open_family(pi->body, LfObject::var(x)), STerm::app(subject, xv),
                         ctx.extended(x, pi->domain));
      return HHGoal::forall(x, dom, HHGoal::implies(std::move(hyp), std::move(body)));
    }
    return HHGoal::atom(hastype_atom(a, subject, ctx));
  }

  HHClause clause(const LfFamily& a, const STerm& subject, const LfContext& ctx) {
    if (const auto* pi = std::get_if<FamPi>(&a.node().v)) {
      SimpleType dom = erase_classifier(pi->domain);
      SimpleType subject_type = st_type_of(subject);
      if (!subject_type.is_arrow() || subject_type.dom() != dom) {
        throw EncodeError(EncodeErrorKind::kSimpleTypeMismatch,
                          "subject type does not match the erased classifier");
      }
      Name x = fresh_name(pi->hint.empty() ? Name("x") : pi->hint, used);
      used.insert(x);
      STerm xv = STerm::var(x, dom);
      HHGoal premise = goal(pi->domain, xv, ctx);
      HHClause head = clause(open_family(pi->body, LfObject::var(x)), STerm::app(subject, xv),
                             ctx.extended(x, pi->domain));
      return HHClause::forall(x, dom, HHClause::implies(std::move(premise), std::move(head)));
    }
    return HHClause::atom(hastype_atom(a, subject, ctx));
  }

  HHClause istype_clause(const LfDecl& decl) {
    std::vector<std::pair<Name, SimpleType>> binders;
    std::vector<HHGoal> premises;
    LfContext ctx;
    LfKind k = decl.kind();
    LfFamily applied = LfFamily::constant(decl.name);
    while (const auto* pi = std::get_if<KindPi>(&k.node().v)) {
      SimpleType dom = erase_classifier(pi->domain);
      Name x = fresh_name(pi->hint.empty() ? Name("x") : pi->hint, used);
      used.insert(x);
      premises.push_back(goal(pi->domain, STerm::var(x, dom), ctx));
      binders.emplace_back(x, dom);
      applied = LfFamily::app(applied, LfObject::var(x));
      ctx = ctx.extended(x, pi->domain);
      k = open_kind(pi->body, LfObject::var(x));
    }
    STerm type_term = st_normalize(erase_family_term(reflected, applied, ctx), kBetaOnly);
    HHClause out = HHClause::atom(Atom{IstypeAtom{std::move(type_term)}});
    for (auto it = premises.rbegin(); it != premises.rend(); ++it) {
      out = HHClause::implies(*it, std::move(out));
    }
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
      out = HHClause::forall(it->first, it->second, std::move(out));
    }
    return out;
  }
};

}  // namespace

HHGoal type_to_goal(const ReflectedSignature& reflected, const LfFamily& a, const STerm& subject,
                    const LfContext& ctx) {
  EncodingBuilder b(reflected);
  b.reserve_names(subject, ctx);
  return b.goal(a, subject, ctx);
}

HHGoal type_to_goal(const LfSignature& sig, const LfFamily& a, const STerm& subject,
                    const LfContext& ctx) {
  return type_to_goal(reflect_signature(sig), a, subject, ctx);
}

HHClause type_to_clause(const ReflectedSignature& reflected, const LfFamily& a,
                        const STerm& subject, const LfContext& ctx) {
  EncodingBuilder b(reflected);
  b.reserve_names(subject, ctx);
  return b.clause(a, subject, ctx);
}

HHClause type_to_clause(const LfSignature& sig, const LfFamily& a, const STerm& subject,
                        const LfContext& ctx) {
  return type_to_clause(reflect_signature(sig), a, subject, ctx);
}

HHClause kind_to_istype_clause(const ReflectedSignature& reflected, const LfDecl& decl) {
  EncodingBuilder b(reflected);
  return b.istype_clause(decl);
}

HHClause kind_to_istype_clause(const LfSignature& sig, const LfDecl& decl) {
  return kind_to_istype_clause(reflect_signature(sig), decl);
}

HHProgram encode_signature(const LfSignature& sig, KernelOptions options) {
  CheckResult sig_check = check_signature(sig, options);
  if (!sig_check.derivable()) throw SignatureRejected(*sig_check.error);
  ReflectedSignature reflected = reflect_signature(sig);
  HHProgram program;
  program.clauses.reserve(sig.decls().size());
  for (const LfDecl& d : sig.decls()) {
    if (d.is_family()) {
      program.clauses.push_back(kind_to_istype_clause(reflected, d));
    } else {
      const ReflectedConstant* c = reflected_lookup(reflected, d.name);
      program.clauses.push_back(
          type_to_clause(reflected, d.type(), STerm::constant(d.name, c->type), {}));
    }
  }
  return program;
}

HHGoal judgment_to_goal(const LfSignature& sig, const LfObject& m, const LfFamily& a) {
  ReflectedSignature reflected = reflect_signature(sig);
  STerm subject = erase_object(reflected, m);
  return type_to_goal(reflected, a, subject, {});
}

}  // namespace lfhh
