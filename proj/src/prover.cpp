#include "lfhh/prover.hpp"

#include <functional>
#include <stdexcept>

#include "lfhh/util.hpp"

namespace lfhh {

const char* solve_status_name(SolveResult::Status s) {
  switch (s) {
    case SolveResult::Status::kProved: return "proved";
    case SolveResult::Status::kExhausted: return "exhausted";
    case SolveResult::Status::kFailedNoProof: return "failed-no-proof";
    case SolveResult::Status::kIncomplete: return "incomplete";
  }
  return "unknown";
}

namespace {

enum class UStatus { kOk, kClash, kNonPattern };

struct MetaInfo {
  SimpleType type;
  int level;  // eigenvariables visible at creation
  std::optional<STerm> value;
};

struct SearchState {
  std::vector<HHClause> program;
  std::vector<std::pair<Name, SimpleType>> eigen;
  std::map<Name, int> eigen_level;  // grows monotonically, never erased
  std::map<Name, MetaInfo> metas;
  std::vector<Name> trail;
  NameSet used_names;  // grows monotonically within one search
  bool depth_hit = false;
  std::optional<NonPatternProblem> non_pattern;

  Name fresh(const Name& hint) {
    Name n = fresh_name(hint.empty() ? Name("x") : hint, used_names);
    used_names.insert(n);
    return n;
  }

  Name fresh_meta(const Name& hint, SimpleType type) {
    Name n = fresh(hint);
    metas.emplace(n, MetaInfo{std::move(type), static_cast<int>(eigen.size()), std::nullopt});
    return n;
  }

  void bind(const Name& m, STerm value) {
    metas.at(m).value = std::move(value);
    trail.push_back(m);
  }

  size_t mark() const { return trail.size(); }

  void undo_to(size_t m) {
    while (trail.size() > m) {
      metas.at(trail.back()).value.reset();
      trail.pop_back();
    }
  }

  bool solved(const Name& m) const {
    auto it = metas.find(m);
    return it != metas.end() && it->second.value.has_value();
  }
};

// Substitute solved metavariables to a fixpoint. Bindings form a DAG, so this
// terminates.
STerm resolve(const SearchState& s, const STerm& t) {
  STerm cur = t;
  for (;;) {
    std::map<Name, STerm> values;
    for (const Name& m : st_meta_names(cur)) {
      auto it = s.metas.find(m);
      if (it != s.metas.end() && it->second.value) values.emplace(m, *it->second.value);
    }
    if (values.empty()) return cur;
    cur = st_subst_metas(cur, values);
  }
}

HHGoal resolve_goal(const SearchState& s, const HHGoal& g) {
  HHGoal cur = g;
  for (;;) {
    std::map<Name, STerm> values;
    for (const Name& m : goal_meta_names(cur)) {
      auto it = s.metas.find(m);
      if (it != s.metas.end() && it->second.value) values.emplace(m, *it->second.value);
    }
    if (values.empty()) return cur;
    cur = goal_subst_metas(cur, values);
  }
}

// ---------------------------------------------------------------------------
// Pattern unification

// A pattern argument: a free variable or a de Bruijn index, possibly
// η-expanded (λx1..xk. v x1..xk).
using VarToken = std::variant<Name, int>;

std::optional<VarToken> eta_var_token(const STerm& t) {
  int lams = 0;
  const STerm* cur = &t;
  while (const auto* lam = std::get_if<StLam>(&cur->node().v)) {
    ++lams;
    cur = &lam->body;
  }
  STerm head = st_spine_head(*cur);
  std::vector<STerm> args = st_spine_args(*cur);
  if (static_cast<int>(args.size()) != lams) return std::nullopt;
  for (int i = 0; i < lams; ++i) {
    const auto* b = std::get_if<StBound>(&args[static_cast<size_t>(i)].node().v);
    if (!b || b->index != lams - 1 - i) return std::nullopt;
  }
  if (const auto* v = std::get_if<StVar>(&head.node().v)) return VarToken{v->name};
  if (const auto* b = std::get_if<StBound>(&head.node().v)) {
    if (b->index < lams) return std::nullopt;  // one of the stripped binders itself
    return VarToken{b->index - lams};
  }
  return std::nullopt;
}

struct Unifier {
  SearchState& s;
  std::optional<NonPatternProblem>& np;

  UStatus non_pattern(const STerm& a, const STerm& b, const std::string& note) {
    if (!np) np = NonPatternProblem{a, b, note};
    return UStatus::kNonPattern;
  }

  bool var_visible_at(const Name& v, int level) const {
    auto it = s.eigen_level.find(v);
    return it != s.eigen_level.end() && it->second < level;
  }

  // Flex side analysis: spine head must be an unsolved meta, arguments must be
  // distinct variable tokens.
  struct FlexSpine {
    Name meta;
    SimpleType meta_type;
    int level;
    std::vector<Name> args;             // top-level pattern args are free vars
    std::vector<SimpleType> arg_types;  // their types
  };

  std::optional<FlexSpine> as_flex(const STerm& t) const {
    STerm head = st_spine_head(t);
    const auto* m = std::get_if<StMeta>(&head.node().v);
    if (!m || s.solved(m->name)) return std::nullopt;
    FlexSpine out{m->name, m->type, s.metas.at(m->name).level, {}, {}};
    SimpleType ht = m->type;
    for (const STerm& a : st_spine_args(t)) {
      auto tok = eta_var_token(a);
      if (!tok || !std::holds_alternative<Name>(*tok)) return std::nullopt;
      out.args.push_back(std::get<Name>(*tok));
      out.arg_types.push_back(ht.dom());
      ht = ht.cod();
    }
    NameSet distinct(out.args.begin(), out.args.end());
    if (distinct.size() != out.args.size()) return std::nullopt;
    return out;
  }

  bool is_flex_headed(const STerm& t) const {
    STerm head = st_spine_head(t);
    const auto* m = std::get_if<StMeta>(&head.node().v);
    return m && !s.solved(m->name);
  }

  UStatus unify(const STerm& ta, const STerm& tb) {
    STerm a = st_normalize(resolve(s, ta));
    STerm b = st_normalize(resolve(s, tb));
    if (alpha_equal(a, b)) return UStatus::kOk;

    const auto* la = std::get_if<StLam>(&a.node().v);
    const auto* lb = std::get_if<StLam>(&b.node().v);
    if (la && lb) {
      Name x = s.fresh(la->hint.empty() ? Name("u") : la->hint);
      return unify(st_open(la->body, STerm::var(x, la->annot)),
                   st_open(lb->body, STerm::var(x, lb->annot)));
    }
    if (la || lb) return UStatus::kClash;  // η-long terms of equal type agree on λ

    bool fa = is_flex_headed(a);
    bool fb = is_flex_headed(b);
    if (fa && fb) return flex_flex(a, b);
    if (fa) return flex_rigid(a, b);
    if (fb) return flex_rigid(b, a);

    // rigid-rigid
    STerm ha = st_spine_head(a);
    STerm hb = st_spine_head(b);
    bool heads_match = std::visit(
        Overloaded{
            [&](const StConst& x) {
              const auto* y = std::get_if<StConst>(&hb.node().v);
              return y && x.name == y->name && x.type == y->type;
            },
            [&](const StVar& x) {
              const auto* y = std::get_if<StVar>(&hb.node().v);
              return y && x.name == y->name;
            },
            [&](const StMeta& x) {
              // solved metas were resolved away; an unsolved one is flex
              const auto* y = std::get_if<StMeta>(&hb.node().v);
              return y && x.name == y->name;
            },
            [&](const auto&) { return false; },
        },
        ha.node().v);
    if (!heads_match) return UStatus::kClash;
    std::vector<STerm> args_a = st_spine_args(a);
    std::vector<STerm> args_b = st_spine_args(b);
    if (args_a.size() != args_b.size()) return UStatus::kClash;
    for (size_t i = 0; i < args_a.size(); ++i) {
      UStatus r = unify(args_a[i], args_b[i]);
      if (r != UStatus::kOk) return r;
    }
    return UStatus::kOk;
  }

  // M args ≐ rigid rhs. Inversion with pruning of nested flex subterms.
  UStatus flex_rigid(const STerm& flex, const STerm& rhs) {
    auto spine = as_flex(flex);
    if (!spine) return non_pattern(flex, rhs, "flex term applied to non-variable arguments");
    std::map<Name, int> arg_position;
    for (size_t i = 0; i < spine->args.size(); ++i) {
      arg_position[spine->args[i]] = static_cast<int>(i);
    }
    STerm body = rhs;
    UStatus r = invert(*spine, arg_position, body);
    if (r != UStatus::kOk) return r;
    // Abstract the pattern arguments; closing maps their occurrences to the
    // matching binder.
    for (size_t i = spine->args.size(); i-- > 0;) {
      body = STerm::lam_raw(spine->args[i], spine->arg_types[i],
                            st_close(body, spine->args[i]));
    }
    s.bind(spine->meta, std::move(body));
    return UStatus::kOk;
  }

  // Rewrite `t` (a subterm of an η-long normal rigid rhs, traversed raw) so
  // that it lies in the image of the pattern: free variables must be pattern
  // arguments or eigenvariables visible to the metavariable; nested flex
  // subterms are pruned to their visible arguments.
  UStatus invert(const FlexSpine& m, const std::map<Name, int>& arg_position, STerm& t) {
    return std::visit(
        Overloaded{
            [&](const StConst&) { return UStatus::kOk; },
            [&](const StBound&) { return UStatus::kOk; },
            [&](const StVar& v) {
              if (arg_position.count(v.name)) return UStatus::kOk;
              if (var_visible_at(v.name, m.level)) return UStatus::kOk;
              return UStatus::kClash;  // rigid occurrence out of scope
            },
            [&](const StMeta& n) {
              if (n.name == m.meta) return UStatus::kClash;  // occurs check
              const MetaInfo& info = s.metas.at(n.name);
              if (info.level > m.level) {
                // Lower the nested metavariable so its eventual solution
                // cannot mention eigenvariables invisible to m.
                Name lowered = s.fresh(n.name);
                s.metas.emplace(lowered, MetaInfo{info.type, m.level, std::nullopt});
                s.bind(n.name, STerm::meta(lowered, info.type));
                t = STerm::meta(lowered, info.type);
              }
              return UStatus::kOk;
            },
            [&](const StLam& n) {
              STerm body = n.body;
              UStatus r = invert(m, arg_position, body);
              if (r != UStatus::kOk) return r;
              t = STerm::lam_raw(n.hint, n.annot, std::move(body));
              return UStatus::kOk;
            },
            [&](const StApp&) { return invert_spine(m, arg_position, t); },
        },
        t.node().v);
  }

  UStatus invert_spine(const FlexSpine& m, const std::map<Name, int>& arg_position, STerm& t) {
    STerm head = st_spine_head(t);
    std::vector<STerm> args = st_spine_args(t);
    if (const auto* n = std::get_if<StMeta>(&head.node().v)) {
      if (n->name == m.meta) return UStatus::kClash;  // occurs check
      // Nested flex subterm: prune arguments invisible to m.
      std::vector<std::optional<VarToken>> tokens;
      tokens.reserve(args.size());
      for (const STerm& a : args) tokens.push_back(eta_var_token(a));
      for (const auto& tok : tokens) {
        if (!tok) return non_pattern(t, t, "nested flex term applied to non-variable arguments");
      }
      std::vector<bool> keep(args.size(), true);
      bool needs_pruning = false;
      for (size_t i = 0; i < args.size(); ++i) {
        if (const auto* nm = std::get_if<Name>(&*tokens[i])) {
          if (!arg_position.count(*nm) && !var_visible_at(*nm, m.level)) {
            keep[i] = false;
            needs_pruning = true;
          }
        }
        // de Bruijn tokens are bound inside the value being built: always kept
      }
      const MetaInfo& info = s.metas.at(n->name);
      if (needs_pruning || info.level > m.level) {
        // N := λ(all args). N' (kept args), with N' at a level visible to m.
        SimpleType nt = info.type;
        std::vector<SimpleType> arg_types;
        for (size_t i = 0; i < args.size(); ++i) {
          arg_types.push_back(nt.dom());
          nt = nt.cod();
        }
        SimpleType pruned_type = nt;
        for (size_t i = args.size(); i-- > 0;) {
          if (keep[i]) pruned_type = SimpleType::arrow(arg_types[i], pruned_type);
        }
        int pruned_level = std::min(info.level, m.level);
        Name pruned = s.fresh(n->name);
        s.metas.emplace(pruned, MetaInfo{pruned_type, pruned_level, std::nullopt});
        STerm value = STerm::meta(pruned, pruned_type);
        for (size_t i = 0; i < args.size(); ++i) {
          if (keep[i]) {
            value = STerm::app_raw(value, STerm::bound(static_cast<int>(args.size() - 1 - i)));
          }
        }
        for (size_t i = args.size(); i-- > 0;) {
          value = STerm::lam_raw("u", arg_types[i], value);
        }
        s.bind(n->name, value);
        // In place, N args β-reduces to N' applied to the kept arguments; the
        // kept arguments are vetted pattern tokens already.
        STerm rewritten = STerm::meta(pruned, pruned_type);
        for (size_t i = 0; i < args.size(); ++i) {
          if (keep[i]) rewritten = STerm::app_raw(rewritten, args[i]);
        }
        t = std::move(rewritten);
        return UStatus::kOk;
      }
      // No pruning needed; keep N and its (visible) arguments as they are.
      return UStatus::kOk;
    }
    // Rigid head.
    if (const auto* v = std::get_if<StVar>(&head.node().v)) {
      if (!arg_position.count(v->name) && !var_visible_at(v->name, m.level)) {
        return UStatus::kClash;
      }
    }
    std::vector<STerm> out_args;
    out_args.reserve(args.size());
    for (STerm& a : args) {
      UStatus r = invert(m, arg_position, a);
      if (r != UStatus::kOk) return r;
      out_args.push_back(a);
    }
    t = st_make_spine(head, out_args);
    return UStatus::kOk;
  }

  UStatus flex_flex(const STerm& a, const STerm& b) {
    auto fa = as_flex(a);
    auto fb = as_flex(b);
    if (!fa || !fb) return non_pattern(a, b, "flex term applied to non-variable arguments");
    if (fa->meta == fb->meta) {
      // Same metavariable: keep argument positions where both sides agree.
      if (fa->args.size() != fb->args.size()) return UStatus::kClash;
      SimpleType cod = fa->meta_type;
      for (size_t i = 0; i < fa->args.size(); ++i) cod = cod.cod();
      std::vector<size_t> kept;
      SimpleType ht = cod;
      for (size_t i = fa->args.size(); i-- > 0;) {
        if (fa->args[i] == fb->args[i]) {
          ht = SimpleType::arrow(fa->arg_types[i], ht);
          kept.push_back(i);
        }
      }
      std::reverse(kept.begin(), kept.end());
      Name h = s.fresh_meta(fa->meta, ht);
      s.metas.at(h).level = fa->level;
      STerm value = STerm::meta(h, ht);
      for (size_t i : kept) {
        value = STerm::app_raw(value,
                               STerm::bound(static_cast<int>(fa->args.size() - 1 - i)));
      }
      for (size_t i = fa->args.size(); i-- > 0;) {
        value = STerm::lam_raw(fa->args[i], fa->arg_types[i], value);
      }
      s.bind(fa->meta, std::move(value));
      return UStatus::kOk;
    }
    // Distinct metavariables: both become a fresh meta over their shared
    // arguments; globally visible eigenvariables need no argument position.
    int level = std::min(fa->level, fb->level);
    std::vector<Name> common;
    std::vector<SimpleType> common_types;
    for (size_t i = 0; i < fa->args.size(); ++i) {
      const Name& v = fa->args[i];
      for (const Name& w : fb->args) {
        if (w == v) {
          common.push_back(v);
          common_types.push_back(fa->arg_types[i]);
          break;
        }
      }
    }
    SimpleType cod = fa->meta_type;
    for (size_t i = 0; i < fa->args.size(); ++i) cod = cod.cod();
    SimpleType ht = cod;
    for (size_t i = common.size(); i-- > 0;) ht = SimpleType::arrow(common_types[i], ht);
    Name h = s.fresh_meta(fa->meta, ht);
    s.metas.at(h).level = level;

    auto abstraction = [&](const FlexSpine& f) {
      STerm value = STerm::meta(h, ht);
      for (const Name& c : common) {
        int pos = -1;
        for (size_t i = 0; i < f.args.size(); ++i) {
          if (f.args[i] == c) pos = static_cast<int>(i);
        }
        value = STerm::app_raw(value,
                               STerm::bound(static_cast<int>(f.args.size()) - 1 - pos));
      }
      for (size_t i = f.args.size(); i-- > 0;) {
        value = STerm::lam_raw(f.args[i], f.arg_types[i], value);
      }
      return value;
    };
    s.bind(fa->meta, abstraction(*fa));
    s.bind(fb->meta, abstraction(*fb));
    return UStatus::kOk;
  }
};

// ---------------------------------------------------------------------------
// Search

struct StrippedClause {
  std::vector<std::pair<Name, SimpleType>> metas;
  std::vector<HHGoal> premises;
  std::optional<Atom> head;
};

StrippedClause strip_clause(SearchState& s, const HHClause& clause) {
  StrippedClause out;
  HHClause cur = clause;
  for (;;) {
    if (const auto* f = std::get_if<ClauseForall>(&cur.node().v)) {
      Name m = s.fresh_meta(f->hint, f->type);
      out.metas.emplace_back(m, f->type);
      cur = open_clause(f->body, STerm::meta(m, f->type));
    } else if (const auto* i = std::get_if<ClauseImplies>(&cur.node().v)) {
      out.premises.push_back(i->premise);
      cur = i->head;
    } else {
      out.head = std::get<ClauseAtom>(cur.node().v).atom;
      return out;
    }
  }
}

struct Prover {
  SearchState s;
  using Cont = std::function<bool()>;

  UStatus unify_atoms(const Atom& goal, const Atom& head) {
    if (goal.is_hastype() != head.is_hastype()) return UStatus::kClash;
    Unifier u{s, s.non_pattern};
    if (goal.is_hastype()) {
      SimpleType tg = st_type_of(resolve(s, goal.hastype().subject));
      SimpleType th = st_type_of(resolve(s, head.hastype().subject));
      if (!(tg == th)) return UStatus::kClash;
      UStatus r = u.unify(goal.hastype().type, head.hastype().type);
      if (r != UStatus::kOk) return r;
      return u.unify(goal.hastype().subject, head.hastype().subject);
    }
    return u.unify(goal.istype().type, head.istype().type);
  }

  bool prove_seq(const std::vector<HHGoal>& goals, size_t i, int depth,
                 std::vector<ProofTrace>& nodes, const Cont& k) {
    if (i == goals.size()) return k();
    return prove(goals[i], depth, nodes[i],
                 [&, i] { return prove_seq(goals, i + 1, depth, nodes, k); });
  }

  bool prove(const HHGoal& goal, int depth, ProofTrace& node, const Cont& k) {
    return std::visit(
        Overloaded{
            [&](const GoalTrue&) {
              node = ProofTrace{};
              node.step = ProofTrace::Step::kTrue;
              return k();
            },
            [&](const GoalAnd& g) {
              node = ProofTrace{};
              node.step = ProofTrace::Step::kAndSplit;
              node.children.resize(2);
              return prove(g.left, depth, node.children[0], [&] {
                return prove(g.right, depth, node.children[1], k);
              });
            },
            [&](const GoalImplies& g) {
              node = ProofTrace{};
              node.step = ProofTrace::Step::kImpliesIntro;
              node.added_clause = g.hypothesis;
              node.children.resize(1);
              s.program.push_back(g.hypothesis);
              bool r = prove(g.conclusion, depth, node.children[0], [&] {
                // The hypothesis scopes over this subproof only.
                s.program.pop_back();
                bool rr = k();
                if (!rr) s.program.push_back(g.hypothesis);
                return rr;
              });
              if (!r) s.program.pop_back();
              return r;
            },
            [&](const GoalForall& g) {
              Name x = s.fresh(g.hint);
              node = ProofTrace{};
              node.step = ProofTrace::Step::kForallIntro;
              node.eigen = x;
              node.eigen_type = g.type;
              node.children.resize(1);
              s.eigen.emplace_back(x, g.type);
              s.eigen_level.emplace(x, static_cast<int>(s.eigen.size()) - 1);
              HHGoal opened = open_goal(g.body, STerm::var(x, g.type));
              bool r = prove(opened, depth, node.children[0], [&] {
                s.eigen.pop_back();
                bool rr = k();
                if (!rr) s.eigen.emplace_back(x, g.type);
                return rr;
              });
              if (!r) s.eigen.pop_back();
              return r;
            },
            [&](const GoalAtom& g) {
              size_t program_size = s.program.size();
              for (size_t idx = 0; idx < program_size; ++idx) {
                HHClause clause = s.program[idx];
                size_t m = s.mark();
                StrippedClause stripped = strip_clause(s, clause);
                UStatus r = unify_atoms(g.atom, *stripped.head);
                if (r != UStatus::kOk) {
                  s.undo_to(m);
                  continue;
                }
                if (depth <= 0) {
                  s.depth_hit = true;
                  s.undo_to(m);
                  continue;
                }
                node = ProofTrace{};
                node.step = ProofTrace::Step::kBackchain;
                node.clause_index = static_cast<int>(idx);
                node.unifier.clear();
                for (const auto& [mn, mt] : stripped.metas) {
                  node.unifier.emplace_back(mn, STerm::meta(mn, mt));
                }
                node.residual = stripped.premises;
                node.children.clear();
                node.children.resize(stripped.premises.size());
                if (prove_seq(stripped.premises, 0, depth - 1, node.children, k)) {
                  return true;
                }
                s.undo_to(m);
              }
              return false;
            },
        },
        goal.node().v);
  }

  void finalize(ProofTrace& node) {
    if (node.step == ProofTrace::Step::kBackchain) {
      for (auto& [name, value] : node.unifier) {
        STerm resolved = resolve(s, value);
        value = st_normalize(resolved);
      }
      for (HHGoal& g : node.residual) g = resolve_goal(s, g);
    }
    for (ProofTrace& child : node.children) finalize(child);
  }
};

void collect_used_names_term(const STerm& t, NameSet& out) {
  std::visit(
      Overloaded{
          [&](const StConst& n) { out.insert(n.name); },
          [&](const StVar& n) { out.insert(n.name); },
          [&](const StMeta& n) { out.insert(n.name); },
          [&](const StApp& n) {
            collect_used_names_term(n.fun, out);
            collect_used_names_term(n.arg, out);
          },
          [&](const StLam& n) { collect_used_names_term(n.body, out); },
          [&](const auto&) {},
      },
      t.node().v);
}

void collect_used_names_atom(const Atom& a, NameSet& out) {
  if (a.is_hastype()) {
    collect_used_names_term(a.hastype().subject, out);
    collect_used_names_term(a.hastype().type, out);
  } else {
    collect_used_names_term(a.istype().type, out);
  }
}

void collect_used_names_goal(const HHGoal& g, NameSet& out);
void collect_used_names_clause(const HHClause& c, NameSet& out);

void collect_used_names_goal(const HHGoal& g, NameSet& out) {
  std::visit(
      Overloaded{
          [&](const GoalAtom& n) { collect_used_names_atom(n.atom, out); },
          [&](const GoalTrue&) {},
          [&](const GoalAnd& n) {
            collect_used_names_goal(n.left, out);
            collect_used_names_goal(n.right, out);
          },
          [&](const GoalImplies& n) {
            collect_used_names_clause(n.hypothesis, out);
            collect_used_names_goal(n.conclusion, out);
          },
          [&](const GoalForall& n) { collect_used_names_goal(n.body, out); },
      },
      g.node().v);
}

void collect_used_names_clause(const HHClause& c, NameSet& out) {
  std::visit(
      Overloaded{
          [&](const ClauseAtom& n) { collect_used_names_atom(n.atom, out); },
          [&](const ClauseImplies& n) {
            collect_used_names_goal(n.premise, out);
            collect_used_names_clause(n.head, out);
          },
          [&](const ClauseForall& n) { collect_used_names_clause(n.body, out); },
      },
      c.node().v);
}

}  // namespace

SolveResult solve(const HHProgram& program, const HHGoal& goal, int depth) {
  if (!goal_meta_names(goal).empty()) {
    throw std::invalid_argument("solve: goal must be metavariable-free");
  }
  Prover prover;
  prover.s.program = program.clauses;
  for (const HHClause& c : program.clauses) collect_used_names_clause(c, prover.s.used_names);
  collect_used_names_goal(goal, prover.s.used_names);

  ProofTrace root;
  bool ok = prover.prove(goal, depth, root, [] { return true; });
  SolveResult out;
  out.depth = depth;
  if (ok) {
    prover.finalize(root);
    out.status = SolveResult::Status::kProved;
    out.trace = std::move(root);
    return out;
  }
  if (prover.s.depth_hit) {
    out.status = SolveResult::Status::kExhausted;
    out.non_pattern = prover.s.non_pattern;
    return out;
  }
  if (prover.s.non_pattern) {
    out.status = SolveResult::Status::kIncomplete;
    out.non_pattern = prover.s.non_pattern;
    return out;
  }
  out.status = SolveResult::Status::kFailedNoProof;
  return out;
}

SolveResult solve_iterative(const HHProgram& program, const HHGoal& goal, int max_depth) {
  SolveResult last;
  int bound = max_depth < 1 ? 1 : max_depth;
  for (int d = 1; d <= bound; ++d) {
    last = solve(program, goal, d);
    if (last.status == SolveResult::Status::kProved ||
        last.status == SolveResult::Status::kFailedNoProof) {
      return last;
    }
  }
  return last;
}

// ---------------------------------------------------------------------------
// Standalone pattern unification

namespace {

void collect_meta_decls(const STerm& t, std::map<Name, SimpleType>& out) {
  std::visit(
      Overloaded{
          [&](const StMeta& n) { out.emplace(n.name, n.type); },
          [&](const StApp& n) {
            collect_meta_decls(n.fun, out);
            collect_meta_decls(n.arg, out);
          },
          [&](const StLam& n) { collect_meta_decls(n.body, out); },
          [&](const auto&) {},
      },
      t.node().v);
}

}  // namespace

UnifyOutcome pattern_unify(const STerm& a, const STerm& b,
                           const std::vector<std::pair<Name, SimpleType>>& eigenvars) {
  UnifyOutcome out;
  SimpleType ta = st_type_of(a);
  SimpleType tb = st_type_of(b);
  if (!(ta == tb)) {
    out.status = UnifyOutcome::Status::kClash;
    return out;
  }
  SearchState s;
  s.eigen = eigenvars;
  for (size_t i = 0; i < eigenvars.size(); ++i) {
    s.eigen_level.emplace(eigenvars[i].first, static_cast<int>(i));
    s.used_names.insert(eigenvars[i].first);
  }
  collect_used_names_term(a, s.used_names);
  collect_used_names_term(b, s.used_names);
  std::map<Name, SimpleType> decls;
  collect_meta_decls(a, decls);
  collect_meta_decls(b, decls);
  for (const auto& [n, t] : decls) {
    s.metas.emplace(n, MetaInfo{t, static_cast<int>(eigenvars.size()), std::nullopt});
  }

  std::optional<NonPatternProblem> np;
  Unifier u{s, np};
  UStatus r = u.unify(a, b);
  if (r == UStatus::kOk) {
    out.status = UnifyOutcome::Status::kUnifier;
    for (const auto& [n, t] : decls) {
      if (s.solved(n)) {
        out.unifier.emplace(n, st_normalize(resolve(s, STerm::meta(n, t))));
      }
    }
    return out;
  }
  if (r == UStatus::kNonPattern) {
    out.status = UnifyOutcome::Status::kNonPattern;
    out.problem = np;
    return out;
  }
  out.status = UnifyOutcome::Status::kClash;
  return out;
}

// ---------------------------------------------------------------------------
// Trace replay

namespace {

void collect_trace_eigens(const ProofTrace& t, NameSet& out) {
  if (t.step == ProofTrace::Step::kForallIntro) out.insert(t.eigen);
  for (const ProofTrace& c : t.children) collect_trace_eigens(c, out);
}

struct Replayer {
  std::vector<HHClause> program;
  NameSet eigen_universe;  // every eigenvariable the trace introduces
  NameSet in_scope;
  NameSet seen;
  NameSet compare_names;  // freshness pool for structural goal comparison

  bool atoms_equal_normalized(const Atom& x, const Atom& y) const {
    if (x.is_hastype() != y.is_hastype()) return false;
    try {
      if (x.is_hastype()) {
        if (!(st_type_of(x.hastype().subject) == st_type_of(y.hastype().subject))) return false;
        return alpha_equal(st_normalize(x.hastype().subject),
                           st_normalize(y.hastype().subject)) &&
               alpha_equal(st_normalize(x.hastype().type), st_normalize(y.hastype().type));
      }
      return alpha_equal(st_normalize(x.istype().type), st_normalize(y.istype().type));
    } catch (const SimpleTypeError&) {
      return false;
    }
  }

  bool value_in_scope(const STerm& value) const {
    for (const Name& v : st_free_vars(value)) {
      if (eigen_universe.count(v) && !in_scope.count(v)) return false;
    }
    return true;
  }

  // Structural equality of goals/clauses with atom terms compared in normal
  // form (recorded residuals keep substitutions unreduced).
  bool goals_equal(const HHGoal& a, const HHGoal& b) {
    return std::visit(
        Overloaded{
            [&](const GoalAtom& x) {
              const auto* y = std::get_if<GoalAtom>(&b.node().v);
              return y && atoms_equal_normalized(x.atom, y->atom);
            },
            [&](const GoalTrue&) { return std::holds_alternative<GoalTrue>(b.node().v); },
            [&](const GoalAnd& x) {
              const auto* y = std::get_if<GoalAnd>(&b.node().v);
              return y && goals_equal(x.left, y->left) && goals_equal(x.right, y->right);
            },
            [&](const GoalImplies& x) {
              const auto* y = std::get_if<GoalImplies>(&b.node().v);
              return y && clauses_equal(x.hypothesis, y->hypothesis) &&
                     goals_equal(x.conclusion, y->conclusion);
            },
            [&](const GoalForall& x) {
              const auto* y = std::get_if<GoalForall>(&b.node().v);
              if (!y || !(x.type == y->type)) return false;
              collect_used_names_goal(x.body, compare_names);
              collect_used_names_goal(y->body, compare_names);
              Name v = fresh_name(x.hint.empty() ? Name("v") : x.hint, compare_names);
              compare_names.insert(v);
              return goals_equal(open_goal(x.body, STerm::var(v, x.type)),
                                 open_goal(y->body, STerm::var(v, y->type)));
            },
        },
        a.node().v);
  }

  bool clauses_equal(const HHClause& a, const HHClause& b) {
    return std::visit(
        Overloaded{
            [&](const ClauseAtom& x) {
              const auto* y = std::get_if<ClauseAtom>(&b.node().v);
              return y && atoms_equal_normalized(x.atom, y->atom);
            },
            [&](const ClauseImplies& x) {
              const auto* y = std::get_if<ClauseImplies>(&b.node().v);
              return y && goals_equal(x.premise, y->premise) && clauses_equal(x.head, y->head);
            },
            [&](const ClauseForall& x) {
              const auto* y = std::get_if<ClauseForall>(&b.node().v);
              if (!y || !(x.type == y->type)) return false;
              collect_used_names_clause(x.body, compare_names);
              collect_used_names_clause(y->body, compare_names);
              Name v = fresh_name(x.hint.empty() ? Name("v") : x.hint, compare_names);
              compare_names.insert(v);
              return clauses_equal(open_clause(x.body, STerm::var(v, x.type)),
                                   open_clause(y->body, STerm::var(v, y->type)));
            },
        },
        a.node().v);
  }

  bool replay(const HHGoal& goal, const ProofTrace& t) {
    return std::visit(
        Overloaded{
            [&](const GoalTrue&) {
              return t.step == ProofTrace::Step::kTrue && t.children.empty();
            },
            [&](const GoalAnd& g) {
              return t.step == ProofTrace::Step::kAndSplit && t.children.size() == 2 &&
                     replay(g.left, t.children[0]) && replay(g.right, t.children[1]);
            },
            [&](const GoalImplies& g) {
              if (t.step != ProofTrace::Step::kImpliesIntro || t.children.size() != 1 ||
                  !t.added_clause || !alpha_equal(*t.added_clause, g.hypothesis)) {
                return false;
              }
              program.push_back(g.hypothesis);
              bool r = replay(g.conclusion, t.children[0]);
              program.pop_back();
              return r;
            },
            [&](const GoalForall& g) {
              if (t.step != ProofTrace::Step::kForallIntro || t.children.size() != 1) return false;
              if (t.eigen.empty() || seen.count(t.eigen)) return false;  // freshness
              if (!t.eigen_type || !(*t.eigen_type == g.type)) return false;
              seen.insert(t.eigen);
              in_scope.insert(t.eigen);
              bool r = replay(open_goal(g.body, STerm::var(t.eigen, g.type)), t.children[0]);
              in_scope.erase(t.eigen);
              return r;
            },
            [&](const GoalAtom& g) {
              if (t.step != ProofTrace::Step::kBackchain) return false;
              if (t.clause_index < 0 ||
                  static_cast<size_t>(t.clause_index) >= program.size()) {
                return false;
              }
              HHClause cur = program[static_cast<size_t>(t.clause_index)];
              size_t ui = 0;
              std::vector<HHGoal> premises;
              for (;;) {
                if (const auto* f = std::get_if<ClauseForall>(&cur.node().v)) {
                  if (ui >= t.unifier.size()) return false;
                  const STerm& value = t.unifier[ui].second;
                  try {
                    if (!(st_type_of(value) == f->type)) return false;
                  } catch (const SimpleTypeError&) {
                    return false;
                  }
                  if (!value_in_scope(value)) return false;
                  cur = open_clause(f->body, value);
                  ++ui;
                } else if (const auto* i = std::get_if<ClauseImplies>(&cur.node().v)) {
                  premises.push_back(i->premise);
                  cur = i->head;
                } else {
                  break;
                }
              }
              if (ui != t.unifier.size()) return false;
              const Atom& head = std::get<ClauseAtom>(cur.node().v).atom;
              if (!atoms_equal_normalized(head, g.atom)) return false;
              if (t.children.size() != premises.size()) return false;
              if (t.residual.size() != premises.size()) return false;
              for (size_t i = 0; i < premises.size(); ++i) {
                if (!goals_equal(t.residual[i], premises[i])) return false;
                if (!replay(premises[i], t.children[i])) return false;
              }
              return true;
            },
        },
        goal.node().v);
  }
};

}  // namespace

bool replay_trace(const HHProgram& program, const HHGoal& goal, const ProofTrace& trace) {
  Replayer r;
  r.program = program.clauses;
  collect_trace_eigens(trace, r.eigen_universe);
  try {
    return r.replay(goal, trace);
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace lfhh
