#include "mugl/ast.hpp"

#include <algorithm>

namespace mugl {

// ---------------------------------------------------------------------------
// Terms

Term var(std::string name) { return Term(TermVar{std::move(name)}); }
Term cnst(std::string name) { return Term(TermConst{std::move(name)}); }
Term app(std::string fn, std::vector<Term> args) {
  return Term(TermApp{std::move(fn), std::move(args)});
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const TermNode& x = *a.node_;
  const TermNode& y = *b.node_;
  if (x.index() != y.index()) return false;
  if (auto* v = std::get_if<TermVar>(&x)) return v->name == std::get<TermVar>(y).name;
  if (auto* c = std::get_if<TermConst>(&x)) return c->name == std::get<TermConst>(y).name;
  const auto& f = std::get<TermApp>(x);
  const auto& g = std::get<TermApp>(y);
  return f.fn == g.fn && f.args == g.args;
}

bool operator==(const Atom& a, const Atom& b) { return a.pred == b.pred && a.args == b.args; }
bool operator==(const Literal& a, const Literal& b) {
  return a.positive == b.positive && a.atom == b.atom;
}

Literal eq_lit(Term a, Term b) { return Literal{true, Atom{"=", {std::move(a), std::move(b)}}}; }
Literal pred_lit(std::string p, std::vector<Term> args) {
  return Literal{true, Atom{std::move(p), std::move(args)}};
}

// ---------------------------------------------------------------------------
// PVars

bool operator==(const PVar& a, const PVar& b) {
  return a.base == b.base && a.barred == b.barred && a.tags == b.tags;
}
bool operator<(const PVar& a, const PVar& b) {
  if (a.base != b.base) return a.base < b.base;
  if (a.barred != b.barred) return a.barred < b.barred;
  return a.tags < b.tags;
}

// ---------------------------------------------------------------------------
// Actions

Action named_act(std::string name, std::vector<SwapTag> tags) {
  return Action(NamedAct{std::move(name), std::move(tags)});
}
Action assign_act(std::string v, Term rhs) { return Action(AssignAct{std::move(v), std::move(rhs)}); }
Action random_act(std::string v) { return Action(RandomAct{std::move(v)}); }
Action ode_act(std::vector<std::pair<std::string, Term>> derivs, std::optional<MuFormula> constraint) {
  for (size_t i = 0; i < derivs.size(); ++i)
    for (size_t j = i + 1; j < derivs.size(); ++j)
      if (derivs[i].first == derivs[j].first)
        throw Error("duplicate variable in differential equation: " + derivs[i].first);
  std::shared_ptr<const MuFormula> c;
  if (constraint) c = std::make_shared<const MuFormula>(*constraint);
  return Action(OdeAct{std::move(derivs), std::move(c)});
}

bool is_ode(const Action& a) { return std::holds_alternative<OdeAct>(a.node()); }
bool is_assign(const Action& a) { return std::holds_alternative<AssignAct>(a.node()); }
bool is_random(const Action& a) { return std::holds_alternative<RandomAct>(a.node()); }

bool operator==(const Action& a, const Action& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const ActionNode& x = *a.node_;
  const ActionNode& y = *b.node_;
  if (x.index() != y.index()) return false;
  if (auto* n = std::get_if<NamedAct>(&x)) {
    const auto& m = std::get<NamedAct>(y);
    return n->name == m.name && n->tags == m.tags;
  }
  if (auto* s = std::get_if<AssignAct>(&x)) {
    const auto& t = std::get<AssignAct>(y);
    return s->var == t.var && s->rhs == t.rhs;
  }
  if (auto* r = std::get_if<RandomAct>(&x)) return r->var == std::get<RandomAct>(y).var;
  const auto& o1 = std::get<OdeAct>(x);
  const auto& o2 = std::get<OdeAct>(y);
  if (o1.derivs != o2.derivs) return false;
  if (!o1.constraint != !o2.constraint) return false;
  return !o1.constraint || *o1.constraint == *o2.constraint;
}

// ---------------------------------------------------------------------------
// Mu formulas

namespace {
template <typename N>
MuFormula mk_mu(N n) {
  return MuFormula(std::make_shared<const MuNodeBox>(MuNodeBox{MuNode(std::move(n))}));
}
}  // namespace

MuFormula mu_lit(Literal l) { return mk_mu(MuLit{std::move(l)}); }
MuFormula mu_pvar(PVar x) { return mk_mu(MuPVar{std::move(x)}); }
MuFormula mu_or(MuFormula a, MuFormula b) { return mk_mu(MuOr{std::move(a), std::move(b)}); }
MuFormula mu_and(MuFormula a, MuFormula b) { return mk_mu(MuAnd{std::move(a), std::move(b)}); }
MuFormula mu_dia(Action a, MuFormula f) { return mk_mu(MuDia{std::move(a), std::move(f)}); }
MuFormula mu_box(Action a, MuFormula f) { return mk_mu(MuBox{std::move(a), std::move(f)}); }
MuFormula mu_mu(PVar x, MuFormula body) {
  if (x.tagged()) throw Error("renamed propositional variable cannot be bound: " + x.base);
  return mk_mu(MuMu{std::move(x), std::move(body)});
}
MuFormula mu_nu(PVar x, MuFormula body) {
  if (x.tagged()) throw Error("renamed propositional variable cannot be bound: " + x.base);
  return mk_mu(MuNu{std::move(x), std::move(body)});
}

bool operator==(const MuFormula& a, const MuFormula& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const MuNode& x = a.node_->v;
  const MuNode& y = b.node_->v;
  if (x.index() != y.index()) return false;
  return std::visit(
      [&y](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        const auto& m = std::get<T>(y);
        if constexpr (std::is_same_v<T, MuLit>) return n.lit == m.lit;
        else if constexpr (std::is_same_v<T, MuPVar>) return n.var == m.var;
        else if constexpr (std::is_same_v<T, MuOr> || std::is_same_v<T, MuAnd>)
          return n.lhs == m.lhs && n.rhs == m.rhs;
        else if constexpr (std::is_same_v<T, MuDia> || std::is_same_v<T, MuBox>)
          return n.act == m.act && n.body == m.body;
        else
          return n.var == m.var && n.body == m.body;
      },
      x);
}

MuFormula bar(const MuFormula& f) {
  return std::visit(
      [](const auto& n) -> MuFormula {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, MuLit>) return mu_lit(negate(n.lit));
        else if constexpr (std::is_same_v<T, MuPVar>) return mu_pvar(bar(n.var));
        else if constexpr (std::is_same_v<T, MuOr>) return mu_and(bar(n.lhs), bar(n.rhs));
        else if constexpr (std::is_same_v<T, MuAnd>) return mu_or(bar(n.lhs), bar(n.rhs));
        else if constexpr (std::is_same_v<T, MuDia>) return mu_box(n.act, bar(n.body));
        else if constexpr (std::is_same_v<T, MuBox>) return mu_dia(n.act, bar(n.body));
        else if constexpr (std::is_same_v<T, MuMu>) return mu_nu(bar(n.var), bar(n.body));
        else return mu_mu(bar(n.var), bar(n.body));
      },
      f.node());
}

MuFormula mu_implies(MuFormula a, MuFormula b) { return mu_or(bar(a), std::move(b)); }
MuFormula mu_iff(MuFormula a, MuFormula b) {
  return mu_and(mu_implies(a, b), mu_implies(b, a));
}
MuFormula mu_true() {
  Literal p = eq_lit(cnst("0"), cnst("0"));
  return mu_or(mu_lit(p), mu_lit(negate(p)));
}
MuFormula mu_false() {
  Literal p = eq_lit(cnst("0"), cnst("0"));
  return mu_and(mu_lit(p), mu_lit(negate(p)));
}
MuFormula mu_exists(std::string x, MuFormula f) { return mu_dia(random_act(std::move(x)), std::move(f)); }
MuFormula mu_forall(std::string x, MuFormula f) { return mu_box(random_act(std::move(x)), std::move(f)); }

// ---------------------------------------------------------------------------
// Game logic

namespace {
template <typename N>
GlFormula mk_gl(N n) {
  return GlFormula(std::make_shared<const GlNodeBox>(GlNodeBox{GlNode(std::move(n))}));
}
template <typename N>
Game mk_game(N n) {
  return Game(std::make_shared<const GameNodeBox>(GameNodeBox{GameNode(std::move(n))}));
}
}  // namespace

GlFormula gl_lit(Literal l) { return mk_gl(GlLit{std::move(l)}); }
GlFormula gl_pvar(PVar x) { return mk_gl(GlPVar{std::move(x)}); }
GlFormula gl_not(GlFormula f) {
  if (auto* l = std::get_if<GlLit>(&f.node())) return gl_lit(negate(l->lit));
  if (auto* p = std::get_if<GlPVar>(&f.node())) return gl_pvar(bar(p->var));
  return mk_gl(GlNot{std::move(f)});
}
GlFormula gl_or(GlFormula a, GlFormula b) { return mk_gl(GlOr{std::move(a), std::move(b)}); }
GlFormula gl_dia(Game g, GlFormula f) { return mk_gl(GlDia{std::move(g), std::move(f)}); }

Game g_act(Action a) { return mk_game(GAct{std::move(a)}); }
Game g_test(GlFormula f) { return mk_game(GTest{std::move(f)}); }
Game g_choice(Game a, Game b) { return mk_game(GChoice{std::move(a), std::move(b)}); }
Game g_seq(Game a, Game b) { return mk_game(GSeq{std::move(a), std::move(b)}); }
Game g_star(Game g) { return mk_game(GStar{std::move(g)}); }
Game g_dual(Game g) { return mk_game(GDual{std::move(g)}); }

GlFormula gl_and(GlFormula a, GlFormula b) { return gl_not(gl_or(gl_not(a), gl_not(b))); }
GlFormula gl_implies(GlFormula a, GlFormula b) { return gl_or(gl_not(a), std::move(b)); }
GlFormula gl_iff(GlFormula a, GlFormula b) {
  return gl_and(gl_implies(a, b), gl_implies(b, a));
}
GlFormula gl_true() {
  Literal p = eq_lit(cnst("0"), cnst("0"));
  return gl_or(gl_lit(p), gl_lit(negate(p)));
}
GlFormula gl_false() {
  Literal p = eq_lit(cnst("0"), cnst("0"));
  return gl_and(gl_lit(p), gl_lit(negate(p)));
}
GlFormula gl_box(Game g, GlFormula f) { return gl_dia(g_dual(std::move(g)), std::move(f)); }
Game g_demonic_choice(Game a, Game b) {
  return g_dual(g_choice(g_dual(std::move(a)), g_dual(std::move(b))));
}
Game g_demonic_repeat(Game g) { return g_dual(g_star(g_dual(std::move(g)))); }

bool operator==(const GlFormula& a, const GlFormula& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const GlNode& x = a.node_->v;
  const GlNode& y = b.node_->v;
  if (x.index() != y.index()) return false;
  return std::visit(
      [&y](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        const auto& m = std::get<T>(y);
        if constexpr (std::is_same_v<T, GlLit>) return n.lit == m.lit;
        else if constexpr (std::is_same_v<T, GlPVar>) return n.var == m.var;
        else if constexpr (std::is_same_v<T, GlNot>) return n.body == m.body;
        else if constexpr (std::is_same_v<T, GlOr>) return n.lhs == m.lhs && n.rhs == m.rhs;
        else return n.game == m.game && n.body == m.body;
      },
      x);
}

bool operator==(const Game& a, const Game& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const GameNode& x = a.node_->v;
  const GameNode& y = b.node_->v;
  if (x.index() != y.index()) return false;
  return std::visit(
      [&y](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        const auto& m = std::get<T>(y);
        if constexpr (std::is_same_v<T, GAct>) return n.act == m.act;
        else if constexpr (std::is_same_v<T, GTest>) return n.cond == m.cond;
        else if constexpr (std::is_same_v<T, GChoice> || std::is_same_v<T, GSeq>)
          return n.lhs == m.lhs && n.rhs == m.rhs;
        else
          return n.body == m.body;
      },
      x);
}

// ---------------------------------------------------------------------------
// Signature

std::optional<int> Signature::function_arity(const std::string& f) const {
  for (const auto& [n, a] : functions)
    if (n == f) return a;
  return std::nullopt;
}
std::optional<int> Signature::predicate_arity(const std::string& p) const {
  for (const auto& [n, a] : predicates)
    if (n == p) return a;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Well-formedness

namespace {

struct WfCtx {
  const Signature* sig;
  WfResult res;

  void fail(const std::string& msg, const std::string& path) {
    if (!res.ok) return;
    res.ok = false;
    res.message = msg;
    res.path = path;
  }

  void check_term(const Term& t, const std::string& path) {
    if (!res.ok) return;
    if (auto* c = std::get_if<TermConst>(&t.node())) {
      if (sig && !sig->constants.count(c->name)) fail("unknown constant " + c->name, path);
    } else if (auto* a = std::get_if<TermApp>(&t.node())) {
      if (sig) {
        auto ar = sig->function_arity(a->fn);
        if (!ar) fail("unknown function " + a->fn, path);
        else if (*ar != static_cast<int>(a->args.size()))
          fail("arity mismatch for function " + a->fn, path);
      }
      for (const auto& arg : a->args) check_term(arg, path);
    }
  }

  void check_lit(const Literal& l, const std::string& path) {
    if (!res.ok) return;
    if (l.atom.is_equality()) {
      if (l.atom.args.size() != 2) fail("equality takes two terms", path);
    } else if (sig) {
      auto ar = sig->predicate_arity(l.atom.pred);
      if (!ar) fail("unknown predicate " + l.atom.pred, path);
      else if (*ar != static_cast<int>(l.atom.args.size()))
        fail("arity mismatch for predicate " + l.atom.pred, path);
    }
    for (const auto& t : l.atom.args) check_term(t, path);
  }

  void check_action(const Action& a, const std::string& path);
  void check(const MuFormula& f, std::vector<PVar>& binders, const std::string& path);
  void check(const GlFormula& f, const std::string& path);
  void check(const Game& g, const std::string& path);
};

void WfCtx::check_action(const Action& a, const std::string& path) {
  if (!res.ok) return;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, NamedAct>) {
          if (sig && !sig->actions.count(n.name)) fail("unknown action " + n.name, path);
        } else if constexpr (std::is_same_v<T, AssignAct>) {
          check_term(n.rhs, path);
        } else if constexpr (std::is_same_v<T, OdeAct>) {
          for (const auto& [v, t] : n.derivs) {
            (void)v;
            check_term(t, path);
          }
        }
      },
      a.node());
}

void WfCtx::check(const MuFormula& f, std::vector<PVar>& binders, const std::string& path) {
  if (!res.ok) return;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, MuLit>) {
          check_lit(n.lit, path);
        } else if constexpr (std::is_same_v<T, MuPVar>) {
          for (const auto& b : binders)
            if (n.var.base == b.base && n.var.barred != b.barred)
              fail("bar of bound variable " + b.base + " occurs under its binder", path);
        } else if constexpr (std::is_same_v<T, MuOr> || std::is_same_v<T, MuAnd>) {
          check(n.lhs, binders, path + "/L");
          check(n.rhs, binders, path + "/R");
        } else if constexpr (std::is_same_v<T, MuDia> || std::is_same_v<T, MuBox>) {
          check_action(n.act, path);
          if (auto* o = std::get_if<OdeAct>(&n.act.node()); o && o->constraint) {
            std::vector<PVar> none;
            check(*o->constraint, none, path + "/constraint");
          }
          check(n.body, binders, path + "/body");
        } else {
          if (n.var.tagged()) fail("binder over renamed variable " + n.var.base, path);
          binders.push_back(n.var);
          check(n.body, binders, path + "/body");
          binders.pop_back();
        }
      },
      f.node());
}

void WfCtx::check(const GlFormula& f, const std::string& path) {
  if (!res.ok) return;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, GlLit>) check_lit(n.lit, path);
        else if constexpr (std::is_same_v<T, GlPVar>) { /* nothing structural */ }
        else if constexpr (std::is_same_v<T, GlNot>) check(n.body, path + "/!");
        else if constexpr (std::is_same_v<T, GlOr>) {
          check(n.lhs, path + "/L");
          check(n.rhs, path + "/R");
        } else {
          check(n.game, path + "/game");
          check(n.body, path + "/body");
        }
      },
      f.node());
}

void WfCtx::check(const Game& g, const std::string& path) {
  if (!res.ok) return;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, GAct>) {
          check_action(n.act, path);
          if (auto* o = std::get_if<OdeAct>(&n.act.node()); o && o->constraint) {
            std::vector<PVar> none;
            check(*o->constraint, none, path + "/constraint");
          }
        } else if constexpr (std::is_same_v<T, GTest>) {
          check(n.cond, path + "/?");
        } else if constexpr (std::is_same_v<T, GChoice> || std::is_same_v<T, GSeq>) {
          check(n.lhs, path + "/L");
          check(n.rhs, path + "/R");
        } else {
          check(n.body, path + "/body");
        }
      },
      g.node());
}

}  // namespace

WfResult well_formed(const MuFormula& f, const Signature* sig) {
  WfCtx ctx{sig, {}};
  std::vector<PVar> binders;
  ctx.check(f, binders, "");
  return ctx.res;
}
WfResult well_formed(const GlFormula& f, const Signature* sig) {
  WfCtx ctx{sig, {}};
  ctx.check(f, "");
  return ctx.res;
}
WfResult well_formed(const Game& g, const Signature* sig) {
  WfCtx ctx{sig, {}};
  ctx.check(g, "");
  return ctx.res;
}

// ---------------------------------------------------------------------------
// Rank

long rank(const GlFormula& f) {
  return std::visit(
      [](const auto& n) -> long {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, GlLit> || std::is_same_v<T, GlPVar>) return 0;
        else if constexpr (std::is_same_v<T, GlNot>) return rank(n.body) + 1;
        else if constexpr (std::is_same_v<T, GlOr>) return rank(n.lhs) + rank(n.rhs) + 1;
        else return rank(n.game) + rank(n.body) + 1;
      },
      f.node());
}

long rank(const Game& g) {
  return std::visit(
      [](const auto& n) -> long {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, GAct>) return 0;
        else if constexpr (std::is_same_v<T, GTest>) return rank(n.cond);
        else if constexpr (std::is_same_v<T, GChoice>) return std::max(rank(n.lhs), rank(n.rhs)) + 1;
        else if constexpr (std::is_same_v<T, GSeq>) return rank(n.lhs) + rank(n.rhs) + 2;
        else return rank(n.body) + 2;  // star and dual
      },
      g.node());
}

// ---------------------------------------------------------------------------
// Free variables

namespace {

void collect_free_pvars(const MuFormula& f, std::vector<std::string>& bound, std::set<PVar>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, MuPVar>) {
          // A binder for X binds X and X-bar, tagged versions included
          // (their value tracks the base through the binder).
          if (std::find(bound.begin(), bound.end(), n.var.base) != bound.end()) return;
          out.insert(n.var);
        } else if constexpr (std::is_same_v<T, MuOr> || std::is_same_v<T, MuAnd>) {
          collect_free_pvars(n.lhs, bound, out);
          collect_free_pvars(n.rhs, bound, out);
        } else if constexpr (std::is_same_v<T, MuDia> || std::is_same_v<T, MuBox>) {
          if (auto* o = std::get_if<OdeAct>(&n.act.node()); o && o->constraint)
            collect_free_pvars(*o->constraint, bound, out);
          collect_free_pvars(n.body, bound, out);
        } else if constexpr (std::is_same_v<T, MuMu> || std::is_same_v<T, MuNu>) {
          bound.push_back(n.var.base);
          collect_free_pvars(n.body, bound, out);
          bound.pop_back();
        }
      },
      f.node());
}

void collect_free_pvars(const GlFormula& f, std::set<PVar>& out);
void collect_free_pvars(const Game& g, std::set<PVar>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, GAct>) {
          if (auto* o = std::get_if<OdeAct>(&n.act.node()); o && o->constraint) {
            std::vector<std::string> none;
            collect_free_pvars(*o->constraint, none, out);
          }
        } else if constexpr (std::is_same_v<T, GTest>) {
          collect_free_pvars(n.cond, out);
        } else if constexpr (std::is_same_v<T, GChoice> || std::is_same_v<T, GSeq>) {
          collect_free_pvars(n.lhs, out);
          collect_free_pvars(n.rhs, out);
        } else {
          collect_free_pvars(n.body, out);
        }
      },
      g.node());
}
void collect_free_pvars(const GlFormula& f, std::set<PVar>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, GlPVar>) out.insert(n.var);
        else if constexpr (std::is_same_v<T, GlNot>) collect_free_pvars(n.body, out);
        else if constexpr (std::is_same_v<T, GlOr>) {
          collect_free_pvars(n.lhs, out);
          collect_free_pvars(n.rhs, out);
        } else if constexpr (std::is_same_v<T, GlDia>) {
          collect_free_pvars(n.game, out);
          collect_free_pvars(n.body, out);
        }
      },
      f.node());
}

}  // namespace

std::set<PVar> free_pvars(const MuFormula& f) {
  std::set<PVar> out;
  std::vector<std::string> bound;
  collect_free_pvars(f, bound, out);
  return out;
}
std::set<PVar> free_pvars(const GlFormula& f) {
  std::set<PVar> out;
  collect_free_pvars(f, out);
  return out;
}
std::set<PVar> free_pvars(const Game& g) {
  std::set<PVar> out;
  collect_free_pvars(g, out);
  return out;
}

namespace {

void term_vars(const Term& t, std::set<std::string>& out) {
  if (auto* v = std::get_if<TermVar>(&t.node())) out.insert(v->name);
  else if (auto* a = std::get_if<TermApp>(&t.node()))
    for (const auto& arg : a->args) term_vars(arg, out);
}

void ovars(const Action& a, std::set<std::string>& out, bool include_tags) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, NamedAct>) {
          if (include_tags)
            for (const auto& [x, y] : n.tags) {
              out.insert(x);
              out.insert(y);
            }
        } else if constexpr (std::is_same_v<T, AssignAct>) {
          out.insert(n.var);
          term_vars(n.rhs, out);
        } else if constexpr (std::is_same_v<T, RandomAct>) {
          out.insert(n.var);
        } else {
          for (const auto& [v, t] : n.derivs) {
            out.insert(v);
            term_vars(t, out);
          }
        }
      },
      a.node());
}

void ovars_formula(const MuFormula& f, std::set<std::string>& out, bool include_tags);
void ovars_formula(const GlFormula& f, std::set<std::string>& out, bool include_tags);

void ovars_game(const Game& g, std::set<std::string>& out, bool include_tags) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, GAct>) {
          ovars(n.act, out, include_tags);
          if (auto* o = std::get_if<OdeAct>(&n.act.node()); o && o->constraint)
            ovars_formula(*o->constraint, out, include_tags);
        } else if constexpr (std::is_same_v<T, GTest>) {
          ovars_formula(n.cond, out, include_tags);
        } else if constexpr (std::is_same_v<T, GChoice> || std::is_same_v<T, GSeq>) {
          ovars_game(n.lhs, out, include_tags);
          ovars_game(n.rhs, out, include_tags);
        } else {
          ovars_game(n.body, out, include_tags);
        }
      },
      g.node());
}

void ovars_formula(const MuFormula& f, std::set<std::string>& out, bool include_tags) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, MuLit>) {
          for (const auto& t : n.lit.atom.args) term_vars(t, out);
        } else if constexpr (std::is_same_v<T, MuPVar>) {
          if (include_tags)
            for (const auto& [x, y] : n.var.tags) {
              out.insert(x);
              out.insert(y);
            }
        } else if constexpr (std::is_same_v<T, MuOr> || std::is_same_v<T, MuAnd>) {
          ovars_formula(n.lhs, out, include_tags);
          ovars_formula(n.rhs, out, include_tags);
        } else if constexpr (std::is_same_v<T, MuDia> || std::is_same_v<T, MuBox>) {
          ovars(n.act, out, include_tags);
          if (auto* o = std::get_if<OdeAct>(&n.act.node()); o && o->constraint)
            ovars_formula(*o->constraint, out, include_tags);
          ovars_formula(n.body, out, include_tags);
        } else {
          ovars_formula(n.body, out, include_tags);
        }
      },
      f.node());
}

void ovars_formula(const GlFormula& f, std::set<std::string>& out, bool include_tags) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, GlLit>) {
          for (const auto& t : n.lit.atom.args) term_vars(t, out);
        } else if constexpr (std::is_same_v<T, GlPVar>) {
          if (include_tags)
            for (const auto& [x, y] : n.var.tags) {
              out.insert(x);
              out.insert(y);
            }
        } else if constexpr (std::is_same_v<T, GlNot>) {
          ovars_formula(n.body, out, include_tags);
        } else if constexpr (std::is_same_v<T, GlOr>) {
          ovars_formula(n.lhs, out, include_tags);
          ovars_formula(n.rhs, out, include_tags);
        } else {
          ovars_game(n.game, out, include_tags);
          ovars_formula(n.body, out, include_tags);
        }
      },
      f.node());
}

}  // namespace

std::set<std::string> free_ovars(const Term& t) {
  std::set<std::string> out;
  term_vars(t, out);
  return out;
}
std::set<std::string> free_ovars(const Literal& l) {
  std::set<std::string> out;
  for (const auto& t : l.atom.args) term_vars(t, out);
  return out;
}
std::set<std::string> free_ovars(const Action& a) {
  std::set<std::string> out;
  ovars(a, out, true);
  return out;
}
std::set<std::string> free_ovars(const MuFormula& f) {
  std::set<std::string> out;
  ovars_formula(f, out, true);
  return out;
}
std::set<std::string> free_ovars(const GlFormula& f) {
  std::set<std::string> out;
  ovars_formula(f, out, true);
  return out;
}
std::set<std::string> free_ovars(const Game& g) {
  std::set<std::string> out;
  ovars_game(g, out, true);
  return out;
}

std::set<std::string> all_ovars(const MuFormula& f) { return free_ovars(f); }
std::set<std::string> all_ovars(const GlFormula& f) { return free_ovars(f); }
std::set<std::string> all_ovars(const Game& g) { return free_ovars(g); }

namespace {

void bases_rec(const MuFormula& f, std::set<std::string>& out);
void bases_rec(const GlFormula& f, std::set<std::string>& out);

void bases_game(const Game& g, std::set<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, GAct>) {
          if (auto* o = std::get_if<OdeAct>(&n.act.node()); o && o->constraint)
            bases_rec(*o->constraint, out);
        } else if constexpr (std::is_same_v<T, GTest>) bases_rec(n.cond, out);
        else if constexpr (std::is_same_v<T, GChoice> || std::is_same_v<T, GSeq>) {
          bases_game(n.lhs, out);
          bases_game(n.rhs, out);
        } else bases_game(n.body, out);
      },
      g.node());
}

void bases_rec(const MuFormula& f, std::set<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, MuPVar>) out.insert(n.var.base);
        else if constexpr (std::is_same_v<T, MuOr> || std::is_same_v<T, MuAnd>) {
          bases_rec(n.lhs, out);
          bases_rec(n.rhs, out);
        } else if constexpr (std::is_same_v<T, MuDia> || std::is_same_v<T, MuBox>) {
          if (auto* o = std::get_if<OdeAct>(&n.act.node()); o && o->constraint)
            bases_rec(*o->constraint, out);
          bases_rec(n.body, out);
        } else if constexpr (std::is_same_v<T, MuMu> || std::is_same_v<T, MuNu>) {
          out.insert(n.var.base);
          bases_rec(n.body, out);
        }
      },
      f.node());
}

void bases_rec(const GlFormula& f, std::set<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, GlPVar>) out.insert(n.var.base);
        else if constexpr (std::is_same_v<T, GlNot>) bases_rec(n.body, out);
        else if constexpr (std::is_same_v<T, GlOr>) {
          bases_rec(n.lhs, out);
          bases_rec(n.rhs, out);
        } else if constexpr (std::is_same_v<T, GlDia>) {
          bases_game(n.game, out);
          bases_rec(n.body, out);
        }
      },
      f.node());
}

}  // namespace

std::set<std::string> pvar_bases(const MuFormula& f) {
  std::set<std::string> out;
  bases_rec(f, out);
  return out;
}
std::set<std::string> pvar_bases(const GlFormula& f) {
  std::set<std::string> out;
  bases_rec(f, out);
  return out;
}
std::set<std::string> pvar_bases(const Game& g) {
  std::set<std::string> out;
  bases_game(g, out);
  return out;
}

bool mentions_action(const MuFormula& f, const std::function<bool(const Action&)>& pred) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, MuLit> || std::is_same_v<T, MuPVar>) return false;
        else if constexpr (std::is_same_v<T, MuOr> || std::is_same_v<T, MuAnd>)
          return mentions_action(n.lhs, pred) || mentions_action(n.rhs, pred);
        else if constexpr (std::is_same_v<T, MuDia> || std::is_same_v<T, MuBox>)
          return pred(n.act) || mentions_action(n.body, pred);
        else
          return mentions_action(n.body, pred);
      },
      f.node());
}

}  // namespace mugl
