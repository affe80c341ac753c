#include "mugl/proof.hpp"

#include <algorithm>
#include <map>

#include "mugl/binding.hpp"
#include "mugl/print.hpp"
#include "mugl/translate.hpp"

namespace mugl {

ProofLine& ProofScript::add_mu(MuFormula f, std::string rule, std::vector<int> premises) {
  lines.push_back(ProofLine{std::move(f), GlFormula(), std::move(rule), std::move(premises)});
  return lines.back();
}
ProofLine& ProofScript::add_gl(GlFormula f, std::string rule, std::vector<int> premises) {
  lines.push_back(ProofLine{MuFormula(), std::move(f), std::move(rule), std::move(premises)});
  return lines.back();
}

MuFormula conclusion_mu(const ProofScript& s) {
  if (s.lines.empty()) throw Error("empty proof");
  return s.lines.back().mu;
}
GlFormula conclusion_gl(const ProofScript& s) {
  if (s.lines.empty()) throw Error("empty proof");
  return s.lines.back().gl;
}

// ---------------------------------------------------------------------------
// Tautology oracle

namespace {

constexpr int kMaxAtoms = 24;

struct Skeleton {
  // ops: 0 atom, 1 or, 2 and, 3 not
  struct Node {
    int op;
    int a = -1, b = -1;
    int atom = -1;
    bool neg = false;
  };
  std::vector<Node> nodes;
  std::map<std::string, int> atom_ids;

  int atom(const std::string& canon, bool neg) {
    auto [it, fresh] = atom_ids.emplace(canon, static_cast<int>(atom_ids.size()));
    if (fresh && static_cast<int>(atom_ids.size()) > kMaxAtoms)
      throw Error("tautology check: more than 24 distinct atoms");
    nodes.push_back({0, -1, -1, it->second, neg});
    return static_cast<int>(nodes.size()) - 1;
  }
  int mk(int op, int a, int b = -1) {
    nodes.push_back({op, a, b, -1, false});
    return static_cast<int>(nodes.size()) - 1;
  }

  bool eval(int i, unsigned long mask) const {
    const Node& n = nodes[i];
    switch (n.op) {
      case 0: {
        bool v = (mask >> n.atom) & 1;
        return n.neg ? !v : v;
      }
      case 1: return eval(n.a, mask) || eval(n.b, mask);
      case 2: return eval(n.a, mask) && eval(n.b, mask);
      default: return !eval(n.a, mask);
    }
  }

  bool tautology(int root) const {
    unsigned long n = atom_ids.size();
    for (unsigned long mask = 0; mask < (1UL << n); ++mask)
      if (!eval(root, mask)) return false;
    return true;
  }
};

// A formula and its bar share one atom with opposite polarity; the canonical
// representative is the smaller rendering.
int mu_atom(Skeleton& sk, const MuFormula& f) {
  std::string self = print(f);
  std::string flipped = print(bar(f));
  if (flipped < self) return sk.atom(flipped, true);
  return sk.atom(self, false);
}

int build_skel(Skeleton& sk, const MuFormula& f) {
  if (auto* o = std::get_if<MuOr>(&f.node())) return sk.mk(1, build_skel(sk, o->lhs), build_skel(sk, o->rhs));
  if (auto* a = std::get_if<MuAnd>(&f.node())) return sk.mk(2, build_skel(sk, a->lhs), build_skel(sk, a->rhs));
  return mu_atom(sk, f);
}

int build_skel(Skeleton& sk, const GlFormula& f) {
  return std::visit(
      [&](const auto& n) -> int {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, GlOr>) {
          return sk.mk(1, build_skel(sk, n.lhs), build_skel(sk, n.rhs));
        } else if constexpr (std::is_same_v<T, GlNot>) {
          return sk.mk(3, build_skel(sk, n.body));
        } else if constexpr (std::is_same_v<T, GlLit>) {
          Literal pos = n.lit;
          pos.positive = true;
          return sk.atom(print(gl_lit(pos)), !n.lit.positive);
        } else if constexpr (std::is_same_v<T, GlPVar>) {
          PVar v = unbarred(n.var);
          return sk.atom(print(v), n.var.barred);
        } else {
          return sk.atom(print(f), false);
        }
      },
      f.node());
}

}  // namespace

bool is_taut(const MuFormula& f) {
  Skeleton sk;
  int root = build_skel(sk, f);
  return sk.tautology(root);
}

bool is_taut(const GlFormula& f) {
  Skeleton sk;
  int root = build_skel(sk, f);
  return sk.tautology(root);
}

// ---------------------------------------------------------------------------
// Destructuring helpers

namespace {

struct MuImpl {
  MuFormula lhs, rhs;
};

std::optional<MuImpl> as_implies(const MuFormula& f) {
  if (auto* o = std::get_if<MuOr>(&f.node())) return MuImpl{bar(o->lhs), o->rhs};
  return std::nullopt;
}

std::optional<std::pair<MuFormula, MuFormula>> as_iff(const MuFormula& f) {
  auto* a = std::get_if<MuAnd>(&f.node());
  if (!a) return std::nullopt;
  auto fwd = as_implies(a->lhs);
  if (!fwd) return std::nullopt;
  if (a->rhs != mu_implies(fwd->rhs, fwd->lhs)) return std::nullopt;
  return std::make_pair(fwd->lhs, fwd->rhs);
}

std::optional<GlFormula> gl_un_not(const GlFormula& f) {
  if (auto* n = std::get_if<GlNot>(&f.node())) return n->body;
  if (auto* l = std::get_if<GlLit>(&f.node()); l && !l->lit.positive) return gl_lit(negate(l->lit));
  if (auto* p = std::get_if<GlPVar>(&f.node()); p && p->var.barred) return gl_pvar(unbarred(p->var));
  return std::nullopt;
}

struct GlImpl {
  GlFormula lhs, rhs;
};

std::optional<GlImpl> as_implies(const GlFormula& f) {
  if (auto* o = std::get_if<GlOr>(&f.node()))
    if (auto a = gl_un_not(o->lhs)) return GlImpl{*a, o->rhs};
  return std::nullopt;
}

std::optional<std::pair<GlFormula, GlFormula>> as_iff(const GlFormula& f) {
  auto* n = std::get_if<GlNot>(&f.node());
  if (!n) return std::nullopt;
  auto* o = std::get_if<GlOr>(&n->body.node());
  if (!o) return std::nullopt;
  auto p = gl_un_not(o->lhs);
  auto q = gl_un_not(o->rhs);
  if (!p || !q) return std::nullopt;
  auto fwd = as_implies(*p);
  if (!fwd) return std::nullopt;
  if (*q != gl_implies(fwd->rhs, fwd->lhs)) return std::nullopt;
  return std::make_pair(fwd->lhs, fwd->rhs);
}

// ---------------------------------------------------------------------------
// Equality axioms

void one_replacements(const Term& in, const Term& s, const Term& t, std::vector<Term>& out) {
  if (in == s) out.push_back(t);
  if (auto* a = std::get_if<TermApp>(&in.node())) {
    for (size_t i = 0; i < a->args.size(); ++i) {
      std::vector<Term> sub;
      one_replacements(a->args[i], s, t, sub);
      for (const auto& r : sub) {
        std::vector<Term> args = a->args;
        args[i] = r;
        out.push_back(app(a->fn, std::move(args)));
      }
    }
  }
}

bool single_replacement(const Literal& chi, const Term& s, const Term& t, const Literal& chi2) {
  if (chi.positive != chi2.positive || chi.atom.pred != chi2.atom.pred) return false;
  if (chi.atom.args.size() != chi2.atom.args.size()) return false;
  for (size_t i = 0; i < chi.atom.args.size(); ++i) {
    std::vector<Term> reps;
    one_replacements(chi.atom.args[i], s, t, reps);
    for (const auto& r : reps) {
      Literal cand = chi;
      cand.atom.args[i] = r;
      if (cand == chi2) return true;
    }
  }
  return false;
}

std::optional<Literal> as_literal(const MuFormula& f) {
  if (auto* l = std::get_if<MuLit>(&f.node())) return l->lit;
  return std::nullopt;
}
std::optional<Literal> as_literal(const GlFormula& f) {
  if (auto* l = std::get_if<GlLit>(&f.node())) return l->lit;
  return std::nullopt;
}

bool reflexivity(const Literal& l) {
  return l.positive && l.atom.is_equality() && l.atom.args[0] == l.atom.args[1];
}

template <typename F>
bool equality_axiom(const F& f) {
  if (auto l = as_literal(f); l && reflexivity(*l)) return true;
  auto imp = as_implies(f);
  if (!imp) return false;
  auto eq = as_literal(imp->lhs);
  if (!eq || !eq->positive || !eq->atom.is_equality()) return false;
  Term s = eq->atom.args[0], t = eq->atom.args[1];
  auto iff = as_iff(imp->rhs);
  if (!iff) return false;
  auto chi = as_literal(iff->first);
  auto chi2 = as_literal(iff->second);
  if (!chi || !chi2) return false;
  return single_replacement(*chi, s, t, *chi2) || single_replacement(*chi2, s, t, *chi);
}

}  // namespace

bool is_equality_axiom(const MuFormula& f) { return equality_axiom(f); }
bool is_equality_axiom(const GlFormula& f) { return equality_axiom(f); }

// ---------------------------------------------------------------------------
// Checker

namespace {

bool control_name(const std::string& v) {
  std::string pfx = kControlPrefix;
  if (v.size() <= pfx.size() || v.compare(0, pfx.size(), pfx) != 0) return false;
  return std::all_of(v.begin() + pfx.size(), v.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

bool const01(const Term& t) {
  auto* c = std::get_if<TermConst>(&t.node());
  return c && (c->name == "0" || c->name == "1");
}

// Candidate witnesses for the exI matcher: subterms of `got` sitting at the
// positions where `pat` has the variable x.
void theta_candidates_term(const Term& pat, const Term& got, const std::string& x,
                           std::vector<Term>& out) {
  if (auto* v = std::get_if<TermVar>(&pat.node()); v && v->name == x) {
    out.push_back(got);
    return;
  }
  auto* pa = std::get_if<TermApp>(&pat.node());
  auto* ga = std::get_if<TermApp>(&got.node());
  if (pa && ga && pa->fn == ga->fn && pa->args.size() == ga->args.size())
    for (size_t i = 0; i < pa->args.size(); ++i)
      theta_candidates_term(pa->args[i], ga->args[i], x, out);
}

void theta_candidates_action(const Action& pat, const Action& got, const std::string& x,
                             std::vector<Term>& out) {
  auto* ps = std::get_if<AssignAct>(&pat.node());
  auto* gs = std::get_if<AssignAct>(&got.node());
  if (ps && gs) theta_candidates_term(ps->rhs, gs->rhs, x, out);
  auto* po = std::get_if<OdeAct>(&pat.node());
  auto* go = std::get_if<OdeAct>(&got.node());
  if (po && go && po->derivs.size() == go->derivs.size())
    for (size_t i = 0; i < po->derivs.size(); ++i)
      theta_candidates_term(po->derivs[i].second, go->derivs[i].second, x, out);
}

void theta_candidates(const MuFormula& pat, const MuFormula& got, const std::string& x,
                      std::vector<Term>& out) {
  if (pat.node().index() != got.node().index()) return;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        const auto& m = std::get<T>(got.node());
        if constexpr (std::is_same_v<T, MuLit>) {
          if (n.lit.atom.args.size() == m.lit.atom.args.size())
            for (size_t i = 0; i < n.lit.atom.args.size(); ++i)
              theta_candidates_term(n.lit.atom.args[i], m.lit.atom.args[i], x, out);
        } else if constexpr (std::is_same_v<T, MuOr> || std::is_same_v<T, MuAnd>) {
          theta_candidates(n.lhs, m.lhs, x, out);
          theta_candidates(n.rhs, m.rhs, x, out);
        } else if constexpr (std::is_same_v<T, MuDia> || std::is_same_v<T, MuBox>) {
          theta_candidates_action(n.act, m.act, x, out);
          theta_candidates(n.body, m.body, x, out);
        } else if constexpr (std::is_same_v<T, MuMu> || std::is_same_v<T, MuNu>) {
          theta_candidates(n.body, m.body, x, out);
        }
      },
      pat.node());
}

void theta_candidates(const GlFormula& pat, const GlFormula& got, const std::string& x,
                      std::vector<Term>& out);

void theta_candidates(const Game& pat, const Game& got, const std::string& x,
                      std::vector<Term>& out) {
  if (pat.node().index() != got.node().index()) return;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        const auto& m = std::get<T>(got.node());
        if constexpr (std::is_same_v<T, GAct>) {
          theta_candidates_action(n.act, m.act, x, out);
        } else if constexpr (std::is_same_v<T, GTest>) {
          theta_candidates(n.cond, m.cond, x, out);
        } else if constexpr (std::is_same_v<T, GChoice> || std::is_same_v<T, GSeq>) {
          theta_candidates(n.lhs, m.lhs, x, out);
          theta_candidates(n.rhs, m.rhs, x, out);
        } else {
          theta_candidates(n.body, m.body, x, out);
        }
      },
      pat.node());
}

void theta_candidates(const GlFormula& pat, const GlFormula& got, const std::string& x,
                      std::vector<Term>& out) {
  if (pat.node().index() != got.node().index()) return;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        const auto& m = std::get<T>(got.node());
        if constexpr (std::is_same_v<T, GlLit>) {
          if (n.lit.atom.args.size() == m.lit.atom.args.size())
            for (size_t i = 0; i < n.lit.atom.args.size(); ++i)
              theta_candidates_term(n.lit.atom.args[i], m.lit.atom.args[i], x, out);
        } else if constexpr (std::is_same_v<T, GlNot>) {
          theta_candidates(n.body, m.body, x, out);
        } else if constexpr (std::is_same_v<T, GlOr>) {
          theta_candidates(n.lhs, m.lhs, x, out);
          theta_candidates(n.rhs, m.rhs, x, out);
        } else if constexpr (std::is_same_v<T, GlDia>) {
          theta_candidates(n.game, m.game, x, out);
          theta_candidates(n.body, m.body, x, out);
        }
      },
      pat.node());
}

struct Checker {
  const ProofScript& script;
  const Theory* theory;

  std::string fail(const std::string& msg) { return msg; }

  std::optional<std::string> premise_ok(int cur, const std::vector<int>& prem, size_t need) {
    if (prem.size() != need) return "expected " + std::to_string(need) + " premise reference(s)";
    for (int p : prem) {
      if (p < 1) return "premise reference below 1";
      if (p > cur) return "forward reference to line " + std::to_string(p);
      if (p == cur) return "line refers to itself";
    }
    return std::nullopt;
  }

  // ---- mu-calculus lines -------------------------------------------------

  std::string check_mu(int idx1, const ProofLine& ln) {
    const MuFormula& f = ln.mu;
    if (auto wf = well_formed(f); !wf) return "formula not well-formed: " + wf.message;
    const std::string& r = ln.rule;

    auto line_f = [&](int k) -> const MuFormula& { return script.lines[k - 1].mu; };

    try {
      if (r == "taut") return is_taut(f) ? "" : "not a propositional tautology";
      if (r == "eq") return is_equality_axiom(f) ? "" : "not an equality axiom";
      if (r == "ax.mu") {
        auto iff = as_iff(f);
        if (!iff) return "axiom mu: expected an equivalence";
        for (auto [muside, other] : {std::pair(iff->first, iff->second), std::pair(iff->second, iff->first)}) {
          auto* m = std::get_if<MuMu>(&muside.node());
          if (!m) continue;
          try {
            if (subst_pvar(m->body, m->var, muside) == other) return "";
          } catch (const Error&) {
            return "axiom mu: side condition violated (" + print(m->var) + " not free for the fixpoint in the body)";
          }
        }
        return "axiom mu: not an unfolding instance";
      }
      if (r == "ax.exI") {
        auto imp = as_implies(f);
        if (!imp) return "axiom exI: expected an implication";
        auto* d = std::get_if<MuDia>(&imp->rhs.node());
        if (!d) return "axiom exI: conclusion must be a diamond";
        auto* rnd = std::get_if<RandomAct>(&d->act.node());
        if (!rnd) return "axiom exI: diamond must be a nondeterministic assignment";
        std::vector<Term> cands;
        theta_candidates(d->body, imp->lhs, rnd->var, cands);
        cands.push_back(var(rnd->var));
        for (const auto& th : cands) {
          try {
            if (subst_term_ovar(d->body, rnd->var, th) == imp->lhs) return "";
          } catch (const Error&) {
          }
        }
        return "axiom exI: antecedent is not a substitution instance";
      }
      if (r == "ax.V") {
        auto imp = as_implies(f);
        if (!imp) return "axiom V: expected an implication";
        auto* d = std::get_if<MuDia>(&imp->lhs.node());
        if (!d) return "axiom V: antecedent must be a diamond";
        auto* rnd = std::get_if<RandomAct>(&d->act.node());
        if (!rnd) return "axiom V: diamond must be a nondeterministic assignment";
        if (d->body != imp->rhs) return "axiom V: body and conclusion differ";
        if (free_ovars(d->body).count(rnd->var))
          return "axiom V: side condition violated (" + rnd->var + " free in the body)";
        if (!free_pvars(d->body).empty())
          return "axiom V: side condition violated (free propositional variable reads every state variable)";
        return "";
      }
      if (r == "ax.assign") {
        auto iff = as_iff(f);
        if (!iff) return "axiom :=: expected an equivalence";
        for (auto [lhs, rhs] : {std::pair(iff->first, iff->second), std::pair(iff->second, iff->first)}) {
          auto* d = std::get_if<MuDia>(&lhs.node());
          if (!d) continue;
          auto* asg = std::get_if<AssignAct>(&d->act.node());
          if (!asg) continue;
          auto* e = std::get_if<MuDia>(&rhs.node());
          if (!e) continue;
          auto* rnd = std::get_if<RandomAct>(&e->act.node());
          if (!rnd) continue;
          auto* body = std::get_if<MuAnd>(&e->body.node());
          if (!body) continue;
          auto eq = as_literal(body->lhs);
          if (!eq || !eq->positive || !eq->atom.is_equality()) continue;
          const std::string& y = rnd->var;
          if (eq->atom.args[0] != var(y) || eq->atom.args[1] != asg->rhs) continue;
          if (all_ovars(d->body).count(y) || free_ovars(asg->rhs).count(y))
            return "axiom :=: side condition violated (" + y + " occurs in the formula or term)";
          if (body->rhs != rename_ovar(d->body, asg->var, y)) continue;
          return "";
        }
        return "axiom :=: not an instance";
      }
      if (r == "ax.ctrl") {
        auto iff = as_iff(f);
        if (!iff) return "axiom ctrl: expected an equivalence";
        for (auto [plain, wrapped] : {std::pair(iff->first, iff->second), std::pair(iff->second, iff->first)}) {
          MuFormula cur = wrapped;
          std::set<std::string> assigned;
          while (auto* d = std::get_if<MuDia>(&cur.node())) {
            auto* asg = std::get_if<AssignAct>(&d->act.node());
            if (!asg || !control_name(asg->var) || !const01(asg->rhs)) break;
            assigned.insert(asg->var);
            cur = d->body;
          }
          if (assigned.empty() || cur != plain) continue;
          std::set<std::string> used = all_ovars(plain);
          bool clash = std::any_of(assigned.begin(), assigned.end(),
                                   [&](const std::string& v) { return used.count(v) != 0; });
          if (clash) return "axiom ctrl: formula mentions a control variable";
          return "";
        }
        return "axiom ctrl: not a control-prefix equivalence";
      }
      if (r == "hyp") {
        if (!theory || theory->calculus != Calculus::Mu) return "hyp: no theory supplied";
        if (ln.premises.size() != 1) return "hyp: expected one index";
        int k = ln.premises[0];
        if (k < 1 || k > theory->size()) return "hyp: index out of range";
        return theory->mu_formulas[k - 1] == f ? "" : "hyp: formula differs from theory entry";
      }
      if (r == "mp") {
        if (auto e = premise_ok(idx1, ln.premises, 2)) return *e;
        int i = ln.premises[0], j = ln.premises[1];
        if (line_f(i) == mu_implies(line_f(j), f)) return "";
        if (line_f(j) == mu_implies(line_f(i), f)) return "";
        return "mp: premises do not yield this conclusion";
      }
      if (r == "Ma") {
        if (auto e = premise_ok(idx1, ln.premises, 1)) return *e;
        auto imp = as_implies(f);
        if (!imp) return "Ma: expected an implication";
        auto* dl = std::get_if<MuDia>(&imp->lhs.node());
        auto* dr = std::get_if<MuDia>(&imp->rhs.node());
        if (!dl || !dr || dl->act != dr->act) return "Ma: expected diamonds of one atomic action";
        if (line_f(ln.premises[0]) != mu_implies(dl->body, dr->body))
          return "Ma: premise is not the body implication";
        return "";
      }
      if (r == "FPmu") {
        if (auto e = premise_ok(idx1, ln.premises, 1)) return *e;
        auto imp = as_implies(f);
        if (!imp) return "FPmu: expected an implication";
        auto* m = std::get_if<MuMu>(&imp->lhs.node());
        if (!m) return "FPmu: antecedent must be a least fixpoint";
        MuFormula expected;
        try {
          expected = mu_implies(subst_pvar(m->body, m->var, imp->rhs), imp->rhs);
        } catch (const Error& e2) {
          return std::string("FPmu: side condition violated (") + e2.what() + ")";
        }
        if (line_f(ln.premises[0]) != expected) return "FPmu: premise is not the unfolded implication";
        return "";
      }
      if (r == "rename") {
        if (auto e = premise_ok(idx1, ln.premises, 1)) return *e;
        if (!alpha_eq(f, line_f(ln.premises[0])))
          return "rename: not a bound-variable renaming of the premise";
        return "";
      }
    } catch (const Error& e) {
      return e.what();
    }
    return "unknown justification '" + r + "'";
  }

  // ---- game logic lines ---------------------------------------------------

  std::string check_gl(int idx1, const ProofLine& ln) {
    const GlFormula& f = ln.gl;
    if (!pvar_bases(f).empty())
      return "game logic derivations may not contain propositional variables";
    if (auto wf = well_formed(f); !wf) return "formula not well-formed: " + wf.message;
    const std::string& r = ln.rule;

    auto line_f = [&](int k) -> const GlFormula& { return script.lines[k - 1].gl; };

    try {
      if (r == "taut") return is_taut(f) ? "" : "not a propositional tautology";
      if (r == "eq") return is_equality_axiom(f) ? "" : "not an equality axiom";

      auto game_axiom = [&](auto match) -> std::string {
        auto iff = as_iff(f);
        if (!iff) return "expected an equivalence";
        if (match(iff->first, iff->second) || match(iff->second, iff->first)) return "";
        return "not an instance";
      };

      if (r == "ax.test")
        return game_axiom([](const GlFormula& a, const GlFormula& b) {
          auto* d = std::get_if<GlDia>(&a.node());
          if (!d) return false;
          auto* t = std::get_if<GTest>(&d->game.node());
          return t && b == gl_and(t->cond, d->body);
        });
      if (r == "ax.choice")
        return game_axiom([](const GlFormula& a, const GlFormula& b) {
          auto* d = std::get_if<GlDia>(&a.node());
          if (!d) return false;
          auto* c = std::get_if<GChoice>(&d->game.node());
          return c && b == gl_or(gl_dia(c->lhs, d->body), gl_dia(c->rhs, d->body));
        });
      if (r == "ax.comp")
        return game_axiom([](const GlFormula& a, const GlFormula& b) {
          auto* d = std::get_if<GlDia>(&a.node());
          if (!d) return false;
          auto* s = std::get_if<GSeq>(&d->game.node());
          return s && b == gl_dia(s->lhs, gl_dia(s->rhs, d->body));
        });
      if (r == "ax.star")
        return game_axiom([&](const GlFormula& a, const GlFormula& b) {
          auto* d = std::get_if<GlDia>(&a.node());
          if (!d) return false;
          auto* s = std::get_if<GStar>(&d->game.node());
          return s && b == gl_or(d->body, gl_dia(s->body, a));
        });
      if (r == "ax.dual")
        return game_axiom([](const GlFormula& a, const GlFormula& b) {
          auto* d = std::get_if<GlDia>(&a.node());
          if (!d) return false;
          auto* u = std::get_if<GDual>(&d->game.node());
          return u && b == gl_not(gl_dia(u->body, gl_not(d->body)));
        });
      if (r == "ax.exI") {
        auto imp = as_implies(f);
        if (!imp) return "axiom exI: expected an implication";
        auto* d = std::get_if<GlDia>(&imp->rhs.node());
        if (!d) return "axiom exI: conclusion must be a diamond";
        auto* act = std::get_if<GAct>(&d->game.node());
        if (!act) return "axiom exI: conclusion must be an atomic-game diamond";
        auto* rnd = std::get_if<RandomAct>(&act->act.node());
        if (!rnd) return "axiom exI: expected a nondeterministic assignment";
        std::vector<Term> cands;
        theta_candidates(d->body, imp->lhs, rnd->var, cands);
        cands.push_back(var(rnd->var));
        for (const auto& th : cands) {
          try {
            if (subst_term_ovar(d->body, rnd->var, th) == imp->lhs) return "";
          } catch (const Error&) {
          }
        }
        return "axiom exI: antecedent is not a substitution instance";
      }
      if (r == "ax.V") {
        auto imp = as_implies(f);
        if (!imp) return "axiom V: expected an implication";
        auto* d = std::get_if<GlDia>(&imp->lhs.node());
        if (!d) return "axiom V: antecedent must be a diamond";
        auto* act = std::get_if<GAct>(&d->game.node());
        if (!act) return "axiom V: antecedent must be an atomic-game diamond";
        auto* rnd = std::get_if<RandomAct>(&act->act.node());
        if (!rnd) return "axiom V: expected a nondeterministic assignment";
        if (d->body != imp->rhs) return "axiom V: body and conclusion differ";
        if (free_ovars(d->body).count(rnd->var))
          return "axiom V: side condition violated (" + rnd->var + " free in the body)";
        return "";
      }
      if (r == "ax.assign") {
        auto iff = as_iff(f);
        if (!iff) return "axiom :=: expected an equivalence";
        for (auto [lhs, rhs] : {std::pair(iff->first, iff->second), std::pair(iff->second, iff->first)}) {
          auto* d = std::get_if<GlDia>(&lhs.node());
          if (!d) continue;
          auto* dact = std::get_if<GAct>(&d->game.node());
          if (!dact) continue;
          auto* asg = std::get_if<AssignAct>(&dact->act.node());
          if (!asg) continue;
          auto* e = std::get_if<GlDia>(&rhs.node());
          if (!e) continue;
          auto* eact = std::get_if<GAct>(&e->game.node());
          if (!eact) continue;
          auto* rnd = std::get_if<RandomAct>(&eact->act.node());
          if (!rnd) continue;
          // body: y = theta & phi^x_y
          auto* nn = std::get_if<GlNot>(&e->body.node());
          if (!nn) continue;
          auto* oo = std::get_if<GlOr>(&nn->body.node());
          if (!oo) continue;
          auto a1 = gl_un_not(oo->lhs);
          auto a2 = gl_un_not(oo->rhs);
          if (!a1 || !a2) continue;
          auto eq = as_literal(*a1);
          if (!eq || !eq->positive || !eq->atom.is_equality()) continue;
          const std::string& y = rnd->var;
          if (eq->atom.args[0] != var(y) || eq->atom.args[1] != asg->rhs) continue;
          if (all_ovars(d->body).count(y) || free_ovars(asg->rhs).count(y))
            return "axiom :=: side condition violated (" + y + " occurs in the formula or term)";
          if (*a2 != rename_ovar(d->body, asg->var, y)) continue;
          return "";
        }
        return "axiom :=: not an instance";
      }
      if (r == "ax.ctrl") {
        auto iff = as_iff(f);
        if (!iff) return "axiom ctrl: expected an equivalence";
        for (auto [plain, wrapped] : {std::pair(iff->first, iff->second), std::pair(iff->second, iff->first)}) {
          auto* d = std::get_if<GlDia>(&wrapped.node());
          if (!d || d->body != plain) continue;
          std::set<std::string> assigned;
          std::function<bool(const Game&)> collect = [&](const Game& g) -> bool {
            if (auto* s = std::get_if<GSeq>(&g.node())) return collect(s->lhs) && collect(s->rhs);
            if (auto* a = std::get_if<GAct>(&g.node())) {
              auto* asg = std::get_if<AssignAct>(&a->act.node());
              if (!asg || !control_name(asg->var) || !const01(asg->rhs)) return false;
              assigned.insert(asg->var);
              return true;
            }
            return false;
          };
          if (!collect(d->game) || assigned.empty()) continue;
          std::set<std::string> used = all_ovars(plain);
          bool clash = std::any_of(assigned.begin(), assigned.end(),
                                   [&](const std::string& v) { return used.count(v) != 0; });
          if (clash) return "axiom ctrl: formula mentions a control variable";
          return "";
        }
        return "axiom ctrl: not a control-prefix equivalence";
      }
      if (r == "hyp") {
        if (!theory || theory->calculus != Calculus::Gl) return "hyp: no theory supplied";
        if (ln.premises.size() != 1) return "hyp: expected one index";
        int k = ln.premises[0];
        if (k < 1 || k > theory->size()) return "hyp: index out of range";
        return theory->gl_formulas[k - 1] == f ? "" : "hyp: formula differs from theory entry";
      }
      if (r == "mp") {
        if (auto e = premise_ok(idx1, ln.premises, 2)) return *e;
        int i = ln.premises[0], j = ln.premises[1];
        if (line_f(i) == gl_implies(line_f(j), f)) return "";
        if (line_f(j) == gl_implies(line_f(i), f)) return "";
        return "mp: premises do not yield this conclusion";
      }
      if (r == "M") {
        if (auto e = premise_ok(idx1, ln.premises, 1)) return *e;
        auto imp = as_implies(f);
        if (!imp) return "M: expected an implication";
        auto* dl = std::get_if<GlDia>(&imp->lhs.node());
        auto* dr = std::get_if<GlDia>(&imp->rhs.node());
        if (!dl || !dr || dl->game != dr->game) return "M: expected diamonds of one game";
        if (line_f(ln.premises[0]) != gl_implies(dl->body, dr->body))
          return "M: premise is not the body implication";
        return "";
      }
      if (r == "FPstar") {
        if (auto e = premise_ok(idx1, ln.premises, 1)) return *e;
        auto imp = as_implies(f);
        if (!imp) return "FPstar: expected an implication";
        auto* d = std::get_if<GlDia>(&imp->lhs.node());
        if (!d) return "FPstar: antecedent must be a repetition diamond";
        auto* s = std::get_if<GStar>(&d->game.node());
        if (!s) return "FPstar: antecedent must be a repetition diamond";
        GlFormula expected =
            gl_implies(gl_or(d->body, gl_dia(s->body, imp->rhs)), imp->rhs);
        if (line_f(ln.premises[0]) != expected) return "FPstar: premise is not the unfolding implication";
        return "";
      }
      if (r == "Ma") return "Ma is a mu-calculus rule; use M";
      if (r == "rename") return "rename applies to mu-calculus scripts only";
      if (r == "FPmu" || r == "ax.mu") return r + " is a mu-calculus rule";
    } catch (const Error& e) {
      return e.what();
    }
    return "unknown justification '" + r + "'";
  }
};

}  // namespace

ProofVerdict check_proof(const ProofScript& script, const Theory* theory) {
  ProofVerdict v;
  v.lines.resize(script.lines.size());
  Checker ck{script, theory};
  for (size_t i = 0; i < script.lines.size(); ++i) {
    std::string err = script.calculus == Calculus::Mu
                          ? ck.check_mu(static_cast<int>(i) + 1, script.lines[i])
                          : ck.check_gl(static_cast<int>(i) + 1, script.lines[i]);
    if (!err.empty()) {
      v.lines[i] = {false, err};
      if (v.ok) {
        v.ok = false;
        v.first_failure = static_cast<int>(i) + 1;
      }
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Fragment builder and derived rules

namespace {

struct GlBuilder {
  ProofScript s{Calculus::Gl, {}};

  int add(GlFormula f, std::string rule, std::vector<int> prem = {}) {
    s.add_gl(std::move(f), std::move(rule), std::move(prem));
    return s.size();
  }
  const GlFormula& at(int i) const { return s.lines[i - 1].gl; }

  // taut line  P1 -> (P2 -> ... -> target)  followed by mp with each premise
  int combine(const std::vector<int>& premises, const GlFormula& target) {
    std::vector<GlFormula> steps{target};
    for (auto it = premises.rbegin(); it != premises.rend(); ++it)
      steps.push_back(gl_implies(at(*it), steps.back()));
    int cur = add(steps.back(), "taut");
    for (size_t k = 0; k < premises.size(); ++k)
      cur = add(steps[premises.size() - 1 - k], "mp", {cur, premises[k]});
    return cur;
  }
};

struct MuBuilder {
  ProofScript s{Calculus::Mu, {}};

  int add(MuFormula f, std::string rule, std::vector<int> prem = {}) {
    s.add_mu(std::move(f), std::move(rule), std::move(prem));
    return s.size();
  }
  const MuFormula& at(int i) const { return s.lines[i - 1].mu; }

  int combine(const std::vector<int>& premises, const MuFormula& target) {
    std::vector<MuFormula> steps{target};
    for (auto it = premises.rbegin(); it != premises.rend(); ++it)
      steps.push_back(mu_implies(at(*it), steps.back()));
    int cur = add(steps.back(), "taut");
    for (size_t k = 0; k < premises.size(); ++k)
      cur = add(steps[premises.size() - 1 - k], "mp", {cur, premises[k]});
    return cur;
  }
};

}  // namespace

ProofScript expand_intersection(const Game& g1, const Game& g2, const GlFormula& phi) {
  GlBuilder b;
  Game dg1 = g_dual(g1), dg2 = g_dual(g2);
  Game inter = g_dual(g_choice(dg1, dg2));
  GlFormula nphi = gl_not(phi);
  GlFormula nnphi = gl_not(nphi);

  int l1 = b.add(gl_iff(gl_dia(inter, phi), gl_not(gl_dia(g_choice(dg1, dg2), nphi))), "ax.dual");
  int l2 = b.add(gl_iff(gl_dia(g_choice(dg1, dg2), nphi),
                        gl_or(gl_dia(dg1, nphi), gl_dia(dg2, nphi))),
                 "ax.choice");
  int l3 = b.add(gl_iff(gl_dia(dg1, nphi), gl_not(gl_dia(g1, nnphi))), "ax.dual");
  int l4 = b.add(gl_iff(gl_dia(dg2, nphi), gl_not(gl_dia(g2, nnphi))), "ax.dual");
  int l5 = b.add(gl_implies(nnphi, phi), "taut");
  int l6 = b.add(gl_implies(phi, nnphi), "taut");
  int l7 = b.add(gl_implies(gl_dia(g1, nnphi), gl_dia(g1, phi)), "M", {l5});
  int l8 = b.add(gl_implies(gl_dia(g1, phi), gl_dia(g1, nnphi)), "M", {l6});
  int l9 = b.add(gl_implies(gl_dia(g2, nnphi), gl_dia(g2, phi)), "M", {l5});
  int l10 = b.add(gl_implies(gl_dia(g2, phi), gl_dia(g2, nnphi)), "M", {l6});
  b.combine({l1, l2, l3, l4, l7, l8, l9, l10},
            gl_iff(gl_dia(inter, phi), gl_and(gl_dia(g1, phi), gl_dia(g2, phi))));
  return b.s;
}

ProofScript expand_dual_composition(const Game& g1, const Game& g2, const GlFormula& phi) {
  GlBuilder b;
  GlFormula nphi = gl_not(phi);
  Game dg1 = g_dual(g1), dg2 = g_dual(g2);
  GlFormula inner = gl_dia(dg2, phi);

  int l1 = b.add(gl_iff(gl_dia(g_dual(g_seq(g1, g2)), phi), gl_not(gl_dia(g_seq(g1, g2), nphi))),
                 "ax.dual");
  int l2 = b.add(gl_iff(gl_dia(g_seq(g1, g2), nphi), gl_dia(g1, gl_dia(g2, nphi))), "ax.comp");
  int l3 = b.add(gl_iff(gl_dia(g_seq(dg1, dg2), phi), gl_dia(dg1, inner)), "ax.comp");
  int l4 = b.add(gl_iff(gl_dia(dg1, inner), gl_not(gl_dia(g1, gl_not(inner)))), "ax.dual");
  int l5 = b.add(gl_iff(inner, gl_not(gl_dia(g2, nphi))), "ax.dual");
  int l6 = b.add(gl_implies(b.at(l5), gl_implies(gl_not(inner), gl_dia(g2, nphi))), "taut");
  int l7 = b.add(gl_implies(gl_not(inner), gl_dia(g2, nphi)), "mp", {l6, l5});
  int l8 = b.add(gl_implies(b.at(l5), gl_implies(gl_dia(g2, nphi), gl_not(inner))), "taut");
  int l9 = b.add(gl_implies(gl_dia(g2, nphi), gl_not(inner)), "mp", {l8, l5});
  int l10 = b.add(gl_implies(gl_dia(g1, gl_not(inner)), gl_dia(g1, gl_dia(g2, nphi))), "M", {l7});
  int l11 = b.add(gl_implies(gl_dia(g1, gl_dia(g2, nphi)), gl_dia(g1, gl_not(inner))), "M", {l9});
  b.combine({l1, l2, l3, l4, l10, l11},
            gl_iff(gl_dia(g_dual(g_seq(g1, g2)), phi), gl_dia(g_seq(dg1, dg2), phi)));
  return b.s;
}

namespace {

MuImpl require_implication(const ProofScript& s) {
  if (s.calculus != Calculus::Mu) throw Error("expected a mu-calculus premise script");
  auto imp = as_implies(conclusion_mu(s));
  if (!imp) throw Error("premise script must conclude with an implication");
  return *imp;
}

}  // namespace

ProofScript expand_mu_mono(const ProofScript& premise, const PVar& x) {
  MuImpl imp = require_implication(premise);
  MuFormula target = mu_mu(x, imp.rhs);
  ProofScript out = subst_proof(premise, x, target);
  MuBuilder b;
  b.s = std::move(out);
  int p = b.s.size();
  MuFormula psi_sub = subst_pvar(imp.lhs, x, target);
  MuFormula phi_sub = subst_pvar(imp.rhs, x, target);
  int a = b.add(mu_iff(phi_sub, target), "ax.mu");
  int c = b.combine({p, a}, mu_implies(psi_sub, target));
  b.add(mu_implies(mu_mu(x, imp.lhs), target), "FPmu", {c});
  return b.s;
}

ProofScript expand_nu_mono(const ProofScript& premise, const PVar& x) {
  MuImpl imp = require_implication(premise);
  MuBuilder b;
  b.s = premise;
  int p = b.s.size();
  // contrapositive of the premise
  int c = b.combine({p}, mu_implies(bar(imp.rhs), bar(imp.lhs)));
  (void)c;
  ProofScript flipped = expand_mu_mono(b.s, bar(x));
  MuBuilder b2;
  b2.s = std::move(flipped);
  int q = b2.s.size();
  b2.combine({q}, mu_implies(mu_nu(x, imp.lhs), mu_nu(x, imp.rhs)));
  return b2.s;
}

ProofScript expand_box_mono(const ProofScript& premise, const Action& a) {
  MuImpl imp = require_implication(premise);
  MuBuilder b;
  b.s = premise;
  int p = b.s.size();
  int c = b.combine({p}, mu_implies(bar(imp.rhs), bar(imp.lhs)));
  int m = b.add(mu_implies(mu_dia(a, bar(imp.rhs)), mu_dia(a, bar(imp.lhs))), "Ma", {c});
  b.combine({m}, mu_implies(mu_box(a, imp.lhs), mu_box(a, imp.rhs)));
  return b.s;
}

ProofScript expand_replace_in_loop(const ProofScript& premises, const Game& g1, const Game& g2,
                                   const GlFormula& rho) {
  if (premises.calculus != Calculus::Gl) throw Error("expected game logic premises");
  if (premises.size() < 2) throw Error("replace-in-loop needs the two equivalence premises");
  GlBuilder b;
  b.s = premises;
  int p1 = b.s.size() - 1;
  int p2 = b.s.size();

  GlFormula s2 = gl_dia(g_star(g2), rho);
  GlFormula s1 = gl_dia(g_star(g1), rho);
  if (b.at(p1) != gl_iff(gl_dia(g1, s2), gl_dia(g2, s2)))
    throw Error("replace-in-loop: penultimate premise must be <g1><g2*>rho <-> <g2><g2*>rho");
  if (b.at(p2) != gl_iff(gl_dia(g2, s1), gl_dia(g1, s1)))
    throw Error("replace-in-loop: last premise must be <g2><g1*>rho <-> <g1><g1*>rho");

  int a1 = b.add(gl_iff(s2, gl_or(rho, gl_dia(g2, s2))), "ax.star");
  int c1 = b.combine({p1, a1}, gl_implies(gl_or(rho, gl_dia(g1, s2)), s2));
  int f1 = b.add(gl_implies(s1, s2), "FPstar", {c1});
  int a2 = b.add(gl_iff(s1, gl_or(rho, gl_dia(g1, s1))), "ax.star");
  int c2 = b.combine({p2, a2}, gl_implies(gl_or(rho, gl_dia(g2, s1)), s1));
  int f2 = b.add(gl_implies(s2, s1), "FPstar", {c2});
  b.combine({f1, f2}, gl_iff(s1, s2));
  return b.s;
}

// ---------------------------------------------------------------------------
// Substitution over proofs

ProofScript subst_proof(const ProofScript& script, const PVar& x, const MuFormula& psi) {
  if (script.calculus != Calculus::Mu) throw Error("subst_proof applies to mu-calculus scripts");
  ProofScript out;
  out.calculus = Calculus::Mu;
  for (size_t i = 0; i < script.lines.size(); ++i) {
    const ProofLine& ln = script.lines[i];
    if (!free_for(x, psi, ln.mu))
      throw Error("substitution not free at line " + std::to_string(i + 1));
    MuFormula sub;
    try {
      sub = subst_pvar(ln.mu, x, psi);
    } catch (const Error& e) {
      throw Error("substitution fails at line " + std::to_string(i + 1) + ": " + e.what());
    }
    out.add_mu(std::move(sub), ln.rule, ln.premises);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sharp proof translation

namespace {

struct SharpTranslator {
  const ProofScript& in;
  MuBuilder b;
  std::vector<int> line_map;  // input line (0-based) -> output line (1-based)

  // Monotonicity over an arbitrary game, by recursion on its rank:
  // from line p : sharp(rho1) -> sharp(rho2) derive
  // sharp(<g>rho1) -> sharp(<g>rho2).
  int gen_mono(const Game& g, const GlFormula& rho1, const GlFormula& rho2, int p) {
    return std::visit(
        [&](const auto& n) -> int {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, GAct>) {
            return b.add(mu_implies(mu_dia(n.act, sharp(rho1)), mu_dia(n.act, sharp(rho2))), "Ma",
                         {p});
          } else if constexpr (std::is_same_v<T, GTest>) {
            return b.combine({p}, mu_implies(sharp(gl_dia(g, rho1)), sharp(gl_dia(g, rho2))));
          } else if constexpr (std::is_same_v<T, GChoice>) {
            int j1 = gen_mono(n.lhs, rho1, rho2, p);
            int j2 = gen_mono(n.rhs, rho1, rho2, p);
            return b.combine({j1, j2},
                             mu_implies(sharp(gl_dia(g, rho1)), sharp(gl_dia(g, rho2))));
          } else if constexpr (std::is_same_v<T, GSeq>) {
            int j = gen_mono(n.rhs, rho1, rho2, p);
            return gen_mono(n.lhs, gl_dia(n.rhs, rho1), gl_dia(n.rhs, rho2), j);
          } else if constexpr (std::is_same_v<T, GDual>) {
            int q = b.combine({p}, mu_implies(bar(sharp(rho2)), bar(sharp(rho1))));
            int r = gen_mono(n.body, gl_not(rho2), gl_not(rho1), q);
            return b.combine({r}, mu_implies(sharp(gl_dia(g, rho1)), sharp(gl_dia(g, rho2))));
          } else {
            MuFormula m1 = sharp(gl_dia(g, rho1));
            MuFormula m2 = sharp(gl_dia(g, rho2));
            auto* mu1 = std::get_if<MuMu>(&m1.node());
            auto* mu2 = std::get_if<MuMu>(&m2.node());
            if (!mu1 || !mu2 || mu1->var != mu2->var)
              throw Error("sharp translation: fixpoint variables diverged");
            auto* b1 = std::get_if<MuOr>(&mu1->body.node());
            auto* b2 = std::get_if<MuOr>(&mu2->body.node());
            if (!b1 || !b2 || b1->rhs != b2->rhs)
              throw Error("sharp translation: repetition bodies diverged");
            MuFormula w = subst_pvar(b1->rhs, mu1->var, m2);
            int a1 = b.add(mu_iff(subst_pvar(mu2->body, mu2->var, m2), m2), "ax.mu");
            int c1 = b.combine({p}, mu_implies(mu_or(b1->lhs, w), mu_or(b2->lhs, w)));
            int c2 = b.combine({c1, a1}, mu_implies(mu_or(b1->lhs, w), m2));
            return b.add(mu_implies(m1, m2), "FPmu", {c2});
          }
        },
        g.node());
  }

  void run() {
    line_map.assign(in.lines.size(), 0);
    for (size_t i = 0; i < in.lines.size(); ++i) {
      const ProofLine& ln = in.lines[i];
      MuFormula sf = sharp(ln.gl);
      const std::string& r = ln.rule;

      auto mapped = [&](int k) { return line_map[k - 1]; };

      if (r == "taut" || r == "eq" || r == "ax.exI" || r == "ax.V" || r == "ax.assign" ||
          r == "ax.ctrl") {
        line_map[i] = b.add(sf, r);
      } else if (r == "ax.test" || r == "ax.choice" || r == "ax.comp" || r == "ax.dual") {
        line_map[i] = b.add(sf, "taut");
      } else if (r == "ax.star") {
        auto iff = as_iff(sf);
        if (!iff) throw Error("sharp translation: malformed star axiom line");
        MuFormula muside = iff->first, other = iff->second;
        if (!std::holds_alternative<MuMu>(muside.node())) std::swap(muside, other);
        auto* m = std::get_if<MuMu>(&muside.node());
        if (!m) throw Error("sharp translation: star axiom has no fixpoint side");
        MuFormula canonical = subst_pvar(m->body, m->var, muside);
        if (canonical == other) {
          line_map[i] = b.add(sf, "ax.mu");
        } else {
          int k = b.add(mu_iff(muside == iff->first ? muside : canonical,
                               muside == iff->first ? canonical : muside),
                        "ax.mu");
          line_map[i] = b.add(sf, "rename", {k});
        }
      } else if (r == "hyp") {
        line_map[i] = b.add(sf, "hyp", ln.premises);
      } else if (r == "mp") {
        line_map[i] = b.add(sf, "mp", {mapped(ln.premises[0]), mapped(ln.premises[1])});
      } else if (r == "M") {
        auto imp = as_implies(ln.gl);
        if (!imp) throw Error("sharp translation: M line is not an implication");
        auto* dl = std::get_if<GlDia>(&imp->lhs.node());
        auto* dr = std::get_if<GlDia>(&imp->rhs.node());
        if (!dl || !dr || dl->game != dr->game)
          throw Error("sharp translation: M line diamonds mismatch");
        line_map[i] = gen_mono(dl->game, dl->body, dr->body, mapped(ln.premises[0]));
      } else if (r == "FPstar") {
        auto imp = as_implies(sf);
        if (!imp) throw Error("sharp translation: FPstar line is not an implication");
        auto* m = std::get_if<MuMu>(&imp->lhs.node());
        if (!m) throw Error("sharp translation: FPstar antecedent is not a fixpoint");
        MuFormula expected = mu_implies(subst_pvar(m->body, m->var, imp->rhs), imp->rhs);
        int prem = mapped(ln.premises[0]);
        if (b.at(prem) != expected) prem = b.add(expected, "rename", {prem});
        line_map[i] = b.add(sf, "FPmu", {prem});
      } else {
        throw Error("sharp translation: unsupported justification '" + r + "'");
      }
    }
  }
};

}  // namespace

ProofScript translate_proof_sharp(const ProofScript& gl_script, const Theory* theory,
                                  Theory* translated_theory) {
  if (gl_script.calculus != Calculus::Gl)
    throw Error("translate_proof_sharp expects a game logic script");
  if (translated_theory) {
    translated_theory->calculus = Calculus::Mu;
    translated_theory->mu_formulas.clear();
    if (theory)
      for (const auto& f : theory->gl_formulas) translated_theory->mu_formulas.push_back(sharp(f));
  }
  SharpTranslator tr{gl_script, {}, {}};
  tr.run();
  return tr.b.s;
}

}  // namespace mugl
