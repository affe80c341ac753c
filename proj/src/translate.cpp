#include "mugl/translate.hpp"

#include <algorithm>

#include "mugl/binding.hpp"
#include "mugl/print.hpp"

namespace mugl {

// ---------------------------------------------------------------------------
// sharp

namespace {

bool base_occurs(const std::string& base, const GlFormula& f, const Game& g) {
  return pvar_bases(f).count(base) || pvar_bases(g).count(base);
}

struct Sharp {
  bool two_var = false;

  PVar fresh_for(const GlFormula& body, const Game& game) {
    if (two_var) {
      std::set<PVar> free = free_pvars(body);
      for (const auto& v : free_pvars(game)) free.insert(v);
      bool used0 = false, used1 = false;
      for (const auto& v : free) {
        if (v.base == "X0") used0 = true;
        if (v.base == "X1") used1 = true;
      }
      if (!used0) return pv("X0");
      if (!used1) return pv("X1");
      throw Error("two-variable mode: both reserved variables occur free");
    }
    for (long k = 0;; ++k) {
      std::string cand = "X" + std::to_string(k);
      if (!base_occurs(cand, body, game)) return pv(cand);
    }
  }

  // Rank must strictly decrease at every recursive call site.
  MuFormula recurse(const GlFormula& from, const GlFormula& to) {
    if (rank(to) >= rank(from))
      throw Error("sharp: rank did not decrease (" + std::to_string(rank(to)) +
                  " >= " + std::to_string(rank(from)) + ")");
    return run(to);
  }

  MuFormula run(const GlFormula& f) {
    return std::visit(
        [&](const auto& n) -> MuFormula {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, GlLit>) {
            return mu_lit(n.lit);
          } else if constexpr (std::is_same_v<T, GlPVar>) {
            return mu_pvar(n.var);
          } else if constexpr (std::is_same_v<T, GlNot>) {
            return bar(recurse(f, n.body));
          } else if constexpr (std::is_same_v<T, GlOr>) {
            return mu_or(recurse(f, n.lhs), recurse(f, n.rhs));
          } else {
            return dia(f, n.game, n.body);
          }
        },
        f.node());
  }

  MuFormula dia(const GlFormula& whole, const Game& g, const GlFormula& body) {
    return std::visit(
        [&](const auto& n) -> MuFormula {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, GAct>) {
            return mu_dia(n.act, recurse(whole, body));
          } else if constexpr (std::is_same_v<T, GTest>) {
            return mu_and(recurse(whole, n.cond), recurse(whole, body));
          } else if constexpr (std::is_same_v<T, GChoice>) {
            return mu_or(recurse(whole, gl_dia(n.lhs, body)), recurse(whole, gl_dia(n.rhs, body)));
          } else if constexpr (std::is_same_v<T, GSeq>) {
            return recurse(whole, gl_dia(n.lhs, gl_dia(n.rhs, body)));
          } else if constexpr (std::is_same_v<T, GDual>) {
            return bar(recurse(whole, gl_dia(n.body, gl_not(body))));
          } else {
            PVar x = fresh_for(body, n.body);
            GlFormula unfolded = gl_or(body, gl_dia(n.body, gl_pvar(x)));
            return mu_mu(x, recurse(whole, unfolded));
          }
        },
        g.node());
  }
};

}  // namespace

MuFormula sharp(const GlFormula& f) {
  Sharp s;
  return s.run(f);
}

MuFormula sharp_two_var(const GlFormula& f) {
  Sharp s;
  s.two_var = true;
  return s.run(f);
}

// ---------------------------------------------------------------------------
// Dictionaries and control encoding

namespace {

void collect_binders(const MuFormula& f, std::vector<PVar>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, MuOr> || std::is_same_v<T, MuAnd>) {
          collect_binders(n.lhs, out);
          collect_binders(n.rhs, out);
        } else if constexpr (std::is_same_v<T, MuDia> || std::is_same_v<T, MuBox>) {
          collect_binders(n.body, out);
        } else if constexpr (std::is_same_v<T, MuMu> || std::is_same_v<T, MuNu>) {
          out.push_back(n.var);
          collect_binders(n.body, out);
        }
      },
      f.node());
}

}  // namespace

bool TranslationDictionary::compatible_with(const MuFormula& f) const {
  std::vector<PVar> binders;
  collect_binders(f, binders);
  for (const auto& b : binders)
    if (value(b) != 0) return false;
  return true;
}

ControlEncoding ControlEncoding::build(const MuFormula& f, const TranslationDictionary* dict,
                                       std::set<std::string> avoid) {
  ControlEncoding enc;
  std::vector<PVar> tracked;
  collect_binders(f, tracked);
  if (dict) {
    for (const auto& v : free_pvars(f))
      if (dict->value(v) == 1) tracked.push_back(v);
  }
  std::set<std::string> used = all_ovars(f);
  used.insert(avoid.begin(), avoid.end());
  for (const auto& b : tracked) {
    PVar id = b;
    id.tags.clear();
    bool seen = false;
    for (const auto& p : enc.pvars) seen = seen || same_var(p, id);
    if (seen) continue;
    std::string cv = fresh_name(kControlPrefix, used);
    used.insert(cv);
    enc.pvars.push_back(id);
    enc.ctrl_vars.push_back(cv);
  }
  return enc;
}

int ControlEncoding::index_of(const PVar& v) const {
  for (size_t i = 0; i < pvars.size(); ++i)
    if (same_var(pvars[i], v)) return static_cast<int>(i);
  return -1;
}

Game ControlEncoding::set_game(const PVar& v) const {
  int idx = index_of(v);
  if (idx < 0) throw Error("control encoding does not track " + print(v));
  Game g;
  for (size_t i = 0; i < ctrl_vars.size(); ++i) {
    Game step = g_act(assign_act(ctrl_vars[i], cnst("0")));
    g = g.valid() ? g_seq(g, step) : step;
  }
  return g_seq(g, g_act(assign_act(ctrl_vars[idx], cnst("1"))));
}

GlFormula ControlEncoding::eq_formula(const PVar& v) const {
  int idx = index_of(v);
  if (idx < 0) throw Error("control encoding does not track " + print(v));
  GlFormula f;
  for (size_t i = 0; i < ctrl_vars.size(); ++i) {
    GlFormula conj =
        gl_lit(eq_lit(var(ctrl_vars[i]), cnst(i == static_cast<size_t>(idx) ? "1" : "0")));
    f = f.valid() ? gl_and(f, conj) : conj;
  }
  return f;
}

// ---------------------------------------------------------------------------
// flat

namespace {

// (? phi); (? false)^d : the game ends and Angel wins iff phi holds.
Game end_win_game(const GlFormula& cond) {
  return g_seq(g_test(cond), g_dual(g_test(gl_false())));
}

}  // namespace

Game flat_game(const MuFormula& f, const TranslationDictionary& dict, const ControlEncoding& enc) {
  return std::visit(
      [&](const auto& n) -> Game {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, MuLit>) {
          return end_win_game(gl_lit(n.lit));
        } else if constexpr (std::is_same_v<T, MuPVar>) {
          if (dict.value(n.var) == 0) return end_win_game(gl_pvar(n.var));
          if (n.var.tagged())
            throw Error("dictionary marks renamed variable " + print(n.var) + " as controlled");
          return enc.set_game(n.var);
        } else if constexpr (std::is_same_v<T, MuOr>) {
          return g_choice(flat_game(n.lhs, dict, enc), flat_game(n.rhs, dict, enc));
        } else if constexpr (std::is_same_v<T, MuAnd>) {
          return g_demonic_choice(flat_game(n.lhs, dict, enc), flat_game(n.rhs, dict, enc));
        } else if constexpr (std::is_same_v<T, MuDia>) {
          return g_seq(g_act(n.act), flat_game(n.body, dict, enc));
        } else if constexpr (std::is_same_v<T, MuBox>) {
          return g_seq(g_dual(g_act(n.act)), flat_game(n.body, dict, enc));
        } else if constexpr (std::is_same_v<T, MuMu>) {
          TranslationDictionary inner = dict.with_bound(n.var);
          Game body = flat_game(n.body, inner, enc);
          GlFormula eq = enc.eq_formula(n.var);
          return g_seq(g_seq(enc.set_game(n.var), g_star(g_seq(g_test(eq), body))),
                       g_test(gl_not(eq)));
        } else {
          TranslationDictionary inner = dict.with_bound(n.var);
          Game body = flat_game(n.body, inner, enc);
          GlFormula eq = enc.eq_formula(n.var);
          return g_seq(
              g_seq(enc.set_game(n.var), g_demonic_repeat(g_seq(g_dual(g_test(eq)), body))),
              g_dual(g_test(gl_not(eq))));
        }
      },
      f.node());
}

FlatResult flat_full(const MuFormula& f) {
  if (auto wf = well_formed(f); !wf) throw Error("flat: input not well-formed: " + wf.message);
  if (!free_pvars(f).empty())
    throw Error("flat is defined for closed formulas; use flat_game for open ones");
  FlatResult r;
  r.renamed = rename_bound_pvars_apart(f);
  r.enc = ControlEncoding::build(r.renamed);  // all-zero dictionary: binders only
  TranslationDictionary zeros;
  r.game = flat_game(r.renamed, zeros, r.enc);
  r.formula = gl_dia(r.game, gl_true());
  return r;
}

GlFormula flat(const MuFormula& f) { return flat_full(f).formula; }

// ---------------------------------------------------------------------------
// Local reduction

namespace {

std::set<std::string> free_base_names(const MuFormula& f) {
  std::set<std::string> out;
  for (const auto& v : free_pvars(f)) out.insert(v.base);
  return out;
}

MuFormula apply_elim(const ActionPredicate& lambda, const DiamondElim& elim, const Action& a,
                     const MuFormula& body) {
  MuFormula out = elim(a, body);
  if (mentions_action(out, lambda))
    throw Error("elimination result still mentions a Lambda modality");
  std::set<std::string> before = free_base_names(mu_dia(a, body));
  for (const auto& b : free_base_names(out))
    if (!before.count(b))
      throw Error("elimination introduced the free propositional variable " + b);
  return out;
}

}  // namespace

MuFormula eliminate_modalities(const MuFormula& f, const ActionPredicate& lambda,
                               const DiamondElim& elim) {
  return std::visit(
      [&](const auto& n) -> MuFormula {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, MuLit> || std::is_same_v<T, MuPVar>) {
          return f;
        } else if constexpr (std::is_same_v<T, MuOr>) {
          return mu_or(eliminate_modalities(n.lhs, lambda, elim),
                       eliminate_modalities(n.rhs, lambda, elim));
        } else if constexpr (std::is_same_v<T, MuAnd>) {
          return mu_and(eliminate_modalities(n.lhs, lambda, elim),
                        eliminate_modalities(n.rhs, lambda, elim));
        } else if constexpr (std::is_same_v<T, MuDia>) {
          MuFormula body = eliminate_modalities(n.body, lambda, elim);
          if (!lambda(n.act)) return mu_dia(n.act, body);
          return apply_elim(lambda, elim, n.act, body);
        } else if constexpr (std::is_same_v<T, MuBox>) {
          MuFormula body = eliminate_modalities(n.body, lambda, elim);
          if (!lambda(n.act)) return mu_box(n.act, body);
          // [a]phi is bar(<a> bar phi); eliminate on the diamond.
          return bar(apply_elim(lambda, elim, n.act, bar(body)));
        } else if constexpr (std::is_same_v<T, MuMu>) {
          return mu_mu(n.var, eliminate_modalities(n.body, lambda, elim));
        } else {
          return mu_nu(n.var, eliminate_modalities(n.body, lambda, elim));
        }
      },
      f.node());
}

MuFormula elim_assign_to_random(const Action& a, const MuFormula& body) {
  auto* s = std::get_if<AssignAct>(&a.node());
  if (!s) throw Error("elim_assign_to_random expects a deterministic assignment");
  std::set<std::string> avoid = all_ovars(body);
  for (const auto& v : free_ovars(s->rhs)) avoid.insert(v);
  avoid.insert(s->var);
  std::string y = fresh_ovar(avoid);
  return mu_dia(random_act(y),
                mu_and(mu_lit(eq_lit(var(y), s->rhs)), rename_ovar(body, s->var, y)));
}

MuFormula elim_random_to_ode(const Action& a, const MuFormula& body) {
  auto* r = std::get_if<RandomAct>(&a.node());
  if (!r) throw Error("elim_random_to_ode expects a nondeterministic assignment");
  Action up = ode_act({{r->var, cnst("1")}});
  Action down = ode_act({{r->var, app("neg", {cnst("1")})}});
  return mu_or(mu_dia(up, body), mu_dia(down, body));
}

Game gl_eliminate_actions(const Game& g, const ActionPredicate& lambda, const GameElim& elim) {
  return std::visit(
      [&](const auto& n) -> Game {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, GAct>) {
          return lambda(n.act) ? elim(n.act) : g;
        } else if constexpr (std::is_same_v<T, GTest>) {
          return g_test(gl_eliminate_actions(n.cond, lambda, elim));
        } else if constexpr (std::is_same_v<T, GChoice>) {
          return g_choice(gl_eliminate_actions(n.lhs, lambda, elim),
                          gl_eliminate_actions(n.rhs, lambda, elim));
        } else if constexpr (std::is_same_v<T, GSeq>) {
          return g_seq(gl_eliminate_actions(n.lhs, lambda, elim),
                       gl_eliminate_actions(n.rhs, lambda, elim));
        } else if constexpr (std::is_same_v<T, GStar>) {
          return g_star(gl_eliminate_actions(n.body, lambda, elim));
        } else {
          return g_dual(gl_eliminate_actions(n.body, lambda, elim));
        }
      },
      g.node());
}

GlFormula gl_eliminate_actions(const GlFormula& f, const ActionPredicate& lambda,
                               const GameElim& elim) {
  return std::visit(
      [&](const auto& n) -> GlFormula {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, GlLit> || std::is_same_v<T, GlPVar>) {
          return f;
        } else if constexpr (std::is_same_v<T, GlNot>) {
          return gl_not(gl_eliminate_actions(n.body, lambda, elim));
        } else if constexpr (std::is_same_v<T, GlOr>) {
          return gl_or(gl_eliminate_actions(n.lhs, lambda, elim),
                       gl_eliminate_actions(n.rhs, lambda, elim));
        } else {
          return gl_dia(gl_eliminate_actions(n.game, lambda, elim),
                        gl_eliminate_actions(n.body, lambda, elim));
        }
      },
      f.node());
}

Game game_elim_assign_to_random(const Action& a) {
  auto* s = std::get_if<AssignAct>(&a.node());
  if (!s) throw Error("game_elim_assign_to_random expects a deterministic assignment");
  return g_seq(g_act(random_act(s->var)), g_test(gl_lit(eq_lit(var(s->var), s->rhs))));
}

}  // namespace mugl
