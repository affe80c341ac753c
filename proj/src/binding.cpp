#include "mugl/binding.hpp"

#include <algorithm>

namespace mugl {

namespace {

std::set<std::string> free_pvar_bases(const MuFormula& f) {
  std::set<std::string> out;
  for (const auto& v : free_pvars(f)) out.insert(v.base);
  return out;
}

bool free_for_rec(const PVar& x, const std::set<std::string>& bad_binders, const MuFormula& phi,
                  std::vector<std::string>& binders, std::string* offender) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, MuLit>) {
          return true;
        } else if constexpr (std::is_same_v<T, MuPVar>) {
          if (n.var.base != x.base) return true;
          for (const auto& b : binders)
            if (bad_binders.count(b)) {
              if (offender) *offender = b;
              return false;
            }
          return true;
        } else if constexpr (std::is_same_v<T, MuOr> || std::is_same_v<T, MuAnd>) {
          return free_for_rec(x, bad_binders, n.lhs, binders, offender) &&
                 free_for_rec(x, bad_binders, n.rhs, binders, offender);
        } else if constexpr (std::is_same_v<T, MuDia> || std::is_same_v<T, MuBox>) {
          return free_for_rec(x, bad_binders, n.body, binders, offender);
        } else {
          if (n.var.base == x.base) return true;  // occurrences below are bound
          binders.push_back(n.var.base);
          bool ok = free_for_rec(x, bad_binders, n.body, binders, offender);
          binders.pop_back();
          return ok;
        }
      },
      phi.node());
}

}  // namespace

bool free_for(const PVar& x, const MuFormula& psi, const MuFormula& phi) {
  std::vector<std::string> binders;
  return free_for_rec(x, free_pvar_bases(psi), phi, binders, nullptr);
}

namespace {

MuFormula subst_rec(const MuFormula& phi, const PVar& x, const MuFormula& psi) {
  return std::visit(
      [&](const auto& n) -> MuFormula {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, MuLit>) {
          return phi;
        } else if constexpr (std::is_same_v<T, MuPVar>) {
          if (n.var.base != x.base) return phi;
          MuFormula repl = apply_tags(psi, n.var.tags);
          return n.var.barred == x.barred ? repl : bar(repl);
        } else if constexpr (std::is_same_v<T, MuOr>) {
          return mu_or(subst_rec(n.lhs, x, psi), subst_rec(n.rhs, x, psi));
        } else if constexpr (std::is_same_v<T, MuAnd>) {
          return mu_and(subst_rec(n.lhs, x, psi), subst_rec(n.rhs, x, psi));
        } else if constexpr (std::is_same_v<T, MuDia>) {
          return mu_dia(n.act, subst_rec(n.body, x, psi));
        } else if constexpr (std::is_same_v<T, MuBox>) {
          return mu_box(n.act, subst_rec(n.body, x, psi));
        } else if constexpr (std::is_same_v<T, MuMu>) {
          if (n.var.base == x.base) return phi;
          return mu_mu(n.var, subst_rec(n.body, x, psi));
        } else {
          if (n.var.base == x.base) return phi;
          return mu_nu(n.var, subst_rec(n.body, x, psi));
        }
      },
      phi.node());
}

}  // namespace

MuFormula subst_pvar(const MuFormula& phi, const PVar& x, const MuFormula& psi) {
  if (x.tagged()) throw Error("cannot substitute for renamed variable " + x.base);
  std::vector<std::string> binders;
  std::string offender;
  if (!free_for_rec(x, free_pvar_bases(psi), phi, binders, &offender))
    throw Error("substitution capture: free variable of replacement is bound by binder over " +
                offender);
  return subst_rec(phi, x, psi);
}

GlFormula subst_pvar(const GlFormula& phi, const PVar& x, const GlFormula& psi) {
  if (x.tagged()) throw Error("cannot substitute for renamed variable " + x.base);
  return std::visit(
      [&](const auto& n) -> GlFormula {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, GlLit>) {
          return phi;
        } else if constexpr (std::is_same_v<T, GlPVar>) {
          if (n.var.base != x.base) return phi;
          GlFormula repl = apply_tags(psi, n.var.tags);
          return n.var.barred == x.barred ? repl : gl_not(repl);
        } else if constexpr (std::is_same_v<T, GlNot>) {
          return gl_not(subst_pvar(n.body, x, psi));
        } else if constexpr (std::is_same_v<T, GlOr>) {
          return gl_or(subst_pvar(n.lhs, x, psi), subst_pvar(n.rhs, x, psi));
        } else {
          return gl_dia(subst_pvar(n.game, x, psi), subst_pvar(n.body, x, psi));
        }
      },
      phi.node());
}

Game subst_pvar(const Game& g, const PVar& x, const GlFormula& psi) {
  return std::visit(
      [&](const auto& n) -> Game {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, GAct>) return g;
        else if constexpr (std::is_same_v<T, GTest>) return g_test(subst_pvar(n.cond, x, psi));
        else if constexpr (std::is_same_v<T, GChoice>)
          return g_choice(subst_pvar(n.lhs, x, psi), subst_pvar(n.rhs, x, psi));
        else if constexpr (std::is_same_v<T, GSeq>)
          return g_seq(subst_pvar(n.lhs, x, psi), subst_pvar(n.rhs, x, psi));
        else if constexpr (std::is_same_v<T, GStar>)
          return g_star(subst_pvar(n.body, x, psi));
        else
          return g_dual(subst_pvar(n.body, x, psi));
      },
      g.node());
}

MuFormula subst_pvar_renaming(const MuFormula& phi, const PVar& x, const MuFormula& psi) {
  std::set<std::string> avoid = free_pvar_bases(psi);
  return subst_pvar(rename_bound_pvars_apart(phi, avoid), x, psi);
}

// ---------------------------------------------------------------------------
// Renaming

namespace {

std::vector<SwapTag> push_tag(std::vector<SwapTag> tags, SwapTag t) {
  // Normalized swap (min,max); adjacent equal swaps cancel.
  if (t.first > t.second) std::swap(t.first, t.second);
  if (!tags.empty() && tags.back() == t) tags.pop_back();
  else tags.push_back(std::move(t));
  return tags;
}

std::string swap_name(const std::string& n, const std::string& x, const std::string& y) {
  if (n == x) return y;
  if (n == y) return x;
  return n;
}

MuFormula rename_mu(const MuFormula& f, const std::string& x, const std::string& y,
                    std::vector<std::string>& bound);

Action rename_action(const Action& a, const std::string& x, const std::string& y) {
  return std::visit(
      [&](const auto& n) -> Action {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, NamedAct>) {
          return named_act(n.name, push_tag(n.tags, {x, y}));
        } else if constexpr (std::is_same_v<T, AssignAct>) {
          return assign_act(swap_name(n.var, x, y), rename_ovar(n.rhs, x, y));
        } else if constexpr (std::is_same_v<T, RandomAct>) {
          return random_act(swap_name(n.var, x, y));
        } else {
          std::vector<std::pair<std::string, Term>> derivs;
          derivs.reserve(n.derivs.size());
          for (const auto& [v, t] : n.derivs)
            derivs.emplace_back(swap_name(v, x, y), rename_ovar(t, x, y));
          std::optional<MuFormula> c;
          if (n.constraint) c = rename_ovar(*n.constraint, x, y);
          return ode_act(std::move(derivs), std::move(c));
        }
      },
      a.node());
}

MuFormula rename_mu(const MuFormula& f, const std::string& x, const std::string& y,
                    std::vector<std::string>& bound) {
  return std::visit(
      [&](const auto& n) -> MuFormula {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, MuLit>) {
          return mu_lit(rename_ovar(n.lit, x, y));
        } else if constexpr (std::is_same_v<T, MuPVar>) {
          if (std::find(bound.begin(), bound.end(), n.var.base) != bound.end()) return f;
          PVar v = n.var;
          v.tags = push_tag(v.tags, {x, y});
          return mu_pvar(v);
        } else if constexpr (std::is_same_v<T, MuOr>) {
          return mu_or(rename_mu(n.lhs, x, y, bound), rename_mu(n.rhs, x, y, bound));
        } else if constexpr (std::is_same_v<T, MuAnd>) {
          return mu_and(rename_mu(n.lhs, x, y, bound), rename_mu(n.rhs, x, y, bound));
        } else if constexpr (std::is_same_v<T, MuDia>) {
          return mu_dia(rename_action(n.act, x, y), rename_mu(n.body, x, y, bound));
        } else if constexpr (std::is_same_v<T, MuBox>) {
          return mu_box(rename_action(n.act, x, y), rename_mu(n.body, x, y, bound));
        } else if constexpr (std::is_same_v<T, MuMu>) {
          bound.push_back(n.var.base);
          MuFormula body = rename_mu(n.body, x, y, bound);
          bound.pop_back();
          return mu_mu(n.var, std::move(body));
        } else {
          bound.push_back(n.var.base);
          MuFormula body = rename_mu(n.body, x, y, bound);
          bound.pop_back();
          return mu_nu(n.var, std::move(body));
        }
      },
      f.node());
}

GlFormula rename_gl(const GlFormula& f, const std::string& x, const std::string& y);

Game rename_game(const Game& g, const std::string& x, const std::string& y) {
  return std::visit(
      [&](const auto& n) -> Game {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, GAct>) return g_act(rename_action(n.act, x, y));
        else if constexpr (std::is_same_v<T, GTest>) return g_test(rename_gl(n.cond, x, y));
        else if constexpr (std::is_same_v<T, GChoice>)
          return g_choice(rename_game(n.lhs, x, y), rename_game(n.rhs, x, y));
        else if constexpr (std::is_same_v<T, GSeq>)
          return g_seq(rename_game(n.lhs, x, y), rename_game(n.rhs, x, y));
        else if constexpr (std::is_same_v<T, GStar>)
          return g_star(rename_game(n.body, x, y));
        else
          return g_dual(rename_game(n.body, x, y));
      },
      g.node());
}

GlFormula rename_gl(const GlFormula& f, const std::string& x, const std::string& y) {
  return std::visit(
      [&](const auto& n) -> GlFormula {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, GlLit>) {
          return gl_lit(rename_ovar(n.lit, x, y));
        } else if constexpr (std::is_same_v<T, GlPVar>) {
          PVar v = n.var;
          v.tags = push_tag(v.tags, {x, y});
          return gl_pvar(v);
        } else if constexpr (std::is_same_v<T, GlNot>) {
          return gl_not(rename_gl(n.body, x, y));
        } else if constexpr (std::is_same_v<T, GlOr>) {
          return gl_or(rename_gl(n.lhs, x, y), rename_gl(n.rhs, x, y));
        } else {
          return gl_dia(rename_game(n.game, x, y), rename_gl(n.body, x, y));
        }
      },
      f.node());
}

}  // namespace

Term rename_ovar(const Term& t, const std::string& x, const std::string& y) {
  if (x == y) return t;
  return std::visit(
      [&](const auto& n) -> Term {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, TermVar>) return var(swap_name(n.name, x, y));
        else if constexpr (std::is_same_v<T, TermConst>) return t;
        else {
          std::vector<Term> args;
          args.reserve(n.args.size());
          for (const auto& a : n.args) args.push_back(rename_ovar(a, x, y));
          return app(n.fn, std::move(args));
        }
      },
      t.node());
}

Literal rename_ovar(const Literal& l, const std::string& x, const std::string& y) {
  if (x == y) return l;
  Literal out = l;
  for (auto& t : out.atom.args) t = rename_ovar(t, x, y);
  return out;
}

Action rename_ovar(const Action& a, const std::string& x, const std::string& y) {
  if (x == y) return a;
  return rename_action(a, x, y);
}

MuFormula rename_ovar(const MuFormula& f, const std::string& x, const std::string& y) {
  if (x == y) return f;
  std::vector<std::string> bound;
  return rename_mu(f, x, y, bound);
}

GlFormula rename_ovar(const GlFormula& f, const std::string& x, const std::string& y) {
  if (x == y) return f;
  return rename_gl(f, x, y);
}

Game rename_ovar(const Game& g, const std::string& x, const std::string& y) {
  if (x == y) return g;
  return rename_game(g, x, y);
}

MuFormula apply_tags(const MuFormula& f, const std::vector<SwapTag>& tags) {
  MuFormula out = f;
  for (const auto& [x, y] : tags) out = rename_ovar(out, x, y);
  return out;
}
GlFormula apply_tags(const GlFormula& f, const std::vector<SwapTag>& tags) {
  GlFormula out = f;
  for (const auto& [x, y] : tags) out = rename_ovar(out, x, y);
  return out;
}

// ---------------------------------------------------------------------------
// Fresh names, apartness renaming

std::string fresh_name(const std::string& prefix, const std::set<std::string>& avoid) {
  for (long k = 0;; ++k) {
    std::string cand = prefix + std::to_string(k);
    if (!avoid.count(cand)) return cand;
  }
}

namespace {

MuFormula apart_rec(const MuFormula& f, std::vector<std::pair<std::string, std::string>>& env,
                    std::set<std::string>& used, const std::string& prefix) {
  return std::visit(
      [&](const auto& n) -> MuFormula {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, MuLit>) {
          return f;
        } else if constexpr (std::is_same_v<T, MuPVar>) {
          for (auto it = env.rbegin(); it != env.rend(); ++it)
            if (it->first == n.var.base) {
              PVar v = n.var;
              v.base = it->second;
              return mu_pvar(v);
            }
          return f;
        } else if constexpr (std::is_same_v<T, MuOr>) {
          return mu_or(apart_rec(n.lhs, env, used, prefix), apart_rec(n.rhs, env, used, prefix));
        } else if constexpr (std::is_same_v<T, MuAnd>) {
          return mu_and(apart_rec(n.lhs, env, used, prefix), apart_rec(n.rhs, env, used, prefix));
        } else if constexpr (std::is_same_v<T, MuDia>) {
          return mu_dia(n.act, apart_rec(n.body, env, used, prefix));
        } else if constexpr (std::is_same_v<T, MuBox>) {
          return mu_box(n.act, apart_rec(n.body, env, used, prefix));
        } else {
          std::string nb = fresh_name(prefix, used);
          used.insert(nb);
          env.emplace_back(n.var.base, nb);
          MuFormula body = apart_rec(n.body, env, used, prefix);
          env.pop_back();
          PVar v = n.var;
          v.base = nb;
          if constexpr (std::is_same_v<T, MuMu>) return mu_mu(v, std::move(body));
          else return mu_nu(v, std::move(body));
        }
      },
      f.node());
}

}  // namespace

MuFormula rename_bound_pvars_apart(const MuFormula& f, std::set<std::string> avoid,
                                   const std::string& prefix) {
  std::set<std::string> used = pvar_bases(f);
  used.insert(avoid.begin(), avoid.end());
  std::vector<std::pair<std::string, std::string>> env;
  return apart_rec(f, env, used, prefix);
}

// ---------------------------------------------------------------------------
// Alpha equivalence on bound pvars

namespace {

bool alpha_rec(const MuFormula& a, const MuFormula& b,
               std::vector<std::pair<std::string, std::string>>& env) {
  const MuNode& x = a.node();
  const MuNode& y = b.node();
  if (x.index() != y.index()) return false;
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        const auto& m = std::get<T>(y);
        if constexpr (std::is_same_v<T, MuLit>) {
          return n.lit == m.lit;
        } else if constexpr (std::is_same_v<T, MuPVar>) {
          if (n.var.barred != m.var.barred || n.var.tags != m.var.tags) return false;
          for (auto it = env.rbegin(); it != env.rend(); ++it) {
            if (it->first == n.var.base || it->second == m.var.base)
              return it->first == n.var.base && it->second == m.var.base;
          }
          return n.var.base == m.var.base;
        } else if constexpr (std::is_same_v<T, MuOr> || std::is_same_v<T, MuAnd>) {
          return alpha_rec(n.lhs, m.lhs, env) && alpha_rec(n.rhs, m.rhs, env);
        } else if constexpr (std::is_same_v<T, MuDia> || std::is_same_v<T, MuBox>) {
          return n.act == m.act && alpha_rec(n.body, m.body, env);
        } else {
          if (n.var.barred != m.var.barred) return false;
          env.emplace_back(n.var.base, m.var.base);
          bool ok = alpha_rec(n.body, m.body, env);
          env.pop_back();
          return ok;
        }
      },
      x);
}

}  // namespace

bool alpha_eq(const MuFormula& a, const MuFormula& b) {
  std::vector<std::pair<std::string, std::string>> env;
  return alpha_rec(a, b, env);
}

// ---------------------------------------------------------------------------
// Term-for-ovar substitution (exI matcher support)

namespace {

Term subst_in_term(const Term& t, const std::string& x, const Term& theta) {
  return std::visit(
      [&](const auto& n) -> Term {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, TermVar>) return n.name == x ? theta : t;
        else if constexpr (std::is_same_v<T, TermConst>) return t;
        else {
          std::vector<Term> args;
          args.reserve(n.args.size());
          for (const auto& a : n.args) args.push_back(subst_in_term(a, x, theta));
          return app(n.fn, std::move(args));
        }
      },
      t.node());
}

Literal subst_in_lit(const Literal& l, const std::string& x, const Term& theta) {
  Literal out = l;
  for (auto& t : out.atom.args) t = subst_in_term(t, x, theta);
  return out;
}

struct TermSubst {
  std::string x;
  Term theta;
  std::set<std::string> theta_vars;

  [[noreturn]] void fail(const std::string& why) const {
    throw Error("term substitution for " + x + " inadmissible: " + why);
  }

  MuFormula apply(const MuFormula& f) const {
    if (!free_ovars(f).count(x)) return f;
    return std::visit(
        [&](const auto& n) -> MuFormula {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, MuLit>) {
            return mu_lit(subst_in_lit(n.lit, x, theta));
          } else if constexpr (std::is_same_v<T, MuPVar>) {
            return f;
          } else if constexpr (std::is_same_v<T, MuOr>) {
            return mu_or(apply(n.lhs), apply(n.rhs));
          } else if constexpr (std::is_same_v<T, MuAnd>) {
            return mu_and(apply(n.lhs), apply(n.rhs));
          } else if constexpr (std::is_same_v<T, MuDia>) {
            return mu_dia(apply_act(n.act, n.body), apply_body(n.act, n.body));
          } else if constexpr (std::is_same_v<T, MuBox>) {
            return mu_box(apply_act(n.act, n.body), apply_body(n.act, n.body));
          } else if constexpr (std::is_same_v<T, MuMu>) {
            return mu_mu(n.var, apply(n.body));
          } else {
            return mu_nu(n.var, apply(n.body));
          }
        },
        f.node());
  }

  GlFormula apply(const GlFormula& f) const {
    if (!free_ovars(f).count(x)) return f;
    return std::visit(
        [&](const auto& n) -> GlFormula {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, GlLit>) return gl_lit(subst_in_lit(n.lit, x, theta));
          else if constexpr (std::is_same_v<T, GlPVar>) return f;
          else if constexpr (std::is_same_v<T, GlNot>) return gl_not(apply(n.body));
          else if constexpr (std::is_same_v<T, GlOr>) return gl_or(apply(n.lhs), apply(n.rhs));
          else {
            // Games may change state mid-play; only substitute through games
            // that bind neither x nor a variable of theta (tests aside, they
            // are state-free and recurse on their own).
            std::set<std::string> bound, named;
            game_effects(n.game, bound, named);
            if (bound.count(x)) fail("game rebinds " + x);
            for (const auto& v : theta_vars)
              if (bound.count(v)) fail("game assigns term variable " + v);
            if (!named.empty()) fail("named action " + *named.begin() + " in scope");
            return gl_dia(apply_game(n.game), apply(n.body));
          }
        },
        f.node());
  }

  static void game_effects(const Game& g, std::set<std::string>& bound,
                           std::set<std::string>& named) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, GAct>) {
            if (auto* s = std::get_if<AssignAct>(&n.act.node())) bound.insert(s->var);
            else if (auto* r = std::get_if<RandomAct>(&n.act.node())) bound.insert(r->var);
            else if (auto* o = std::get_if<OdeAct>(&n.act.node()))
              for (const auto& [v, t] : o->derivs) {
                (void)t;
                bound.insert(v);
              }
            else named.insert(std::get<NamedAct>(n.act.node()).name);
          } else if constexpr (std::is_same_v<T, GTest>) {
            // state-free
          } else if constexpr (std::is_same_v<T, GChoice> || std::is_same_v<T, GSeq>) {
            game_effects(n.lhs, bound, named);
            game_effects(n.rhs, bound, named);
          } else {
            game_effects(n.body, bound, named);
          }
        },
        g.node());
  }

  Game apply_game(const Game& g) const {
    return std::visit(
        [&](const auto& n) -> Game {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, GAct>) {
            if (auto* s = std::get_if<AssignAct>(&n.act.node()))
              return g_act(assign_act(s->var, subst_in_term(s->rhs, x, theta)));
            if (auto* o = std::get_if<OdeAct>(&n.act.node())) {
              std::vector<std::pair<std::string, Term>> derivs;
              for (const auto& [v, t] : o->derivs) derivs.emplace_back(v, subst_in_term(t, x, theta));
              std::optional<MuFormula> c;
              if (o->constraint) c = apply(*o->constraint);
              return g_act(ode_act(std::move(derivs), std::move(c)));
            }
            return g;
          } else if constexpr (std::is_same_v<T, GTest>) {
            return g_test(apply(n.cond));
          } else if constexpr (std::is_same_v<T, GChoice>) {
            return g_choice(apply_game(n.lhs), apply_game(n.rhs));
          } else if constexpr (std::is_same_v<T, GSeq>) {
            return g_seq(apply_game(n.lhs), apply_game(n.rhs));
          } else if constexpr (std::is_same_v<T, GStar>) {
            return g_star(apply_game(n.body));
          } else {
            return g_dual(apply_game(n.body));
          }
        },
        g.node());
  }

  Action apply_act(const Action& a, const MuFormula& body) const {
    return std::visit(
        [&](const auto& n) -> Action {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, NamedAct>) {
            // Unknown footprint; only sound when nothing below mentions x.
            if (free_ovars(body).count(x) || free_ovars(a).count(x))
              fail("named action " + n.name + " in scope");
            return a;
          } else if constexpr (std::is_same_v<T, AssignAct>) {
            if (n.var != x && theta_vars.count(n.var))
              fail("assignment to " + n.var + " captures the substituted term");
            return assign_act(n.var, subst_in_term(n.rhs, x, theta));
          } else if constexpr (std::is_same_v<T, RandomAct>) {
            if (n.var != x && theta_vars.count(n.var))
              fail("assignment to " + n.var + " captures the substituted term");
            return a;
          } else {
            for (const auto& [v, t] : n.derivs) {
              (void)t;
              if (v == x) fail("differential equation binds " + x);
              if (theta_vars.count(v)) fail("differential equation binds a term variable");
            }
            std::vector<std::pair<std::string, Term>> derivs;
            for (const auto& [v, t] : n.derivs) derivs.emplace_back(v, subst_in_term(t, x, theta));
            std::optional<MuFormula> c;
            if (n.constraint) c = apply(*n.constraint);
            return ode_act(std::move(derivs), std::move(c));
          }
        },
        a.node());
  }

  MuFormula apply_body(const Action& a, const MuFormula& body) const {
    bool rebinds = false;
    if (auto* s = std::get_if<AssignAct>(&a.node())) rebinds = s->var == x;
    if (auto* r = std::get_if<RandomAct>(&a.node())) rebinds = r->var == x;
    if (rebinds) return body;
    return apply(body);
  }
};

}  // namespace

MuFormula subst_term_ovar(const MuFormula& phi, const std::string& x, const Term& theta) {
  if (!free_ovars(phi).count(x)) return phi;
  if (!free_pvars(phi).empty())
    throw Error("term substitution inadmissible: formula has free propositional variables");
  TermSubst s{x, theta, free_ovars(theta)};
  return s.apply(phi);
}

GlFormula subst_term_ovar(const GlFormula& phi, const std::string& x, const Term& theta) {
  if (!free_ovars(phi).count(x)) return phi;
  if (!free_pvars(phi).empty())
    throw Error("term substitution inadmissible: formula has free propositional variables");
  TermSubst s{x, theta, free_ovars(theta)};
  return s.apply(phi);
}

}  // namespace mugl
