#include "mugl/semantics.hpp"

#include <algorithm>

#include "mugl/print.hpp"

namespace mugl {

// ---------------------------------------------------------------------------
// FiniteStructure

int FiniteStructure::elem(const std::string& name) const {
  for (size_t i = 0; i < domain.size(); ++i)
    if (domain[i] == name) return static_cast<int>(i);
  throw Error("unknown domain element '" + name + "'");
}

Signature FiniteStructure::signature() const {
  Signature sig;
  for (const auto& [c, e] : constants) {
    (void)e;
    sig.constants.insert(c);
  }
  for (const auto& [f, def] : functions) sig.functions.emplace_back(f, def.arity);
  for (const auto& [p, tuples] : predicates) {
    int ar = tuples.empty() ? 0 : static_cast<int>(tuples.begin()->size());
    sig.predicates.emplace_back(p, ar);
  }
  for (const auto& [a, t] : transitions) {
    (void)t;
    sig.actions.insert(a);
  }
  return sig;
}

void FiniteStructure::require_assignment_structure() const {
  auto z = constants.find("0");
  auto o = constants.find("1");
  if (z == constants.end() || o == constants.end())
    throw Error("assignment semantics needs the constants 0 and 1");
  if (z->second == o->second) throw Error("constants 0 and 1 must denote distinct elements");
}

// ---------------------------------------------------------------------------
// StateSpace

PartialState StateSpace::decode(long state) const {
  PartialState s;
  for (size_t k = 0; k < vars.size(); ++k) s[vars[k]] = digit(state, static_cast<int>(k));
  return s;
}

long StateSpace::encode(const PartialState& s) const {
  long idx = 0;
  for (size_t k = 0; k < vars.size(); ++k) {
    auto it = s.find(vars[k]);
    if (it == s.end()) throw Error("state misses variable " + vars[k]);
    idx += static_cast<long>(it->second) * stride[k];
  }
  return idx;
}

// ---------------------------------------------------------------------------
// StateSet

StateSet::StateSet(long n, bool full) : n_(n), w_((n + 63) / 64, full ? ~0ULL : 0ULL) {
  if (full && n_ % 64 != 0) w_.back() = (1ULL << (n_ % 64)) - 1;
}

long StateSet::count() const {
  long c = 0;
  for (auto x : w_) c += __builtin_popcountll(x);
  return c;
}
bool StateSet::empty() const {
  for (auto x : w_)
    if (x) return false;
  return true;
}
bool StateSet::is_full() const { return count() == n_; }

StateSet& StateSet::operator|=(const StateSet& o) {
  for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
  return *this;
}
StateSet& StateSet::operator&=(const StateSet& o) {
  for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
  return *this;
}
StateSet StateSet::complement() const {
  StateSet r(n_, true);
  for (size_t i = 0; i < w_.size(); ++i) r.w_[i] &= ~w_[i];
  return r;
}
bool StateSet::subset_of(const StateSet& o) const {
  for (size_t i = 0; i < w_.size(); ++i)
    if (w_[i] & ~o.w_[i]) return false;
  return true;
}
bool operator==(const StateSet& a, const StateSet& b) { return a.n_ == b.n_ && a.w_ == b.w_; }

StateSet set_union(StateSet a, const StateSet& b) {
  a |= b;
  return a;
}
StateSet set_intersect(StateSet a, const StateSet& b) {
  a &= b;
  return a;
}

// ---------------------------------------------------------------------------
// Fixpoints

StateSet lfp(const std::function<StateSet(const StateSet&)>& f, long space_size) {
  StateSet cur(space_size);
  for (long i = 0; i <= space_size + 1; ++i) {
    StateSet next = f(cur);
    if (next == cur) return cur;
    cur = std::move(next);
  }
  throw Error("fixpoint iteration did not stabilize: map is not monotone");
}

StateSet gfp(const std::function<StateSet(const StateSet&)>& f, long space_size) {
  StateSet cur(space_size, true);
  for (long i = 0; i <= space_size + 1; ++i) {
    StateSet next = f(cur);
    if (next == cur) return cur;
    cur = std::move(next);
  }
  throw Error("fixpoint iteration did not stabilize: map is not monotone");
}

StateSet lfp_by_intersection(const std::function<StateSet(const StateSet&)>& f, long space_size) {
  if (space_size > 16) throw Error("exhaustive fixpoint oracle is limited to 16 states");
  StateSet acc(space_size, true);
  for (long mask = 0; mask < (1L << space_size); ++mask) {
    StateSet d(space_size);
    for (long i = 0; i < space_size; ++i)
      if ((mask >> i) & 1) d.set(i);
    if (f(d).subset_of(d)) acc &= d;
  }
  return acc;
}

StateSet gfp_by_union(const std::function<StateSet(const StateSet&)>& f, long space_size) {
  if (space_size > 16) throw Error("exhaustive fixpoint oracle is limited to 16 states");
  StateSet acc(space_size);
  for (long mask = 0; mask < (1L << space_size); ++mask) {
    StateSet d(space_size);
    for (long i = 0; i < space_size; ++i)
      if ((mask >> i) & 1) d.set(i);
    if (d.subset_of(f(d))) acc |= d;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// EvalContext

EvalContext::EvalContext(const FiniteStructure& a, const std::set<std::string>& extra_vars,
                         EvalOptions opts)
    : a_(a), opts_(opts) {
  if (static_cast<int>(a.domain.size()) > opts.max_domain)
    throw Error("domain cap exceeded: " + std::to_string(a.domain.size()) + " > " +
                std::to_string(opts.max_domain));
  if (a.domain.empty()) throw Error("empty domain");
  space_.vars = a.support;
  for (const auto& v : extra_vars)
    if (std::find(space_.vars.begin(), space_.vars.end(), v) == space_.vars.end())
      space_.vars.push_back(v);
  if (static_cast<int>(space_.vars.size()) > opts.max_support)
    throw Error("support cap exceeded: " + std::to_string(space_.vars.size()) + " > " +
                std::to_string(opts.max_support));
  space_.dom = static_cast<int>(a.domain.size());
  space_.size = 1;
  for (size_t k = 0; k < space_.vars.size(); ++k) {
    if (space_.size > opts.max_states / space_.dom + 1) throw Error("state space cap exceeded");
    space_.size *= space_.dom;
  }
  if (space_.size > opts.max_states) throw Error("state space cap exceeded");
  space_.stride.assign(space_.vars.size(), 1);
  for (int k = static_cast<int>(space_.vars.size()) - 2; k >= 0; --k)
    space_.stride[k] = space_.stride[k + 1] * space_.dom;
  for (size_t k = 0; k < space_.vars.size(); ++k)
    space_.var_pos[space_.vars[k]] = static_cast<int>(k);
}

int EvalContext::eval_term(long state, const Term& t) const {
  return std::visit(
      [&](const auto& n) -> int {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, TermVar>) {
          auto it = space_.var_pos.find(n.name);
          if (it == space_.var_pos.end()) throw Error("unsupported variable " + n.name);
          return space_.digit(state, it->second);
        } else if constexpr (std::is_same_v<T, TermConst>) {
          auto it = a_.constants.find(n.name);
          if (it == a_.constants.end()) throw Error("uninterpreted constant " + n.name);
          return it->second;
        } else {
          auto it = a_.functions.find(n.fn);
          if (it == a_.functions.end()) throw Error("uninterpreted function " + n.fn);
          std::vector<int> args;
          args.reserve(n.args.size());
          for (const auto& arg : n.args) args.push_back(eval_term(state, arg));
          auto row = it->second.table.find(args);
          if (row == it->second.table.end())
            throw Error("function " + n.fn + " is not total on the domain");
          return row->second;
        }
      },
      t.node());
}

bool EvalContext::eval_literal(long state, const Literal& l) const {
  bool truth;
  if (l.atom.is_equality()) {
    truth = eval_term(state, l.atom.args[0]) == eval_term(state, l.atom.args[1]);
  } else {
    auto it = a_.predicates.find(l.atom.pred);
    if (it == a_.predicates.end()) throw Error("uninterpreted predicate " + l.atom.pred);
    std::vector<int> args;
    args.reserve(l.atom.args.size());
    for (const auto& arg : l.atom.args) args.push_back(eval_term(state, arg));
    truth = it->second.count(args) != 0;
  }
  return l.positive ? truth : !truth;
}

namespace {

long tags_apply(const StateSpace& sp, long state, const std::vector<SwapTag>& tags, bool reverse) {
  auto swap_one = [&](long s, const SwapTag& t) {
    auto px = sp.var_pos.find(t.first);
    auto py = sp.var_pos.find(t.second);
    if (px == sp.var_pos.end() || py == sp.var_pos.end())
      throw Error("rename tag mentions unsupported variable");
    return sp.swap_digits(s, px->second, py->second);
  };
  if (reverse) {
    for (auto it = tags.rbegin(); it != tags.rend(); ++it) state = swap_one(state, *it);
  } else {
    for (const auto& t : tags) state = swap_one(state, t);
  }
  return state;
}

}  // namespace

void EvalContext::for_each_succ(long state, const Action& a,
                                const std::function<bool(long)>& cb) const {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AssignAct>) {
          auto it = space_.var_pos.find(n.var);
          if (it == space_.var_pos.end()) throw Error("unsupported variable " + n.var);
          cb(space_.with_digit(state, it->second, eval_term(state, n.rhs)));
        } else if constexpr (std::is_same_v<T, RandomAct>) {
          auto it = space_.var_pos.find(n.var);
          if (it == space_.var_pos.end()) throw Error("unsupported variable " + n.var);
          for (int v = 0; v < space_.dom; ++v)
            if (!cb(space_.with_digit(state, it->second, v))) return;
        } else if constexpr (std::is_same_v<T, OdeAct>) {
          throw Error("differential equations have no finite-structure semantics");
        } else {
          auto it = a_.transitions.find(n.name);
          if (it == a_.transitions.end()) throw Error("undeclared action " + n.name);
          long s = tags_apply(space_, state, n.tags, /*reverse=*/true);
          for (const auto& [lhs, rhs] : it->second.pairs) {
            bool match = true;
            for (const auto& [v, val] : lhs) {
              auto vp = space_.var_pos.find(v);
              if (vp == space_.var_pos.end()) throw Error("footprint variable outside space: " + v);
              if (space_.digit(s, vp->second) != val) {
                match = false;
                break;
              }
            }
            if (!match) continue;
            long succ = s;
            for (const auto& [v, val] : rhs) succ = space_.with_digit(succ, space_.var_pos.at(v), val);
            if (!cb(tags_apply(space_, succ, n.tags, /*reverse=*/false))) return;
          }
        }
      },
      a.node());
}

StateSet EvalContext::dia_step(const Action& a, const StateSet& d) const {
  StateSet r(space_.size);
  for (long s = 0; s < space_.size; ++s) {
    bool hit = false;
    for_each_succ(s, a, [&](long t) {
      if (d.get(t)) {
        hit = true;
        return false;
      }
      return true;
    });
    if (hit) r.set(s);
  }
  return r;
}

StateSet EvalContext::box_step(const Action& a, const StateSet& d) const {
  StateSet r(space_.size);
  for (long s = 0; s < space_.size; ++s) {
    bool all = true;
    for_each_succ(s, a, [&](long t) {
      if (!d.get(t)) {
        all = false;
        return false;
      }
      return true;
    });
    if (all) r.set(s);
  }
  return r;
}

std::vector<std::pair<long, long>> transition_relation(const EvalContext& ctx, const Action& a) {
  std::vector<std::pair<long, long>> rel;
  for (long s = 0; s < ctx.space().size; ++s)
    ctx.for_each_succ(s, a, [&](long t) {
      rel.emplace_back(s, t);
      return true;
    });
  return rel;
}

// ---------------------------------------------------------------------------
// Valuation

StateSet Valuation::lookup(const EvalContext& ctx, const PVar& v) const {
  auto it = map_.find(v.base);
  if (it == map_.end()) throw Error("valuation does not assign " + v.base);
  StateSet s = it->second;
  if (!v.tags.empty()) {
    StateSet moved(ctx.space().size);
    s.for_each([&](long i) { moved.set(tags_apply(ctx.space(), i, v.tags, /*reverse=*/false)); });
    s = std::move(moved);
  }
  return v.barred ? s.complement() : s;
}

Valuation Valuation::bind(const PVar& binder, const StateSet& d, const EvalContext&) const {
  Valuation out = *this;
  out.map_[binder.base] = binder.barred ? d.complement() : d;
  return out;
}

// ---------------------------------------------------------------------------
// Evaluators

std::vector<long> enumerate_states(const EvalContext& ctx) {
  std::vector<long> all(ctx.space().size);
  for (long i = 0; i < ctx.space().size; ++i) all[i] = i;
  return all;
}

StateSet eval_mu(const EvalContext& ctx, const Valuation& om, const MuFormula& f) {
  return std::visit(
      [&](const auto& n) -> StateSet {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, MuLit>) {
          StateSet r(ctx.space().size);
          for (long s = 0; s < ctx.space().size; ++s)
            if (ctx.eval_literal(s, n.lit)) r.set(s);
          return r;
        } else if constexpr (std::is_same_v<T, MuPVar>) {
          return om.lookup(ctx, n.var);
        } else if constexpr (std::is_same_v<T, MuOr>) {
          return set_union(eval_mu(ctx, om, n.lhs), eval_mu(ctx, om, n.rhs));
        } else if constexpr (std::is_same_v<T, MuAnd>) {
          return set_intersect(eval_mu(ctx, om, n.lhs), eval_mu(ctx, om, n.rhs));
        } else if constexpr (std::is_same_v<T, MuDia>) {
          return ctx.dia_step(n.act, eval_mu(ctx, om, n.body));
        } else if constexpr (std::is_same_v<T, MuBox>) {
          return ctx.box_step(n.act, eval_mu(ctx, om, n.body));
        } else if constexpr (std::is_same_v<T, MuMu>) {
          return lfp(
              [&](const StateSet& d) { return eval_mu(ctx, om.bind(n.var, d, ctx), n.body); },
              ctx.space().size);
        } else {
          return gfp(
              [&](const StateSet& d) { return eval_mu(ctx, om.bind(n.var, d, ctx), n.body); },
              ctx.space().size);
        }
      },
      f.node());
}

StateSet eval_gl(const EvalContext& ctx, const Valuation& om, const GlFormula& f) {
  return std::visit(
      [&](const auto& n) -> StateSet {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, GlLit>) {
          StateSet r(ctx.space().size);
          for (long s = 0; s < ctx.space().size; ++s)
            if (ctx.eval_literal(s, n.lit)) r.set(s);
          return r;
        } else if constexpr (std::is_same_v<T, GlPVar>) {
          return om.lookup(ctx, n.var);
        } else if constexpr (std::is_same_v<T, GlNot>) {
          return eval_gl(ctx, om, n.body).complement();
        } else if constexpr (std::is_same_v<T, GlOr>) {
          return set_union(eval_gl(ctx, om, n.lhs), eval_gl(ctx, om, n.rhs));
        } else {
          return eval_game(ctx, om, n.game, eval_gl(ctx, om, n.body));
        }
      },
      f.node());
}

StateSet eval_game(const EvalContext& ctx, const Valuation& om, const Game& g, const StateSet& d) {
  return std::visit(
      [&](const auto& n) -> StateSet {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, GAct>) {
          return ctx.dia_step(n.act, d);
        } else if constexpr (std::is_same_v<T, GTest>) {
          return set_intersect(eval_gl(ctx, om, n.cond), d);
        } else if constexpr (std::is_same_v<T, GChoice>) {
          return set_union(eval_game(ctx, om, n.lhs, d), eval_game(ctx, om, n.rhs, d));
        } else if constexpr (std::is_same_v<T, GSeq>) {
          return eval_game(ctx, om, n.lhs, eval_game(ctx, om, n.rhs, d));
        } else if constexpr (std::is_same_v<T, GStar>) {
          return lfp(
              [&](const StateSet& z) { return set_union(d, eval_game(ctx, om, n.body, z)); },
              ctx.space().size);
        } else {
          return eval_game(ctx, om, n.body, d.complement()).complement();
        }
      },
      g.node());
}

EvalContext make_context(const FiniteStructure& a, const MuFormula& f, EvalOptions opts) {
  return EvalContext(a, all_ovars(f), opts);
}
EvalContext make_context(const FiniteStructure& a, const GlFormula& f, EvalOptions opts) {
  return EvalContext(a, all_ovars(f), opts);
}

bool is_valid_on(const FiniteStructure& a, const MuFormula& f, const Valuation* om,
                 EvalOptions opts) {
  EvalContext ctx = make_context(a, f, opts);
  Valuation empty;
  return eval_mu(ctx, om ? *om : empty, f).is_full();
}
bool is_valid_on(const FiniteStructure& a, const GlFormula& f, const Valuation* om,
                 EvalOptions opts) {
  EvalContext ctx = make_context(a, f, opts);
  Valuation empty;
  return eval_gl(ctx, om ? *om : empty, f).is_full();
}

}  // namespace mugl
