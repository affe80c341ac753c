// Finite-structure denotational semantics: state-space enumeration, term
// evaluation, transition relations, the Kleene/Knaster-Tarski fixpoint
// engine, and the evaluators for both logics.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mugl/ast.hpp"

namespace mugl {

// ---------------------------------------------------------------------------
// Structures

// Partial state over some variables, by element index.
using PartialState = std::map<std::string, int>;

struct NamedTransition {
  std::vector<std::string> footprint;
  // Pairs of footprint assignments; identity outside the footprint.
  std::vector<std::pair<PartialState, PartialState>> pairs;
};

struct FiniteStructure {
  std::vector<std::string> domain;                       // element names
  std::map<std::string, int> constants;                  // symbol -> element
  struct Func {
    int arity = 0;
    std::map<std::vector<int>, int> table;               // total on tuples
  };
  std::map<std::string, Func> functions;
  std::map<std::string, std::set<std::vector<int>>> predicates;
  std::vector<std::string> support;
  std::map<std::string, NamedTransition> transitions;

  int elem(const std::string& name) const;               // throws on unknown
  Signature signature() const;
  // 0 and 1 must be interpreted and distinct for assignment semantics.
  void require_assignment_structure() const;
};

struct EvalOptions {
  long max_states = 1L << 20;
  int max_domain = 4;
  int max_support = 8;
};

// ---------------------------------------------------------------------------
// State space and state sets

struct StateSpace {
  std::vector<std::string> vars;  // enumeration order: first var most significant
  int dom = 0;
  long size = 0;
  std::map<std::string, int> var_pos;
  std::vector<long> stride;

  int digit(long state, int pos) const { return static_cast<int>((state / stride[pos]) % dom); }
  long with_digit(long state, int pos, int value) const {
    return state + (static_cast<long>(value) - digit(state, pos)) * stride[pos];
  }
  long swap_digits(long state, int p, int q) const {
    int a = digit(state, p), b = digit(state, q);
    return with_digit(with_digit(state, p, b), q, a);
  }
  PartialState decode(long state) const;
  long encode(const PartialState& s) const;  // must assign exactly vars
};

class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(long n, bool full = false);

  long size() const { return n_; }
  bool get(long i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(long i) { w_[i >> 6] |= (1ULL << (i & 63)); }
  void reset(long i) { w_[i >> 6] &= ~(1ULL << (i & 63)); }

  long count() const;
  bool empty() const;
  bool is_full() const;

  StateSet& operator|=(const StateSet& o);
  StateSet& operator&=(const StateSet& o);
  StateSet complement() const;
  bool subset_of(const StateSet& o) const;

  friend bool operator==(const StateSet& a, const StateSet& b);
  friend bool operator!=(const StateSet& a, const StateSet& b) { return !(a == b); }

  template <typename F>
  void for_each(F f) const {
    for (long i = 0; i < n_; ++i)
      if (get(i)) f(i);
  }

 private:
  long n_ = 0;
  std::vector<std::uint64_t> w_;
};

StateSet set_union(StateSet a, const StateSet& b);
StateSet set_intersect(StateSet a, const StateSet& b);

// ---------------------------------------------------------------------------
// Fixpoint engine

// Kleene iteration from the empty set; throws when the iteration does not
// stabilize within size+1 steps (the map was not monotone).
StateSet lfp(const std::function<StateSet(const StateSet&)>& f, long space_size);
StateSet gfp(const std::function<StateSet(const StateSet&)>& f, long space_size);

// The lattice-theoretic characterizations, by exhaustive enumeration of all
// subsets; test oracle for spaces of at most 16 states.
StateSet lfp_by_intersection(const std::function<StateSet(const StateSet&)>& f, long space_size);
StateSet gfp_by_union(const std::function<StateSet(const StateSet&)>& f, long space_size);

// ---------------------------------------------------------------------------
// Evaluation context

class EvalContext {
 public:
  // Space over support + extra_vars (deduplicated, support order first).
  EvalContext(const FiniteStructure& a, const std::set<std::string>& extra_vars,
              EvalOptions opts = {});

  const FiniteStructure& structure() const { return a_; }
  const StateSpace& space() const { return space_; }
  const EvalOptions& options() const { return opts_; }

  StateSet empty_set() const { return StateSet(space_.size); }
  StateSet full_set() const { return StateSet(space_.size, true); }

  int eval_term(long state, const Term& t) const;
  bool eval_literal(long state, const Literal& l) const;

  // Successor enumeration; cb returns false to stop early.
  void for_each_succ(long state, const Action& a, const std::function<bool(long)>& cb) const;

  StateSet dia_step(const Action& a, const StateSet& d) const;
  StateSet box_step(const Action& a, const StateSet& d) const;

 private:
  const FiniteStructure& a_;
  StateSpace space_;
  EvalOptions opts_;
};

// Explicit transition relation of an action over the context's space.
std::vector<std::pair<long, long>> transition_relation(const EvalContext& ctx, const Action& a);

// ---------------------------------------------------------------------------
// Valuations

class Valuation {
 public:
  Valuation() = default;

  void assign(const std::string& base, StateSet s) { map_[base] = std::move(s); }
  bool has(const std::string& base) const { return map_.count(base) != 0; }

  // Lookup with bar complement and swap-tag interpretation.
  StateSet lookup(const EvalContext& ctx, const PVar& v) const;

  // Modified valuation for a fixpoint binder (binder may be barred).
  Valuation bind(const PVar& binder, const StateSet& d, const EvalContext& ctx) const;

 private:
  std::map<std::string, StateSet> map_;
};

// ---------------------------------------------------------------------------
// Evaluators

std::vector<long> enumerate_states(const EvalContext& ctx);

StateSet eval_mu(const EvalContext& ctx, const Valuation& om, const MuFormula& f);
StateSet eval_gl(const EvalContext& ctx, const Valuation& om, const GlFormula& f);
StateSet eval_game(const EvalContext& ctx, const Valuation& om, const Game& g, const StateSet& d);

// Convenience: context over support + all variables of f.
struct Denotation {
  EvalContext ctx;
  StateSet set;
};

EvalContext make_context(const FiniteStructure& a, const MuFormula& f, EvalOptions opts = {});
EvalContext make_context(const FiniteStructure& a, const GlFormula& f, EvalOptions opts = {});

bool is_valid_on(const FiniteStructure& a, const MuFormula& f, const Valuation* om = nullptr,
                 EvalOptions opts = {});
bool is_valid_on(const FiniteStructure& a, const GlFormula& f, const Valuation* om = nullptr,
                 EvalOptions opts = {});

}  // namespace mugl
