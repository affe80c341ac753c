// Abstract syntax for first-order terms, mu-calculus formulas, game logic
// formulas and games, plus the syntactic operations that do not need a
// binding environment: bar (definable negation), well-formedness, the rank
// measure, free-variable sets and the definable-construct expansions.
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace mugl {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Terms

class Term;

struct TermVar {
  std::string name;  // object variable, lowercase
};
struct TermConst {
  std::string name;  // constant symbol ("0", "1", numerals, ...)
};
struct TermApp {
  std::string fn;
  std::vector<Term> args;
};

using TermNode = std::variant<TermVar, TermConst, TermApp>;

class Term {
 public:
  Term() = default;
  explicit Term(TermNode n) : node_(std::make_shared<const TermNode>(std::move(n))) {}

  const TermNode& node() const { return *node_; }
  bool valid() const { return node_ != nullptr; }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  std::shared_ptr<const TermNode> node_;
};

Term var(std::string name);
Term cnst(std::string name);
Term app(std::string fn, std::vector<Term> args);

// ---------------------------------------------------------------------------
// Literals: atomic first-order formulas and their negations

struct Atom {
  // Equality is represented as predicate "=" with exactly two arguments.
  std::string pred;
  std::vector<Term> args;

  bool is_equality() const { return pred == "="; }
};

bool operator==(const Atom& a, const Atom& b);
inline bool operator!=(const Atom& a, const Atom& b) { return !(a == b); }

struct Literal {
  bool positive = true;
  Atom atom;
};

bool operator==(const Literal& a, const Literal& b);
inline bool operator!=(const Literal& a, const Literal& b) { return !(a == b); }

inline Literal negate(Literal l) {
  l.positive = !l.positive;
  return l;
}

Literal eq_lit(Term a, Term b);           // a = b
Literal pred_lit(std::string p, std::vector<Term> args = {});

// ---------------------------------------------------------------------------
// Propositional variables

// A swap tag (x,y) marks the variable as the renamed version X^{x,y} of its
// base; tagged variables are never bound. Tags compose left to right.
using SwapTag = std::pair<std::string, std::string>;

struct PVar {
  std::string base;
  bool barred = false;
  std::vector<SwapTag> tags;

  bool tagged() const { return !tags.empty(); }
};

bool operator==(const PVar& a, const PVar& b);
inline bool operator!=(const PVar& a, const PVar& b) { return !(a == b); }
bool operator<(const PVar& a, const PVar& b);

inline PVar pv(std::string base) { return PVar{std::move(base), false, {}}; }
inline PVar pbar(std::string base) { return PVar{std::move(base), true, {}}; }

// Bar of a pvar; the double bar collapses.
inline PVar bar(PVar x) {
  x.barred = !x.barred;
  return x;
}
inline PVar unbarred(PVar x) {
  x.barred = false;
  return x;
}
// Same base and bar flag, tags ignored.
inline bool same_var(const PVar& a, const PVar& b) {
  return a.base == b.base && a.barred == b.barred;
}

// ---------------------------------------------------------------------------
// Actions (transition symbols)

class MuFormula;

// Named atomic action, possibly carrying rename tags a^{x,y}.
struct NamedAct {
  std::string name;
  std::vector<SwapTag> tags;
};
struct AssignAct {  // x := theta
  std::string var;
  Term rhs;
};
struct RandomAct {  // x := *
  std::string var;
};
struct OdeAct {  // {x' = theta, ... & constraint}
  std::vector<std::pair<std::string, Term>> derivs;
  std::shared_ptr<const MuFormula> constraint;  // null when unconstrained
};

using ActionNode = std::variant<NamedAct, AssignAct, RandomAct, OdeAct>;

class Action {
 public:
  Action() = default;
  explicit Action(ActionNode n) : node_(std::make_shared<const ActionNode>(std::move(n))) {}

  const ActionNode& node() const { return *node_; }
  bool valid() const { return node_ != nullptr; }

  friend bool operator==(const Action& a, const Action& b);
  friend bool operator!=(const Action& a, const Action& b) { return !(a == b); }

 private:
  std::shared_ptr<const ActionNode> node_;
};

Action named_act(std::string name, std::vector<SwapTag> tags = {});
Action assign_act(std::string var, Term rhs);
Action random_act(std::string var);
// ode_act is declared after MuFormula below.

bool is_ode(const Action& a);
bool is_assign(const Action& a);
bool is_random(const Action& a);

// ---------------------------------------------------------------------------
// Mu-calculus formulas

struct MuNodeBox;

class MuFormula {
 public:
  MuFormula() = default;
  explicit MuFormula(std::shared_ptr<const MuNodeBox> n) : node_(std::move(n)) {}

  const std::variant<struct MuLit, struct MuPVar, struct MuOr, struct MuAnd, struct MuDia,
                     struct MuBox, struct MuMu, struct MuNu>&
  node() const;
  bool valid() const { return node_ != nullptr; }

  friend bool operator==(const MuFormula& a, const MuFormula& b);
  friend bool operator!=(const MuFormula& a, const MuFormula& b) { return !(a == b); }

 private:
  std::shared_ptr<const MuNodeBox> node_;
};

struct MuLit {
  Literal lit;
};
struct MuPVar {
  PVar var;
};
struct MuOr {
  MuFormula lhs, rhs;
};
struct MuAnd {
  MuFormula lhs, rhs;
};
struct MuDia {
  Action act;
  MuFormula body;
};
struct MuBox {
  Action act;
  MuFormula body;
};
struct MuMu {  // mu X. body
  PVar var;
  MuFormula body;
};
struct MuNu {  // nu X. body
  PVar var;
  MuFormula body;
};

using MuNode = std::variant<MuLit, MuPVar, MuOr, MuAnd, MuDia, MuBox, MuMu, MuNu>;
struct MuNodeBox {
  MuNode v;
};
inline const MuNode& MuFormula::node() const { return node_->v; }

Action ode_act(std::vector<std::pair<std::string, Term>> derivs,
               std::optional<MuFormula> constraint = std::nullopt);

MuFormula mu_lit(Literal l);
MuFormula mu_pvar(PVar x);
MuFormula mu_or(MuFormula a, MuFormula b);
MuFormula mu_and(MuFormula a, MuFormula b);
MuFormula mu_dia(Action a, MuFormula f);
MuFormula mu_box(Action a, MuFormula f);
MuFormula mu_mu(PVar x, MuFormula body);
MuFormula mu_nu(PVar x, MuFormula body);

// Definable negation; an involution on well-formed formulas.
MuFormula bar(const MuFormula& f);

// Abbreviations: a -> b is bar(a) | b, a <-> b is (a -> b) & (b -> a),
// true is 0=0 | !(0=0), false is 0=0 & !(0=0).
MuFormula mu_implies(MuFormula a, MuFormula b);
MuFormula mu_iff(MuFormula a, MuFormula b);
MuFormula mu_true();
MuFormula mu_false();
// exists x. f == <x := *> f, forall x. f == [x := *] f
MuFormula mu_exists(std::string x, MuFormula f);
MuFormula mu_forall(std::string x, MuFormula f);

// ---------------------------------------------------------------------------
// Game logic formulas and games

struct GlNodeBox;
struct GameNodeBox;

class GlFormula {
 public:
  GlFormula() = default;
  explicit GlFormula(std::shared_ptr<const GlNodeBox> n) : node_(std::move(n)) {}

  const std::variant<struct GlLit, struct GlPVar, struct GlNot, struct GlOr, struct GlDia>& node()
      const;
  bool valid() const { return node_ != nullptr; }

  friend bool operator==(const GlFormula& a, const GlFormula& b);
  friend bool operator!=(const GlFormula& a, const GlFormula& b) { return !(a == b); }

 private:
  std::shared_ptr<const GlNodeBox> node_;
};

class Game {
 public:
  Game() = default;
  explicit Game(std::shared_ptr<const GameNodeBox> n) : node_(std::move(n)) {}

  const std::variant<struct GAct, struct GTest, struct GChoice, struct GSeq, struct GStar,
                     struct GDual>&
  node() const;
  bool valid() const { return node_ != nullptr; }

  friend bool operator==(const Game& a, const Game& b);
  friend bool operator!=(const Game& a, const Game& b) { return !(a == b); }

 private:
  std::shared_ptr<const GameNodeBox> node_;
};

struct GlLit {
  Literal lit;
};
struct GlPVar {
  PVar var;
};
struct GlNot {
  GlFormula body;
};
struct GlOr {
  GlFormula lhs, rhs;
};
struct GlDia {
  Game game;
  GlFormula body;
};

struct GAct {
  Action act;
};
struct GTest {
  GlFormula cond;
};
struct GChoice {
  Game lhs, rhs;
};
struct GSeq {
  Game lhs, rhs;
};
struct GStar {
  Game body;
};
struct GDual {
  Game body;
};

using GlNode = std::variant<GlLit, GlPVar, GlNot, GlOr, GlDia>;
struct GlNodeBox {
  GlNode v;
};
inline const GlNode& GlFormula::node() const { return node_->v; }

using GameNode = std::variant<GAct, GTest, GChoice, GSeq, GStar, GDual>;
struct GameNodeBox {
  GameNode v;
};
inline const GameNode& Game::node() const { return node_->v; }

GlFormula gl_lit(Literal l);
GlFormula gl_pvar(PVar x);
// Normalizing negation: flips literal polarity and pvar bars, otherwise
// wraps in a not node (double negations are kept).
GlFormula gl_not(GlFormula f);
GlFormula gl_or(GlFormula a, GlFormula b);
GlFormula gl_dia(Game g, GlFormula f);

Game g_act(Action a);
Game g_test(GlFormula f);
Game g_choice(Game a, Game b);
Game g_seq(Game a, Game b);
Game g_star(Game g);
Game g_dual(Game g);

// Definable constructs (expanded on construction, the AST has no sugar):
GlFormula gl_and(GlFormula a, GlFormula b);      // !( !a | !b )
GlFormula gl_implies(GlFormula a, GlFormula b);  // !a | b
GlFormula gl_iff(GlFormula a, GlFormula b);
GlFormula gl_true();
GlFormula gl_false();
GlFormula gl_box(Game g, GlFormula f);  // <g^d> f
Game g_demonic_choice(Game a, Game b);  // (a^d u b^d)^d
Game g_demonic_repeat(Game g);          // ((g^d)*)^d

// ---------------------------------------------------------------------------
// Signatures

struct Signature {
  std::set<std::string> constants;
  std::vector<std::pair<std::string, int>> functions;
  std::vector<std::pair<std::string, int>> predicates;
  std::set<std::string> actions;

  std::optional<int> function_arity(const std::string& f) const;
  std::optional<int> predicate_arity(const std::string& p) const;
};

// ---------------------------------------------------------------------------
// Well-formedness

struct WfResult {
  bool ok = true;
  std::string message;   // first violation
  std::string path;      // subformula path like "mu X/or/R"
  explicit operator bool() const { return ok; }
};

// Checks Def. of formula formation: a binder for X may not have X-bar (with
// or without rename tags) in its body, binders never bind tagged variables,
// and, when a signature is given, arities match.
WfResult well_formed(const MuFormula& f, const Signature* sig = nullptr);
WfResult well_formed(const GlFormula& f, const Signature* sig = nullptr);
WfResult well_formed(const Game& g, const Signature* sig = nullptr);

// ---------------------------------------------------------------------------
// Rank (termination measure of the sharp embedding)

long rank(const GlFormula& f);
long rank(const Game& g);

// ---------------------------------------------------------------------------
// Free variables

std::set<PVar> free_pvars(const MuFormula& f);
std::set<PVar> free_pvars(const GlFormula& f);
std::set<PVar> free_pvars(const Game& g);

std::set<std::string> free_ovars(const Term& t);
std::set<std::string> free_ovars(const Literal& l);
std::set<std::string> free_ovars(const Action& a);
std::set<std::string> free_ovars(const MuFormula& f);
std::set<std::string> free_ovars(const GlFormula& f);
std::set<std::string> free_ovars(const Game& g);

// Every pvar occurring, free or bound, barred occurrences unbarred to bases.
std::set<std::string> pvar_bases(const MuFormula& f);
std::set<std::string> pvar_bases(const GlFormula& f);
std::set<std::string> pvar_bases(const Game& g);

// Object variables occurring anywhere (including binders/targets and tags).
std::set<std::string> all_ovars(const MuFormula& f);
std::set<std::string> all_ovars(const GlFormula& f);
std::set<std::string> all_ovars(const Game& g);

bool mentions_action(const MuFormula& f, const std::function<bool(const Action&)>& pred);

}  // namespace mugl
