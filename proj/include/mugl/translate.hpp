// The sharp embedding of game logic into the mu-calculus, the flat
// counterembedding with dictionaries and the control-variable encoding, and
// the local-reduction rewriters.
#pragma once

#include <functional>

#include "mugl/ast.hpp"

namespace mugl {

// ---------------------------------------------------------------------------
// sharp: GLV -> LmuV

// Fresh fixpoint variables are X0, X1, ...; at each repetition the first
// index whose base does not occur in the untranslated body is taken, which
// keeps the translation stable under substitution (Lemma 5.2 shape) as long
// as inputs stay away from the reserved X<k> namespace.
MuFormula sharp(const GlFormula& f);

// Variant reusing only the two fixpoint variables X0/X1.
MuFormula sharp_two_var(const GlFormula& f);

// ---------------------------------------------------------------------------
// Dictionaries and the control encoding

class TranslationDictionary {
 public:
  // Everything defaults to 0; bar lookups delegate to the base.
  int value(const PVar& v) const { return ones_.count(key(v)) ? 1 : 0; }

  TranslationDictionary with_bound(const PVar& v) const {
    TranslationDictionary d = *this;
    d.ones_.insert(key(v));
    return d;
  }

  // 0 for every propositional variable bound in f.
  bool compatible_with(const MuFormula& f) const;

  std::set<std::string> ones() const { return ones_; }

 private:
  static std::string key(const PVar& v) { return v.base; }
  std::set<std::string> ones_;
};

// Footnote encoding of the control values: one fresh object variable per
// tracked propositional variable, flags over the constants 0/1.
struct ControlEncoding {
  // Tracked variables in encounter order; identity is (base, barred).
  std::vector<PVar> pvars;
  std::vector<std::string> ctrl_vars;

  // Tracks every binder of f plus every free variable the dictionary marks
  // with 1; control names drawn from l0, l1, ... avoiding `avoid` and all
  // object variables of f.
  static ControlEncoding build(const MuFormula& f, const TranslationDictionary* dict = nullptr,
                               std::set<std::string> avoid = {});

  int index_of(const PVar& v) const;  // -1 when untracked
  Game set_game(const PVar& v) const;       // l0:=0; ...; ln:=0; li:=1
  GlFormula eq_formula(const PVar& v) const;  // l0=0 & ... & li=1 & ... & ln=0
};

// ---------------------------------------------------------------------------
// flat: LmuV -> GLV

// The per-formula game translation. Requires a compatible dictionary and
// every propositional variable bound at most once; the encoding must track
// all binders and all free variables with dictionary value 1.
Game flat_game(const MuFormula& f, const TranslationDictionary& dict, const ControlEncoding& enc);

// Closed-formula entry point: renames bound variables apart, uses the
// all-zero dictionary and returns <f-as-game> true.
GlFormula flat(const MuFormula& f);

// Like flat but keeps the pieces visible (used by tests and the CLI).
struct FlatResult {
  MuFormula renamed;  // bound variables made apart
  ControlEncoding enc;
  Game game;
  GlFormula formula;  // <game> true
};
FlatResult flat_full(const MuFormula& f);

// ---------------------------------------------------------------------------
// Local reduction (modality elimination)

using ActionPredicate = std::function<bool(const Action&)>;
// Receives the diamond's action and the already-rewritten body; must return
// an equivalent Lambda-free formula with no more free pvar bases.
using DiamondElim = std::function<MuFormula(const Action&, const MuFormula&)>;

MuFormula eliminate_modalities(const MuFormula& f, const ActionPredicate& lambda,
                               const DiamondElim& elim);

// <x := theta> psi  ~~>  <y := *>(y = theta & psi^x_y), y fresh.
MuFormula elim_assign_to_random(const Action& a, const MuFormula& body);
// <x := *> psi  ~~>  <{x' = 1}> psi | <{x' = -1}> psi.
MuFormula elim_random_to_ode(const Action& a, const MuFormula& body);

// Structural replacement of atomic games (sound under *, ^d, ; composition).
using GameElim = std::function<Game(const Action&)>;
GlFormula gl_eliminate_actions(const GlFormula& f, const ActionPredicate& lambda,
                               const GameElim& elim);
Game gl_eliminate_actions(const Game& g, const ActionPredicate& lambda, const GameElim& elim);

// x := theta  ~~>  x := *; ?(x = theta)
Game game_elim_assign_to_random(const Action& a);

}  // namespace mugl
