// Capture-aware substitution of propositional variables, the "free for"
// side condition, object-variable swap renaming, bound-variable apartness
// renaming and the deterministic fresh-name supplies.
#pragma once

#include "mugl/ast.hpp"

namespace mugl {

// X is free for psi in phi iff no free occurrence of X (or X-bar, tagged or
// not) in phi lies in the scope of a binder whose base is a free
// propositional variable base of psi.
bool free_for(const PVar& x, const MuFormula& psi, const MuFormula& phi);

// phi[psi/X]: replaces free occurrences of X by psi and of X-bar by bar(psi);
// rename-tagged occurrences X@(u,v) become the correspondingly renamed psi.
// X must be untagged. Throws on capture, naming the capturing binder.
MuFormula subst_pvar(const MuFormula& phi, const PVar& x, const MuFormula& psi);

// Substitution for game logic; every pvar occurrence is free there.
GlFormula subst_pvar(const GlFormula& phi, const PVar& x, const GlFormula& psi);
Game subst_pvar(const Game& g, const PVar& x, const GlFormula& psi);

// Convenience: renames bound pvars of phi apart from the free pvars of psi
// (and from each other) first, then substitutes.
MuFormula subst_pvar_renaming(const MuFormula& phi, const PVar& x, const MuFormula& psi);

// Swap renaming phi^x_y from the appendix: x and y are exchanged in terms and
// assignment targets, named actions and free pvars pick up a rename tag.
// Applying the same swap twice is the identity.
Term rename_ovar(const Term& t, const std::string& x, const std::string& y);
Literal rename_ovar(const Literal& l, const std::string& x, const std::string& y);
Action rename_ovar(const Action& a, const std::string& x, const std::string& y);
MuFormula rename_ovar(const MuFormula& f, const std::string& x, const std::string& y);
GlFormula rename_ovar(const GlFormula& f, const std::string& x, const std::string& y);
Game rename_ovar(const Game& g, const std::string& x, const std::string& y);

// Apply a tag list left to right.
MuFormula apply_tags(const MuFormula& f, const std::vector<SwapTag>& tags);
GlFormula apply_tags(const GlFormula& f, const std::vector<SwapTag>& tags);

// First name `prefix<k>` (k = 0,1,...) not contained in avoid.
std::string fresh_name(const std::string& prefix, const std::set<std::string>& avoid);
inline std::string fresh_ovar(const std::set<std::string>& avoid, const std::string& prefix = "y") {
  return fresh_name(prefix, avoid);
}
inline PVar fresh_pvar(const std::set<std::string>& avoid_bases, const std::string& prefix = "X") {
  return pv(fresh_name(prefix, avoid_bases));
}

// Reserved control-variable prefix for the flat translation.
inline constexpr const char* kControlPrefix = "l";

// Gives every fixpoint binder a fresh base name so that every pvar is bound
// at most once; free pvars are untouched. Names are drawn from prefix+k
// avoiding `avoid` and everything occurring in f.
MuFormula rename_bound_pvars_apart(const MuFormula& f, std::set<std::string> avoid = {},
                                   const std::string& prefix = "X");

// Equality up to renaming of bound propositional variables.
bool alpha_eq(const MuFormula& a, const MuFormula& b);

// Free substitution of a term for an object variable, restricted to the
// cases where the substitution lemma is sound (used by the exI matcher):
// identity when x does not occur; otherwise phi must have no free pvars and
// the substitution may not cross a rebinding of x, a binder capturing a
// variable of theta, or a named action / differential equation touching
// them. Throws when inadmissible.
MuFormula subst_term_ovar(const MuFormula& phi, const std::string& x, const Term& theta);
GlFormula subst_term_ovar(const GlFormula& phi, const std::string& x, const Term& theta);

}  // namespace mugl
