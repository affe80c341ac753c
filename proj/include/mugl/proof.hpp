// Hilbert-style proof checking for both calculi, the tautology and
// equality-axiom oracles, derived-rule expansion, substitution over proofs,
// and the forward sharp proof translator.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mugl/ast.hpp"

namespace mugl {

enum class Calculus { Mu, Gl };

// A line holds the formula in the script's calculus.
struct ProofLine {
  MuFormula mu;       // set when calculus == Mu
  GlFormula gl;       // set when calculus == Gl
  std::string rule;   // justification token: taut, eq, ax.mu, ax.exI, ax.V,
                      // ax.assign, ax.test, ax.choice, ax.comp, ax.star,
                      // ax.dual, ax.ctrl, hyp, mp, Ma, M, FPmu, FPstar, rename
  std::vector<int> premises;  // 1-based line numbers (hyp: theory index)
};

struct ProofScript {
  Calculus calculus = Calculus::Mu;
  std::vector<ProofLine> lines;

  ProofLine& add_mu(MuFormula f, std::string rule, std::vector<int> premises = {});
  ProofLine& add_gl(GlFormula f, std::string rule, std::vector<int> premises = {});
  int size() const { return static_cast<int>(lines.size()); }
};

struct Theory {
  Calculus calculus = Calculus::Mu;
  std::vector<MuFormula> mu_formulas;
  std::vector<GlFormula> gl_formulas;
  int size() const {
    return static_cast<int>(calculus == Calculus::Mu ? mu_formulas.size() : gl_formulas.size());
  }
};

struct LineVerdict {
  bool ok = true;
  std::string message;
};

struct ProofVerdict {
  bool ok = true;
  int first_failure = 0;  // 1-based; 0 when ok
  std::vector<LineVerdict> lines;
  explicit operator bool() const { return ok; }
};

ProofVerdict check_proof(const ProofScript& script, const Theory* theory = nullptr);

// Propositional tautology oracle by abstraction of the maximal
// non-propositional subformulas (a formula and its bar share one atom with
// opposite polarity) followed by a truth table. Throws above 24 atoms.
bool is_taut(const MuFormula& f);
bool is_taut(const GlFormula& f);

// Equality axiom recognizers: reflexivity t = t and single-occurrence
// congruence  s = t -> (chi <-> chi').
bool is_equality_axiom(const MuFormula& f);
bool is_equality_axiom(const GlFormula& f);

// ---------------------------------------------------------------------------
// Derived rules (Appendix-style expansions into primitive-rule scripts)

// <g1 n g2> phi <-> <g1> phi & <g2> phi  (on the desugared intersection)
ProofScript expand_intersection(const Game& g1, const Game& g2, const GlFormula& phi);
// <(g1; g2)^d> phi <-> <g1^d; g2^d> phi
ProofScript expand_dual_composition(const Game& g1, const Game& g2, const GlFormula& phi);
// From a script proving psi -> phi: mu X. psi -> mu X. phi.
ProofScript expand_mu_mono(const ProofScript& premise, const PVar& x);
// From a script proving psi -> phi: nu X. psi -> nu X. phi.
ProofScript expand_nu_mono(const ProofScript& premise, const PVar& x);
// From a script proving psi -> phi: [a] psi -> [a] phi.
ProofScript expand_box_mono(const ProofScript& premise, const Action& a);
// From a script whose last two lines prove
//   <g1><g2*> rho <-> <g2><g2*> rho   and   <g2><g1*> rho <-> <g1><g1*> rho,
// concludes <g1*> rho <-> <g2*> rho.
ProofScript expand_replace_in_loop(const ProofScript& premises, const Game& g1, const Game& g2,
                                   const GlFormula& rho);

// ---------------------------------------------------------------------------
// Substitution over proofs and the sharp proof translation

// Line-wise phi[psi/X]; requires X free for psi in every line. The result
// checks whenever the input does (same rules, same premise indices).
ProofScript subst_proof(const ProofScript& script, const PVar& x, const MuFormula& psi);

// Maps a checking GL script to a checking Lmu script whose conclusion is
// sharp(conclusion). Theories are translated alongside.
ProofScript translate_proof_sharp(const ProofScript& gl_script, const Theory* theory = nullptr,
                                  Theory* translated_theory = nullptr);

// Conclusion (last line) accessors.
MuFormula conclusion_mu(const ProofScript& s);
GlFormula conclusion_gl(const ProofScript& s);

}  // namespace mugl
