// Recursive-descent parser for the concrete syntax.
//
//   formulas    p(x, y)   x = 1   t < 0   !phi   a | b   a & b   a -> b
//               a <-> b   <game> phi   [game] phi   mu X. phi   nu X. phi
//               ~X (bar), X@(x,y) (renamed), true, false
//   games       a   ?(phi)   g1 u g2   g1; g2   g*   g^d
//               sugar: g1 n g2, g^x, [g] phi
//   actions     tog   x := t   x := *   {x' = t, y' = s & psi}
//
// Modalities, binders and ! bind short: `<a> p | q` is `(<a> p) | q`.
// Implication and biimplication are expanded into the core connectives.
#pragma once

#include <string>

#include "mugl/ast.hpp"

namespace mugl {

struct ParseError : Error {
  size_t position;
  ParseError(const std::string& msg, size_t pos)
      : Error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

Term parse_term(const std::string& text);
MuFormula parse_mu(const std::string& text);
GlFormula parse_gl(const std::string& text);
Game parse_game(const std::string& text);

}  // namespace mugl
