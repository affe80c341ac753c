// Canonical pretty-printing. parse(print(ast)) == ast for every well-formed
// tree, with minimal parentheses under the precedence table of the parser.
#pragma once

#include <string>

#include "mugl/ast.hpp"

namespace mugl {

std::string print(const Term& t);
std::string print(const Literal& l);
std::string print(const PVar& v);
std::string print(const Action& a);
std::string print(const MuFormula& f);
std::string print(const GlFormula& f);
std::string print(const Game& g);

}  // namespace mugl
