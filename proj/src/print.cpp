#include "mugl/print.hpp"

#include <sstream>

namespace mugl {

namespace {

// Term levels: 1 additive, 2 multiplicative, 3 prefix minus, 4 atom.
int term_level(const Term& t) {
  if (auto* a = std::get_if<TermApp>(&t.node())) {
    if (a->fn == "+" || a->fn == "-") return a->args.size() == 2 ? 1 : 3;
    if (a->fn == "*" || a->fn == "/") return 2;
    if (a->fn == "neg") return 3;
  }
  return 4;
}

void print_term(std::ostream& os, const Term& t, int min_level) {
  int lv = term_level(t);
  bool paren = lv < min_level;
  if (paren) os << "(";
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, TermVar>) {
          os << n.name;
        } else if constexpr (std::is_same_v<T, TermConst>) {
          os << n.name;
        } else {
          if ((n.fn == "+" || n.fn == "-" || n.fn == "*" || n.fn == "/") && n.args.size() == 2) {
            int sub = lv;
            print_term(os, n.args[0], sub);
            os << " " << n.fn << " ";
            print_term(os, n.args[1], sub + 1);
          } else if ((n.fn == "neg" || n.fn == "-") && n.args.size() == 1) {
            os << "-";
            print_term(os, n.args[0], 4);
          } else {
            os << n.fn << "(";
            for (size_t i = 0; i < n.args.size(); ++i) {
              if (i) os << ", ";
              print_term(os, n.args[i], 1);
            }
            os << ")";
          }
        }
      },
      t.node());
  if (paren) os << ")";
}

void print_atom(std::ostream& os, const Atom& a) {
  if (a.is_equality()) {
    print_term(os, a.args[0], 1);
    os << " = ";
    print_term(os, a.args[1], 1);
  } else if (a.pred == "<" || a.pred == "<=" || a.pred == ">" || a.pred == ">=") {
    print_term(os, a.args[0], 1);
    os << " " << a.pred << " ";
    print_term(os, a.args[1], 1);
  } else if (a.args.empty()) {
    os << a.pred;
  } else {
    os << a.pred << "(";
    for (size_t i = 0; i < a.args.size(); ++i) {
      if (i) os << ", ";
      print_term(os, a.args[i], 1);
    }
    os << ")";
  }
}

// A negative literal over a multi-token atom prints with parentheses so the
// negation visibly covers the whole atom.
void print_lit(std::ostream& os, const Literal& l) {
  bool multi = l.atom.is_equality() || l.atom.pred == "<" || l.atom.pred == "<=" ||
               l.atom.pred == ">" || l.atom.pred == ">=";
  if (!l.positive) os << (multi ? "!(" : "!");
  print_atom(os, l.atom);
  if (!l.positive && multi) os << ")";
}

void print_pvar(std::ostream& os, const PVar& v) {
  if (v.barred) os << "~";
  os << v.base;
  for (const auto& [x, y] : v.tags) os << "@(" << x << "," << y << ")";
}

void print_mu(std::ostream& os, const MuFormula& f, int min_level);

void print_action(std::ostream& os, const Action& a) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, NamedAct>) {
          os << n.name;
          for (const auto& [x, y] : n.tags) os << "@(" << x << "," << y << ")";
        } else if constexpr (std::is_same_v<T, AssignAct>) {
          os << n.var << " := ";
          print_term(os, n.rhs, 1);
        } else if constexpr (std::is_same_v<T, RandomAct>) {
          os << n.var << " := *";
        } else {
          os << "{";
          for (size_t i = 0; i < n.derivs.size(); ++i) {
            if (i) os << ", ";
            os << n.derivs[i].first << "' = ";
            print_term(os, n.derivs[i].second, 1);
          }
          if (n.constraint) {
            os << " & ";
            print_mu(os, *n.constraint, 2);
          }
          os << "}";
        }
      },
      a.node());
}

// Formula levels: 1 or, 2 and, 3 prefix, 4 atom.
int mu_level(const MuFormula& f) {
  return std::visit(
      [](const auto& n) -> int {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, MuOr>) return 1;
        else if constexpr (std::is_same_v<T, MuAnd>) return 2;
        else if constexpr (std::is_same_v<T, MuLit> || std::is_same_v<T, MuPVar>) return 4;
        else return 3;
      },
      f.node());
}

void print_mu(std::ostream& os, const MuFormula& f, int min_level) {
  int lv = mu_level(f);
  bool paren = lv < min_level;
  if (paren) os << "(";
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, MuLit>) {
          print_lit(os, n.lit);
        } else if constexpr (std::is_same_v<T, MuPVar>) {
          print_pvar(os, n.var);
        } else if constexpr (std::is_same_v<T, MuOr>) {
          print_mu(os, n.lhs, 1);
          os << " | ";
          print_mu(os, n.rhs, 2);
        } else if constexpr (std::is_same_v<T, MuAnd>) {
          print_mu(os, n.lhs, 2);
          os << " & ";
          print_mu(os, n.rhs, 3);
        } else if constexpr (std::is_same_v<T, MuDia>) {
          os << "<";
          print_action(os, n.act);
          os << "> ";
          print_mu(os, n.body, 3);
        } else if constexpr (std::is_same_v<T, MuBox>) {
          os << "[";
          print_action(os, n.act);
          os << "] ";
          print_mu(os, n.body, 3);
        } else if constexpr (std::is_same_v<T, MuMu>) {
          os << "mu ";
          print_pvar(os, n.var);
          os << ". ";
          print_mu(os, n.body, 3);
        } else {
          os << "nu ";
          print_pvar(os, n.var);
          os << ". ";
          print_mu(os, n.body, 3);
        }
      },
      f.node());
  if (paren) os << ")";
}

void print_gl(std::ostream& os, const GlFormula& f, int min_level);

// Game levels: 1 choice, 2 seq, 3 postfix, 4 atom.
int game_level(const Game& g) {
  return std::visit(
      [](const auto& n) -> int {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, GChoice>) return 1;
        else if constexpr (std::is_same_v<T, GSeq>) return 2;
        else if constexpr (std::is_same_v<T, GStar> || std::is_same_v<T, GDual>) return 3;
        else return 4;
      },
      g.node());
}

void print_game(std::ostream& os, const Game& g, int min_level) {
  int lv = game_level(g);
  bool paren = lv < min_level;
  if (paren) os << "(";
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, GAct>) {
          print_action(os, n.act);
        } else if constexpr (std::is_same_v<T, GTest>) {
          // The condition is always parenthesized: a bare condition could
          // swallow the closing `>` of the surrounding modality as a
          // comparison operator.
          os << "?(";
          print_gl(os, n.cond, 1);
          os << ")";
        } else if constexpr (std::is_same_v<T, GChoice>) {
          print_game(os, n.lhs, 1);
          os << " u ";
          print_game(os, n.rhs, 2);
        } else if constexpr (std::is_same_v<T, GSeq>) {
          print_game(os, n.lhs, 2);
          os << "; ";
          print_game(os, n.rhs, 3);
        } else if constexpr (std::is_same_v<T, GStar>) {
          print_game(os, n.body, 4);
          os << "*";
        } else {
          print_game(os, n.body, 4);
          os << "^d";
        }
      },
      g.node());
  if (paren) os << ")";
}

// Is f the gl_not of some formula, and of which one?
std::optional<GlFormula> un_not(const GlFormula& f) {
  if (auto* n = std::get_if<GlNot>(&f.node())) return n->body;
  if (auto* l = std::get_if<GlLit>(&f.node()); l && !l->lit.positive)
    return gl_lit(negate(l->lit));
  if (auto* p = std::get_if<GlPVar>(&f.node()); p && p->var.barred)
    return gl_pvar(unbarred(p->var));
  return std::nullopt;
}

int gl_level(const GlFormula& f) {
  return std::visit(
      [&f](const auto& n) -> int {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, GlOr>) return 1;
        else if constexpr (std::is_same_v<T, GlNot>) {
          // conjunction sugar !( !a | !b )
          if (auto* o = std::get_if<GlOr>(&n.body.node()))
            if (un_not(o->lhs) && un_not(o->rhs)) return 2;
          return 3;
        } else if constexpr (std::is_same_v<T, GlDia>) return 3;
        else return 4;
      },
      f.node());
}

void print_gl(std::ostream& os, const GlFormula& f, int min_level) {
  int lv = gl_level(f);
  bool paren = lv < min_level;
  if (paren) os << "(";
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, GlLit>) {
          print_lit(os, n.lit);
        } else if constexpr (std::is_same_v<T, GlPVar>) {
          print_pvar(os, n.var);
        } else if constexpr (std::is_same_v<T, GlNot>) {
          if (auto* o = std::get_if<GlOr>(&n.body.node())) {
            auto a = un_not(o->lhs);
            auto b = un_not(o->rhs);
            if (a && b) {
              print_gl(os, *a, 2);
              os << " & ";
              print_gl(os, *b, 3);
              return;
            }
          }
          os << "!";
          print_gl(os, n.body, 3);
        } else if constexpr (std::is_same_v<T, GlOr>) {
          print_gl(os, n.lhs, 1);
          os << " | ";
          print_gl(os, n.rhs, 2);
        } else {
          os << "<";
          print_game(os, n.game, 1);
          os << "> ";
          print_gl(os, n.body, 3);
        }
      },
      f.node());
  if (paren) os << ")";
}

}  // namespace

std::string print(const Term& t) {
  std::ostringstream os;
  print_term(os, t, 1);
  return os.str();
}
std::string print(const Literal& l) {
  std::ostringstream os;
  print_lit(os, l);
  return os.str();
}
std::string print(const PVar& v) {
  std::ostringstream os;
  print_pvar(os, v);
  return os.str();
}
std::string print(const Action& a) {
  std::ostringstream os;
  print_action(os, a);
  return os.str();
}
std::string print(const MuFormula& f) {
  std::ostringstream os;
  print_mu(os, f, 1);
  return os.str();
}
std::string print(const GlFormula& f) {
  std::ostringstream os;
  print_gl(os, f, 1);
  return os.str();
}
std::string print(const Game& g) {
  std::ostringstream os;
  print_game(os, g, 1);
  return os.str();
}

}  // namespace mugl
