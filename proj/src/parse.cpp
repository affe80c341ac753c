#include "mugl/parse.hpp"

#include <cctype>

namespace mugl {

namespace {

enum class Tok {
  End, Ident, Number,
  LParen, RParen, LBracket, RBracket, LBrace, RBrace,
  Less, Greater, Leq, Geq, Eq, Neq, Assign, Colon,
  Dot, Comma, Semi, Bang, Bar, Amp, Tilde, Question, Star,
  Plus, Minus, Slash, Caret, At, Prime, Arrow, Iff,
};

struct Token {
  Tok kind;
  std::string text;
  size_t pos;
};

struct Lexer {
  const std::string& src;
  size_t i = 0;
  Token cur;

  explicit Lexer(const std::string& s) : src(s) { advance(); }

  [[noreturn]] void err(const std::string& msg, size_t pos) const { throw ParseError(msg, pos); }

  void advance() {
    while (i < src.size() && std::isspace(static_cast<unsigned char>(src[i]))) ++i;
    size_t pos = i;
    if (i >= src.size()) {
      cur = {Tok::End, "", pos};
      return;
    }
    char c = src[i];
    auto two = [&](char a, char b) {
      return c == a && i + 1 < src.size() && src[i + 1] == b;
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      cur = {Tok::Ident, src.substr(i, j - i), pos};
      i = j;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      cur = {Tok::Number, src.substr(i, j - i), pos};
      i = j;
      return;
    }
    if (c == '<' && i + 2 < src.size() && src[i + 1] == '-' && src[i + 2] == '>') {
      cur = {Tok::Iff, "<->", pos};
      i += 3;
      return;
    }
    if (two('-', '>')) { cur = {Tok::Arrow, "->", pos}; i += 2; return; }
    if (two('<', '=')) { cur = {Tok::Leq, "<=", pos}; i += 2; return; }
    if (two('>', '=')) { cur = {Tok::Geq, ">=", pos}; i += 2; return; }
    if (two(':', '=')) { cur = {Tok::Assign, ":=", pos}; i += 2; return; }
    if (two('!', '=')) { cur = {Tok::Neq, "!=", pos}; i += 2; return; }
    ++i;
    switch (c) {
      case '(': cur = {Tok::LParen, "(", pos}; return;
      case ')': cur = {Tok::RParen, ")", pos}; return;
      case '[': cur = {Tok::LBracket, "[", pos}; return;
      case ']': cur = {Tok::RBracket, "]", pos}; return;
      case '{': cur = {Tok::LBrace, "{", pos}; return;
      case '}': cur = {Tok::RBrace, "}", pos}; return;
      case '<': cur = {Tok::Less, "<", pos}; return;
      case '>': cur = {Tok::Greater, ">", pos}; return;
      case '=': cur = {Tok::Eq, "=", pos}; return;
      case ':': cur = {Tok::Colon, ":", pos}; return;
      case '.': cur = {Tok::Dot, ".", pos}; return;
      case ',': cur = {Tok::Comma, ",", pos}; return;
      case ';': cur = {Tok::Semi, ";", pos}; return;
      case '!': cur = {Tok::Bang, "!", pos}; return;
      case '|': cur = {Tok::Bar, "|", pos}; return;
      case '&': cur = {Tok::Amp, "&", pos}; return;
      case '~': cur = {Tok::Tilde, "~", pos}; return;
      case '?': cur = {Tok::Question, "?", pos}; return;
      case '*': cur = {Tok::Star, "*", pos}; return;
      case '+': cur = {Tok::Plus, "+", pos}; return;
      case '-': cur = {Tok::Minus, "-", pos}; return;
      case '/': cur = {Tok::Slash, "/", pos}; return;
      case '^': cur = {Tok::Caret, "^", pos}; return;
      case '@': cur = {Tok::At, "@", pos}; return;
      case '\'': cur = {Tok::Prime, "'", pos}; return;
      default: err(std::string("unexpected character '") + c + "'", pos);
    }
  }

  bool at(Tok k) const { return cur.kind == k; }
  bool at_ident(const char* s) const { return cur.kind == Tok::Ident && cur.text == s; }

  Token eat(Tok k, const char* what) {
    if (cur.kind != k) err(std::string("expected ") + what + ", found '" + cur.text + "'", cur.pos);
    Token t = cur;
    advance();
    return t;
  }

  bool accept(Tok k) {
    if (cur.kind != k) return false;
    advance();
    return true;
  }
};

bool is_upper_ident(const Token& t) {
  return t.kind == Tok::Ident && !t.text.empty() && std::isupper(static_cast<unsigned char>(t.text[0]));
}

bool starts_term(const Lexer& lx) {
  return lx.cur.kind == Tok::Ident || lx.cur.kind == Tok::Number || lx.cur.kind == Tok::LParen ||
         lx.cur.kind == Tok::Minus;
}

struct Parser {
  Lexer lx;
  explicit Parser(const std::string& s) : lx(s) {}

  [[noreturn]] void err(const std::string& msg) { throw ParseError(msg, lx.cur.pos); }

  // --- terms ------------------------------------------------------------

  Term term() { return term_sum(); }

  Term term_sum() {
    Term t = term_prod();
    while (lx.at(Tok::Plus) || lx.at(Tok::Minus)) {
      std::string op = lx.cur.text;
      lx.advance();
      t = app(op, {t, term_prod()});
    }
    return t;
  }

  Term term_prod() {
    Term t = term_unary();
    while (lx.at(Tok::Star) || lx.at(Tok::Slash)) {
      std::string op = lx.cur.text;
      lx.advance();
      t = app(op, {t, term_unary()});
    }
    return t;
  }

  Term term_unary() {
    if (lx.accept(Tok::Minus)) return app("neg", {term_unary()});
    return term_atom();
  }

  Term term_atom() {
    if (lx.at(Tok::Number)) {
      Term t = cnst(lx.cur.text);
      lx.advance();
      return t;
    }
    if (lx.accept(Tok::LParen)) {
      Term t = term_sum();
      lx.eat(Tok::RParen, "')'");
      return t;
    }
    Token id = lx.eat(Tok::Ident, "term");
    if (lx.accept(Tok::LParen)) {
      std::vector<Term> args;
      if (!lx.at(Tok::RParen)) {
        args.push_back(term_sum());
        while (lx.accept(Tok::Comma)) args.push_back(term_sum());
      }
      lx.eat(Tok::RParen, "')'");
      return app(id.text, std::move(args));
    }
    return var(id.text);
  }

  // --- shared formula atoms ----------------------------------------------

  std::optional<std::string> relation_op() {
    switch (lx.cur.kind) {
      case Tok::Eq: return "=";
      case Tok::Neq: return "!=";
      case Tok::Leq: return "<=";
      case Tok::Geq: return ">=";
      case Tok::Less: return "<";
      case Tok::Greater: return ">";
      default: return std::nullopt;
    }
  }

  // term [rel term] as a literal; a lone identifier/application becomes a
  // nullary/n-ary predicate.
  Literal literal_atom() {
    Term lhs = term();
    if (auto rel = relation_op()) {
      // `>` closes a modality: treat as relation only if a term follows.
      if (*rel == ">" ) {
        size_t save_i = lx.i;
        Token save = lx.cur;
        lx.advance();
        if (!starts_term(lx)) {
          lx.i = save_i;
          lx.cur = save;
          return term_to_pred(lhs);
        }
        Term rhs = term();
        return Literal{true, Atom{">", {lhs, rhs}}};
      }
      lx.advance();
      Term rhs = term();
      if (*rel == "!=") return negate(eq_lit(lhs, rhs));
      return Literal{true, Atom{*rel, {lhs, rhs}}};
    }
    return term_to_pred(lhs);
  }

  Literal term_to_pred(const Term& t) {
    if (auto* v = std::get_if<TermVar>(&t.node())) return pred_lit(v->name);
    if (auto* a = std::get_if<TermApp>(&t.node())) return Literal{true, Atom{a->fn, a->args}};
    err("a bare constant is not a formula");
  }

  PVar pvar_token() {
    bool barred = lx.accept(Tok::Tilde);
    Token id = lx.eat(Tok::Ident, "propositional variable");
    if (!is_upper_ident(id)) err("propositional variables start uppercase: " + id.text);
    PVar v{id.text, barred, {}};
    while (lx.accept(Tok::At)) {
      lx.eat(Tok::LParen, "'('");
      Token a = lx.eat(Tok::Ident, "variable");
      lx.eat(Tok::Comma, "','");
      Token b = lx.eat(Tok::Ident, "variable");
      lx.eat(Tok::RParen, "')'");
      SwapTag tag{a.text, b.text};
      if (tag.first > tag.second) std::swap(tag.first, tag.second);
      v.tags.push_back(std::move(tag));
    }
    return v;
  }

  // --- actions -----------------------------------------------------------

  Action action() {
    if (lx.at(Tok::LBrace)) return ode_action();
    Token id = lx.eat(Tok::Ident, "action");
    if (lx.accept(Tok::Assign)) {
      if (lx.accept(Tok::Star)) return random_act(id.text);
      return assign_act(id.text, term());
    }
    std::vector<SwapTag> tags;
    while (lx.accept(Tok::At)) {
      lx.eat(Tok::LParen, "'('");
      Token a = lx.eat(Tok::Ident, "variable");
      lx.eat(Tok::Comma, "','");
      Token b = lx.eat(Tok::Ident, "variable");
      lx.eat(Tok::RParen, "')'");
      SwapTag tag{a.text, b.text};
      if (tag.first > tag.second) std::swap(tag.first, tag.second);
      tags.push_back(std::move(tag));
    }
    return named_act(id.text, std::move(tags));
  }

  Action ode_action() {
    lx.eat(Tok::LBrace, "'{'");
    std::vector<std::pair<std::string, Term>> derivs;
    for (;;) {
      Token v = lx.eat(Tok::Ident, "variable");
      lx.eat(Tok::Prime, "'");
      lx.eat(Tok::Eq, "'='");
      derivs.emplace_back(v.text, term());
      if (!lx.accept(Tok::Comma)) break;
    }
    std::optional<MuFormula> constraint;
    if (lx.accept(Tok::Amp)) constraint = mu_formula();
    lx.eat(Tok::RBrace, "'}'");
    return ode_act(std::move(derivs), std::move(constraint));
  }

  // --- mu-calculus formulas ----------------------------------------------

  MuFormula mu_formula() {
    MuFormula f = mu_impl();
    while (lx.accept(Tok::Iff)) f = mu_iff(f, mu_impl());
    return f;
  }

  MuFormula mu_impl() {
    MuFormula f = mu_or_level();
    if (lx.accept(Tok::Arrow)) return mu_implies(f, mu_impl());
    return f;
  }

  MuFormula mu_or_level() {
    MuFormula f = mu_and_level();
    while (lx.accept(Tok::Bar)) f = mu_or(f, mu_and_level());
    return f;
  }

  MuFormula mu_and_level() {
    MuFormula f = mu_unary();
    while (lx.accept(Tok::Amp)) f = mu_and(f, mu_unary());
    return f;
  }

  MuFormula mu_unary() {
    if (lx.accept(Tok::Bang)) return bar(mu_unary());
    if (lx.accept(Tok::Less)) {
      Action a = action();
      lx.eat(Tok::Greater, "'>'");
      return mu_dia(a, mu_unary());
    }
    if (lx.accept(Tok::LBracket)) {
      Action a = action();
      lx.eat(Tok::RBracket, "']'");
      return mu_box(a, mu_unary());
    }
    if (lx.at_ident("mu") || lx.at_ident("nu")) {
      bool least = lx.cur.text == "mu";
      lx.advance();
      PVar v = pvar_token();
      lx.eat(Tok::Dot, "'.'");
      MuFormula body = mu_unary();
      return least ? mu_mu(v, std::move(body)) : mu_nu(v, std::move(body));
    }
    return mu_atom();
  }

  MuFormula mu_atom() {
    if (lx.accept(Tok::LParen)) {
      MuFormula f = mu_formula();
      lx.eat(Tok::RParen, "')'");
      return f;
    }
    if (lx.at_ident("true")) { lx.advance(); return mu_true(); }
    if (lx.at_ident("false")) { lx.advance(); return mu_false(); }
    if (lx.at(Tok::Tilde) || is_upper_ident(lx.cur)) return mu_pvar(pvar_token());
    return mu_lit(literal_atom());
  }

  // --- game logic ----------------------------------------------------------

  GlFormula gl_formula() {
    GlFormula f = gl_impl();
    while (lx.accept(Tok::Iff)) f = gl_iff(f, gl_impl());
    return f;
  }

  GlFormula gl_impl() {
    GlFormula f = gl_or_level();
    if (lx.accept(Tok::Arrow)) return gl_implies(f, gl_impl());
    return f;
  }

  GlFormula gl_or_level() {
    GlFormula f = gl_and_level();
    while (lx.accept(Tok::Bar)) f = gl_or(f, gl_and_level());
    return f;
  }

  GlFormula gl_and_level() {
    GlFormula f = gl_unary();
    while (lx.accept(Tok::Amp)) f = gl_and(f, gl_unary());
    return f;
  }

  GlFormula gl_unary() {
    if (lx.accept(Tok::Bang)) return gl_not(gl_unary());
    if (lx.accept(Tok::Less)) {
      Game g = game_expr();
      lx.eat(Tok::Greater, "'>'");
      return gl_dia(g, gl_unary());
    }
    if (lx.accept(Tok::LBracket)) {
      Game g = game_expr();
      lx.eat(Tok::RBracket, "']'");
      return gl_box(g, gl_unary());  // [g] phi is <g^d> phi
    }
    if (lx.at_ident("mu") || lx.at_ident("nu"))
      err("fixpoint binders do not occur in game logic formulas");
    return gl_atom();
  }

  GlFormula gl_atom() {
    if (lx.accept(Tok::LParen)) {
      GlFormula f = gl_formula();
      lx.eat(Tok::RParen, "')'");
      return f;
    }
    if (lx.at_ident("true")) { lx.advance(); return gl_true(); }
    if (lx.at_ident("false")) { lx.advance(); return gl_false(); }
    if (lx.at(Tok::Tilde) || is_upper_ident(lx.cur)) return gl_pvar(pvar_token());
    return gl_lit(literal_atom());
  }

  Game game_expr() {
    Game g = game_seq_level();
    while (lx.at_ident("u") || lx.at_ident("n")) {
      bool angelic = lx.cur.text == "u";
      lx.advance();
      Game rhs = game_seq_level();
      g = angelic ? g_choice(g, rhs) : g_demonic_choice(g, rhs);
    }
    return g;
  }

  Game game_seq_level() {
    Game g = game_postfix();
    while (lx.accept(Tok::Semi)) g = g_seq(g, game_postfix());
    return g;
  }

  Game game_postfix() {
    Game g = game_atom();
    for (;;) {
      if (lx.accept(Tok::Star)) {
        g = g_star(g);
      } else if (lx.at(Tok::Caret)) {
        lx.advance();
        Token id = lx.eat(Tok::Ident, "'d' or 'x'");
        if (id.text == "d") g = g_dual(g);
        else if (id.text == "x") g = g_demonic_repeat(g);
        else err("unknown game postfix ^" + id.text);
      } else {
        break;
      }
    }
    return g;
  }

  Game game_atom() {
    if (lx.accept(Tok::LParen)) {
      Game g = game_expr();
      lx.eat(Tok::RParen, "')'");
      return g;
    }
    if (lx.accept(Tok::Question)) return g_test(gl_unary());
    return g_act(action());
  }
};

template <typename T, typename F>
T parse_all(const std::string& text, F run) {
  Parser p(text);
  T result = run(p);
  if (!p.lx.at(Tok::End)) throw ParseError("trailing input '" + p.lx.cur.text + "'", p.lx.cur.pos);
  return result;
}

}  // namespace

Term parse_term(const std::string& text) {
  return parse_all<Term>(text, [](Parser& p) { return p.term(); });
}
MuFormula parse_mu(const std::string& text) {
  return parse_all<MuFormula>(text, [](Parser& p) { return p.mu_formula(); });
}
GlFormula parse_gl(const std::string& text) {
  return parse_all<GlFormula>(text, [](Parser& p) { return p.gl_formula(); });
}
Game parse_game(const std::string& text) {
  return parse_all<Game>(text, [](Parser& p) { return p.game_expr(); });
}

}  // namespace mugl
