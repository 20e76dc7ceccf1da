#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "geodef/fol.hpp"

namespace geodef::fol {

namespace {

enum class Tok : std::uint8_t {
  LParen, RParen, Comma, Bang, Amp, Pipe, Arrow, Iff, Eq, Le,
  Plus, Minus, Star, Zero, One, Var, Ident, KwForall, KwExists, End,
};

struct Token {
  Tok kind = Tok::End;
  int pos = 0;
  int var = 0;       // Tok::Var
  std::string text;  // Tok::Ident
};

Token tok(Tok kind, int pos) {
  Token t;
  t.kind = kind;
  t.pos = pos;
  return t;
}

// Soft parse failure used for backtracking; converted to Err::SyntaxError
// at the public boundary.
struct ParseFail {
  int pos;
  std::string msg;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    int pos = static_cast<int>(i);
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    switch (c) {
      case '(': out.push_back(tok(Tok::LParen, pos)); ++i; continue;
      case ')': out.push_back(tok(Tok::RParen, pos)); ++i; continue;
      case ',': out.push_back(tok(Tok::Comma, pos)); ++i; continue;
      case '!': out.push_back(tok(Tok::Bang, pos)); ++i; continue;
      case '&': out.push_back(tok(Tok::Amp, pos)); ++i; continue;
      case '|': out.push_back(tok(Tok::Pipe, pos)); ++i; continue;
      case '+': out.push_back(tok(Tok::Plus, pos)); ++i; continue;
      case '*': out.push_back(tok(Tok::Star, pos)); ++i; continue;
      case '=': out.push_back(tok(Tok::Eq, pos)); ++i; continue;
      case '-':
        if (i + 1 < s.size() && s[i + 1] == '>') {
          out.push_back(tok(Tok::Arrow, pos));
          i += 2;
        } else {
          out.push_back(tok(Tok::Minus, pos));
          ++i;
        }
        continue;
      case '<':
        if (i + 2 < s.size() && s[i + 1] == '-' && s[i + 2] == '>') {
          out.push_back(tok(Tok::Iff, pos));
          i += 3;
        } else if (i + 1 < s.size() && s[i + 1] == '=') {
          out.push_back(tok(Tok::Le, pos));
          i += 2;
        } else {
          throw ParseFail{pos, "expected '<=' or '<->'"};
        }
        continue;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      std::string num = s.substr(i, j - i);
      if (num == "0")
        out.push_back(tok(Tok::Zero, pos));
      else if (num == "1")
        out.push_back(tok(Tok::One, pos));
      else
        throw ParseFail{pos, "only the constants 0 and 1 exist"};
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      std::string word = s.substr(i, j - i);
      i = j;
      if (word == "forall") {
        out.push_back(tok(Tok::KwForall, pos));
      } else if (word == "exists") {
        out.push_back(tok(Tok::KwExists, pos));
      } else if (word.size() > 1 && word[0] == 'v' &&
                 std::all_of(word.begin() + 1, word.end(),
                             [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
        int idx = std::stoi(word.substr(1));
        if (idx < 1) throw ParseFail{pos, "variable indices start at 1"};
        Token t = tok(Tok::Var, pos);
        t.var = idx;
        out.push_back(t);
      } else {
        Token t = tok(Tok::Ident, pos);
        t.text = word;
        out.push_back(t);
      }
      continue;
    }
    throw ParseFail{pos, std::string("unexpected character '") + c + "'"};
  }
  out.push_back(tok(Tok::End, static_cast<int>(s.size())));
  return out;
}

class Parser {
public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula formula() {
    Formula f = iff();
    expect(Tok::End, "trailing input after formula");
    return f;
  }

  Term term_only() {
    Term t = term();
    expect(Tok::End, "trailing input after term");
    return t;
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }
  void expect(Tok k, const std::string& what) {
    if (!accept(k)) throw ParseFail{peek().pos, what};
  }

  Formula iff() {
    Formula f = implies();
    while (accept(Tok::Iff)) f = f_iff(std::move(f), implies());
    return f;
  }

  Formula implies() {
    Formula f = disj();
    if (accept(Tok::Arrow)) return f_implies(std::move(f), implies());
    return f;
  }

  Formula disj() {
    Formula f = conj();
    while (accept(Tok::Pipe)) f = f_or(std::move(f), conj());
    return f;
  }

  Formula conj() {
    Formula f = unary();
    while (accept(Tok::Amp)) f = f_and(std::move(f), unary());
    return f;
  }

  Formula unary() {
    if (accept(Tok::Bang)) return f_not(unary());
    if (at(Tok::KwForall) || at(Tok::KwExists)) {
      bool forall = take().kind == Tok::KwForall;
      if (!at(Tok::Var)) throw ParseFail{peek().pos, "expected a variable after quantifier"};
      int v = take().var;
      Formula body = unary();
      return forall ? f_forall(v, std::move(body)) : f_exists(v, std::move(body));
    }
    return atom();
  }

  Formula atom() {
    if (at(Tok::LParen)) {
      // Could open a parenthesized term of a comparison or a parenthesized
      // formula; try the term reading first and rewind on failure.
      std::size_t saved = pos_;
      try {
        return comparison();
      } catch (const ParseFail&) {
        pos_ = saved;
      }
      expect(Tok::LParen, "expected '('");
      Formula f = iff();
      expect(Tok::RParen, "expected ')'");
      return f;
    }
    if (at(Tok::Ident)) {
      Token name = take();
      expect(Tok::LParen, "expected '(' after relation symbol");
      std::vector<Term> args;
      args.push_back(term());
      while (accept(Tok::Comma)) args.push_back(term());
      expect(Tok::RParen, "expected ')' after relation arguments");
      return f_rel(name.text, std::move(args));
    }
    return comparison();
  }

  Formula comparison() {
    Term lhs = term();
    if (accept(Tok::Eq)) return f_eq(std::move(lhs), term());
    if (accept(Tok::Le)) return f_le(std::move(lhs), term());
    throw ParseFail{peek().pos, "expected '=' or '<='"};
  }

  Term term() {
    Term t = factor();
    while (true) {
      if (accept(Tok::Plus))
        t = t_add(std::move(t), factor());
      else if (accept(Tok::Minus))
        t = t_sub(std::move(t), factor());
      else
        return t;
    }
  }

  Term factor() {
    Term t = primary();
    while (accept(Tok::Star)) t = t_mul(std::move(t), primary());
    return t;
  }

  Term primary() {
    if (accept(Tok::Zero)) return t_zero();
    if (accept(Tok::One)) return t_one();
    if (at(Tok::Var)) return t_var(take().var);
    if (accept(Tok::LParen)) {
      Term t = term();
      expect(Tok::RParen, "expected ')' in term");
      return t;
    }
    throw ParseFail{peek().pos, "expected a term"};
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse(const std::string& text) {
  try {
    return Parser(lex(text)).formula();
  } catch (const ParseFail& f) {
    fail(Err::SyntaxError, f.msg + " at position " + std::to_string(f.pos));
  }
}

Term parse_term(const std::string& text) {
  try {
    return Parser(lex(text)).term_only();
  } catch (const ParseFail& f) {
    fail(Err::SyntaxError, f.msg + " at position " + std::to_string(f.pos));
  }
}

// ---- Pretty printing ----

namespace {

// Formula precedence: iff 1, implies 2, or 3, and 4, prefix 5, atoms 6.
int fprec(const Formula& f) {
  switch (f.kind) {
    case FormulaKind::Iff: return 1;
    case FormulaKind::Implies: return 2;
    case FormulaKind::Or: return 3;
    case FormulaKind::And: return 4;
    case FormulaKind::Not:
    case FormulaKind::Exists:
    case FormulaKind::Forall: return 5;
    default: return 6;
  }
}

// Term precedence: add/sub 1, mul 2, atoms 3.
int tprec(const Term& t) {
  switch (t.kind) {
    case TermKind::Add:
    case TermKind::Sub: return 1;
    case TermKind::Mul: return 2;
    default: return 3;
  }
}

void print_term(std::string& out, const Term& t, int min_prec) {
  bool paren = tprec(t) < min_prec;
  if (paren) out += '(';
  switch (t.kind) {
    case TermKind::Var: out += 'v' + std::to_string(t.var); break;
    case TermKind::Zero: out += '0'; break;
    case TermKind::One: out += '1'; break;
    case TermKind::Add:
      print_term(out, t.kids[0], 1);
      out += " + ";
      print_term(out, t.kids[1], 2);
      break;
    case TermKind::Sub:
      print_term(out, t.kids[0], 1);
      out += " - ";
      print_term(out, t.kids[1], 2);
      break;
    case TermKind::Mul:
      print_term(out, t.kids[0], 2);
      out += '*';
      print_term(out, t.kids[1], 3);
      break;
  }
  if (paren) out += ')';
}

void print_formula(std::string& out, const Formula& f, int min_prec) {
  bool paren = fprec(f) < min_prec;
  if (paren) out += '(';
  switch (f.kind) {
    case FormulaKind::Eq:
      print_term(out, f.terms[0], 1);
      out += " = ";
      print_term(out, f.terms[1], 1);
      break;
    case FormulaKind::Le:
      print_term(out, f.terms[0], 1);
      out += " <= ";
      print_term(out, f.terms[1], 1);
      break;
    case FormulaKind::RelApp: {
      out += f.rel;
      out += '(';
      for (std::size_t i = 0; i < f.terms.size(); ++i) {
        if (i > 0) out += ", ";
        print_term(out, f.terms[i], 1);
      }
      out += ')';
      break;
    }
    case FormulaKind::Not:
      out += '!';
      print_formula(out, f.kids[0], 5);
      break;
    case FormulaKind::And:
      print_formula(out, f.kids[0], 4);
      out += " & ";
      print_formula(out, f.kids[1], 5);
      break;
    case FormulaKind::Or:
      print_formula(out, f.kids[0], 3);
      out += " | ";
      print_formula(out, f.kids[1], 4);
      break;
    case FormulaKind::Implies:
      print_formula(out, f.kids[0], 3);
      out += " -> ";
      print_formula(out, f.kids[1], 2);
      break;
    case FormulaKind::Iff:
      print_formula(out, f.kids[0], 1);
      out += " <-> ";
      print_formula(out, f.kids[1], 2);
      break;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      out += f.kind == FormulaKind::Exists ? "exists v" : "forall v";
      out += std::to_string(f.var);
      out += ' ';
      print_formula(out, f.kids[0], 5);
      break;
  }
  if (paren) out += ')';
}

}  // namespace

std::string pretty_print(const Formula& f) {
  std::string out;
  print_formula(out, f, 1);
  return out;
}

std::string pretty_print(const Term& t) {
  std::string out;
  print_term(out, t, 1);
  return out;
}

}  // namespace geodef::fol
