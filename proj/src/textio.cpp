#include "mintypes/textio.hpp"

#include <vector>

namespace mintypes {

ParseError::ParseError(const std::string& message, SourceSpan span)
    : Error(message + " at " + std::to_string(span.start) + ".." + std::to_string(span.end)),
      message_(message),
      span_(span) {}

namespace {

enum class Tok { Ident, Lambda, Dot, LParen, RParen, Star, LBrack, RBrack, Comma, Colon, Arrow, End };

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

const char* tok_name(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::Lambda: return "'\\'";
    case Tok::Dot: return "'.'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Star: return "'*'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Arrow: return "'->'";
    case Tok::End: return "end of input";
  }
  return "?";
}

bool ident_start(char c) { return c >= 'a' && c <= 'z'; }
bool ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0, ch = 0;  // byte index, character index
  auto push = [&](Tok k, std::string text, std::size_t len_chars) {
    out.push_back({k, std::move(text), {ch, ch + len_chars}});
  };
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i, ++ch;
      continue;
    }
    if (s.substr(i, 2) == "\xce\xbb") {  // λ
      push(Tok::Lambda, "\\", 1);
      i += 2, ++ch;
      continue;
    }
    if (s.substr(i, 2) == "\xce\xa9") {  // Ω
      push(Tok::Star, "*", 1);
      i += 2, ++ch;
      continue;
    }
    if (s.substr(i, 2) == "->") {
      push(Tok::Arrow, "->", 2);
      i += 2, ch += 2;
      continue;
    }
    Tok k = Tok::End;
    switch (c) {
      case '\\': k = Tok::Lambda; break;
      case '.': k = Tok::Dot; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '*': k = Tok::Star; break;
      case '[': k = Tok::LBrack; break;
      case ']': k = Tok::RBrack; break;
      case ',': k = Tok::Comma; break;
      case ':': k = Tok::Colon; break;
      default: break;
    }
    if (k != Tok::End) {
      push(k, std::string(1, static_cast<char>(c)), 1);
      ++i, ++ch;
      continue;
    }
    if (ident_char(static_cast<char>(c))) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      std::string word(s.substr(i, j - i));
      if (!ident_start(word[0]))
        throw ParseError("bad identifier '" + word + "' (must start with a lowercase letter)",
                         {ch, ch + word.size()});
      push(Tok::Ident, word, word.size());
      ch += j - i;
      i = j;
      continue;
    }
    std::size_t len = 1;
    if (c >= 0xC0) len = c >= 0xF0 ? 4 : c >= 0xE0 ? 3 : 2;
    throw ParseError("unexpected character '" + std::string(s.substr(i, len)) + "'", {ch, ch + 1});
  }
  out.push_back({Tok::End, "", {ch, ch}});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
  bool at(Tok k) const { return peek().kind == k; }

  Token expect(Tok k, const char* what) {
    if (!at(k)) {
      const Token& t = peek();
      std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
      throw ParseError(std::string("expected ") + what + ", found " + got, t.span);
    }
    return next();
  }

  void finish() {
    if (at(Tok::End)) return;
    const Token& t = peek();
    if (t.kind == Tok::RParen) throw ParseError("unbalanced ')'", t.span);
    if (t.kind == Tok::Dot) throw ParseError("stray '.'", t.span);
    throw ParseError("unexpected '" + t.text + "' after complete input", t.span);
  }

  Term term() {
    if (at(Tok::Lambda)) return lambda();
    return application();
  }

  Term lambda() {
    expect(Tok::Lambda, "'\\'");
    std::vector<std::string> binders;
    binders.push_back(expect(Tok::Ident, "a binder name").text);
    while (at(Tok::Ident)) binders.push_back(next().text);
    expect(Tok::Dot, "'.' after binder");
    Term body = term();
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = Term::abs(*it, body);
    return body;
  }

  bool atom_start() const { return at(Tok::Ident) || at(Tok::Star) || at(Tok::LParen); }

  Term application() {
    if (!atom_start()) {
      const Token& t = peek();
      if (t.kind == Tok::Dot) throw ParseError("stray '.'", t.span);
      if (t.kind == Tok::RParen) throw ParseError("unbalanced ')'", t.span);
      throw ParseError(std::string("expected a term, found ") + tok_name(t.kind), t.span);
    }
    Term acc = atom();
    while (true) {
      if (at(Tok::Lambda)) return Term::app(acc, lambda());
      if (!atom_start()) return acc;
      acc = Term::app(acc, atom());
    }
  }

  Term atom() {
    if (at(Tok::Ident)) return Term::var(next().text);
    if (at(Tok::Star)) {
      next();
      return Term::omega();
    }
    Token open = expect(Tok::LParen, "'('");
    Term t = term();
    if (!at(Tok::RParen)) {
      if (at(Tok::End)) throw ParseError("unbalanced '('", open.span);
      expect(Tok::RParen, "')'");
    }
    next();
    return t;
  }

  SType stype() {
    if (at(Tok::Ident)) return SType::base(next().text);
    if (at(Tok::LParen)) {
      Token open = next();
      SType s = stype();
      if (!at(Tok::RParen)) {
        if (at(Tok::End)) throw ParseError("unbalanced '('", open.span);
        expect(Tok::RParen, "')'");
      }
      next();
      if (at(Tok::Arrow))
        throw ParseError("arrow domain must be a multiset type such as [a]", peek().span);
      return s;
    }
    if (at(Tok::LBrack)) {
      MType dom = mtype();
      expect(Tok::Arrow, "'->' after a multiset (multisets are not strict types)");
      return SType::arrow(dom, stype());
    }
    const Token& t = peek();
    throw ParseError(std::string("expected a type, found ") + tok_name(t.kind), t.span);
  }

  MType mtype() {
    Token open = expect(Tok::LBrack, "'['");
    std::vector<SType> items;
    if (!at(Tok::RBrack)) {
      items.push_back(stype());
      while (at(Tok::Comma)) {
        next();
        items.push_back(stype());
      }
    }
    if (at(Tok::End)) throw ParseError("unbalanced '['", open.span);
    expect(Tok::RBrack, "']' or ','");
    return MType(std::move(items));
  }

  Env env() {
    Env g;
    std::set<std::string> seen;
    if (at(Tok::End)) return g;
    while (true) {
      Token x = expect(Tok::Ident, "a variable name");
      if (!seen.insert(x.text).second) throw ParseError("duplicate variable '" + x.text + "'", x.span);
      expect(Tok::Colon, "':'");
      g = g.with(x.text, mtype());
      if (!at(Tok::Comma)) break;
      next();
    }
    return g;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

bool needs_parens_as_arg(const Term& t) { return t.is_app() || t.is_abs(); }

void print_into(const Term& t, std::string& out) {
  switch (t.kind()) {
    case TermKind::Var: out += t.name(); break;
    case TermKind::Omega: out += '*'; break;
    case TermKind::Abs:
      out += '\\';
      out += t.name();
      out += ". ";
      print_into(t.body(), out);
      break;
    case TermKind::App: {
      if (t.fun().is_abs()) {
        out += '(';
        print_into(t.fun(), out);
        out += ')';
      } else {
        print_into(t.fun(), out);
      }
      out += ' ';
      if (needs_parens_as_arg(t.arg())) {
        out += '(';
        print_into(t.arg(), out);
        out += ')';
      } else {
        print_into(t.arg(), out);
      }
      break;
    }
  }
}

}  // namespace

Term parse_term(std::string_view text) {
  Parser p(text);
  Term t = p.term();
  p.finish();
  return hygienize(t);
}

Term parse_term_exact(std::string_view text) {
  Parser p(text);
  Term t = p.term();
  p.finish();
  return t;
}

SType parse_type(std::string_view text) {
  Parser p(text);
  SType s = p.stype();
  p.finish();
  return s;
}

MType parse_mtype(std::string_view text) {
  Parser p(text);
  MType a = p.mtype();
  p.finish();
  return a;
}

Env parse_env(std::string_view text) {
  Parser p(text);
  Env g = p.env();
  p.finish();
  return g;
}

std::string print_term(const Term& t) {
  std::string out;
  print_into(t, out);
  return out;
}

std::string print_type(const SType& s) {
  if (s.is_base()) return s.name();
  return print_mtype(s.domain()) + " -> " + print_type(s.codomain());
}

std::string print_mtype(const MType& a) {
  std::string out = "[";
  bool first = true;
  for (const auto& s : a.items()) {
    if (!first) out += ',';
    first = false;
    out += print_type(s);
  }
  return out + "]";
}

std::string print_env(const Env& g) {
  std::string out;
  for (const auto& [x, a] : g.bindings()) {
    if (!out.empty()) out += ", ";
    out += x + ":" + print_mtype(a);
  }
  return out;
}

std::string render_diagnostic(std::string_view text, const ParseError& e) {
  std::string out = "error: " + e.message() + "\n  " + std::string(text) + "\n  ";
  auto sp = e.span();
  out += std::string(sp.start, ' ');
  out += std::string(std::max<std::size_t>(1, sp.end - sp.start), '^');
  return out;
}

}  // namespace mintypes
