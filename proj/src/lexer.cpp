#include "lexer.hpp"

#include <cctype>

#include "shmlenf/error.hpp"

namespace shmlenf::detail {

namespace {

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

} // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Tok k, std::size_t len) {
    out.push_back({k, std::string(text.substr(i, len)), i});
    i += len;
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < text.size() && text[i + 1] == '/')) {
      while (i < text.size() && text[i] != '\n')
        ++i;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < text.size() && ident_char(text[j]))
        ++j;
      push(Tok::Ident, j - i);
      continue;
    }
    // U+2022 BULLET, accepted as a synonym for '*'.
    if (text.substr(i, 3) == "\xE2\x80\xA2") {
      out.push_back({Tok::Star, "*", i});
      i += 3;
      continue;
    }
    auto two = text.substr(i, 2);
    if (two == "!=") {
      push(Tok::NotEquals, 2);
    } else if (two == "&&") {
      push(Tok::AndAnd, 2);
    } else if (two == "||") {
      push(Tok::OrOr, 2);
    } else if (two == "->") {
      push(Tok::Arrow, 2);
    } else {
      switch (c) {
      case '(': push(Tok::LParen, 1); break;
      case ')': push(Tok::RParen, 1); break;
      case '[': push(Tok::LBracket, 1); break;
      case ']': push(Tok::RBracket, 1); break;
      case '<': push(Tok::LAngle, 1); break;
      case '>': push(Tok::RAngle, 1); break;
      case '{': push(Tok::LBrace, 1); break;
      case '}': push(Tok::RBrace, 1); break;
      case '.': push(Tok::Dot, 1); break;
      case ',': push(Tok::Comma, 1); break;
      case ';': push(Tok::Semicolon, 1); break;
      case '=': push(Tok::Equals, 1); break;
      case '!': push(Tok::Bang, 1); break;
      case '?': push(Tok::Question, 1); break;
      case '+': push(Tok::Plus, 1); break;
      case '*': push(Tok::Star, 1); break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", i);
      }
    }
  }
  out.push_back({Tok::End, "", text.size()});
  return out;
}

const char *describe(Tok kind) {
  switch (kind) {
  case Tok::Ident: return "identifier";
  case Tok::LParen: return "'('";
  case Tok::RParen: return "')'";
  case Tok::LBracket: return "'['";
  case Tok::RBracket: return "']'";
  case Tok::LAngle: return "'<'";
  case Tok::RAngle: return "'>'";
  case Tok::LBrace: return "'{'";
  case Tok::RBrace: return "'}'";
  case Tok::Dot: return "'.'";
  case Tok::Comma: return "','";
  case Tok::Semicolon: return "';'";
  case Tok::Equals: return "'='";
  case Tok::NotEquals: return "'!='";
  case Tok::Bang: return "'!'";
  case Tok::AndAnd: return "'&&'";
  case Tok::OrOr: return "'||'";
  case Tok::Question: return "'?'";
  case Tok::Plus: return "'+'";
  case Tok::Arrow: return "'->'";
  case Tok::Star: return "'*'";
  case Tok::End: return "end of input";
  }
  return "token";
}

const Token &TokenStream::expect(Tok kind) {
  if (!at(kind))
    fail(std::string("expected ") + describe(kind));
  return next();
}

std::string TokenStream::expect_ident() { return expect(Tok::Ident).text; }

void TokenStream::expect_ident(std::string_view word) {
  if (!at_ident(word))
    fail("expected '" + std::string(word) + "'");
  next();
}

void TokenStream::fail(const std::string &what) const {
  const Token &t = peek();
  std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
  throw ParseError(what + ", found " + found, t.pos);
}

} // namespace shmlenf::detail
