#ifndef SHMLENF_LEXER_HPP
#define SHMLENF_LEXER_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace shmlenf::detail {

enum class Tok {
  Ident,
  LParen,
  RParen,
  LBracket,
  RBracket,
  LAngle,
  RAngle,
  LBrace,
  RBrace,
  Dot,
  Comma,
  Semicolon,
  Equals,
  NotEquals,
  Bang,
  AndAnd,
  OrOr,
  Question,
  Plus,
  Arrow,
  Star,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view text);
const char *describe(Tok kind);

/// Cursor over a token stream shared by the formula, process, transducer and
/// spec-file parsers.
class TokenStream {
public:
  explicit TokenStream(std::string_view text) : toks_(tokenize(text)) {}

  const Token &peek(std::size_t ahead = 0) const {
    std::size_t i = idx_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  bool at(Tok kind) const { return peek().kind == kind; }
  bool at_ident(std::string_view word) const {
    return peek().kind == Tok::Ident && peek().text == word;
  }
  const Token &next() {
    const Token &t = peek();
    if (idx_ < toks_.size() - 1)
      ++idx_;
    return t;
  }
  bool accept(Tok kind) {
    if (!at(kind))
      return false;
    next();
    return true;
  }
  bool accept_ident(std::string_view word) {
    if (!at_ident(word))
      return false;
    next();
    return true;
  }
  const Token &expect(Tok kind);
  std::string expect_ident();
  void expect_ident(std::string_view word);
  [[noreturn]] void fail(const std::string &what) const;

  std::size_t mark() const { return idx_; }
  void reset(std::size_t m) { idx_ = m; }

private:
  std::vector<Token> toks_;
  std::size_t idx_ = 0;
};

} // namespace shmlenf::detail

#endif
