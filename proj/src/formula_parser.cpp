#include <algorithm>

#include "lexer.hpp"
#include "shmlenf/error.hpp"
#include "shmlenf/formula.hpp"
#include "symbolic_parse.hpp"

namespace shmlenf {

namespace {

using detail::DataScope;
using detail::Tok;
using detail::TokenStream;

bool reserved(const std::string &word) {
  return word == "tt" || word == "ff" || word == "max" || word == "min" ||
         word == "when";
}

class FormulaParser {
public:
  FormulaParser(std::string_view text, const Domain *domain)
      : ts_(text), data_(domain) {}

  Formula parse() {
    Formula f = parse_or();
    if (!ts_.at(Tok::End))
      ts_.fail("unexpected trailing input");
    return f;
  }

private:
  Formula parse_or() {
    std::vector<Formula> ops{parse_and()};
    while (ts_.accept(Tok::OrOr))
      ops.push_back(parse_and());
    return Formula::disj(std::move(ops));
  }

  Formula parse_and() {
    std::vector<Formula> ops{parse_prefix()};
    while (ts_.accept(Tok::AndAnd))
      ops.push_back(parse_prefix());
    return Formula::conj(std::move(ops));
  }

  Formula parse_modal(Tok close, bool necessity) {
    SymbolicAction sa = detail::parse_symbolic_action(ts_, data_, false);
    ts_.expect(close);
    auto binders = sa.pattern.binders();
    data_.push(binders);
    Formula body = parse_prefix();
    data_.pop(binders.size());
    return necessity ? Formula::nec(sa, body) : Formula::pos(sa, body);
  }

  Formula parse_fixpoint(bool greatest) {
    const auto &tok = ts_.peek();
    std::string x = ts_.expect_ident();
    if (reserved(x))
      throw ParseError("'" + x + "' cannot name a logical variable", tok.pos);
    ts_.expect(Tok::Dot);
    logic_.push_back(x);
    Formula body = parse_or();
    logic_.pop_back();
    return greatest ? Formula::max(x, body) : Formula::min(x, body);
  }

  Formula parse_prefix() {
    if (ts_.accept(Tok::LBracket))
      return parse_modal(Tok::RBracket, true);
    if (ts_.accept(Tok::LAngle))
      return parse_modal(Tok::RAngle, false);
    if (ts_.accept(Tok::LParen)) {
      Formula f = parse_or();
      ts_.expect(Tok::RParen);
      return f;
    }
    if (ts_.accept_ident("tt"))
      return Formula::tt();
    if (ts_.accept_ident("ff"))
      return Formula::ff();
    if (ts_.accept_ident("max"))
      return parse_fixpoint(true);
    if (ts_.accept_ident("min"))
      return parse_fixpoint(false);
    if (ts_.at(Tok::Ident)) {
      const auto &tok = ts_.next();
      if (std::find(logic_.begin(), logic_.end(), tok.text) == logic_.end())
        throw ParseError("unbound logical variable '" + tok.text + "'",
                         tok.pos);
      return Formula::var(tok.text);
    }
    ts_.fail("expected a formula");
  }

  TokenStream ts_;
  DataScope data_;
  std::vector<std::string> logic_;
};

} // namespace

Formula parse_formula(std::string_view text, const Domain *domain) {
  return FormulaParser(text, domain).parse();
}

} // namespace shmlenf
