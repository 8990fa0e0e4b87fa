#include <cctype>

#include "judgebench/error.hpp"
#include "judgebench/mck.hpp"

namespace judgebench::mck {

namespace {

enum class Tok { Ident, Number, LParen, RParen, Bang, Amp, Bar, Arrow, Eq, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const std::size_t l = line, cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Number, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", l, cl});
      advance(2);
      continue;
    }
    Tok kind;
    switch (c) {
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '!': kind = Tok::Bang; break;
      case '&': kind = Tok::Amp; break;
      case '|': kind = Tok::Bar; break;
      case '=': kind = Tok::Eq; break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
    }
    out.push_back({kind, std::string(1, c), l, cl});
    advance(1);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula parse() {
    auto f = implication();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "' after formula");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().column); }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) {
      fail(std::string("expected ") + what + (peek().kind == Tok::End ? " at end of input" : " but found '" + peek().text + "'"));
    }
    take();
  }

  Formula implication() {
    auto lhs = disjunction();
    if (peek().kind == Tok::Arrow) {
      take();
      return Formula::implies(lhs, implication());
    }
    return lhs;
  }

  Formula disjunction() {
    auto acc = conjunction();
    while (peek().kind == Tok::Bar) {
      take();
      acc = Formula::disj(acc, conjunction());
    }
    return acc;
  }

  Formula conjunction() {
    auto acc = unary();
    while (peek().kind == Tok::Amp) {
      take();
      acc = Formula::conj(acc, unary());
    }
    return acc;
  }

  int agent_index() {
    if (peek().kind != Tok::Number) fail("expected an agent index");
    const auto& t = take();
    if (t.text.size() > 6) throw ParseError("agent index too large", t.line, t.column);
    return std::stoi(t.text);
  }

  Formula until(Formula::Op op) {
    expect(Tok::LParen, "'('");
    auto a = implication();
    if (peek().kind != Tok::Ident || peek().text != "U") fail("expected 'U'");
    take();
    auto b = implication();
    expect(Tok::RParen, "')'");
    return op == Formula::Op::EU ? Formula::eu(a, b) : Formula::au(a, b);
  }

  Formula unary() {
    const auto& t = peek();
    switch (t.kind) {
      case Tok::Bang:
        take();
        return Formula::negate(unary());
      case Tok::LParen: {
        take();
        auto f = implication();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Ident: break;
      case Tok::End: fail("unexpected end of input");
      default: fail("unexpected '" + t.text + "'");
    }
    const std::string word = t.text;
    using Op = Formula::Op;
    if (word == "true") return take(), Formula::truth();
    if (word == "false") return take(), Formula::falsity();
    if (word == "K" || word == "P") {
      take();
      const int agent = agent_index();
      auto body = unary();
      return word == "K" ? Formula::knows(agent, body) : Formula::possible(agent, body);
    }
    static const std::pair<const char*, Op> temporal[] = {
        {"EX", Op::EX}, {"AX", Op::AX}, {"EF", Op::EF}, {"AF", Op::AF}, {"EG", Op::EG}, {"AG", Op::AG}};
    for (const auto& [kw, op] : temporal) {
      if (word == kw) {
        take();
        return Formula::unary(op, unary());
      }
    }
    if (word == "E" || word == "A") {
      take();
      return until(word == "E" ? Op::EU : Op::AU);
    }
    return atom();
  }

  Formula atom() {
    const Token name = take();
    if (peek().kind != Tok::Eq) {
      throw ParseError("unknown operator or atom '" + name.text + "'", name.line, name.column);
    }
    take();
    const Token value = take();
    if (value.kind != Tok::Number && !(value.kind == Tok::Ident && value.text == "unknown")) {
      throw ParseError("expected a value after '" + name.text + "='", value.line, value.column);
    }
    try {
      return Formula::atom(Atom::parse(name.text + "=" + value.text));
    } catch (const ParameterError& e) {
      throw ParseError(e.what(), name.line, name.column);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(tokenize(text)).parse(); }

}  // namespace judgebench::mck
