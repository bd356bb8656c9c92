#pragma once

// Lexer and recursive-descent parser for algebraic expressions.
//
// Grammar:
//   expr   := term { ("+" | "-") term }        left-associative
//   term   := factor { ("*" | "/") factor }    left-associative
//   factor := "-" factor | power
//   power  := atom [ "^" factor ]              right-associative
//   atom   := Number | Ident | Ident "(" expr ")" | "(" expr ")"
//
// Power binds tighter than unary minus, so "-x^2" is -(x^2) while "2^-1"
// is still accepted. The same grammar drives two semantic policies: one
// builds a binary-form ExprNode, the other folds numbers while parsing and
// never allocates a tree.

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fneval/error.hpp"
#include "fneval/evaluators.hpp"
#include "fneval/expr.hpp"
#include "fneval/numeric.hpp"

namespace fneval {

enum class TokenTag {
  Number,
  Ident,
  Plus,
  Minus,
  Star,
  Slash,
  Caret,
  LParen,
  RParen,
  End,
};

// `text` views into the lexed input and is only valid while it lives.
struct Token {
  TokenTag tag = TokenTag::End;
  double number_value = 0.0;
  std::string_view text;
  std::size_t position = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

enum class ParseErrorKind {
  UnexpectedToken,
  UnknownIdentifier,
  UnbalancedParen,
  BadNumber,
  TrailingInput,
};

constexpr std::string_view parse_error_kind_name(ParseErrorKind k) noexcept {
  switch (k) {
    case ParseErrorKind::UnexpectedToken: return "UnexpectedToken";
    case ParseErrorKind::UnknownIdentifier: return "UnknownIdentifier";
    case ParseErrorKind::UnbalancedParen: return "UnbalancedParen";
    case ParseErrorKind::BadNumber: return "BadNumber";
    case ParseErrorKind::TrailingInput: return "TrailingInput";
  }
  return "?";
}

class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, std::size_t position, std::string message)
      : Error(std::string(parse_error_kind_name(kind)) + " at offset " +
              std::to_string(position) + ": " + message),
        kind_(kind),
        position_(position),
        message_(std::move(message)) {}

  ParseErrorKind kind() const noexcept { return kind_; }
  std::size_t position() const noexcept { return position_; }
  const std::string& message() const noexcept { return message_; }

 private:
  ParseErrorKind kind_;
  std::size_t position_;
  std::string message_;
};

inline bool is_identifier(std::string_view s) noexcept {
  if (s.empty()) return false;
  const auto head = static_cast<unsigned char>(s.front());
  if (!(std::isalpha(head) || head == '_')) return false;
  for (char ch : s.substr(1)) {
    const auto c = static_cast<unsigned char>(ch);
    if (!(std::isalnum(c) || c == '_')) return false;
  }
  return true;
}

// Pull-based lexer: the parser asks for one token at a time.
class Lexer {
 public:
  explicit Lexer(std::string_view input) noexcept : in_(input) {}

  Token next() {
    while (pos_ < in_.size() && is_space(in_[pos_])) ++pos_;
    if (pos_ == in_.size()) return {TokenTag::End, 0.0, {}, pos_};

    const std::size_t start = pos_;
    const char ch = in_[pos_];
    if (is_digit(ch) || (ch == '.' && pos_ + 1 < in_.size() &&
                         is_digit(in_[pos_ + 1]))) {
      return lex_number();
    }
    if (is_ident_start(ch)) {
      ++pos_;
      while (pos_ < in_.size() && is_ident_char(in_[pos_])) ++pos_;
      return {TokenTag::Ident, 0.0, in_.substr(start, pos_ - start), start};
    }
    ++pos_;
    switch (ch) {
      case '+': return {TokenTag::Plus, 0.0, {}, start};
      case '-': return {TokenTag::Minus, 0.0, {}, start};
      case '*': return {TokenTag::Star, 0.0, {}, start};
      case '/': return {TokenTag::Slash, 0.0, {}, start};
      case '^': return {TokenTag::Caret, 0.0, {}, start};
      case '(': return {TokenTag::LParen, 0.0, {}, start};
      case ')': return {TokenTag::RParen, 0.0, {}, start};
      default: break;
    }
    throw ParseError(ParseErrorKind::UnexpectedToken, start,
                     std::string("illegal character '") + ch + "'");
  }

 private:
  static bool is_space(char c) noexcept {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  }
  static bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }
  static bool is_ident_start(char c) noexcept {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool is_ident_char(char c) noexcept {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  // digits [ "." digits ] [ ("e"|"E") ["+"|"-"] digits ], or "." digits ...
  Token lex_number() {
    const std::size_t start = pos_;
    while (pos_ < in_.size() && is_digit(in_[pos_])) ++pos_;
    if (pos_ < in_.size() && in_[pos_] == '.') {
      ++pos_;
      while (pos_ < in_.size() && is_digit(in_[pos_])) ++pos_;
    }
    if (pos_ < in_.size() && (in_[pos_] == 'e' || in_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < in_.size() && (in_[pos_] == '+' || in_[pos_] == '-')) ++pos_;
      if (pos_ == in_.size() || !is_digit(in_[pos_])) {
        throw ParseError(ParseErrorKind::BadNumber, start,
                         "exponent has no digits");
      }
      while (pos_ < in_.size() && is_digit(in_[pos_])) ++pos_;
    }
    const std::string_view text = in_.substr(start, pos_ - start);
    double value = 0.0;
    const auto [end, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size() ||
        !std::isfinite(value)) {
      throw ParseError(ParseErrorKind::BadNumber, start,
                       "malformed number '" + std::string(text) + "'");
    }
    return {TokenTag::Number, value, text, start};
  }

  std::string_view in_;
  std::size_t pos_ = 0;
};

/// Lexes the whole input; the list always ends with an End token.
inline std::vector<Token> tokenize(std::string_view input) {
  std::vector<Token> out;
  Lexer lex(input);
  for (;;) {
    out.push_back(lex.next());
    if (out.back().tag == TokenTag::End) return out;
  }
}

// Variable names map to contiguous indices from 0; function names are the
// fixed unary table. The two sets are disjoint.
class SymbolTable {
 public:
  SymbolTable() : SymbolTable(std::vector<std::string>{"x", "y"}) {}

  explicit SymbolTable(std::vector<std::string> variables)
      : names_(std::move(variables)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      const std::string& n = names_[i];
      if (!is_identifier(n))
        throw ConfigError("invalid variable name '" + n + "'");
      if (function_from_name(n))
        throw ConfigError("variable name '" + n + "' is a function name");
      if (!index_.emplace(n, i).second)
        throw ConfigError("duplicate variable name '" + n + "'");
    }
  }

  std::optional<std::size_t> variable_index(std::string_view name) const {
    const auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<UnaryFunction> function(std::string_view name) const noexcept {
    return function_from_name(name);
  }

  std::size_t variable_count() const noexcept { return names_.size(); }
  const std::vector<std::string>& variable_names() const noexcept {
    return names_;
  }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t, Hash, std::equal_to<>> index_;
};

inline const SymbolTable& default_symbols() {
  static const SymbolTable table;
  return table;
}

namespace detail {

template <class Semantics>
class GrammarParser {
 public:
  using Value = typename Semantics::Value;

  GrammarParser(std::string_view input, const SymbolTable& sym,
                Semantics& sem)
      : lex_(input), sym_(sym), sem_(sem) {}

  Value parse() {
    advance();
    Value v = expr();
    if (tok_.tag == TokenTag::RParen) {
      throw ParseError(ParseErrorKind::UnbalancedParen, tok_.position,
                       "unmatched ')'");
    }
    if (tok_.tag != TokenTag::End) {
      throw ParseError(ParseErrorKind::TrailingInput, tok_.position,
                       "unexpected input after expression");
    }
    return v;
  }

 private:
  void advance() { tok_ = lex_.next(); }

  Value expr() {
    Value lhs = term();
    while (tok_.tag == TokenTag::Plus || tok_.tag == TokenTag::Minus) {
      const OpTag op =
          tok_.tag == TokenTag::Plus ? OpTag::Sum : OpTag::Difference;
      advance();
      Value rhs = term();
      lhs = sem_.binary(op, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Value term() {
    Value lhs = factor();
    while (tok_.tag == TokenTag::Star || tok_.tag == TokenTag::Slash) {
      const OpTag op =
          tok_.tag == TokenTag::Star ? OpTag::Product : OpTag::Quotient;
      advance();
      Value rhs = factor();
      lhs = sem_.binary(op, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Value factor() {
    if (tok_.tag == TokenTag::Minus) {
      advance();
      return sem_.negate(factor());
    }
    return power();
  }

  Value power() {
    Value base = atom();
    if (tok_.tag != TokenTag::Caret) return base;
    advance();
    Value exponent = factor();
    return sem_.binary(OpTag::Power, std::move(base), std::move(exponent));
  }

  Value atom() {
    switch (tok_.tag) {
      case TokenTag::Number: {
        const double v = tok_.number_value;
        advance();
        return sem_.constant(v);
      }
      case TokenTag::Ident: return identifier();
      case TokenTag::LParen: {
        ++depth_;
        advance();
        Value v = expr();
        close_paren();
        return v;
      }
      case TokenTag::End:
        if (depth_ > 0) {
          throw ParseError(ParseErrorKind::UnbalancedParen, tok_.position,
                           "input ends inside parentheses");
        }
        throw ParseError(ParseErrorKind::UnexpectedToken, tok_.position,
                         "unexpected end of input");
      default:
        throw ParseError(ParseErrorKind::UnexpectedToken, tok_.position,
                         "expected a number, name or '('");
    }
  }

  Value identifier() {
    const Token name = tok_;
    advance();
    if (tok_.tag == TokenTag::LParen) {
      const auto fn = sym_.function(name.text);
      if (!fn) {
        throw ParseError(ParseErrorKind::UnknownIdentifier, name.position,
                         "unknown function '" + std::string(name.text) + "'");
      }
      ++depth_;
      advance();
      Value arg = expr();
      close_paren();
      return sem_.call(*fn, std::move(arg));
    }
    const auto index = sym_.variable_index(name.text);
    if (!index) {
      throw ParseError(ParseErrorKind::UnknownIdentifier, name.position,
                       "unknown variable '" + std::string(name.text) + "'");
    }
    return sem_.variable(*index);
  }

  void close_paren() {
    if (tok_.tag == TokenTag::End) {
      throw ParseError(ParseErrorKind::UnbalancedParen, tok_.position,
                       "missing ')'");
    }
    if (tok_.tag != TokenTag::RParen) {
      throw ParseError(ParseErrorKind::UnexpectedToken, tok_.position,
                       "expected ')'");
    }
    --depth_;
    advance();
  }

  Lexer lex_;
  Token tok_;
  const SymbolTable& sym_;
  Semantics& sem_;
  std::size_t depth_ = 0;
};

struct TreeSemantics {
  using Value = ExprNode;

  ExprNode constant(double v) { return make_constant(v); }
  ExprNode variable(std::size_t i) { return make_variable(i); }
  ExprNode binary(OpTag op, ExprNode a, ExprNode b) {
    std::vector<ExprNode> children;
    children.reserve(2);
    children.push_back(std::move(a));
    children.push_back(std::move(b));
    return make_op(op, std::move(children));
  }
  ExprNode negate(ExprNode a) {
    std::vector<ExprNode> children;
    children.push_back(std::move(a));
    return make_op(OpTag::Negate, std::move(children));
  }
  ExprNode call(UnaryFunction fn, ExprNode a) {
    std::vector<ExprNode> children;
    children.push_back(std::move(a));
    return make_op(OpKind::unary(fn), std::move(children));
  }
};

// Folds values during the parse. With CountVisits the counter ends up equal
// to the node count of the tree the same input would build.
template <DomainPolicy Policy, bool CountVisits>
struct ValueSemantics {
  using Value = double;

  std::span<const double> vars;
  std::size_t visits = 0;

  void tick() noexcept {
    if constexpr (CountVisits) ++visits;
  }

  double constant(double v) {
    tick();
    return v;
  }
  double variable(std::size_t i) {
    tick();
    if (i >= vars.size()) throw UnboundVariable(i);
    return vars[i];
  }
  double binary(OpTag op, double a, double b) {
    tick();
    switch (op) {
      case OpTag::Sum: return a + b;
      case OpTag::Difference: return a - b;
      case OpTag::Product: return a * b;
      case OpTag::Quotient: return divide<Policy>(a, b);
      case OpTag::Power: return power<Policy>(a, b);
      default: return 0.0;
    }
  }
  double negate(double a) {
    tick();
    return -a;
  }
  double call(UnaryFunction fn, double a) {
    tick();
    return apply_function<Policy>(fn, a);
  }
};

}  // namespace detail

/// Parses into a binary-form tree (left-associative + - * /, right-assoc ^).
inline ExprNode parse_to_tree(std::string_view input,
                              const SymbolTable& sym = default_symbols()) {
  detail::TreeSemantics sem;
  return detail::GrammarParser<detail::TreeSemantics>(input, sym, sem).parse();
}

/// Direct evaluation: lexes, parses and folds in one pass with no tree.
/// Every call starts from the raw string.
template <DomainPolicy Policy = DomainPolicy::Raise>
inline double eval_string_fast(std::string_view input, const SymbolTable& sym,
                               std::span<const double> vars) {
  detail::ValueSemantics<Policy, false> sem{vars};
  return detail::GrammarParser<detail::ValueSemantics<Policy, false>>(
             input, sym, sem)
      .parse();
}

inline double eval_string(std::string_view input, const SymbolTable& sym,
                          const Bindings& b) {
  return eval_string_fast<DomainPolicy::Raise>(input, sym, b.values());
}

// Like eval_string but also reports how many values the interpreter folded.
inline EvalOutcome eval_string_counted(
    std::string_view input, const SymbolTable& sym, const Bindings& b,
    DomainPolicy policy = DomainPolicy::Raise) {
  auto run = [&]<DomainPolicy P>() {
    detail::ValueSemantics<P, true> sem{b.values()};
    const double v =
        detail::GrammarParser<detail::ValueSemantics<P, true>>(input, sym, sem)
            .parse();
    return EvalOutcome{v, sem.visits};
  };
  if (policy == DomainPolicy::Raise)
    return run.template operator()<DomainPolicy::Raise>();
  return run.template operator()<DomainPolicy::Propagate>();
}

}  // namespace fneval
