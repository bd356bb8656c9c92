#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "fneval/error.hpp"
#include "fneval/evaluators.hpp"
#include "fneval/expr.hpp"
#include "fneval/parser.hpp"

namespace fneval {

enum class EvalMethod { BlackBox, BinaryTree, NaryTree, StringParse };

inline constexpr std::array<EvalMethod, 4> kAllMethods{
    EvalMethod::BlackBox, EvalMethod::BinaryTree, EvalMethod::NaryTree,
    EvalMethod::StringParse};

// Short machine name used on the command line and in csv/json.
constexpr std::string_view method_key(EvalMethod m) noexcept {
  switch (m) {
    case EvalMethod::BlackBox: return "blackbox";
    case EvalMethod::BinaryTree: return "binary";
    case EvalMethod::NaryTree: return "nary";
    case EvalMethod::StringParse: return "string";
  }
  return "?";
}

// Row label for human-readable tables.
constexpr std::string_view method_label(EvalMethod m) noexcept {
  switch (m) {
    case EvalMethod::BlackBox: return "Black-box";
    case EvalMethod::BinaryTree: return "Binary";
    case EvalMethod::NaryTree: return "N-ary";
    case EvalMethod::StringParse: return "String";
  }
  return "?";
}

constexpr std::optional<EvalMethod> method_from_key(
    std::string_view key) noexcept {
  for (EvalMethod m : kAllMethods) {
    if (method_key(m) == key) return m;
  }
  return std::nullopt;
}

using EvalSource = std::variant<BlackBoxId, std::reference_wrapper<const ExprNode>,
                                std::string_view>;

/// Uniform entry point: the source's alternative must match the method.
inline EvalOutcome eval(EvalMethod method, const EvalSource& source,
                        const Bindings& b,
                        const SymbolTable& sym = default_symbols(),
                        DomainPolicy policy = DomainPolicy::Raise) {
  auto mismatch = [&](std::string_view want) {
    return MethodSourceMismatch("method " + std::string(method_key(method)) +
                                " needs a " + std::string(want) + " source");
  };
  switch (method) {
    case EvalMethod::BlackBox:
      if (auto* id = std::get_if<BlackBoxId>(&source))
        return eval_blackbox(*id, b);
      throw mismatch("black-box id");
    case EvalMethod::BinaryTree:
      if (auto* t = std::get_if<std::reference_wrapper<const ExprNode>>(&source))
        return eval_binary(t->get(), b, policy);
      throw mismatch("tree");
    case EvalMethod::NaryTree:
      if (auto* t = std::get_if<std::reference_wrapper<const ExprNode>>(&source))
        return eval_nary(t->get(), b, policy);
      throw mismatch("tree");
    case EvalMethod::StringParse:
      if (auto* s = std::get_if<std::string_view>(&source))
        return eval_string_counted(*s, sym, b, policy);
      throw mismatch("string");
  }
  throw mismatch("valid");
}

}  // namespace fneval
