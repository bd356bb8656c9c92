#pragma once

// The eight two-variable test functions, in each method's source form.

#include <array>
#include <string_view>
#include <vector>

#include "fneval/evaluators.hpp"
#include "fneval/expr.hpp"
#include "fneval/parser.hpp"

namespace fneval::suite {

struct TestFunction {
  int id;
  std::string_view text;  // string form, as fed to the parser
};

inline constexpr std::array<TestFunction, 8> kFunctions{{
    {1, "x"},
    {2, "x+y"},
    {3, "x^y"},
    {4, "(x+y)*x^y"},
    {5, "sin(x)"},
    {6, "sin((x+y)*x^y)"},
    {7, "x+y+1"},
    {8, "2*x*y*(x+y+1)"},
}};

inline std::string_view text(int id) {
  return kFunctions[static_cast<std::size_t>(BlackBoxId(id).value() - 1)].text;
}

inline std::vector<int> all_ids() { return {1, 2, 3, 4, 5, 6, 7, 8}; }

/// Binary-form tree for function `id`, as the parser builds it.
inline ExprNode binary_tree(int id) { return parse_to_tree(text(id)); }

/// Hand-built n-ary tree for function `id`: like-operator chains are
/// single nodes, e.g. x+y+1 is one Sum over three leaves.
inline ExprNode nary_tree(int id) {
  using namespace build;
  switch (BlackBoxId(id).value()) {
    case 1: return x();
    case 2: return sum({x(), y()});
    case 3: return power(x(), y());
    case 4: return product({sum({x(), y()}), power(x(), y())});
    case 5: return apply(UnaryFunction::Sin, x());
    case 6:
      return apply(UnaryFunction::Sin,
                   product({sum({x(), y()}), power(x(), y())}));
    case 7: return sum({x(), y(), c(1.0)});
    default: return product({c(2.0), x(), y(), sum({x(), y(), c(1.0)})});
  }
}

}  // namespace fneval::suite
