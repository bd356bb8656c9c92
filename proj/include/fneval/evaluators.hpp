#pragma once

// Black-box, binary-tree and n-ary-tree evaluation.
//
// Both tree methods share one recursive walker: a binary tree is just an
// n-ary tree whose Sum/Product nodes all have two operands, so the measured
// difference between the methods comes from tree shape (the number of
// recursive calls) and nothing else.

#include <array>
#include <cstddef>
#include <span>
#include <string_view>

#include "fneval/error.hpp"
#include "fneval/expr.hpp"
#include "fneval/numeric.hpp"

namespace fneval {

using NativeFunction = double (*)(double, double);

// Identifier of one of the eight test functions, always in 1..8.
class BlackBoxId {
 public:
  explicit BlackBoxId(int id) : id_(id) {
    if (id < 1 || id > 8) throw UnknownFunctionId(id);
  }
  int value() const noexcept { return id_; }
  friend bool operator==(BlackBoxId, BlackBoxId) = default;

 private:
  int id_;
};

namespace blackbox {

// The test functions, compiled natively.
inline double f1(double x, double) { return x; }
inline double f2(double x, double y) { return x + y; }
inline double f3(double x, double y) { return std::pow(x, y); }
inline double f4(double x, double y) { return (x + y) * std::pow(x, y); }
inline double f5(double x, double) { return std::sin(x); }
inline double f6(double x, double y) {
  return std::sin((x + y) * std::pow(x, y));
}
inline double f7(double x, double y) { return x + y + 1.0; }
inline double f8(double x, double y) { return 2.0 * x * y * (x + y + 1.0); }

}  // namespace blackbox

using BlackBoxTable = std::array<NativeFunction, 8>;

inline constexpr BlackBoxTable kNativeBlackBoxes{
    &blackbox::f1, &blackbox::f2, &blackbox::f3, &blackbox::f4,
    &blackbox::f5, &blackbox::f6, &blackbox::f7, &blackbox::f8};

inline NativeFunction blackbox_lookup(BlackBoxId id) noexcept {
  return kNativeBlackBoxes[static_cast<std::size_t>(id.value() - 1)];
}

inline NativeFunction blackbox_lookup(int id) {
  return blackbox_lookup(BlackBoxId(id));
}

struct EvalOutcome {
  double value = 0.0;
  std::size_t visits = 0;
};

namespace detail {

// Recursive tree evaluation. With CountVisits off the walker carries no
// counter at all, which is the configuration the benchmark times.
template <DomainPolicy Policy, bool CountVisits>
class TreeWalker {
 public:
  explicit TreeWalker(std::span<const double> vars) noexcept : vars_(vars) {}

  double eval(const ExprNode& node) {
    if constexpr (CountVisits) ++visits_;
    switch (node.tag()) {
      case OpTag::Constant: return node.value();
      case OpTag::Variable: {
        const std::size_t i = node.var_index();
        if (i >= vars_.size()) throw UnboundVariable(i);
        return vars_[i];
      }
      case OpTag::Sum: {
        double ret = 0.0;
        for (const auto& c : node.children()) ret += eval(c);
        return ret;
      }
      case OpTag::Product: {
        double ret = 1.0;
        for (const auto& c : node.children()) ret *= eval(c);
        return ret;
      }
      case OpTag::Difference: {
        const double a = eval(node.child(0));
        return a - eval(node.child(1));
      }
      case OpTag::Quotient: {
        const double a = eval(node.child(0));
        return divide<Policy>(a, eval(node.child(1)));
      }
      case OpTag::Power: {
        const double a = eval(node.child(0));
        return power<Policy>(a, eval(node.child(1)));
      }
      case OpTag::Negate: return -eval(node.child(0));
      case OpTag::UnaryFn:
        return apply_function<Policy>(node.function_unchecked(),
                                      eval(node.child(0)));
    }
    return 0.0;
  }

  std::size_t visits() const noexcept { return visits_; }

 private:
  std::span<const double> vars_;
  std::size_t visits_ = 0;
};

template <bool CountVisits>
inline EvalOutcome walk(const ExprNode& t, std::span<const double> vars,
                        DomainPolicy policy) {
  if (policy == DomainPolicy::Raise) {
    TreeWalker<DomainPolicy::Raise, CountVisits> w(vars);
    const double v = w.eval(t);
    return {v, w.visits()};
  }
  TreeWalker<DomainPolicy::Propagate, CountVisits> w(vars);
  const double v = w.eval(t);
  return {v, w.visits()};
}

}  // namespace detail

/// Uninstrumented tree evaluation for timing loops. Accepts either tree form.
template <DomainPolicy Policy = DomainPolicy::Raise>
inline double eval_tree_fast(const ExprNode& t, std::span<const double> vars) {
  return detail::TreeWalker<Policy, false>(vars).eval(t);
}

/// Evaluates a binary-form tree; visits counts every node entered.
/// Throws NotBinaryForm if some Sum/Product has more than two operands.
inline EvalOutcome eval_binary(const ExprNode& t, const Bindings& b,
                               DomainPolicy policy = DomainPolicy::Raise) {
  if (!is_binary_form(t)) throw NotBinaryForm();
  return detail::walk<true>(t, b.values(), policy);
}

/// Evaluates a tree of any shape (n-ary Sum/Product fold left to right).
inline EvalOutcome eval_nary(const ExprNode& t, const Bindings& b,
                             DomainPolicy policy = DomainPolicy::Raise) {
  return detail::walk<true>(t, b.values(), policy);
}

/// Calls a black-box routine with x = b[0], y = b[1]; visits is always 0.
inline EvalOutcome eval_blackbox(BlackBoxId id, const Bindings& b) {
  return {blackbox_lookup(id)(b.at(0), b.at(1)), 0};
}

}  // namespace fneval
