#pragma once

// Test-only helpers: random tree generators and an independent reference
// evaluator used as an oracle against the library's walkers.

#include <cmath>
#include <cstddef>
#include <optional>
#include <random>
#include <stack>
#include <vector>

#include "fneval/expr.hpp"

namespace fneval::testing {

// Reference semantics written without the library walker: explicit
// std::pow/std::sin etc. Returns nullopt where the library must raise a
// DomainFault. Folds Sum/Product left to right starting from 0/1.
inline std::optional<double> reference_eval(const ExprNode& n,
                                            const std::vector<double>& vars) {
  std::vector<double> args;
  for (const auto& c : n.children()) {
    auto v = reference_eval(c, vars);
    if (!v) return std::nullopt;
    args.push_back(*v);
  }
  switch (n.tag()) {
    case OpTag::Constant: return n.value();
    case OpTag::Variable: return vars.at(n.var_index());
    case OpTag::Sum: {
      double acc = 0.0;
      for (double a : args) acc = acc + a;
      return acc;
    }
    case OpTag::Product: {
      double acc = 1.0;
      for (double a : args) acc = acc * a;
      return acc;
    }
    case OpTag::Difference: return args[0] - args[1];
    case OpTag::Quotient:
      if (args[1] == 0.0) return std::nullopt;
      return args[0] / args[1];
    case OpTag::Power:
      if (args[0] < 0.0 && std::floor(args[1]) != args[1]) return std::nullopt;
      if (args[0] == 0.0 && args[1] < 0.0) return std::nullopt;
      return std::pow(args[0], args[1]);
    case OpTag::Negate: return -args[0];
    case OpTag::UnaryFn:
      switch (*n.function()) {
        case UnaryFunction::Sin: return std::sin(args[0]);
        case UnaryFunction::Cos: return std::cos(args[0]);
        case UnaryFunction::Tan: return std::tan(args[0]);
        case UnaryFunction::Exp: return std::exp(args[0]);
        case UnaryFunction::Log:
          if (args[0] <= 0.0) return std::nullopt;
          return std::log(args[0]);
        case UnaryFunction::Sqrt:
          if (args[0] < 0.0) return std::nullopt;
          return std::sqrt(args[0]);
      }
  }
  return std::nullopt;
}

// Node count by explicit-stack traversal (independent of count_nodes).
inline std::size_t brute_force_count(const ExprNode& root) {
  std::size_t n = 0;
  std::stack<const ExprNode*> todo;
  todo.push(&root);
  while (!todo.empty()) {
    const ExprNode* cur = todo.top();
    todo.pop();
    ++n;
    for (const auto& c : cur->children()) todo.push(&c);
  }
  return n;
}

inline void collect_leaves(const ExprNode& n, std::vector<const ExprNode*>& out) {
  if (n.is_leaf()) {
    out.push_back(&n);
    return;
  }
  for (const auto& c : n.children()) collect_leaves(c, out);
}

inline bool close_rel(double a, double b, double tol) {
  if (a == b) return true;
  if (std::isnan(a) && std::isnan(b)) return true;
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return std::fabs(a - b) <= tol * scale;
}

// Rewrites every maximal chain of like associative operators as a
// left-nested binary chain over the same operands in the same order:
// a*(b*c) becomes (a*b)*c. Evaluating the result performs exactly the
// operations a flattened n-ary node performs, so it is the bit-exact
// counterpart of flatten written without the library transform.
inline void chain_operands(const ExprNode& n, OpTag tag,
                           std::vector<const ExprNode*>& out) {
  if (n.tag() == tag) {
    for (const auto& c : n.children()) chain_operands(c, tag, out);
  } else {
    out.push_back(&n);
  }
}

inline ExprNode regroup_left(const ExprNode& n) {
  if (n.is_leaf()) return n;
  std::vector<ExprNode> kids;
  if (n.tag() == OpTag::Sum || n.tag() == OpTag::Product) {
    std::vector<const ExprNode*> ops;
    for (const auto& c : n.children()) chain_operands(c, n.tag(), ops);
    ExprNode acc = regroup_left(*ops[0]);
    for (std::size_t i = 1; i < ops.size(); ++i) {
      std::vector<ExprNode> pair;
      pair.push_back(std::move(acc));
      pair.push_back(regroup_left(*ops[i]));
      acc = make_op(n.tag(), std::move(pair));
    }
    return acc;
  }
  for (const auto& c : n.children()) kids.push_back(regroup_left(c));
  return make_op(n.kind(), std::move(kids));
}

// Random valid trees. `max_depth` counts edges from the root, so a bare
// leaf has depth 0. With binary_only, Sum/Product always get two operands.
class TreeGenerator {
 public:
  TreeGenerator(std::uint64_t seed, std::size_t n_vars)
      : rng_(seed), n_vars_(n_vars) {}

  ExprNode tree(std::size_t max_depth, bool binary_only) {
    return node(0, max_depth, binary_only);
  }

  // Sum/Product-only trees (like-operator chains are frequent), binary form.
  ExprNode chain_tree(std::size_t max_depth) { return chain(0, max_depth); }

  std::vector<double> bindings(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> v(n_vars_);
    for (auto& e : v) e = d(rng_);
    return v;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  ExprNode leaf() {
    if (coin(0.5)) {
      std::uniform_int_distribution<std::size_t> d(0, n_vars_ - 1);
      return make_variable(d(rng_));
    }
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    return make_constant(d(rng_));
  }

  ExprNode node(std::size_t depth, std::size_t max_depth, bool binary_only) {
    if (depth >= max_depth || coin(0.25)) return leaf();
    std::uniform_int_distribution<int> pick(0, 6);
    const int k = pick(rng_);
    auto sub = [&] { return node(depth + 1, max_depth, binary_only); };
    switch (k) {
      case 0:
      case 1: {
        std::uniform_int_distribution<std::size_t> ar(2, 4);
        const std::size_t n = binary_only ? 2 : ar(rng_);
        std::vector<ExprNode> ch;
        for (std::size_t i = 0; i < n; ++i) ch.push_back(sub());
        return make_op(k == 0 ? OpTag::Sum : OpTag::Product, std::move(ch));
      }
      case 2: return build::difference(sub(), sub());
      case 3: return build::quotient(sub(), sub());
      case 4: return build::power(sub(), sub());
      case 5: return build::negate(sub());
      default: {
        std::uniform_int_distribution<int> f(0, 5);
        return build::apply(static_cast<UnaryFunction>(f(rng_)), sub());
      }
    }
  }

  ExprNode chain(std::size_t depth, std::size_t max_depth) {
    if (depth >= max_depth || coin(0.2)) return leaf();
    std::vector<ExprNode> ch;
    ch.push_back(chain(depth + 1, max_depth));
    ch.push_back(chain(depth + 1, max_depth));
    return make_op(coin(0.5) ? OpTag::Sum : OpTag::Product, std::move(ch));
  }

  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }

  std::mt19937_64 rng_;
  std::size_t n_vars_;
};

}  // namespace fneval::testing
