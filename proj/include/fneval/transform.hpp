#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "fneval/expr.hpp"

namespace fneval {

namespace detail {

ExprNode flatten_node(const ExprNode& t);

// Appends the operands of a like-operator chain rooted at `t`, in
// left-to-right order, each already flattened.
inline void collect_operands(const ExprNode& t, OpTag tag,
                             std::vector<ExprNode>& out) {
  for (const auto& c : t.children()) {
    if (c.tag() == tag) {
      collect_operands(c, tag, out);
    } else {
      out.push_back(flatten_node(c));
    }
  }
}

inline ExprNode flatten_node(const ExprNode& t) {
  if (t.is_leaf()) return t;
  std::vector<ExprNode> children;
  if (is_associative(t.tag())) {
    collect_operands(t, t.tag(), children);
  } else {
    children.reserve(t.child_count());
    for (const auto& c : t.children()) children.push_back(flatten_node(c));
  }
  return make_op(t.kind(), std::move(children));
}

}  // namespace detail

/// Collapses Sum-under-Sum and Product-under-Product chains into single
/// n-ary nodes, transitively, keeping operand order. Difference, Quotient,
/// Power, Negate and UnaryFn keep their shape. Returns a new tree.
inline ExprNode flatten(const ExprNode& t) { return detail::flatten_node(t); }

struct FlattenStats {
  std::size_t nodes_before = 0;
  std::size_t nodes_after = 0;
  friend bool operator==(const FlattenStats&, const FlattenStats&) = default;
};

inline FlattenStats flatten_stats(const ExprNode& t) {
  return {count_nodes(t), count_nodes(flatten(t))};
}

/// True iff some Sum has a Sum child or some Product has a Product child.
inline bool has_like_operator_chain(const ExprNode& t) noexcept {
  for (const auto& c : t.children()) {
    if (is_associative(t.tag()) && c.tag() == t.tag()) return true;
    if (has_like_operator_chain(c)) return true;
  }
  return false;
}

}  // namespace fneval
