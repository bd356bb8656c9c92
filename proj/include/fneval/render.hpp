#pragma once

// Text renderings of trees and numbers for human and machine output.

#include <charconv>
#include <cstddef>
#include <string>

#include "fneval/expr.hpp"

namespace fneval {

// Shortest representation that round-trips to the same double.
inline std::string format_shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace detail {

inline std::string node_label(const ExprNode& n) {
  switch (n.tag()) {
    case OpTag::Constant: return "Constant " + format_shortest(n.value());
    case OpTag::Variable: return "Variable " + std::to_string(n.var_index());
    case OpTag::UnaryFn:
      return "UnaryFn " + n.kind().name() + " (" +
             std::to_string(n.child_count()) + " children)";
    default:
      return std::string(tag_name(n.tag())) + " (" +
             std::to_string(n.child_count()) + " children)";
  }
}

inline void render_into(const ExprNode& n, std::size_t depth,
                        std::string& out) {
  out.append(depth * 2, ' ');
  out += node_label(n);
  out += '\n';
  for (const auto& c : n.children()) render_into(c, depth + 1, out);
}

inline void dump_into(const ExprNode& n, std::string& out) {
  switch (n.tag()) {
    case OpTag::Constant:
      out += "(const " + format_shortest(n.value()) + ")";
      return;
    case OpTag::Variable:
      out += "(var " + std::to_string(n.var_index()) + ")";
      return;
    case OpTag::UnaryFn: out += "(" + n.kind().name(); break;
    case OpTag::Sum: out += "(sum"; break;
    case OpTag::Product: out += "(product"; break;
    case OpTag::Difference: out += "(difference"; break;
    case OpTag::Quotient: out += "(quotient"; break;
    case OpTag::Power: out += "(power"; break;
    case OpTag::Negate: out += "(negate"; break;
  }
  for (const auto& c : n.children()) {
    out += ' ';
    dump_into(c, out);
  }
  out += ')';
}

}  // namespace detail

/// One node per line, indented two spaces per level.
inline std::string render_tree(const ExprNode& t) {
  std::string out;
  detail::render_into(t, 0, out);
  return out;
}

/// Nested-list form, e.g. (sum (sum (var 0) (var 1)) (const 1)).
inline std::string dump_tree(const ExprNode& t) {
  std::string out;
  detail::dump_into(t, out);
  return out;
}

}  // namespace fneval
