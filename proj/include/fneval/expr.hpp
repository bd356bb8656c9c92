#pragma once

// Expression-tree data model shared by every evaluation strategy.
//
// A single node type covers both binary and n-ary trees: Sum and Product
// carry any number (>= 2) of operands, every other interior kind has a fixed
// arity. Nodes are immutable once built; all construction goes through the
// make_* factories, which enforce the arity table.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fneval/error.hpp"

namespace fneval {

enum class OpTag : std::uint8_t {
  Constant,
  Variable,
  Sum,
  Product,
  Difference,
  Quotient,
  Power,
  Negate,
  UnaryFn,
};

enum class UnaryFunction : std::uint8_t { Sin, Cos, Tan, Exp, Log, Sqrt };

inline constexpr std::array<std::string_view, 6> kFunctionNames{
    "sin", "cos", "tan", "exp", "log", "sqrt"};

constexpr std::string_view function_name(UnaryFunction fn) noexcept {
  return kFunctionNames[static_cast<std::size_t>(fn)];
}

constexpr std::optional<UnaryFunction> function_from_name(
    std::string_view name) noexcept {
  for (std::size_t i = 0; i < kFunctionNames.size(); ++i) {
    if (kFunctionNames[i] == name) return static_cast<UnaryFunction>(i);
  }
  return std::nullopt;
}

constexpr std::string_view tag_name(OpTag tag) noexcept {
  switch (tag) {
    case OpTag::Constant: return "Constant";
    case OpTag::Variable: return "Variable";
    case OpTag::Sum: return "Sum";
    case OpTag::Product: return "Product";
    case OpTag::Difference: return "Difference";
    case OpTag::Quotient: return "Quotient";
    case OpTag::Power: return "Power";
    case OpTag::Negate: return "Negate";
    case OpTag::UnaryFn: return "UnaryFn";
  }
  return "?";
}

constexpr bool is_leaf(OpTag tag) noexcept {
  return tag == OpTag::Constant || tag == OpTag::Variable;
}

constexpr bool is_associative(OpTag tag) noexcept {
  return tag == OpTag::Sum || tag == OpTag::Product;
}

/// Arity table: Sum/Product take >= 2 children, Difference/Quotient/Power
/// exactly 2, Negate/UnaryFn exactly 1, leaves none.
constexpr bool arity_accepts(OpTag tag, std::size_t n) noexcept {
  switch (tag) {
    case OpTag::Constant:
    case OpTag::Variable: return n == 0;
    case OpTag::Sum:
    case OpTag::Product: return n >= 2;
    case OpTag::Difference:
    case OpTag::Quotient:
    case OpTag::Power: return n == 2;
    case OpTag::Negate:
    case OpTag::UnaryFn: return n == 1;
  }
  return false;
}

constexpr std::string_view arity_rule(OpTag tag) noexcept {
  switch (tag) {
    case OpTag::Constant:
    case OpTag::Variable: return "0";
    case OpTag::Sum:
    case OpTag::Product: return ">= 2";
    case OpTag::Difference:
    case OpTag::Quotient:
    case OpTag::Power: return "2";
    case OpTag::Negate:
    case OpTag::UnaryFn: return "1";
  }
  return "?";
}

// Operator kind. The function is present iff the tag is UnaryFn.
class OpKind {
 public:
  // Implicit from any tag except UnaryFn, which needs a function.
  OpKind(OpTag tag) : tag_(tag) {  // NOLINT(google-explicit-constructor)
    if (tag == OpTag::UnaryFn) throw UnknownFunction("<missing>");
  }

  static OpKind unary(UnaryFunction fn) noexcept { return OpKind(fn); }

  static OpKind unary(std::string_view name) {
    auto fn = function_from_name(name);
    if (!fn) throw UnknownFunction(std::string(name));
    return OpKind(*fn);
  }

  OpTag tag() const noexcept { return tag_; }

  std::optional<UnaryFunction> function() const noexcept {
    if (tag_ != OpTag::UnaryFn) return std::nullopt;
    return fn_;
  }

  std::optional<std::string_view> fn_name() const noexcept {
    if (tag_ != OpTag::UnaryFn) return std::nullopt;
    return function_name(fn_);
  }

  std::string name() const {
    if (tag_ == OpTag::UnaryFn) return std::string(function_name(fn_));
    return std::string(tag_name(tag_));
  }

  friend bool operator==(const OpKind& a, const OpKind& b) noexcept {
    return a.tag_ == b.tag_ && (a.tag_ != OpTag::UnaryFn || a.fn_ == b.fn_);
  }

 private:
  explicit OpKind(UnaryFunction fn) noexcept : tag_(OpTag::UnaryFn), fn_(fn) {}

  OpTag tag_;
  UnaryFunction fn_ = UnaryFunction::Sin;
};

class ExprNode;

ExprNode make_constant(double v);
ExprNode make_variable(std::size_t index);
ExprNode make_op(OpKind kind, std::vector<ExprNode> children);

class ExprNode {
 public:
  ExprNode(const ExprNode&) = default;
  ExprNode(ExprNode&&) noexcept = default;
  ExprNode& operator=(const ExprNode&) = default;
  ExprNode& operator=(ExprNode&&) noexcept = default;
  ~ExprNode() = default;

  OpTag tag() const noexcept { return tag_; }
  OpKind kind() const noexcept {
    return tag_ == OpTag::UnaryFn ? OpKind::unary(fn_) : OpKind(tag_);
  }
  std::optional<UnaryFunction> function() const noexcept {
    if (tag_ != OpTag::UnaryFn) return std::nullopt;
    return fn_;
  }
  UnaryFunction function_unchecked() const noexcept { return fn_; }

  // Meaningful for Constant only; 0 otherwise.
  double value() const noexcept { return value_; }
  // Meaningful for Variable only; 0 otherwise.
  std::size_t var_index() const noexcept { return var_index_; }

  std::span<const ExprNode> children() const noexcept { return children_; }
  std::size_t child_count() const noexcept { return children_.size(); }
  const ExprNode& child(std::size_t i) const noexcept { return children_[i]; }

  bool is_leaf() const noexcept { return fneval::is_leaf(tag_); }

  // Structural equality: same kinds, values, indices and child order.
  friend bool operator==(const ExprNode& a, const ExprNode& b) noexcept {
    if (a.tag_ != b.tag_ || a.children_.size() != b.children_.size())
      return false;
    switch (a.tag_) {
      case OpTag::Constant:
        if (a.value_ != b.value_) return false;
        break;
      case OpTag::Variable:
        if (a.var_index_ != b.var_index_) return false;
        break;
      case OpTag::UnaryFn:
        if (a.fn_ != b.fn_) return false;
        break;
      default: break;
    }
    for (std::size_t i = 0; i < a.children_.size(); ++i) {
      if (!(a.children_[i] == b.children_[i])) return false;
    }
    return true;
  }

 private:
  explicit ExprNode(OpTag tag) noexcept : tag_(tag) {}

  friend ExprNode make_constant(double v);
  friend ExprNode make_variable(std::size_t index);
  friend ExprNode make_op(OpKind kind, std::vector<ExprNode> children);

  OpTag tag_;
  UnaryFunction fn_ = UnaryFunction::Sin;
  double value_ = 0.0;
  std::size_t var_index_ = 0;
  std::vector<ExprNode> children_;
};

inline ExprNode make_constant(double v) {
  if (!std::isfinite(v)) throw NonFiniteValue(v);
  ExprNode n(OpTag::Constant);
  n.value_ = v;
  return n;
}

inline ExprNode make_variable(std::size_t index) {
  ExprNode n(OpTag::Variable);
  n.var_index_ = index;
  return n;
}

inline ExprNode make_op(OpKind kind, std::vector<ExprNode> children) {
  const OpTag tag = kind.tag();
  if (is_leaf(tag)) throw LeafKind(kind.name());
  if (!arity_accepts(tag, children.size()))
    throw ArityMismatch(kind.name(), children.size(),
                        std::string(arity_rule(tag)));
  ExprNode n(tag);
  if (auto fn = kind.function()) n.fn_ = *fn;
  n.children_ = std::move(children);
  return n;
}

// Shorthands used when building trees by hand.
namespace build {

inline ExprNode c(double v) { return make_constant(v); }
inline ExprNode var(std::size_t i) { return make_variable(i); }
inline ExprNode x() { return make_variable(0); }
inline ExprNode y() { return make_variable(1); }

inline ExprNode sum(std::vector<ExprNode> operands) {
  return make_op(OpTag::Sum, std::move(operands));
}
inline ExprNode product(std::vector<ExprNode> operands) {
  return make_op(OpTag::Product, std::move(operands));
}
inline ExprNode difference(ExprNode a, ExprNode b) {
  std::vector<ExprNode> v;
  v.reserve(2);
  v.push_back(std::move(a));
  v.push_back(std::move(b));
  return make_op(OpTag::Difference, std::move(v));
}
inline ExprNode quotient(ExprNode a, ExprNode b) {
  std::vector<ExprNode> v;
  v.reserve(2);
  v.push_back(std::move(a));
  v.push_back(std::move(b));
  return make_op(OpTag::Quotient, std::move(v));
}
inline ExprNode power(ExprNode a, ExprNode b) {
  std::vector<ExprNode> v;
  v.reserve(2);
  v.push_back(std::move(a));
  v.push_back(std::move(b));
  return make_op(OpTag::Power, std::move(v));
}
inline ExprNode negate(ExprNode a) {
  std::vector<ExprNode> v;
  v.push_back(std::move(a));
  return make_op(OpTag::Negate, std::move(v));
}
inline ExprNode apply(UnaryFunction fn, ExprNode a) {
  std::vector<ExprNode> v;
  v.push_back(std::move(a));
  return make_op(OpKind::unary(fn), std::move(v));
}

}  // namespace build

/// True iff every Sum and Product node in the tree has exactly two children.
inline bool is_binary_form(const ExprNode& t) noexcept {
  if (is_associative(t.tag()) && t.child_count() != 2) return false;
  for (const auto& c : t.children()) {
    if (!is_binary_form(c)) return false;
  }
  return true;
}

inline std::size_t count_nodes(const ExprNode& t) noexcept {
  std::size_t n = 1;
  for (const auto& c : t.children()) n += count_nodes(c);
  return n;
}

inline std::size_t tree_depth(const ExprNode& t) noexcept {
  std::size_t d = 0;
  for (const auto& c : t.children()) {
    const std::size_t cd = tree_depth(c);
    if (cd > d) d = cd;
  }
  return d + 1;
}

// Largest variable index referenced, or nullopt for variable-free trees.
inline std::optional<std::size_t> max_var_index(const ExprNode& t) noexcept {
  std::optional<std::size_t> best;
  if (t.tag() == OpTag::Variable) best = t.var_index();
  for (const auto& c : t.children()) {
    auto m = max_var_index(c);
    if (m && (!best || *m > *best)) best = m;
  }
  return best;
}

// Dense variable values indexed by variable index. Every entry is finite;
// reading past the end raises UnboundVariable.
class Bindings {
 public:
  Bindings() = default;

  explicit Bindings(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_) {
      if (!std::isfinite(v)) throw NonFiniteValue(v);
    }
  }

  Bindings(std::initializer_list<double> values)
      : Bindings(std::vector<double>(values)) {}

  double at(std::size_t i) const {
    if (i >= values_.size()) throw UnboundVariable(i);
    return values_[i];
  }

  void set(std::size_t i, double v) {
    if (i >= values_.size()) throw UnboundVariable(i);
    if (!std::isfinite(v)) throw NonFiniteValue(v);
    values_[i] = v;
  }

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

}  // namespace fneval
