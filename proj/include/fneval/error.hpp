#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace fneval {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonFiniteValue : public Error {
 public:
  explicit NonFiniteValue(double v)
      : Error("non-finite value " + std::to_string(v)), value_(v) {}
  double value() const noexcept { return value_; }

 private:
  double value_;
};

class ArityMismatch : public Error {
 public:
  ArityMismatch(std::string kind, std::size_t got, std::string rule)
      : Error("operator " + kind + " given " + std::to_string(got) +
              " children, expects " + rule),
        kind_(std::move(kind)),
        got_(got),
        rule_(std::move(rule)) {}

  const std::string& kind() const noexcept { return kind_; }
  std::size_t got() const noexcept { return got_; }
  const std::string& rule() const noexcept { return rule_; }

 private:
  std::string kind_;
  std::size_t got_;
  std::string rule_;
};

class LeafKind : public Error {
 public:
  explicit LeafKind(const std::string& kind)
      : Error("make_op called with leaf kind " + kind) {}
};

class UnknownFunction : public Error {
 public:
  explicit UnknownFunction(const std::string& name)
      : Error("unknown unary function '" + name + "'") {}
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(std::size_t index)
      : Error("variable index " + std::to_string(index) + " has no binding"),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class DomainFault : public Error {
 public:
  DomainFault(std::string op, double lhs, double rhs)
      : Error("domain fault in " + op + "(" + std::to_string(lhs) + ", " +
              std::to_string(rhs) + ")"),
        op_(std::move(op)),
        lhs_(lhs),
        rhs_(rhs) {}
  DomainFault(std::string op, double arg)
      : Error("domain fault in " + op + "(" + std::to_string(arg) + ")"),
        op_(std::move(op)),
        lhs_(arg),
        rhs_(0.0) {}

  const std::string& op() const noexcept { return op_; }
  double lhs() const noexcept { return lhs_; }
  double rhs() const noexcept { return rhs_; }

 private:
  std::string op_;
  double lhs_;
  double rhs_;
};

class NotBinaryForm : public Error {
 public:
  NotBinaryForm() : Error("tree is not in binary form") {}
};

class UnknownFunctionId : public Error {
 public:
  explicit UnknownFunctionId(int id)
      : Error("black-box function id " + std::to_string(id) +
              " outside 1..8"),
        id_(id) {}
  int id() const noexcept { return id_; }

 private:
  int id_;
};

class MethodSourceMismatch : public Error {
 public:
  explicit MethodSourceMismatch(const std::string& what) : Error(what) {}
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ClockUnavailable : public Error {
 public:
  using Error::Error;
};

}  // namespace fneval
