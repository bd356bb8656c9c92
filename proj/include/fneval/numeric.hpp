#pragma once

// Arithmetic primitives shared by the tree walkers and the string
// interpreter, so every method applies the same operation to the same
// operands.

#include <cmath>

#include "fneval/error.hpp"
#include "fneval/expr.hpp"

namespace fneval {

enum class DomainPolicy {
  Raise,      // throw DomainFault
  Propagate,  // return whatever the math library yields (NaN/inf)
};

namespace detail {

template <DomainPolicy Policy>
inline double divide(double a, double b) {
  if constexpr (Policy == DomainPolicy::Raise) {
    if (b == 0.0) throw DomainFault("divide", a, b);
  }
  return a / b;
}

// pow(0, 0) == 1 follows the C library.
template <DomainPolicy Policy>
inline double power(double base, double exponent) {
  if constexpr (Policy == DomainPolicy::Raise) {
    if (base < 0.0 && std::trunc(exponent) != exponent)
      throw DomainFault("pow", base, exponent);
    if (base == 0.0 && exponent < 0.0) throw DomainFault("pow", base, exponent);
  }
  return std::pow(base, exponent);
}

template <DomainPolicy Policy>
inline double apply_function(UnaryFunction fn, double v) {
  switch (fn) {
    case UnaryFunction::Sin: return std::sin(v);
    case UnaryFunction::Cos: return std::cos(v);
    case UnaryFunction::Tan: return std::tan(v);
    case UnaryFunction::Exp: return std::exp(v);
    case UnaryFunction::Log:
      if constexpr (Policy == DomainPolicy::Raise) {
        if (v <= 0.0) throw DomainFault("log", v);
      }
      return std::log(v);
    case UnaryFunction::Sqrt:
      if constexpr (Policy == DomainPolicy::Raise) {
        if (v < 0.0) throw DomainFault("sqrt", v);
      }
      return std::sqrt(v);
  }
  return v;
}

}  // namespace detail
}  // namespace fneval
