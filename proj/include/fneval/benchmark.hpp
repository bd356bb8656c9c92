#pragma once

// Timing harness and cross-method validation for the eight test functions.
//
// Inputs come from std::mt19937_64 seeded with the configured seed. Each
// pair draws x then y, and each draw maps the top 53 bits of one 64-bit
// output to [0, 1) as (u >> 11) * 2^-53. The engine's output sequence is
// fixed by the C++ standard, so the point set is identical across
// platforms and standard libraries.

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "fneval/cpu_clock.hpp"
#include "fneval/dispatch.hpp"
#include "fneval/error.hpp"
#include "fneval/evaluators.hpp"
#include "fneval/expr.hpp"
#include "fneval/parser.hpp"
#include "fneval/suite.hpp"
#include "fneval/transform.hpp"

namespace fneval {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

inline constexpr std::string_view kRngDescription =
    "mt19937_64, x then y per pair, (u >> 11) * 2^-53";

inline std::vector<Point> generate_inputs(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  constexpr double kScale = 0x1.0p-53;
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(gen() >> 11) * kScale;
    const double y = static_cast<double>(gen() >> 11) * kScale;
    pts.push_back({x, y});
  }
  return pts;
}

// FNV-1a over the bit patterns of every coordinate.
inline std::uint64_t hash_inputs(const std::vector<Point>& pts) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](double v) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) {
      h ^= bits & 0xffU;
      h *= 0x100000001b3ULL;
      bits >>= 8;
    }
  };
  for (const auto& p : pts) {
    mix(p.x);
    mix(p.y);
  }
  return h;
}

struct BenchConfig {
  std::size_t n_points = 5000;
  std::uint64_t seed = 42;
  std::size_t repetitions = 10;
  std::chrono::milliseconds min_window{100};
  std::vector<EvalMethod> methods{kAllMethods.begin(), kAllMethods.end()};
  std::vector<int> expressions = suite::all_ids();

  void validate() const {
    if (n_points < 1) throw ConfigError("n_points must be >= 1");
    if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
    if (min_window.count() <= 0) throw ConfigError("min_window must be > 0");
    if (methods.empty()) throw ConfigError("no methods selected");
    if (expressions.empty()) throw ConfigError("no expressions selected");
    for (int id : expressions) {
      if (id < 1 || id > 8) throw UnknownFunctionId(id);
    }
  }
};

struct BenchCell {
  EvalMethod method = EvalMethod::BlackBox;
  int expression_id = 0;
  double median_cpu_seconds = 0.0;  // per sweep of n_points
  double min_cpu_seconds = 0.0;     // per sweep of n_points
  double evals_per_second = 0.0;
  std::uint64_t sweeps_per_window = 0;
  double total_window_seconds = 0.0;  // sum over repetitions
  double checksum = 0.0;              // sum of one sweep's results
  std::uint64_t input_hash = 0;
};

struct BenchReport {
  std::uint64_t seed = 0;
  std::size_t n_points = 0;
  std::size_t repetitions = 0;
  double min_window_seconds = 0.0;
  std::string clock;
  std::string build_profile;
  std::string rng;
  std::uint64_t input_hash = 0;
  std::vector<BenchCell> cells;

  const BenchCell* find(EvalMethod m, int expression_id) const noexcept {
    for (const auto& c : cells) {
      if (c.method == m && c.expression_id == expression_id) return &c;
    }
    return nullptr;
  }
};

inline std::string build_profile() {
  std::string s;
#if defined(__clang__)
  s = "clang " __clang_version__;
#elif defined(__GNUC__)
  s = "gcc " __VERSION__;
#else
  s = "unknown compiler";
#endif
#if defined(FNEVAL_BUILD_TYPE)
  s += ", ";
  s += FNEVAL_BUILD_TYPE;
#endif
#if defined(__OPTIMIZE__)
  s += ", optimized";
#else
  s += ", unoptimized";
#endif
#if defined(NDEBUG)
  s += ", NDEBUG";
#endif
  return s;
}

inline double relative_deviation(double a, double b) noexcept {
  if (a == b) return 0.0;
  if (!std::isfinite(a) || !std::isfinite(b)) return HUGE_VAL;
  return std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b));
}

/// True iff, per expression, every method's checksum matches the first
/// method's within `rel_tol`.
inline bool checksums_consistent(const BenchReport& r, double rel_tol) {
  for (const auto& a : r.cells) {
    for (const auto& b : r.cells) {
      if (a.expression_id == b.expression_id &&
          relative_deviation(a.checksum, b.checksum) > rel_tol)
        return false;
    }
  }
  return true;
}

namespace detail {

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Keeps the compiler from hoisting or merging repeated sweeps.
inline void clobber_memory() noexcept {
#if defined(__GNUC__)
  asm volatile("" : : : "memory");
#endif
}

// One method prepared for one expression. `sweep` evaluates every point
// once and returns the sum; `timed` runs that many sweeps and returns the
// CPU seconds spent. The per-point evaluation is inlined into the sweep
// loop, so the type erasure costs one indirect call per window.
struct MethodRunner {
  EvalMethod method = EvalMethod::BlackBox;
  std::function<double()> sweep;
  std::function<double(std::uint64_t)> timed;
};

template <class EvalOne>
MethodRunner make_runner(EvalMethod method, const std::vector<Point>& pts,
                         const CpuClock& clock, EvalOne eval_one) {
  auto state = std::make_shared<EvalOne>(std::move(eval_one));
  auto sweep = [&pts, state]() {
    double acc = 0.0;
    for (const auto& p : pts) acc += (*state)(p.x, p.y);
    return acc;
  };
  auto timed = [sweep, &clock](std::uint64_t sweeps) {
    volatile double sink = 0.0;
    const double t0 = clock.now_seconds();
    for (std::uint64_t i = 0; i < sweeps; ++i) {
      clobber_memory();
      sink = sink + sweep();
    }
    return clock.now_seconds() - t0;
  };
  return {method, sweep, timed};
}

inline MethodRunner prepare_runner(EvalMethod method, int id,
                                   const std::vector<Point>& pts,
                                   const CpuClock& clock) {
  switch (method) {
    case EvalMethod::BlackBox: {
      const NativeFunction f = blackbox_lookup(id);
      return make_runner(method, pts, clock,
                         [f](double x, double y) { return f(x, y); });
    }
    case EvalMethod::BinaryTree:
    case EvalMethod::NaryTree: {
      ExprNode tree = method == EvalMethod::BinaryTree
                          ? suite::binary_tree(id)
                          : flatten(suite::binary_tree(id));
      return make_runner(
          method, pts, clock,
          [tree = std::move(tree), vars = std::array<double, 2>{}](
              double x, double y) mutable {
            vars[0] = x;
            vars[1] = y;
            return eval_tree_fast<DomainPolicy::Propagate>(tree, vars);
          });
    }
    case EvalMethod::StringParse: break;
  }
  const std::string_view text = suite::text(id);
  return make_runner(
      method, pts, clock,
      [text, vars = std::array<double, 2>{}](double x, double y) mutable {
        vars[0] = x;
        vars[1] = y;
        return eval_string_fast<DomainPolicy::Propagate>(
            text, default_symbols(), vars);
      });
}

// Smallest power-of-growth sweep count whose CPU time reaches `window`.
inline std::uint64_t calibrate(const MethodRunner& runner, double window,
                               const CpuClock& clock) {
  std::uint64_t sweeps = 1;
  for (;;) {
    const double t = runner.timed(sweeps);
    if (t >= window) return sweeps;
    const double floor = std::max(t, clock.resolution_seconds());
    const double grow = std::clamp(std::ceil(1.2 * window / floor), 2.0, 100.0);
    sweeps *= static_cast<std::uint64_t>(grow);
  }
}

}  // namespace detail

/// Times every selected (method, expression) pair. Source preparation (tree
/// construction, flattening) happens before timing; string parsing happens
/// inside the timed loop on every evaluation.
///
/// For each expression the selected methods are measured round-robin, one
/// window per method per repetition, so slow drift in machine speed hits
/// every method alike. Cells come out method-major in the configured order.
inline BenchReport run_benchmark(const BenchConfig& cfg) {
  cfg.validate();
  const CpuClock clock;
  const std::vector<Point> pts = generate_inputs(cfg.n_points, cfg.seed);
  const std::uint64_t input_hash = hash_inputs(pts);
  const double window = std::chrono::duration<double>(cfg.min_window).count();

  BenchReport report;
  report.seed = cfg.seed;
  report.n_points = cfg.n_points;
  report.repetitions = cfg.repetitions;
  report.min_window_seconds = window;
  report.clock = CpuClock::description();
  report.build_profile = build_profile();
  report.rng = std::string(kRngDescription);
  report.input_hash = input_hash;

  std::vector<std::vector<BenchCell>> by_method(cfg.methods.size());
  for (int id : cfg.expressions) {
    std::vector<detail::MethodRunner> runners;
    std::vector<BenchCell> cells(cfg.methods.size());
    std::vector<std::vector<double>> per_sweep(cfg.methods.size());
    for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
      runners.push_back(detail::prepare_runner(cfg.methods[m], id, pts, clock));
      cells[m].method = cfg.methods[m];
      cells[m].expression_id = id;
      cells[m].input_hash = input_hash;
      // The warm-up sweep doubles as the checksum.
      cells[m].checksum = runners[m].sweep();
      cells[m].sweeps_per_window = detail::calibrate(runners[m], window, clock);
    }
    for (std::size_t r = 0; r < cfg.repetitions; ++r) {
      for (std::size_t m = 0; m < runners.size(); ++m) {
        const double t = runners[m].timed(cells[m].sweeps_per_window);
        cells[m].total_window_seconds += t;
        per_sweep[m].push_back(t /
                               static_cast<double>(cells[m].sweeps_per_window));
      }
    }
    for (std::size_t m = 0; m < cells.size(); ++m) {
      cells[m].median_cpu_seconds = detail::median(per_sweep[m]);
      cells[m].min_cpu_seconds =
          *std::min_element(per_sweep[m].begin(), per_sweep[m].end());
      cells[m].evals_per_second =
          static_cast<double>(pts.size()) / cells[m].median_cpu_seconds;
      by_method[m].push_back(cells[m]);
    }
  }
  for (auto& cells : by_method) {
    report.cells.insert(report.cells.end(), cells.begin(), cells.end());
  }
  return report;
}

// ---------------------------------------------------------------------------
// Cross-validation

inline double tolerance_for_digits(int digits) {
  if (digits < 1) throw ConfigError("significant digits must be >= 1");
  return 0.5 * std::pow(10.0, -digits);
}

struct ValidationConfig {
  std::vector<int> expressions = suite::all_ids();
  std::vector<EvalMethod> methods{kAllMethods.begin(), kAllMethods.end()};
  std::size_t n_points = 1000;
  std::uint64_t seed = 42;
  double relative_tolerance = 5e-4;  // three significant digits
  BlackBoxTable blackboxes = kNativeBlackBoxes;
};

// Worst disagreement seen for one expression.
struct ExpressionDeviation {
  int expression_id = 0;
  double max_deviation = 0.0;
  std::size_t point_index = 0;
  Point point;
  EvalMethod method_a = EvalMethod::BlackBox;
  EvalMethod method_b = EvalMethod::BlackBox;
  double value_a = 0.0;
  double value_b = 0.0;
  bool passed = true;
};

struct ValidationReport {
  double tolerance = 0.0;
  std::size_t n_points = 0;
  std::uint64_t seed = 0;
  std::size_t method_count = 0;
  std::vector<ExpressionDeviation> expressions;

  bool passed() const noexcept {
    return std::all_of(expressions.begin(), expressions.end(),
                       [](const auto& e) { return e.passed; });
  }

  const ExpressionDeviation* worst() const noexcept {
    const ExpressionDeviation* w = nullptr;
    for (const auto& e : expressions) {
      if (!w || e.max_deviation > w->max_deviation) w = &e;
    }
    return w;
  }
};

class ValidationFailure : public Error {
 public:
  explicit ValidationFailure(ValidationReport report)
      : Error(describe(report)), report_(std::move(report)) {}

  const ValidationReport& report() const noexcept { return report_; }

 private:
  static std::string describe(const ValidationReport& r) {
    const ExpressionDeviation* w = r.worst();
    if (!w) return "validation failed";
    return "validation failed: expression " + std::to_string(w->expression_id) +
           ", point " + std::to_string(w->point_index) + ", " +
           std::string(method_key(w->method_a)) + " vs " +
           std::string(method_key(w->method_b)) + ", relative deviation " +
           std::to_string(w->max_deviation);
  }

  ValidationReport report_;
};

/// Evaluates each expression at every point with every selected method and
/// compares all method pairs. Throws ValidationFailure (carrying the full
/// report) if any pair deviates by more than the tolerance.
inline ValidationReport cross_validate(const ValidationConfig& cfg) {
  if (!(cfg.relative_tolerance >= 0.0))
    throw ConfigError("tolerance must be >= 0");
  const std::vector<Point> pts = generate_inputs(cfg.n_points, cfg.seed);
  const SymbolTable& sym = default_symbols();

  ValidationReport report;
  report.tolerance = cfg.relative_tolerance;
  report.n_points = cfg.n_points;
  report.seed = cfg.seed;
  report.method_count = cfg.methods.size();

  for (int id : cfg.expressions) {
    const NativeFunction native =
        cfg.blackboxes[static_cast<std::size_t>(BlackBoxId(id).value() - 1)];
    const ExprNode binary = suite::binary_tree(id);
    const ExprNode nary = flatten(binary);
    const std::string_view text = suite::text(id);

    ExpressionDeviation dev;
    dev.expression_id = id;
    std::vector<double> values(cfg.methods.size());
    for (std::size_t p = 0; p < pts.size(); ++p) {
      const Bindings b{pts[p].x, pts[p].y};
      for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
        switch (cfg.methods[m]) {
          case EvalMethod::BlackBox: values[m] = native(pts[p].x, pts[p].y); break;
          case EvalMethod::BinaryTree: values[m] = eval_binary(binary, b).value; break;
          case EvalMethod::NaryTree: values[m] = eval_nary(nary, b).value; break;
          case EvalMethod::StringParse: values[m] = eval_string(text, sym, b); break;
        }
      }
      for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = i + 1; j < values.size(); ++j) {
          const double d = relative_deviation(values[i], values[j]);
          if (d > dev.max_deviation || (p == 0 && i == 0 && j == 1)) {
            dev.max_deviation = d;
            dev.point_index = p;
            dev.point = pts[p];
            dev.method_a = cfg.methods[i];
            dev.method_b = cfg.methods[j];
            dev.value_a = values[i];
            dev.value_b = values[j];
          }
        }
      }
    }
    dev.passed = dev.max_deviation <= cfg.relative_tolerance;
    report.expressions.push_back(dev);
  }
  if (!report.passed()) throw ValidationFailure(report);
  return report;
}

inline ValidationReport cross_validate(std::vector<int> expressions,
                                       std::size_t n_points,
                                       std::uint64_t seed,
                                       int tolerance_sig_digits) {
  ValidationConfig cfg;
  cfg.expressions = std::move(expressions);
  cfg.n_points = n_points;
  cfg.seed = seed;
  cfg.relative_tolerance = tolerance_for_digits(tolerance_sig_digits);
  return cross_validate(cfg);
}

}  // namespace fneval
