// fneval: evaluate, inspect, validate and benchmark algebraic expressions.
//
// Exit codes: 0 success, 1 usage or parse error, 2 evaluation fault,
// 3 validation failure, 4 environment (no CPU clock).

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fneval/fneval.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitEval = 2;
constexpr int kExitValidation = 3;
constexpr int kExitEnvironment = 4;

void print_parse_error(std::string_view input, const fneval::ParseError& e) {
  std::cerr << "error: " << fneval::parse_error_kind_name(e.kind()) << ": "
            << e.message() << "\n"
            << "  " << input << "\n"
            << "  " << std::string(e.position(), ' ') << "^\n";
}

struct EvalOptions {
  std::string expr;
  std::string method = "string";
  std::vector<std::string> binds;
  int function = 0;
};

struct ParseOptions {
  std::string expr;
  bool flatten = false;
  bool dump = false;
};

struct BenchOptions {
  std::size_t n = 5000;
  std::uint64_t seed = 42;
  std::size_t reps = 10;
  long min_window_ms = 100;
  std::vector<std::string> methods;
  std::vector<int> exprs;
  std::string format = "table";
  int digits = 3;
};

struct ValidateOptions {
  int digits = 3;
  std::size_t points = 1000;
  std::uint64_t seed = 42;
};

// Splits name=value pairs into a symbol table (x, y first, then new names in
// order of appearance) and a dense binding vector.
struct BoundVariables {
  fneval::SymbolTable symbols;
  std::vector<double> values;
  std::vector<bool> bound;
};

BoundVariables bind_variables(const std::vector<std::string>& pairs) {
  std::vector<std::string> names{"x", "y"};
  std::vector<std::optional<double>> vals(2);
  for (const auto& p : pairs) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0)
      throw CLI::ValidationError("--bind", "expected name=value, got '" + p + "'");
    const std::string name = p.substr(0, eq);
    const std::string text = p.substr(eq + 1);
    double v = 0.0;
    const auto [end, ec] =
        std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || end != text.data() + text.size() ||
        !std::isfinite(v))
      throw CLI::ValidationError("--bind", "bad number in '" + p + "'");
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) {
      names.push_back(name);
      vals.emplace_back();
      it = names.end() - 1;
    }
    vals[static_cast<std::size_t>(it - names.begin())] = v;
  }
  BoundVariables out{fneval::SymbolTable(names), {}, {}};
  for (const auto& v : vals) {
    out.values.push_back(v.value_or(0.0));
    out.bound.push_back(v.has_value());
  }
  return out;
}

void collect_vars(const fneval::ExprNode& t, std::vector<std::size_t>& out) {
  if (t.tag() == fneval::OpTag::Variable) out.push_back(t.var_index());
  for (const auto& c : t.children()) collect_vars(c, out);
}

std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c != ' ' && c != '\t') out += c;
  }
  return out;
}

int cmd_eval(const EvalOptions& opt) {
  const auto method = fneval::method_from_key(opt.method);
  if (!method) {
    std::cerr << "error: unknown method '" << opt.method
              << "' (blackbox, binary, nary, string)\n";
    return kExitUsage;
  }

  std::string expr = opt.expr;
  std::optional<int> blackbox_id;
  if (*method == fneval::EvalMethod::BlackBox) {
    if (opt.function != 0) {
      blackbox_id = opt.function;
    } else {
      for (const auto& f : fneval::suite::kFunctions) {
        if (strip_spaces(f.text) == strip_spaces(expr)) blackbox_id = f.id;
      }
    }
    if (!blackbox_id || *blackbox_id < 1 || *blackbox_id > 8) {
      std::cerr << "error: blackbox needs --function 1..8 or one of the "
                   "built-in expressions\n";
      return kExitUsage;
    }
    expr = std::string(fneval::suite::text(*blackbox_id));
  } else if (expr.empty()) {
    std::cerr << "error: --expr is required\n";
    return kExitUsage;
  }

  BoundVariables vars;
  try {
    vars = bind_variables(opt.binds);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fneval::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  fneval::ExprNode tree = fneval::make_constant(0.0);
  try {
    tree = fneval::parse_to_tree(expr, vars.symbols);
  } catch (const fneval::ParseError& e) {
    print_parse_error(expr, e);
    return kExitUsage;
  }
  std::vector<std::size_t> used;
  collect_vars(tree, used);
  for (std::size_t i : used) {
    if (!vars.bound[i]) {
      std::cerr << "error: variable '" << vars.symbols.variable_names()[i]
                << "' is not bound (use --bind "
                << vars.symbols.variable_names()[i] << "=VALUE)\n";
      return kExitEval;
    }
  }

  try {
    const fneval::Bindings b(vars.values);
    fneval::EvalOutcome out;
    switch (*method) {
      case fneval::EvalMethod::BlackBox:
        out = fneval::eval(*method, fneval::BlackBoxId(*blackbox_id), b);
        break;
      case fneval::EvalMethod::BinaryTree:
        out = fneval::eval(*method, std::cref(tree), b);
        break;
      case fneval::EvalMethod::NaryTree: {
        const fneval::ExprNode flat = fneval::flatten(tree);
        out = fneval::eval(*method, std::cref(flat), b);
        break;
      }
      case fneval::EvalMethod::StringParse:
        out = fneval::eval(*method, std::string_view(expr), b, vars.symbols);
        break;
    }
    std::cout << fneval::format_shortest(out.value) << "\n";
  } catch (const fneval::ParseError& e) {
    print_parse_error(expr, e);
    return kExitUsage;
  } catch (const fneval::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEval;
  }
  return kExitOk;
}

int cmd_parse(const ParseOptions& opt) {
  try {
    fneval::ExprNode tree = fneval::parse_to_tree(opt.expr);
    if (opt.flatten) tree = fneval::flatten(tree);
    if (opt.dump) {
      std::cout << fneval::dump_tree(tree) << "\n";
    } else {
      std::cout << fneval::render_tree(tree);
    }
  } catch (const fneval::ParseError& e) {
    print_parse_error(opt.expr, e);
    return kExitUsage;
  }
  return kExitOk;
}

void print_validation(const fneval::ValidationReport& r) {
  std::cout << "points " << r.n_points << ", seed " << r.seed
            << ", relative tolerance " << fneval::format_g17(r.tolerance)
            << "\n";
  for (const auto& e : r.expressions) {
    std::cout << "f" << e.expression_id << "  "
              << fneval::suite::text(e.expression_id) << "  max deviation "
              << fneval::format_g17(e.max_deviation);
    if (r.method_count > 1 && r.n_points > 0) {
      std::cout << " (" << fneval::method_key(e.method_a) << " vs "
                << fneval::method_key(e.method_b) << ")";
    }
    std::cout << (e.passed ? "  ok" : "  FAIL") << "\n";
  }
}

void print_worst(const fneval::ValidationReport& r) {
  const auto* w = r.worst();
  if (!w) return;
  std::cerr << "worst: f" << w->expression_id << " at point " << w->point_index
            << " (x=" << fneval::format_g17(w->point.x)
            << ", y=" << fneval::format_g17(w->point.y) << "): "
            << fneval::method_key(w->method_a) << "="
            << fneval::format_g17(w->value_a) << " vs "
            << fneval::method_key(w->method_b) << "="
            << fneval::format_g17(w->value_b) << ", relative deviation "
            << fneval::format_g17(w->max_deviation) << "\n";
}

int cmd_validate(const ValidateOptions& opt) {
  if (opt.digits < 1) {
    std::cerr << "error: --digits must be >= 1\n";
    return kExitUsage;
  }
  if (opt.points == 0)
    std::cerr << "warning: 0 points, validation is vacuous\n";
  try {
    const auto report = fneval::cross_validate(fneval::suite::all_ids(),
                                               opt.points, opt.seed, opt.digits);
    print_validation(report);
    std::cout << "PASS\n";
  } catch (const fneval::ValidationFailure& e) {
    print_validation(e.report());
    std::cout << "FAIL\n";
    print_worst(e.report());
    return kExitValidation;
  } catch (const fneval::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEval;
  }
  return kExitOk;
}

int cmd_bench(const BenchOptions& opt) {
  const auto format = fneval::report_format_from_name(opt.format);
  if (!format) {
    std::cerr << "error: unknown format '" << opt.format
              << "' (table, csv, json)\n";
    return kExitUsage;
  }
  fneval::BenchConfig cfg;
  cfg.n_points = opt.n;
  cfg.seed = opt.seed;
  cfg.repetitions = opt.reps;
  cfg.min_window = std::chrono::milliseconds(opt.min_window_ms);
  if (!opt.methods.empty()) {
    cfg.methods.clear();
    for (const auto& key : opt.methods) {
      const auto m = fneval::method_from_key(key);
      if (!m) {
        std::cerr << "error: unknown method '" << key << "'\n";
        return kExitUsage;
      }
      cfg.methods.push_back(*m);
    }
  }
  if (!opt.exprs.empty()) cfg.expressions = opt.exprs;
  try {
    cfg.validate();
  } catch (const fneval::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    fneval::ValidationConfig vcfg;
    vcfg.expressions = cfg.expressions;
    vcfg.methods = cfg.methods;
    vcfg.n_points = cfg.n_points;
    vcfg.seed = cfg.seed;
    vcfg.relative_tolerance = fneval::tolerance_for_digits(opt.digits);
    fneval::cross_validate(vcfg);
  } catch (const fneval::ValidationFailure& e) {
    std::cerr << "error: methods disagree, not benchmarking\n";
    print_worst(e.report());
    return kExitValidation;
  } catch (const fneval::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const auto report = fneval::run_benchmark(cfg);
    std::cout << fneval::emit_report(report, *format);
  } catch (const fneval::ClockUnavailable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEnvironment;
  } catch (const fneval::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEval;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evaluate, inspect, validate and benchmark expressions"};
  app.require_subcommand(1);

  EvalOptions eval_opt;
  auto* eval = app.add_subcommand("eval", "Evaluate one expression");
  eval->add_option("--expr", eval_opt.expr, "Expression, e.g. \"x+y+1\"");
  eval->add_option("--method", eval_opt.method,
                   "blackbox, binary, nary or string")
      ->capture_default_str();
  eval->add_option("--bind", eval_opt.binds, "Variable binding name=value");
  eval->add_option("--function", eval_opt.function,
                   "Built-in function id 1..8 (blackbox method)");

  ParseOptions parse_opt;
  auto* parse = app.add_subcommand("parse", "Print the tree for an expression");
  parse->add_option("--expr", parse_opt.expr, "Expression")->required();
  parse->add_flag("--flatten", parse_opt.flatten, "Print the n-ary form");
  parse->add_flag("--dump", parse_opt.dump, "Nested-list output");

  BenchOptions bench_opt;
  auto* bench = app.add_subcommand("bench", "Time all methods");
  bench->add_option("--n", bench_opt.n, "Points per sweep")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_opt.seed, "Input seed")
      ->capture_default_str();
  bench->add_option("--reps", bench_opt.reps, "Repetitions per cell")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  bench->add_option("--min-window-ms", bench_opt.min_window_ms,
                    "Minimum CPU window per repetition")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  bench->add_option("--methods", bench_opt.methods,
                    "Comma list of blackbox,binary,nary,string")
      ->delimiter(',');
  bench->add_option("--exprs", bench_opt.exprs, "Comma list of ids 1..8")
      ->delimiter(',')
      ->check(CLI::Range(1, 8));
  bench->add_option("--format", bench_opt.format, "table, csv or json")
      ->capture_default_str();
  bench->add_option("--digits", bench_opt.digits,
                    "Significant digits for the pre-run validation")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  ValidateOptions val_opt;
  auto* validate = app.add_subcommand("validate", "Cross-check all methods");
  validate->add_option("--digits", val_opt.digits, "Significant digits")
      ->capture_default_str();
  validate->add_option("--points", val_opt.points, "Number of points")
      ->capture_default_str();
  validate->add_option("--seed", val_opt.seed, "Input seed")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (eval->parsed()) return cmd_eval(eval_opt);
  if (parse->parsed()) return cmd_parse(parse_opt);
  if (bench->parsed()) return cmd_bench(bench_opt);
  return cmd_validate(val_opt);
}
