#pragma once

// Report rendering. csv and json carry 17 significant digits; json values
// are written by nlohmann::json, which round-trips doubles exactly.
//
// csv schema v1 columns:
//   method,expression_id,median_s,min_s,evals_per_s,n_points,repetitions,seed
// json schema v1: {"schema_version":1, run metadata..., "cells":[{the csv
//   fields plus checksum, input_hash, sweeps_per_window, total_window_s}]}

#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "fneval/benchmark.hpp"
#include "fneval/dispatch.hpp"
#include "fneval/error.hpp"

namespace fneval {

inline constexpr int kReportSchemaVersion = 1;

enum class ReportFormat { Table, Csv, Json };

inline std::optional<ReportFormat> report_format_from_name(
    std::string_view s) noexcept {
  if (s == "table") return ReportFormat::Table;
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json") return ReportFormat::Json;
  return std::nullopt;
}

inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline std::string emit_csv(const BenchReport& r) {
  std::ostringstream out;
  out << "method,expression_id,median_s,min_s,evals_per_s,n_points,"
         "repetitions,seed\n";
  for (const auto& c : r.cells) {
    out << method_key(c.method) << ',' << c.expression_id << ','
        << format_g17(c.median_cpu_seconds) << ','
        << format_g17(c.min_cpu_seconds) << ','
        << format_g17(c.evals_per_second) << ',' << r.n_points << ','
        << r.repetitions << ',' << r.seed << '\n';
  }
  return out.str();
}

inline nlohmann::json to_json(const BenchReport& r) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : r.cells) {
    cells.push_back({
        {"method", method_key(c.method)},
        {"expression_id", c.expression_id},
        {"median_s", c.median_cpu_seconds},
        {"min_s", c.min_cpu_seconds},
        {"evals_per_s", c.evals_per_second},
        {"n_points", r.n_points},
        {"repetitions", r.repetitions},
        {"seed", r.seed},
        {"checksum", c.checksum},
        {"input_hash", c.input_hash},
        {"sweeps_per_window", c.sweeps_per_window},
        {"total_window_s", c.total_window_seconds},
    });
  }
  return {
      {"schema_version", kReportSchemaVersion},
      {"seed", r.seed},
      {"n_points", r.n_points},
      {"repetitions", r.repetitions},
      {"min_window_s", r.min_window_seconds},
      {"clock", r.clock},
      {"build_profile", r.build_profile},
      {"rng", r.rng},
      {"input_hash", r.input_hash},
      {"cells", std::move(cells)},
  };
}

// Table rows are methods, columns are expressions plus their total.
inline std::string emit_table(const BenchReport& r) {
  std::set<int> ids;
  std::vector<EvalMethod> methods;
  for (const auto& c : r.cells) {
    ids.insert(c.expression_id);
    if (std::find(methods.begin(), methods.end(), c.method) == methods.end())
      methods.push_back(c.method);
  }

  std::ostringstream out;
  char buf[64];
  out << "Median CPU seconds per sweep of " << r.n_points
      << " points (min window " << r.min_window_seconds << " s, "
      << r.repetitions << " repetitions, seed " << r.seed << ")\n";
  std::snprintf(buf, sizeof buf, "%-10s", "Method");
  out << buf;
  for (int id : ids) {
    std::snprintf(buf, sizeof buf, " %11s", ("f" + std::to_string(id)).c_str());
    out << buf;
  }
  std::snprintf(buf, sizeof buf, " %11s\n", "Total");
  out << buf;
  for (EvalMethod m : methods) {
    std::snprintf(buf, sizeof buf, "%-10s", std::string(method_label(m)).c_str());
    out << buf;
    double total = 0.0;
    for (int id : ids) {
      const BenchCell* c = r.find(m, id);
      if (c) {
        total += c->median_cpu_seconds;
        std::snprintf(buf, sizeof buf, " %11.3e", c->median_cpu_seconds);
      } else {
        std::snprintf(buf, sizeof buf, " %11s", "-");
      }
      out << buf;
    }
    std::snprintf(buf, sizeof buf, " %11.3e\n", total);
    out << buf;
  }
  out << "clock: " << r.clock << "\n";
  out << "build: " << r.build_profile << "\n";
  out << "rng: " << r.rng << "\n";
  return out.str();
}

}  // namespace detail

inline std::string emit_report(const BenchReport& r, ReportFormat format) {
  switch (format) {
    case ReportFormat::Table: return detail::emit_table(r);
    case ReportFormat::Csv: return detail::emit_csv(r);
    case ReportFormat::Json: return detail::to_json(r).dump(2) + "\n";
  }
  return {};
}

/// Parses a json report produced by emit_report.
inline BenchReport report_from_json(std::string_view text) {
  const auto j = nlohmann::json::parse(text);
  if (j.at("schema_version").get<int>() != kReportSchemaVersion)
    throw ConfigError("unsupported report schema version");
  BenchReport r;
  r.seed = j.at("seed").get<std::uint64_t>();
  r.n_points = j.at("n_points").get<std::size_t>();
  r.repetitions = j.at("repetitions").get<std::size_t>();
  r.min_window_seconds = j.at("min_window_s").get<double>();
  r.clock = j.at("clock").get<std::string>();
  r.build_profile = j.at("build_profile").get<std::string>();
  r.rng = j.at("rng").get<std::string>();
  r.input_hash = j.at("input_hash").get<std::uint64_t>();
  for (const auto& jc : j.at("cells")) {
    BenchCell c;
    const auto key = jc.at("method").get<std::string>();
    const auto m = method_from_key(key);
    if (!m) throw ConfigError("unknown method '" + key + "' in report");
    c.method = *m;
    c.expression_id = jc.at("expression_id").get<int>();
    c.median_cpu_seconds = jc.at("median_s").get<double>();
    c.min_cpu_seconds = jc.at("min_s").get<double>();
    c.evals_per_second = jc.at("evals_per_s").get<double>();
    c.checksum = jc.at("checksum").get<double>();
    c.input_hash = jc.at("input_hash").get<std::uint64_t>();
    c.sweeps_per_window = jc.at("sweeps_per_window").get<std::uint64_t>();
    c.total_window_seconds = jc.at("total_window_s").get<double>();
    r.cells.push_back(c);
  }
  return r;
}

}  // namespace fneval
