#pragma once
#include <map>
#include <string>
#include <vector>

#include "fraclap/fraclap.hpp"

// CLI-facing run description: parsed from flags and a flat key=value config
// file, round-trips through serialization. Invalid alpha is rejected at
// parse time. Report writers emit RFC-4180 CSV or versioned JSON.

namespace fraclap::cli {

struct RunConfig {
  double k = 0.5;
  int d = 1;
  double alpha = 1.0;
  std::string func = "gaussian";       // gaussian | mollified-constant |
                                       // poly-gaussian | user-table
  std::string table_path;              // for user-table
  double points_start = -2.0, points_stop = 2.0, points_step = 0.5;
  std::vector<std::string> routes = {"all"};
  double tol = 1e-5;
  std::string format = "csv";          // csv | json
  std::string out = "-";               // "-" = stdout
  // quadrature budgets
  double quad_scale = 1.0;
  double quad_abs_tol = 1e-11;
  double quad_rel_tol = 1e-11;
  std::vector<double> eps_seq = {0.1, 0.05, 0.025};  // annulus validation

  std::vector<double> expand_points() const;
  std::vector<routes::RouteId> route_ids() const;
  dunkl::QuadOpts quad_opts() const;

  // flat key=value form; parse(serialize(c)) == c
  std::string serialize() const;
  static RunConfig parse_kv(const std::string& text);
  void set_kv(const std::string& key, const std::string& value);
  void validate() const;  // throws std::invalid_argument
};

// "a:b:c" -> start:stop:step
void parse_points_spec(const std::string& spec, RunConfig& cfg);

std::string csv_escape(const std::string& field);

// one row per point: point, per-route value/err, max_dev, verdict
std::string report_to_csv(const std::vector<routes::ConsistencyReport>& reports);
std::string report_to_json(const std::vector<routes::ConsistencyReport>& reports,
                           const RunConfig& cfg);

inline constexpr int kSchemaVersion = 1;

}  // namespace fraclap::cli
