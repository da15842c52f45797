#include "fraclap/runconfig.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fraclap::cli {

using nlohmann::json;

std::vector<double> RunConfig::expand_points() const {
  if (!(points_step > 0.0))
    throw std::invalid_argument("points: step must be > 0");
  if (points_stop < points_start)
    throw std::invalid_argument("points: stop must be >= start");
  std::vector<double> pts;
  const int n = static_cast<int>(std::floor((points_stop - points_start) / points_step + 1e-9));
  for (int i = 0; i <= n; ++i) pts.push_back(points_start + i * points_step);
  return pts;
}

std::vector<routes::RouteId> RunConfig::route_ids() const {
  std::vector<routes::RouteId> ids;
  for (const auto& r : routes) {
    if (r == "all") return routes::all_routes();
    auto id = routes::route_from_name(r);
    if (!id) throw std::invalid_argument("unknown route: " + r);
    ids.push_back(*id);
  }
  if (ids.empty()) throw std::invalid_argument("routes: empty selection");
  return ids;
}

dunkl::QuadOpts RunConfig::quad_opts() const {
  dunkl::QuadOpts o;
  o.abs_tol = quad_abs_tol;
  o.rel_tol = quad_rel_tol;
  o.scale = quad_scale;
  return o;
}

void RunConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw std::invalid_argument("alpha must lie in the interval (0,2)");
  if (!(k >= 0.0)) throw std::invalid_argument("k must be >= 0");
  if (d < 1) throw std::invalid_argument("d must be a positive integer");
  if (func != "gaussian" && func != "mollified-constant" &&
      func != "poly-gaussian" && func != "user-table")
    throw std::invalid_argument("unknown function id: " + func);
  if (func == "user-table" && table_path.empty())
    throw std::invalid_argument("user-table requires table=path");
  if (format != "csv" && format != "json")
    throw std::invalid_argument("format must be csv or json");
  if (!(tol >= 0.0)) throw std::invalid_argument("tol must be >= 0");
  if (!(quad_scale > 0.0)) throw std::invalid_argument("quad_scale must be > 0");
  route_ids();
  expand_points();
}

namespace {
std::string join(const std::vector<std::string>& v, char sep) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += v[i];
  }
  return s;
}
std::string join(const std::vector<double>& v, char sep) {
  std::ostringstream s;
  s.precision(17);
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s << sep;
    s << v[i];
  }
  return s.str();
}
std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}
}  // namespace

std::string RunConfig::serialize() const {
  std::ostringstream s;
  s.precision(17);
  s << "k=" << k << "\n"
    << "d=" << d << "\n"
    << "alpha=" << alpha << "\n"
    << "func=" << func << "\n";
  if (!table_path.empty()) s << "table=" << table_path << "\n";
  s << "points=" << points_start << ":" << points_stop << ":" << points_step << "\n"
    << "routes=" << join(routes, ',') << "\n"
    << "tol=" << tol << "\n"
    << "format=" << format << "\n"
    << "out=" << out << "\n"
    << "quad.scale=" << quad_scale << "\n"
    << "quad.abs_tol=" << quad_abs_tol << "\n"
    << "quad.rel_tol=" << quad_rel_tol << "\n"
    << "quad.eps_seq=" << join(eps_seq, ',') << "\n";
  return s.str();
}

void RunConfig::set_kv(const std::string& key, const std::string& value) {
  if (key == "k") k = std::stod(value);
  else if (key == "d") d = std::stoi(value);
  else if (key == "alpha") alpha = std::stod(value);
  else if (key == "func") func = value;
  else if (key == "table") table_path = value;
  else if (key == "points") parse_points_spec(value, *this);
  else if (key == "routes") routes = split(value, ',');
  else if (key == "tol") tol = std::stod(value);
  else if (key == "format") format = value;
  else if (key == "out") out = value;
  else if (key == "quad.scale") quad_scale = std::stod(value);
  else if (key == "quad.abs_tol") quad_abs_tol = std::stod(value);
  else if (key == "quad.rel_tol") quad_rel_tol = std::stod(value);
  else if (key == "quad.eps_seq") {
    eps_seq.clear();
    for (const auto& t : split(value, ',')) eps_seq.push_back(std::stod(t));
  } else {
    throw std::invalid_argument("unknown config key: " + key);
  }
}

RunConfig RunConfig::parse_kv(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    // trim
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value");
    try {
      cfg.set_kv(line.substr(0, eq), line.substr(eq + 1));
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception& ex) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": " +
                                  ex.what());
    }
  }
  cfg.validate();
  return cfg;
}

void parse_points_spec(const std::string& spec, RunConfig& cfg) {
  const auto parts = split(spec, ':');
  if (parts.size() != 3)
    throw std::invalid_argument("points spec must be start:stop:step");
  cfg.points_start = std::stod(parts[0]);
  cfg.points_stop = std::stod(parts[1]);
  cfg.points_step = std::stod(parts[2]);
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += "\"";
  return out;
}

namespace {
std::string fmt(double v) {
  std::ostringstream s;
  s.precision(15);
  s << v;
  return s.str();
}
}  // namespace

std::string report_to_csv(const std::vector<routes::ConsistencyReport>& reports) {
  // stable column order: the five canonical routes
  std::ostringstream s;
  s << "point";
  for (auto id : routes::all_routes())
    s << "," << routes::route_name(id) << "," << routes::route_name(id) << "_err";
  s << ",max_dev,verdict\n";
  for (const auto& rep : reports) {
    s << fmt(rep.point);
    for (auto id : routes::all_routes()) {
      const routes::RouteValue* found = nullptr;
      for (const auto& v : rep.values)
        if (v.route == id) found = &v;
      if (found)
        s << "," << fmt(found->value) << "," << fmt(found->err_est);
      else
        s << ",,";
    }
    s << "," << fmt(rep.max_pairwise_dev) << "," << (rep.pass ? "pass" : "fail")
      << "\n";
  }
  return s.str();
}

std::string report_to_json(const std::vector<routes::ConsistencyReport>& reports,
                           const RunConfig& cfg) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["k"] = cfg.k;
  j["d"] = cfg.d;
  j["alpha"] = cfg.alpha;
  j["func"] = cfg.func;
  j["tol"] = cfg.tol;
  j["reports"] = json::array();
  for (const auto& rep : reports) {
    json r;
    r["point"] = rep.point;
    r["max_pairwise_dev"] = rep.max_pairwise_dev;
    r["verdict"] = rep.pass ? "pass" : "fail";
    r["routes"] = json::object();
    for (const auto& v : rep.values) {
      json rv;
      rv["value"] = v.value;
      rv["err_est"] = v.err_est;
      rv["budget"] = v.budget;
      r["routes"][routes::route_name(v.route)] = rv;
    }
    if (!rep.errors.empty()) r["errors"] = rep.errors;
    j["reports"].push_back(r);
  }
  return j.dump(2) + "\n";
}

}  // namespace fraclap::cli
