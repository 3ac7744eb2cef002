#include "taylorfd/harness/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

namespace taylorfd {

using nlohmann::json;

namespace {

const std::set<std::string> kProblems{"advection", "burgers", "heat-semiinfinite",
                                      "navier-stokes-2d", "sphere-stokes"};

const std::vector<std::string> kCommon{"problem", "dt",     "orders",           "n_steps",
                                       "t_end",   "accuracy", "oracle", "oracle_tolerance",
                                       "reference", "output"};

std::vector<std::string> problem_keys(const std::string& problem) {
  if (problem == "advection") return {"n_cells", "x_min", "x_max", "initial", "output_x"};
  if (problem == "burgers") {
    return {"n_cells", "x_min", "x_max", "initial", "initial_value", "nu", "output_x"};
  }
  if (problem == "heat-semiinfinite") {
    return {"n_cells", "x_max", "surface", "surface_params", "output_x"};
  }
  if (problem == "navier-stokes-2d") {
    return {"n_cells", "rho", "mu", "lambda", "c", "amplitude", "poisson_tolerance"};
  }
  return {"pe", "rho_max", "n_rho", "n_theta", "surface_rate", "radii", "angles"};
}

double as_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("'" + key + "' must be a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError("'" + key + "' must be an integer");
  return v.get<int>();
}

std::vector<double> as_numbers(const json& v, const std::string& key) {
  if (!v.is_array()) throw ConfigError("'" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(as_number(e, key));
  return out;
}

using Setter = std::function<void(ExperimentConfig&, const json&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> s = [] {
    std::map<std::string, Setter> m;
    auto num = [&m](const std::string& k, double ExperimentConfig::*f) {
      m[k] = [k, f](ExperimentConfig& c, const json& v) { c.*f = as_number(v, k); };
    };
    auto integer = [&m](const std::string& k, int ExperimentConfig::*f) {
      m[k] = [k, f](ExperimentConfig& c, const json& v) { c.*f = as_int(v, k); };
    };
    auto str = [&m](const std::string& k, std::string ExperimentConfig::*f) {
      m[k] = [k, f](ExperimentConfig& c, const json& v) {
        if (!v.is_string()) throw ConfigError("'" + k + "' must be a string");
        c.*f = v.get<std::string>();
      };
    };
    auto list = [&m](const std::string& k, std::vector<double> ExperimentConfig::*f) {
      m[k] = [k, f](ExperimentConfig& c, const json& v) { c.*f = as_numbers(v, k); };
    };
    str("problem", &ExperimentConfig::problem);
    num("dt", &ExperimentConfig::dt);
    m["orders"] = [](ExperimentConfig& c, const json& v) {
      if (!v.is_array() || v.empty()) throw ConfigError("'orders' must be a non-empty array");
      c.orders.clear();
      for (const auto& e : v) c.orders.push_back(as_int(e, "orders"));
    };
    m["n_steps"] = [](ExperimentConfig& c, const json& v) { c.n_steps = as_int(v, "n_steps"); };
    m["t_end"] = [](ExperimentConfig& c, const json& v) { c.t_end = as_number(v, "t_end"); };
    integer("accuracy", &ExperimentConfig::accuracy);
    integer("n_cells", &ExperimentConfig::n_cells);
    num("x_min", &ExperimentConfig::x_min);
    num("x_max", &ExperimentConfig::x_max);
    str("initial", &ExperimentConfig::initial);
    num("initial_value", &ExperimentConfig::initial_value);
    num("nu", &ExperimentConfig::nu);
    str("surface", &ExperimentConfig::surface);
    list("surface_params", &ExperimentConfig::surface_params);
    num("pe", &ExperimentConfig::pe);
    num("rho_max", &ExperimentConfig::rho_max);
    integer("n_rho", &ExperimentConfig::n_rho);
    integer("n_theta", &ExperimentConfig::n_theta);
    num("surface_rate", &ExperimentConfig::surface_rate);
    list("radii", &ExperimentConfig::radii);
    list("angles", &ExperimentConfig::angles);
    num("rho", &ExperimentConfig::rho);
    num("mu", &ExperimentConfig::mu);
    num("lambda", &ExperimentConfig::lambda);
    num("c", &ExperimentConfig::c);
    num("amplitude", &ExperimentConfig::amplitude);
    num("poisson_tolerance", &ExperimentConfig::poisson_tolerance);
    list("output_x", &ExperimentConfig::output_x);
    m["oracle"] = [](ExperimentConfig& c, const json& v) {
      if (!v.is_boolean()) throw ConfigError("'oracle' must be true or false");
      c.oracle = v.get<bool>();
    };
    num("oracle_tolerance", &ExperimentConfig::oracle_tolerance);
    str("reference", &ExperimentConfig::reference);
    str("output", &ExperimentConfig::output);
    return m;
  }();
  return s;
}

// Defaults that differ by problem, applied before the file's keys.
ExperimentConfig defaults_for(const std::string& problem) {
  ExperimentConfig c;
  c.problem = problem;
  if (problem == "burgers") c.initial = "constant";
  if (problem == "heat-semiinfinite") {
    c.x_max = 0.0;
    c.dt = 1e-4;
  }
  if (problem == "navier-stokes-2d") c.n_cells = 32;
  if (problem == "sphere-stokes") c.dt = 1e-4;
  return c;
}

}  // namespace

int ExperimentConfig::steps() const {
  if (n_steps) return *n_steps;
  if (!t_end) throw ConfigError("one of 'n_steps' or 't_end' is required");
  const double n = *t_end / dt;
  const double r = std::round(n);
  if (std::abs(n - r) > 1e-9 * std::max(1.0, n)) {
    throw ConfigError("'t_end' is not a whole number of steps of 'dt'");
  }
  return static_cast<int>(r);
}

void ExperimentConfig::validate() const {
  if (!kProblems.count(problem)) throw ConfigError("unknown problem '" + problem + "'");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("'dt' must be positive");
  if (n_steps && t_end) throw ConfigError("give either 'n_steps' or 't_end', not both");
  if (n_steps && *n_steps < 0) throw ConfigError("'n_steps' must be >= 0");
  if (t_end && !(*t_end >= 0.0)) throw ConfigError("'t_end' must be >= 0");
  steps();
  const int max_order = problem == "navier-stokes-2d" ? 3 : 5;
  for (int q : orders) {
    if (q < 1 || q > max_order) {
      throw ConfigError("order " + std::to_string(q) + " outside 1.." + std::to_string(max_order));
    }
  }
  if (accuracy < 2 || accuracy % 2) throw ConfigError("'accuracy' must be even and >= 2");
  if (problem == "navier-stokes-2d" && accuracy != 2) {
    throw ConfigError("navier-stokes-2d supports accuracy 2 only");
  }
  if (n_cells < 4) throw ConfigError("'n_cells' must be >= 4");
  if (!(oracle_tolerance > 0.0)) throw ConfigError("'oracle_tolerance' must be positive");
  if (reference != "auto" && reference != "analytic" && reference != "finest") {
    throw ConfigError("'reference' must be auto, analytic or finest");
  }
  if (problem == "advection" && initial != "linear" && initial != "sin") {
    throw ConfigError("advection 'initial' must be linear or sin");
  }
  if (problem == "burgers") {
    if (initial != "constant" && initial != "sin") {
      throw ConfigError("burgers 'initial' must be constant or sin");
    }
    if (!(nu >= 0.0)) throw ConfigError("'nu' must be >= 0");
  }
  if ((problem == "advection" || problem == "burgers") && initial != "sin" && !(x_max > x_min)) {
    throw ConfigError("'x_max' must exceed 'x_min'");
  }
  if (problem == "heat-semiinfinite") {
    if (surface == "constant") {
      if (surface_params.size() != 1) throw ConfigError("constant surface takes [value]");
    } else if (surface == "polynomial") {
      if (surface_params.empty()) throw ConfigError("polynomial surface needs coefficients");
    } else if (surface == "exponential") {
      if (surface_params.size() != 2) throw ConfigError("exponential surface takes [amplitude, rate]");
    } else {
      throw ConfigError("'surface' must be constant, polynomial or exponential");
    }
    if (x_max < 0.0) throw ConfigError("'x_max' must be >= 0 (0 picks the resolved grid)");
    if (final_time() <= 0.0 && x_max == 0.0) {
      throw ConfigError("the resolved heat grid needs a positive end time");
    }
  }
  if (problem == "navier-stokes-2d") {
    if (!(rho > 0.0) || !(mu >= 0.0) || !(lambda >= 0.0) || !(c > 0.0)) {
      throw ConfigError("fluid properties must satisfy rho > 0, mu >= 0, lambda >= 0, c > 0");
    }
    if (n_cells % 2) throw ConfigError("navier-stokes-2d needs an even 'n_cells'");
    if (!(poisson_tolerance > 0.0)) throw ConfigError("'poisson_tolerance' must be positive");
  }
  if (problem == "sphere-stokes") {
    if (!(pe >= 0.0)) throw ConfigError("'pe' must be >= 0");
    if (!(rho_max > 1.0)) throw ConfigError("'rho_max' must exceed 1");
    if (n_rho < 2 || n_theta < 2) throw ConfigError("'n_rho' and 'n_theta' must be >= 2");
    for (double r : radii) {
      if (r < 1.0 || r > rho_max) throw ConfigError("output radius outside [1, rho_max]");
    }
    for (double a : angles) {
      if (a < 0.0 || a > 2.0 * std::numbers::pi) throw ConfigError("output angle outside [0, 2 pi]");
    }
  }
}

ExperimentConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  if (!doc.contains("problem") || !doc["problem"].is_string()) {
    throw ConfigError("'problem' is required");
  }
  const std::string problem = doc["problem"].get<std::string>();
  if (!kProblems.count(problem)) throw ConfigError("unknown problem '" + problem + "'");

  std::set<std::string> allowed(kCommon.begin(), kCommon.end());
  for (const auto& k : problem_keys(problem)) allowed.insert(k);

  ExperimentConfig c = defaults_for(problem);
  for (const auto& [key, value] : doc.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' for " + problem);
    setters().at(key)(c, value);
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& c) {
  json j;
  j["problem"] = c.problem;
  j["dt"] = c.dt;
  j["orders"] = c.orders;
  if (c.n_steps) j["n_steps"] = *c.n_steps;
  if (c.t_end) j["t_end"] = *c.t_end;
  j["accuracy"] = c.accuracy;
  j["oracle"] = c.oracle;
  j["oracle_tolerance"] = c.oracle_tolerance;
  j["reference"] = c.reference;
  j["output"] = c.output;
  const std::map<std::string, std::function<json()>> fields{
      {"n_cells", [&] { return json(c.n_cells); }},
      {"x_min", [&] { return json(c.x_min); }},
      {"x_max", [&] { return json(c.x_max); }},
      {"initial", [&] { return json(c.initial); }},
      {"initial_value", [&] { return json(c.initial_value); }},
      {"nu", [&] { return json(c.nu); }},
      {"surface", [&] { return json(c.surface); }},
      {"surface_params", [&] { return json(c.surface_params); }},
      {"pe", [&] { return json(c.pe); }},
      {"rho_max", [&] { return json(c.rho_max); }},
      {"n_rho", [&] { return json(c.n_rho); }},
      {"n_theta", [&] { return json(c.n_theta); }},
      {"surface_rate", [&] { return json(c.surface_rate); }},
      {"radii", [&] { return json(c.radii); }},
      {"angles", [&] { return json(c.angles); }},
      {"rho", [&] { return json(c.rho); }},
      {"mu", [&] { return json(c.mu); }},
      {"lambda", [&] { return json(c.lambda); }},
      {"c", [&] { return json(c.c); }},
      {"amplitude", [&] { return json(c.amplitude); }},
      {"poisson_tolerance", [&] { return json(c.poisson_tolerance); }},
      {"output_x", [&] { return json(c.output_x); }},
  };
  for (const auto& k : problem_keys(c.problem)) j[k] = fields.at(k)();
  return j.dump(2);
}

}  // namespace taylorfd
