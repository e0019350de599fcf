//
// Copyright 2026 The Test-of-Tests Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Command-line front end. Subcommands:
//   run       private test on a CSV dataset, JSON result
//   power     analytic power over a parameter grid, CSV
//   optimize  choose (m, alpha0) for one sample size, JSON
//   simulate  Monte Carlo rejection rates or p-value uniformity, CSV
//   generate  synthetic datasets in the input CSV layout
// Everything goes through the C API in tot/tot.h.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tot/tot.h"

namespace {

class CliError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void Check(tot_status s, const std::string& context) {
  if (s != TOT_OK) throw CliError(context + ": " + tot_last_error());
}

std::string Num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string Num(std::size_t v) { return std::to_string(v); }

struct TestHandle {
  tot_test* t = nullptr;
  TestHandle() = default;
  TestHandle(const TestHandle&) = delete;
  TestHandle& operator=(const TestHandle&) = delete;
  ~TestHandle() { tot_test_free(t); }
};

struct DatasetHandle {
  tot_dataset* d = nullptr;
  DatasetHandle() = default;
  DatasetHandle(const DatasetHandle&) = delete;
  DatasetHandle& operator=(const DatasetHandle&) = delete;
  ~DatasetHandle() { tot_dataset_free(d); }
};

// Flags shared by most subcommands.
struct Common {
  std::string test = "z";
  std::string alternative = "greater";
  int groups = 0;
  double epsilon = 1.0;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  std::string output;
  // Effect direction for the multivariate test.
  std::string mu;
  std::size_t dim = 0;
};

void AddCommon(CLI::App* app, Common& c) {
  app->add_option("--test", c.test, "public test: z, t, anova, mvn-mean")
      ->capture_default_str();
  app->add_option("--alternative", c.alternative,
                  "z/t alternative: greater, two-sided")
      ->capture_default_str();
  app->add_option("--groups", c.groups, "number of ANOVA groups");
  app->add_option("--epsilon", c.epsilon, "privacy parameter")->capture_default_str();
  app->add_option("--alpha", c.alpha, "significance level")->capture_default_str();
  app->add_option("--seed", c.seed, "random seed")->capture_default_str();
  app->add_option("--output", c.output, "output file (default: stdout)");
  app->add_option("--mu", c.mu,
                  "mvn effect direction, comma separated; zero-padded to --dim");
  app->add_option("--dim", c.dim, "dimension for the multivariate test");
}

tot_test_family Family(const Common& c) {
  tot_test_family f;
  Check(tot_parse_test_family(c.test.c_str(), &f), "--test");
  return f;
}

void MakeTest(const Common& c, TestHandle& h) {
  tot_alternative alt;
  Check(tot_parse_alternative(c.alternative.c_str(), &alt), "--alternative");
  Check(tot_test_create(Family(c), alt, c.groups, &h.t), "test");
}

std::vector<double> ParseList(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size() || item.empty()) {
      throw CliError(what + ": not a number: '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

// Effect of a given magnitude: the mean for z/t, eta for ANOVA, and the
// direction vector times the magnitude for the multivariate test.
struct Effect {
  tot_effect e{};
  std::vector<double> mu;
};

std::vector<double> Direction(const Common& c) {
  std::vector<double> v = c.mu.empty() ? std::vector<double>() : ParseList(c.mu, "--mu");
  std::size_t d = std::max(c.dim, v.size());
  if (d == 0) throw CliError("the multivariate test needs --dim or --mu");
  if (v.empty()) v.assign(d, 1.0);
  v.resize(d, 0.0);
  return v;
}

Effect MakeEffect(const Common& c, double magnitude) {
  Effect out;
  switch (Family(c)) {
    case TOT_TEST_Z:
    case TOT_TEST_T:
      out.e.kind = TOT_EFFECT_MEAN;
      out.e.value = magnitude;
      break;
    case TOT_TEST_ANOVA:
      out.e.kind = TOT_EFFECT_ANOVA;
      out.e.value = magnitude;
      out.e.groups = c.groups;
      break;
    case TOT_TEST_MVN_MEAN: {
      out.mu = Direction(c);
      for (double& x : out.mu) x *= magnitude;
      out.e.kind = TOT_EFFECT_VECTOR;
      out.e.mu = out.mu.data();
      out.e.dim = out.mu.size();
      break;
    }
  }
  return out;
}

// Unit-magnitude base for effect grids; the multivariate direction is
// normalized so grid values are Euclidean norms.
Effect UnitEffect(const Common& c) {
  Effect out = MakeEffect(c, 1.0);
  if (out.e.kind == TOT_EFFECT_VECTOR) {
    double norm = 0.0;
    for (double x : out.mu) norm += x * x;
    norm = std::sqrt(norm);
    if (!(norm > 0.0)) throw CliError("--mu must not be the zero vector");
    for (double& x : out.mu) x /= norm;
    out.e.mu = out.mu.data();
  }
  return out;
}

// ---- grids ----

using Point = std::map<std::string, double>;

std::vector<double> ParseValues(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      auto v = ParseList(item, "grid key " + key);
      out.insert(out.end(), v.begin(), v.end());
      continue;
    }
    // start:stop:step, inclusive of stop.
    std::vector<double> parts;
    std::stringstream rs(item);
    std::string piece;
    while (std::getline(rs, piece, ':')) parts.push_back(ParseList(piece, "grid key " + key).at(0));
    if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
      throw CliError("grid key " + key + ": ranges are start:stop:step with step > 0");
    }
    const double tol = 1e-9 * std::max(1.0, std::abs(parts[1]));
    for (std::size_t k = 0;; ++k) {
      const double v = parts[0] + static_cast<double>(k) * parts[2];
      if (v > parts[1] + tol) break;
      out.push_back(v);
    }
  }
  if (out.empty()) throw CliError("grid key " + key + " has no values");
  return out;
}

void CheckKey(const std::string& key, const std::vector<std::string>& allowed) {
  for (const auto& a : allowed) {
    if (a == key) return;
  }
  std::string list;
  for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
  throw CliError("unknown grid key '" + key + "' (allowed: " + list + ")");
}

// Inline "k=v1,v2;k2=a:b:s" is a Cartesian product with the first key
// outermost. A path names a CSV whose header lists keys and whose rows are
// the points.
std::vector<Point> ParseGrid(const std::string& spec,
                             const std::vector<std::string>& allowed) {
  std::vector<Point> points;
  if (spec.empty()) {
    points.emplace_back();
    return points;
  }
  if (spec.find('=') == std::string::npos && std::filesystem::exists(spec)) {
    std::ifstream in(spec);
    std::string line;
    std::vector<std::string> keys;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      std::vector<std::string> fields;
      std::stringstream ls(line);
      std::string f;
      while (std::getline(ls, f, ',')) fields.push_back(f);
      if (keys.empty()) {
        keys = fields;
        for (const auto& k : keys) CheckKey(k, allowed);
        continue;
      }
      if (fields.size() != keys.size()) throw CliError("grid file: ragged row");
      Point p;
      for (std::size_t i = 0; i < keys.size(); ++i) {
        p[keys[i]] = ParseList(fields[i], "grid file").at(0);
      }
      points.push_back(p);
    }
    if (keys.empty()) throw CliError("grid file has no header");
    return points;
  }
  std::vector<std::pair<std::string, std::vector<double>>> axes;
  std::stringstream ss(spec);
  std::string segment;
  while (std::getline(ss, segment, ';')) {
    if (segment.empty()) continue;
    const auto eq = segment.find('=');
    if (eq == std::string::npos) throw CliError("grid segment without '=': " + segment);
    const std::string key = segment.substr(0, eq);
    CheckKey(key, allowed);
    for (const auto& a : axes) {
      if (a.first == key) throw CliError("grid key repeated: " + key);
    }
    axes.emplace_back(key, ParseValues(key, segment.substr(eq + 1)));
  }
  points.emplace_back();
  for (const auto& [key, values] : axes) {
    std::vector<Point> next;
    for (const Point& p : points) {
      for (double v : values) {
        Point q = p;
        q[key] = v;
        next.push_back(q);
      }
    }
    points = std::move(next);
  }
  return points;
}

std::optional<double> Get(const Point& p, const std::string& key,
                          std::optional<double> fallback = std::nullopt) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : std::optional<double>(it->second);
}

std::size_t AsCount(double v, const std::string& key) {
  if (!(v >= 0.0) || v != std::floor(v) || v > 1e15) {
    throw CliError(key + " must be a nonnegative integer, got " + Num(v));
  }
  return static_cast<std::size_t>(v);
}

void Emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw CliError("write to stdout failed");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) throw CliError("cannot write '" + path + "'");
}

std::string Row(const std::vector<std::string>& fields) {
  std::string s;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) s += ',';
    s += fields[i];
  }
  return s + '\n';
}

// Writes a JSON object with keys in insertion order.
class JsonObject {
 public:
  JsonObject& Add(const std::string& key, const std::string& raw) {
    fields_.emplace_back(key, raw);
    return *this;
  }
  JsonObject& Add(const std::string& key, double v) {
    return Add(key, std::isfinite(v) ? Num(v) : std::string("null"));
  }
  JsonObject& Add(const std::string& key, std::size_t v) { return Add(key, Num(v)); }
  JsonObject& AddBool(const std::string& key, bool v) { return Add(key, std::string(v ? "true" : "false")); }
  JsonObject& AddString(const std::string& key, const std::string& v) {
    std::string q = "\"";
    for (char c : v) {
      if (c == '"' || c == '\\') q += '\\';
      q += c;
    }
    return Add(key, q + "\"");
  }
  std::string Str(int indent = 2) const {
    std::string pad(indent, ' ');
    std::string s = "{\n";
    for (std::size_t i = 0; i < fields_.size(); ++i) {
      s += pad + "\"" + fields_[i].first + "\": " + fields_[i].second;
      s += i + 1 < fields_.size() ? ",\n" : "\n";
    }
    return s + std::string(indent - 2, ' ') + "}";
  }

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

std::size_t CandidateCount(std::size_t n) {
  std::size_t count = 0;
  Check(tot_m_candidates(n, nullptr, 0, &count), "m candidates");
  return std::max<std::size_t>(count, 1);
}

// ---- optimization shared by run, power, optimize, simulate ----

struct OptimizeFlags {
  bool optimize = false;
  double target_power = 0.9;
  double effect_min = 0.1;
  double effect_max = 5.0;
  std::size_t grid_points = 16;
};

void AddOptimizeFlags(CLI::App* app, OptimizeFlags& o) {
  app->add_flag("--optimize", o.optimize,
                "choose (m, alpha0) by minimizing the effect detectable with "
                "--target-power over a geometric effect grid");
  app->add_option("--target-power", o.target_power, "target power rho")
      ->capture_default_str();
  app->add_option("--effect-min", o.effect_min, "smallest grid effect")
      ->capture_default_str();
  app->add_option("--effect-max", o.effect_max, "largest grid effect")
      ->capture_default_str();
  app->add_option("--effect-grid-points", o.grid_points, "grid length")
      ->capture_default_str();
}

tot_optimizer_result OptimizeTarget(const Common& c, const OptimizeFlags& o,
                                    const tot_test* test, std::size_t n,
                                    double epsilon, double alpha,
                                    std::vector<tot_candidate>* certs = nullptr) {
  if (!(o.effect_min > 0.0) || o.effect_max < o.effect_min) {
    throw CliError("need 0 < --effect-min <= --effect-max");
  }
  std::vector<double> scales(o.grid_points);
  Check(tot_geometric_grid(o.effect_min, o.effect_max, o.grid_points, scales.data()),
        "effect grid");
  Effect base = UnitEffect(c);
  tot_optimizer_result r{};
  std::vector<tot_candidate> buf(CandidateCount(n));
  Check(tot_optimize_target_power(test, n, epsilon, alpha, o.target_power, &base.e,
                                  scales.data(), scales.size(), &r, buf.data(),
                                  buf.size()),
        "optimize");
  if (certs != nullptr) {
    buf.resize(std::min(buf.size(), r.num_certificates));
    *certs = buf;
  }
  return r;
}

tot_optimizer_result OptimizeKnown(const tot_test* test, std::size_t n,
                                   const Effect& effect, double epsilon,
                                   double alpha,
                                   std::vector<tot_candidate>* certs = nullptr) {
  tot_optimizer_result r{};
  std::vector<tot_candidate> buf(CandidateCount(n));
  Check(tot_optimize_known_effect(test, n, &effect.e, epsilon, alpha, &r,
                                  buf.data(), buf.size()),
        "optimize");
  if (certs != nullptr) {
    buf.resize(std::min(buf.size(), r.num_certificates));
    *certs = buf;
  }
  return r;
}

// ---- run ----

struct RunFlags {
  Common c;
  OptimizeFlags o;
  std::string input;
  std::size_t m = 0;
  double alpha0 = 0.0;
};

void CmdRun(const RunFlags& f) {
  if (f.input.empty()) throw CliError("--input is required");
  const bool fixed = f.m > 0 || f.alpha0 > 0.0;
  if (fixed == f.o.optimize) {
    throw CliError("give either --m and --alpha0, or --optimize");
  }
  if (fixed && (f.m == 0 || !(f.alpha0 > 0.0))) {
    throw CliError("--m and --alpha0 must be given together");
  }
  TestHandle test;
  MakeTest(f.c, test);
  DatasetHandle data;
  Check(tot_dataset_read_csv(f.input.c_str(), Family(f.c), &data.d), f.input);
  const std::size_t n = tot_dataset_rows(data.d);
  tot_config config{f.c.epsilon, f.c.alpha, f.m, f.alpha0, f.c.seed};
  if (f.o.optimize) {
    Common c = f.c;
    if (Family(c) == TOT_TEST_MVN_MEAN && c.dim == 0 && c.mu.empty()) {
      c.dim = tot_dataset_cols(data.d);
    }
    const auto r = OptimizeTarget(c, f.o, test.t, n, f.c.epsilon, f.c.alpha);
    config.m = r.m;
    config.alpha0 = r.alpha0;
  }
  tot_result res{};
  Check(tot_run(data.d, test.t, &config, &res), "run");
  JsonObject j;
  j.Add("z", res.z)
      .Add("p_value", res.p_value)
      .AddBool("reject", res.reject != 0)
      .Add("m", res.config.m)
      .Add("alpha0", res.config.alpha0)
      .Add("epsilon", res.config.epsilon)
      .Add("alpha", res.config.alpha)
      .Add("seed", std::to_string(res.config.seed))
      .Add("n", res.n)
      .Add("subtests_available", res.subtests_available);
  Emit(j.Str() + "\n", f.c.output);
}

// ---- power ----

struct PowerFlags {
  Common c;
  OptimizeFlags o;
  std::string grid;
  bool with_pb = false;
  double pb_p = -1.0;
  double canonne_delta = -1.0;
  double canonne_gamma = 0.1;
  bool use_test = false;
};

void CmdPower(const PowerFlags& f) {
  const auto points = ParseGrid(
      f.grid, {"n", "epsilon", "alpha", "m", "alpha0", "theta", "effect", "rho"});
  bool min_m_mode = false;
  for (const auto& p : points) min_m_mode |= p.count("rho") > 0;
  std::string out;
  if (min_m_mode) {
    out += Row({"theta", "alpha0", "rho", "alpha", "epsilon", "min_m"});
    for (const auto& p : points) {
      const auto theta = Get(p, "theta");
      const auto alpha0 = Get(p, "alpha0");
      const auto rho = Get(p, "rho");
      if (!theta || !alpha0 || !rho) {
        throw CliError("minimum-m rows need theta, alpha0 and rho");
      }
      if (p.count("m")) throw CliError("m cannot be combined with rho");
      const double alpha = *Get(p, "alpha", f.c.alpha);
      const double eps = *Get(p, "epsilon", f.c.epsilon);
      std::size_t m = 0;
      Check(tot_min_m_for_power(*theta, *alpha0, *rho, alpha, eps, 0, &m),
            "minimum m");
      out += Row({Num(*theta), Num(*alpha0), Num(*rho), Num(alpha), Num(eps), Num(m)});
    }
    Emit(out, f.c.output);
    return;
  }

  const bool pb = f.with_pb || f.pb_p >= 0.0;
  const bool canonne = f.canonne_delta > 0.0;
  std::vector<std::string> header = {"n", "epsilon", "alpha", "m", "alpha0",
                                     "theta", "tot_power"};
  if (pb) header.push_back("pb_power");
  if (canonne) header.push_back("canonne_bound");
  header.push_back("public_power");
  header.push_back("effect");
  out += Row(header);

  TestHandle test;
  bool have_test = false;
  for (const auto& p : points) {
    const double alpha = *Get(p, "alpha", f.c.alpha);
    const double eps = *Get(p, "epsilon", f.c.epsilon);
    const auto n_val = Get(p, "n");
    const std::optional<std::size_t> n =
        n_val ? std::optional<std::size_t>(AsCount(*n_val, "n")) : std::nullopt;
    auto m_val = Get(p, "m");
    auto alpha0 = Get(p, "alpha0");
    auto theta = Get(p, "theta");
    const auto effect_val = Get(p, "effect");
    std::size_t m = m_val ? AsCount(*m_val, "m") : 0;
    std::string public_power;
    std::string effect_field;
    if (!theta) {
      if (!effect_val || !n) {
        throw CliError("each point needs theta, or n and effect with --test");
      }
      if (!have_test) {
        MakeTest(f.c, test);
        have_test = true;
      }
      const Effect effect = MakeEffect(f.c, *effect_val);
      effect_field = Num(*effect_val);
      if (!m_val || !alpha0) {
        if (m_val || alpha0) throw CliError("give both m and alpha0, or neither");
        const auto r = f.o.optimize
                           ? OptimizeTarget(f.c, f.o, test.t, *n, eps, alpha)
                           : OptimizeKnown(test.t, *n, effect, eps, alpha);
        m = r.m;
        alpha0 = r.alpha0;
      }
      double th = 0.0;
      double tp = 0.0;
      Check(tot_evaluate_power(test.t, *n, &effect.e, eps, alpha, m, *alpha0, &th, &tp),
            "power");
      theta = th;
      double pub = 0.0;
      Check(tot_test_power(test.t, *n, &effect.e, alpha, &pub), "public power");
      public_power = Num(pub);
    }
    if (!m_val && m == 0) throw CliError("each point needs m");
    if (!alpha0) throw CliError("each point needs alpha0");
    double tp = 0.0;
    Check(tot_power(eps, alpha, m, *alpha0, *theta, &tp), "power");
    std::vector<std::string> row = {n ? Num(*n) : "", Num(eps), Num(alpha), Num(m),
                                    Num(*alpha0), Num(*theta), Num(tp)};
    if (pb) {
      std::string cell;
      if (m % 2 == 1) {
        const double keep = f.pb_p >= 0.0 ? f.pb_p
                                          : tot_randomized_response_keep_probability(eps);
        // Majority vote is scaled down to level alpha when it exceeds it.
        double v = 0.0;
        double null_rate = 0.0;
        Check(tot_pb_power(m, keep, *theta, &v), "PB power");
        Check(tot_pb_power(m, keep, *alpha0, &null_rate), "PB power");
        if (null_rate > alpha) v *= alpha / null_rate;
        cell = Num(v);
      }
      row.push_back(cell);
    }
    if (canonne) {
      if (!n) throw CliError("the Canonne bound needs n");
      std::size_t d = f.c.dim;
      if (d == 0 && Family(f.c) == TOT_TEST_MVN_MEAN) d = Direction(f.c).size();
      if (d == 0) throw CliError("the Canonne bound needs --dim");
      double v = 0.0;
      Check(tot_canonne_type1_lower_bound(*n, d, eps, f.canonne_delta,
                                          f.canonne_gamma, &v),
            "Canonne bound");
      row.push_back(Num(v));
    }
    row.push_back(public_power);
    row.push_back(effect_field);
    out += Row(row);
  }
  Emit(out, f.c.output);
}

// ---- optimize ----

struct OptimizeCmdFlags {
  Common c;
  OptimizeFlags o;
  std::size_t n = 0;
  std::string input;
  double effect = std::nan("");
  double evaluate_effect = std::nan("");
  bool certificates = false;
};

void CmdOptimize(const OptimizeCmdFlags& f) {
  std::size_t n = f.n;
  Common c = f.c;
  if (!f.input.empty()) {
    DatasetHandle data;
    Check(tot_dataset_read_csv(f.input.c_str(), Family(c), &data.d), f.input);
    n = tot_dataset_rows(data.d);
    if (Family(c) == TOT_TEST_MVN_MEAN && c.dim == 0 && c.mu.empty()) {
      c.dim = tot_dataset_cols(data.d);
    }
  }
  if (n == 0) throw CliError("give --n or --input");
  const bool known = !std::isnan(f.effect);
  if (known == f.o.optimize) {
    throw CliError("give either --effect (known effect) or --optimize (target power)");
  }
  TestHandle test;
  MakeTest(c, test);
  std::vector<tot_candidate> certs;
  tot_optimizer_result r{};
  if (known) {
    r = OptimizeKnown(test.t, n, MakeEffect(c, f.effect), c.epsilon, c.alpha, &certs);
  } else {
    r = OptimizeTarget(c, f.o, test.t, n, c.epsilon, c.alpha, &certs);
  }
  JsonObject j;
  j.Add("n", n)
      .Add("epsilon", c.epsilon)
      .Add("alpha", c.alpha)
      .Add("m", r.m)
      .Add("alpha0", r.alpha0)
      .Add("theta", r.theta)
      .Add("achieved_power", r.achieved_power)
      .AddBool("degenerate", r.degenerate != 0)
      .AddBool("target_reached", known ? true : r.target_reached != 0);
  if (!known && r.has_min_detectable) {
    j.Add("min_detectable_effect", r.min_detectable_scale);
  } else {
    j.Add("min_detectable_effect", std::string("null"));
  }
  if (!std::isnan(f.evaluate_effect)) {
    const Effect e = MakeEffect(c, f.evaluate_effect);
    double th = 0.0;
    double p = 0.0;
    Check(tot_evaluate_power(test.t, n, &e.e, c.epsilon, c.alpha, r.m, r.alpha0, &th, &p),
          "evaluate");
    j.Add("evaluated_effect", f.evaluate_effect)
        .Add("evaluated_theta", th)
        .Add("evaluated_power", p);
  }
  if (f.certificates) {
    std::string list = "[";
    for (std::size_t i = 0; i < certs.size(); ++i) {
      JsonObject cj;
      cj.Add("m", certs[i].m)
          .Add("alpha0", certs[i].alpha0)
          .Add("theta", certs[i].theta)
          .Add("power", certs[i].power);
      list += (i ? ",\n    " : "\n    ") + cj.Str(6);
    }
    list += certs.empty() ? "]" : "\n  ]";
    j.Add("certificates", list);
  }
  Emit(j.Str() + "\n", c.output);
}

// ---- simulate ----

struct SimulateFlags {
  Common c;
  OptimizeFlags o;
  std::string engine = "tot";
  std::string generator;
  std::string grid;
  std::size_t n = 0;
  std::size_t m = 0;
  double alpha0 = 0.0;
  double effect = 0.0;
  double theta = 0.0;
  std::size_t replicates = 10000;
  std::size_t threads = 0;
  double pb_p = -1.0;
  std::string uniformity;
};

void CmdSimulate(const SimulateFlags& f) {
  if (f.replicates == 0) throw CliError("--replicates must be at least 1");
  tot_engine_kind engine;
  Check(tot_parse_engine(f.engine.c_str(), &engine), "--engine");
  std::string gen_name = f.generator;
  const tot_test_family family = Family(f.c);
  if (gen_name.empty()) {
    gen_name = family == TOT_TEST_ANOVA      ? "anova"
               : family == TOT_TEST_MVN_MEAN ? "mvn"
                                             : "normal";
  }
  tot_generator_family gen;
  Check(tot_parse_generator_family(gen_name.c_str(), &gen), "--generator");
  const bool mixture = gen == TOT_GEN_PVALUE_MIXTURE;
  int uniformity = -1;
  if (f.uniformity == "two-sided") {
    uniformity = 0;
  } else if (f.uniformity == "super-uniform") {
    uniformity = 1;
  } else if (!f.uniformity.empty()) {
    throw CliError("--uniformity must be two-sided or super-uniform");
  }

  TestHandle test;
  if (mixture) {
    Check(tot_test_create_pvalue_passthrough(&test.t), "test");
  } else {
    MakeTest(f.c, test);
  }
  const auto points = ParseGrid(
      f.grid, {"n", "epsilon", "alpha", "m", "alpha0", "effect", "theta"});
  std::string out;
  std::vector<std::string> header = {"engine", "generator", "n", "epsilon", "alpha",
                                     "m", "alpha0", "effect", "theta"};
  if (uniformity >= 0) {
    for (const char* h : {"statistic", "threshold", "pass"}) header.push_back(h);
  } else {
    for (const char* h : {"estimate", "std_error"}) header.push_back(h);
  }
  header.push_back("replicates");
  header.push_back("seed");
  out += Row(header);

  for (const auto& p : points) {
    std::size_t n = AsCount(*Get(p, "n", static_cast<double>(f.n)), "n");
    // The p-value mixture needs one row per subset.
    if (mixture && n == 0) n = AsCount(*Get(p, "m", static_cast<double>(f.m)), "m");
    if (n == 0) throw CliError("--n is required");
    const double eps = *Get(p, "epsilon", f.c.epsilon);
    const double alpha = *Get(p, "alpha", f.c.alpha);
    const double magnitude = *Get(p, "effect", f.effect);
    const double theta = *Get(p, "theta", f.theta);
    std::size_t m = AsCount(*Get(p, "m", static_cast<double>(f.m)), "m");
    double alpha0 = *Get(p, "alpha0", f.alpha0);

    Effect effect;
    if (!mixture) effect = MakeEffect(f.c, magnitude);
    if (engine != TOT_ENGINE_PUBLIC && (m == 0 || !(alpha0 > 0.0))) {
      if (mixture || engine == TOT_ENGINE_PB) {
        throw CliError("this engine needs m and alpha0");
      }
      const auto r = f.o.optimize ? OptimizeTarget(f.c, f.o, test.t, n, eps, alpha)
                                  : OptimizeKnown(test.t, n, effect, eps, alpha);
      m = r.m;
      alpha0 = r.alpha0;
    }
    tot_sim_plan plan{};
    plan.generator.family = gen;
    plan.generator.n = n;
    plan.generator.effect = effect.e;
    plan.generator.theta = theta;
    plan.generator.mixture_alpha0 = alpha0 > 0.0 ? alpha0 : 0.05;
    plan.engine.kind = engine;
    plan.engine.test = test.t;
    plan.engine.epsilon = eps;
    plan.engine.alpha = alpha;
    plan.engine.m = m;
    plan.engine.alpha0 = alpha0;
    plan.engine.pb_keep_probability =
        f.pb_p >= 0.0 ? f.pb_p : tot_randomized_response_keep_probability(eps);
    plan.replicates = f.replicates;
    plan.seed = f.c.seed;
    plan.threads = f.threads;

    std::vector<std::string> row = {f.engine, gen_name, Num(n), Num(eps), Num(alpha),
                                    engine == TOT_ENGINE_PUBLIC ? "" : Num(m),
                                    engine == TOT_ENGINE_PUBLIC ? "" : Num(alpha0),
                                    mixture ? "" : Num(magnitude),
                                    mixture ? Num(theta) : ""};
    if (uniformity >= 0) {
      tot_uniformity_result u{};
      Check(tot_simulate_uniformity(&plan, uniformity, &u), "simulate");
      row.push_back(Num(u.statistic));
      row.push_back(Num(u.threshold));
      row.push_back(u.pass ? "true" : "false");
      row.push_back(Num(u.replicates));
    } else {
      tot_sim_result s{};
      Check(tot_simulate(&plan, &s), "simulate");
      row.push_back(Num(s.estimate));
      row.push_back(Num(s.std_error));
      row.push_back(Num(s.replicates));
    }
    row.push_back(std::to_string(f.c.seed));
    out += Row(row);
  }
  Emit(out, f.c.output);
}

// ---- generate ----

struct GenerateFlags {
  Common c;
  std::string generator;
  std::size_t n = 0;
  double effect = 0.0;
  double theta = 0.0;
  double mixture_alpha0 = 0.05;
};

void CmdGenerate(const GenerateFlags& f) {
  if (f.n == 0) throw CliError("--n is required");
  const tot_test_family family = Family(f.c);
  std::string gen_name = f.generator;
  if (gen_name.empty()) {
    gen_name = family == TOT_TEST_ANOVA      ? "anova"
               : family == TOT_TEST_MVN_MEAN ? "mvn"
                                             : "normal";
  }
  tot_generator_family gen;
  Check(tot_parse_generator_family(gen_name.c_str(), &gen), "--generator");
  tot_generator g{};
  g.family = gen;
  g.n = f.n;
  g.theta = f.theta;
  g.mixture_alpha0 = f.mixture_alpha0;
  Effect effect;
  if (gen != TOT_GEN_PVALUE_MIXTURE) {
    Common c = f.c;
    if (gen == TOT_GEN_ANOVA) c.test = "anova";
    if (gen == TOT_GEN_MVN) c.test = "mvn-mean";
    if (gen == TOT_GEN_NORMAL && (family == TOT_TEST_ANOVA || family == TOT_TEST_MVN_MEAN)) {
      c.test = "z";
    }
    effect = MakeEffect(c, f.effect);
    g.effect = effect.e;
  }
  DatasetHandle data;
  Check(tot_generate_dataset(&g, f.c.seed, &data.d), "generate");
  const tot_test_family layout = gen == TOT_GEN_ANOVA ? TOT_TEST_ANOVA
                                 : gen == TOT_GEN_MVN ? TOT_TEST_MVN_MEAN
                                                      : TOT_TEST_Z;
  Check(tot_dataset_write_csv(data.d, layout, f.c.output.empty() ? "-" : f.c.output.c_str()),
        "write");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private hypothesis testing with the test of tests"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tot_version()));

  RunFlags run;
  auto* run_cmd = app.add_subcommand("run", "run the private test on a CSV dataset");
  AddCommon(run_cmd, run.c);
  AddOptimizeFlags(run_cmd, run.o);
  run_cmd->add_option("--input", run.input, "CSV dataset");
  run_cmd->add_option("--m", run.m, "number of subsets");
  run_cmd->add_option("--alpha0", run.alpha0, "sub-test significance threshold");

  PowerFlags power;
  auto* power_cmd = app.add_subcommand("power", "analytic power over a parameter grid");
  AddCommon(power_cmd, power.c);
  AddOptimizeFlags(power_cmd, power.o);
  power_cmd->add_option("--grid", power.grid,
                        "inline spec 'k=v1,v2;k2=a:b:step' or a CSV file of points; "
                        "keys n, epsilon, alpha, m, alpha0, theta, effect, rho");
  power_cmd->add_flag("--with-pb", power.with_pb,
                      "add level-alpha PB power with randomized response at epsilon");
  power_cmd->add_option("--pb-p", power.pb_p, "PB truthful-report probability");
  power_cmd->add_option("--canonne-delta", power.canonne_delta,
                        "add the Canonne et al. Type I lower bound with this delta");
  power_cmd->add_option("--canonne-gamma", power.canonne_gamma, "Canonne gamma")
      ->capture_default_str();

  OptimizeCmdFlags opt;
  auto* opt_cmd = app.add_subcommand("optimize", "choose m and alpha0");
  AddCommon(opt_cmd, opt.c);
  AddOptimizeFlags(opt_cmd, opt.o);
  opt_cmd->add_option("--n", opt.n, "sample size");
  opt_cmd->add_option("--input", opt.input, "take n from this CSV dataset");
  opt_cmd->add_option("--effect", opt.effect, "known effect size");
  opt_cmd->add_option("--evaluate-effect", opt.evaluate_effect,
                      "also report power of the chosen parameters at this effect");
  opt_cmd->add_flag("--certificates", opt.certificates,
                    "list the best alpha0 found for every candidate m");

  SimulateFlags sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo rejection rates");
  AddCommon(sim_cmd, sim.c);
  AddOptimizeFlags(sim_cmd, sim.o);
  sim_cmd->add_option("--engine", sim.engine, "tot, public, pb")->capture_default_str();
  sim_cmd->add_option("--generator", sim.generator,
                      "normal, anova, mvn, pvalue-mixture (default: from --test)");
  sim_cmd->add_option("--grid", sim.grid,
                      "keys n, epsilon, alpha, m, alpha0, effect, theta");
  sim_cmd->add_option("--n", sim.n, "sample size");
  sim_cmd->add_option("--m", sim.m, "number of subsets");
  sim_cmd->add_option("--alpha0", sim.alpha0, "sub-test significance threshold");
  sim_cmd->add_option("--effect", sim.effect, "effect magnitude")->capture_default_str();
  sim_cmd->add_option("--theta", sim.theta, "p-value mixture rejection probability");
  sim_cmd->add_option("--replicates", sim.replicates, "replicates")->capture_default_str();
  sim_cmd->add_option("--threads", sim.threads, "worker threads (0 = all)");
  sim_cmd->add_option("--pb-p", sim.pb_p, "PB truthful-report probability");
  sim_cmd->add_option("--uniformity", sim.uniformity,
                      "report a KS check instead: two-sided or super-uniform");

  GenerateFlags gen;
  auto* gen_cmd = app.add_subcommand("generate", "write a synthetic dataset as CSV");
  AddCommon(gen_cmd, gen.c);
  gen_cmd->add_option("--generator", gen.generator,
                      "normal, anova, mvn, pvalue-mixture (default: from --test)");
  gen_cmd->add_option("--n", gen.n, "rows");
  gen_cmd->add_option("--effect", gen.effect, "effect magnitude")->capture_default_str();
  gen_cmd->add_option("--theta", gen.theta, "p-value mixture rejection probability");
  gen_cmd->add_option("--mixture-alpha0", gen.mixture_alpha0, "p-value mixture alpha0");

  CLI11_PARSE(app, argc, argv);
  try {
    if (run_cmd->parsed()) CmdRun(run);
    if (power_cmd->parsed()) CmdPower(power);
    if (opt_cmd->parsed()) CmdOptimize(opt);
    if (sim_cmd->parsed()) CmdSimulate(sim);
    if (gen_cmd->parsed()) CmdGenerate(gen);
  } catch (const std::exception& e) {
    std::cerr << "tot_cli: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
