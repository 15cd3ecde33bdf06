// Copyright 2026 The oscpair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oscpair/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "oscpair/errors.hpp"

namespace oscpair {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v, int line) {
  double x = 0.0;
  const char* first = v.data();
  const char* last = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || ptr != last || !std::isfinite(x))
    throw ConfigError("key '" + key + "': expected a finite number, got '" + v + "'", line);
  return x;
}

int parse_int(const std::string& key, const std::string& v, int line) {
  int x = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'", line);
  return x;
}

bool parse_bool(const std::string& key, const std::string& v, int line) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("key '" + key + "': expected true/false, got '" + v + "'", line);
}

// Shortest representation that round-trips.
std::string fmt(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

const char* to_string(F14Reading r) { return r == F14Reading::paired ? "paired" : "printed"; }

const char* to_string(MixedDReading r) {
  return r == MixedDReading::mode_consistent ? "mode_consistent" : "printed";
}

SystemParams RunConfig::system() const {
  if (!(mass_g > 0.0)) throw DomainError("mass must be > 0");
  if (!(omega0_radps > 0.0)) throw DomainError("eigenfrequency must be > 0");
  SystemParams p;
  p.gamma = gamma_over_omega0;
  p.lambda = lambda_tilde;
  p.theta1 = reduced_temperature(T1_K, omega0_radps);
  p.theta2 = reduced_temperature(T2_K, omega0_radps);
  p.sigma01_sq = sigma01_sq_natural;
  p.sigma02_sq = sigma02_sq_natural;
  validate(p);
  return p;
}

RunConfig parse_config(std::istream& in) {
  RunConfig c;
  using Setter = std::function<void(const std::string&, const std::string&, int)>;
  auto num = [](double& field) -> Setter {
    return [&field](const std::string& k, const std::string& v, int l) {
      field = parse_double(k, v, l);
    };
  };
  const std::map<std::string, Setter> setters = {
      {"mass_g", num(c.mass_g)},
      {"omega0_radps", num(c.omega0_radps)},
      {"gamma_over_omega0", num(c.gamma_over_omega0)},
      {"lambda_tilde", num(c.lambda_tilde)},
      {"T1_K", num(c.T1_K)},
      {"T2_K", num(c.T2_K)},
      {"sigma01_sq_natural", num(c.sigma01_sq_natural)},
      {"sigma02_sq_natural", num(c.sigma02_sq_natural)},
      {"omega_cutoff", num(c.spec.omega_cutoff)},
      {"quad_rel_tol", num(c.spec.rel_tol)},
      {"quad_abs_floor", num(c.spec.abs_floor)},
      {"quad_max_depth",
       [&c](const std::string& k, const std::string& v, int l) {
         c.spec.max_depth = parse_int(k, v, l);
         if (c.spec.max_depth < 1) throw ConfigError("quad_max_depth must be >= 1", l);
       }},
      {"quad_max_panels",
       [&c](const std::string& k, const std::string& v, int l) {
         c.spec.max_panels = parse_int(k, v, l);
         if (c.spec.max_panels < 1) throw ConfigError("quad_max_panels must be >= 1", l);
       }},
      {"split_resonances",
       [&c](const std::string& k, const std::string& v, int l) {
         c.spec.split_resonances = parse_bool(k, v, l);
       }},
      {"cache_dir", [&c](const std::string&, const std::string& v, int) { c.cache_dir = v; }},
      {"f14_reading",
       [&c](const std::string&, const std::string& v, int l) {
         if (v == "paired")
           c.readings.f14 = F14Reading::paired;
         else if (v == "printed")
           c.readings.f14 = F14Reading::printed;
         else
           throw ConfigError("f14_reading must be 'paired' or 'printed'", l);
       }},
      {"mixed_d_reading",
       [&c](const std::string&, const std::string& v, int l) {
         if (v == "mode_consistent")
           c.readings.mixed_d = MixedDReading::mode_consistent;
         else if (v == "printed")
           c.readings.mixed_d = MixedDReading::printed;
         else
           throw ConfigError("mixed_d_reading must be 'mode_consistent' or 'printed'", l);
       }},
  };

  std::set<std::string> seen;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key before '='", line);
    if (value.empty()) throw ConfigError("key '" + key + "' has no value", line);
    auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("unknown key '" + key + "'", line);
    if (!seen.insert(key).second) throw ConfigError("duplicate key '" + key + "'", line);
    it->second(key, value, line);
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string(), 0);
  return parse_config(in);
}

std::string to_config_string(const RunConfig& c) {
  std::ostringstream os;
  os << "mass_g = " << fmt(c.mass_g) << "\n"
     << "omega0_radps = " << fmt(c.omega0_radps) << "\n"
     << "gamma_over_omega0 = " << fmt(c.gamma_over_omega0) << "\n"
     << "lambda_tilde = " << fmt(c.lambda_tilde) << "\n"
     << "T1_K = " << fmt(c.T1_K) << "\n"
     << "T2_K = " << fmt(c.T2_K) << "\n"
     << "sigma01_sq_natural = " << fmt(c.sigma01_sq_natural) << "\n"
     << "sigma02_sq_natural = " << fmt(c.sigma02_sq_natural) << "\n"
     << "omega_cutoff = " << fmt(c.spec.omega_cutoff) << "\n"
     << "quad_rel_tol = " << fmt(c.spec.rel_tol) << "\n"
     << "quad_abs_floor = " << fmt(c.spec.abs_floor) << "\n"
     << "quad_max_depth = " << c.spec.max_depth << "\n"
     << "quad_max_panels = " << c.spec.max_panels << "\n"
     << "split_resonances = " << (c.spec.split_resonances ? "true" : "false") << "\n"
     << "f14_reading = " << to_string(c.readings.f14) << "\n"
     << "mixed_d_reading = " << to_string(c.readings.mixed_d) << "\n";
  if (!c.cache_dir.empty()) os << "cache_dir = " << c.cache_dir << "\n";
  return os.str();
}

}  // namespace oscpair
