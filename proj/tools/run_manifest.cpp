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

#include "run_manifest.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "oscpair/kernel_cache.hpp"
#include "oscpair/version.hpp"

namespace oscpair::cli {

std::string RunManifest::hash() const {
  // The cache location does not change the data, so it is left out.
  RunConfig keyed = config;
  keyed.cache_dir.clear();
  std::ostringstream key;
  key << kVersion << '\n' << command << '\n' << to_config_string(keyed);
  for (const auto& [k, v] : args) key << k << '=' << v << '\n';
  const std::string s = key.str();
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << fnv1a(s.data(), s.size());
  return os.str();
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["manifest_hash"] = hash();
  j["version"] = kVersion;
  j["command"] = command;
  nlohmann::ordered_json cfg;
  std::istringstream lines(to_config_string(config));
  for (std::string line; std::getline(lines, line);) {
    const auto eq = line.find(" = ");
    if (eq != std::string::npos) cfg[line.substr(0, eq)] = line.substr(eq + 3);
  }
  j["config"] = cfg;
  j["quadrature"] = {{"omega_cutoff", config.spec.omega_cutoff},
                     {"rel_tol", config.spec.rel_tol},
                     {"abs_floor", config.spec.abs_floor},
                     {"max_depth", config.spec.max_depth},
                     {"max_panels", config.spec.max_panels},
                     {"split_resonances", config.spec.split_resonances}};
  j["formula_readings"] = {{"f14", to_string(config.readings.f14)},
                           {"mixed_d", to_string(config.readings.mixed_d)}};
  j["args"] = args;
  j["warnings"] = warnings;
  j["wall_time_s"] = wall_time_s;
  return j.dump();
}

std::string RunManifest::csv_header() const {
  std::ostringstream os;
  os << "# oscpair " << kVersion << " " << command << "\n";
  os << "# manifest: " << hash() << "\n";
  std::istringstream lines(to_config_string(config));
  for (std::string line; std::getline(lines, line);) os << "# config: " << line << "\n";
  for (const auto& [k, v] : args) os << "# arg: " << k << " = " << v << "\n";
  for (const auto& w : warnings) os << "# warning: " << w << "\n";
  return os.str();
}

std::filesystem::path RunManifest::write(const std::filesystem::path& out_dir) const {
  std::filesystem::create_directories(out_dir);
  const std::string body = to_json();
  const auto path = out_dir / ("manifest_" + hash() + ".json");
  {
    std::ofstream os(path, std::ios::trunc);
    os << nlohmann::json::parse(body).dump(2) << "\n";
  }
  std::ofstream log(out_dir / "manifests.jsonl", std::ios::app);
  log << body << "\n";
  return path;
}

}  // namespace oscpair::cli
