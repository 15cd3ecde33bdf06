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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "oscpair/bath_kernels.hpp"

namespace oscpair {

/// FNV-1a over raw bytes; used for parameter fingerprints.
std::uint64_t fnv1a(const void* data, std::size_t size,
                    std::uint64_t seed = 14695981039346656037ull);

/// Fingerprint of everything the kernels depend on except t.
std::uint64_t kernel_param_hash(const SystemParams& params, const QuadratureSpec& spec,
                                F14Reading reading);

/// Thread-safe memo of BathKernels per (parameters, t), optionally persisted
/// as one binary file per parameter fingerprint:
///
///   "OSPKC001" | u64 hash | u64 count | count x 8 f64
///   (t, C1, C2, E1, err_C1, err_C2, err_E1, panels), all little-endian.
class KernelCache {
 public:
  /// An empty directory keeps the cache in memory only.
  explicit KernelCache(std::filesystem::path dir = {});

  BathKernels get_or_compute(double t, const SystemParams& params, const ModeStructure& modes,
                             const QuadratureSpec& spec, const FormulaReadings& readings);

  std::optional<BathKernels> find(double t, const SystemParams& params,
                                  const QuadratureSpec& spec,
                                  const FormulaReadings& readings);

  /// Writes every fingerprint touched since construction. No-op in memory mode.
  void flush();

  std::size_t size() const;
  std::size_t hits() const;
  std::size_t misses() const;

  std::filesystem::path file_for(std::uint64_t hash) const;

  static void write_file(const std::filesystem::path& path, std::uint64_t hash,
                         const std::vector<BathKernels>& records);
  /// Throws std::runtime_error on a malformed or mismatched file.
  static std::vector<BathKernels> read_file(const std::filesystem::path& path,
                                            std::uint64_t expected_hash);

 private:
  void load_locked(std::uint64_t hash);

  std::filesystem::path dir_;
  mutable std::mutex mu_;
  std::map<std::uint64_t, std::map<double, BathKernels>> table_;
  std::set<std::uint64_t> loaded_;
  std::size_t hits_ = 0, misses_ = 0;
};

}  // namespace oscpair
