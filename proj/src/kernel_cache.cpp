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

#include "oscpair/kernel_cache.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace oscpair {

namespace {

constexpr char kMagic[8] = {'O', 'S', 'P', 'K', 'C', '0', '0', '1'};
constexpr int kFieldsPerRecord = 8;

void put_u64(std::ostream& os, std::uint64_t v) {
  std::array<char, 8> b{};
  for (int i = 0; i < 8; ++i) b[static_cast<std::size_t>(i)] = static_cast<char>((v >> (8 * i)) & 0xffu);
  os.write(b.data(), 8);
}

std::uint64_t get_u64(std::istream& is) {
  std::array<unsigned char, 8> b{};
  is.read(reinterpret_cast<char*>(b.data()), 8);
  if (!is) throw std::runtime_error("kernel cache file truncated");
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[static_cast<std::size_t>(i)];
  return v;
}

void put_f64(std::ostream& os, double x) { put_u64(os, std::bit_cast<std::uint64_t>(x)); }
double get_f64(std::istream& is) { return std::bit_cast<double>(get_u64(is)); }

struct Hasher {
  std::uint64_t h = 14695981039346656037ull;
  void add(double x) {
    const auto u = std::bit_cast<std::uint64_t>(x);
    h = fnv1a(&u, sizeof u, h);
  }
  void add(std::int64_t x) { h = fnv1a(&x, sizeof x, h); }
};

}  // namespace

std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t seed) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t kernel_param_hash(const SystemParams& p, const QuadratureSpec& spec,
                                F14Reading reading) {
  Hasher h;
  for (double x : {p.mass, p.omega0, p.gamma, p.lambda, p.theta1, p.theta2, spec.omega_cutoff,
                   spec.rel_tol, spec.abs_floor})
    h.add(x);
  h.add(static_cast<std::int64_t>(spec.max_depth));
  h.add(static_cast<std::int64_t>(spec.max_panels));
  h.add(static_cast<std::int64_t>(spec.split_resonances));
  h.add(static_cast<std::int64_t>(reading));
  return h.h;
}

KernelCache::KernelCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  if (!dir_.empty()) std::filesystem::create_directories(dir_);
}

std::filesystem::path KernelCache::file_for(std::uint64_t hash) const {
  std::ostringstream os;
  os << "kernels_" << std::hex << std::setw(16) << std::setfill('0') << hash << ".bin";
  return dir_ / os.str();
}

void KernelCache::load_locked(std::uint64_t hash) {
  if (!loaded_.insert(hash).second || dir_.empty()) return;
  const auto path = file_for(hash);
  if (!std::filesystem::exists(path)) return;
  auto& slot = table_[hash];
  for (const BathKernels& bk : read_file(path, hash)) slot.emplace(bk.t, bk);
}

std::optional<BathKernels> KernelCache::find(double t, const SystemParams& params,
                                             const QuadratureSpec& spec,
                                             const FormulaReadings& readings) {
  const auto hash = kernel_param_hash(params, spec, readings.f14);
  std::lock_guard<std::mutex> lock(mu_);
  load_locked(hash);
  auto it = table_.find(hash);
  if (it == table_.end()) return std::nullopt;
  auto jt = it->second.find(t);
  if (jt == it->second.end()) return std::nullopt;
  return jt->second;
}

BathKernels KernelCache::get_or_compute(double t, const SystemParams& params,
                                        const ModeStructure& modes, const QuadratureSpec& spec,
                                        const FormulaReadings& readings) {
  const auto hash = kernel_param_hash(params, spec, readings.f14);
  {
    std::lock_guard<std::mutex> lock(mu_);
    load_locked(hash);
    auto it = table_.find(hash);
    if (it != table_.end()) {
      auto jt = it->second.find(t);
      if (jt != it->second.end()) {
        ++hits_;
        return jt->second;
      }
    }
    ++misses_;
  }
  // Computed outside the lock; a concurrent duplicate yields the same value.
  const BathKernels bk = bath_integrals(t, params, modes, spec, readings);
  std::lock_guard<std::mutex> lock(mu_);
  table_[hash].emplace(t, bk);
  return bk;
}

void KernelCache::flush() {
  if (dir_.empty()) return;
  std::lock_guard<std::mutex> lock(mu_);
  for (const auto& [hash, records] : table_) {
    std::vector<BathKernels> out;
    out.reserve(records.size());
    for (const auto& kv : records) out.push_back(kv.second);
    write_file(file_for(hash), hash, out);
  }
}

std::size_t KernelCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  std::size_t n = 0;
  for (const auto& kv : table_) n += kv.second.size();
  return n;
}

std::size_t KernelCache::hits() const {
  std::lock_guard<std::mutex> lock(mu_);
  return hits_;
}

std::size_t KernelCache::misses() const {
  std::lock_guard<std::mutex> lock(mu_);
  return misses_;
}

void KernelCache::write_file(const std::filesystem::path& path, std::uint64_t hash,
                             const std::vector<BathKernels>& records) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write kernel cache file " + tmp);
    os.write(kMagic, sizeof kMagic);
    put_u64(os, hash);
    put_u64(os, records.size());
    for (const BathKernels& r : records) {
      for (double x : {r.t, r.C1, r.C2, r.E1, r.err_C1, r.err_C2, r.err_E1,
                       static_cast<double>(r.panels)})
        put_f64(os, x);
    }
    if (!os) throw std::runtime_error("failed writing kernel cache file " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::vector<BathKernels> KernelCache::read_file(const std::filesystem::path& path,
                                                std::uint64_t expected_hash) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open kernel cache file " + path.string());
  char magic[8];
  is.read(magic, sizeof magic);
  if (!is || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw std::runtime_error("bad kernel cache magic in " + path.string());
  if (get_u64(is) != expected_hash)
    throw std::runtime_error("kernel cache parameter hash mismatch in " + path.string());
  const std::uint64_t count = get_u64(is);
  std::vector<BathKernels> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::uint64_t i = 0; i < count; ++i) {
    std::array<double, kFieldsPerRecord> f{};
    for (double& x : f) x = get_f64(is);
    BathKernels bk;
    bk.t = f[0];
    bk.C1 = f[1];
    bk.C2 = f[2];
    bk.E1 = f[3];
    bk.err_C1 = f[4];
    bk.err_C2 = f[5];
    bk.err_E1 = f[6];
    bk.panels = static_cast<int>(f[7]);
    out.push_back(bk);
  }
  return out;
}

}  // namespace oscpair
