// Copyright 2026 The mertens Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mertens/cli/documents.hpp"
#include "mertens/curvezeta.hpp"

namespace mertens::cli {

inline constexpr const char *count_cache_version = "mertens-counts-1";

inline std::uint64_t fnv1a64(const std::string &s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

/// On-disk cache of N_n keyed by (canonical curve hash, n).  Entries record
/// the cache version and the canonical model; anything unreadable or
/// mismatched is recomputed and overwritten with a warning.  A well-formed
/// entry whose value violates the Weil bound is a hard error.
class CountCache {
public:
  CountCache(std::filesystem::path dir, std::ostream *warn) : dir_(std::move(dir)), warn_(warn) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec)
      throw ValidationError("count cache: cannot create " + dir_.string() + ": " + ec.message());
  }

  static std::string key(const CurveModel &c) {
    const std::string canon = canonical_curve_json(c).dump() + "|" + count_cache_version;
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canon)));
    return buf;
  }

  std::filesystem::path entry_path(const CurveModel &c, unsigned n) const {
    return dir_ / (key(c) + "-" + std::to_string(n) + ".json");
  }

  std::uint64_t hits() const { return hits_; }
  std::uint64_t misses() const { return misses_; }

  std::uint64_t get(const CurveModel &c, unsigned n, const CountOptions &opt) {
    const auto path = entry_path(c, n);
    std::mutex &m = lock_for(path.string());
    std::lock_guard<std::mutex> guard(m);
    const json canon = canonical_curve_json(c);
    if (std::filesystem::exists(path)) {
      std::string why;
      if (auto v = read_entry(path, canon, n, why)) {
        check_weil(c, n, *v, path);
        ++hits_;
        return *v;
      }
      warn("count cache: " + path.string() + ": " + why + "; recomputing");
    }
    ++misses_;
    const std::uint64_t v = count_points(c, n, opt);
    write_entry(path, canon, n, v);
    return v;
  }

private:
  std::mutex &lock_for(const std::string &k) {
    std::lock_guard<std::mutex> g(table_mu_);
    auto &slot = locks_[k];
    if (!slot)
      slot = std::make_unique<std::mutex>();
    return *slot;
  }

  void warn(const std::string &msg) {
    std::lock_guard<std::mutex> g(table_mu_);
    if (warn_)
      *warn_ << "warning: " << msg << '\n';
  }

  static std::optional<std::uint64_t> read_entry(const std::filesystem::path &path, const json &canon, unsigned n,
                                                 std::string &why) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    json j;
    try {
      j = json::parse(ss.str());
    } catch (const json::exception &) {
      why = "unparseable entry";
      return std::nullopt;
    }
    if (!j.is_object() || j.value("version", std::string()) != count_cache_version) {
      why = "version mismatch";
      return std::nullopt;
    }
    if (!j.contains("curve") || j["curve"] != canon || !j.contains("n") || j["n"] != n) {
      why = "key mismatch";
      return std::nullopt;
    }
    if (!j.contains("count") || !j["count"].is_number_unsigned()) {
      why = "missing count";
      return std::nullopt;
    }
    return j["count"].get<std::uint64_t>();
  }

  static void write_entry(const std::filesystem::path &path, const json &canon, unsigned n, std::uint64_t v) {
    json j;
    j["version"] = count_cache_version;
    j["curve"] = canon;
    j["n"] = n;
    j["count"] = v;
    const auto tmp = path.string() + ".tmp";
    {
      std::ofstream out(tmp);
      out << j.dump() << '\n';
    }
    std::filesystem::rename(tmp, path);
  }

  static void check_weil(const CurveModel &c, unsigned n, std::uint64_t v, const std::filesystem::path &path) {
    PointCounts one{ipow(c.r(), n).convert_to<std::uint64_t>(), {BigInt(v)}};
    if (!within_weil_bound(one, c.genus))
      throw ValidationError("count cache: " + path.string() + ": N_" + std::to_string(n) + " = " +
                            std::to_string(v) + " violates the Weil bound for genus " + std::to_string(c.genus));
  }

  std::filesystem::path dir_;
  std::ostream *warn_;
  std::mutex table_mu_;
  std::map<std::string, std::unique_ptr<std::mutex>> locks_;
  std::atomic<std::uint64_t> hits_{0}, misses_{0};
};

} // namespace mertens::cli
