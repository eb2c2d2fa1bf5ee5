#pragma once

// Append-only persistent memo of per-prime reduction data.
//
// One record per line: "label,p,a_p,type" with type in {O, S, B}. Labels are
// canonical coefficient lists and contain commas themselves, so lines are
// split from the right. Records are appended with a single write(2) on an
// O_APPEND descriptor; a line without its trailing newline is an interrupted
// write and is ignored like any other malformed line.

#include <cstdint>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "zpkit/curve.hpp"

namespace zpkit::cache {

struct CacheRecord {
  std::string label;
  std::uint64_t p = 0;
  std::int64_t ap = 0;
  curve::ReductionType type = curve::ReductionType::Bad;

  bool operator==(const CacheRecord&) const = default;
};

std::string format_record(const CacheRecord& r);  // without newline
std::optional<CacheRecord> parse_record(std::string_view line);

/// Value of ZPKIT_CACHE, or empty when unset.
std::string default_cache_path();

/// Thread-safe: many concurrent readers, one writer at a time.
class TraceCache {
 public:
  /// Loads existing records from `path` (missing file means empty cache).
  /// Malformed lines are skipped and reported through warnings().
  explicit TraceCache(std::string path);
  ~TraceCache();
  TraceCache(const TraceCache&) = delete;
  TraceCache& operator=(const TraceCache&) = delete;

  std::optional<CacheRecord> get(const std::string& label, std::uint64_t p) const;
  /// Appends unless an identical record is present. Throws Errc::Io.
  void put(const CacheRecord& r);

  const std::string& path() const { return path_; }
  std::size_t size() const;
  std::vector<std::string> warnings() const;

 private:
  std::string path_;
  int fd_ = -1;
  mutable std::shared_mutex mu_;
  std::unordered_map<std::string, std::unordered_map<std::uint64_t, CacheRecord>> records_;
  std::vector<std::string> warnings_;
};

}  // namespace zpkit::cache
