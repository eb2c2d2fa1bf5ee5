#include "zpkit/cache.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <fstream>

#include "zpkit/error.hpp"

namespace zpkit::cache {

namespace {

template <class Int>
std::optional<Int> parse_int(std::string_view s) {
  if (s.empty()) return std::nullopt;
  bool neg = false;
  std::size_t k = 0;
  if constexpr (std::is_signed_v<Int>) {
    if (s[0] == '-') {
      neg = true;
      k = 1;
    }
  }
  if (k == s.size()) return std::nullopt;
  unsigned long long v = 0;
  for (; k < s.size(); ++k) {
    if (s[k] < '0' || s[k] > '9') return std::nullopt;
    if (v > (~0ULL - 9) / 10) return std::nullopt;
    v = v * 10 + static_cast<unsigned>(s[k] - '0');
  }
  if constexpr (std::is_signed_v<Int>) {
    if (v > static_cast<unsigned long long>(INT64_MAX)) return std::nullopt;
    return neg ? -static_cast<Int>(v) : static_cast<Int>(v);
  } else {
    return static_cast<Int>(v);
  }
}

}  // namespace

std::string format_record(const CacheRecord& r) {
  return r.label + ',' + std::to_string(r.p) + ',' + std::to_string(r.ap) + ',' + curve::reduction_code(r.type);
}

std::optional<CacheRecord> parse_record(std::string_view line) {
  std::string_view fields[3];
  for (int k = 2; k >= 0; --k) {
    const auto comma = line.rfind(',');
    if (comma == std::string_view::npos) return std::nullopt;
    fields[k] = line.substr(comma + 1);
    line = line.substr(0, comma);
  }
  if (line.empty()) return std::nullopt;
  CacheRecord r;
  r.label = std::string(line);
  auto p = parse_int<std::uint64_t>(fields[0]);
  auto ap = parse_int<std::int64_t>(fields[1]);
  if (!p || !ap) return std::nullopt;
  r.p = *p;
  r.ap = *ap;
  if (fields[2] == "O") {
    r.type = curve::ReductionType::GoodOrdinary;
  } else if (fields[2] == "S") {
    r.type = curve::ReductionType::GoodSupersingular;
  } else if (fields[2] == "B") {
    r.type = curve::ReductionType::Bad;
  } else {
    return std::nullopt;
  }
  // Ordinary records carry a nonzero trace, the other two carry zero.
  if ((r.type == curve::ReductionType::GoodOrdinary) != (r.ap != 0)) return std::nullopt;
  return r;
}

std::string default_cache_path() {
  const char* env = std::getenv("ZPKIT_CACHE");
  return env ? std::string(env) : std::string();
}

TraceCache::TraceCache(std::string path) : path_(std::move(path)) {
  if (path_.empty()) fail(Errc::InvalidArgument, "cache path is empty");
  {
    std::ifstream in(path_, std::ios::binary);
    if (in) {
      std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      std::size_t start = 0, lineno = 0;
      while (start < content.size()) {
        ++lineno;
        const auto nl = content.find('\n', start);
        if (nl == std::string::npos) {
          warnings_.push_back(path_ + ":" + std::to_string(lineno) + ": incomplete record skipped");
          break;
        }
        std::string_view line(content.data() + start, nl - start);
        start = nl + 1;
        auto r = parse_record(line);
        if (!r) {
          warnings_.push_back(path_ + ":" + std::to_string(lineno) + ": malformed record skipped");
          continue;
        }
        auto& slot = records_[r->label];
        auto [it, fresh] = slot.emplace(r->p, *r);
        if (!fresh && !(it->second == *r)) {
          warnings_.push_back(path_ + ":" + std::to_string(lineno) + ": conflicting record for p=" +
                              std::to_string(r->p) + " ignored");
        }
      }
    }
  }
  fd_ = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd_ < 0) fail(Errc::Io, "cannot open cache " + path_ + ": " + std::strerror(errno));
}

TraceCache::~TraceCache() {
  if (fd_ >= 0) ::close(fd_);
}

std::optional<CacheRecord> TraceCache::get(const std::string& label, std::uint64_t p) const {
  std::shared_lock lock(mu_);
  auto it = records_.find(label);
  if (it == records_.end()) return std::nullopt;
  auto jt = it->second.find(p);
  if (jt == it->second.end()) return std::nullopt;
  return jt->second;
}

void TraceCache::put(const CacheRecord& r) {
  if (r.label.empty() || r.label.find('\n') != std::string::npos) {
    fail(Errc::InvalidArgument, "cache labels must be non-empty single-line text");
  }
  std::unique_lock lock(mu_);
  auto& slot = records_[r.label];
  if (auto it = slot.find(r.p); it != slot.end() && it->second == r) return;
  const std::string line = format_record(r) + '\n';
  const ssize_t n = ::write(fd_, line.data(), line.size());
  if (n != static_cast<ssize_t>(line.size())) fail(Errc::Io, "short write to cache " + path_);
  slot[r.p] = r;
}

std::size_t TraceCache::size() const {
  std::shared_lock lock(mu_);
  std::size_t n = 0;
  for (const auto& [label, m] : records_) n += m.size();
  return n;
}

std::vector<std::string> TraceCache::warnings() const {
  std::shared_lock lock(mu_);
  return warnings_;
}

}  // namespace zpkit::cache
