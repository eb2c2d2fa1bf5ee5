#pragma once

#include <stdexcept>
#include <string>

namespace zpkit {

enum class Errc {
  InvalidArgument = 1,
  MalformedCurve,
  AmbiguousOrder,
  InsufficientPrecision,
  UnsupportedLevel,
  OverlappingIndexSets,
  IndexInI,
  RootIsolationFailure,
  NotIrreducible,
  Overflow,
  Io,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace zpkit
