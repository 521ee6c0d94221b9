#pragma once

#include <stdexcept>
#include <string>

namespace hecke {

// All recoverable failures (division by zero, conductor overflow, group
// mismatch, unsupported configurations, ...) surface as hecke::error.
class error : public std::runtime_error {
public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

[[noreturn]] inline void fail(const std::string& what) { throw error(what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(what);
}

} // namespace hecke
