#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cryptochaos {

enum class Errc {
  invalid_input,
  entropy_unavailable,
  contributory_behavior,
  authentication_failure,
  bad_magic,
  unsupported_version,
  bad_length,
  io_error,
  usage,
  internal,
};

constexpr std::string_view errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::invalid_input: return "invalid input";
    case Errc::entropy_unavailable: return "entropy unavailable";
    case Errc::contributory_behavior: return "contributory behavior";
    case Errc::authentication_failure: return "authentication failure";
    case Errc::bad_magic: return "bad magic";
    case Errc::unsupported_version: return "unsupported version";
    case Errc::bad_length: return "bad length";
    case Errc::io_error: return "i/o error";
    case Errc::usage: return "usage error";
    case Errc::internal: return "internal error";
  }
  return "unknown";
}

/// Envelope parse faults share one category so callers can treat them together.
constexpr bool is_parse_error(Errc c) noexcept {
  return c == Errc::bad_magic || c == Errc::unsupported_version || c == Errc::bad_length;
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(Errc::invalid_input, what);
}

}  // namespace cryptochaos
