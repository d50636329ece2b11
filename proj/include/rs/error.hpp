#pragma once

#include <stdexcept>
#include <string>

namespace rs {

enum class ErrorKind {
  parse,
  empty_stream,
  insufficient_data,
  invalid_config,
  empty_density,
  grid_mismatch,
  degenerate_bin,
  domain,
  insufficient_overlap,
  io,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so the
// CLI can map it to a diagnostic without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse: return "parse error";
    case ErrorKind::empty_stream: return "empty stream";
    case ErrorKind::insufficient_data: return "insufficient data";
    case ErrorKind::invalid_config: return "invalid config";
    case ErrorKind::empty_density: return "empty density";
    case ErrorKind::grid_mismatch: return "grid mismatch";
    case ErrorKind::degenerate_bin: return "degenerate bin";
    case ErrorKind::domain: return "domain error";
    case ErrorKind::insufficient_overlap: return "insufficient overlap";
    case ErrorKind::io: return "i/o error";
  }
  return "error";
}

}  // namespace rs
