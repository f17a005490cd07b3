#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace esgkg {

// Error taxonomy. The CLI maps kinds onto process exit codes:
//   1  usage / configuration / policy
//   2  data integrity, parse failures, bad state, generation/extraction failures, I/O
//   3  provider transport (network, auth, provider-side status)
enum class ErrorKind {
  Usage,
  Config,
  Policy,
  Integrity,
  Parse,
  State,
  Generation,
  Extraction,
  Io,
  Transport,
};

std::string_view error_kind_name(ErrorKind kind);
int exit_code_for(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }
  int exit_code() const { return exit_code_for(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace esgkg
