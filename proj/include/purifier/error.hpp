#pragma once

#include <stdexcept>
#include <string>

namespace purifier {

// Error categories map 1:1 onto process exit codes (see purifier.h).
enum class ErrorKind {
  Runtime = 1,  // simulation / lifecycle errors
  Config = 2,   // invalid scenario, flag, or schema input
  Sync = 3,     // desync, peer loss, protocol violation
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace purifier
