#pragma once

#include <stdexcept>
#include <string>

namespace tc {

// Error categories; the C API and the CLI exit codes map onto these.
enum class errc {
  ok = 0,
  check_failed = 1,
  bad_input = 2,
  missing_assertion = 3,
  resource_limit = 4,
  internal = 5,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void throw_bad_input(const std::string& msg) {
  throw Error(errc::bad_input, msg);
}
[[noreturn]] inline void throw_resource(const std::string& msg) {
  throw Error(errc::resource_limit, msg);
}
[[noreturn]] inline void throw_missing_assertion(const std::string& msg) {
  throw Error(errc::missing_assertion, msg);
}
[[noreturn]] inline void throw_internal(const std::string& msg) {
  throw Error(errc::internal, msg);
}

}  // namespace tc
