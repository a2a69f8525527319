#pragma once

#include <stdexcept>
#include <string>

namespace polyrips {

enum class ErrorKind {
  input,            // bad arguments or a violated precondition
  not_certifiable,  // the theory does not cover the request
  non_cyclic,       // a graph or scale outside the cyclic regime
  resource,         // simplex budget, spacing underflow
  numerical,        // root finding failed to bracket
  internal,         // an invariant that should hold did not
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace polyrips
