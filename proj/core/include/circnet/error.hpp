#ifndef CIRCNET_ERROR_HPP
#define CIRCNET_ERROR_HPP

#include <stdexcept>
#include <string>

namespace circnet {

// Failure categories; the CLI maps these onto exit codes.
enum class ErrorKind {
  argument,    // bad value passed by caller
  length,      // vector length violates a precondition
  shape,       // matrix shape mismatch
  data,        // non-finite or otherwise invalid numeric data
  state,       // operation invalid in the current object state
  mode,        // operation rejected by layer mode (e.g. frozen layer update)
  format,      // malformed file (IDX, model, ...)
  config,      // run configuration problem
  checksum,    // model file checksum mismatch
  numeric,     // internal numerical consistency failure
  divergence,  // training loss blew up
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace circnet

#endif  // CIRCNET_ERROR_HPP
