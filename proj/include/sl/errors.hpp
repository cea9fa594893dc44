#ifndef SL_ERRORS_HPP
#define SL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sl {

struct invalid_input : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct degenerate_covariance : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct degenerate_summary : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct numeric_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct invalid_state : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Aborted chain (e.g. a fully degenerate burnin history).
struct chain_abort : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed persisted file; `line` is 1-based.
struct parse_error : std::runtime_error {
  int line;
  parse_error(int l, const std::string& msg)
      : std::runtime_error("line " + std::to_string(l) + ": " + msg),
        line(l) {}
};

// Config validation failure; `field` is the offending config path.
struct config_error : std::runtime_error {
  std::string field;
  config_error(std::string f, const std::string& msg)
      : std::runtime_error(f + ": " + msg), field(std::move(f)) {}
};

}  // namespace sl

#endif
