#pragma once

#include <stdexcept>
#include <string>

namespace pointproc {

// Error taxonomy, mirrored by the CLI exit codes:
//   parse_error    -> 1 (syntax or type/universe error in a pipeline)
//   usage_error    -> 2 (invalid request: mismatched universes, bad arguments)
//   range_error    -> 2 (evaluation over an infinite-measure region)
//   resource_error -> 3 (support-size guard tripped)

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class usage_error : public error {
 public:
  using error::error;
};

class range_error : public error {
 public:
  using error::error;
};

class resource_error : public error {
 public:
  using error::error;
};

class parse_error : public error {
 public:
  parse_error(std::string msg, int line, int col)
      : error("parse error at " + std::to_string(line) + ":" +
              std::to_string(col) + ": " + std::move(msg)),
        line_(line),
        col_(col) {}

  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

}  // namespace pointproc
