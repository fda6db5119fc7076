#pragma once

#include <stdexcept>
#include <string>

namespace unimix {

/// Base class for all library errors.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class empty_sample_error : public error {
 public:
  empty_sample_error() : error("EmptySample: operation requires a nonempty sample") {}
};

class invalid_scenario_error : public error {
 public:
  using error::error;
};

class degenerate_size_error : public error {
 public:
  using error::error;
};

class too_few_points_error : public error {
 public:
  using error::error;
};

class degenerate_split_error : public error {
 public:
  using error::error;
};

class invalid_level_error : public error {
 public:
  using error::error;
};

class invalid_fraction_error : public error {
 public:
  using error::error;
};

class empty_interval_error : public error {
 public:
  using error::error;
};

class key_mismatch_error : public error {
 public:
  using error::error;
};

/// Input files that fail to parse carry the offending line number.
class parse_error : public error {
 public:
  parse_error(const std::string& what, long line) : error(what), line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

}  // namespace unimix
