#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "shiftsum/precision.hpp"

namespace shiftsum {

/// Malformed configuration line; `line()` is 1-based.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& what) : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Flat key=value configuration. Keys: level, char_index, epsilon, c_max, q_max.
struct Config {
  int64_t level = 11;
  int64_t char_index = 2;
  double epsilon = 1e-13;
  int64_t c_max = 1100;
  int64_t q_max = 400000;

  /// Policy with epsilon clamped to the floor; appends a warning when it clamps.
  PrecisionPolicy policy(std::vector<std::string>* warnings = nullptr) const;
};

/// Parses `in` over `base`. Blank lines and lines starting with '#' are skipped.
Config parse_config(std::istream& in, Config base = {});

/// Reads the file at `path`. A missing file yields `base` unchanged and a warning.
Config load_config(const std::string& path, Config base = {}, std::vector<std::string>* warnings = nullptr);

}  // namespace shiftsum
