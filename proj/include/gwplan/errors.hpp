#pragma once

#include <stdexcept>
#include <string>

namespace gwplan {

// Malformed text input (CSV, JSON, config). `line` is 1-based within the
// offending stream; 0 means the position could not be attributed to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// Filesystem-level failure: file missing, unreadable, or not writable.
class IoError : public std::runtime_error {
 public:
  IoError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace gwplan
