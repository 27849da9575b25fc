#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lbsearch {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input violated a documented invariant (unsorted table, NaN target,
/// degenerate hash range, bad configuration).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public IoError {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : IoError(path + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A search result disagreed with the lower-bound oracle.
class VerificationError : public Error {
 public:
  VerificationError(const std::string& what, std::size_t target_index)
      : Error(what), target_index_(target_index) {}

  std::size_t target_index() const noexcept { return target_index_; }

 private:
  std::size_t target_index_;
};

}  // namespace lbsearch
