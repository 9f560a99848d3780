#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace omloq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed lattice or morphism document. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// The declared order is not a partial order, or the poset is not a lattice.
class LatticeError : public Error {
 public:
  using Error::Error;
};

// An enumeration or closure outgrew its configured cap.
class SizeExceeded : public Error {
 public:
  SizeExceeded(const std::string& what, std::uint64_t count)
      : Error(what), count_(count) {}
  std::uint64_t count() const noexcept { return count_; }

 private:
  std::uint64_t count_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace omloq
