#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trendwalk {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates SampleSeries invariants (length, ordering, finiteness).
class InvalidSeries : public Error {
 public:
  using Error::Error;
};

// The exact data-walk route was asked for on a grid that is not equidistant.
// The area ratio is then only an approximation; see compare_irregular.
class NotEquidistant : public Error {
 public:
  NotEquidistant()
      : Error("abscissas are not equidistant: the data-walk slope is an approximation only, "
              "use compare_irregular (CLI: compare)") {}
};

class Overflow : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

// A precondition that the type invariants should already guarantee.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Bad CLI spec string such as "gaussian:0,x"; position is a 0-based offset.
class SpecError : public Error {
 public:
  SpecError(std::string spec, std::size_t position, const std::string& what)
      : Error("invalid spec '" + spec + "' at position " + std::to_string(position) + ": " + what),
        spec_(std::move(spec)),
        position_(position) {}
  const std::string& spec() const { return spec_; }
  std::size_t position() const { return position_; }

 private:
  std::string spec_;
  std::size_t position_;
};

}  // namespace trendwalk
