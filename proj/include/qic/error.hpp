#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qic {

/// Base class for every error raised by the simulator.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// The state carries (almost) no squared norm, typically because interference
/// cancelled every component.
class NormCollapse : public Error {
  public:
    NormCollapse(double norm_squared, double tolerance);
    double norm_squared() const { return norm_squared_; }
    double tolerance() const { return tolerance_; }

  private:
    double norm_squared_;
    double tolerance_;
};

class IndexOutOfRange : public Error {
  public:
    using Error::Error;
};

class RegisterMismatch : public Error {
  public:
    using Error::Error;
};

/// Malformed textual input. `offset()` is the byte offset into the parsed text.
class ParseError : public Error {
  public:
    ParseError(std::size_t offset, const std::string& message);
    std::size_t offset() const { return offset_; }
    /// Message without the "at offset N" prefix.
    const std::string& detail() const { return detail_; }

  private:
    std::size_t offset_;
    std::string detail_;
};

/// A predicate references a qubit that the bound register does not have.
class UnboundVariable : public Error {
  public:
    UnboundVariable(unsigned qubit, unsigned register_size);
    unsigned qubit() const { return qubit_; }

  private:
    unsigned qubit_;
};

class SchemeInvalid : public Error {
  public:
    using Error::Error;
};

}  // namespace qic
