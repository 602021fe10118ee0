#include "qic/error.hpp"

#include <sstream>

namespace qic {

namespace {

std::string describe_collapse(double norm_squared, double tolerance) {
    std::ostringstream out;
    out.precision(17);
    out << "norm collapse: squared norm " << norm_squared << " is below tolerance " << tolerance;
    return out.str();
}

}  // namespace

NormCollapse::NormCollapse(double norm_squared, double tolerance)
    : Error(describe_collapse(norm_squared, tolerance)), norm_squared_(norm_squared), tolerance_(tolerance) {}

ParseError::ParseError(std::size_t offset, const std::string& message)
    : Error("parse error at offset " + std::to_string(offset) + ": " + message), offset_(offset), detail_(message) {}

UnboundVariable::UnboundVariable(unsigned qubit, unsigned register_size)
    : Error(
          "unbound variable b" + std::to_string(qubit) + ": register has only " + std::to_string(register_size) +
          " qubits"),
      qubit_(qubit) {}

}  // namespace qic
