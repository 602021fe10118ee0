#pragma once

#include <string_view>
#include <vector>

#include "qic/state_vector.hpp"

namespace qic {

/// CNF formula. Literal +v / -v refers to variable v (1-based), which maps to
/// qubit v-1.
struct CnfFormula {
    unsigned variable_count = 0;
    std::vector<std::vector<int>> clauses;

    bool evaluate(BasisIndex i) const;

    bool operator==(const CnfFormula&) const = default;
};

/// Reads the DIMACS CNF subset: 'c' comment lines, exactly one
/// 'p cnf <vars> <clauses>' header before any clause, then 0-terminated
/// clauses of signed literals separated by arbitrary whitespace. The number
/// of clauses must match the header. Throws ParseError.
CnfFormula parse_dimacs(std::string_view text);

}  // namespace qic
