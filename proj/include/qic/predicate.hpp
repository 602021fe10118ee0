#pragma once

#include <memory>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qic/bool_expr.hpp"
#include "qic/dimacs.hpp"
#include "qic/state_vector.hpp"

namespace qic {

/// Largest register for which predicates materialize a phase mask.
inline constexpr unsigned kMaxMaskQubits = 26;

class Predicate;

/// Explicitly listed valid indices (sorted, unique).
struct IndexSet {
    std::vector<BasisIndex> indices;
};

/// Conjunction of predicates. Each part is evaluated on the low bits of the
/// index that its own register covers.
struct Conjunction {
    std::vector<std::shared_ptr<const Predicate>> parts;
};

/// Decision function over the basis indices of a register, plus an exclusion
/// set of indices that are invalid regardless of the source.
class Predicate {
  public:
    using Source = std::variant<BoolExpr, CnfFormula, IndexSet, Conjunction>;

    /// Binds a source to a register. Throws UnboundVariable when the source
    /// references a qubit outside the register, IndexOutOfRange for explicit
    /// indices outside it, and std::invalid_argument when the register is
    /// wider than kMaxMaskQubits.
    Predicate(Source source, Register reg);

    static Predicate from_expr(std::string_view text, Register reg);
    static Predicate from_indices(std::vector<BasisIndex> valid, Register reg);
    static Predicate all_of(std::vector<Predicate> parts, Register reg);

    const Register& reg() const { return reg_; }
    const Source& source() const { return source_; }
    const std::set<BasisIndex>& exclusions() const { return exclusions_; }

    /// Source truth at i and i not excluded. Throws IndexOutOfRange.
    bool evaluate(BasisIndex i) const;
    /// Source truth at i, ignoring exclusions. Throws IndexOutOfRange.
    bool satisfies_source(BasisIndex i) const;

    /// Valid set as a packed mask, built 64 indices at a time.
    PhaseMask compile_mask() const;

    /// Copy whose valid set additionally excludes `found`.
    Predicate with_exclusions(std::span<const BasisIndex> found) const;

    /// Short human-readable description of the source.
    std::string describe() const;

  private:
    PhaseMask compile_source_mask() const;

    Source source_;
    Register reg_;
    std::set<BasisIndex> exclusions_;
};

/// Free-function forms.
inline bool evaluate(const Predicate& pred, BasisIndex i) { return pred.evaluate(i); }
/// Throws RegisterMismatch unless `reg` is the predicate's register.
PhaseMask compile_mask(const Predicate& pred, const Register& reg);
inline Predicate with_exclusions(const Predicate& pred, std::span<const BasisIndex> found) {
    return pred.with_exclusions(found);
}

}  // namespace qic
