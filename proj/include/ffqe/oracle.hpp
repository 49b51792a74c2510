#ifndef FFQE_ORACLE_HPP
#define FFQE_ORACLE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ffqe/formula.hpp"

namespace ffqe {

using Assignment = std::map<std::string, FieldElement>;

inline constexpr uint64_t kDefaultEnumerationBound = 1ull << 24;

// A set of assignments over an ordered variable list, stored as sorted
// mixed-radix codes (vars[0] is the least significant digit). The brute-force
// counterpart of everything the basis engine computes symbolically.
struct Realization {
    const FieldSpec* field;
    std::vector<std::string> vars;
    std::vector<uint64_t> codes; // sorted, unique

    uint64_t space() const;
    size_t count() const { return codes.size(); }
    bool contains(const Assignment& a) const;
    std::vector<Assignment> points() const;
};

// Semantics by total enumeration: atoms by evaluation, negation by
// complement, conjunction by intersection, disjunction by union, exists by
// projection over the bound variable's values, forall as the dual. Requires
// q^(number of distinct variables) within the bound.
Realization realization(const FormulaPtr& f, const FieldSpec& field,
                        uint64_t bound = kDefaultEnumerationBound);

// Same, but over an explicitly given ambient variable list (a superset of the
// free variables); missing variables range freely.
Realization realization_over(const FormulaPtr& f, std::vector<std::string> universe,
                             const FieldSpec& field,
                             uint64_t bound = kDefaultEnumerationBound);

// Coordinate-dropping image, deduplicated.
Realization project(const Realization& r, const std::vector<std::string>& drop_vars);

// Realizations coincide over the union of both free-variable lists.
bool equivalent(const FormulaPtr& a, const FormulaPtr& b, const FieldSpec& field,
                uint64_t bound = kDefaultEnumerationBound);

bool same_points(const Realization& a, const Realization& b);

// First satisfying total assignment of a quantifier-free formula in
// enumeration order (vars[0] cycling fastest), or nothing.
std::optional<Assignment> find_satisfying(const FormulaPtr& qfree,
                                          const std::vector<std::string>& vars,
                                          const FieldSpec& field,
                                          uint64_t bound = kDefaultEnumerationBound);

// The enumerate-and-list quantifier-free equivalent: a disjunction over the
// realization's points of coordinate equations. Exact but always exponential;
// kept as the engine cross-check.
FormulaPtr naive_qe_formula(const Realization& r);

} // namespace ffqe

#endif
