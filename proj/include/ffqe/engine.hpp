#ifndef FFQE_ENGINE_HPP
#define FFQE_ENGINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "ffqe/budget.hpp"
#include "ffqe/groebner.hpp"
#include "ffqe/oracle.hpp"
#include "ffqe/transform.hpp"

namespace ffqe {

struct EngineOptions {
    // Reduce output conjuncts modulo free-variable field polynomials and drop
    // the ones that vanish (c^3 - c = 0 becomes true).
    bool simplify = false;
    // Re-flatten the result of a negation-wrapped run into a conjunction of
    // equations so the output is CNF even for innermost-universal input.
    bool cnf = false;
    bool collect_trace = false;
    Budget budget;
    // Complete highest-first ranking of the formula's variables. Must respect
    // the block strata (inner blocks above outer blocks above free); it
    // refines the order inside each stratum.
    std::optional<std::vector<std::string>> order_override;
    // Block order (graded inside the eliminated and kept segments) as an
    // optional speedup; plain lexicographic by default.
    MonomialOrder::Kind order_kind = MonomialOrder::Kind::Lex;
    // Cap for witness search and oracle cross-checks.
    uint64_t enumeration_bound = kDefaultEnumerationBound;
};

struct RoundStats {
    Quantifier quantifier;
    size_t block_vars = 0;
    size_t fresh_negation = 0;
    size_t fresh_disjunction = 0;
    size_t matrix_size_in = 0; // syntax nodes entering the round
    // Elimination bases produced this round: one for an existential round,
    // one per conjunct for a universal round.
    std::vector<std::vector<Polynomial>> bases;
    double millis = 0.0;
};

struct QETrace {
    bool negation_wrapped = false;
    std::vector<RoundStats> rounds;
};

struct QEOutput {
    FormulaPtr formula;
    bool cnf_shape = false;
    std::optional<QETrace> trace;
};

// Blockwise quantifier elimination. The result mentions only free variables
// of the input and has the same realization. Innermost-universal prefixes are
// handled by eliminating on the negation and negating back (the result is
// then NNF but not necessarily CNF unless opts.cnf is set).
QEOutput qe(const FormulaPtr& f, const EngineOptions& opts = {});

// Truth value of a closed formula.
bool decide(const FormulaPtr& f, const EngineOptions& opts = {});

// A satisfying assignment for "exists x... psi" with quantifier-free psi,
// found by enumeration in a fixed order, or nothing if none exists. The
// returned assignment covers all variables of psi and is re-verified by
// evaluation.
std::optional<Assignment> witness(const FormulaPtr& f, const EngineOptions& opts = {});

// Single engine rounds, exposed for testing. The prenex matrix must be
// quantifier-free NNF; for the universal round, a conjunction of equations.
PrenexFormula eliminate_innermost_existential(const PrenexFormula& pf,
                                              const EngineOptions& opts = {});
PrenexFormula eliminate_innermost_universal(const PrenexFormula& pf,
                                            const EngineOptions& opts = {});

} // namespace ffqe

#endif
