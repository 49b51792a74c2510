#ifndef FFQE_TRANSFORM_HPP
#define FFQE_TRANSFORM_HPP

#include <string>
#include <utility>
#include <vector>

#include "ffqe/formula.hpp"

namespace ffqe {

// Fresh-name supply for the reserved system namespace: _u for removed
// negations, _v for removed disjunctions, _z for the inversion variables of
// universal rounds. Threaded explicitly so concurrent pipelines never share.
struct FreshNames {
    int next_u = 1;
    int next_v = 1;
    int next_z = 1;
    std::string u() { return "_u" + std::to_string(next_u++); }
    std::string v() { return "_v" + std::to_string(next_v++); }
    std::string z() { return "_z" + std::to_string(next_z++); }
};

// Replaces every negated atom f != 0 by f*z - 1 = 0 for a fresh z, in
// depth-first left-to-right order. Input must be quantifier-free NNF; the
// realization is preserved under existential projection of the new
// variables.
std::pair<std::vector<std::string>, FormulaPtr> eliminate_negations(
    const FormulaPtr& nnf, FreshNames& fresh);

// Conjunction of equations equivalent (after existentially projecting the
// fresh variables) to a negation-free matrix. Conjuncts stay as terms so the
// disjunction products remain unexpanded.
struct FlattenResult {
    std::vector<std::string> fresh_u;
    std::vector<std::string> fresh_v;
    std::vector<TermPtr> conjuncts;
};

// Atoms contribute their polynomial, conjunction concatenates, and each
// binary disjunction splits on a fresh v: v*J1 together with (1-v)*J2,
// distributed over the generators. N-ary disjunctions fold left to right.
// Input must be quantifier-free, NNF, without negated atoms.
FlattenResult flatten_to_ideal(const FormulaPtr& negfree, FreshNames& fresh);

// Negation elimination followed by flattening.
FlattenResult flatten_matrix(const FormulaPtr& nnf_matrix, FreshNames& fresh);

} // namespace ffqe

#endif
