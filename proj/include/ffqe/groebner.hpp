#ifndef FFQE_GROEBNER_HPP
#define FFQE_GROEBNER_HPP

#include <string>
#include <vector>

#include "ffqe/budget.hpp"
#include "ffqe/polynomial.hpp"

namespace ffqe {

// A finitely generated ideal of the ring. Zero generators are dropped on
// construction; duplicates are tolerated.
struct Ideal {
    RingPtr ring;
    std::vector<Polynomial> generators;

    Ideal(RingPtr r, std::vector<Polynomial> gens);
};

// Reduced basis: every element monic, no monomial of one element divisible
// by the leading monomial of another, sorted descending by leading monomial.
// The empty list represents the zero ideal.
struct GroebnerBasis {
    RingPtr ring;
    std::vector<Polynomial> polys;

    bool is_zero_ideal() const { return polys.empty(); }
    bool is_unit_ideal() const {
        return polys.size() == 1 && polys[0].is_constant() && !polys[0].is_zero();
    }
};

// Appends x^q - x for each listed variable, skipping polynomials already
// present among the generators.
Ideal add_field_polynomials(const Ideal& J, const std::vector<std::string>& vars);

// Buchberger completion with the product and chain criteria, normal pair
// selection (smallest lcm first), followed by full inter-reduction. The
// result is the unique reduced basis of <J> under the ring order.
GroebnerBasis buchberger(const Ideal& J, const Budget* budget = nullptr);

// Basis elements involving only variables of rank >= keep_from. Requires a
// valid elimination cut of the ring order; for a lexicographic basis the
// returned set generates (and is a reduced basis of) the elimination ideal.
std::vector<Polynomial> eliminate(const GroebnerBasis& G, size_t keep_from);
// Convenience overload: keep exactly the named suffix of the variable table.
std::vector<Polynomial> eliminate(const GroebnerBasis& G,
                                  const std::vector<std::string>& keep_vars);

// f lies in the ideal iff its normal form against the basis vanishes.
bool ideal_membership(const Polynomial& f, const GroebnerBasis& G);

} // namespace ffqe

#endif
