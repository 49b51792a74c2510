#ifndef FFQE_S2VD_HPP
#define FFQE_S2VD_HPP

#include <string>
#include <vector>

#include "ffqe/formula.hpp"

namespace ffqe {

// The four-color cellular model over F_4: cell states are 0 (green, the good
// virus), 1 (red, the bad virus), w (white, uninfected), w+1 (yellow, both
// viruses met). A cell's next state is a polynomial in its six neighbors;
// the controller damps the update through the two surrounding rings.
struct S2VDConfig {
    const FieldSpec* field; // F_4 with modulus w^2+w+1
    FieldElement green() const { return FieldElement(*field, 0); }
    FieldElement red() const { return FieldElement(*field, 1); }
    FieldElement white() const;  // w
    FieldElement yellow() const; // w+1
};

S2VDConfig s2vd_config();

// Local dynamics in the six neighbor cells: e2^2 + e2*e1^3 + w^2*(e1^3 +
// e1^2 + e1) with e1 the sum and e2 the sum of pairwise products. Fully
// expanded and exponent-reduced.
Polynomial dynamics_fx(const std::vector<std::string>& neighbors);

// Controller damping product over one or two rings: prod_i (1 - y_i)^3,
// kept factored until a polynomial is needed.
TermPtr controller_gx(const std::vector<std::string>& cells);

// Structured term of the dynamics (sums of powers of the symmetric sums);
// expands to dynamics_fx.
TermPtr dynamics_fx_term(const std::vector<std::string>& neighbors);

// Controlled update F_x: dynamics in y1..y6 times the controller over the
// given cell list.
TermPtr controlled_update(const std::vector<std::string>& cells);

// y(y - w): satisfied by green and white only.
TermPtr green_or_white(const std::string& var);
// y(y - w)(y - (w+1)): satisfied by everything except red.
TermPtr non_red(const std::string& var);

// Boundary-invariance body: the two outer-ring slices pinned white, the
// safety cells green-or-white, x the controlled update of the 18 cells.
// Free variable: x.
FormulaPtr build_phi1();
// Non-red closure body: all 18 cells non-red, x their controlled update.
// Free variable: x.
FormulaPtr build_phi2();
// Counterexample query: six non-red neighbors drive x to red. Closed.
FormulaPtr build_phi3();

// The enclosing safety checks: forall x. (body -> safe).
FormulaPtr build_phi1_check();
FormulaPtr build_phi2_check();

// Six-cell variants used when the full two-ring instances exceed the budget;
// the same constraints restricted to y1..y6 with the one-ring controller.
FormulaPtr build_phi1_reduced();
FormulaPtr build_phi2_reduced();

// The three-block textbook example over F_3.
std::string walkthrough_text();

// Writes the .fol corpus files; returns the file names written.
std::vector<std::string> write_s2vd_corpus(const std::string& dir);
std::vector<std::string> write_walkthrough_corpus(const std::string& dir);

} // namespace ffqe

#endif
