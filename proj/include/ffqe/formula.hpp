#ifndef FFQE_FORMULA_HPP
#define FFQE_FORMULA_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ffqe/term.hpp"

namespace ffqe {

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

enum class Quantifier { Exists, Forall };

// First-order formula over <0,1,+,*,=>. Atoms hold the moved-to-one-side
// left-hand side of "p = 0" (resp. "p != 0" for negated atoms), either as an
// unexpanded term or as a canonical polynomial; engine output uses the
// polynomial form, parsed input the term form.
class Formula {
public:
    enum class Kind { True, False, Atom, NegAtom, And, Or, Not, Exists, Forall };

    static FormulaPtr tru(const FieldSpec& f);
    static FormulaPtr fls(const FieldSpec& f);
    static FormulaPtr atom(const FieldSpec& f, TermPtr t);
    static FormulaPtr neg_atom(const FieldSpec& f, TermPtr t);
    static FormulaPtr atom(Polynomial p);
    static FormulaPtr neg_atom(Polynomial p);
    static FormulaPtr conj(const FieldSpec& f, std::vector<FormulaPtr> kids);
    static FormulaPtr disj(const FieldSpec& f, std::vector<FormulaPtr> kids);
    static FormulaPtr negate(FormulaPtr sub);
    static FormulaPtr exists(std::vector<std::string> vars, FormulaPtr sub);
    static FormulaPtr forall(std::vector<std::string> vars, FormulaPtr sub);
    static FormulaPtr quantify(Quantifier q, std::vector<std::string> vars, FormulaPtr sub);

    // Same constructors with boolean constant folding: true/false children
    // collapse, empty conjunction is true, empty disjunction is false.
    static FormulaPtr conj_fold(const FieldSpec& f, std::vector<FormulaPtr> kids);
    static FormulaPtr disj_fold(const FieldSpec& f, std::vector<FormulaPtr> kids);

    Kind kind() const { return kind_; }
    const FieldSpec& field() const { return *field_; }
    // Atom payload; term() synthesizes a term view for polynomial atoms.
    const TermPtr& atom_term() const { return term_; }
    const std::optional<Polynomial>& atom_poly() const { return poly_; }
    const std::vector<FormulaPtr>& kids() const { return kids_; }
    const std::vector<std::string>& bound() const { return bound_; }

    bool is_atom() const { return kind_ == Kind::Atom || kind_ == Kind::NegAtom; }

private:
    Formula() = default;
    Kind kind_;
    const FieldSpec* field_;
    TermPtr term_;
    std::optional<Polynomial> poly_;
    std::vector<FormulaPtr> kids_;
    std::vector<std::string> bound_;
};

// Free variables in first-occurrence order.
std::vector<std::string> free_variables(const FormulaPtr& f);
// Free and bound variables in first-occurrence order (binders count as
// occurrences).
std::vector<std::string> all_variables(const FormulaPtr& f);

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b);

std::string formula_str(const FormulaPtr& f);

// Negation normal form: negations pushed to atoms, quantifiers dualized,
// boolean constants folded through Not.
FormulaPtr to_nnf(const FormulaPtr& f);

// Quantifier prefix in maximal alternating blocks over an NNF matrix.
struct PrenexFormula {
    const FieldSpec* field;
    std::vector<std::pair<Quantifier, std::vector<std::string>>> blocks;
    FormulaPtr matrix;
};

// Lifts quantifiers outward left-to-right with capture-avoiding renaming
// (fresh names drawn from the reserved "_q" namespace), merges adjacent
// same-kind blocks and normalizes the matrix to NNF.
PrenexFormula to_prenex(const FormulaPtr& f);

FormulaPtr from_prenex(const PrenexFormula& pf);

// Truth of a quantifier-free formula at a total assignment.
bool eval_qfree(const FormulaPtr& f, const std::map<std::string, FieldElement>& point);

// Rejects reserved identifiers (leading '_') and variables bound twice on a
// path; used on parsed input.
void validate_user_formula(const FormulaPtr& f);

// Number of syntax nodes; the size measure used by traces.
size_t formula_size(const FormulaPtr& f);

} // namespace ffqe

#endif
