#ifndef FFQE_TERM_HPP
#define FFQE_TERM_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ffqe/budget.hpp"
#include "ffqe/polynomial.hpp"

namespace ffqe {

class Term;
using TermPtr = std::shared_ptr<const Term>;

// Immutable syntax tree over the ring signature: constants, variables, sums,
// products, negations and non-negative integer powers. Terms stay unexpanded
// until a polynomial is actually required, so product-heavy inputs (chained
// controller factors and the like) cost nothing to carry around.
class Term {
public:
    enum class Kind { Constant, Variable, Add, Mul, Neg, Pow };

    static TermPtr constant(const FieldElement& c);
    static TermPtr integer(const FieldSpec& f, long long n);
    static TermPtr variable(std::string name);
    static TermPtr add(std::vector<TermPtr> args);
    static TermPtr mul(std::vector<TermPtr> args);
    static TermPtr neg(TermPtr t);
    static TermPtr pow(TermPtr t, uint32_t e);
    static TermPtr sub(TermPtr a, TermPtr b);

    Kind kind() const { return kind_; }
    const FieldElement& value() const { return *value_; } // Constant
    const std::string& var() const { return var_; }       // Variable
    const std::vector<TermPtr>& args() const { return args_; }
    uint32_t exponent() const { return exp_; }            // Pow

private:
    Term() = default;
    Kind kind_;
    std::shared_ptr<const FieldElement> value_;
    std::string var_;
    std::vector<TermPtr> args_;
    uint32_t exp_ = 0;
};

// Variables in first-occurrence (depth-first, left-to-right) order.
void collect_variables(const TermPtr& t, std::vector<std::string>& out);

bool term_equal(const TermPtr& a, const TermPtr& b);

TermPtr rename_term(const TermPtr& t, const std::map<std::string, std::string>& renames);

std::string term_str(const TermPtr& t);

// Saturating estimate of the expanded term count.
uint64_t term_estimate(const TermPtr& t);

// Sum-of-terms tree whose printed form matches the polynomial printer.
TermPtr poly_to_term(const Polynomial& p);

struct ExpandOptions {
    // Reduce every intermediate product against this list (sound whenever the
    // reducers are generators of the same ideal the result joins).
    const std::vector<Polynomial>* reducers = nullptr;
    const Budget* budget = nullptr;
    // Keep per-variable exponents below q via x^q = x as products grow.
    bool field_reduce = true;
};

// Expands a term into the canonical polynomial, reducing incrementally so
// intermediate blow-up is bounded by the reduced sizes rather than the raw
// product of factor sizes. Evaluation over F_q^n is preserved.
Polynomial expand_term(const TermPtr& t, const RingPtr& ring,
                       const ExpandOptions& opts = {});

// Evaluation against a named point.
FieldElement eval_term(const TermPtr& t, const FieldSpec& field,
                       const std::map<std::string, FieldElement>& point);

// Precompiled evaluator for enumeration loops: variable names are resolved
// against a fixed coordinate order once, evaluation then runs on raw codes.
class TermEvaluator {
public:
    TermEvaluator(const TermPtr& t, const FieldSpec& field,
                  const std::vector<std::string>& var_order);
    uint32_t eval(const std::vector<uint32_t>& codes) const;

private:
    struct Instr {
        enum Op { PushConst, PushVar, AddN, MulN, Negate, Power } op;
        uint32_t a;
    };
    void compile(const TermPtr& t, const std::map<std::string, size_t>& index);
    std::vector<Instr> prog_;
    const FieldSpec* field_;
};

} // namespace ffqe

#endif
