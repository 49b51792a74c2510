#ifndef FFQE_POLYNOMIAL_HPP
#define FFQE_POLYNOMIAL_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ffqe/field.hpp"

namespace ffqe {

// Ordered variable list; position is the rank, lower index = higher rank in
// the lexicographic order.
class VarTable {
public:
    explicit VarTable(std::vector<std::string> names);
    size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(size_t i) const { return names_[i]; }
    std::optional<size_t> index_of(const std::string& n) const;
    bool operator==(const VarTable& o) const { return names_ == o.names_; }

private:
    std::vector<std::string> names_;
    std::map<std::string, size_t> index_;
};
using VarTablePtr = std::shared_ptr<const VarTable>;

// Exponent vector over a VarTable; the all-zeros vector is 1.
struct Monomial {
    std::vector<uint32_t> exps;

    static Monomial one(size_t n) { return Monomial{std::vector<uint32_t>(n, 0)}; }
    bool is_one() const {
        for (auto e : exps)
            if (e) return false;
        return true;
    }
    uint64_t degree() const {
        uint64_t d = 0;
        for (auto e : exps) d += e;
        return d;
    }
    bool divides(const Monomial& m) const {
        for (size_t i = 0; i < exps.size(); ++i)
            if (exps[i] > m.exps[i]) return false;
        return true;
    }
    bool coprime(const Monomial& m) const {
        for (size_t i = 0; i < exps.size(); ++i)
            if (exps[i] && m.exps[i]) return false;
        return true;
    }
    Monomial lcm(const Monomial& m) const {
        Monomial out = *this;
        for (size_t i = 0; i < exps.size(); ++i)
            if (m.exps[i] > out.exps[i]) out.exps[i] = m.exps[i];
        return out;
    }
    Monomial operator*(const Monomial& m) const {
        Monomial out = *this;
        for (size_t i = 0; i < exps.size(); ++i) out.exps[i] += m.exps[i];
        return out;
    }
    // Quotient this / m; m must divide this.
    Monomial divide(const Monomial& m) const {
        Monomial out = *this;
        for (size_t i = 0; i < exps.size(); ++i) out.exps[i] -= m.exps[i];
        return out;
    }
    bool operator==(const Monomial& m) const { return exps == m.exps; }
    bool operator!=(const Monomial& m) const { return exps != m.exps; }
};

// Total well-order on monomials. Lex compares exponents from the highest
// rank down. The block kind partitions variables into contiguous rank
// segments compared segment by segment, each segment by total degree with a
// lex tiebreak; it exists as an optional speedup for elimination runs and is
// never the default.
class MonomialOrder {
public:
    enum class Kind { Lex, Block };

    static MonomialOrder lex() { return MonomialOrder(Kind::Lex, {}); }
    // block_ends: ascending interior boundaries, e.g. {3} over 5 variables
    // splits ranks [0,3) and [3,5).
    static MonomialOrder block(std::vector<size_t> block_ends) {
        return MonomialOrder(Kind::Block, std::move(block_ends));
    }

    Kind kind() const { return kind_; }
    const std::vector<size_t>& block_ends() const { return block_ends_; }

    // <0, 0, >0 as a comes before/equal/after b in increasing order.
    int compare(const Monomial& a, const Monomial& b) const;
    bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }
    bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

    // True when every monomial involving a variable of rank < cut is greater
    // than every monomial in ranks >= cut only; the prerequisite for reading
    // off elimination ideals at that cut.
    bool valid_elimination_cut(size_t cut) const;

    bool operator==(const MonomialOrder& o) const {
        return kind_ == o.kind_ && block_ends_ == o.block_ends_;
    }

private:
    MonomialOrder(Kind k, std::vector<size_t> ends) : kind_(k), block_ends_(std::move(ends)) {}
    Kind kind_;
    std::vector<size_t> block_ends_;
};

// Shared ring context: coefficient field, variables and the active order.
struct Ring {
    const FieldSpec* field;
    VarTablePtr vars;
    MonomialOrder order;

    bool same(const Ring& o) const {
        return field == o.field && *vars == *o.vars && order == o.order;
    }
};
using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(const FieldSpec& field, std::vector<std::string> names,
                  MonomialOrder order = MonomialOrder::lex());

// Sparse multivariate polynomial in canonical form: terms sorted descending
// under the ring order, no zero coefficients.
class Polynomial {
public:
    using Term = std::pair<Monomial, uint32_t>; // coefficient stored as code

    static Polynomial zero(RingPtr ring) { return Polynomial(std::move(ring), {}); }
    static Polynomial constant(const RingPtr& ring, uint32_t code);
    static Polynomial constant(const RingPtr& ring, const FieldElement& c);
    static Polynomial variable(const RingPtr& ring, const std::string& name);
    static Polynomial monomial(const RingPtr& ring, Monomial m, uint32_t code);
    // Normalizes: combines duplicate monomials, drops zeros, sorts descending.
    static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t num_terms() const { return terms_.size(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
    }
    FieldElement constant_value() const; // requires is_constant()

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial scale(const FieldElement& c) const;
    Polynomial scale_code(uint32_t code) const;
    // Product with a single term c*m.
    Polynomial mul_term(const Monomial& m, uint32_t code) const;
    Polynomial pow(uint32_t e) const;
    Polynomial monic() const;

    // Leading data under the ring order; throws Error on the zero polynomial.
    const Monomial& leading_monomial() const;
    std::pair<Monomial, FieldElement> leading_term() const;
    uint32_t leading_coeff_code() const;

    FieldElement evaluate(const std::vector<FieldElement>& point_by_index) const;
    FieldElement evaluate(const std::map<std::string, FieldElement>& point) const;

    // Rewrites x^e to x^(((e-1) mod (q-1)) + 1) for e >= 1, the congruence
    // induced by x^q = x; evaluation over F_q^n is unchanged and per-variable
    // degrees drop below q.
    Polynomial reduce_exponents_by_field_polys() const;

    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    std::string str() const;

private:
    Polynomial(RingPtr ring, std::vector<Term> terms)
        : ring_(std::move(ring)), terms_(std::move(terms)) {}
    void check_same_ring(const Polynomial& o) const;

    RingPtr ring_;
    std::vector<Term> terms_;
};

// Remainder of multivariate division of f by the list G: no monomial of the
// result is divisible by any leading monomial of G, and f minus the result
// lies in the ideal generated by G. The reducer for each step is the first
// list element whose leading monomial divides the current candidate.
Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& G);

// S(f,g) = (L/LT(f))*f - (L/LT(g))*g with L = lcm(LM(f), LM(g)).
Polynomial s_polynomial(const Polynomial& f, const Polynomial& g);

// x^q - x for the named variable.
Polynomial field_polynomial(const RingPtr& ring, const std::string& var);

// Maps a polynomial into another ring by variable name; every variable
// occurring in f must exist in the target, fields must agree.
Polynomial reindex(const Polynomial& f, const RingPtr& target);

// Text form round-trips with str(): + - * ^, explicit '*', constants in the
// field element grammar (extension coefficients parenthesized).
Polynomial parse_polynomial(const RingPtr& ring, std::string_view text);

} // namespace ffqe

#endif
