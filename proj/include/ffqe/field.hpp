#ifndef FFQE_FIELD_HPP
#define FFQE_FIELD_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ffqe/errors.hpp"

namespace ffqe {

class FieldElement;

// An interned description of F_q, q = p^r. Elements of the extension are
// residue classes of polynomials over F_p modulo a monic irreducible of
// degree r; an element is encoded as the base-p value of its coefficient
// vector (low-to-high), so codes range over [0, q). Instances are created
// through make_field, live for the duration of the process, and are shared
// by pointer; two elements belong to the same field iff their spec pointers
// are equal.
class FieldSpec {
public:
    int p() const { return p_; }
    int r() const { return r_; }
    uint32_t q() const { return q_; }
    // Monic modulus, coefficients low-to-high, length r+1. For r = 1 this is
    // the placeholder "x" (elements are plain residues mod p).
    const std::vector<int>& modulus() const { return modulus_; }
    const std::string& generator_name() const { return generator_; }

    // Arithmetic on element codes. Inputs must be < q.
    uint32_t add(uint32_t a, uint32_t b) const;
    uint32_t sub(uint32_t a, uint32_t b) const;
    uint32_t mul(uint32_t a, uint32_t b) const;
    uint32_t neg(uint32_t a) const;
    uint32_t inv(uint32_t a) const; // throws FieldError on 0
    uint32_t pow(uint32_t a, uint64_t e) const;

    // Coefficient vector of a code: r residues mod p, low-to-high.
    std::vector<int> coeffs_of(uint32_t code) const;
    uint32_t code_of(const std::vector<int>& coeffs) const;

    // The residue class of n*1 (n may be negative).
    uint32_t from_integer(long long n) const;

    // Text form: decimal residue for prime fields, polynomial in the
    // generator for extensions (e.g. "w+1").
    std::string to_string(uint32_t code) const;

    bool operator==(const FieldSpec& o) const { return this == &o; }

private:
    friend const FieldSpec& make_field(int, int, std::optional<std::vector<int>>,
                                       const std::string&);
    FieldSpec(int p, int r, std::vector<int> modulus, std::string generator);

    uint32_t mul_generic(uint32_t a, uint32_t b) const;

    uint32_t add_generic(uint32_t a, uint32_t b) const;
    uint32_t neg_generic(uint32_t a) const;

    int p_;
    int r_;
    uint32_t q_;
    std::vector<int> modulus_;
    std::string generator_;
    // Dense op tables for small fields; empty when q exceeds the table limit.
    std::vector<uint16_t> mul_table_;
    std::vector<uint16_t> add_table_;
    std::vector<uint16_t> inv_table_;
    std::vector<uint16_t> neg_table_;
};

// Largest supported field size (keeps all code arithmetic in 32 bits and
// enumeration affordable).
inline constexpr uint32_t kMaxFieldOrder = 1u << 16;

// Construct (or fetch the interned copy of) F_{p^r}. When modulus is omitted
// and r > 1, the default is the smallest monic irreducible of degree r over
// F_p, "smallest" meaning the least base-p value of the non-leading
// coefficient vector; for (p,r) = (2,2) this is w^2+w+1. Throws FieldError
// for non-prime p, out-of-range sizes, or a reducible/malformed modulus.
const FieldSpec& make_field(int p, int r = 1,
                            std::optional<std::vector<int>> modulus = std::nullopt,
                            const std::string& generator = "w");

// A value of F_q in canonical form. Immutable; equality is structural.
class FieldElement {
public:
    FieldElement(const FieldSpec& field, uint32_t code) : field_(&field), code_(code) {
        if (code >= field.q()) throw FieldError("element code out of range");
    }

    const FieldSpec& field() const { return *field_; }
    uint32_t code() const { return code_; }
    std::vector<int> coeffs() const { return field_->coeffs_of(code_); }
    bool is_zero() const { return code_ == 0; }
    bool is_one() const { return code_ == 1; }

    static FieldElement zero(const FieldSpec& f) { return FieldElement(f, 0); }
    static FieldElement one(const FieldSpec& f) { return FieldElement(f, f.q() > 1 ? 1 : 0); }

    FieldElement operator+(const FieldElement& o) const {
        same_field(o);
        return FieldElement(*field_, field_->add(code_, o.code_));
    }
    FieldElement operator-(const FieldElement& o) const {
        same_field(o);
        return FieldElement(*field_, field_->sub(code_, o.code_));
    }
    FieldElement operator*(const FieldElement& o) const {
        same_field(o);
        return FieldElement(*field_, field_->mul(code_, o.code_));
    }
    FieldElement operator-() const { return FieldElement(*field_, field_->neg(code_)); }
    FieldElement inverse() const { return FieldElement(*field_, field_->inv(code_)); }
    FieldElement pow(uint64_t e) const { return FieldElement(*field_, field_->pow(code_, e)); }

    bool operator==(const FieldElement& o) const {
        return field_ == o.field_ && code_ == o.code_;
    }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    std::string str() const { return field_->to_string(code_); }

private:
    void same_field(const FieldElement& o) const {
        if (field_ != o.field_) throw FieldError("elements of different fields");
    }
    const FieldSpec* field_;
    uint32_t code_;
};

// All q elements in a fixed order: ascending code, i.e. coefficient vectors
// in base-p counting order. The first two are always 0 and 1.
std::vector<FieldElement> enumerate_elements(const FieldSpec& field);

// Parse an element from the same grammar to_string produces (integers,
// generator name, + - * ^ and parentheses). Throws ParseError / FieldError.
FieldElement parse_element(const FieldSpec& field, std::string_view text);

} // namespace ffqe

#endif
