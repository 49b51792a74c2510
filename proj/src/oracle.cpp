#include "ffqe/oracle.hpp"

#include <algorithm>
#include <set>

#include "ffqe/errors.hpp"
#include "ffqe/polynomial.hpp"

namespace ffqe {

uint64_t Realization::space() const {
    uint64_t s = 1;
    for (size_t i = 0; i < vars.size(); ++i) s *= field->q();
    return s;
}

bool Realization::contains(const Assignment& a) const {
    uint64_t code = 0, mult = 1;
    for (const auto& v : vars) {
        auto it = a.find(v);
        if (it == a.end()) throw Error("assignment misses variable '" + v + "'");
        code += (uint64_t)it->second.code() * mult;
        mult *= field->q();
    }
    return std::binary_search(codes.begin(), codes.end(), code);
}

std::vector<Assignment> Realization::points() const {
    std::vector<Assignment> out;
    out.reserve(codes.size());
    for (uint64_t code : codes) {
        Assignment a;
        uint64_t c = code;
        for (const auto& v : vars) {
            a.emplace(v, FieldElement(*field, (uint32_t)(c % field->q())));
            c /= field->q();
        }
        out.push_back(std::move(a));
    }
    return out;
}

namespace {

// Dense bit vector over the q^n assignment space.
struct Bits {
    std::vector<uint64_t> w;
    uint64_t n = 0;

    explicit Bits(uint64_t size, bool fill = false) : w((size + 63) / 64, 0), n(size) {
        if (fill) {
            for (auto& x : w) x = ~0ull;
            trim();
        }
    }
    void trim() {
        if (n % 64) w.back() &= (1ull << (n % 64)) - 1;
    }
    bool get(uint64_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    void set(uint64_t i) { w[i >> 6] |= 1ull << (i & 63); }
    void and_with(const Bits& o) {
        for (size_t i = 0; i < w.size(); ++i) w[i] &= o.w[i];
    }
    void or_with(const Bits& o) {
        for (size_t i = 0; i < w.size(); ++i) w[i] |= o.w[i];
    }
    void complement() {
        for (auto& x : w) x = ~x;
        trim();
    }
};

struct Universe {
    const FieldSpec* field;
    std::vector<std::string> vars; // coordinate order, index 0 least significant
    uint64_t space;

    uint64_t stride(size_t i) const {
        uint64_t s = 1;
        for (size_t k = 0; k < i; ++k) s *= field->q();
        return s;
    }
    size_t index_of(const std::string& v) const {
        for (size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == v) return i;
        throw Error("variable '" + v + "' not in enumeration universe");
    }
};

Bits eval_atom(const Universe& u, const TermPtr& t, bool negated) {
    TermEvaluator ev(t, *u.field, u.vars);
    Bits out(u.space);
    std::vector<uint32_t> digits(u.vars.size(), 0);
    const uint32_t q = u.field->q();
    for (uint64_t code = 0;; ++code) {
        bool zero = ev.eval(digits) == 0;
        if (zero != negated) out.set(code);
        size_t i = 0;
        while (i < digits.size() && ++digits[i] == q) digits[i++] = 0;
        if (i == digits.size()) break;
    }
    return out;
}

// OR (exists) or AND (forall) fold along one coordinate axis, leaving the
// variable unconstrained afterwards.
Bits fold_axis(const Universe& u, const Bits& in, size_t axis, bool exists) {
    const uint32_t q = u.field->q();
    uint64_t stride = u.stride(axis);
    Bits out(u.space);
    for (uint64_t code = 0; code < u.space; ++code) {
        if ((code / stride) % q != 0) continue;
        bool acc = exists ? false : true;
        for (uint32_t d = 0; d < q; ++d) {
            bool b = in.get(code + d * stride);
            acc = exists ? (acc || b) : (acc && b);
        }
        if (acc)
            for (uint32_t d = 0; d < q; ++d) out.set(code + d * stride);
    }
    return out;
}

Bits eval_rec(const Universe& u, const FormulaPtr& f) {
    switch (f->kind()) {
        case Formula::Kind::True:
            return Bits(u.space, true);
        case Formula::Kind::False:
            return Bits(u.space);
        case Formula::Kind::Atom:
            return eval_atom(u, f->atom_term(), false);
        case Formula::Kind::NegAtom:
            return eval_atom(u, f->atom_term(), true);
        case Formula::Kind::Not: {
            Bits b = eval_rec(u, f->kids()[0]);
            b.complement();
            return b;
        }
        case Formula::Kind::And: {
            Bits b(u.space, true);
            for (const auto& k : f->kids()) b.and_with(eval_rec(u, k));
            return b;
        }
        case Formula::Kind::Or: {
            Bits b(u.space);
            for (const auto& k : f->kids()) b.or_with(eval_rec(u, k));
            return b;
        }
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            Bits b = eval_rec(u, f->kids()[0]);
            for (const auto& v : f->bound())
                b = fold_axis(u, b, u.index_of(v), f->kind() == Formula::Kind::Exists);
            return b;
        }
    }
    throw Error("unreachable formula kind");
}

// Renames binders apart from every other name in scope so each variable can
// own one coordinate axis.
FormulaPtr rectify(const FormulaPtr& f, std::set<std::string>& used, int& counter) {
    const FieldSpec& fld = f->field();
    switch (f->kind()) {
        case Formula::Kind::True:
        case Formula::Kind::False:
        case Formula::Kind::Atom:
        case Formula::Kind::NegAtom:
            return f;
        case Formula::Kind::Not:
            return Formula::negate(rectify(f->kids()[0], used, counter));
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            std::vector<FormulaPtr> kids;
            for (const auto& k : f->kids()) kids.push_back(rectify(k, used, counter));
            return f->kind() == Formula::Kind::And ? Formula::conj(fld, std::move(kids))
                                                   : Formula::disj(fld, std::move(kids));
        }
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            std::map<std::string, std::string> renames;
            std::vector<std::string> vars;
            for (const auto& v : f->bound()) {
                if (used.count(v)) {
                    std::string nv;
                    do {
                        nv = "_e" + std::to_string(counter++);
                    } while (used.count(nv));
                    used.insert(nv);
                    renames.emplace(v, nv);
                    vars.push_back(nv);
                } else {
                    used.insert(v);
                    vars.push_back(v);
                }
            }
            FormulaPtr body = f->kids()[0];
            if (!renames.empty()) {
                // reuse formula renaming via term renames on atoms
                struct Walk {
                    const std::map<std::string, std::string>& rn;
                    FormulaPtr operator()(const FormulaPtr& g) const {
                        const FieldSpec& fl = g->field();
                        switch (g->kind()) {
                            case Formula::Kind::True:
                            case Formula::Kind::False:
                                return g;
                            case Formula::Kind::Atom:
                                return Formula::atom(fl, rename_term(g->atom_term(), rn));
                            case Formula::Kind::NegAtom:
                                return Formula::neg_atom(fl,
                                                         rename_term(g->atom_term(), rn));
                            case Formula::Kind::Not:
                                return Formula::negate((*this)(g->kids()[0]));
                            case Formula::Kind::And:
                            case Formula::Kind::Or: {
                                std::vector<FormulaPtr> ks;
                                for (const auto& k : g->kids()) ks.push_back((*this)(k));
                                return g->kind() == Formula::Kind::And
                                           ? Formula::conj(fl, std::move(ks))
                                           : Formula::disj(fl, std::move(ks));
                            }
                            case Formula::Kind::Exists:
                            case Formula::Kind::Forall: {
                                std::vector<std::string> bs;
                                for (const auto& b : g->bound()) {
                                    auto it = rn.find(b);
                                    bs.push_back(it == rn.end() ? b : it->second);
                                }
                                return Formula::quantify(
                                    g->kind() == Formula::Kind::Exists
                                        ? Quantifier::Exists
                                        : Quantifier::Forall,
                                    std::move(bs), (*this)(g->kids()[0]));
                            }
                        }
                        throw Error("unreachable formula kind");
                    }
                } walk{renames};
                body = walk(body);
            }
            return Formula::quantify(
                f->kind() == Formula::Kind::Exists ? Quantifier::Exists : Quantifier::Forall,
                std::move(vars), rectify(body, used, counter));
        }
    }
    throw Error("unreachable formula kind");
}

} // namespace

Realization realization_over(const FormulaPtr& f, std::vector<std::string> universe,
                             const FieldSpec& field, uint64_t bound) {
    // Validate the requested universe covers the free variables.
    auto frees = free_variables(f);
    for (const auto& v : frees)
        if (std::find(universe.begin(), universe.end(), v) == universe.end())
            throw Error("universe misses free variable '" + v + "'");
    const size_t n_out = universe.size();

    std::set<std::string> used(universe.begin(), universe.end());
    int counter = 1;
    FormulaPtr g = rectify(f, used, counter);

    Universe u;
    u.field = &field;
    u.vars = std::move(universe);
    for (const auto& v : all_variables(g))
        if (std::find(u.vars.begin(), u.vars.end(), v) == u.vars.end())
            u.vars.push_back(v);

    uint64_t space = 1;
    for (size_t i = 0; i < u.vars.size(); ++i) {
        if (space > bound / field.q()) throw BoundExceeded("enumeration bound exceeded");
        space *= field.q();
        if (space > bound) throw BoundExceeded("enumeration bound exceeded");
    }
    u.space = space;

    Bits bits = eval_rec(u, g);

    uint64_t out_space = 1;
    for (size_t i = 0; i < n_out; ++i) out_space *= field.q();

    std::set<uint64_t> out_codes;
    for (uint64_t code = 0; code < u.space; ++code)
        if (bits.get(code)) out_codes.insert(code % out_space);

    Realization r;
    r.field = &field;
    r.vars.assign(u.vars.begin(), u.vars.begin() + (long)n_out);
    r.codes.assign(out_codes.begin(), out_codes.end());
    return r;
}

Realization realization(const FormulaPtr& f, const FieldSpec& field, uint64_t bound) {
    return realization_over(f, free_variables(f), field, bound);
}

Realization project(const Realization& r, const std::vector<std::string>& drop_vars) {
    for (const auto& v : drop_vars)
        if (std::find(r.vars.begin(), r.vars.end(), v) == r.vars.end())
            throw Error("cannot drop unknown variable '" + v + "'");
    std::vector<std::string> keep;
    std::vector<size_t> keep_idx;
    for (size_t i = 0; i < r.vars.size(); ++i) {
        if (std::find(drop_vars.begin(), drop_vars.end(), r.vars[i]) == drop_vars.end()) {
            keep.push_back(r.vars[i]);
            keep_idx.push_back(i);
        }
    }
    const uint32_t q = r.field->q();
    std::set<uint64_t> out;
    for (uint64_t code : r.codes) {
        std::vector<uint32_t> digits(r.vars.size());
        uint64_t c = code;
        for (size_t i = 0; i < r.vars.size(); ++i) {
            digits[i] = (uint32_t)(c % q);
            c /= q;
        }
        uint64_t nc = 0, mult = 1;
        for (size_t k : keep_idx) {
            nc += digits[k] * mult;
            mult *= q;
        }
        out.insert(nc);
    }
    Realization res;
    res.field = r.field;
    res.vars = std::move(keep);
    res.codes.assign(out.begin(), out.end());
    return res;
}

bool same_points(const Realization& a, const Realization& b) {
    if (a.field != b.field) return false;
    std::set<std::string> va(a.vars.begin(), a.vars.end());
    std::set<std::string> vb(b.vars.begin(), b.vars.end());
    if (va != vb) return false;
    if (a.vars == b.vars) return a.codes == b.codes;
    // reorder b's codes into a's coordinate order
    const uint32_t q = a.field->q();
    std::vector<size_t> pos(a.vars.size());
    for (size_t i = 0; i < a.vars.size(); ++i) {
        for (size_t j = 0; j < b.vars.size(); ++j)
            if (b.vars[j] == a.vars[i]) pos[i] = j;
    }
    std::set<uint64_t> rb;
    for (uint64_t code : b.codes) {
        std::vector<uint32_t> digits(b.vars.size());
        uint64_t c = code;
        for (size_t i = 0; i < b.vars.size(); ++i) {
            digits[i] = (uint32_t)(c % q);
            c /= q;
        }
        uint64_t nc = 0, mult = 1;
        for (size_t i = 0; i < a.vars.size(); ++i) {
            nc += digits[pos[i]] * mult;
            mult *= q;
        }
        rb.insert(nc);
    }
    return std::equal(a.codes.begin(), a.codes.end(), rb.begin(), rb.end()) &&
           a.codes.size() == rb.size();
}

bool equivalent(const FormulaPtr& a, const FormulaPtr& b, const FieldSpec& field,
                uint64_t bound) {
    std::vector<std::string> universe = free_variables(a);
    for (const auto& v : free_variables(b))
        if (std::find(universe.begin(), universe.end(), v) == universe.end())
            universe.push_back(v);
    Realization ra = realization_over(a, universe, field, bound);
    Realization rb = realization_over(b, universe, field, bound);
    return ra.codes == rb.codes;
}

std::optional<Assignment> find_satisfying(const FormulaPtr& qfree,
                                          const std::vector<std::string>& vars,
                                          const FieldSpec& field, uint64_t bound) {
    Realization r = realization_over(qfree, vars, field, bound);
    if (r.codes.empty()) return std::nullopt;
    uint64_t code = r.codes.front();
    Assignment a;
    for (const auto& v : r.vars) {
        a.emplace(v, FieldElement(field, (uint32_t)(code % field.q())));
        code /= field.q();
    }
    return a;
}

FormulaPtr naive_qe_formula(const Realization& r) {
    const FieldSpec& f = *r.field;
    if (r.vars.empty())
        return r.codes.empty() ? Formula::fls(f) : Formula::tru(f);
    auto ring = make_ring(f, r.vars);
    std::vector<FormulaPtr> disjuncts;
    for (const auto& pt : r.points()) {
        std::vector<FormulaPtr> eqs;
        for (const auto& v : r.vars) {
            Polynomial p = Polynomial::variable(ring, v) -
                           Polynomial::constant(ring, pt.at(v));
            eqs.push_back(Formula::atom(std::move(p)));
        }
        disjuncts.push_back(Formula::conj_fold(f, std::move(eqs)));
    }
    return Formula::disj_fold(f, std::move(disjuncts));
}

} // namespace ffqe
