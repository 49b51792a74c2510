#include "ffqe/transform.hpp"

#include "ffqe/errors.hpp"

namespace ffqe {

namespace {

FormulaPtr strip_negations(const FormulaPtr& f, FreshNames& fresh,
                           std::vector<std::string>& out) {
    const FieldSpec& fld = f->field();
    switch (f->kind()) {
        case Formula::Kind::True:
        case Formula::Kind::False:
        case Formula::Kind::Atom:
            return f;
        case Formula::Kind::NegAtom: {
            std::string z = fresh.u();
            out.push_back(z);
            TermPtr prod = Term::sub(Term::mul({f->atom_term(), Term::variable(z)}),
                                     Term::constant(FieldElement::one(fld)));
            return Formula::atom(fld, prod);
        }
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            std::vector<FormulaPtr> kids;
            kids.reserve(f->kids().size());
            for (const auto& k : f->kids()) kids.push_back(strip_negations(k, fresh, out));
            return f->kind() == Formula::Kind::And ? Formula::conj(fld, std::move(kids))
                                                   : Formula::disj(fld, std::move(kids));
        }
        default:
            throw SemanticError("negation elimination expects a quantifier-free NNF matrix");
    }
}

std::vector<TermPtr> flatten_rec(const FormulaPtr& f, FreshNames& fresh,
                                 std::vector<std::string>& vs) {
    const FieldSpec& fld = f->field();
    switch (f->kind()) {
        case Formula::Kind::True:
            return {};
        case Formula::Kind::False:
            return {Term::constant(FieldElement::one(fld))};
        case Formula::Kind::Atom:
            return {f->atom_term()};
        case Formula::Kind::And: {
            std::vector<TermPtr> out;
            for (const auto& k : f->kids()) {
                auto sub = flatten_rec(k, fresh, vs);
                out.insert(out.end(), sub.begin(), sub.end());
            }
            return out;
        }
        case Formula::Kind::Or: {
            // left-associative fold over the children
            std::vector<TermPtr> acc = flatten_rec(f->kids()[0], fresh, vs);
            for (size_t i = 1; i < f->kids().size(); ++i) {
                std::vector<TermPtr> rhs = flatten_rec(f->kids()[i], fresh, vs);
                std::string v = fresh.v();
                vs.push_back(v);
                TermPtr tv = Term::variable(v);
                TermPtr one_minus =
                    Term::sub(Term::constant(FieldElement::one(fld)), Term::variable(v));
                std::vector<TermPtr> next;
                next.reserve(acc.size() + rhs.size());
                for (const auto& g : acc) next.push_back(Term::mul({tv, g}));
                for (const auto& h : rhs) next.push_back(Term::mul({one_minus, h}));
                acc = std::move(next);
            }
            return acc;
        }
        default:
            throw SemanticError("flattening expects a negation-free quantifier-free matrix");
    }
}

} // namespace

std::pair<std::vector<std::string>, FormulaPtr> eliminate_negations(
    const FormulaPtr& nnf, FreshNames& fresh) {
    std::vector<std::string> zs;
    FormulaPtr out = strip_negations(nnf, fresh, zs);
    return {std::move(zs), std::move(out)};
}

FlattenResult flatten_to_ideal(const FormulaPtr& negfree, FreshNames& fresh) {
    FlattenResult res;
    res.conjuncts = flatten_rec(negfree, fresh, res.fresh_v);
    return res;
}

FlattenResult flatten_matrix(const FormulaPtr& nnf_matrix, FreshNames& fresh) {
    auto [us, stripped] = eliminate_negations(nnf_matrix, fresh);
    FlattenResult res = flatten_to_ideal(stripped, fresh);
    res.fresh_u = std::move(us);
    return res;
}

} // namespace ffqe
