#include "ffqe/formula.hpp"

#include <algorithm>
#include <set>

#include "ffqe/errors.hpp"

namespace ffqe {

FormulaPtr Formula::tru(const FieldSpec& f) {
    auto x = std::shared_ptr<Formula>(new Formula());
    x->kind_ = Kind::True;
    x->field_ = &f;
    return x;
}

FormulaPtr Formula::fls(const FieldSpec& f) {
    auto x = std::shared_ptr<Formula>(new Formula());
    x->kind_ = Kind::False;
    x->field_ = &f;
    return x;
}

FormulaPtr Formula::atom(const FieldSpec& f, TermPtr t) {
    auto x = std::shared_ptr<Formula>(new Formula());
    x->kind_ = Kind::Atom;
    x->field_ = &f;
    x->term_ = std::move(t);
    return x;
}

FormulaPtr Formula::neg_atom(const FieldSpec& f, TermPtr t) {
    auto x = std::shared_ptr<Formula>(new Formula());
    x->kind_ = Kind::NegAtom;
    x->field_ = &f;
    x->term_ = std::move(t);
    return x;
}

FormulaPtr Formula::atom(Polynomial p) {
    auto x = std::shared_ptr<Formula>(new Formula());
    x->kind_ = Kind::Atom;
    x->field_ = p.ring()->field;
    x->term_ = poly_to_term(p);
    x->poly_ = std::move(p);
    return x;
}

FormulaPtr Formula::neg_atom(Polynomial p) {
    auto x = std::shared_ptr<Formula>(new Formula());
    x->kind_ = Kind::NegAtom;
    x->field_ = p.ring()->field;
    x->term_ = poly_to_term(p);
    x->poly_ = std::move(p);
    return x;
}

FormulaPtr Formula::conj(const FieldSpec& f, std::vector<FormulaPtr> kids) {
    auto x = std::shared_ptr<Formula>(new Formula());
    x->kind_ = Kind::And;
    x->field_ = &f;
    x->kids_ = std::move(kids);
    return x;
}

FormulaPtr Formula::disj(const FieldSpec& f, std::vector<FormulaPtr> kids) {
    auto x = std::shared_ptr<Formula>(new Formula());
    x->kind_ = Kind::Or;
    x->field_ = &f;
    x->kids_ = std::move(kids);
    return x;
}

FormulaPtr Formula::negate(FormulaPtr sub) {
    auto x = std::shared_ptr<Formula>(new Formula());
    x->kind_ = Kind::Not;
    x->field_ = &sub->field();
    x->kids_ = {std::move(sub)};
    return x;
}

FormulaPtr Formula::quantify(Quantifier q, std::vector<std::string> vars, FormulaPtr sub) {
    if (vars.empty()) throw SemanticError("empty quantifier variable list");
    std::set<std::string> seen(vars.begin(), vars.end());
    if (seen.size() != vars.size())
        throw SemanticError("duplicate variable in quantifier block");
    auto x = std::shared_ptr<Formula>(new Formula());
    x->kind_ = q == Quantifier::Exists ? Kind::Exists : Kind::Forall;
    x->field_ = &sub->field();
    x->kids_ = {std::move(sub)};
    x->bound_ = std::move(vars);
    return x;
}

FormulaPtr Formula::exists(std::vector<std::string> vars, FormulaPtr sub) {
    return quantify(Quantifier::Exists, std::move(vars), std::move(sub));
}

FormulaPtr Formula::forall(std::vector<std::string> vars, FormulaPtr sub) {
    return quantify(Quantifier::Forall, std::move(vars), std::move(sub));
}

FormulaPtr Formula::conj_fold(const FieldSpec& f, std::vector<FormulaPtr> kids) {
    std::vector<FormulaPtr> out;
    for (auto& k : kids) {
        if (k->kind() == Kind::False) return fls(f);
        if (k->kind() == Kind::True) continue;
        out.push_back(std::move(k));
    }
    if (out.empty()) return tru(f);
    if (out.size() == 1) return out[0];
    return conj(f, std::move(out));
}

FormulaPtr Formula::disj_fold(const FieldSpec& f, std::vector<FormulaPtr> kids) {
    std::vector<FormulaPtr> out;
    for (auto& k : kids) {
        if (k->kind() == Kind::True) return tru(f);
        if (k->kind() == Kind::False) continue;
        out.push_back(std::move(k));
    }
    if (out.empty()) return fls(f);
    if (out.size() == 1) return out[0];
    return disj(f, std::move(out));
}

namespace {

void collect_free(const FormulaPtr& f, std::vector<std::string>& out,
                  std::vector<std::string>& bound_stack) {
    switch (f->kind()) {
        case Formula::Kind::True:
        case Formula::Kind::False:
            return;
        case Formula::Kind::Atom:
        case Formula::Kind::NegAtom: {
            std::vector<std::string> vars;
            collect_variables(f->atom_term(), vars);
            for (auto& v : vars) {
                if (std::find(bound_stack.begin(), bound_stack.end(), v) !=
                    bound_stack.end())
                    continue;
                if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
            }
            return;
        }
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            size_t mark = bound_stack.size();
            for (const auto& v : f->bound()) bound_stack.push_back(v);
            collect_free(f->kids()[0], out, bound_stack);
            bound_stack.resize(mark);
            return;
        }
        default:
            for (const auto& k : f->kids()) collect_free(k, out, bound_stack);
    }
}

} // namespace

std::vector<std::string> free_variables(const FormulaPtr& f) {
    std::vector<std::string> out, bound;
    collect_free(f, out, bound);
    return out;
}

namespace {
void collect_all(const FormulaPtr& f, std::vector<std::string>& out) {
    auto push = [&](const std::string& v) {
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    };
    switch (f->kind()) {
        case Formula::Kind::True:
        case Formula::Kind::False:
            return;
        case Formula::Kind::Atom:
        case Formula::Kind::NegAtom: {
            std::vector<std::string> vars;
            collect_variables(f->atom_term(), vars);
            for (auto& v : vars) push(v);
            return;
        }
        case Formula::Kind::Exists:
        case Formula::Kind::Forall:
            for (const auto& v : f->bound()) push(v);
            collect_all(f->kids()[0], out);
            return;
        default:
            for (const auto& k : f->kids()) collect_all(k, out);
    }
}
} // namespace

std::vector<std::string> all_variables(const FormulaPtr& f) {
    std::vector<std::string> out;
    collect_all(f, out);
    return out;
}

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a == b) return true;
    if (a->kind() != b->kind()) return false;
    if (&a->field() != &b->field()) return false;
    if (a->is_atom()) return term_equal(a->atom_term(), b->atom_term());
    if (a->bound() != b->bound()) return false;
    if (a->kids().size() != b->kids().size()) return false;
    for (size_t i = 0; i < a->kids().size(); ++i)
        if (!formula_equal(a->kids()[i], b->kids()[i])) return false;
    return true;
}

namespace {

// Precedence: quantifier body 0, or 1, and 2, not 3, atoms 4.
int fprec(const FormulaPtr& f) {
    switch (f->kind()) {
        case Formula::Kind::Exists:
        case Formula::Kind::Forall:
            return 0;
        case Formula::Kind::Or:
            return 1;
        case Formula::Kind::And:
            return 2;
        case Formula::Kind::Not:
            return 3;
        default:
            return 4;
    }
}

void print_formula(const FormulaPtr& f, int ctx, std::string& out) {
    bool parens = fprec(f) < ctx;
    if (parens) out += "(";
    switch (f->kind()) {
        case Formula::Kind::True:
            out += "true";
            break;
        case Formula::Kind::False:
            out += "false";
            break;
        case Formula::Kind::Atom:
        case Formula::Kind::NegAtom: {
            if (f->atom_poly())
                out += f->atom_poly()->str();
            else
                out += term_str(f->atom_term());
            out += f->kind() == Formula::Kind::Atom ? " = 0" : " != 0";
            break;
        }
        case Formula::Kind::Not:
            out += "~";
            print_formula(f->kids()[0], 3, out);
            break;
        case Formula::Kind::And: {
            bool first = true;
            for (const auto& k : f->kids()) {
                if (!first) out += " /\\ ";
                print_formula(k, 3, out);
                first = false;
            }
            break;
        }
        case Formula::Kind::Or: {
            bool first = true;
            for (const auto& k : f->kids()) {
                if (!first) out += " \\/ ";
                print_formula(k, 2, out);
                first = false;
            }
            break;
        }
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            out += f->kind() == Formula::Kind::Exists ? "exists" : "forall";
            for (const auto& v : f->bound()) out += " " + v;
            out += ". ";
            print_formula(f->kids()[0], 0, out);
            break;
        }
    }
    if (parens) out += ")";
}

} // namespace

std::string formula_str(const FormulaPtr& f) {
    std::string out;
    print_formula(f, 0, out);
    return out;
}

FormulaPtr to_nnf(const FormulaPtr& f) {
    const FieldSpec& fld = f->field();
    switch (f->kind()) {
        case Formula::Kind::True:
        case Formula::Kind::False:
        case Formula::Kind::Atom:
        case Formula::Kind::NegAtom:
            return f;
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            std::vector<FormulaPtr> kids;
            kids.reserve(f->kids().size());
            for (const auto& k : f->kids()) kids.push_back(to_nnf(k));
            return f->kind() == Formula::Kind::And ? Formula::conj(fld, std::move(kids))
                                                   : Formula::disj(fld, std::move(kids));
        }
        case Formula::Kind::Exists:
            return Formula::exists(f->bound(), to_nnf(f->kids()[0]));
        case Formula::Kind::Forall:
            return Formula::forall(f->bound(), to_nnf(f->kids()[0]));
        case Formula::Kind::Not: {
            const FormulaPtr& s = f->kids()[0];
            switch (s->kind()) {
                case Formula::Kind::True:
                    return Formula::fls(fld);
                case Formula::Kind::False:
                    return Formula::tru(fld);
                case Formula::Kind::Atom:
                    return s->atom_poly() ? Formula::neg_atom(*s->atom_poly())
                                          : Formula::neg_atom(fld, s->atom_term());
                case Formula::Kind::NegAtom:
                    return s->atom_poly() ? Formula::atom(*s->atom_poly())
                                          : Formula::atom(fld, s->atom_term());
                case Formula::Kind::Not:
                    return to_nnf(s->kids()[0]);
                case Formula::Kind::And:
                case Formula::Kind::Or: {
                    std::vector<FormulaPtr> kids;
                    for (const auto& k : s->kids())
                        kids.push_back(to_nnf(Formula::negate(k)));
                    return s->kind() == Formula::Kind::And
                               ? Formula::disj(fld, std::move(kids))
                               : Formula::conj(fld, std::move(kids));
                }
                case Formula::Kind::Exists:
                    return Formula::forall(s->bound(),
                                           to_nnf(Formula::negate(s->kids()[0])));
                case Formula::Kind::Forall:
                    return Formula::exists(s->bound(),
                                           to_nnf(Formula::negate(s->kids()[0])));
            }
        }
    }
    throw Error("unreachable formula kind");
}

namespace {

FormulaPtr rename_formula(const FormulaPtr& f,
                          const std::map<std::string, std::string>& renames) {
    if (renames.empty()) return f;
    const FieldSpec& fld = f->field();
    switch (f->kind()) {
        case Formula::Kind::True:
        case Formula::Kind::False:
            return f;
        case Formula::Kind::Atom:
            return Formula::atom(fld, rename_term(f->atom_term(), renames));
        case Formula::Kind::NegAtom:
            return Formula::neg_atom(fld, rename_term(f->atom_term(), renames));
        case Formula::Kind::Not:
            return Formula::negate(rename_formula(f->kids()[0], renames));
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            std::vector<FormulaPtr> kids;
            for (const auto& k : f->kids()) kids.push_back(rename_formula(k, renames));
            return f->kind() == Formula::Kind::And ? Formula::conj(fld, std::move(kids))
                                                   : Formula::disj(fld, std::move(kids));
        }
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            std::vector<std::string> bound;
            for (const auto& v : f->bound()) {
                auto it = renames.find(v);
                bound.push_back(it == renames.end() ? v : it->second);
            }
            return Formula::quantify(
                f->kind() == Formula::Kind::Exists ? Quantifier::Exists : Quantifier::Forall,
                std::move(bound), rename_formula(f->kids()[0], renames));
        }
    }
    throw Error("unreachable formula kind");
}

struct PrenexState {
    std::set<std::string> used; // every name already claimed anywhere
    int next_fresh = 1;
    std::string fresh() {
        for (;;) {
            std::string n = "_q" + std::to_string(next_fresh++);
            if (!used.count(n)) {
                used.insert(n);
                return n;
            }
        }
    }
};

struct PrenexPart {
    std::vector<std::pair<Quantifier, std::vector<std::string>>> blocks;
    FormulaPtr matrix;
};

// f must be in NNF. Lifts quantifier prefixes; sibling subformulas are
// renamed so lifted binders never capture.
PrenexPart prenex_rec(const FormulaPtr& f, PrenexState& st) {
    const FieldSpec& fld = f->field();
    switch (f->kind()) {
        case Formula::Kind::True:
        case Formula::Kind::False:
        case Formula::Kind::Atom:
        case Formula::Kind::NegAtom:
            return {{}, f};
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            // Rename any binder whose name was already claimed elsewhere.
            std::map<std::string, std::string> renames;
            std::vector<std::string> vars;
            for (const auto& v : f->bound()) {
                if (st.used.count(v)) {
                    std::string nv = st.fresh();
                    renames.emplace(v, nv);
                    vars.push_back(nv);
                } else {
                    st.used.insert(v);
                    vars.push_back(v);
                }
            }
            FormulaPtr body = rename_formula(f->kids()[0], renames);
            PrenexPart sub = prenex_rec(body, st);
            Quantifier q = f->kind() == Formula::Kind::Exists ? Quantifier::Exists
                                                              : Quantifier::Forall;
            sub.blocks.insert(sub.blocks.begin(), {q, std::move(vars)});
            return sub;
        }
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            std::vector<std::pair<Quantifier, std::vector<std::string>>> blocks;
            std::vector<FormulaPtr> matrices;
            for (const auto& k : f->kids()) {
                PrenexPart sub = prenex_rec(k, st);
                for (auto& b : sub.blocks) blocks.push_back(std::move(b));
                matrices.push_back(std::move(sub.matrix));
            }
            FormulaPtr matrix = f->kind() == Formula::Kind::And
                                    ? Formula::conj(fld, std::move(matrices))
                                    : Formula::disj(fld, std::move(matrices));
            return {std::move(blocks), std::move(matrix)};
        }
        case Formula::Kind::Not:
            throw Error("prenex expects NNF input");
    }
    throw Error("unreachable formula kind");
}

} // namespace

PrenexFormula to_prenex(const FormulaPtr& f) {
    FormulaPtr nnf = to_nnf(f);
    PrenexState st;
    // Free names are claimed up front; binders claim theirs on the way down,
    // so a binder colliding with anything already seen is renamed.
    for (const auto& v : free_variables(nnf)) st.used.insert(v);
    PrenexPart part = prenex_rec(nnf, st);
    // Merge adjacent blocks with the same quantifier and drop binders that no
    // longer occur in the matrix scope... binders are kept even if vacuous;
    // only adjacency merging happens here.
    std::vector<std::pair<Quantifier, std::vector<std::string>>> merged;
    for (auto& b : part.blocks) {
        if (!merged.empty() && merged.back().first == b.first) {
            for (auto& v : b.second) merged.back().second.push_back(std::move(v));
        } else {
            merged.push_back(std::move(b));
        }
    }
    return PrenexFormula{&f->field(), std::move(merged), std::move(part.matrix)};
}

FormulaPtr from_prenex(const PrenexFormula& pf) {
    FormulaPtr out = pf.matrix;
    for (auto it = pf.blocks.rbegin(); it != pf.blocks.rend(); ++it)
        out = Formula::quantify(it->first, it->second, out);
    return out;
}

bool eval_qfree(const FormulaPtr& f, const std::map<std::string, FieldElement>& point) {
    switch (f->kind()) {
        case Formula::Kind::True:
            return true;
        case Formula::Kind::False:
            return false;
        case Formula::Kind::Atom:
            return eval_term(f->atom_term(), f->field(), point).is_zero();
        case Formula::Kind::NegAtom:
            return !eval_term(f->atom_term(), f->field(), point).is_zero();
        case Formula::Kind::Not:
            return !eval_qfree(f->kids()[0], point);
        case Formula::Kind::And:
            for (const auto& k : f->kids())
                if (!eval_qfree(k, point)) return false;
            return true;
        case Formula::Kind::Or:
            for (const auto& k : f->kids())
                if (eval_qfree(k, point)) return true;
            return false;
        default:
            throw SemanticError("formula is not quantifier-free");
    }
}

namespace {
void validate_rec(const FormulaPtr& f, std::vector<std::string>& bound_stack) {
    if (f->is_atom()) {
        std::vector<std::string> vars;
        collect_variables(f->atom_term(), vars);
        for (const auto& v : vars)
            if (!v.empty() && v[0] == '_')
                throw SemanticError("identifier '" + v + "' is reserved");
        return;
    }
    if (f->kind() == Formula::Kind::Exists || f->kind() == Formula::Kind::Forall) {
        for (const auto& v : f->bound()) {
            if (!v.empty() && v[0] == '_')
                throw SemanticError("identifier '" + v + "' is reserved");
            if (std::find(bound_stack.begin(), bound_stack.end(), v) != bound_stack.end())
                throw SemanticError("variable '" + v + "' is bound twice on one path");
        }
        size_t mark = bound_stack.size();
        for (const auto& v : f->bound()) bound_stack.push_back(v);
        validate_rec(f->kids()[0], bound_stack);
        bound_stack.resize(mark);
        return;
    }
    for (const auto& k : f->kids()) validate_rec(k, bound_stack);
}
} // namespace

void validate_user_formula(const FormulaPtr& f) {
    std::vector<std::string> bound;
    validate_rec(f, bound);
}

size_t formula_size(const FormulaPtr& f) {
    size_t n = 1;
    for (const auto& k : f->kids()) n += formula_size(k);
    return n;
}

} // namespace ffqe
