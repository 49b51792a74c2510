#include "ffqe/engine.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <set>

#include "ffqe/errors.hpp"

namespace ffqe {

namespace {

using Block = std::pair<Quantifier, std::vector<std::string>>;

struct EngineState {
    const FieldSpec* field;
    std::vector<Block> blocks; // outermost first
    FormulaPtr matrix;         // quantifier-free NNF
    std::vector<std::string> free_vars;
    FreshNames fresh;
    const EngineOptions* opts;
    QETrace* trace;
};

FormulaPtr atom_fold(Polynomial p) {
    const FieldSpec& f = *p.ring()->field;
    if (p.is_zero()) return Formula::tru(f);
    if (p.is_constant()) return Formula::fls(f);
    return Formula::atom(std::move(p));
}

FormulaPtr neg_atom_fold(Polynomial p) {
    const FieldSpec& f = *p.ring()->field;
    if (p.is_zero()) return Formula::fls(f);
    if (p.is_constant()) return Formula::tru(f);
    return Formula::neg_atom(std::move(p));
}

// Ranked list of the variables the rounds still have to deal with: inner
// blocks first, free variables last.
std::vector<std::string> kept_names(const EngineState& st, size_t drop_blocks) {
    std::vector<std::string> out;
    for (size_t i = st.blocks.size() - drop_blocks; i-- > 0;)
        for (const auto& v : st.blocks[i].second) out.push_back(v);
    for (const auto& v : st.free_vars) out.push_back(v);
    return out;
}

MonomialOrder round_order(const EngineOptions& opts, size_t cut, size_t total) {
    if (opts.order_kind == MonomialOrder::Kind::Block && cut > 0 && cut < total)
        return MonomialOrder::block({cut});
    return MonomialOrder::lex();
}

// Converts the flattened conjuncts to polynomials, smallest first, reducing
// each against the ones already converted (plus eager exponent reduction).
// Reduction by fellow generators keeps product-heavy conjuncts near their
// reduced size instead of their raw expansion.
std::vector<Polynomial> expand_conjuncts(const std::vector<TermPtr>& conjuncts,
                                         const RingPtr& ring, const Budget& budget) {
    std::vector<size_t> idx(conjuncts.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<uint64_t> est(conjuncts.size());
    for (size_t i = 0; i < conjuncts.size(); ++i) est[i] = term_estimate(conjuncts[i]);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](size_t a, size_t b) { return est[a] < est[b]; });

    std::vector<Polynomial> reducers;
    std::vector<Polynomial> out(conjuncts.size(), Polynomial::zero(ring));
    for (size_t i : idx) {
        ExpandOptions eo;
        eo.reducers = &reducers;
        eo.budget = &budget;
        Polynomial p = expand_term(conjuncts[i], ring, eo);
        if (!p.is_zero() && !p.is_constant()) reducers.push_back(p);
        out[i] = std::move(p);
    }
    return out;
}

// One existential round: flatten the matrix, eliminate the innermost block
// together with all fresh variables through one basis computation, and
// replace the matrix by the conjunction of the elimination basis.
void round_existential(EngineState& st) {
    auto t0 = std::chrono::steady_clock::now();
    RoundStats stats;
    stats.quantifier = Quantifier::Exists;
    stats.block_vars = st.blocks.back().second.size();
    stats.matrix_size_in = formula_size(st.matrix);

    FlattenResult fl = flatten_matrix(st.matrix, st.fresh);
    stats.fresh_negation = fl.fresh_u.size();
    stats.fresh_disjunction = fl.fresh_v.size();

    std::vector<std::string> kept = kept_names(st, 1);
    std::vector<std::string> names;
    for (const auto& v : fl.fresh_u) names.push_back(v);
    for (const auto& v : fl.fresh_v) names.push_back(v);
    for (const auto& v : st.blocks.back().second) names.push_back(v);
    size_t cut = names.size();
    for (const auto& v : kept) names.push_back(v);

    RingPtr ring =
        make_ring(*st.field, names, round_order(*st.opts, cut, names.size()));
    std::vector<Polynomial> gens = expand_conjuncts(fl.conjuncts, ring, st.opts->budget);
    Ideal J(ring, std::move(gens));
    J = add_field_polynomials(J, names);
    GroebnerBasis G = buchberger(J, &st.opts->budget);
    std::vector<Polynomial> basis = eliminate(G, cut);

    RingPtr kept_ring = make_ring(*st.field, kept);
    std::vector<FormulaPtr> conjuncts;
    conjuncts.reserve(basis.size());
    for (const auto& g : basis) conjuncts.push_back(atom_fold(reindex(g, kept_ring)));
    st.matrix = Formula::conj_fold(*st.field, std::move(conjuncts));
    st.blocks.pop_back();

    if (st.trace) {
        stats.bases.push_back(std::move(basis));
        stats.millis = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
        st.trace->rounds.push_back(std::move(stats));
    }
}

// One universal round over a conjunction of equations: each conjunct g is
// handled through the inversion trick (g*z - 1 with fresh z), eliminating the
// block from "exists z, block. g*z - 1 = 0" and negating the outcome into a
// clause of disequations.
void round_universal(EngineState& st) {
    auto t0 = std::chrono::steady_clock::now();
    RoundStats stats;
    stats.quantifier = Quantifier::Forall;
    stats.block_vars = st.blocks.back().second.size();
    stats.matrix_size_in = formula_size(st.matrix);

    std::vector<std::string> kept = kept_names(st, 1);
    RingPtr kept_ring = make_ring(*st.field, kept);
    const std::vector<std::string>& block = st.blocks.back().second;
    RingPtr base_ring = make_ring(*st.field, kept_names(st, 0));

    std::vector<Polynomial> conjuncts;
    auto grab_atom = [&](const FormulaPtr& a) {
        if (a->kind() != Formula::Kind::Atom)
            throw Error("universal round expects a conjunction of equations");
        if (a->atom_poly())
            conjuncts.push_back(reindex(*a->atom_poly(), base_ring));
        else
            conjuncts.push_back(expand_term(a->atom_term(), base_ring));
    };
    if (st.matrix->kind() == Formula::Kind::And) {
        for (const auto& k : st.matrix->kids()) grab_atom(k);
    } else if (st.matrix->kind() == Formula::Kind::True) {
        // nothing to do
    } else {
        grab_atom(st.matrix);
    }

    std::vector<FormulaPtr> clauses;
    clauses.reserve(conjuncts.size());
    for (const auto& g : conjuncts) {
        std::string z = st.fresh.z();
        std::vector<std::string> names;
        names.push_back(z);
        for (const auto& v : block) names.push_back(v);
        size_t cut = names.size();
        for (const auto& v : kept) names.push_back(v);
        RingPtr ring =
            make_ring(*st.field, names, round_order(*st.opts, cut, names.size()));

        Polynomial gen = reindex(g, ring) * Polynomial::variable(ring, z) -
                         Polynomial::constant(ring, 1u);
        Ideal J(ring, {std::move(gen)});
        J = add_field_polynomials(J, names);
        GroebnerBasis G = buchberger(J, &st.opts->budget);
        std::vector<Polynomial> h = eliminate(G, cut);

        std::vector<FormulaPtr> literals;
        literals.reserve(h.size());
        for (const auto& hj : h) literals.push_back(neg_atom_fold(reindex(hj, kept_ring)));
        clauses.push_back(Formula::disj_fold(*st.field, std::move(literals)));
        if (st.trace) stats.bases.push_back(std::move(h));
    }
    st.matrix = Formula::conj_fold(*st.field, std::move(clauses));
    st.blocks.pop_back();

    if (st.trace) {
        stats.millis = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
        st.trace->rounds.push_back(std::move(stats));
    }
}

// Checks the override ranks every variable, respects the stratum layering,
// and reorders each stratum in place.
void apply_order_override(std::vector<Block>& blocks, std::vector<std::string>& frees,
                          const std::vector<std::string>& order) {
    std::map<std::string, size_t> pos;
    for (size_t i = 0; i < order.size(); ++i)
        if (!pos.emplace(order[i], i).second)
            throw SemanticError("variable '" + order[i] + "' listed twice in the order");
    size_t total = frees.size();
    for (const auto& b : blocks) total += b.second.size();
    if (pos.size() != total)
        throw SemanticError("variable order must rank every formula variable exactly once");
    auto rank_of = [&](const std::string& v) {
        auto it = pos.find(v);
        if (it == pos.end())
            throw SemanticError("variable order misses '" + v + "'");
        return it->second;
    };
    // Strata from innermost block to free variables must occupy increasing
    // rank ranges.
    size_t prev_max = 0;
    bool first = true;
    auto check_stratum = [&](const std::vector<std::string>& vars) {
        if (vars.empty()) return;
        size_t lo = order.size(), hi = 0;
        for (const auto& v : vars) {
            size_t p = rank_of(v);
            lo = std::min(lo, p);
            hi = std::max(hi, p);
        }
        if (!first && lo < prev_max)
            throw SemanticError(
                "variable order conflicts with the quantifier structure");
        prev_max = std::max(prev_max, hi);
        first = false;
    };
    for (size_t i = blocks.size(); i-- > 0;) check_stratum(blocks[i].second);
    check_stratum(frees);

    auto sort_by_rank = [&](std::vector<std::string>& vars) {
        std::sort(vars.begin(), vars.end(), [&](const std::string& a, const std::string& b) {
            return rank_of(a) < rank_of(b);
        });
    };
    for (auto& b : blocks) sort_by_rank(b.second);
    sort_by_rank(frees);
}

FormulaPtr qe_core(EngineState& st) {
    while (!st.blocks.empty()) {
        if (st.matrix->kind() == Formula::Kind::True ||
            st.matrix->kind() == Formula::Kind::False) {
            // A constant matrix absorbs every remaining quantifier.
            st.blocks.clear();
            break;
        }
        if (st.blocks.back().first == Quantifier::Exists)
            round_existential(st);
        else
            round_universal(st);
    }
    return st.matrix;
}

Polynomial atom_as_polynomial(const FormulaPtr& atom) {
    if (atom->atom_poly()) return *atom->atom_poly();
    std::vector<std::string> vars;
    collect_variables(atom->atom_term(), vars);
    RingPtr ring = make_ring(atom->field(), vars);
    return expand_term(atom->atom_term(), ring);
}

FormulaPtr simplify_formula(const FormulaPtr& f) {
    const FieldSpec& fld = f->field();
    switch (f->kind()) {
        case Formula::Kind::True:
        case Formula::Kind::False:
            return f;
        case Formula::Kind::Atom:
        case Formula::Kind::NegAtom: {
            Polynomial p = atom_as_polynomial(f).reduce_exponents_by_field_polys();
            return f->kind() == Formula::Kind::Atom ? atom_fold(std::move(p))
                                                    : neg_atom_fold(std::move(p));
        }
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            std::vector<FormulaPtr> kids;
            for (const auto& k : f->kids()) kids.push_back(simplify_formula(k));
            return f->kind() == Formula::Kind::And
                       ? Formula::conj_fold(fld, std::move(kids))
                       : Formula::disj_fold(fld, std::move(kids));
        }
        case Formula::Kind::Not:
            return to_nnf(Formula::negate(simplify_formula(f->kids()[0])));
        default:
            throw SemanticError("cannot simplify a quantified formula");
    }
}

bool conjunction_of_equations(const FormulaPtr& f) {
    if (f->kind() == Formula::Kind::True || f->kind() == Formula::Kind::False) return true;
    if (f->kind() == Formula::Kind::Atom) return true;
    if (f->kind() != Formula::Kind::And) return false;
    for (const auto& k : f->kids())
        if (k->kind() != Formula::Kind::Atom) return false;
    return true;
}

bool cnf_shaped(const FormulaPtr& f) {
    auto literal = [](const FormulaPtr& g) { return g->is_atom(); };
    auto clause = [&](const FormulaPtr& g) {
        if (literal(g)) return true;
        if (g->kind() != Formula::Kind::Or) return false;
        for (const auto& k : g->kids())
            if (!literal(k)) return false;
        return true;
    };
    if (f->kind() == Formula::Kind::True || f->kind() == Formula::Kind::False) return true;
    if (clause(f)) return true;
    if (f->kind() != Formula::Kind::And) return false;
    for (const auto& k : f->kids())
        if (!clause(k)) return false;
    return true;
}

// A flatten-and-eliminate pass with no quantified block: turns an arbitrary
// quantifier-free formula into a conjunction of equations over its own free
// variables.
FormulaPtr restore_cnf(const FormulaPtr& f, const EngineOptions& opts) {
    const FieldSpec& fld = f->field();
    FreshNames fresh;
    FlattenResult fl = flatten_matrix(to_nnf(f), fresh);
    std::vector<std::string> frees = free_variables(f);
    std::vector<std::string> names;
    for (const auto& v : fl.fresh_u) names.push_back(v);
    for (const auto& v : fl.fresh_v) names.push_back(v);
    size_t cut = names.size();
    for (const auto& v : frees) names.push_back(v);
    RingPtr ring = make_ring(fld, names, round_order(opts, cut, names.size()));
    std::vector<Polynomial> gens = expand_conjuncts(fl.conjuncts, ring, opts.budget);
    Ideal J(ring, std::move(gens));
    J = add_field_polynomials(J, names);
    GroebnerBasis G = buchberger(J, &opts.budget);
    std::vector<Polynomial> basis = eliminate(G, cut);
    RingPtr free_ring = make_ring(fld, frees);
    std::vector<FormulaPtr> conjuncts;
    for (const auto& g : basis) conjuncts.push_back(atom_fold(reindex(g, free_ring)));
    return Formula::conj_fold(fld, std::move(conjuncts));
}

QEOutput qe_with_trace(const FormulaPtr& f, const EngineOptions& opts, QETrace* trace);

// Core run on a prenex form whose innermost block is existential (or with no
// blocks at all).
FormulaPtr run_prenex(PrenexFormula pf, const EngineOptions& opts, QETrace* trace) {
    EngineState st;
    st.field = pf.field;
    st.blocks = std::move(pf.blocks);
    st.matrix = pf.matrix;
    st.opts = &opts;
    st.trace = trace;
    // free variables: everything free in the matrix that is not bound
    std::set<std::string> bound;
    for (const auto& b : st.blocks)
        for (const auto& v : b.second) bound.insert(v);
    for (const auto& v : free_variables(st.matrix))
        if (!bound.count(v)) st.free_vars.push_back(v);
    if (opts.order_override)
        apply_order_override(st.blocks, st.free_vars, *opts.order_override);
    return qe_core(st);
}

QEOutput qe_with_trace(const FormulaPtr& f, const EngineOptions& opts, QETrace* trace) {
    PrenexFormula pf = to_prenex(f);
    FormulaPtr out;
    if (pf.blocks.empty()) {
        out = pf.matrix;
    } else if (pf.blocks.back().first == Quantifier::Forall) {
        // Innermost universal: eliminate on the negation and negate back.
        if (trace) trace->negation_wrapped = true;
        PrenexFormula npf = to_prenex(Formula::negate(f));
        FormulaPtr inner = run_prenex(std::move(npf), opts, trace);
        out = to_nnf(Formula::negate(inner));
    } else {
        out = run_prenex(std::move(pf), opts, trace);
    }
    if (opts.cnf && !cnf_shaped(out)) out = restore_cnf(out, opts);
    if (opts.simplify) out = simplify_formula(out);
    QEOutput res;
    res.formula = out;
    res.cnf_shape = cnf_shaped(out);
    if (trace) res.trace = *trace;
    return res;
}

} // namespace

QEOutput qe(const FormulaPtr& f, const EngineOptions& opts) {
    if (opts.collect_trace) {
        QETrace trace;
        return qe_with_trace(f, opts, &trace);
    }
    return qe_with_trace(f, opts, nullptr);
}

bool decide(const FormulaPtr& f, const EngineOptions& opts) {
    if (!free_variables(f).empty())
        throw SemanticError("decide requires a closed formula");
    QEOutput out = qe(f, opts);
    return eval_qfree(out.formula, {});
}

std::optional<Assignment> witness(const FormulaPtr& f, const EngineOptions& opts) {
    // Peel the existential prefix; the rest must be quantifier-free.
    std::vector<std::string> bound;
    FormulaPtr body = f;
    while (body->kind() == Formula::Kind::Exists) {
        for (const auto& v : body->bound()) bound.push_back(v);
        body = body->kids()[0];
    }
    auto no_quant = [&](const FormulaPtr& g) {
        struct Walk {
            bool ok = true;
            void operator()(const FormulaPtr& h) {
                if (h->kind() == Formula::Kind::Exists ||
                    h->kind() == Formula::Kind::Forall) {
                    ok = false;
                    return;
                }
                for (const auto& k : h->kids()) (*this)(k);
            }
        } w;
        w(g);
        return w.ok;
    };
    if (bound.empty() || !no_quant(body))
        throw SemanticError(
            "witness requires an outermost existential block over a quantifier-free body");

    std::vector<std::string> vars = bound;
    for (const auto& v : free_variables(body))
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);

    auto found = find_satisfying(body, vars, f->field(), opts.enumeration_bound);
    if (!found) return std::nullopt;
    // verify before returning
    Assignment point = *found;
    if (!eval_qfree(body, point)) throw Error("internal: witness failed verification");
    return found;
}

PrenexFormula eliminate_innermost_existential(const PrenexFormula& pf,
                                              const EngineOptions& opts) {
    if (pf.blocks.empty() || pf.blocks.back().first != Quantifier::Exists)
        throw SemanticError("innermost block is not existential");
    EngineState st;
    st.field = pf.field;
    st.blocks = pf.blocks;
    st.matrix = pf.matrix;
    st.opts = &opts;
    st.trace = nullptr;
    std::set<std::string> bound;
    for (const auto& b : st.blocks)
        for (const auto& v : b.second) bound.insert(v);
    for (const auto& v : free_variables(st.matrix))
        if (!bound.count(v)) st.free_vars.push_back(v);
    round_existential(st);
    return PrenexFormula{st.field, st.blocks, st.matrix};
}

PrenexFormula eliminate_innermost_universal(const PrenexFormula& pf,
                                            const EngineOptions& opts) {
    if (pf.blocks.empty() || pf.blocks.back().first != Quantifier::Forall)
        throw SemanticError("innermost block is not universal");
    if (!conjunction_of_equations(pf.matrix))
        throw Error("universal round expects a conjunction of equations");
    EngineState st;
    st.field = pf.field;
    st.blocks = pf.blocks;
    st.matrix = pf.matrix;
    st.opts = &opts;
    st.trace = nullptr;
    std::set<std::string> bound;
    for (const auto& b : st.blocks)
        for (const auto& v : b.second) bound.insert(v);
    for (const auto& v : free_variables(st.matrix))
        if (!bound.count(v)) st.free_vars.push_back(v);
    round_universal(st);
    return PrenexFormula{st.field, st.blocks, st.matrix};
}

} // namespace ffqe
