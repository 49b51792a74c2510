#include "ffqe/s2vd.hpp"

#include <filesystem>
#include <fstream>

#include "ffqe/errors.hpp"

namespace ffqe {

namespace {

std::vector<std::string> cells(int n) {
    std::vector<std::string> out;
    out.reserve(n);
    for (int i = 1; i <= n; ++i) out.push_back("y" + std::to_string(i));
    return out;
}

TermPtr var(const std::string& n) { return Term::variable(n); }

} // namespace

S2VDConfig s2vd_config() {
    const FieldSpec& f4 = make_field(2, 2, std::vector<int>{1, 1, 1});
    return S2VDConfig{&f4};
}

FieldElement S2VDConfig::white() const { return FieldElement(*field, 2); }
FieldElement S2VDConfig::yellow() const { return FieldElement(*field, 3); }

TermPtr dynamics_fx_term(const std::vector<std::string>& neighbors) {
    if (neighbors.size() != 6) throw SemanticError("dynamics take exactly six neighbors");
    S2VDConfig cfg = s2vd_config();
    std::vector<TermPtr> e1_args;
    for (const auto& n : neighbors) e1_args.push_back(var(n));
    TermPtr e1 = Term::add(std::move(e1_args));
    std::vector<TermPtr> e2_args;
    for (size_t i = 0; i < neighbors.size(); ++i)
        for (size_t j = i + 1; j < neighbors.size(); ++j)
            e2_args.push_back(Term::mul({var(neighbors[i]), var(neighbors[j])}));
    TermPtr e2 = Term::add(std::move(e2_args));
    TermPtr white_sq = Term::constant(cfg.white().pow(2));
    return Term::add(
        {Term::pow(e2, 2), Term::mul({e2, Term::pow(e1, 3)}),
         Term::mul({white_sq,
                    Term::add({Term::pow(e1, 3), Term::pow(e1, 2), e1})})});
}

Polynomial dynamics_fx(const std::vector<std::string>& neighbors) {
    S2VDConfig cfg = s2vd_config();
    RingPtr ring = make_ring(*cfg.field, neighbors);
    return expand_term(dynamics_fx_term(neighbors), ring);
}

TermPtr controller_gx(const std::vector<std::string>& cs) {
    if (cs.size() != 6 && cs.size() != 18)
        throw SemanticError("controller takes six or eighteen cells");
    S2VDConfig cfg = s2vd_config();
    TermPtr one = Term::constant(FieldElement::one(*cfg.field));
    std::vector<TermPtr> factors;
    factors.reserve(cs.size());
    for (const auto& c : cs) factors.push_back(Term::pow(Term::sub(one, var(c)), 3));
    return Term::mul(std::move(factors));
}

TermPtr controlled_update(const std::vector<std::string>& cs) {
    std::vector<std::string> first_ring(cs.begin(), cs.begin() + 6);
    return Term::mul({dynamics_fx_term(first_ring), controller_gx(cs)});
}

TermPtr green_or_white(const std::string& v) {
    S2VDConfig cfg = s2vd_config();
    return Term::mul({var(v), Term::sub(var(v), Term::constant(cfg.white()))});
}

TermPtr non_red(const std::string& v) {
    S2VDConfig cfg = s2vd_config();
    // w^2 canonicalizes to w+1
    return Term::mul({var(v), Term::sub(var(v), Term::constant(cfg.white())),
                      Term::sub(var(v), Term::constant(cfg.yellow()))});
}

namespace {

FormulaPtr eq(const FieldSpec& f, TermPtr lhs, TermPtr rhs) {
    if (rhs->kind() == Term::Kind::Constant && rhs->value().is_zero())
        return Formula::atom(f, std::move(lhs));
    return Formula::atom(f, Term::sub(std::move(lhs), std::move(rhs)));
}

} // namespace

FormulaPtr build_phi1() {
    S2VDConfig cfg = s2vd_config();
    const FieldSpec& f = *cfg.field;
    auto ys = cells(18);
    std::vector<FormulaPtr> matrix;
    // cells beyond the boundary are white
    for (int i : {8, 9, 10, 11, 12})
        matrix.push_back(eq(f, var("y" + std::to_string(i)), Term::constant(cfg.white())));
    matrix.push_back(eq(f, var("y2"), Term::constant(cfg.white())));
    matrix.push_back(eq(f, var("y3"), Term::constant(cfg.white())));
    // safety assumption on the inner cells
    for (int i : {1, 4, 7, 13})
        matrix.push_back(Formula::atom(f, green_or_white("y" + std::to_string(i))));
    // the controlled update
    matrix.push_back(eq(f, var("x"), controlled_update(ys)));
    return Formula::exists(ys, Formula::conj(f, std::move(matrix)));
}

FormulaPtr build_phi2() {
    S2VDConfig cfg = s2vd_config();
    const FieldSpec& f = *cfg.field;
    auto ys = cells(18);
    std::vector<FormulaPtr> matrix;
    for (const auto& y : ys) matrix.push_back(Formula::atom(f, non_red(y)));
    matrix.push_back(eq(f, var("x"), controlled_update(ys)));
    return Formula::exists(ys, Formula::conj(f, std::move(matrix)));
}

FormulaPtr build_phi3() {
    S2VDConfig cfg = s2vd_config();
    const FieldSpec& f = *cfg.field;
    auto ys = cells(6);
    std::vector<FormulaPtr> matrix;
    matrix.push_back(eq(f, var("x"), Term::constant(cfg.red())));
    for (const auto& y : ys) matrix.push_back(Formula::atom(f, non_red(y)));
    matrix.push_back(eq(f, var("x"), controlled_update(ys)));
    FormulaPtr body = Formula::conj(f, std::move(matrix));
    return Formula::exists(cells(6), Formula::exists({"x"}, body));
}

FormulaPtr build_phi1_check() {
    S2VDConfig cfg = s2vd_config();
    const FieldSpec& f = *cfg.field;
    FormulaPtr safe = Formula::atom(f, green_or_white("x"));
    return Formula::forall({"x"},
                           Formula::disj(f, {Formula::negate(build_phi1()), safe}));
}

FormulaPtr build_phi2_check() {
    S2VDConfig cfg = s2vd_config();
    const FieldSpec& f = *cfg.field;
    FormulaPtr not_red = Formula::negate(eq(f, var("x"), Term::constant(cfg.red())));
    return Formula::forall({"x"},
                           Formula::disj(f, {Formula::negate(build_phi2()), not_red}));
}

FormulaPtr build_phi1_reduced() {
    S2VDConfig cfg = s2vd_config();
    const FieldSpec& f = *cfg.field;
    auto ys = cells(6);
    std::vector<FormulaPtr> matrix;
    matrix.push_back(eq(f, var("y2"), Term::constant(cfg.white())));
    matrix.push_back(eq(f, var("y3"), Term::constant(cfg.white())));
    for (int i : {1, 4})
        matrix.push_back(Formula::atom(f, green_or_white("y" + std::to_string(i))));
    matrix.push_back(eq(f, var("x"), controlled_update(ys)));
    return Formula::exists(ys, Formula::conj(f, std::move(matrix)));
}

FormulaPtr build_phi2_reduced() {
    S2VDConfig cfg = s2vd_config();
    const FieldSpec& f = *cfg.field;
    auto ys = cells(6);
    std::vector<FormulaPtr> matrix;
    for (const auto& y : ys) matrix.push_back(Formula::atom(f, non_red(y)));
    matrix.push_back(eq(f, var("x"), controlled_update(ys)));
    return Formula::exists(ys, Formula::conj(f, std::move(matrix)));
}

std::string walkthrough_text() {
    return "# Three alternating blocks over F_3 with one free variable c.\n"
           "exists b. forall a. exists y x. (y = a*x^2 + b*x + c /\\ y = a*x)\n";
}

namespace {

std::string write_file(const std::string& dir, const std::string& name,
                       const std::string& body) {
    std::filesystem::create_directories(dir);
    std::string path = dir + "/" + name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << body;
    return path;
}

std::string fol(const FormulaPtr& f, const std::string& comment) {
    return "# " + comment + "\n" + formula_str(f) + "\n";
}

} // namespace

std::vector<std::string> write_s2vd_corpus(const std::string& dir) {
    std::vector<std::string> written;
    written.push_back(write_file(
        dir, "phi1.fol",
        fol(build_phi1(), "boundary update under the white/safety assumptions; free x")));
    written.push_back(write_file(
        dir, "phi1_check.fol",
        fol(build_phi1_check(), "the boundary stays green or white (decide)")));
    written.push_back(write_file(
        dir, "phi2.fol", fol(build_phi2(), "update of a fully non-red patch; free x")));
    written.push_back(write_file(
        dir, "phi2_check.fol",
        fol(build_phi2_check(), "non-red cells never produce red (decide)")));
    written.push_back(write_file(
        dir, "phi3.fol",
        fol(build_phi3(), "six non-red neighbors driving the cell red (decide)")));
    written.push_back(write_file(dir, "phi1_reduced.fol",
                                 fol(build_phi1_reduced(), "one-ring variant of phi1")));
    written.push_back(write_file(dir, "phi2_reduced.fol",
                                 fol(build_phi2_reduced(), "one-ring variant of phi2")));
    return written;
}

std::vector<std::string> write_walkthrough_corpus(const std::string& dir) {
    return {write_file(dir, "walkthrough.fol", walkthrough_text())};
}

} // namespace ffqe
