#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ffqe/oracle.hpp"
#include "ffqe/parser.hpp"
#include "test_util.hpp"

using namespace ffqe;

TEST_CASE("parse basics") {
    const FieldSpec& f3 = make_field(3);
    FormulaPtr f = parse_formula("exists x. x = 0", f3);
    REQUIRE(f->kind() == Formula::Kind::Exists);
    CHECK(f->bound() == std::vector<std::string>{"x"});
    CHECK(f->kids()[0]->kind() == Formula::Kind::Atom);
    CHECK(term_str(f->kids()[0]->atom_term()) == "x");

    FormulaPtr g = parse_formula("x != y", f3);
    CHECK(g->kind() == Formula::Kind::NegAtom);
    CHECK(free_variables(g) == std::vector<std::string>{"x", "y"});
}

TEST_CASE("parse the quadratic/line example and its free variable") {
    const FieldSpec& f3 = make_field(3);
    FormulaPtr f = parse_formula(
        "exists b. forall a. exists y x. (y = a*x^2 + b*x + c /\\ y = a*x)", f3);
    CHECK(free_variables(f) == std::vector<std::string>{"c"});
    REQUIRE(f->kind() == Formula::Kind::Exists);
    REQUIRE(f->kids()[0]->kind() == Formula::Kind::Forall);
    const FormulaPtr& inner = f->kids()[0]->kids()[0];
    REQUIRE(inner->kind() == Formula::Kind::Exists);
    CHECK(inner->bound() == std::vector<std::string>{"y", "x"});
    CHECK(inner->kids()[0]->kind() == Formula::Kind::And);

    FormulaPtr closed = parse_formula("exists x. x = 0", f3);
    CHECK(free_variables(closed).empty());
}

TEST_CASE("parse errors carry a position") {
    const FieldSpec& f3 = make_field(3);
    CHECK_THROWS_AS(parse_formula("x !=", f3), ParseError);
    CHECK_THROWS_AS(parse_formula("exists . x = 0", f3), ParseError);
    CHECK_THROWS_AS(parse_formula("x = 0 /\\", f3), ParseError);
    CHECK_THROWS_AS(parse_formula("x = 0 )", f3), ParseError);
    try {
        parse_formula("x =\n 0 = 1", f3);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("semantic rejections") {
    const FieldSpec& f3 = make_field(3);
    CHECK_THROWS_AS(parse_formula("exists x. exists x. x = 0", f3), SemanticError);
    CHECK_THROWS_AS(parse_formula("exists x x. x = 0", f3), SemanticError);
    CHECK_THROWS_AS(parse_formula("_u1 = 0", f3), SemanticError);
    CHECK_THROWS_AS(parse_formula("exists _z. _z = 0", f3), SemanticError);
    const FieldSpec& f4 = make_field(2, 2);
    CHECK_THROWS_AS(parse_formula("exists w. w = 0", f4), SemanticError);
}

TEST_CASE("generator constant and implications desugar") {
    const FieldSpec& f4 = make_field(2, 2);
    FormulaPtr f = parse_formula("x = w + 1 -> x != w", f4);
    CHECK(f->kind() == Formula::Kind::Or);
    REQUIRE(f->kids().size() == 2);
    CHECK(f->kids()[0]->kind() == Formula::Kind::Not);

    FormulaPtr nnf = to_nnf(f);
    CHECK(nnf->kids()[0]->kind() == Formula::Kind::NegAtom);
}

TEST_CASE("comments and whitespace") {
    const FieldSpec& f3 = make_field(3);
    FormulaPtr f = parse_formula("# leading comment\n  x = 0 # trailing\n", f3);
    CHECK(f->kind() == Formula::Kind::Atom);
}

TEST_CASE("nnf: de morgan and quantifier duality") {
    const FieldSpec& f3 = make_field(3);
    FormulaPtr f = parse_formula("~(x = 0 /\\ y = 0)", f3);
    FormulaPtr nnf = to_nnf(f);
    REQUIRE(nnf->kind() == Formula::Kind::Or);
    CHECK(nnf->kids()[0]->kind() == Formula::Kind::NegAtom);
    CHECK(nnf->kids()[1]->kind() == Formula::Kind::NegAtom);

    FormulaPtr g = to_nnf(parse_formula("~(exists x. x = 0)", f3));
    REQUIRE(g->kind() == Formula::Kind::Forall);
    CHECK(g->kids()[0]->kind() == Formula::Kind::NegAtom);

    CHECK(formula_equal(to_nnf(parse_formula("~~(x = 0)", f3)),
                        parse_formula("x = 0", f3)));
}

TEST_CASE("prenex merges blocks and renames captures") {
    const FieldSpec& f3 = make_field(3);
    FormulaPtr f = parse_formula("(exists x. x = 0) /\\ (exists x. x = 1)", f3);
    PrenexFormula pf = to_prenex(f);
    REQUIRE(pf.blocks.size() == 1);
    CHECK(pf.blocks[0].first == Quantifier::Exists);
    CHECK(pf.blocks[0].second.size() == 2);
    CHECK(pf.blocks[0].second[0] == "x");
    CHECK(pf.blocks[0].second[1][0] == '_'); // renamed apart

    // adjacent blocks alternate
    FormulaPtr g = parse_formula(
        "exists b. forall a. exists y x. (y = a*x^2 + b*x + c /\\ y = a*x)", f3);
    PrenexFormula pg = to_prenex(g);
    REQUIRE(pg.blocks.size() == 3);
    for (size_t i = 1; i < pg.blocks.size(); ++i)
        CHECK(pg.blocks[i].first != pg.blocks[i - 1].first);
    // matrix is NNF and quantifier-free
    CHECK(pg.matrix->kind() == Formula::Kind::And);

    // capture: the bound x must not swallow the free x on the left
    FormulaPtr h = parse_formula("x = 1 /\\ (exists x. x = 0)", f3);
    PrenexFormula ph = to_prenex(h);
    REQUIRE(ph.blocks.size() == 1);
    CHECK(ph.blocks[0].second[0] != "x");
    CHECK(free_variables(from_prenex(ph)) == std::vector<std::string>{"x"});
}

TEST_CASE("nnf and prenex preserve the realization") {
    for (int q : {2, 3}) {
        const FieldSpec& f = make_field(q);
        auto rng = ffqe_test::make_rng(100 + q);
        for (int it = 0; it < 120; ++it) {
            FormulaPtr phi = ffqe_test::random_formula(rng, f);
            FormulaPtr nnf = to_nnf(phi);
            FormulaPtr pre = from_prenex(to_prenex(phi));
            CHECK(equivalent(phi, nnf, f));
            CHECK(equivalent(phi, pre, f));
        }
    }
}

TEST_CASE("print/parse is stable") {
    for (auto [p, r] : {std::pair<int, int>{3, 1}, {2, 2}}) {
        const FieldSpec& f = make_field(p, r);
        auto rng = ffqe_test::make_rng(200 + p + r);
        for (int it = 0; it < 150; ++it) {
            FormulaPtr phi = ffqe_test::random_formula(rng, f);
            std::string text = formula_str(phi);
            FormulaPtr reparsed = parse_formula(text, f);
            CHECK(formula_str(reparsed) == text);
            CHECK(formula_equal(reparsed, parse_formula(formula_str(reparsed), f)));
        }
    }
}

TEST_CASE("eval_qfree") {
    const FieldSpec& f3 = make_field(3);
    FormulaPtr f = parse_formula("x = 1 \\/ (x = 2 /\\ x != 0)", f3);
    auto at = [&](uint32_t v) {
        return eval_qfree(f, {{"x", FieldElement(f3, v)}});
    };
    CHECK_FALSE(at(0));
    CHECK(at(1));
    CHECK(at(2));
    CHECK_THROWS_AS(eval_qfree(parse_formula("exists x. x = 0", f3), {}),
                    SemanticError);
}

TEST_CASE("formula size counts syntax nodes") {
    const FieldSpec& f3 = make_field(3);
    CHECK(formula_size(parse_formula("x = 0", f3)) == 1);
    CHECK(formula_size(parse_formula("x = 0 /\\ y = 0", f3)) == 3);
}
