#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ffqe/groebner.hpp"
#include "ffqe/oracle.hpp"
#include "ffqe/parser.hpp"
#include "test_util.hpp"

using namespace ffqe;

TEST_CASE("field polynomial realizes the whole line, 1=0 nothing") {
    for (auto [p, r] : {std::pair<int, int>{2, 1}, {3, 1}, {2, 2}}) {
        const FieldSpec& f = make_field(p, r);
        Realization all = realization(parse_formula("x^" + std::to_string(f.q()) +
                                                         " - x = 0",
                                                     f),
                                      f);
        CHECK(all.count() == f.q());
        Realization none = realization_over(parse_formula("1 = 0", f), {"x"}, f);
        CHECK(none.count() == 0);
    }
}

TEST_CASE("walkthrough formula realizes every value of c") {
    const FieldSpec& f3 = make_field(3);
    FormulaPtr f = parse_formula(
        "exists b. forall a. exists y x. (y = a*x^2 + b*x + c /\\ y = a*x)", f3);
    Realization r = realization(f, f3);
    CHECK(r.vars == std::vector<std::string>{"c"});
    CHECK(r.count() == 3);
}

TEST_CASE("projection drops coordinates and deduplicates") {
    const FieldSpec& f2 = make_field(2);
    Realization r;
    r.field = &f2;
    r.vars = {"x", "y"};
    // points (0,0), (1,0), (1,1): codes x + 2y
    r.codes = {0, 1, 3};
    Realization same = project(r, {});
    CHECK(same.codes == r.codes);
    Realization py = project(r, {"x"});
    CHECK(py.vars == std::vector<std::string>{"y"});
    CHECK(py.codes == std::vector<uint64_t>{0, 1});
    CHECK_THROWS_AS(project(r, {"nope"}), Error);
}

TEST_CASE("equivalence") {
    const FieldSpec& f3 = make_field(3);
    FormulaPtr a = parse_formula("c^3 - c = 0", f3);
    CHECK(equivalent(a, a, f3));
    CHECK(equivalent(a, parse_formula("true", f3), f3));
    const FieldSpec& f2 = make_field(2);
    CHECK_FALSE(equivalent(parse_formula("x = 0", f2), parse_formula("x = 1", f2), f2));
    // mismatched free variables range universally on both sides
    CHECK_FALSE(equivalent(parse_formula("x = 0", f2), parse_formula("y = 0", f2), f2));
    CHECK(equivalent(parse_formula("x = 0 \\/ x = 1", f2), parse_formula("y^2 - y = 0", f2),
                     f2));
}

TEST_CASE("oracle truth matches pointwise evaluation") {
    const FieldSpec& f3 = make_field(3);
    auto rng = ffqe_test::make_rng(300);
    for (int it = 0; it < 100; ++it) {
        FormulaPtr f = ffqe_test::random_qfree(rng, f3, {"x", "y"}, 4);
        Realization r = realization(f, f3);
        auto frees = free_variables(f);
        std::uniform_int_distribution<uint32_t> d(0, 2);
        for (int k = 0; k < 5; ++k) {
            Assignment a;
            for (const auto& v : frees) a.emplace(v, FieldElement(f3, d(rng)));
            if (frees.empty()) break;
            CHECK(r.contains(a) == eval_qfree(f, a));
        }
    }
}

TEST_CASE("forall equals not-exists-not") {
    for (int q : {2, 3}) {
        const FieldSpec& f = make_field(q);
        auto rng = ffqe_test::make_rng(310 + q);
        for (int it = 0; it < 80; ++it) {
            FormulaPtr body = ffqe_test::random_qfree(rng, f, {"x", "y"}, 3);
            FormulaPtr fa = Formula::forall({"x"}, body);
            FormulaPtr ne = Formula::negate(
                Formula::exists({"x"}, Formula::negate(body)));
            CHECK(equivalent(fa, ne, f));
        }
    }
}

TEST_CASE("adding field polynomials does not change the realization") {
    for (int q : {2, 3}) {
        const FieldSpec& f = make_field(q);
        auto rng = ffqe_test::make_rng(320 + q);
        std::string fp_x = "x^" + std::to_string(q) + " - x = 0";
        std::string fp_y = "y^" + std::to_string(q) + " - y = 0";
        for (int it = 0; it < 60; ++it) {
            FormulaPtr psi = ffqe_test::random_qfree(rng, f, {"x", "y"}, 4);
            FormulaPtr with = Formula::conj(
                f, {psi, parse_formula(fp_x, f), parse_formula(fp_y, f)});
            std::vector<std::string> universe{"x", "y"};
            CHECK(realization_over(psi, universe, f).codes ==
                  realization_over(with, universe, f).codes);
        }
    }
}

TEST_CASE("conjunction of atoms realizes the variety of the generated ideal") {
    const FieldSpec& f3 = make_field(3);
    auto rng = ffqe_test::make_rng(330);
    auto ring = make_ring(f3, {"x", "y"});
    for (int it = 0; it < 60; ++it) {
        TermPtr t1 = ffqe_test::random_term(rng, f3, {"x", "y"});
        TermPtr t2 = ffqe_test::random_term(rng, f3, {"x", "y"});
        FormulaPtr conj = Formula::conj(f3, {Formula::atom(f3, t1), Formula::atom(f3, t2)});
        Realization r = realization_over(conj, {"x", "y"}, f3);
        Polynomial p1 = expand_term(t1, ring), p2 = expand_term(t2, ring);
        std::vector<uint64_t> vcodes;
        for (uint32_t xa = 0; xa < 3; ++xa)
            for (uint32_t ya = 0; ya < 3; ++ya) {
                std::vector<FieldElement> pt{FieldElement(f3, xa), FieldElement(f3, ya)};
                if (p1.evaluate(pt).is_zero() && p2.evaluate(pt).is_zero())
                    vcodes.push_back(xa + 3 * ya);
            }
        std::sort(vcodes.begin(), vcodes.end());
        CHECK(r.codes == vcodes);
    }
}

TEST_CASE("enumeration bound is enforced") {
    const FieldSpec& f5 = make_field(5);
    FormulaPtr f = parse_formula("x = 0 /\\ y = 0 /\\ z = 0", f5);
    CHECK_THROWS_AS(realization(f, f5, 100), BoundExceeded);
    CHECK_NOTHROW(realization(f, f5, 125));
}

TEST_CASE("find_satisfying returns the first point in enumeration order") {
    const FieldSpec& f3 = make_field(3);
    FormulaPtr f = parse_formula("x != 0 /\\ y = x", f3);
    auto a = find_satisfying(f, {"x", "y"}, f3);
    REQUIRE(a.has_value());
    CHECK(a->at("x").code() == 1);
    CHECK(a->at("y").code() == 1);
    CHECK_FALSE(find_satisfying(parse_formula("x = 0 /\\ x = 1", f3), {"x"}, f3));
}

TEST_CASE("naive quantifier-free equivalent lists the points") {
    const FieldSpec& f2 = make_field(2);
    FormulaPtr f = parse_formula("exists y. (x = y /\\ y = 1)", f2);
    Realization r = realization(f, f2);
    FormulaPtr listed = naive_qe_formula(r);
    CHECK(equivalent(f, listed, f2));
    // closed formulas become boolean constants
    Realization closed = realization(parse_formula("exists x. x = 0", f2), f2);
    CHECK(naive_qe_formula(closed)->kind() == Formula::Kind::True);
}
