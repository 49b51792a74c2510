#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ffqe/polynomial.hpp"
#include "test_util.hpp"

using namespace ffqe;

namespace {

Polynomial rand_poly(std::mt19937_64& rng, const RingPtr& ring, int max_terms = 4,
                     uint32_t max_exp = 2) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<uint32_t> exp(0, max_exp);
    std::uniform_int_distribution<uint32_t> coeff(0, ring->field->q() - 1);
    std::vector<Polynomial::Term> terms;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        Monomial m = Monomial::one(ring->vars->size());
        for (auto& e : m.exps) e = exp(rng);
        terms.emplace_back(std::move(m), coeff(rng));
    }
    return Polynomial::from_terms(ring, std::move(terms));
}

std::vector<std::vector<FieldElement>> all_points(const FieldSpec& f, size_t n) {
    std::vector<std::vector<FieldElement>> out;
    std::vector<uint32_t> digits(n, 0);
    for (;;) {
        std::vector<FieldElement> pt;
        pt.reserve(n);
        for (auto d : digits) pt.emplace_back(f, d);
        out.push_back(std::move(pt));
        size_t i = 0;
        while (i < n && ++digits[i] == f.q()) digits[i++] = 0;
        if (i == n) break;
    }
    return out;
}

} // namespace

TEST_CASE("ring arithmetic basics") {
    const FieldSpec& f3 = make_field(3);
    auto ring = make_ring(f3, {"x"});
    Polynomial x = Polynomial::variable(ring, "x");
    Polynomial one = Polynomial::constant(ring, 1u);
    Polynomial two = Polynomial::constant(ring, 2u);

    // (x+1)(x+2) = x^2 + 3x + 2 = x^2 + 2 over F_3
    Polynomial prod = (x + one) * (x + two);
    CHECK(prod == parse_polynomial(ring, "x^2 + 2"));

    CHECK(prod + Polynomial::zero(ring) == prod);

    const FieldSpec& f2 = make_field(2);
    auto ring2 = make_ring(f2, {"x", "y"});
    Polynomial xy = parse_polynomial(ring2, "x + y");
    CHECK(xy.pow(2) == parse_polynomial(ring2, "x^2 + y^2"));
}

TEST_CASE("leading terms under lex") {
    const FieldSpec& f3 = make_field(3);
    auto ring = make_ring(f3, {"x", "y"});
    Polynomial f = parse_polynomial(ring, "x*y^2 + y^5");
    auto [m, c] = f.leading_term();
    CHECK(c.is_one());
    CHECK(m.exps == std::vector<uint32_t>{1, 2});

    Polynomial k = Polynomial::constant(ring, 2u);
    auto [m2, c2] = k.leading_term();
    CHECK(m2.is_one());
    CHECK(c2.code() == 2);

    // leading monomial of the opening generator of the worked example
    auto ring5 = make_ring(f3, {"x", "y", "a", "b", "c"});
    Polynomial g = parse_polynomial(ring5, "a*b*c + a*c^2 + b^2*c - c");
    CHECK(g.leading_monomial().exps == std::vector<uint32_t>{0, 0, 1, 1, 1});

    CHECK_THROWS_AS(Polynomial::zero(ring).leading_term(), Error);
}

TEST_CASE("normal form") {
    const FieldSpec& f3 = make_field(3);
    auto ring = make_ring(f3, {"x", "y"});
    Polynomial f = parse_polynomial(ring, "x^2");
    std::vector<Polynomial> G{parse_polynomial(ring, "x^2 - y")};
    CHECK(normal_form(f, G) == parse_polynomial(ring, "y"));
    CHECK(normal_form(parse_polynomial(ring, "y"), G) == parse_polynomial(ring, "y"));

    auto ring1 = make_ring(f3, {"x"});
    std::vector<Polynomial> FP{parse_polynomial(ring1, "x^3 - x")};
    CHECK(normal_form(parse_polynomial(ring1, "x^3"), FP) == parse_polynomial(ring1, "x"));
}

TEST_CASE("normal form postcondition holds on random inputs") {
    const FieldSpec& f3 = make_field(3);
    auto ring = make_ring(f3, {"x", "y", "z"});
    auto rng = ffqe_test::make_rng(1);
    int checked = 0;
    for (int it = 0; it < 300; ++it) {
        Polynomial f = rand_poly(rng, ring, 5, 3);
        std::vector<Polynomial> G;
        for (int k = 0; k < 2; ++k) {
            Polynomial g = rand_poly(rng, ring, 3, 2);
            if (!g.is_zero()) G.push_back(g);
        }
        if (G.empty()) continue;
        Polynomial r = normal_form(f, G);
        for (const auto& t : r.terms())
            for (const auto& g : G) CHECK(!g.leading_monomial().divides(t.first));
        // f - r vanishes wherever all of G vanish
        for (const auto& pt : all_points(f3, 3)) {
            bool on_variety = true;
            for (const auto& g : G)
                if (!g.evaluate(pt).is_zero()) {
                    on_variety = false;
                    break;
                }
            if (on_variety) CHECK(f.evaluate(pt) == r.evaluate(pt));
        }
        ++checked;
    }
    CHECK(checked > 200);
}

TEST_CASE("s-polynomials") {
    const FieldSpec& f3 = make_field(3);
    auto ring = make_ring(f3, {"x", "y"});
    Polynomial f = parse_polynomial(ring, "x^2 + y");
    Polynomial g = parse_polynomial(ring, "x*y + 1");
    // y(x^2+y) - x(xy+1) = y^2 - x
    CHECK(s_polynomial(f, g) == parse_polynomial(ring, "y^2 - x"));
    CHECK(s_polynomial(f, f).is_zero());

    auto rng = ffqe_test::make_rng(2);
    int nontrivial = 0;
    for (int it = 0; it < 200; ++it) {
        Polynomial a = rand_poly(rng, ring, 4, 3);
        Polynomial b = rand_poly(rng, ring, 4, 3);
        if (a.is_zero() || b.is_zero()) continue;
        Polynomial s = s_polynomial(a, b);
        Monomial L = a.leading_monomial().lcm(b.leading_monomial());
        if (!s.is_zero()) {
            CHECK(ring->order.less(s.leading_monomial(), L));
            ++nontrivial;
        }
    }
    CHECK(nontrivial > 50);
}

TEST_CASE("evaluation") {
    const FieldSpec& f3 = make_field(3);
    auto ring = make_ring(f3, {"x"});
    Polynomial f = parse_polynomial(ring, "x^2 + 2");
    CHECK(f.evaluate({FieldElement(f3, 1)}).is_zero());

    const FieldSpec& f4 = make_field(2, 2);
    auto ring4 = make_ring(f4, {"x"});
    Polynomial fp = parse_polynomial(ring4, "x^4 - x");
    for (const auto& a : enumerate_elements(f4)) CHECK(fp.evaluate({a}).is_zero());

    CHECK(Polynomial::zero(ring).evaluate({FieldElement(f3, 2)}).is_zero());
    CHECK_THROWS_AS(f.evaluate(std::map<std::string, FieldElement>{}), Error);
}

TEST_CASE("exponent reduction by field polynomials") {
    const FieldSpec& f3 = make_field(3);
    auto ring = make_ring(f3, {"x"});
    CHECK(parse_polynomial(ring, "x^5").reduce_exponents_by_field_polys() ==
          parse_polynomial(ring, "x"));

    const FieldSpec& f2 = make_field(2);
    auto ring2 = make_ring(f2, {"x", "y"});
    CHECK(parse_polynomial(ring2, "x^2*y^2").reduce_exponents_by_field_polys() ==
          parse_polynomial(ring2, "x*y"));

    Polynomial low = parse_polynomial(ring2, "x*y + y");
    CHECK(low.reduce_exponents_by_field_polys() == low);
}

TEST_CASE("exponent reduction preserves evaluation everywhere") {
    for (auto [p, r] : {std::pair<int, int>{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        const FieldSpec& f = make_field(p, r);
        auto ring = make_ring(f, {"x", "y"});
        auto rng = ffqe_test::make_rng(3 + p + r);
        for (int it = 0; it < 60; ++it) {
            Polynomial g = rand_poly(rng, ring, 4, 2 * f.q());
            Polynomial red = g.reduce_exponents_by_field_polys();
            for (const auto& t : red.terms())
                for (auto e : t.first.exps) CHECK(e < f.q());
            for (const auto& pt : all_points(f, 2)) CHECK(g.evaluate(pt) == red.evaluate(pt));
        }
    }
}

TEST_CASE("monomial order properties (randomized)") {
    auto rng = ffqe_test::make_rng(4);
    std::uniform_int_distribution<uint32_t> exp(0, 4);
    for (const MonomialOrder& ord :
         {MonomialOrder::lex(), MonomialOrder::block({2})}) {
        for (int it = 0; it < 500; ++it) {
            Monomial a = Monomial::one(4), b = Monomial::one(4), s = Monomial::one(4);
            for (auto& e : a.exps) e = exp(rng);
            for (auto& e : b.exps) e = exp(rng);
            for (auto& e : s.exps) e = exp(rng);
            // totality / antisymmetry
            int ab = ord.compare(a, b), ba = ord.compare(b, a);
            CHECK(ab == -ba);
            CHECK((ab == 0) == (a == b));
            // 1 is minimal
            if (!a.is_one()) CHECK(ord.greater(a, Monomial::one(4)));
            // multiplicative
            if (ab < 0) CHECK(ord.less(a * s, b * s));
        }
    }
}

TEST_CASE("canonical form is idempotent and printing round-trips") {
    const FieldSpec& f3 = make_field(3);
    auto ring = make_ring(f3, {"x", "y", "z"});
    auto rng = ffqe_test::make_rng(5);
    for (int it = 0; it < 200; ++it) {
        Polynomial f = rand_poly(rng, ring, 6, 3);
        CHECK(Polynomial::from_terms(ring, f.terms()) == f);
        CHECK(parse_polynomial(ring, f.str()) == f);
    }
    const FieldSpec& f4 = make_field(2, 2);
    auto ring4 = make_ring(f4, {"x", "y"});
    for (int it = 0; it < 200; ++it) {
        Polynomial f = rand_poly(rng, ring4, 6, 3);
        CHECK(parse_polynomial(ring4, f.str()) == f);
    }
}

TEST_CASE("printed form uses balanced signs over prime fields") {
    const FieldSpec& f3 = make_field(3);
    auto ring = make_ring(f3, {"c"});
    CHECK(parse_polynomial(ring, "c^3 - c").str() == "c^3 - c");
    CHECK(parse_polynomial(ring, "c^2 - 1").str() == "c^2 - 1");
    CHECK(parse_polynomial(ring, "2*c").str() == "-c");
    CHECK(Polynomial::zero(ring).str() == "0");
}

TEST_CASE("mismatched rings are rejected") {
    const FieldSpec& f3 = make_field(3);
    auto r1 = make_ring(f3, {"x"});
    auto r2 = make_ring(f3, {"y"});
    Polynomial a = Polynomial::variable(r1, "x");
    Polynomial b = Polynomial::variable(r2, "y");
    CHECK_THROWS_AS(a + b, RingMismatch);
    CHECK_THROWS_AS(a * b, RingMismatch);
}

TEST_CASE("reindex maps by name") {
    const FieldSpec& f3 = make_field(3);
    auto small = make_ring(f3, {"b", "c"});
    auto big = make_ring(f3, {"u", "b", "c"});
    Polynomial f = parse_polynomial(small, "b^2 - b*c");
    Polynomial g = reindex(f, big);
    CHECK(g == parse_polynomial(big, "b^2 - b*c"));
    CHECK(reindex(g, small) == f);
    Polynomial u = Polynomial::variable(big, "u");
    CHECK_THROWS_AS(reindex(u, small), RingMismatch);
}
