#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "ffqe/groebner.hpp"
#include "test_util.hpp"

using namespace ffqe;

namespace {

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

// Brute-force variety of a generator list over the full point grid.
std::vector<std::vector<FieldElement>> variety(const std::vector<Polynomial>& gens,
                                               const RingPtr& ring) {
    std::vector<std::vector<FieldElement>> out;
    for (auto& pt : all_points(*ring->field, ring->vars->size())) {
        bool ok = true;
        for (const auto& g : gens)
            if (!g.evaluate(pt).is_zero()) {
                ok = false;
                break;
            }
        if (ok) out.push_back(pt);
    }
    return out;
}

std::set<std::vector<uint32_t>> point_codes(const std::vector<std::vector<FieldElement>>& pts,
                                            size_t from = 0) {
    std::set<std::vector<uint32_t>> out;
    for (const auto& p : pts) {
        std::vector<uint32_t> v;
        for (size_t i = from; i < p.size(); ++i) v.push_back(p[i].code());
        out.insert(std::move(v));
    }
    return out;
}

Polynomial rand_poly(std::mt19937_64& rng, const RingPtr& ring, int max_terms = 3,
                     uint32_t max_exp = 2) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
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

std::vector<std::string> all_names(const RingPtr& ring) { return ring->vars->names(); }

bool is_reduced_basis(const GroebnerBasis& G) {
    for (size_t i = 0; i < G.polys.size(); ++i) {
        if (!FieldElement(*G.ring->field, G.polys[i].leading_coeff_code()).is_one())
            return false;
        for (size_t j = 0; j < G.polys.size(); ++j) {
            if (i == j) continue;
            for (const auto& t : G.polys[i].terms())
                if (G.polys[j].leading_monomial().divides(t.first)) return false;
        }
    }
    for (size_t i = 1; i < G.polys.size(); ++i)
        if (!G.ring->order.greater(G.polys[i - 1].leading_monomial(),
                                   G.polys[i].leading_monomial()))
            return false;
    return true;
}

} // namespace

TEST_CASE("single field polynomial is already reduced") {
    const FieldSpec& f3 = make_field(3);
    auto ring = make_ring(f3, {"x"});
    Ideal J(ring, {parse_polynomial(ring, "x^3 - x")});
    auto G = buchberger(J);
    REQUIRE(G.polys.size() == 1);
    CHECK(G.polys[0] == parse_polynomial(ring, "x^3 - x"));
}

TEST_CASE("add_field_polynomials") {
    const FieldSpec& f3 = make_field(3);
    auto ring = make_ring(f3, {"x", "y", "a", "b", "c"});
    Ideal J(ring, {parse_polynomial(ring, "y - a*x^2 - b*x - c"),
                   parse_polynomial(ring, "y - a*x")});
    Ideal J2 = add_field_polynomials(J, {"x", "y", "a", "b", "c"});
    CHECK(J2.generators.size() == 7);
    bool has_c = false;
    for (const auto& g : J2.generators)
        if (g == parse_polynomial(ring, "c^3 - c")) has_c = true;
    CHECK(has_c);

    // identity on the empty list, no duplicates on re-add
    CHECK(add_field_polynomials(J2, {}).generators.size() == 7);
    CHECK(add_field_polynomials(J2, {"x", "c"}).generators.size() == 7);
    CHECK_THROWS_AS(add_field_polynomials(J, {"nope"}), RingMismatch);
}

TEST_CASE("worked example: basis of the parabola/line ideal restricted to a,b,c") {
    const FieldSpec& f3 = make_field(3);
    auto ring = make_ring(f3, {"x", "y", "a", "b", "c"});
    Ideal J(ring, {parse_polynomial(ring, "y - a*x^2 - b*x - c"),
                   parse_polynomial(ring, "y - a*x")});
    J = add_field_polynomials(J, all_names(ring));
    auto G0 = buchberger(J);
    CHECK(is_reduced_basis(G0));

    auto G1 = eliminate(G0, {"a", "b", "c"});
    auto abc = make_ring(f3, {"a", "b", "c"});
    std::vector<Polynomial> expected{
        parse_polynomial(abc, "a^3 - a"),
        parse_polynomial(abc, "a*b*c + a*c^2 + b^2*c - c"),
        parse_polynomial(abc, "b^3 - b"),
        parse_polynomial(abc, "c^3 - c"),
    };
    REQUIRE(G1.size() == expected.size());
    for (size_t i = 0; i < expected.size(); ++i)
        CHECK(reindex(G1[i], abc) == expected[i]);
}

TEST_CASE("worked example: second elimination gives {b^2 - b*c, c^2 - 1}") {
    const FieldSpec& f3 = make_field(3);
    auto ring = make_ring(f3, {"u", "a", "b", "c"});
    Polynomial g = parse_polynomial(ring, "(a*b*c + a*c^2 + b^2*c - c)*u - 1");
    Ideal J(ring, {g});
    J = add_field_polynomials(J, all_names(ring));
    auto G = buchberger(J);
    auto G2 = eliminate(G, {"b", "c"});
    auto bc = make_ring(f3, {"b", "c"});
    REQUIRE(G2.size() == 2);
    CHECK(reindex(G2[0], bc) == parse_polynomial(bc, "b^2 - b*c"));
    CHECK(reindex(G2[1], bc) == parse_polynomial(bc, "c^2 - 1"));
}

TEST_CASE("eliminate edge cases") {
    const FieldSpec& f3 = make_field(3);
    auto ring = make_ring(f3, {"x", "y"});
    Ideal J(ring, {parse_polynomial(ring, "x - y"), parse_polynomial(ring, "y^2 - 1")});
    auto G = buchberger(J);

    // keep everything: the basis itself
    auto keep_all = eliminate(G, 0);
    CHECK(keep_all.size() == G.polys.size());

    // keep {y}: brute-force projection of the variety agrees with V(y^2-1)
    auto Gy = eliminate(G, {"y"});
    REQUIRE(Gy.size() == 1);
    CHECK(Gy[0] == parse_polynomial(ring, "y^2 - 1"));
    auto proj = point_codes(variety(J.generators, ring), 1);
    auto vy = point_codes(variety(Gy, ring), 1);
    CHECK(proj == vy);

    CHECK_THROWS_AS(eliminate(G, {"x"}), Error); // not a low-rank suffix
}

TEST_CASE("ideal membership") {
    const FieldSpec& f3 = make_field(3);
    auto ring = make_ring(f3, {"c"});
    Ideal fp(ring, {parse_polynomial(ring, "c^3 - c")});
    auto G = buchberger(fp);
    CHECK(ideal_membership(parse_polynomial(ring, "c^3 - c"), G));
    CHECK_FALSE(ideal_membership(parse_polynomial(ring, "c - 1"), G));

    auto ring2 = make_ring(f3, {"x", "y"});
    std::vector<Polynomial> gens{parse_polynomial(ring2, "x - y"),
                                 parse_polynomial(ring2, "y^2 - 1")};
    auto G2 = buchberger(Ideal(ring2, gens));
    for (const auto& g : gens) CHECK(ideal_membership(g, G2));
}

TEST_CASE("zero and unit ideals") {
    const FieldSpec& f2 = make_field(2);
    auto ring = make_ring(f2, {"x"});
    auto Gz = buchberger(Ideal(ring, {Polynomial::zero(ring)}));
    CHECK(Gz.is_zero_ideal());
    CHECK(variety(Gz.polys, ring).size() == 2); // no constraints

    auto Gu = buchberger(Ideal(ring, {parse_polynomial(ring, "x"),
                                      parse_polynomial(ring, "x - 1")}));
    CHECK(Gu.is_unit_ideal());
    CHECK(variety(Gu.polys, ring).empty());
}

TEST_CASE("basis postconditions and determinism on random ideals") {
    auto rng = ffqe_test::make_rng(10);
    int cases = 0;
    for (auto [p, r] : {std::pair<int, int>{2, 1}, {3, 1}, {2, 2}}) {
        const FieldSpec& f = make_field(p, r);
        auto ring = make_ring(f, {"x", "y", "z"});
        for (int it = 0; it < 90; ++it) {
            std::vector<Polynomial> gens;
            std::uniform_int_distribution<int> ngens(1, 3);
            int n = ngens(rng);
            for (int k = 0; k < n; ++k) gens.push_back(rand_poly(rng, ring));
            Ideal J(ring, gens);
            if (J.generators.empty()) continue;
            auto G = buchberger(J);
            CHECK(is_reduced_basis(G));
            // every input generator reduces to zero
            if (!G.polys.empty())
                for (const auto& g : J.generators)
                    CHECK(normal_form(g, G.polys).is_zero());
            // every s-pair of the output reduces to zero
            for (size_t i = 0; i < G.polys.size(); ++i)
                for (size_t j = i + 1; j < G.polys.size(); ++j)
                    CHECK(normal_form(s_polynomial(G.polys[i], G.polys[j]), G.polys)
                              .is_zero());
            // permuting the generators yields the identical basis
            auto perm = J.generators;
            std::shuffle(perm.begin(), perm.end(), rng);
            auto G2 = buchberger(Ideal(ring, perm));
            CHECK(G.polys == G2.polys);
            ++cases;
        }
    }
    CHECK(cases >= 200);
}

TEST_CASE("strong nullstellensatz: membership equals vanishing when field polys present") {
    auto rng = ffqe_test::make_rng(11);
    int cases = 0;
    for (auto [p, r] : {std::pair<int, int>{2, 1}, {3, 1}, {2, 2}}) {
        const FieldSpec& f = make_field(p, r);
        auto ring = make_ring(f, {"x", "y"});
        for (int it = 0; it < 80; ++it) {
            Ideal J(ring, {rand_poly(rng, ring), rand_poly(rng, ring)});
            J = add_field_polynomials(J, all_names(ring));
            auto G = buchberger(J);
            auto V = variety(J.generators, ring);
            for (int k = 0; k < 3; ++k) {
                Polynomial h = rand_poly(rng, ring);
                bool vanishes = true;
                for (const auto& pt : V)
                    if (!h.evaluate(pt).is_zero()) {
                        vanishes = false;
                        break;
                    }
                CHECK(ideal_membership(h, G) == vanishes);
                // radicality: h^2 in the ideal implies h in the ideal
                if (ideal_membership(h * h, G)) CHECK(ideal_membership(h, G));
                ++cases;
            }
        }
    }
    CHECK(cases >= 200);
}

TEST_CASE("frobenius: f^q - f lies in the pure field-polynomial ideal") {
    auto rng = ffqe_test::make_rng(12);
    for (auto [p, r] : {std::pair<int, int>{2, 1}, {3, 1}, {2, 2}}) {
        const FieldSpec& f = make_field(p, r);
        auto ring = make_ring(f, {"x", "y"});
        Ideal J(ring, {});
        J = add_field_polynomials(J, all_names(ring));
        auto G = buchberger(J);
        for (int it = 0; it < 70; ++it) {
            Polynomial h = rand_poly(rng, ring);
            CHECK(normal_form(h.pow(f.q()) - h, G.polys).is_zero());
        }
    }
}

TEST_CASE("elimination equals projection on random ideals with field polys") {
    auto rng = ffqe_test::make_rng(13);
    int cases = 0;
    for (auto [p, r] : {std::pair<int, int>{2, 1}, {3, 1}, {2, 2}}) {
        const FieldSpec& f = make_field(p, r);
        auto ring = make_ring(f, {"x", "y", "z"});
        for (int it = 0; it < 50; ++it) {
            Ideal J(ring, {rand_poly(rng, ring), rand_poly(rng, ring)});
            J = add_field_polynomials(J, all_names(ring));
            auto G = buchberger(J);
            auto elim = eliminate(G, {"y", "z"});
            auto projected = point_codes(variety(J.generators, ring), 1);
            std::set<std::vector<uint32_t>> velim;
            for (auto& pt : all_points(f, 3)) {
                bool ok = true;
                for (const auto& g : elim)
                    if (!g.evaluate(pt).is_zero()) {
                        ok = false;
                        break;
                    }
                if (ok) velim.insert({pt[1].code(), pt[2].code()});
            }
            CHECK(projected == velim);
            ++cases;
        }
    }
    CHECK(cases >= 100);
}

TEST_CASE("block order also projects correctly at its cut") {
    auto rng = ffqe_test::make_rng(14);
    const FieldSpec& f3 = make_field(3);
    auto ring = make_ring(f3, {"x", "y", "z"}, MonomialOrder::block({1}));
    for (int it = 0; it < 40; ++it) {
        Ideal J(ring, {rand_poly(rng, ring), rand_poly(rng, ring)});
        J = add_field_polynomials(J, all_names(ring));
        auto G = buchberger(J);
        auto elim = eliminate(G, 1);
        auto projected = point_codes(variety(J.generators, ring), 1);
        std::set<std::vector<uint32_t>> velim;
        for (auto& pt : all_points(f3, 3)) {
            bool ok = true;
            for (const auto& g : elim)
                if (!g.evaluate(pt).is_zero()) {
                    ok = false;
                    break;
                }
            if (ok) velim.insert({pt[1].code(), pt[2].code()});
        }
        CHECK(projected == velim);
        CHECK_THROWS_AS(eliminate(G, 2), Error); // not a block boundary
    }
}

TEST_CASE("packed and generic paths agree (reduced bases are unique)") {
    // Inputs with large exponents take the generic path; rescaled copies of
    // the same ideal take the packed path. x^200 = x^2 * (x^99)^2 keeps the
    // ideal comparable across both by constructing the packed-path ideal
    // directly with small exponents and checking against a forced-generic
    // equivalent built from the same polynomials shifted through reindexing.
    auto rng = ffqe_test::make_rng(15);
    const FieldSpec& f3 = make_field(3);
    // 33+ variables force the generic path; the first three carry the ideal.
    std::vector<std::string> many;
    for (int i = 0; i < 33; ++i) many.push_back("t" + std::to_string(i));
    many[0] = "x";
    many[1] = "y";
    many[2] = "z";
    auto wide = make_ring(f3, many);
    auto narrow = make_ring(f3, {"x", "y", "z"});
    for (int it = 0; it < 40; ++it) {
        std::vector<Polynomial> gens{rand_poly(rng, narrow), rand_poly(rng, narrow)};
        Ideal Jn(narrow, gens);
        Jn = add_field_polynomials(Jn, {"x", "y", "z"});
        std::vector<Polynomial> wide_gens;
        for (const auto& g : Jn.generators) wide_gens.push_back(reindex(g, wide));
        auto Gp = buchberger(Jn);                    // packed kernel
        auto Gg = buchberger(Ideal(wide, wide_gens)); // generic path
        REQUIRE(Gp.polys.size() == Gg.polys.size());
        for (size_t i = 0; i < Gp.polys.size(); ++i)
            CHECK(reindex(Gg.polys[i], narrow) == Gp.polys[i]);
    }
}

TEST_CASE("budget abort raises the distinguished error") {
    const FieldSpec& f3 = make_field(3);
    auto ring = make_ring(f3, {"x", "y", "z"});
    Ideal J(ring, {parse_polynomial(ring, "x^2*y + z"), parse_polynomial(ring, "y^2*z + x"),
                   parse_polynomial(ring, "z^2*x + y")});
    J = add_field_polynomials(J, all_names(ring));
    Budget b;
    b.max_basis_size = 1;
    CHECK_THROWS_AS(buchberger(J, &b), BudgetExhausted);
}
