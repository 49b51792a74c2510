#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "ffqe/field.hpp"

using namespace ffqe;

namespace {

// Independent irreducibility check used to derive expected moduli: a monic
// quadratic or cubic over F_p is reducible iff it has a root.
bool has_root_mod_p(const std::vector<int>& m, int p) {
    for (int x = 0; x < p; ++x) {
        long long v = 0, xp = 1;
        for (int c : m) {
            v = (v + c * xp) % p;
            xp = (xp * x) % p;
        }
        if (v == 0) return true;
    }
    return false;
}

} // namespace

TEST_CASE("default modulus for F_4 is the unique monic irreducible quadratic") {
    // Oracle: enumerate all monic quadratics over F_2 and keep the root-free ones.
    std::vector<std::vector<int>> irreducible;
    for (int c0 = 0; c0 < 2; ++c0)
        for (int c1 = 0; c1 < 2; ++c1) {
            std::vector<int> m{c0, c1, 1};
            if (!has_root_mod_p(m, 2)) irreducible.push_back(m);
        }
    REQUIRE(irreducible.size() == 1);
    CHECK(irreducible[0] == std::vector<int>{1, 1, 1});

    const FieldSpec& f4 = make_field(2, 2);
    CHECK(f4.modulus() == std::vector<int>{1, 1, 1});
    CHECK(f4.q() == 4);
}

TEST_CASE("make_field rejects bad input") {
    CHECK_NOTHROW(make_field(3, 1));
    CHECK_THROWS_AS(make_field(4, 1), FieldError);
    CHECK_THROWS_AS(make_field(1, 1), FieldError);
    CHECK_THROWS_AS(make_field(2, 0), FieldError);
    // x^2 + 1 = (x+1)^2 over F_2
    CHECK_THROWS_AS(make_field(2, 2, std::vector<int>{1, 0, 1}), FieldError);
    // non-monic
    CHECK_THROWS_AS(make_field(3, 2, std::vector<int>{1, 1, 2}), FieldError);
    // order above the supported bound
    CHECK_THROWS_AS(make_field(2, 17), FieldError);
}

TEST_CASE("prime field arithmetic") {
    const FieldSpec& f3 = make_field(3);
    FieldElement two(f3, 2);
    CHECK((two * two).code() == 1); // 4 mod 3
    CHECK(two.inverse().code() == 2);
    CHECK((two + two).code() == 1);
    CHECK((-two).code() == 1);
    CHECK(FieldElement::one(f3).inverse().code() == 1);
}

TEST_CASE("F_4 arithmetic matches the w^2+w+1 reduction") {
    const FieldSpec& f4 = make_field(2, 2);
    FieldElement w(f4, 2);        // coefficient vector (0,1)
    FieldElement w1(f4, 3);       // w+1
    CHECK(w * w == w1);           // w^2 = w+1
    CHECK(w1 + w1 == FieldElement::zero(f4));
    CHECK(w.inverse() == w1);     // w*(w+1) = w^2+w = 1
    CHECK((w * w1).is_one());
    CHECK(w.str() == "w");
    CHECK(w1.str() == "w+1");
}

TEST_CASE("element text round-trips") {
    const FieldSpec& f9 = make_field(3, 2);
    for (const auto& e : enumerate_elements(f9)) {
        CHECK(parse_element(f9, e.str()) == e);
    }
    const FieldSpec& f5 = make_field(5);
    CHECK(parse_element(f5, "3").code() == 3);
    CHECK(parse_element(f5, "-1").code() == 4);
    CHECK_THROWS_AS(parse_element(f5, "z"), ParseError);
}

TEST_CASE("enumerate_elements: order, distinctness, cardinality") {
    const FieldSpec& f2 = make_field(2);
    auto e2 = enumerate_elements(f2);
    REQUIRE(e2.size() == 2);
    CHECK(e2[0].is_zero());
    CHECK(e2[1].is_one());

    const FieldSpec& f4 = make_field(2, 2);
    auto e4 = enumerate_elements(f4);
    REQUIRE(e4.size() == 4);
    CHECK(e4[0].str() == "0");
    CHECK(e4[1].str() == "1");
    CHECK(e4[2].str() == "w");
    CHECK(e4[3].str() == "w+1");

    const FieldSpec& f5 = make_field(5);
    auto e5 = enumerate_elements(f5);
    CHECK(e5.size() == 5);
    std::set<uint32_t> codes;
    for (auto& e : e5) codes.insert(e.code());
    CHECK(codes.size() == 5);
}

TEST_CASE("Fermat: a^q = a over every field of order up to 81") {
    const int specs[][2] = {{2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 1},
                            {3, 2}, {3, 3}, {3, 4}, {5, 1}, {5, 2}, {7, 1}, {7, 2},
                            {11, 1}, {13, 1}, {17, 1}, {19, 1}, {23, 1}, {29, 1},
                            {31, 1}, {37, 1}, {41, 1}, {43, 1}, {47, 1}, {53, 1},
                            {59, 1}, {61, 1}, {67, 1}, {71, 1}, {73, 1}, {79, 1}};
    for (auto [p, r] : specs) {
        const FieldSpec& f = make_field(p, r);
        if (f.q() > 81) continue;
        for (const auto& a : enumerate_elements(f)) {
            CHECK(a.pow(f.q()) == a);
        }
    }
}

TEST_CASE("field axioms hold exhaustively for q <= 9") {
    for (auto [p, r] : {std::pair<int, int>{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1},
                        {2, 3}, {3, 2}}) {
        const FieldSpec& f = make_field(p, r);
        auto elems = enumerate_elements(f);
        FieldElement zero = FieldElement::zero(f);
        FieldElement one = FieldElement::one(f);
        for (const auto& a : elems) {
            CHECK(a + zero == a);
            CHECK(a * one == a);
            CHECK(a + (-a) == zero);
            if (!a.is_zero()) CHECK(a * a.inverse() == one);
            for (const auto& b : elems) {
                CHECK(a + b == b + a);
                CHECK(a * b == b * a);
                for (const auto& c : elems) {
                    CHECK((a + b) + c == a + (b + c));
                    CHECK((a * b) * c == a * (b * c));
                    CHECK(a * (b + c) == a * b + a * c);
                }
            }
        }
    }
}

TEST_CASE("cross-field operations are rejected") {
    const FieldSpec& f3 = make_field(3);
    const FieldSpec& f5 = make_field(5);
    FieldElement a(f3, 1), b(f5, 1);
    CHECK_THROWS_AS(a + b, FieldError);
    CHECK_THROWS_AS(a * b, FieldError);
}
