#include <doctest.h>

#include <set>
#include <sstream>

#include "partdet/algebra.hpp"
#include "partdet/mask.hpp"
#include "partdet/rational.hpp"

using namespace partdet;

namespace {

std::vector<std::vector<ElementId>> cyclic_table(int n) {
    std::vector<std::vector<ElementId>> t(n, std::vector<ElementId>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return t;
}

}  // namespace

TEST_CASE("rational parsing and lcm") {
    CHECK(parse_rational("1/2") == Rational(1, 2));
    CHECK(parse_rational("-3/6") == Rational(-1, 2));
    CHECK(parse_rational("7") == 7);
    CHECK(rational_str(Rational(2, 4)) == "1/2");
    CHECK(rational_str(Rational(5)) == "5");
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("abc"), Error);

    std::vector<Rational> w = {Rational(1, 2), Rational(1, 3), Rational(2)};
    CHECK(denominator_lcm(w) == 6);

    CHECK(log2_rational(Rational(8)) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(log2_rational(Rational(1, 4)) == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(log2_rational(Rational(3)) == doctest::Approx(1.5849625007211562).epsilon(1e-12));
}

TEST_CASE("mask utilities") {
    CHECK(mask_str(0b101) == "{1,3}");
    CHECK(mask_str(0) == "{}");
    CHECK(parse_mask("{1,3}", 3) == 0b101u);
    CHECK(parse_mask("{ 2 }", 3) == 0b010u);
    CHECK(parse_mask("{}", 3) == 0u);
    CHECK(full_mask(3) == 0b111u);
    CHECK(mask_size(0b1011) == 3);
    CHECK_THROWS_AS(parse_mask("{4}", 3), Error);
    CHECK_THROWS_AS(parse_mask("{1,1}", 3), Error);
    CHECK(mask_indices(0b110) == std::vector<int>{2, 3});
}

TEST_CASE("group_from_table validates and derives structure") {
    auto g = FiniteGroup::from_table({{0}});
    CHECK(g.order() == 1);
    CHECK(g.identity() == 0);

    auto z3 = FiniteGroup::from_table(cyclic_table(3));
    CHECK(z3.order() == 3);
    CHECK(z3.is_abelian());
    CHECK(z3.identity() == 0);
    CHECK(z3.inverse(1) == 2);

    auto bad = cyclic_table(3);
    bad[1][1] = 1;  // duplicates row entry; breaks the group axioms
    CHECK_THROWS_AS(FiniteGroup::from_table(bad), Error);
}

TEST_CASE("single mutations of small valid tables are rejected") {
    for (const FiniteGroup& g : {FiniteGroup::cyclic(4), FiniteGroup::dihedral(3),
                                 FiniteGroup::quaternion(),
                                 FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2))}) {
        const int n = g.order();
        REQUIRE(n <= 8);
        std::vector<std::vector<ElementId>> base(n, std::vector<ElementId>(n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) base[a][b] = g.op(a, b);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int v = 0; v < n; ++v) {
                    if (v == base[a][b]) continue;
                    auto mutated = base;
                    mutated[a][b] = v;
                    CHECK_THROWS_AS(FiniteGroup::from_table(mutated), Error);
                }
    }
}

TEST_CASE("named group constructors") {
    auto z1 = FiniteGroup::cyclic(1);
    CHECK(z1.order() == 1);

    auto z5 = FiniteGroup::cyclic(5);
    CHECK(z5.is_abelian());
    CHECK(z5.op(3, 4) == 2);

    auto d3 = FiniteGroup::dihedral(3);
    CHECK(d3.order() == 6);
    CHECK_FALSE(d3.is_abelian());
    // e, R, R2, F, RF, R2F carrier order.
    CHECK(d3.element_name(0) == "e");
    CHECK(d3.element_name(1) == "R");
    CHECK(d3.element_name(3) == "F");
    CHECK(d3.element_name(5) == "R2F");
    // F * R = R^{-1} F = R2F
    CHECK(d3.op(3, 1) == 5);
    // R * F = RF
    CHECK(d3.op(1, 3) == 4);
    CHECK(d3.inverse(1) == 2);
    CHECK(d3.inverse(4) == 4);

    auto q8 = FiniteGroup::quaternion();
    CHECK(q8.order() == 8);
    CHECK_FALSE(q8.is_abelian());
    // i*j = k, j*i = -k, i*i = -1
    CHECK(q8.element_name(2) == "i");
    CHECK(q8.op(2, 4) == 6);
    CHECK(q8.op(4, 2) == 7);
    CHECK(q8.op(2, 2) == 1);

    auto v4 = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
    CHECK(v4.order() == 4);
    CHECK(v4.is_abelian());
    for (int x = 0; x < 4; ++x) CHECK(v4.inverse(x) == x);
}

TEST_CASE("sumsets") {
    auto z5 = FiniteGroup::cyclic(5);
    CHECK(sumset(z5, {0, 1}, {0, 2}) == std::vector<ElementId>{0, 1, 2, 3});

    auto d3 = FiniteGroup::dihedral(3);
    std::vector<ElementId> S = {0, 3}, T = {1}, U = {0, 3};
    auto stu = nary_sumset(d3, {S, T, U});
    CHECK(stu == std::vector<ElementId>{1, 2, 4, 5});  // {R, R2, RF, R2F}
    CHECK(sumset(d3, S, T) == std::vector<ElementId>{1, 5});
    CHECK(sumset(d3, T, U) == std::vector<ElementId>{1, 4});
    CHECK(sumset(d3, S, U) == std::vector<ElementId>{0, 3});

    // identity-only operands
    CHECK(nary_sumset(d3, {{0}, {0}, {0}}) == std::vector<ElementId>{0});

    CHECK_THROWS_AS(nary_sumset(z5, {{0}, {}}), Error);
}

TEST_CASE("sumset algebraic properties") {
    auto d4 = FiniteGroup::dihedral(4);
    std::vector<ElementId> A = {0, 1, 5}, B = {2, 7}, C = {3, 4};
    auto ab = sumset(d4, A, B);
    CHECK(ab.size() >= std::max(A.size(), B.size()));
    CHECK(ab.size() <= A.size() * B.size());
    CHECK(sumset(d4, ab, C) == nary_sumset(d4, {A, B, C}));

    auto z6 = FiniteGroup::cyclic(6);
    std::vector<ElementId> P = {0, 2}, Q = {1, 3}, R = {5};
    CHECK(nary_sumset(z6, {P, Q, R}) == nary_sumset(z6, {R, Q, P}));
    CHECK(nary_sumset(z6, {P, Q, R}) == nary_sumset(z6, {Q, P, R}));
}

TEST_CASE("group table round trip and trailing garbage") {
    auto d3 = FiniteGroup::dihedral(3);
    std::string text = d3.to_table_string();
    std::istringstream in(text);
    auto back = FiniteGroup::from_stream(in);
    CHECK(back.order() == 6);
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) CHECK(back.op(a, b) == d3.op(a, b));

    std::istringstream garbage(text + "junk");
    CHECK_THROWS_AS(FiniteGroup::from_stream(garbage), Error);

    std::istringstream truncated("group 3\n0 1 2\n1 2 0\n");
    CHECK_THROWS_AS(FiniteGroup::from_stream(truncated), Error);
}

TEST_CASE("ring constructors and arithmetic") {
    auto zero_ring = FiniteRing::mod(1);
    CHECK(zero_ring.order() == 1);
    CHECK(zero_ring.zero() == 0);

    auto z12 = FiniteRing::mod(12);
    CHECK(z12.mul(5, 5) == 1);
    CHECK(z12.add(6, 7) == 1);
    CHECK(z12.neg(5) == 7);
    CHECK(z12.commutative_mul());

    auto m2 = FiniteRing::matrix_2x2(2);
    CHECK(m2.order() == 16);
    CHECK_FALSE(m2.commutative_mul());
    // [[1,1],[0,1]] * [[1,0],[1,1]] = [[0,1],[1,1]] over Z2, and reversed differs.
    auto pack = [](int a, int b, int c, int d) { return ((a * 2 + b) * 2 + c) * 2 + d; };
    ElementId x = pack(1, 1, 0, 1), y = pack(1, 0, 1, 1);
    CHECK(m2.mul(x, y) == pack(0, 1, 1, 1));
    CHECK(m2.mul(y, x) == pack(1, 1, 1, 0));

    CHECK_THROWS_AS(FiniteRing::mod(0), Error);
    CHECK_THROWS_AS(FiniteRing::matrix_2x2(4), Error);

    auto zadd = z12.additive_group();
    CHECK(zadd.order() == 12);
    CHECK(zadd.is_abelian());
}

TEST_CASE("ring from tables validates distributivity") {
    auto z3 = FiniteRing::mod(3);
    std::vector<std::vector<ElementId>> add(3, std::vector<ElementId>(3)), mul(3, std::vector<ElementId>(3));
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            add[a][b] = z3.add(a, b);
            mul[a][b] = z3.mul(a, b);
        }
    auto r = FiniteRing::from_tables(add, mul);
    CHECK(r.order() == 3);

    mul[1][2] = 1;  // 1*2 = 1 breaks distributivity
    CHECK_THROWS_AS(FiniteRing::from_tables(add, mul), Error);
}

TEST_CASE("ring table round trip") {
    auto z4 = FiniteRing::mod(4);
    std::istringstream in(z4.to_table_string());
    auto back = FiniteRing::from_stream(in);
    CHECK(back.order() == 4);
    CHECK(back.mul(3, 3) == 1);

    std::istringstream garbage(z4.to_table_string() + " 0");
    CHECK_THROWS_AS(FiniteRing::from_stream(garbage), Error);
}

TEST_CASE("ground family validation") {
    auto g = GroundFamily::of({{2, 0, 1, 1}, {3}}, 5);
    CHECK(g.k == 2);
    CHECK(g.sets[0] == std::vector<ElementId>{0, 1, 2});  // sorted, deduplicated
    CHECK(g.product_size() == 3);

    CHECK_THROWS_AS(GroundFamily::of({{0}, {}}, 5), Error);
    CHECK_THROWS_AS(GroundFamily::of({{5}}, 5), Error);
    CHECK_THROWS_AS(GroundFamily::of({}, 5), Error);
}
