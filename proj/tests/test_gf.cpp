#include "doctest.h"

#include "hallforge/gf.hpp"

using namespace hallforge;
using gf::Field;

TEST_CASE("canonical moduli") {
    auto f2 = Field::make(2, 1);
    CHECK(f2->modulus() == std::vector<std::uint32_t>{0, 1});  // t

    auto f4 = Field::make(2, 2);
    CHECK(f4->modulus() == std::vector<std::uint32_t>{1, 1, 1});  // t^2+t+1

    auto f9 = Field::make(3, 2);
    CHECK(f9->modulus() == std::vector<std::uint32_t>{1, 0, 1});  // t^2+1

    auto f8 = Field::make(2, 3);
    CHECK(f8->modulus() == std::vector<std::uint32_t>{1, 1, 0, 1});  // t^3+t+1
}

TEST_CASE("field arithmetic forced by the modulus") {
    auto f4 = Field::make(2, 2);
    // indices: 0, 1, t=2, t+1=3
    CHECK(f4->mul(2, 3) == 1);  // t*(t+1) = 1
    CHECK(f4->to_string(2) == "t");
    CHECK(f4->to_string(3) == "t+1");

    auto f3 = Field::make(3, 1);
    CHECK(f3->inv(2) == 2);  // 2*2 = 4 = 1

    auto f9 = Field::make(3, 2);
    CHECK(f9->mul(3, 3) == 2);  // t*t = -1 = 2
}

TEST_CASE("frobenius") {
    auto f4 = Field::make(2, 2);
    CHECK(f4->frobenius(2, 1) == 3);  // t^2 = t+1
    CHECK(f4->frobenius(2, 2) == 2);  // Galois group of order 2
    auto f2 = Field::make(2, 1);
    CHECK(f2->frobenius(1, 1) == 1);
}

TEST_CASE("enumeration order") {
    auto f2 = Field::make(2, 1);
    auto e2 = gf::enumerate_field(f2);
    REQUIRE(e2.size() == 2);
    CHECK(e2[0].idx == 0);
    CHECK(e2[1].idx == 1);

    auto f4 = Field::make(2, 2);
    auto e4 = gf::enumerate_field(f4);
    REQUIRE(e4.size() == 4);
    CHECK(f4->to_string(e4[2].idx) == "t");
    CHECK(f4->to_string(e4[3].idx) == "t+1");

    auto f3 = Field::make(3, 1);
    CHECK(gf::enumerate_field(f3).size() == 3);
}

TEST_CASE("field axioms exhaustively on small fields") {
    for (auto [p, e] : {std::pair<int, int>{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {5, 1},
                        {2, 4}, {3, 4}}) {
        auto f = Field::make(p, e);
        const std::uint32_t n = static_cast<std::uint32_t>(f->size());
        for (std::uint32_t x = 0; x < n; ++x) {
            CHECK(f->add(x, f->neg(x)) == 0);
            if (x) CHECK(f->mul(x, f->inv(x)) == 1);
            for (std::uint32_t y = 0; y < n; ++y) {
                CHECK(f->add(x, y) == f->add(y, x));
                CHECK(f->mul(x, y) == f->mul(y, x));
                // inv(xy) = inv(y) inv(x)
                if (x && y) CHECK(f->inv(f->mul(x, y)) == f->mul(f->inv(y), f->inv(x)));
            }
        }
        // distributivity spot checks on a stride
        for (std::uint32_t x = 0; x < n; x += 3)
            for (std::uint32_t y = 0; y < n; y += 2)
                for (std::uint32_t z = 0; z < n; z += 5)
                    CHECK(f->mul(x, f->add(y, z)) == f->add(f->mul(x, y), f->mul(x, z)));
    }
}

TEST_CASE("galois closure and subfield counts") {
    // frobenius(x, e) is the identity on GF(p^e)
    for (auto [p, e] : {std::pair<int, int>{2, 2}, {2, 4}, {3, 2}, {2, 6}}) {
        auto f = Field::make(p, e);
        for (std::uint32_t x = 0; x < f->size(); ++x) CHECK(f->frobenius(x, e) == x);
    }
    // the fixed set of frobenius(., e) inside GF(p^{e*s}) has p^e elements
    auto count_fixed = [](std::uint32_t p, std::uint32_t e, std::uint32_t s) {
        auto f = Field::make(p, e * s);
        std::uint32_t fixed = 0;
        for (std::uint32_t x = 0; x < f->size(); ++x)
            if (f->frobenius(x, e) == x) ++fixed;
        return fixed;
    };
    CHECK(count_fixed(2, 1, 2) == 2);
    CHECK(count_fixed(2, 2, 2) == 4);
    CHECK(count_fixed(3, 1, 2) == 3);
    CHECK(count_fixed(2, 2, 3) == 4);
}

TEST_CASE("primitive element has full order") {
    for (auto [p, e] : {std::pair<int, int>{2, 2}, {3, 1}, {3, 2}, {2, 4}, {5, 1}}) {
        auto f = Field::make(p, e);
        std::uint32_t g = f->primitive_element();
        std::uint64_t ord = 1;
        std::uint32_t x = g;
        while (x != 1) {
            x = f->mul(x, g);
            ++ord;
        }
        CHECK(ord == f->size() - 1);
    }
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(Field::make(4, 1), NonPrimeError);
    CHECK_THROWS_AS(Field::make(1, 1), NonPrimeError);
    CHECK_THROWS_AS(Field::make(2, 25), SizeGuardExceeded);
    CHECK_THROWS_AS(Field::make(2, 8, 100), SizeGuardExceeded);
    auto f = Field::make(2, 2);
    CHECK_THROWS_AS(f->inv(0), DivisionByZero);

    gf::FieldElement a{Field::make(2, 2), 1};
    gf::FieldElement b{Field::make(3, 1), 1};
    CHECK_THROWS_AS((void)(a + b), FieldMismatch);
    CHECK((a + a).idx == 0);
    CHECK((a * a).idx == 1);
}

TEST_CASE("subfield embedding is a ring homomorphism") {
    auto small = Field::make(2, 2);
    auto big = Field::make(2, 4);
    auto emb = gf::embedding_table(*small, *big);
    CHECK(emb[0] == 0);
    CHECK(emb[1] == 1);
    for (std::uint32_t x = 0; x < small->size(); ++x) {
        for (std::uint32_t y = 0; y < small->size(); ++y) {
            CHECK(emb[small->add(x, y)] == big->add(emb[x], emb[y]));
            CHECK(emb[small->mul(x, y)] == big->mul(emb[x], emb[y]));
        }
        for (std::uint32_t y = x + 1; y < small->size(); ++y) CHECK(emb[x] != emb[y]);
    }
    CHECK_THROWS_AS(gf::embedding_table(*Field::make(2, 2), *Field::make(2, 3)), InputError);
}

TEST_CASE("primitive polynomials give full-order companion roots") {
    auto f2 = Field::make(2, 1);
    auto poly = gf::find_primitive_poly(*f2, 4);
    CHECK(poly == gf::Poly{1, 1, 0, 0, 1});  // t^4 + t + 1
    auto f4 = Field::make(2, 2);
    auto p2 = gf::find_primitive_poly(*f4, 2);
    CHECK(p2.size() == 3);
    CHECK(gf::poly_is_irreducible(*f4, p2));
}
