#include "doctest.h"

#include <random>

#include "hallforge/quiver.hpp"

using namespace hallforge;
using qv::DimVector;

TEST_CASE("forms on the standard quivers") {
    auto a2 = qv::make_a2();
    auto jordan = qv::make_jordan();
    auto kron = qv::make_kronecker();

    CHECK(qv::euler_form(a2, {1, 0}, {0, 1}) == -1);
    CHECK(qv::euler_form(jordan, {1}, {1}) == 0);
    CHECK(qv::euler_form(kron, {1, 1}, {1, 1}) == 0);

    CHECK(qv::twist_form(a2, {1, 0}, {0, 1}) == 1);
    CHECK(qv::twist_form(jordan, {1}, {1}) == 2);
    CHECK(qv::twist_form(a2, {1, 1}, {1, 1}) == 3);

    CHECK(qv::space_dims(a2, {1, 1}) == std::pair<long long, long long>{1, 2});
    CHECK(qv::space_dims(kron, {1, 1}) == std::pair<long long, long long>{2, 2});
    CHECK(qv::space_dims(jordan, {2}) == std::pair<long long, long long>{4, 4});
}

TEST_CASE("euler form bilinearity and twist relation on random triples") {
    auto kron = qv::make_kronecker();
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> d(0, 6);
    for (int trial = 0; trial < 200; ++trial) {
        DimVector a{d(rng), d(rng)}, b{d(rng), d(rng)}, c{d(rng), d(rng)};
        CHECK(qv::euler_form(kron, qv::dim_add(a, b), c) ==
              qv::euler_form(kron, a, c) + qv::euler_form(kron, b, c));
        CHECK(qv::euler_form(kron, a, qv::dim_add(b, c)) ==
              qv::euler_form(kron, a, b) + qv::euler_form(kron, a, c));
        long long dot = 0;
        for (int i = 0; i < 2; ++i) dot += 1ll * a[i] * b[i];
        CHECK(qv::twist_form(kron, a, b) + qv::euler_form(kron, a, b) == 2 * dot);
    }
}

TEST_CASE("quiver JSON round trip and validation") {
    std::string text = R"({"vertices": ["a","b"], "arrows": [{"src":"a","tgt":"b"},{"src":"a","tgt":"b"}]})";
    auto q = qv::quiver_from_json(text);
    CHECK(q.vertices == std::vector<std::string>{"a", "b"});
    REQUIRE(q.arrows.size() == 2);
    CHECK(q.arrows[0].src == 0);
    CHECK(q.arrows[0].tgt == 1);
    auto q2 = qv::quiver_from_json(qv::quiver_to_json(q));
    CHECK(q2.vertices == q.vertices);
    CHECK(q2.arrows.size() == q.arrows.size());

    CHECK_THROWS_AS(qv::quiver_from_json("{"), InputError);
    CHECK_THROWS_AS(qv::quiver_from_json(R"({"vertices": []})"), InputError);
    CHECK_THROWS_AS(qv::quiver_from_json(R"({"vertices": ["a","a"]})"), InputError);
    CHECK_THROWS_AS(
        qv::quiver_from_json(R"({"vertices": ["a"], "arrows":[{"src":"a","tgt":"z"}]})"),
        InputError);
    // loops are allowed
    auto loop = qv::quiver_from_json(R"({"vertices": ["a"], "arrows":[{"src":"a","tgt":"a"}]})");
    CHECK(loop.has_loop_at(0));
}

TEST_CASE("dimension vector helpers") {
    auto a2 = qv::make_a2();
    CHECK_THROWS_AS(qv::euler_form(a2, {1}, {0, 1}), QuiverMismatch);
    CHECK(qv::dim_from_string("1,2") == DimVector{1, 2});
    CHECK_THROWS_AS(qv::dim_from_string("1,x"), InputError);
    CHECK_THROWS_AS(qv::dim_from_string("1,2", 3), InputError);
    CHECK(qv::dim_to_string({1, 0, 2}) == "1,0,2");

    auto below = qv::splittings_below({1, 1});
    REQUIRE(below.size() == 4);
    CHECK(below[0] == DimVector{0, 0});
    CHECK(below[3] == DimVector{1, 1});
}
