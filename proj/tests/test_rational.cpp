#include <random>

#include <doctest.h>

#include "helpers.hpp"
#include "specnorm/error.hpp"

using namespace specnorm;
using testing::vec;
using testing::with_o;

TEST_CASE("pairing examples") {
    CHECK(pairing(vec({1, 0}), vec({1, 0})) == 1);
    CHECK(pairing(RationalVector{}, vec({3, -7})) == 0);
    CHECK(pairing(vec({2, -3}), vec({1, 1})) == -1);
}

TEST_CASE("zero entries are not stored") {
    CHECK(vec({0, 0}).is_zero());
    CHECK(vec({1, 0}) == RationalVector::unit(Coordinate::ground("x")));
    CHECK((vec({1, 2}) - vec({1, 2})).is_zero());
}

TEST_CASE("normalize") {
    const auto o = Coordinate::distinguished();
    CHECK(normalize(vec({3, 4}), o) == vec({3, 4}));
    CHECK(normalize(with_o(vec({2}), -3), o) == with_o(vec({Scalar(2, 3)}), -1));
    CHECK(normalize(with_o(vec({5}), 1), o) == with_o(vec({5}), 1));
}

TEST_CASE("reduce_by") {
    const auto o = Coordinate::distinguished();
    CHECK(reduce_by(vec({1, 2}), with_o(vec({0, 1}), 1), o) == vec({1, 2}));
    CHECK(reduce_by(with_o(vec({1, 2}), 2), with_o(vec({0, 1}), 1), o) == vec({1, 0}));
    CHECK_THROWS_AS(reduce_by(vec({1}), vec({1}), o), Error);

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> d(-5, 5);
    for (int i = 0; i < 50; ++i) {
        auto x = with_o(vec({d(rng), d(rng)}), d(rng));
        int uo = d(rng);
        if (uo == 0) uo = 1;
        auto u = with_o(vec({d(rng), d(rng)}), uo);
        CHECK(reduce_by(x, u, o) == reduce_by(x, -u, o));
        CHECK(reduce_by(x, u, o).at(o) == 0);
    }
}

TEST_CASE("pairing is bilinear") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> d(-6, 6);
    for (int i = 0; i < 100; ++i) {
        auto a = vec({d(rng), d(rng), d(rng)});
        auto b = vec({d(rng), d(rng), d(rng)});
        auto x = vec({d(rng), d(rng), d(rng)});
        Scalar lambda(d(rng), 1 + (d(rng) + 6));
        lambda.canonicalize();
        CHECK(pairing(a + b, x) == pairing(a, x) + pairing(b, x));
        CHECK(pairing(lambda * a, x) == lambda * pairing(a, x));
    }
}

TEST_CASE("scalars and coordinates round-trip through text") {
    CHECK(parse_scalar("-6/4") == Scalar(-3, 2));
    CHECK(to_string(Scalar(-3, 2)) == "-3/2");
    CHECK_THROWS_AS(parse_scalar("1/0"), Error);
    CHECK_THROWS_AS(parse_scalar("abc"), Error);
    CHECK(Coordinate::parse("o") == Coordinate::distinguished());
    CHECK(Coordinate::parse("#3") == Coordinate::ext(3));
    CHECK(Coordinate::parse("x") == Coordinate::ground("x"));
    CHECK(Coordinate::ground("zz") < Coordinate::distinguished());
    CHECK(Coordinate::distinguished() < Coordinate::ext(0));
}

TEST_CASE("ray_key") {
    CHECK(ray_key(vec({2, 4})) == ray_key(vec({1, 2})));
    CHECK(ray_key(vec({2, 4})) != ray_key(vec({-1, -2})));
    CHECK(same_ray(vec({1, 3}), vec({Scalar(1, 2), Scalar(3, 2)})));
    CHECK_FALSE(same_ray(vec({1, 3}), vec({-1, -3})));
}
