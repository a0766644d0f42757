#include <random>

#include <doctest.h>

#include "helpers.hpp"
#include "specnorm/error.hpp"
#include "specnorm/polyhedral.hpp"

using namespace specnorm;
using testing::vec;

namespace {

Scalar multiplier(const std::vector<std::pair<RationalVector, Scalar>>& side, const RationalVector& v) {
    for (const auto& [w, m] : side)
        if (w == v) return m;
    return 0;
}

}  // namespace

TEST_CASE("feasible_mixed examples") {
    std::vector<RationalVector> none;
    std::vector<RationalVector> some = {vec({1, 2})};
    auto r = feasible_mixed(none, some);
    REQUIRE(std::holds_alternative<WitnessPoint>(r));
    CHECK(std::get<WitnessPoint>(r).x.is_zero());

    std::vector<RationalVector> opposite = {vec({1, 0}), vec({-1, 0})};
    r = feasible_mixed(opposite, none);
    REQUIRE(std::holds_alternative<FarkasCertificate>(r));
    const auto& cert = std::get<FarkasCertificate>(r);
    CHECK(multiplier(cert.xi, vec({1, 0})) == multiplier(cert.xi, vec({-1, 0})));
    CHECK(multiplier(cert.xi, vec({1, 0})) > 0);
    CHECK(verify_certificate(cert, opposite, none));

    std::vector<RationalVector> s = {vec({1, 0})}, n = {vec({0, 1})};
    r = feasible_mixed(s, n);
    REQUIRE(std::holds_alternative<WitnessPoint>(r));
    CHECK(verify_witness(std::get<WitnessPoint>(r), s, n, Scalar(1)));
}

TEST_CASE("entails_basic examples") {
    const auto x = vec({1, 0});
    {
        std::vector<RationalVector> a = {x, -x}, b;
        auto e = entails_basic(a, b);
        CHECK(e.holds);
        const auto& c = std::get<FarkasCertificate>(e.certificate);
        CHECK(multiplier(c.xi, x) == multiplier(c.xi, -x));
    }
    {
        std::vector<RationalVector> a = {vec({2, 0})}, b = {vec({1, 0})};
        auto e = entails_basic(a, b);
        REQUIRE(e.holds);
        const auto& c = std::get<FarkasCertificate>(e.certificate);
        CHECK(multiplier(c.eta, b[0]) / multiplier(c.xi, a[0]) == 2);
    }
    {
        std::vector<RationalVector> a = {vec({1, 1}), vec({1, -1})}, b = {vec({1, 0})};
        auto e = entails_basic(a, b);
        REQUIRE(e.holds);
        const auto& c = std::get<FarkasCertificate>(e.certificate);
        CHECK(multiplier(c.xi, a[0]) == multiplier(c.xi, a[1]));
        CHECK(multiplier(c.eta, b[0]) / multiplier(c.xi, a[0]) == 2);
        CHECK(verify_certificate(c, a, b));
    }
    {
        std::vector<RationalVector> a = {vec({1, 0})}, b = {vec({0, 1})};
        auto e = entails_basic(a, b);
        CHECK_FALSE(e.holds);
        const auto& w = std::get<WitnessPoint>(e.certificate);
        CHECK(pairing(a[0], w.x) > 0);
        CHECK(pairing(b[0], w.x) <= 0);
    }
    {
        std::vector<RationalVector> a, b = {vec({1, 0})};
        CHECK_FALSE(entails_basic(a, b).holds);
    }
}

TEST_CASE("is_empty_meet examples") {
    std::vector<RationalVector> a = {vec({1, 0}), vec({-1, 0})};
    CHECK(is_empty_meet(a).holds);
    std::vector<RationalVector> single = {vec({1, 0})};
    auto e = is_empty_meet(single);
    CHECK_FALSE(e.holds);
    CHECK(pairing(single[0], std::get<WitnessPoint>(e.certificate).x) > 0);
    std::vector<RationalVector> three = {vec({1, 0}), vec({0, 1}), vec({-1, -1})};
    e = is_empty_meet(three);
    REQUIRE(e.holds);
    const auto& c = std::get<FarkasCertificate>(e.certificate);
    CHECK(multiplier(c.xi, three[0]) == multiplier(c.xi, three[1]));
    CHECK(multiplier(c.xi, three[1]) == multiplier(c.xi, three[2]));
    std::vector<RationalVector> empty;
    CHECK_THROWS_AS(is_empty_meet(empty), Error);
}

TEST_CASE("fm_oracle") {
    std::vector<RationalVector> s = {vec({1, 1})}, n = {vec({1, 0}), vec({0, 1})};
    CHECK(std::holds_alternative<Infeasible>(fm_oracle(s, n)));

    std::vector<RationalVector> opposite = {vec({1, 0}), vec({-1, 0})}, none;
    CHECK(std::holds_alternative<Infeasible>(fm_oracle(opposite, none)));
    std::vector<RationalVector> s2 = {vec({1, 0})}, n2 = {vec({0, 1})};
    auto r = fm_oracle(s2, n2);
    REQUIRE(std::holds_alternative<WitnessPoint>(r));
    CHECK(verify_witness(std::get<WitnessPoint>(r), s2, n2));

    std::vector<RationalVector> wide;
    for (int i = 0; i < 13; ++i) wide.push_back(vec({i + 1, 1}));
    CHECK_THROWS_AS(fm_oracle(wide, none), Error);
}

TEST_CASE("feasible_mixed agrees with fm_oracle") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> coef(-3, 3), count(0, 3), dim(1, 3);
    for (int trial = 0; trial < 200; ++trial) {
        const int d = dim(rng);
        auto random_vec = [&] {
            std::vector<Scalar> v;
            for (int i = 0; i < d; ++i) v.push_back(coef(rng));
            return d == 1 ? vec({v[0]}) : d == 2 ? vec({v[0], v[1]}) : vec({v[0], v[1], v[2]});
        };
        std::vector<RationalVector> s, n;
        for (int i = count(rng); i > 0; --i) s.push_back(random_vec());
        for (int i = count(rng); i > 0; --i) n.push_back(random_vec());
        auto lp = feasible_mixed(s, n);
        auto fm = fm_oracle(s, n);
        CHECK(std::holds_alternative<WitnessPoint>(lp) == std::holds_alternative<WitnessPoint>(fm));
        if (auto* w = std::get_if<WitnessPoint>(&lp)) CHECK(verify_witness(*w, s, n, Scalar(1)));
        if (auto* c = std::get_if<FarkasCertificate>(&lp)) CHECK(verify_certificate(*c, s, n));
    }
}

TEST_CASE("cone_combination") {
    auto ray = [](std::vector<std::pair<std::size_t, Scalar>> e) { return *integer_ray(e); };
    const IntegerRay a = ray({{0, Scalar(3, 2)}, {1, Scalar(1, 2)}});
    const IntegerRay g0 = ray({{0, 1}});
    const IntegerRay g1 = ray({{1, 2}});
    const IntegerRay g2 = ray({{0, -1}});
    std::vector<const IntegerRay*> gens = {&g0, &g1, &g2};
    auto coef = cone_combination(a, gens);
    REQUIRE(coef);
    Scalar x = 0, y = 0;
    for (const auto& [j, c] : *coef) {
        CHECK(c >= 0);
        if (j == 0) x += c;
        if (j == 1) y += 2 * c;
        if (j == 2) x -= c;
    }
    CHECK(x == Scalar(3, 2));
    CHECK(y == Scalar(1, 2));

    std::vector<const IntegerRay*> only_x = {&g0};
    CHECK_FALSE(cone_combination(a, only_x));
}
