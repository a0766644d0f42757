#include <memory>
#include <random>
#include <set>

#include <doctest.h>

#include "helpers.hpp"
#include "specnorm/error.hpp"
#include "specnorm/hom.hpp"

using namespace specnorm;
using testing::vec;

namespace {

const RationalVector delta_o = RationalVector::unit(Coordinate::distinguished());

RationalVector ext(std::initializer_list<std::pair<std::uint32_t, int>> entries) {
    std::vector<RationalVector::Entry> out;
    for (const auto& [i, v] : entries) out.emplace_back(Coordinate::ext(i), Scalar(v));
    return RationalVector(std::move(out));
}

// value(a) = 1 iff (a|s) > 0, into the 2-chain.
PartialHom point_hom(const RationalVector& s) {
    auto chain = std::make_shared<const FiniteLattice>(chain_lattice(2));
    PointFamily base;
    base.points.emplace_back(s, 1);
    return PartialHom(chain, base);
}

}  // namespace

TEST_CASE("evaluation") {
    auto h = point_hom(vec({1, 2}));
    CHECK(h.eval(Term::bottom()) == 0);
    CHECK(h.eval(meet(Term::literal(vec({1, 0})), Term::literal(vec({-1, 0})))) == 0);
    CHECK(h.value(RationalVector{}) == 0);

    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int i = 0; i < 100; ++i) {
        const Term t = join(meet(Term::literal(vec({c(rng), c(rng)})), Term::literal(vec({c(rng), c(rng)}))),
                            Term::literal(vec({c(rng), c(rng)})));
        CHECK((h.eval(t) == 1) == contains_point(t, vec({1, 2})));
    }
}

TEST_CASE("extension conditions with D empty") {
    auto sq = std::make_shared<const FiniteLattice>(boolean_square());
    PartialHom h(sq);
    const Element a = sq->index_of("a"), b = sq->index_of("b");
    CHECK(check_ext_conditions(h, delta_o, a, b).ok);
    CHECK(check_ext_conditions(h, delta_o, 0, 0).ok);
    auto bad = check_ext_conditions(h, delta_o, a, a);
    CHECK_FALSE(bad.ok);
    REQUIRE(bad.violations.size() == 1);
    CHECK(bad.violations[0].which == ExtInequality::disjoint);
    CHECK_THROWS_AS(extend(h, delta_o, a, a), Error);

    auto h2 = extend(h, delta_o, a, b);
    CHECK(h2.value(delta_o) == a);
    CHECK(h2.value(-delta_o) == b);
    CHECK(check_coherence(h2).coherent);
    auto h0 = extend(h, delta_o, 0, 0);
    CHECK(h0.value(delta_o) == 0);
    CHECK(h0.value(-delta_o) == 0);
}

TEST_CASE("candidate pairs on the 2-chain") {
    auto chain = std::make_shared<const FiniteLattice>(chain_lattice(2));
    PartialHom h(chain);
    auto list = candidate_pairs(h, delta_o);
    std::set<std::pair<Element, Element>> got(list.pairs.begin(), list.pairs.end());
    CHECK(got == std::set<std::pair<Element, Element>>{{0, 0}, {0, 1}, {1, 0}});
    CHECK(list.range_consonant);
}

TEST_CASE("violated lower inequalities block the extension") {
    // #0 valued 1 and -#0 valued 0; c = #1 - #0 needs [[c]] v [[#0]] to cover [[#1]].
    auto chain = std::make_shared<const FiniteLattice>(chain_lattice(2));
    PartialHom h(chain);
    h = extend(h, ext({{0, 1}}), 1, 0);
    h = extend(h, ext({{1, 1}}), 1, 0);
    const RationalVector c = ext({{0, 1}, {1, -1}});
    const RationalVector lower = ext({{0, 1}});
    CHECK(h.value(lower) == 1);
    bool some_fail = false;
    for (Element p = 0; p < 2; ++p)
        for (Element m = 0; m < 2; ++m) {
            auto r = check_ext_conditions(h, c, p, m);
            if (!r.ok) {
                some_fail = true;
                CHECK_FALSE(try_extend(h, c, p, m).has_value());
                CHECK_THROWS_AS(extend(h, c, p, m), Error);
            } else {
                auto out = extend(h, c, p, m);
                CHECK(check_coherence_bounded(out, 3).coherent);
            }
        }
    CHECK(some_fail);
    CHECK_FALSE(candidate_pairs(h, c).pairs.empty());
}

TEST_CASE("missing lower values: required throws, available skips") {
    // #1 and 2#0 + #1 valued without any level-#0 generator.
    auto chain = std::make_shared<const FiniteLattice>(chain_lattice(2));
    PartialHom bare(chain);
    bare = extend(bare, ext({{1, 1}}), 1, 0);
    bare = bare.with(ext({{0, 2}, {1, 1}}), 1, 0);
    REQUIRE(check_coherence(bare).coherent);
    const RationalVector d = ext({{0, -1}, {1, 1}});
    CHECK_THROWS_AS(check_ext_conditions(bare, d, 1, 0), Error);
    CHECK_THROWS_AS(candidate_pairs(bare, d), Error);
    auto list = candidate_pairs(bare, d, {}, LowerValues::available);
    REQUIRE_FALSE(list.pairs.empty());
    for (const auto& [p, m] : list.pairs)
        if (auto out = try_extend(bare, d, p, m, nullptr, LowerValues::available)) CHECK(check_coherence(*out).coherent);
    CHECK(try_extend(bare, d, 1, 0, nullptr, LowerValues::available).has_value());
    CHECK_FALSE(try_extend(bare, d, 1, 1, nullptr, LowerValues::available).has_value());
}

TEST_CASE("coherence catches inconsistent values") {
    auto chain = std::make_shared<const FiniteLattice>(chain_lattice(2));
    PartialHom h(chain);
    h = extend(h, ext({{0, 1}}), 1, 0);
    // [[#0]] and [[-#0]] cover everything except the hyperplane; make [[2#0 - ...]] absurd.
    auto broken = h.with(ext({{0, 1}, {1, 1}}), 0, 0);
    broken = broken.with(ext({{1, 1}}), 0, 0);
    CHECK_FALSE(check_coherence(broken).coherent);
    CHECK_FALSE(check_coherence_bounded(broken, 3).coherent);
}

TEST_CASE("closedness criterion") {
    auto h = point_hom(vec({1}));
    auto lambda = closedness_criterion(h, vec({1}), vec({1}), 0, Scalar(1024));
    REQUIRE(lambda);
    CHECK(*lambda == 1);
    // e = value[[a]] makes lambda = 1 succeed for any b with the precondition.
    auto h2 = point_hom(vec({1, 1}));
    lambda = closedness_criterion(h2, vec({1, 0}), vec({0, 1}), 1, Scalar(1024));
    REQUIRE(lambda);
    CHECK(*lambda == 1);
    CHECK_THROWS_AS(closedness_criterion(h2, vec({1, 0}), vec({0, -1}), 0, Scalar(1024)), Error);
}

TEST_CASE("closure step on ground obligations") {
    auto h = point_hom(vec({1, 1}));
    auto r = closure_step(h, {vec({2, 1}), vec({1, 0}), 0}, Scalar(1024));
    CHECK_FALSE(r.extended);
    const auto& l = r.hom.target();
    CHECK(l.leq(r.hom.value(vec({2, 1}) - r.lambda * vec({1, 0})), l.join(h.value(vec({-1, 0})), 0)));
}

TEST_CASE("closure step adjoins a - lambda b") {
    auto chain = std::make_shared<const FiniteLattice>(chain_lattice(2));
    PartialHom h(chain);
    h = extend(h, ext({{0, 1}}), 1, 0);
    h = extend(h, ext({{1, 1}}), 1, 0);
    const Obligation ob{ext({{0, 1}}), ext({{1, 1}}), 0};
    auto r = closure_step(h, ob, Scalar(1024));
    const auto& l = r.hom.target();
    CHECK(l.leq(r.hom.value(ob.a - r.lambda * ob.b), l.join(h.value(-ob.b), ob.e)));
    CHECK(r.c == ray_key(ob.a - r.lambda * ob.b));
    CHECK(check_coherence(r.hom).coherent);
    // Level shapes at the chosen lambda.
    const Coordinate o = top_coordinate(r.c);
    for (const auto& u : level_generators(r.hom, o)) {
        if (u == r.c || u == -r.c) continue;
        if (u.at(o) == -r.c.at(o)) {
            CHECK(l.leq(r.hom.value(u + r.c), l.join(r.hom.value(u), r.bound)));
        } else {
            CHECK(l.leq(r.hom.value(u), l.join(r.hom.value(u - r.c), r.bound)));
        }
    }
    CHECK_THROWS_AS(closure_step(h, {ext({{0, 1}}), ext({{1, -1}}), 0}, Scalar(1024)), Error);
}

TEST_CASE("trivial obligations succeed at lambda 1") {
    auto chain = std::make_shared<const FiniteLattice>(chain_lattice(2));
    PartialHom h(chain);
    h = extend(h, ext({{0, 1}}), 1, 0);
    h = extend(h, ext({{1, 1}}), 0, 1);
    auto r = closure_step(h, {ext({{0, 1}}), ext({{1, 1}}), 1}, Scalar(1024));
    CHECK(r.lambda == 1);
    CHECK(r.hom.target().leq(r.c_value, r.bound));
}
