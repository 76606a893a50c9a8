#include <doctest.h>

#include <json.hpp>

#include "dendron/finset.hpp"
#include "dendron/fixtures.hpp"

using namespace dendron;

TEST_CASE("partial map composition") {
    FinSet two({"1", "2"}), one({"1"});
    PartialMap f(two, one, {{"1", "1"}});  // defined on {1}
    PartialMap g(one, two, {{"1", "2"}});  // total
    auto gf = compose_partial(g, f);
    CHECK(gf.domain() == std::vector<std::string>{"1"});
    CHECK(*gf.apply("1") == "2");

    CHECK(compose_partial(PartialMap::identity(one), f) == f);
    CHECK(compose_partial(f, PartialMap::identity(two)) == f);

    auto never = PartialMap::nowhere_defined(one, two);
    CHECK(compose_partial(never, f).mapping().empty());
    CHECK(compose_partial(f, PartialMap::nowhere_defined(two, two)).mapping().empty());

    CHECK_THROWS_AS(compose_partial(f, f), InvalidInput);
}

TEST_CASE("surjection-injection factorization and the dual classifier") {
    FinSet two = FinSet::skeleton(2), one = FinSet::skeleton(1);
    {
        PartialMap swap(two, two, {{"1", "2"}, {"2", "1"}});
        auto fac = reedy_factorize_gamma(swap);
        CHECK(fac.surjection.is_bijection());
        CHECK(fac.injection.is_bijection());
        CHECK(fac.dual_positive);
        CHECK(fac.dual_negative);
    }
    {
        // inert surjection from a disjoint union onto one part
        FinSet ab({"L:1", "R:1", "R:2"});
        PartialMap inert(ab, one, {{"L:1", "1"}});
        auto fac = reedy_factorize_gamma(inert);
        CHECK(fac.surjection == PartialMap(ab, one, {{"L:1", "1"}}));
        CHECK(fac.injection.is_identity());
        CHECK(fac.dual_positive);
        CHECK_FALSE(fac.dual_negative);
    }
    {
        PartialMap fold(two, one, {{"1", "1"}, {"2", "1"}});
        auto fac = reedy_factorize_gamma(fold);
        CHECK(fac.injection.is_identity());
        CHECK(fac.dual_positive);
        CHECK_FALSE(fac.dual_negative);
        CHECK(compose_partial(fac.injection, fac.surjection) == fold);
    }
    {
        PartialMap incl(one, two, {{"1", "2"}});
        auto fac = reedy_factorize_gamma(incl);
        CHECK(fac.dual_negative);
        CHECK_FALSE(fac.dual_positive);
    }
}

TEST_CASE("leaf functor on the elementary morphisms") {
    Tree t2 = fixture_tree("tree-2v");  // r -> x -> {c, d}
    // top face chopping the binary vertex: both leaves land on the new leaf
    for (const auto& face : elementary_faces(t2)) {
        if (face.source().edge_count() != 2) continue;
        auto lam = leaf_functor(face);
        CHECK(lam.is_total());
        CHECK(*lam.apply("c") == "x");
        CHECK(*lam.apply("d") == "x");
    }
    // the root face of the four-vertex tree forgets the discarded branch
    Tree fig = fixture_tree("fig-tree-4v");
    for (const auto& face : elementary_faces(fig)) {
        if (face.source().root() == fig.root()) continue;
        auto lam = leaf_functor(face);
        CHECK_FALSE(lam.defined_at("a"));
        CHECK(*lam.apply("b") == "b");
        CHECK(*lam.apply("c") == "c");
    }
    // inner faces restrict to leaf bijections
    for (const auto& face : elementary_faces(fig)) {
        if (face.source().edge_count() == fig.edge_count() - 1 &&
            face.source().root() == fig.root() &&
            face.source().leaves().size() == fig.leaves().size())
            CHECK(leaf_functor(face).is_bijection());
    }
    // degeneracies are leaf bijections
    for (const auto& degen : elementary_degeneracies(fig))
        CHECK(leaf_functor(degen).is_bijection());
}

TEST_CASE("leaf functor is contravariantly functorial on samples") {
    Tree fig = fixture_tree("fig-tree-4v");
    for (const auto& sigma : elementary_degeneracies(fig)) {
        for (const auto& face : elementary_faces(fig)) {
            // face : S -> fig, sigma : fig -> T; composite sigma ∘ face
            auto composite = compose(sigma, face);
            CHECK(leaf_functor(composite) ==
                  compose_partial(leaf_functor(face), leaf_functor(sigma)));
        }
    }
}

TEST_CASE("inv sends injections to inert maps, functorially and injectively") {
    FinSet a = FinSet::skeleton(1), b = FinSet::skeleton(2), c = FinSet::skeleton(4);
    PartialMap incl(a, b, {{"1", "1"}});
    auto inert = inv_functor(incl);
    CHECK(inert.source() == b);
    CHECK(inert.target() == a);
    CHECK(inert.is_inert());
    CHECK(inert.domain() == std::vector<std::string>{"1"});

    CHECK(inv_functor(PartialMap::identity(b)).is_identity());
    CHECK_THROWS_AS(inv_functor(PartialMap(b, a, {{"1", "1"}, {"2", "1"}})), InvalidInput);

    for (const auto& m1 : all_total_injections(a, b)) {
        for (const auto& m2 : all_total_injections(b, c)) {
            CHECK(inv_functor(compose_partial(m2, m1)) ==
                  compose_partial(inv_functor(m1), inv_functor(m2)));
        }
    }
}

TEST_CASE("partial map JSON round trip") {
    FinSet a({"x", "y"}), b({"u"});
    PartialMap f(a, b, {{"x", "u"}});
    CHECK(PartialMap::from_json(f.to_json()) == f);
}
