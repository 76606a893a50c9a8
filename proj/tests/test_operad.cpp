#include <doctest.h>

#include <json.hpp>

#include <set>

#include "dendron/fixtures.hpp"
#include "dendron/operad.hpp"

using namespace dendron;

TEST_CASE("the bundled operads validate") {
    auto ass = ass_operad(4);
    CHECK(ass.num_operations() == 33);  // 1 + 2 + 6 + 24
    CHECK(ass.validate().empty());
    CHECK(ass.sigma_freeness().is_free);

    auto com = com_operad(4);
    CHECK(com.validate().empty());
    auto freeness = com.sigma_freeness();
    CHECK_FALSE(freeness.is_free);
    CHECK(freeness.witness.find("m2") != std::string::npos);

    CHECK(trivial_operad().validate().empty());
}

TEST_CASE("free operads of trees") {
    auto unit_only = tree_operad(Tree::edge_only());
    CHECK(unit_only.colours().size() == 1);
    CHECK(unit_only.num_operations() == 1);

    auto oc2 = tree_operad(Tree::corolla(2));
    CHECK(oc2.validate().empty());
    CHECK(oc2.sigma_freeness().is_free);
    // three units plus the two orderings of the binary cut
    CHECK(oc2.num_operations() == 5);
    CHECK(oc2.ops_with_output("r", 2).size() == 2);

    auto oc3 = tree_operad(Tree::corolla(3));
    CHECK(oc3.ops_with_output("r", 3).size() == 6);
}

TEST_CASE("operad maps out of a free tree operad are tree morphisms") {
    auto site_trees = enumerate_trees(2, 4);
    for (const auto& s : {Tree::corolla(2), fixture_tree("tree-2v")}) {
        auto op = std::make_shared<Operad>(tree_operad(s));
        auto nerve = nerve_valuation(op);
        for (const auto& t : site_trees)
            CHECK(nerve.values(t).size() == enumerate_homs(t, s).size());
    }
}

TEST_CASE("nerve functoriality survives tabulation") {
    auto site = make_omega_site(2, 4);
    auto ass = std::make_shared<Operad>(ass_operad(3));
    Presheaf nass = tabulate(nerve_valuation(ass), site);
    CHECK(nass.check_functorial().empty());
    int eta = site.tree_id(Tree::edge_only());
    CHECK(nass.size(eta) == 1);  // one colour
    int c2 = site.tree_id(Tree::corolla(2));
    CHECK(nass.size(c2) == 2);  // the two orderings
}

TEST_CASE("free algebras count words") {
    auto ass3 = std::make_shared<Operad>(ass_operad(3));
    Algebra fxy = free_algebra(ass3, {{"x", "c"}, {"y", "c"}}, 3);
    CHECK(fxy.carrier("c").size() == 14);  // 2 + 4 + 8
    CHECK(fxy.validate().empty());

    Algebra none = free_algebra(ass3, {}, 3);
    CHECK(none.carrier("c").empty());  // no nullary operations, no generators

    auto triv = std::make_shared<Operad>(trivial_operad());
    Algebra one = free_algebra(triv, {{"x", "c"}}, 3);
    CHECK(one.carrier("c").size() == 1);

    auto com = std::make_shared<Operad>(com_operad(3));
    CHECK_THROWS_AS(free_algebra(com, {{"x", "c"}}, 3), InvalidInput);

    // multiplication works in bound and is undefined past the truncation
    int mul = ass3->op_by_name("s1.2.");
    int x = fxy.carrier_index("c", "s1.(x)");
    int y = fxy.carrier_index("c", "s1.(y)");
    int xy = fxy.mult(mul, {x, y});
    CHECK(fxy.carrier("c")[xy] == "s1.2.(x,y)");
    int xyxy = fxy.mult(mul, {xy, xy});
    CHECK(xyxy == -1);  // length four exceeds the truncation
}

TEST_CASE("the algebra presheaf routes agree and project correctly") {
    auto ass = std::make_shared<Operad>(ass_operad(4));
    auto parity = std::make_shared<Algebra>(parity_algebra(ass));
    auto terminal = std::make_shared<Algebra>(terminal_algebra(ass));

    for (const auto& t : {Tree::edge_only(), Tree::corolla(2), fixture_tree("tree-2v"),
                          fixture_tree("fig-tree-4v")}) {
        auto cmp = compare_g_routes(*ass, *parity, t);
        CHECK(cmp.agree);
        // the terminal algebra gives the nerve back
        auto cmp_t = compare_g_routes(*ass, *terminal, t);
        CHECK(cmp_t.agree);
        CHECK(cmp_t.local_route.size() == nerve_valuation(ass).values(t).size());
    }

    auto gv = g_valuation(ass, parity);
    Tree eta = Tree::edge_only("e");
    CHECK(gv.presheaf.values(eta).size() == 2);  // the two parities

    auto site = make_omega_site(2, 4);
    Presheaf g_tab = tabulate(gv.presheaf, site);
    CHECK(g_tab.check_functorial().empty());
}

TEST_CASE("strict covariant fibration checks") {
    auto ass = std::make_shared<Operad>(ass_operad(4));
    auto nass = nerve_valuation(ass);
    auto parity = std::make_shared<Algebra>(parity_algebra(ass));
    auto gv = g_valuation(ass, parity);
    CHECK(check_strict_covariant_fibration(gv.presheaf, nass, gv.project, 3).pass);

    auto idproj = [](const Tree&, const std::string& s) { return s; };
    CHECK(check_strict_covariant_fibration(nass, nass, idproj, 3).pass);
}

TEST_CASE("operad JSON round trip through the tabulated form") {
    auto oc2 = tree_operad(Tree::corolla(2));
    auto j = oc2.to_json(2);
    Operad back = operad_from_json(j);
    CHECK(back.num_operations() == oc2.num_operations());
    CHECK(back.validate().empty());
    // composition entries survive
    int unit = back.unit("r");
    int op = back.ops_with_output("r", 2)[0];
    CHECK(back.gamma(unit, {op}) == op);
}

TEST_CASE("the unit element of the free algebra on the leaves") {
    auto ass = std::make_shared<Operad>(ass_operad(3));
    Tree t2 = fixture_tree("tree-2v");
    auto nerve = nerve_valuation(ass);
    for (const auto& x : nerve.values(t2)) {
        auto unit = free_algebra_unit(ass, t2, x, 3);
        CHECK(unit.projects_to_nerve);
        CHECK(unit.algebra.carrier("c").size() >= 2);
    }
    // leafless trees need no generators at all, but the associative operad
    // has no nullary part, so there is nothing over them
    CHECK(nerve.values(fixture_tree("c0")).empty());
}
