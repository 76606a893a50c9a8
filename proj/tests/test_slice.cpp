#include <doctest.h>

#include <json.hpp>

#include <set>

#include "dendron/fixtures.hpp"
#include "dendron/operad.hpp"
#include "dendron/slice.hpp"

using namespace dendron;

TEST_CASE("attachment groupoids") {
    // a leafless tree has exactly one object with trivial automorphisms
    Tree c0 = fixture_tree("c0");
    auto g0 = attachment_groupoid(c0, 3);
    CHECK(g0.num_objects() == 1);
    CHECK(g0.automorphism_count(0) == 1);

    Tree eta = Tree::edge_only("e");
    auto g1 = attachment_groupoid(eta, 2);
    CHECK(g1.num_objects() == 3);
    std::multiset<long long> auts;
    for (int o = 0; o < g1.num_objects(); ++o) auts.insert(g1.automorphism_count(o));
    CHECK(auts == std::multiset<long long>{1, 1, 2});
    CHECK(g1.validate().empty());

    Tree c2 = fixture_tree("c2");
    auto g2 = attachment_groupoid(c2, 1);
    CHECK(g2.num_objects() == 4);
    for (int o = 0; o < g2.num_objects(); ++o) CHECK(g2.automorphism_count(o) == 1);

    CHECK(attachment_object_count(fixture_tree("fig-tree-4v"), 3) == 64);
}

TEST_CASE("attachment restriction along the generators") {
    Tree fig = fixture_tree("fig-tree-4v");
    ArityFunction n = {{"a", 2}, {"b", 1}, {"c", 0}};
    // identity leaves the attachment alone
    CHECK(attachment_restrict(identity_morphism(fig), n) == n);

    // an inner face transports arities along the leaf bijection
    for (const auto& face : elementary_faces(fig)) {
        if (face.source().edge_count() != fig.edge_count() - 1) continue;
        std::string missing;
        for (const auto& e : fig.edge_names())
            if (!face.source().has_edge(e)) missing = e;
        if (missing.empty() || !fig.is_inner_edge(missing)) continue;
        auto restricted = attachment_restrict(face, n);
        for (const auto& [leaf, v] : restricted) CHECK(v == n.at(leaf));
    }

    // a top face sums the leaf counts above the new leaf
    Tree t2 = fixture_tree("tree-2v");  // leaves c, d
    ArityFunction m = {{"c", 2}, {"d", 1}};
    for (const auto& face : elementary_faces(t2)) {
        if (face.source().edge_count() != 2) continue;  // the chopped tree r -> x
        auto restricted = attachment_restrict(face, m);
        REQUIRE(restricted.count("x"));
        CHECK(restricted.at("x") == 3);
    }
}

TEST_CASE("attachment morphisms validate and respect leaves") {
    Tree t2 = fixture_tree("tree-2v");
    ArityFunction n = {{"c", 2}, {"d", 0}};
    Tree sharp = attach_corollas(t2, n);
    CHECK(sharp.degree() == t2.degree() + 2);
    CHECK(sharp.leaves().size() == 2);

    for (const auto& face : elementary_faces(t2)) {
        auto sharp_map = attachment_morphism(face, n);
        CHECK(sharp_map.target() == sharp);
        // base part agrees with the face
        for (const auto& e : face.source().edge_names())
            CHECK(sharp_map.apply(e) == face.apply(e));
    }
}

TEST_CASE("slice values, projection and lift over the associative nerve") {
    auto ass = std::make_shared<Operad>(ass_operad(4));
    auto nass = nerve_valuation(ass);
    Tree eta = Tree::edge_only("e");
    std::string colour = nass.values(eta)[0];
    auto sl = slice_construction({"u"}, {{"u", colour}}, nass, 2);

    auto at_eta = sl.presheaf.values(eta);
    CHECK(at_eta.size() == 2);  // unary and binary attachments, one class each
    for (const auto& v : at_eta) CHECK(sl.project(eta, v) == colour);

    std::string lifted = sl.lift("u");
    CHECK(std::find(at_eta.begin(), at_eta.end(), lifted) != at_eta.end());
    CHECK(sl.project(eta, lifted) == colour);

    // distinct labels over distinct elements give distinct lifts
    auto two_label = slice_construction({"u", "v"}, {{"u", colour}, {"v", colour}},
                                        nass, 2);
    CHECK(two_label.lift("u") != two_label.lift("v"));

    // the empty label set leaves only all-capped attachments
    auto no_label = slice_construction({}, {}, terminal_valuation(), 2);
    auto vals = no_label.presheaf.values(eta);
    REQUIRE(vals.size() == 1);
    CHECK(vals[0].find("e=0") != std::string::npos);
}

TEST_CASE("class representatives are stable under the block action") {
    auto term = terminal_valuation();
    auto sl = slice_construction({"u", "v"}, {{"u", "*"}, {"v", "*"}}, term, 2);
    Tree eta = Tree::edge_only("e");
    auto vals = sl.presheaf.values(eta);
    // labellings of the binary attachment by {u, v}: unordered pairs survive
    int binary_classes = 0;
    for (const auto& v : vals)
        if (v.find("e=2") != std::string::npos) ++binary_classes;
    CHECK(binary_classes == 3);  // uu, uv, vv

    // acting by the identity morphism fixes every representative
    for (const auto& v : vals)
        CHECK(sl.presheaf.act(identity_morphism(eta), v) == v);
}

TEST_CASE("slice functoriality against a composite") {
    auto term = terminal_valuation();
    auto sl = slice_construction({"u"}, {{"u", "*"}}, term, 3);
    Tree lin2 = Tree::linear(2);
    auto degens = elementary_degeneracies(lin2);
    REQUIRE(!degens.empty());
    const auto& sigma = degens[0];
    // act along sigma then along a face of its target, compare with composite
    for (const auto& face : elementary_faces(lin2)) {
        if (!(sigma.target() == face.source())) continue;
        auto composite = compose(sigma, face);  // face.source -> sigma.target? no:
        // face: S -> lin2, sigma: lin2 -> T: composite sigma∘face : S -> T
        for (const auto& v : sl.presheaf.values(sigma.target())) {
            (void)v;
        }
        for (const auto& v : sl.presheaf.values(composite.target())) {
            auto direct = sl.presheaf.act(composite, v);
            auto stepped = sl.presheaf.act(face, sl.presheaf.act(sigma, v));
            CHECK(direct == stepped);
        }
    }
}

TEST_CASE("projection is a bijection at leafless trees") {
    auto reta = representable_valuation(fixture_tree("c0"));
    std::vector<std::string> labels;
    std::map<std::string, std::string> sigma;
    auto eta_vals = reta.values(Tree::edge_only("e"));
    for (std::size_t i = 0; i < eta_vals.size(); ++i) {
        labels.push_back("u" + std::to_string(i));
        sigma["u" + std::to_string(i)] = eta_vals[i];
    }
    auto sl = slice_construction(labels, sigma, reta, 2);
    Tree c0 = fixture_tree("c0");
    auto vals = sl.presheaf.values(c0);
    auto xs = reta.values(c0);
    CHECK(vals.size() == xs.size());
    std::set<std::string> projected;
    for (const auto& v : vals) projected.insert(sl.project(c0, v));
    CHECK(projected.size() == xs.size());
}
