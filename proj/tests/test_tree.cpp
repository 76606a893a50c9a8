#include <doctest.h>

#include <json.hpp>

#include <functional>
#include <set>

#include "dendron/fixtures.hpp"
#include "dendron/tree.hpp"

using namespace dendron;

namespace {

// Independent oracle: try every edge map and keep the valid ones. Exponential,
// used only on small pairs.
std::vector<TreeMorphism> brute_force_homs(const Tree& s, const Tree& t) {
    std::vector<TreeMorphism> out;
    auto sedges = s.edge_names();
    auto tedges = t.edge_names();
    std::vector<int> pick(sedges.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == sedges.size()) {
            std::map<std::string, std::string> m;
            for (std::size_t k = 0; k < sedges.size(); ++k) m[sedges[k]] = tedges[pick[k]];
            auto r = validate_morphism(s, t, m);
            if (r.ok()) out.push_back(*r.morphism);
            return;
        }
        for (std::size_t v = 0; v < tedges.size(); ++v) {
            pick[i] = static_cast<int>(v);
            rec(i + 1);
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("tree construction and derived data") {
    Tree eta = Tree::edge_only();
    CHECK(eta.degree() == 0);
    CHECK(eta.leaves() == std::vector<std::string>{"e"});

    Tree c0 = Tree::corolla(0);
    CHECK(c0.degree() == 1);
    CHECK(c0.leaves().empty());
    CHECK(c0.is_capped("r"));

    Tree fig = fixture_tree("fig-tree-4v");
    CHECK(fig.degree() == 4);
    CHECK(fig.edge_count() == 7);
    CHECK(fig.leaves() == std::vector<std::string>{"a", "b", "c"});
    CHECK(fig.is_inner_edge("e"));
    CHECK(fig.is_inner_edge("g"));  // capped edges sit under a nullary vertex
    CHECK_FALSE(fig.is_leaf("g"));

    CHECK_THROWS_AS(Tree::from_parts({"a", "b"}, "a", {{"b", "c"}}, {}), InvalidInput);
    CHECK_THROWS_AS(Tree::from_parts({"a", "b"}, "a", {}, {}), InvalidInput);
    CHECK_THROWS_AS(Tree::from_parts({}, "a", {}, {}), InvalidInput);
}

TEST_CASE("validate_morphism matches the subtree condition") {
    Tree c2 = Tree::corolla(2);
    auto id = validate_morphism(c2, c2, {{"r", "r"}, {"l1", "l1"}, {"l2", "l2"}});
    CHECK(id.ok());

    auto collapsed = validate_morphism(c2, c2, {{"r", "r"}, {"l1", "l1"}, {"l2", "l1"}});
    REQUIRE_FALSE(collapsed.ok());
    CHECK(collapsed.rejection->failing_vertex == "r");

    CHECK_THROWS_AS(validate_morphism(c2, c2, {{"r", "r"}}), InvalidInput);
    CHECK_THROWS_AS(validate_morphism(c2, c2,
                                      {{"r", "zz"}, {"l1", "l1"}, {"l2", "l2"}}),
                    InvalidInput);
}

TEST_CASE("hom enumeration agrees with the brute-force oracle") {
    std::vector<std::pair<Tree, Tree>> pairs = {
        {Tree::edge_only(), Tree::corolla(3)},
        {Tree::corolla(1), Tree::edge_only()},
        {Tree::corolla(1), Tree::corolla(2)},
        {Tree::corolla(2), Tree::corolla(2)},
        {Tree::linear(2), Tree::linear(2)},
        {Tree::corolla(2), fixture_tree("tree-2v")},
        {fixture_tree("tree-2v"), fixture_tree("tree-2v")},
        {Tree::corolla(0), fixture_tree("fig-tree-4v")},
    };
    for (const auto& [s, t] : pairs) {
        auto fast = enumerate_homs(s, t);
        auto slow = brute_force_homs(s, t);
        REQUIRE(fast.size() == slow.size());
        for (std::size_t i = 0; i < fast.size(); ++i) CHECK(fast[i] == slow[i]);
    }
}

TEST_CASE("hom-set counts on the bundled fixtures") {
    for (const auto& name : {"eta", "c2", "tree-2v", "fig-tree-4v"}) {
        Tree t = fixture_tree(name);
        CHECK(static_cast<int>(enumerate_homs(Tree::edge_only(), t).size()) ==
              t.edge_count());
    }
    // corollas cannot map to the edge tree once their vertex needs a real cut
    CHECK(enumerate_homs(Tree::corolla(2), Tree::edge_only()).empty());
    CHECK(enumerate_homs(Tree::corolla(0), Tree::edge_only()).empty());
    // the unary corolla collapses onto the edge tree
    CHECK(enumerate_homs(Tree::corolla(1), Tree::edge_only()).size() == 1);
    CHECK(enumerate_homs(Tree::corolla(1), Tree::corolla(1)).size() == 3);

    Tree big1 = Tree::corolla(6);
    Tree big2 = Tree::corolla(6);
    CHECK_THROWS_AS(enumerate_homs(big1, big2, 5), BoundExceeded);
}

TEST_CASE("automorphism groups") {
    for (int n = 0; n <= 4; ++n) {
        auto auts = automorphisms(Tree::corolla(n));
        CHECK(static_cast<long long>(auts.size()) == factorial(n));
        // closed under composition and inverses
        std::set<std::string> encodings;
        for (const auto& a : auts) encodings.insert(a.encoding());
        for (const auto& a : auts) {
            CHECK(encodings.count(inverse(a).encoding()));
            for (const auto& b : auts) CHECK(encodings.count(compose(a, b).encoding()));
        }
    }
    CHECK(automorphisms(Tree::edge_only()).size() == 1);
    CHECK(automorphisms(Tree::linear(3)).size() == 1);
    CHECK(automorphisms(fixture_tree("fig-tree-4v")).size() == 1);
}

TEST_CASE("composition is associative on small trees") {
    auto trees = enumerate_trees(2, 4);
    int checked = 0;
    for (const auto& a : trees) {
        for (const auto& b : trees) {
            auto fs = enumerate_homs(a, b);
            for (const auto& c : trees) {
                auto gs = enumerate_homs(b, c);
                for (const auto& f : fs)
                    for (const auto& g : gs) {
                        for (const auto& h : enumerate_homs(c, a)) {
                            CHECK(compose(h, compose(g, f)) == compose(compose(h, g), f));
                            if (++checked > 4000) return;
                        }
                    }
            }
        }
    }
}

TEST_CASE("canonical Reedy factorization") {
    Tree c3 = Tree::corolla(3);
    // an isomorphism goes entirely into the negative part
    auto auts = automorphisms(c3);
    for (const auto& a : auts) {
        auto rf = reedy_factorize(a);
        CHECK(rf.positive.is_identity());
        CHECK(rf.negative == a);
    }
    // a degeneracy is its own negative part
    Tree lin2 = Tree::linear(2);
    for (const auto& sigma : elementary_degeneracies(lin2)) {
        auto rf = reedy_factorize(sigma);
        CHECK(rf.positive.is_identity());
        CHECK(in_negative_class(sigma));
    }
    // a degeneracy followed by a face factors back into that shape
    for (const auto& sigma : elementary_degeneracies(lin2)) {
        for (const auto& face : elementary_faces(lin2)) {
            if (!(sigma.target() == face.source())) continue;
            auto composite = compose(face, sigma);
            auto rf = reedy_factorize(composite);
            CHECK(compose(rf.positive, rf.negative) == composite);
            CHECK(in_negative_class(rf.negative));
            CHECK(in_positive_class(rf.positive));
            CHECK(rf.negative.target().isomorphic_to(sigma.target()));
            CHECK_FALSE(rf.positive.is_identity());
        }
    }
}

TEST_CASE("elementary faces and degeneracies") {
    Tree fig = fixture_tree("fig-tree-4v");
    auto faces = elementary_faces(fig);
    CHECK(faces.size() == 6);  // three contractions, two outer, one root
    auto degens = elementary_degeneracies(fig);
    CHECK(degens.size() == 1);  // the unary vertex
    for (const auto& f : faces) {
        CHECK(f.source().degree() == fig.degree() - 1);
        CHECK(in_positive_class(f));
        CHECK_FALSE(in_negative_class(f));
    }
    for (const auto& d : degens) {
        CHECK(d.target().degree() == fig.degree() - 1);
        CHECK(in_negative_class(d));
    }
    // contracting a capped edge transfers the cap when it was the only input
    Tree capped_chain =
        Tree::from_parts({"e0", "e1"}, "e0", {{"e1", "e0"}}, {"e1"});
    bool found_capped_contraction = false;
    for (const auto& f : elementary_faces(capped_chain)) {
        if (f.source().edge_count() == 1 && f.source().has_edge("e0") &&
            f.source().is_capped("e0"))
            found_capped_contraction = true;
    }
    CHECK(found_capped_contraction);
    // the nullary corolla has exactly the uncapping face
    auto c0_faces = elementary_faces(Tree::corolla(0));
    REQUIRE(c0_faces.size() == 1);
    CHECK(c0_faces[0].source().edge_count() == 1);
    CHECK_FALSE(c0_faces[0].source().is_capped("r"));
    CHECK(c0_faces[0].bijective_on_edges());
    CHECK_FALSE(is_isomorphism(c0_faces[0]));
}

TEST_CASE("every small morphism decomposes into elementary pieces") {
    auto trees = enumerate_trees(2, 4);
    for (const auto& s : trees) {
        for (const auto& t : trees) {
            for (const auto& f : enumerate_homs(s, t)) {
                auto chain = decompose_elementary(f);
                TreeMorphism acc = chain.front();
                for (std::size_t i = 1; i < chain.size(); ++i)
                    acc = compose(chain[i], acc);
                CHECK(acc == f);
            }
        }
    }
}

TEST_CASE("canonical forms identify exactly the isomorphic trees") {
    Tree c3a = Tree::corolla(3);
    Tree c3b = Tree::from_parts({"x", "p", "q", "s"}, "x",
                                {{"p", "x"}, {"q", "x"}, {"s", "x"}}, {});
    CHECK(canonical_form(c3a).tree == canonical_form(c3b).tree);

    Tree fig = fixture_tree("fig-tree-4v");
    std::map<std::string, std::string> rename = {{"r0", "zz"}, {"a", "k1"}, {"e", "k2"},
                                                 {"b", "k3"},  {"f", "k4"}, {"g", "k5"},
                                                 {"c", "k6"}};
    CHECK(canonical_form(fig).tree == canonical_form(fig.renamed(rename)).tree);
    // the relabeling is an isomorphism onto the representative
    auto cf = canonical_form(fig);
    auto r = validate_morphism(fig, cf.tree, cf.relabel);
    REQUIRE(r.ok());
    CHECK(is_isomorphism(*r.morphism));

    auto all = enumerate_trees(4, 6);
    std::set<std::string> encodings;
    for (const auto& t : all) CHECK(encodings.insert(t.encoding()).second);
}

TEST_CASE("tree JSON and DOT round trips") {
    Tree fig = fixture_tree("fig-tree-4v");
    Tree back = Tree::from_json(fig.to_json());
    CHECK(back == fig);
    CHECK(fig.to_dot().find("digraph") == 0);
}
