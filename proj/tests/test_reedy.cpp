#include <doctest.h>

#include <json.hpp>

#include <functional>
#include <set>

#include "dendron/fixtures.hpp"
#include "dendron/presheaf.hpp"
#include "dendron/reedy.hpp"

using namespace dendron;

TEST_CASE("the three sites satisfy the generalized Reedy axioms") {
    CHECK(check_reedy_axioms(*make_omega_site(2, 4).cat).all());
    CHECK(check_reedy_axioms(*make_gamma_site(3).cat).all());
    CHECK(check_reedy_axioms(*make_m_site(3).cat).all());
}

TEST_CASE("a corrupted classification fails with a witness") {
    auto site = make_omega_site(2, 4);
    int victim = -1;
    for (int f = 0; f < site.cat->num_morphisms() && victim < 0; ++f)
        if (site.cat->properly_plus(f)) victim = f;
    auto mutated = site.cat->reclassify(victim, true, true);
    auto rep = check_reedy_axioms(mutated);
    CHECK_FALSE(rep.all());
    CHECK_FALSE((rep.degree.witness + rep.iso.witness + rep.factorization.witness).empty());
}

TEST_CASE("latching objects of representables") {
    auto site = make_omega_site(2, 4);
    int eta = site.tree_id(Tree::edge_only());
    int c1 = site.tree_id(Tree::corolla(1));

    auto latch_eta = latching_object(representable(site.cat, eta), eta);
    CHECK(latch_eta.elems.empty());

    Presheaf repr_c1 = representable(site.cat, c1);
    auto latch_c1 = latching_object(repr_c1, c1);
    CHECK(latch_c1.elems.size() == 2);  // the two degenerate endomorphisms
    CHECK(latch_c1.map_injective);

    // a constant presheaf has an onto latching map wherever degeneracies exist
    Presheaf term = terminal_presheaf(site.cat);
    auto latch_term = latching_object(term, c1);
    CHECK(latch_term.elems.size() == 1);
}

namespace {

// brute-force matching families: assignments over the boundary elements of a
// representable, filtered by naturality
long long brute_force_matching(const OmegaSite& site, int obj) {
    Presheaf repr = representable(site.cat, obj);
    Presheaf x = repr;
    SubPresheaf sieve = boundary_sieve(repr, obj);
    const FinCat& c = *site.cat;
    std::vector<std::pair<int, int>> vars;
    for (int o = 0; o < c.num_objects(); ++o)
        for (int i = 0; i < repr.size(o); ++i)
            if (sieve.selected[o][i]) vars.emplace_back(o, i);
    long long count = 0;
    std::vector<int> assign(vars.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t v) {
        if (v == vars.size()) {
            // check naturality on every action
            for (int m = 0; m < c.num_morphisms(); ++m) {
                int s = c.src(m), t = c.dst(m);
                for (std::size_t a = 0; a < vars.size(); ++a) {
                    if (vars[a].first != t) continue;
                    int moved = repr.act(m, vars[a].second);
                    for (std::size_t b = 0; b < vars.size(); ++b)
                        if (vars[b] == std::make_pair(s, moved) &&
                            assign[b] != x.act(m, assign[a]))
                            return;
                }
            }
            ++count;
            return;
        }
        for (int val = 0; val < x.size(vars[v].first); ++val) {
            assign[v] = val;
            rec(v + 1);
        }
    };
    rec(0);
    return count;
}

}  // namespace

TEST_CASE("matching objects and restricted variants") {
    auto site = make_omega_site(2, 4);
    int c2 = site.tree_id(Tree::corolla(2));
    Presheaf repr = representable(site.cat, c2);

    auto match = matching_object(repr, c2);
    CHECK(match.families.size() == 27);  // three edge values, three slots
    CHECK(match.families.size() == static_cast<std::size_t>(brute_force_matching(site, c2)));
    CHECK(match.comparison_injective);

    auto empty_v = matching_object(repr, c2, std::vector<int>{});
    CHECK(empty_v.families.size() == 1);

    // the sieve generated by all properly positive maps recovers the boundary
    std::vector<int> gens;
    for (int m : site.cat->morphisms_into(c2))
        if (site.cat->properly_plus(m)) gens.push_back(m);
    auto closed = sieve_closure(*site.cat, c2, gens);
    CHECK(is_sieve(*site.cat, c2, closed));
    auto full_v = matching_object(repr, c2, closed);
    CHECK(full_v.families.size() == match.families.size());
    CHECK(full_v.comparison == match.comparison);

    // an unsaturated generating set is rejected
    bool has_unclosed = false;
    for (int m : gens) {
        std::vector<int> just_one = {m};
        if (!is_sieve(*site.cat, c2, just_one)) {
            has_unclosed = true;
            CHECK_THROWS_AS(matching_object(repr, c2, just_one), InvalidInput);
            break;
        }
    }
    CHECK(has_unclosed);
}

TEST_CASE("normal monomorphisms") {
    auto site = make_omega_site(2, 4);
    int c2 = site.tree_id(Tree::corolla(2));
    Presheaf repr = representable(site.cat, c2);

    CHECK(is_normal_object(repr).is_normal());

    // the core inclusion is a normal mono
    SubPresheaf core = tree_subobject(site, c2, repr, TreeSubobject::SegalCore);
    auto mat = materialize(core);
    PresheafMap incl;
    incl.domain = &mat.presheaf;
    incl.codomain = &repr;
    incl.component = mat.include;
    CHECK(incl.is_natural());
    CHECK(is_normal_mono(incl).is_normal());

    // collapsing the leaf swap produces a fixed point outside the latching part
    const FinCat& c = *site.cat;
    std::vector<std::vector<std::string>> values(c.num_objects());
    std::vector<std::vector<int>> orbit_of(c.num_objects());
    auto auts = c.automorphism_group(c2);
    for (int o = 0; o < c.num_objects(); ++o) {
        UnionFind uf(repr.size(o));
        for (int theta : auts)
            for (int i = 0; i < repr.size(o); ++i) {
                int mor = c.morphism_by_name(o, c2, repr.elem_name(o, i));
                int image = c.compose(theta, mor);
                uf.unite(i, repr.elem_index(o, c.morphism(image).name));
            }
        orbit_of[o].assign(repr.size(o), -1);
        std::map<std::size_t, int> root_pos;
        for (int i = 0; i < repr.size(o); ++i) {
            std::size_t r = uf.find(i);
            auto it = root_pos.find(r);
            if (it == root_pos.end()) {
                root_pos[r] = static_cast<int>(values[o].size());
                values[o].push_back("orb" + std::to_string(values[o].size()));
            }
            orbit_of[o][i] = root_pos[r];
        }
    }
    std::vector<std::vector<int>> actions(c.num_morphisms());
    for (int m = 0; m < c.num_morphisms(); ++m) {
        int t = c.dst(m);
        actions[m].assign(values[t].size(), -1);
        for (int i = 0; i < repr.size(t); ++i)
            actions[m][orbit_of[t][i]] = orbit_of[c.src(m)][repr.act(m, i)];
    }
    Presheaf quotient(site.cat, values, actions);
    CHECK(quotient.check_functorial().empty());
    auto verdict = is_normal_object(quotient);
    CHECK_FALSE(verdict.is_normal());
    CHECK_FALSE(verdict.witness.empty());
}

TEST_CASE("absolute pushouts") {
    auto site = make_omega_site(2, 4);
    // identities give a trivially absolute span
    int eta = site.tree_id(Tree::edge_only());
    int id = site.cat->identity(eta);
    auto w = has_absolute_pushout(*site.cat, id, id);
    CHECK(w.absolute);

    // the two degeneracies out of the two-vertex chain
    int lin2 = site.tree_id(Tree::linear(2));
    std::vector<int> negs;
    for (int g : site.cat->morphisms_out_of(lin2))
        if (site.cat->properly_minus(g) && site.cat->degree(site.cat->dst(g)) == 1)
            negs.push_back(g);
    REQUIRE(negs.size() == 2);
    auto w2 = has_absolute_pushout(*site.cat, negs[0], negs[1]);
    CHECK(w2.absolute);
    CHECK(w2.section1 >= 0);
    CHECK(w2.section2 >= 0);

    // a synthetic non-split span has no absolute pushout
    FinCat::Builder b;
    int r = b.add_object("r", 1), s = b.add_object("s", 0), t = b.add_object("t", 0),
        u = b.add_object("u", 0);
    int ir = b.add_morphism("id_r", r, r, true, true);
    int is = b.add_morphism("id_s", s, s, true, true);
    int it = b.add_morphism("id_t", t, t, true, true);
    int iu = b.add_morphism("id_u", u, u, true, true);
    int g1 = b.add_morphism("g1", r, s, false, true);
    int g2 = b.add_morphism("g2", r, t, false, true);
    int q1 = b.add_morphism("q1", s, u, true, false);
    int q2 = b.add_morphism("q2", t, u, true, false);
    int d = b.add_morphism("d", r, u, true, false);
    b.set_identity(r, ir);
    b.set_identity(s, is);
    b.set_identity(t, it);
    b.set_identity(u, iu);
    auto record_identities = [&](int mor, int src_id, int dst_id) {
        b.record_composite(mor, src_id, mor);
        b.record_composite(dst_id, mor, mor);
    };
    b.record_composite(ir, ir, ir);
    b.record_composite(is, is, is);
    b.record_composite(it, it, it);
    b.record_composite(iu, iu, iu);
    record_identities(g1, ir, is);
    record_identities(g2, ir, it);
    record_identities(q1, is, iu);
    record_identities(q2, it, iu);
    record_identities(d, ir, iu);
    b.record_composite(q1, g1, d);
    b.record_composite(q2, g2, d);
    FinCat synthetic = b.build();
    auto w3 = has_absolute_pushout(synthetic, g1, g2);
    CHECK_FALSE(w3.absolute);
}

TEST_CASE("lifting problems: iso filler and commuting-square validation") {
    auto site = make_omega_site(1, 3);
    int eta = site.tree_id(Tree::edge_only());
    Presheaf repr = representable(site.cat, eta);
    Presheaf term = terminal_presheaf(site.cat);
    // i an isomorphism (identity): diagonal is f ∘ i^{-1} = f
    PresheafMap i = identity_map(repr);
    PresheafMap f;
    f.domain = &repr;
    f.codomain = &term;
    f.component.resize(site.cat->num_objects());
    for (int o = 0; o < site.cat->num_objects(); ++o)
        f.component[o].assign(repr.size(o), 0);
    PresheafMap p = identity_map(term);
    auto lift = solve_lifting(i, p, f, f);
    REQUIRE(lift.found);
    CHECK(lift.diagonal.component == f.component);

    // a non-commuting square is rejected
    Presheaf two = coproduct({&term, &term});
    PresheafMap j;
    j.domain = &term;
    j.codomain = &two;
    j.component.resize(site.cat->num_objects());
    PresheafMap q;
    q.domain = &term;
    q.codomain = &two;
    q.component.resize(site.cat->num_objects());
    for (int o = 0; o < site.cat->num_objects(); ++o) {
        j.component[o] = {two.elem_index(o, "0:*")};
        q.component[o] = {two.elem_index(o, "1:*")};
    }
    PresheafMap idt = identity_map(term);
    CHECK_THROWS_AS(solve_lifting(idt, j, idt, q), InvalidInput);
}

TEST_CASE("latching comparisons are injective over the finite-set sites") {
    auto gsite = make_gamma_site(3);
    for (int a = 0; a <= 3; ++a) {
        Presheaf repr = representable(gsite.cat, a);
        CHECK(latching_object(repr, a).map_injective);
    }
    auto site = make_omega_site(2, 4);
    for (int o = 0; o < site.cat->num_objects(); ++o) {
        Presheaf repr = representable(site.cat, o);
        CHECK(latching_object(repr, o).map_injective);
    }
}

TEST_CASE("category presentations round-trip through JSON") {
    auto msite = make_m_site(2);
    auto j = msite.cat->to_json();
    FinCat back = FinCat::from_json(j);
    CHECK(back.num_objects() == msite.cat->num_objects());
    CHECK(back.num_morphisms() == msite.cat->num_morphisms());
    CHECK(back.validate().empty());
    CHECK(check_reedy_axioms(back).all());
}
