#include "dendron/suites.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>

#include "dendron/bpq.hpp"
#include "dendron/fixtures.hpp"
#include "dendron/operad.hpp"
#include "dendron/presheaf.hpp"
#include "dendron/reedy.hpp"
#include "dendron/slice.hpp"

namespace dendron {

namespace {

std::string bounds_flag(const Bounds& b) {
    return "--bounds tree-vertices=" + std::to_string(b.tree_vertices) +
           ",tree-edges=" + std::to_string(b.tree_edges) +
           ",set-size=" + std::to_string(b.set_size) +
           ",nerve-degree=" + std::to_string(b.nerve_degree) +
           ",carrier=" + std::to_string(b.carrier);
}

void add_axiom_checks(VerificationReport& report, const std::string& prefix,
                      const ReedyAxiomReport& ax, const std::string& replay) {
    report.add(prefix + "/table", ax.table.pass, ax.table.witness, replay);
    report.add(prefix + "/degree", ax.degree.pass, ax.degree.witness, replay);
    report.add(prefix + "/factorization", ax.factorization.pass, ax.factorization.witness,
               replay);
    report.add(prefix + "/iso", ax.iso.pass, ax.iso.witness, replay);
    report.add(prefix + "/rigidity", ax.rigidity.pass, ax.rigidity.witness, replay);
}

// --------------------------------------------------------------------------

VerificationReport suite_reedy_axioms(const Bounds& b) {
    VerificationReport report;
    report.suite = "reedy-axioms";
    report.bounds = b;
    std::string replay = "dendron suite run reedy-axioms " + bounds_flag(b);

    auto omega = make_omega_site(b.tree_vertices, b.tree_edges);
    add_axiom_checks(report, "omega", check_reedy_axioms(*omega.cat), replay);
    auto gamma = make_gamma_site(b.set_size);
    add_axiom_checks(report, "gamma", check_reedy_axioms(*gamma.cat), replay);
    auto msite = make_m_site(b.set_size);
    add_axiom_checks(report, "m", check_reedy_axioms(*msite.cat), replay);
    {
        // M: every morphism positive, negatives are exactly the isos
        bool ok = true;
        for (int f = 0; f < msite.cat->num_morphisms() && ok; ++f)
            if (!msite.cat->in_plus(f) || (msite.cat->in_minus(f) != msite.cat->is_iso(f)))
                ok = false;
        report.add("m/positivity-convention", ok, "all morphisms positive, negatives are isos",
                   replay);
    }

    // mutation fixtures: reclassifying a face must break an axiom, with witness
    {
        int victim = -1;
        for (int f = 0; f < omega.cat->num_morphisms() && victim < 0; ++f)
            if (omega.cat->properly_plus(f) &&
                omega.cat->degree(omega.cat->dst(f)) >
                    omega.cat->degree(omega.cat->src(f)))
                victim = f;
        FinCat mutated = omega.cat->reclassify(victim, true, true);
        auto ax = check_reedy_axioms(mutated);
        bool failed_with_witness =
            !ax.all() && !(ax.degree.witness + ax.iso.witness).empty();
        report.add("omega-mutated-fails", failed_with_witness,
                   ax.degree.pass ? ax.iso.witness : ax.degree.witness, replay);
    }
    {
        int victim = -1;
        for (int f = 0; f < gamma.cat->num_morphisms() && victim < 0; ++f)
            if (gamma.cat->properly_plus(f) &&
                gamma.cat->degree(gamma.cat->dst(f)) >
                    gamma.cat->degree(gamma.cat->src(f)))
                victim = f;
        FinCat mutated = gamma.cat->reclassify(victim, true, true);
        auto ax = check_reedy_axioms(mutated);
        bool failed_with_witness =
            !ax.all() && !(ax.degree.witness + ax.iso.witness).empty();
        report.add("gamma-mutated-fails", failed_with_witness,
                   ax.degree.pass ? ax.iso.witness : ax.degree.witness, replay);
    }
    return report;
}

// --------------------------------------------------------------------------

bool morphism_is_elementary_or_iso(const TreeMorphism& f) {
    if (is_isomorphism(f)) return true;
    for (const auto& face : elementary_faces(f.target()))
        if (face == f) return true;
    for (const auto& degen : elementary_degeneracies(f.source()))
        if (degen == f) return true;
    return false;
}

VerificationReport suite_omega_combinatorics(const Bounds& b) {
    VerificationReport report;
    report.suite = "omega-combinatorics";
    report.bounds = b;
    std::string replay = "dendron suite run omega-combinatorics " + bounds_flag(b);

    auto trees = enumerate_trees(b.tree_vertices, b.tree_edges);
    {
        bool ok = true;
        std::string witness;
        Tree eta = Tree::edge_only();
        for (const auto& t : trees) {
            auto homs = enumerate_homs(eta, t, b.hom_edge_limit);
            if (static_cast<int>(homs.size()) != t.edge_count()) {
                ok = false;
                witness = t.encoding() + ": " + std::to_string(homs.size()) + " vs " +
                          std::to_string(t.edge_count()) + " edges";
                break;
            }
        }
        report.add("hom-from-edge-tree-counts-edges", ok, witness, replay);
    }
    {
        bool ok = true;
        std::string witness;
        for (int n = 0; n <= 4; ++n) {
            auto auts = automorphisms(Tree::corolla(n), b.hom_edge_limit);
            if (static_cast<long long>(auts.size()) != factorial(n)) {
                ok = false;
                witness = "corolla " + std::to_string(n) + ": " +
                          std::to_string(auts.size()) + " automorphisms";
                break;
            }
        }
        report.add("corolla-automorphism-counts", ok, witness, replay);
    }
    {
        // every enumerated morphism decomposes into faces, degeneracies, isos
        bool ok = true;
        std::string witness;
        long long decomposed = 0;
        auto small = enumerate_trees(std::min(b.tree_vertices, 4), std::min(b.tree_edges, 5));
        std::vector<Tree> scope = small;
        scope.push_back(canonical_form(fixture_tree("fig-tree-4v")).tree);
        for (const auto& s : scope) {
            for (const auto& t : scope) {
                std::vector<TreeMorphism> homs;
                try {
                    homs = enumerate_homs(s, t, b.hom_edge_limit);
                } catch (const BoundExceeded&) {
                    continue;
                }
                for (const auto& f : homs) {
                    auto chain = decompose_elementary(f);
                    ++decomposed;
                    for (const auto& link : chain)
                        if (!morphism_is_elementary_or_iso(link)) {
                            ok = false;
                            witness = "non-elementary link in the chain of " +
                                      f.encoding();
                        }
                    if (!ok) break;
                }
                if (!ok) break;
            }
            if (!ok) break;
        }
        report.add("elementary-generation", ok,
                   ok ? std::to_string(decomposed) + " morphisms decomposed" : witness,
                   replay);
    }
    {
        // degree monotone along the classes, every degeneracy has a section
        bool mono = true, sections = true;
        std::string witness;
        auto small = enumerate_trees(std::min(b.tree_vertices, 3), std::min(b.tree_edges, 5));
        for (const auto& s : small) {
            for (const auto& t : small) {
                for (const auto& f : enumerate_homs(s, t, b.hom_edge_limit)) {
                    if (in_positive_class(f) && s.degree() > t.degree()) mono = false;
                    if (in_negative_class(f) && s.degree() < t.degree()) mono = false;
                }
            }
            for (const auto& degen : elementary_degeneracies(s)) {
                bool found = false;
                for (const auto& sec :
                     enumerate_homs(degen.target(), degen.source(), b.hom_edge_limit))
                    if (compose(degen, sec).is_identity()) found = true;
                if (!found) {
                    sections = false;
                    witness = "degeneracy without a section out of " + s.encoding();
                }
            }
        }
        report.add("degree-monotone-on-classes", mono, "", replay);
        report.add("degeneracies-have-sections", sections, witness, replay);
    }
    {
        // canonical forms separate isomorphism classes at <= 4 vertices
        bool ok = true;
        std::string witness;
        auto all4 = enumerate_trees(std::min(b.tree_vertices, 4), std::min(b.tree_edges, 6));
        std::set<std::string> encodings;
        for (const auto& t : all4)
            if (!encodings.insert(canonical_form(t).tree.encoding()).second) {
                ok = false;
                witness = "duplicate canonical encoding " + t.encoding();
            }
        report.add("canonical-forms-distinct", ok, witness, replay);
    }
    return report;
}

// --------------------------------------------------------------------------

VerificationReport suite_lambda_functor(const Bounds& b) {
    VerificationReport report;
    report.suite = "lambda-functor";
    report.bounds = b;
    std::string replay = "dendron suite run lambda-functor " + bounds_flag(b);

    auto site = make_omega_site(std::min(b.tree_vertices, 4), std::min(b.tree_edges, 5));
    {
        bool ok = true;
        std::string witness;
        long long pairs = 0;
        const FinCat& c = *site.cat;
        for (int f = 0; f < c.num_morphisms() && ok; ++f) {
            PartialMap lf = leaf_functor(site.arrows[f]);
            for (int g : c.morphisms_out_of(c.dst(f))) {
                ++pairs;
                // contravariance: lambda(g∘f) = lambda(f) ∘ lambda(g)
                PartialMap lhs = leaf_functor(site.arrows[c.compose(g, f)]);
                PartialMap rhs = compose_partial(lf, leaf_functor(site.arrows[g]));
                if (!(lhs == rhs)) {
                    ok = false;
                    witness = "functoriality fails at (" + c.morphism(g).name + ", " +
                              c.morphism(f).name + ")";
                    break;
                }
            }
        }
        report.add("leaf-functor-contravariant", ok,
                   ok ? std::to_string(pairs) + " composable pairs" : witness, replay);
    }
    {
        // generator classification
        bool ok = true;
        std::string witness;
        auto trees = enumerate_trees(b.tree_vertices, b.tree_edges);
        trees.push_back(canonical_form(fixture_tree("fig-tree-4v")).tree);
        for (const auto& t : trees) {
            for (const auto& face : elementary_faces(t)) {
                PartialMap lam = leaf_functor(face);
                const Tree& src = face.source();
                if (src.root() != t.root()) {
                    // root face: defined exactly on the leaves above the kept branch
                    std::set<std::string> expect;
                    for (const auto& e : t.edges_above(src.root()))
                        if (t.is_leaf(e)) expect.insert(e);
                    std::set<std::string> dom;
                    for (const auto& d : lam.domain()) dom.insert(d);
                    if (dom != expect) {
                        ok = false;
                        witness = "root face domain wrong at " + t.encoding();
                    }
                } else if (src.edge_count() == t.edge_count() - 1 &&
                           [&] {
                               for (const auto& e : t.edge_names())
                                   if (!src.has_edge(e) && t.is_inner_edge(e)) return true;
                               return false;
                           }()) {
                    if (!lam.is_bijection()) {
                        ok = false;
                        witness = "inner face not a leaf bijection at " + t.encoding();
                    }
                } else {
                    // outer (top) face, including the uncapping ones
                    if (!lam.is_total()) {
                        ok = false;
                        witness = "top face not total on leaves at " + t.encoding();
                    }
                }
            }
            for (const auto& degen : elementary_degeneracies(t)) {
                if (!leaf_functor(degen).is_bijection()) {
                    ok = false;
                    witness = "degeneracy not a leaf bijection at " + t.encoding();
                }
            }
            for (const auto& iso : automorphisms(t, b.hom_edge_limit)) {
                if (!leaf_functor(iso).is_bijection()) {
                    ok = false;
                    witness = "isomorphism not a leaf bijection at " + t.encoding();
                }
            }
        }
        report.add("generator-classification", ok, witness, replay);
    }
    {
        // inv embeds injections as inert maps, functorially
        bool ok = true;
        std::string witness;
        for (int n = 0; n <= std::min(b.set_size, 4) && ok; ++n) {
            for (int m = 0; m <= std::min(b.set_size, 4) && ok; ++m) {
                FinSet a = FinSet::skeleton(n), bb = FinSet::skeleton(m);
                std::set<std::string> images;
                for (const auto& inj : all_total_injections(a, bb)) {
                    PartialMap inert = inv_functor(inj);
                    if (!inert.is_inert()) {
                        ok = false;
                        witness = "inv image not inert";
                    }
                    if (!images.insert(inert.encoding() + "@" +
                                       std::to_string(n) + ">" + std::to_string(m))
                             .second) {
                        ok = false;
                        witness = "inv not injective";
                    }
                }
                // every inert map arises
                for (const auto& p : all_partial_maps(bb, a))
                    if (p.is_inert()) {
                        bool hit = false;
                        for (const auto& inj : all_total_injections(a, bb))
                            if (inv_functor(inj) == p) hit = true;
                        if (!hit) {
                            ok = false;
                            witness = "inert map not in the image of inv";
                        }
                    }
            }
        }
        report.add("inv-image-is-inert-maps", ok, witness, replay);
    }
    return report;
}

// --------------------------------------------------------------------------

VerificationReport suite_segal(const Bounds& b) {
    VerificationReport report;
    report.suite = "segal";
    report.bounds = b;
    std::string replay = "dendron suite run segal " + bounds_flag(b);

    auto site = make_omega_site(std::min(b.tree_vertices, 3), std::min(b.tree_edges, 5));
    {
        // nerve-Yoneda: explicit bijection N(free operad of S) ≅ hom(-, S)
        bool ok = true;
        std::string witness;
        for (const auto& s : enumerate_trees(2, 4)) {
            auto op = std::make_shared<Operad>(tree_operad(s));
            auto nerve = nerve_valuation(op);
            for (const auto& t : site.trees) {
                auto nerve_vals = nerve.values(t);
                std::set<std::string> from_homs;
                for (const auto& h : enumerate_homs(t, s, b.hom_edge_limit)) {
                    // the nerve element a morphism induces
                    std::vector<std::string> cs;
                    for (const auto& e : t.edge_names())
                        cs.push_back(e + "=" + h.apply(e));
                    std::vector<std::string> os;
                    for (const auto& v : t.vertices()) {
                        std::vector<std::string> tuple;
                        for (const auto& ch : t.children(v)) tuple.push_back(h.apply(ch));
                        os.push_back(v + "=" + h.apply(v) + "<" + join(tuple, ",") + ">");
                    }
                    from_homs.insert("c[" + join(cs, ",") + "]o[" + join(os, ",") + "]");
                }
                std::set<std::string> nerve_set(nerve_vals.begin(), nerve_vals.end());
                if (nerve_set != from_homs) {
                    ok = false;
                    witness = "bijection fails at S=" + s.encoding() +
                              ", T=" + t.encoding();
                    break;
                }
            }
            if (!ok) break;
        }
        report.add("nerve-yoneda-bijection", ok, witness, replay);
    }
    {
        auto ass = std::make_shared<Operad>(ass_operad(std::max(b.arity, 4)));
        Presheaf nass = dendroidal_nerve(*ass, site);
        auto seg = check_strict_segal(nass, site);
        report.add("associative-nerve-strict-segal", seg.is_strict_segal,
                   seg.is_strict_segal ? seg.bounds_note : join(seg.failures, "; "),
                   replay);
        Presheaf term = terminal_presheaf(site.cat);
        auto seg_t = check_strict_segal(term, site);
        report.add("terminal-strict-segal", seg_t.is_strict_segal, "", replay);
    }
    {
        // subobject chain Sc ⊆ horn ⊆ boundary ⊆ representable, and sieve closure
        bool ok = true;
        std::string witness;
        int t2 = site.tree_id(fixture_tree("linear2"));
        Presheaf repr = representable(site.cat, t2);
        auto core = tree_subobject(site, t2, repr, TreeSubobject::SegalCore);
        auto boundary = tree_subobject(site, t2, repr, TreeSubobject::Boundary);
        // the unique inner edge of the canonical linear2
        std::string inner;
        for (const auto& e : site.trees[t2].edge_names())
            if (site.trees[t2].is_inner_edge(e)) inner = e;
        auto horn = tree_subobject(site, t2, repr, TreeSubobject::Horn, inner);
        if (!core.closed_under_actions() || !horn.closed_under_actions() ||
            !boundary.closed_under_actions()) {
            ok = false;
            witness = "a subobject is not closed under the contravariant actions";
        }
        if (!core.subset_of(horn) || !horn.subset_of(boundary)) {
            ok = false;
            witness = "inclusion chain core ⊆ horn ⊆ boundary fails";
        }
        report.add("subobject-chain", ok, witness, replay);
    }
    return report;
}

// --------------------------------------------------------------------------

VerificationReport suite_covariant(const Bounds& b) {
    VerificationReport report;
    report.suite = "covariant";
    report.bounds = b;
    std::string replay = "dendron suite run covariant " + bounds_flag(b);

    auto ass = std::make_shared<Operad>(ass_operad(std::max(b.arity, 4)));
    auto nass = nerve_valuation(ass);
    auto parity = std::make_shared<Algebra>(parity_algebra(ass));
    auto terminal = std::make_shared<Algebra>(terminal_algebra(ass));
    auto free_x = std::make_shared<Algebra>(
        free_algebra(ass, {{"x", "c"}}, std::max(b.free_size, 4)));

    auto trees = enumerate_trees(std::min(b.tree_vertices, 3), std::min(b.tree_edges, 5));
    for (auto [alg, name] : std::vector<std::pair<std::shared_ptr<Algebra>, std::string>>{
             {parity, "parity"}, {terminal, "terminal"}, {free_x, "free-ass-x"}}) {
        bool ok = true;
        std::string witness;
        for (const auto& t : trees) {
            auto cmp = compare_g_routes(*ass, *alg, t);
            if (!cmp.agree) {
                ok = false;
                witness = t.encoding() + ": " + cmp.witness;
                break;
            }
        }
        report.add("g-route-identity/" + name, ok, witness, replay);
    }
    {
        auto site = make_omega_site(std::min(b.tree_vertices, 3), std::min(b.tree_edges, 5));
        Presheaf nass_tab = dendroidal_nerve(*ass, site);
        auto seg = check_strict_segal(nass_tab, site);
        report.add("base-is-strict-segal", seg.is_strict_segal, seg.bounds_note, replay);
    }
    for (auto [alg, name] : std::vector<std::pair<std::shared_ptr<Algebra>, std::string>>{
             {parity, "parity"}, {terminal, "terminal"}}) {
        auto gv = g_valuation(ass, alg);
        auto cov = check_strict_covariant_fibration(gv.presheaf, nass, gv.project,
                                                    std::min(b.arity, 3));
        report.add("covariant-fibration/" + name, cov.pass, cov.witness, replay);
    }
    {
        auto idproj = [](const Tree&, const std::string& s) { return s; };
        auto cov = check_strict_covariant_fibration(nass, nass, idproj, std::min(b.arity, 3));
        report.add("covariant-fibration/identity", cov.pass, cov.witness, replay);
    }
    {
        // the fold of two copies of the nerve fails at any corolla with leaves
        DendroidalValuation two;
        two.values = [nass](const Tree& t) {
            std::vector<std::string> out;
            for (const auto& s : nass.values(t)) {
                out.push_back("0:" + s);
                out.push_back("1:" + s);
            }
            std::sort(out.begin(), out.end());
            return out;
        };
        two.act = [nass](const TreeMorphism& a, const std::string& e) {
            return e.substr(0, 2) + nass.act(a, e.substr(2));
        };
        auto fold = [](const Tree&, const std::string& e) { return e.substr(2); };
        auto cov = check_strict_covariant_fibration(two, nass, fold, 2);
        report.add("covariant-fold-fails", !cov.pass, cov.witness, replay);
    }
    {
        // leaf-inclusion lifting against the algebra projection
        auto site = make_omega_site(2, 4);
        Presheaf nass_tab = dendroidal_nerve(*ass, site);
        auto gv = g_valuation(ass, parity);
        Presheaf g_tab = tabulate(gv.presheaf, site);
        // projection as a presheaf map
        PresheafMap p;
        p.domain = &g_tab;
        p.codomain = &nass_tab;
        p.component.resize(site.cat->num_objects());
        for (int o = 0; o < site.cat->num_objects(); ++o) {
            p.component[o].resize(g_tab.size(o));
            for (int i = 0; i < g_tab.size(o); ++i)
                p.component[o][i] = nass_tab.elem_index(
                    o, gv.project(site.trees[o], g_tab.elem_name(o, i)));
        }
        int eta_id = site.tree_id(Tree::edge_only());
        int c2_id = site.tree_id(Tree::corolla(2));
        Presheaf repr_eta = representable(site.cat, eta_id);
        Presheaf repr_c2 = representable(site.cat, c2_id);
        Presheaf two_eta = coproduct({&repr_eta, &repr_eta});
        // i: the two leaf inclusions
        const Tree& c2 = site.trees[c2_id];
        auto leaves = c2.leaves();
        std::vector<PresheafMap> incls;
        for (const auto& l : leaves) {
            auto r = validate_morphism(
                site.trees[eta_id], c2,
                {{site.trees[eta_id].root(), l}});
            int mor = site.arrow_id(eta_id, c2_id, *r.morphism);
            int elem = repr_c2.elem_index(eta_id, site.cat->morphism(mor).name);
            incls.push_back(yoneda_map(repr_eta, eta_id, repr_c2, elem));
        }
        PresheafMap i;
        i.domain = &two_eta;
        i.codomain = &repr_c2;
        i.component.resize(site.cat->num_objects());
        for (int o = 0; o < site.cat->num_objects(); ++o) {
            for (int k = 0; k < 2; ++k)
                for (int e = 0; e < repr_eta.size(o); ++e)
                    i.component[o].push_back(incls[k].component[o][e]);
        }
        // g: classify a nerve element of the corolla; f: matching leaf labels
        int x = 0;  // some nerve element of C2
        PresheafMap g = yoneda_map(repr_c2, c2_id, nass_tab, x);
        // leaf restrictions of x determine the colours; pick labels over them
        PresheafMap f;
        f.domain = &two_eta;
        f.codomain = &g_tab;
        f.component.resize(site.cat->num_objects());
        // the two chosen labels at eta: indices into g_tab at eta over the
        // right colour
        std::vector<int> chosen;
        for (int k = 0; k < 2; ++k) {
            int base_elem = compose_maps(g, incls[k]).component[eta_id][repr_eta.elem_index(
                eta_id, site.cat->morphism(site.cat->identity(eta_id)).name)];
            for (int cand = 0; cand < g_tab.size(eta_id); ++cand)
                if (p.component[eta_id][cand] == base_elem) {
                    chosen.push_back(cand);
                    break;
                }
        }
        for (int o = 0; o < site.cat->num_objects(); ++o) {
            for (int k = 0; k < 2; ++k)
                for (int e = 0; e < repr_eta.size(o); ++e) {
                    int mor = site.cat->morphism_by_name(o, eta_id,
                                                         repr_eta.elem_name(o, e));
                    f.component[o].push_back(g_tab.act(mor, chosen[k]));
                }
        }
        auto lift = solve_lifting(i, p, f, g);
        report.add("leaf-inclusion-lifting", lift.found, lift.note, replay);
    }
    {
        // a square whose fibre misses the needed point exhausts
        auto site = make_omega_site(1, 2);
        Presheaf term = terminal_presheaf(site.cat);
        Presheaf twopt = coproduct({&term, &term});
        int eta_id = site.tree_id(Tree::edge_only());
        Presheaf repr_eta = representable(site.cat, eta_id);
        // empty presheaf into the representable
        Presheaf empty(site.cat,
                       std::vector<std::vector<std::string>>(site.cat->num_objects()),
                       std::vector<std::vector<int>>(site.cat->num_morphisms()));
        PresheafMap i;
        i.domain = &empty;
        i.codomain = &repr_eta;
        i.component.resize(site.cat->num_objects());
        PresheafMap p;  // terminal -> two points, into part 0
        p.domain = &term;
        p.codomain = &twopt;
        p.component.resize(site.cat->num_objects());
        for (int o = 0; o < site.cat->num_objects(); ++o) {
            p.component[o] = {twopt.elem_index(o, "0:*")};
        }
        PresheafMap f;
        f.domain = &empty;
        f.codomain = &term;
        f.component.resize(site.cat->num_objects());
        PresheafMap g;  // constant at part 1
        g.domain = &repr_eta;
        g.codomain = &twopt;
        g.component.resize(site.cat->num_objects());
        for (int o = 0; o < site.cat->num_objects(); ++o)
            g.component[o].assign(repr_eta.size(o), twopt.elem_index(o, "1:*"));
        if (!g.is_natural()) throw InvalidInput("constant map not natural");
        auto lift = solve_lifting(i, p, f, g);
        report.add("lifting-exhaustion", !lift.found, lift.note, replay);
    }
    return report;
}

// --------------------------------------------------------------------------

VerificationReport suite_slice(const Bounds& b) {
    VerificationReport report;
    report.suite = "slice";
    report.bounds = b;
    std::string replay = "dendron suite run slice " + bounds_flag(b);

    {
        bool ok = true;
        std::string witness;
        for (const auto& name :
             {std::string("eta"), std::string("c1"), std::string("c2"),
              std::string("tree-2v"), std::string("fig-tree-4v")}) {
            Tree t = fixture_tree(name);
            long long expect = 1;
            for (std::size_t i = 0; i < t.leaves().size(); ++i)
                expect *= (b.slice_arity + 1);
            auto g = attachment_groupoid(t, b.slice_arity);
            if (g.num_objects() != expect ||
                attachment_object_count(t, b.slice_arity) != expect) {
                ok = false;
                witness = name + ": " + std::to_string(g.num_objects()) + " vs " +
                          std::to_string(expect);
            }
            if (!g.validate().empty()) {
                ok = false;
                witness = name + ": " + g.validate();
            }
        }
        report.add("attachment-object-count", ok, witness, replay);
    }
    {
        // automorphism groups are products of symmetric groups
        bool ok = true;
        std::string witness;
        Tree c2 = fixture_tree("c2");
        auto g = attachment_groupoid(c2, 2);
        for (int o = 0; o < g.num_objects(); ++o) {
            // parse the arities back out of the object name "l1=i,l2=j"
            const std::string& nm = g.cat().object(o).name;
            long long expect = 1;
            std::stringstream ss(nm);
            std::string item;
            while (std::getline(ss, item, ','))
                expect *= factorial(std::stoi(item.substr(item.find('=') + 1)));
            if (g.automorphism_count(o) != expect) {
                ok = false;
                witness = nm + ": " + std::to_string(g.automorphism_count(o));
            }
        }
        report.add("attachment-automorphisms", ok, witness, replay);
    }
    {
        // contravariant functoriality of the restriction
        bool ok = true;
        std::string witness;
        auto site = make_omega_site(std::min(b.tree_vertices, 3), 4);
        const FinCat& c = *site.cat;
        long long pairs = 0;
        for (int f = 0; f < c.num_morphisms() && ok; ++f) {
            for (int g : c.morphisms_out_of(c.dst(f))) {
                const Tree& top = site.trees[c.dst(g)];
                auto leaves = top.leaves();
                // arity functions valued in {0,1}
                for (int mask = 0; mask < (1 << leaves.size()); ++mask) {
                    ArityFunction n;
                    for (std::size_t i = 0; i < leaves.size(); ++i)
                        n[leaves[i]] = (mask >> i) & 1;
                    auto via_composite =
                        attachment_restrict(site.arrows[c.compose(g, f)], n);
                    auto step1 = attachment_restrict(site.arrows[g], n);
                    auto via_steps = attachment_restrict(site.arrows[f], step1);
                    ++pairs;
                    if (via_composite != via_steps) {
                        ok = false;
                        witness = "restriction not functorial at (" +
                                  c.morphism(g).name + ", " + c.morphism(f).name + ")";
                        break;
                    }
                }
                if (!ok) break;
            }
        }
        // identities act trivially
        for (int o = 0; o < c.num_objects() && ok; ++o) {
            const Tree& t = site.trees[o];
            ArityFunction n;
            for (const auto& l : t.leaves()) n[l] = 1;
            if (attachment_restrict(site.arrows[c.identity(o)], n) != n) {
                ok = false;
                witness = "identity restriction moved an attachment";
            }
        }
        report.add("attachment-restrict-functorial", ok,
                   ok ? std::to_string(pairs) + " checks" : witness, replay);
    }
    {
        auto ass = std::make_shared<Operad>(
            ass_operad(std::max(4, 2 * std::min(b.slice_arity, 2) + 2)));
        auto nass = nerve_valuation(ass);
        Tree eta = Tree::edge_only("e");
        std::string colour = nass.values(eta)[0];
        auto sl = slice_construction({"u"}, {{"u", colour}}, nass, std::min(b.slice_arity, 2));
        auto cov = check_strict_covariant_fibration(sl.presheaf, nass, sl.project, 2);
        report.add("slice-covariant-at-corollas", cov.pass, cov.witness, replay);
        // pi ∘ lift = sigma
        bool lift_ok = sl.project(eta, sl.lift("u")) == colour;
        report.add("lift-section-of-projection", lift_ok, "", replay);
    }
    {
        // pi bijective at leafless trees
        bool ok = true;
        std::string witness;
        std::vector<Tree> leafless = {fixture_tree("c0")};
        {
            Tree lin = Tree::linear(1);
            leafless.push_back(lin.graft_at_leaves({}, {"e1"}));
            Tree c2 = fixture_tree("c2");
            leafless.push_back(c2.graft_at_leaves({}, {"l1", "l2"}));
        }
        for (const auto& x_name : {std::string("terminal"), std::string("repr-c0")}) {
            DendroidalValuation x = x_name == "terminal"
                                        ? terminal_valuation()
                                        : representable_valuation(fixture_tree("c0"));
            std::string eta_elem = x.values(Tree::edge_only("e")).empty()
                                       ? ""
                                       : x.values(Tree::edge_only("e"))[0];
            std::map<std::string, std::string> sigma;
            std::vector<std::string> labels;
            if (!eta_elem.empty()) {
                labels.push_back("u");
                sigma["u"] = eta_elem;
            }
            auto sl = slice_construction(labels, sigma, x, 2);
            for (const auto& t : leafless) {
                auto slice_vals = sl.presheaf.values(t);
                auto x_vals = x.values(t);
                std::set<std::string> projected;
                for (const auto& v : slice_vals) projected.insert(sl.project(t, v));
                if (slice_vals.size() != x_vals.size() ||
                    projected.size() != x_vals.size()) {
                    ok = false;
                    witness = x_name + " at " + t.encoding() + ": " +
                              std::to_string(slice_vals.size()) + " vs " +
                              std::to_string(x_vals.size());
                }
            }
        }
        report.add("projection-bijective-at-leafless", ok, witness, replay);
    }
    return report;
}

// --------------------------------------------------------------------------

VerificationReport suite_bpq_special(const Bounds& b) {
    VerificationReport report;
    report.suite = "bpq-special";
    report.bounds = b;
    std::string replay = "dendron suite run bpq-special " + bounds_flag(b);

    {
        bool ok = true;
        std::string witness;
        for (int a = 0; a <= 3 && ok; ++a) {
            for (int l = 1; l <= 2 && ok; ++l) {
                auto cen = check_pi0_census(FinSet::skeleton(a), FinSet::skeleton(l),
                                            b.carrier);
                if (!cen.pass) {
                    ok = false;
                    witness = cen.witness;
                }
            }
        }
        report.add("pi0-census-matches-tuples", ok, witness, replay);
    }
    {
        bool ok = true;
        std::string witness;
        long long pairs = 0;
        for (int a = 0; a <= 3 && ok; ++a) {
            for (int bb = 0; bb <= 3 && ok; ++bb) {
                auto sp = check_special(FinSet::skeleton(a), FinSet::skeleton(bb),
                                        std::min(b.carrier, 4));
                pairs += sp.pairs_checked;
                if (!sp.pass()) {
                    ok = false;
                    witness = "(" + std::to_string(a) + "," + std::to_string(bb) +
                              "): " + sp.witness;
                }
            }
        }
        report.add("disjoint-union-equivalence", ok,
                   ok ? std::to_string(pairs) + " hom pairs" : witness, replay);
    }
    {
        auto sp = check_special(FinSet::skeleton(2), FinSet::skeleton(1),
                                std::min(b.carrier, 3), true);
        report.add("special-mutated-fails", !sp.pass(), sp.witness, replay);
    }
    {
        bool ok = true;
        std::string witness;
        for (int l = 0; l <= 3 && ok; ++l) {
            auto ur = check_unit_map(FinSet::skeleton(l), 3, b.carrier);
            if (!ur.pass()) {
                ok = false;
                witness = "L of size " + std::to_string(l) + ": " + ur.witness;
            }
        }
        report.add("unit-map-injective-natural", ok, witness, replay);
    }
    {
        // truncated nerve is simplicial; one-object census example
        auto g = sigma_groupoid(FinSet::skeleton(1), FinSet({"*"}), 2);
        auto nerve = nerve_truncate(g, std::min(b.nerve_degree, 3));
        auto simp = check_simplicial_identities(nerve);
        bool count_ok = nerve.simplices.size() > 1 && nerve.simplices[1].size() == 4;
        report.add("nerve-truncation-simplicial", simp.pass && count_ok,
                   simp.pass ? (count_ok ? "" : "1-simplex count off") : simp.witness,
                   replay);
    }
    return report;
}

VerificationReport suite_bpq_cofibrant(const Bounds& b) {
    VerificationReport report;
    report.suite = "bpq-cofibrant";
    report.bounds = b;
    std::string replay = "dendron suite run bpq-cofibrant " + bounds_flag(b);
    for (int a = 1; a <= 3; ++a) {
        auto rep = check_bsigma_cofibrant(FinSet::skeleton(a), b.carrier, b.nerve_degree);
        report.add("free-action-on-surjection-simplices/" + std::to_string(a), rep.free,
                   rep.free ? std::to_string(rep.complement_simplices) + " simplices"
                            : rep.witness,
                   replay);
    }
    auto rep = check_bsigma_cofibrant(FinSet::skeleton(2), std::min(b.carrier, 3),
                                      std::min(b.nerve_degree, 2), true);
    report.add("cofibrancy-mutated-fails", !rep.free, rep.witness, replay);
    return report;
}

// --------------------------------------------------------------------------

VerificationReport suite_lambda_adjunction(const Bounds& b) {
    VerificationReport report;
    report.suite = "lambda-adjunction";
    report.bounds = b;
    std::string replay = "dendron suite run lambda-adjunction " + bounds_flag(b);

    auto osite = make_omega_site(2, 4);
    auto gsite = make_gamma_site(std::min(b.set_size, 3));
    {
        // lambda_! of a representable is the representable of the leaf set
        bool ok = true;
        std::string witness;
        for (const auto& name : {std::string("eta"), std::string("c1"), std::string("c2"),
                                 std::string("tree-2v")}) {
            int tid = osite.tree_id(fixture_tree(name));
            Presheaf x = representable(osite.cat, tid);
            Presheaf lx = lambda_shriek(x, osite, gsite);
            int n = static_cast<int>(osite.trees[tid].leaves().size());
            Presheaf expect = representable(gsite.cat, n);
            for (int o = 0; o <= gsite.max_size; ++o) {
                if (lx.size(o) != expect.size(o)) {
                    ok = false;
                    witness = name + " at |A|=" + std::to_string(o) + ": " +
                              std::to_string(lx.size(o)) + " vs " +
                              std::to_string(expect.size(o));
                }
            }
        }
        report.add("lan-of-representable", ok, witness, replay);
    }
    {
        bool ok = true;
        std::string witness;
        std::size_t total = 0;
        std::vector<std::pair<std::string, Presheaf>> xs;
        for (const auto& name : {std::string("eta"), std::string("c2"),
                                 std::string("tree-2v")})
            xs.emplace_back(name,
                            representable(osite.cat, osite.tree_id(fixture_tree(name))));
        {
            Presheaf reta = representable(osite.cat, osite.tree_id(fixture_tree("eta")));
            xs.emplace_back("eta+eta", coproduct({&reta, &reta}));
        }
        std::vector<std::pair<std::string, Presheaf>> ys;
        for (int n = 0; n <= 2; ++n)
            ys.emplace_back("F(" + std::to_string(n) + ",-)",
                            representable(gsite.cat, n));
        for (const auto& [xname, x] : xs) {
            for (const auto& [yname, y] : ys) {
                auto adj = check_lambda_adjunction(x, y, osite, gsite);
                total += adj.hom_count_left;
                if (!adj.hom_bijection || !adj.triangles) {
                    ok = false;
                    witness = xname + " against " + yname + ": " + adj.detail +
                              " (" + std::to_string(adj.hom_count_left) + " vs " +
                              std::to_string(adj.hom_count_right) + ")";
                }
            }
        }
        report.add("hom-transpose-bijection-and-triangles", ok,
                   ok ? std::to_string(total) + " transposes round-tripped" : witness,
                   replay);
    }
    {
        // lambda_! does not send the coproduct of two edge-trees to F(2,-)
        Presheaf reta = representable(osite.cat, osite.tree_id(fixture_tree("eta")));
        Presheaf x = coproduct({&reta, &reta});
        Presheaf lx = lambda_shriek(x, osite, gsite);
        Presheaf f2 = representable(gsite.cat, 2);
        bool differs = false;
        std::string detail;
        for (int o = 0; o <= gsite.max_size; ++o) {
            if (lx.size(o) != f2.size(o)) {
                differs = true;
                detail = "|A|=" + std::to_string(o) + ": " + std::to_string(lx.size(o)) +
                         " vs " + std::to_string(f2.size(o));
                break;
            }
        }
        report.add("coproduct-lan-differs-from-f2", differs, detail, replay);
    }
    {
        // lambda^* pulls the one-point leaf set back to the value at 1
        Presheaf f2 = representable(gsite.cat, 2);
        Presheaf pulled = lambda_star(f2, gsite, osite);
        int eta_id = osite.tree_id(fixture_tree("eta"));
        bool ok = pulled.size(eta_id) == f2.size(1);
        report.add("pullback-at-edge-tree", ok, "", replay);
    }
    return report;
}

// --------------------------------------------------------------------------

VerificationReport suite_lstar_pushout(const Bounds& b) {
    VerificationReport report;
    report.suite = "lstar-pushout";
    report.bounds = b;
    std::string replay = "dendron suite run lstar-pushout " + bounds_flag(b);

    {
        auto src = make_gamma_site(std::min(b.set_size, 4));
        auto dst = make_gamma_site(std::min(b.set_size, 4) / 2);
        auto wr = check_wedge_identity(src, dst, 2);
        report.add("wedge-identity/l2", wr.pass, wr.witness, replay);
        auto src3 = make_gamma_site(3);
        auto dst3 = make_gamma_site(1);
        auto wr3 = check_wedge_identity(src3, dst3, 3);
        report.add("wedge-identity/l3", wr3.pass, wr3.witness, replay);
        // L a singleton: identity
        auto wi = check_wedge_identity(src, src, 1);
        report.add("wedge-identity/l1-identity", wi.pass, wi.witness, replay);
    }
    {
        bool ok = true;
        std::string witness;
        std::vector<long long> sizes;
        for (int a = 0; a <= 3 && ok; ++a) {
            for (int l = 1; l <= 3 && ok; ++l) {
                auto pr = check_lstar_pushout(a, l);
                if (!pr.pass()) {
                    ok = false;
                    witness = "|A|=" + std::to_string(a) + ",|L|=" + std::to_string(l) +
                              ": " + pr.witness;
                }
                sizes.push_back(pr.sizes.empty() ? -1 : pr.sizes[0]);
            }
        }
        std::string detail;
        if (ok) {
            detail = "sizes";
            for (long long s : sizes) detail += " " + std::to_string(s);
        }
        report.add("pushout-decomposition", ok, ok ? detail : witness, replay);
    }
    {
        auto gsite = make_gamma_site(std::min(b.set_size, 3));
        auto msite = make_m_site(std::min(b.set_size, 3));
        Presheaf f1 = representable(gsite.cat, 1);
        auto ipr = inv_pow_rho(f1, gsite, msite);
        bool ok = ipr.natural && ipr.rho_injective && !ipr.rho_isomorphism;
        report.add("rho-on-representable", ok,
                   "injective, not surjective for |A| >= 2", replay);
        Presheaf zp = monoid_power_presheaf(z2_monoid(), gsite);
        auto ipz = inv_pow_rho(zp, gsite, msite);
        report.add("rho-iso-on-monoid-powers", ipz.natural && ipz.rho_isomorphism, "",
                   replay);
        // strictly special objects have surjective matching comparisons
        Presheaf minv = inv_star(zp, gsite, msite);
        auto match = matching_object(minv, msite.max_size);
        report.add("special-matching-surjective", match.comparison_surjective, "", replay);
    }
    {
        auto gsite = make_gamma_site(std::min(b.set_size, 3));
        // collapsing an already-reduced object changes nothing
        Presheaf zp = monoid_power_presheaf(z2_monoid(), gsite);
        Presheaf red = reduce_pointed(zp, gsite, 0);
        bool unchanged = true;
        for (int o = 0; o <= gsite.max_size; ++o)
            if (red.size(o) != zp.size(o)) unchanged = false;
        bool reduced = red.size(0) == 1;
        report.add("reduce-already-reduced", unchanged && reduced,
                   red.check_functorial(), replay);
        // a two-point value at the terminal object collapses
        Presheaf term = terminal_presheaf(gsite.cat);
        Presheaf two = coproduct({&term, &term});
        Presheaf red2 = reduce_pointed(two, gsite, 0);
        bool collapsed = true;
        for (int o = 0; o <= gsite.max_size; ++o)
            if (red2.size(o) != 1) collapsed = false;
        report.add("reduce-collapses-terminal-image",
                   collapsed && red2.check_functorial().empty(), "", replay);
    }
    {
        auto msite = make_m_site(std::min(b.set_size, 3));
        // terminal decoration gives the plain groupoid
        Presheaf term = terminal_m_presheaf(msite);
        auto sf = sigma_f_groupoid(term, msite, FinSet::skeleton(1), 2);
        bool same = sf.groupoid.num_objects() == sf.base_groupoid.num_objects() &&
                    sf.groupoid.num_arrows() == sf.base_groupoid.num_arrows();
        report.add("sigma-f-terminal-is-plain", same && sf.fibres_discrete, "", replay);
        // 2-point constant decoration doubles the objects per carrier class
        const FinCat& mc = *msite.cat;
        std::vector<std::vector<std::string>> values(mc.num_objects(), {"s", "t"});
        std::vector<std::vector<int>> actions(mc.num_morphisms(), {0, 1});
        Presheaf twopt(msite.cat, values, actions);
        auto sf2 = sigma_f_groupoid(twopt, msite, FinSet::skeleton(1), 1);
        bool doubled = sf2.groupoid.num_objects() == 2 * sf2.base_groupoid.num_objects();
        report.add("sigma-f-constant-doubles", doubled && sf2.fibres_discrete, "", replay);
        // morphisms respect the decoration action on a nontrivial fixture
        Presheaf pts = pointed_elements_m_presheaf(msite);
        auto sf3 = sigma_f_groupoid(pts, msite, FinSet::skeleton(2), 2);
        report.add("sigma-f-pointed-elements-valid",
                   sf3.groupoid.validate().empty() && sf3.fibres_discrete, "", replay);
        PartialMap drop(FinSet::skeleton(2), FinSet::skeleton(1), {{"1", "1"}});
        bool natural = check_sigma_f_naturality(pts, msite, FinSet::skeleton(2),
                                                FinSet::skeleton(1), drop, 2);
        report.add("sigma-f-projection-natural", natural, "", replay);
    }
    return report;
}

}  // namespace

std::vector<SuiteInfo> suite_registry() {
    return {
        {"reedy-axioms", "generalized Reedy axioms for the tree, finite-set and "
                         "injective sites, plus mutation fixtures"},
        {"omega-combinatorics", "hom counts, automorphism counts, elementary generation "
                                "and canonical forms for trees"},
        {"lambda-functor", "contravariant functoriality and generator classification of "
                           "the leaf functor; the inert-map embedding"},
        {"segal", "nerve realization of representables and strict Segal checks"},
        {"covariant", "algebra presheaves over nerves: route identity, covariant "
                      "fibrations, leaf-inclusion lifting"},
        {"slice", "corolla attachments: counts, functoriality, the slice projection"},
        {"bpq-special", "labelled-set groupoids: component census, disjoint-union "
                        "equivalence, the unit map"},
        {"bpq-cofibrant", "free automorphism action on surjection simplices"},
        {"lambda-adjunction", "left Kan extension along the leaf functor and its "
                              "adjunction"},
        {"lstar-pushout", "product-with-labels identities, pow/restriction comparison, "
                          "reduction, decorated groupoids"},
    };
}

VerificationReport run_suite(const std::string& name, const Bounds& bounds) {
    if (name == "reedy-axioms") return suite_reedy_axioms(bounds);
    if (name == "omega-combinatorics") return suite_omega_combinatorics(bounds);
    if (name == "lambda-functor") return suite_lambda_functor(bounds);
    if (name == "segal") return suite_segal(bounds);
    if (name == "covariant") return suite_covariant(bounds);
    if (name == "slice") return suite_slice(bounds);
    if (name == "bpq-special") return suite_bpq_special(bounds);
    if (name == "bpq-cofibrant") return suite_bpq_cofibrant(bounds);
    if (name == "lambda-adjunction") return suite_lambda_adjunction(bounds);
    if (name == "lstar-pushout") return suite_lstar_pushout(bounds);
    std::string known;
    for (const auto& s : suite_registry()) known += (known.empty() ? "" : ", ") + s.name;
    throw InvalidInput("unknown suite '" + name + "'; registered: " + known);
}

}  // namespace dendron
