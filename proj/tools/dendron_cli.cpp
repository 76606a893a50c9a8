// dendron: command-line interface to the finite tree-category / finite-set
// presheaf toolkit. Subcommands mirror the library modules; every check that
// can fail returns exit code 1 with a witness, usage problems return 2.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "dendron/bpq.hpp"
#include "dendron/bounds.hpp"
#include "dendron/fixtures.hpp"
#include "dendron/operad.hpp"
#include "dendron/presheaf.hpp"
#include "dendron/reedy.hpp"
#include "dendron/slice.hpp"
#include "dendron/suites.hpp"
#include "dendron/tree.hpp"

using nlohmann::json;
using namespace dendron;

namespace {

struct Options {
    std::string bounds_spec;
    bool as_json = false;
    bool as_dot = false;
    std::string out_path;
};

Bounds make_bounds(const Options& o) {
    Bounds b;
    b.apply_spec(o.bounds_spec);
    return b;
}

void emit(const Options& o, const std::string& text) {
    if (o.out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
    } else {
        std::ofstream out(o.out_path);
        out << text;
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw InvalidInput("cannot open file: " + path);
    json j;
    in >> j;
    return j;
}

Tree load_tree(const std::string& arg) {
    try {
        return fixture_tree(arg);
    } catch (const InvalidInput&) {
        return Tree::from_json(read_json_file(arg));
    }
}

TreeMorphism load_morphism(const std::string& path) {
    json j = read_json_file(path);
    Tree src = Tree::from_json(j.at("source"));
    Tree dst = Tree::from_json(j.at("target"));
    auto m = j.at("edgeMap").get<std::map<std::string, std::string>>();
    auto r = validate_morphism(src, dst, m);
    if (!r.ok())
        throw InvalidInput("morphism invalid at vertex " + r.rejection->failing_vertex +
                           ": " + r.rejection->reason);
    return *r.morphism;
}

// dendroidal presheaf arguments: "nerve:ass", "terminal", "repr:<tree>"
DendroidalValuation load_valuation(const std::string& spec, const Bounds& b) {
    if (spec == "terminal") return terminal_valuation();
    if (spec.rfind("nerve:", 0) == 0) {
        auto op = std::make_shared<Operad>(
            fixture_operad(spec.substr(6), std::max(b.arity, 4)));
        return nerve_valuation(op);
    }
    if (spec.rfind("repr:", 0) == 0)
        return representable_valuation(load_tree(spec.substr(5)), b.hom_edge_limit);
    throw InvalidInput("unknown presheaf spec: " + spec +
                       " (use terminal, nerve:<operad>, repr:<tree>)");
}

Algebra load_algebra(const std::string& spec, std::shared_ptr<const Operad> op,
                     const Bounds& b) {
    if (spec == "terminal") return terminal_algebra(op);
    if (spec == "parity") return parity_algebra(op);
    if (spec.rfind("free:", 0) == 0) {
        std::vector<std::pair<std::string, std::string>> gens;
        std::string rest = spec.substr(5);
        std::stringstream ss(rest);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto colon = item.find(':');
            std::string colour =
                colon == std::string::npos ? op->colours()[0] : item.substr(colon + 1);
            gens.push_back({item.substr(0, colon), colour});
        }
        return free_algebra(op, gens, b.free_size);
    }
    throw InvalidInput("unknown algebra spec: " + spec +
                       " (use terminal, parity, free:<gens>)");
}

int report_exit(const Options& o, const VerificationReport& report, double wall_ms) {
    if (o.as_json)
        emit(o, report.to_json().dump(2));
    else
        emit(o, report.human(wall_ms));
    return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite dendroidal / finite-set presheaf toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    Options opt;
    app.add_option("--bounds", opt.bounds_spec,
                   "truncation bounds, e.g. tree-vertices=3,set-size=4,nerve-degree=3,"
                   "carrier=4,tree-edges=6,arity=3,slice-arity=3,free-size=6");
    app.add_flag("--json", opt.as_json, "machine-readable output");
    app.add_flag("--dot", opt.as_dot, "graphviz output where supported");
    app.add_option("--out", opt.out_path, "write output to a file");

    // --- tree ---------------------------------------------------------------
    auto* tree_cmd = app.add_subcommand("tree", "the category of rooted trees");
    
    std::string tree_in, tree_src, tree_dst, tree_morphism;
    auto* tree_canon = tree_cmd->add_subcommand("canon", "canonical form of a tree");
    tree_canon->add_option("--in", tree_in, "tree fixture or JSON file")->required();
    auto* tree_homs = tree_cmd->add_subcommand("homs", "enumerate a hom-set");
    tree_homs->add_option("--source", tree_src)->required();
    tree_homs->add_option("--target", tree_dst)->required();
    auto* tree_aut = tree_cmd->add_subcommand("aut", "automorphism group");
    tree_aut->add_option("--in", tree_in)->required();
    auto* tree_fact = tree_cmd->add_subcommand("factorize", "canonical Reedy factorization");
    tree_fact->add_option("--morphism", tree_morphism, "JSON morphism file")->required();

    // --- fset ---------------------------------------------------------------
    auto* fset_cmd = app.add_subcommand("fset", "finite sets and partial maps");
    
    std::string fset_f, fset_g, fset_in;
    auto* fset_compose = fset_cmd->add_subcommand("compose", "compose partial maps (g after f)");
    fset_compose->add_option("--g", fset_g, "JSON partial map")->required();
    fset_compose->add_option("--f", fset_f, "JSON partial map")->required();
    auto* fset_lambda = fset_cmd->add_subcommand("lambda", "leaf functor of a tree morphism");
    fset_lambda->add_option("--morphism", tree_morphism)->required();
    auto* fset_fact = fset_cmd->add_subcommand("factorize", "surjection-injection factorization");
    fset_fact->add_option("--in", fset_in, "JSON partial map")->required();

    // --- reedy --------------------------------------------------------------
    auto* reedy_cmd = app.add_subcommand("reedy", "generalized Reedy machinery");
    
    std::string reedy_cat = "omega", reedy_obj, reedy_presheaf, reedy_fixture = "leaf-lifting";
    auto* reedy_check = reedy_cmd->add_subcommand("check", "verify the four axioms");
    reedy_check->add_option("--cat", reedy_cat, "omega | gamma | m | JSON file");
    auto* reedy_latch = reedy_cmd->add_subcommand("latch", "latching object of a representable");
    reedy_latch->add_option("--cat", reedy_cat, "omega | gamma | m");
    reedy_latch->add_option("--object", reedy_obj, "tree fixture (omega) or set size")->required();
    reedy_latch->add_option("--presheaf", reedy_presheaf, "repr:<object>, defaults to the object");
    auto* reedy_match = reedy_cmd->add_subcommand("match", "matching object of a representable");
    reedy_match->add_option("--cat", reedy_cat);
    reedy_match->add_option("--object", reedy_obj)->required();
    reedy_match->add_option("--presheaf", reedy_presheaf);
    auto* reedy_lift = reedy_cmd->add_subcommand("lift", "solve a lifting problem fixture");
    reedy_lift->add_option("--fixture", reedy_fixture, "leaf-lifting | exhaustion");

    // --- psh ----------------------------------------------------------------
    auto* psh_cmd = app.add_subcommand("psh", "dendroidal presheaves");
    
    std::string psh_presheaf = "nerve:ass", psh_tree = "c2", psh_kind = "boundary",
                psh_edge, psh_dir = "shriek";
    auto* psh_segal = psh_cmd->add_subcommand("segal", "strict Segal check");
    psh_segal->add_option("--presheaf", psh_presheaf);
    auto* psh_boundary = psh_cmd->add_subcommand("boundary", "boundary / horn / Segal core");
    psh_boundary->add_option("--tree", psh_tree);
    psh_boundary->add_option("--kind", psh_kind, "boundary | horn | core");
    psh_boundary->add_option("--edge", psh_edge, "inner edge for horns");
    auto* psh_lambda = psh_cmd->add_subcommand("lambda", "leaf-functor adjunction");
    psh_lambda->add_option("--direction", psh_dir, "shriek | star | adjunction");
    psh_lambda->add_option("--presheaf", psh_presheaf, "repr:<tree> (shriek), F<k> (star)");

    // --- op -----------------------------------------------------------------
    auto* op_cmd = app.add_subcommand("op", "coloured operads and algebras");
    
    std::string op_name = "ass", op_tree = "c2", op_alg = "parity", op_gens = "x";
    int op_size = 3;
    auto* op_nerve = op_cmd->add_subcommand("nerve", "dendroidal nerve at a tree");
    op_nerve->add_option("--operad", op_name);
    op_nerve->add_option("--tree", op_tree);
    auto* op_free = op_cmd->add_subcommand("free", "free algebra on generators");
    op_free->add_option("--operad", op_name);
    op_free->add_option("--generators", op_gens, "comma-separated, with optional :colour");
    op_free->add_option("--size", op_size, "term-size truncation");
    auto* op_galg = op_cmd->add_subcommand("galg", "algebra presheaf over the nerve");
    op_galg->add_option("--operad", op_name);
    op_galg->add_option("--algebra", op_alg);
    op_galg->add_option("--tree", op_tree);
    auto* op_cov = op_cmd->add_subcommand("covcheck", "strict covariant-fibration check");
    op_cov->add_option("--operad", op_name);
    op_cov->add_option("--algebra", op_alg);

    // --- slice --------------------------------------------------------------
    auto* slice_cmd = app.add_subcommand("slice", "corolla attachments and the slice presheaf");
    
    std::string slice_base = "eta", slice_presheaf = "nerve:ass";
    auto* slice_build = slice_cmd->add_subcommand("build", "attachment groupoid and slice values");
    slice_build->add_option("--base", slice_base);
    slice_build->add_option("--presheaf", slice_presheaf);
    auto* slice_cov = slice_cmd->add_subcommand("check-cov", "strict covariant check of the projection");
    slice_cov->add_option("--presheaf", slice_presheaf);

    // --- bpq ----------------------------------------------------------------
    auto* bpq_cmd = app.add_subcommand("bpq", "labelled-set groupoids and finite-set functors");
    
    int bpq_a = 2, bpq_b = 1, bpq_l = 1;
    bool bpq_mutated = false;
    std::string bpq_presheaf = "F1";
    auto* bpq_sigma = bpq_cmd->add_subcommand("sigma", "groupoid of labelled sets over A");
    bpq_sigma->add_option("--a", bpq_a, "size of A");
    bpq_sigma->add_option("--l", bpq_l, "size of the label set");
    auto* bpq_special = bpq_cmd->add_subcommand("special", "disjoint-union comparison");
    bpq_special->add_option("--a", bpq_a);
    bpq_special->add_option("--b", bpq_b);
    bpq_special->add_flag("--mutated", bpq_mutated, "corrupt the restriction functor");
    auto* bpq_cofib = bpq_cmd->add_subcommand("cofib", "free action on surjection simplices");
    bpq_cofib->add_option("--a", bpq_a);
    bpq_cofib->add_flag("--mutated", bpq_mutated);
    auto* bpq_lstar = bpq_cmd->add_subcommand("lstar", "product-with-labels identities");
    bpq_lstar->add_option("--l", bpq_l);
    auto* bpq_reduce = bpq_cmd->add_subcommand("reduce", "collapse the terminal-value image");
    bpq_reduce->add_option("--presheaf", bpq_presheaf, "F0 | F1 | F2 | monoid | two-points");

    // --- suite / fixtures ----------------------------------------------------
    auto* suite_cmd = app.add_subcommand("suite", "verification suites");
    
    std::string suite_name;
    auto* suite_run = suite_cmd->add_subcommand("run", "run a registered suite");
    suite_run->add_option("name", suite_name)->required();
    suite_cmd->add_subcommand("list", "list registered suites");
    app.add_subcommand("fixtures", "list bundled fixtures");

    // let trailing global flags reach the root parser from any depth
    for (auto* top : app.get_subcommands({})) {
        top->fallthrough();
        for (auto* nested : top->get_subcommands({})) nested->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Bounds bounds = make_bounds(opt);

        if (tree_canon->parsed()) {
            auto cf = canonical_form(load_tree(tree_in));
            if (opt.as_dot) {
                emit(opt, cf.tree.to_dot());
            } else if (opt.as_json) {
                json j;
                j["canonical"] = cf.tree.to_json();
                j["relabel"] = cf.relabel;
                j["encoding"] = cf.tree.encoding();
                emit(opt, j.dump(2));
            } else {
                emit(opt, "encoding: " + cf.tree.encoding() + "\n" +
                              cf.tree.to_json().dump());
            }
            return 0;
        }
        if (tree_homs->parsed()) {
            Tree s = load_tree(tree_src), t = load_tree(tree_dst);
            auto homs = enumerate_homs(s, t, bounds.hom_edge_limit);
            if (opt.as_json) {
                json j = json::array();
                for (const auto& h : homs) j.push_back(h.edge_map());
                emit(opt, j.dump(2));
            } else if (opt.as_dot) {
                std::string out = "digraph homs {\n";
                int k = 0;
                for (const auto& h : homs) {
                    out += "  subgraph cluster_" + std::to_string(k++) + " { label=\"" +
                           h.encoding() + "\"; }\n";
                }
                out += "}\n";
                emit(opt, out);
            } else {
                std::string out = std::to_string(homs.size()) + " morphisms\n";
                for (const auto& h : homs) out += "  " + h.encoding() + "\n";
                emit(opt, out);
            }
            return 0;
        }
        if (tree_aut->parsed()) {
            Tree t = load_tree(tree_in);
            auto auts = automorphisms(t, bounds.hom_edge_limit);
            std::string out = std::to_string(auts.size()) + " automorphisms\n";
            for (const auto& a : auts) out += "  " + a.encoding() + "\n";
            emit(opt, out);
            return 0;
        }
        if (tree_fact->parsed()) {
            auto f = load_morphism(tree_morphism);
            auto rf = reedy_factorize(f);
            json j;
            j["negative"] = rf.negative.to_json();
            j["positive"] = rf.positive.to_json();
            if (opt.as_json)
                emit(opt, j.dump(2));
            else
                emit(opt, "negative: " + rf.negative.encoding() + " -> " +
                              rf.negative.target().encoding() + "\npositive: " +
                              rf.positive.encoding());
            return 0;
        }
        if (fset_compose->parsed()) {
            PartialMap g = PartialMap::from_json(read_json_file(fset_g));
            PartialMap f = PartialMap::from_json(read_json_file(fset_f));
            emit(opt, compose_partial(g, f).to_json().dump(2));
            return 0;
        }
        if (fset_lambda->parsed()) {
            auto alpha = load_morphism(tree_morphism);
            emit(opt, leaf_functor(alpha).to_json().dump(2));
            return 0;
        }
        if (fset_fact->parsed()) {
            PartialMap f = PartialMap::from_json(read_json_file(fset_in));
            auto fac = reedy_factorize_gamma(f);
            json j;
            j["surjection"] = fac.surjection.to_json();
            j["injection"] = fac.injection.to_json();
            j["dualPositive"] = fac.dual_positive;
            j["dualNegative"] = fac.dual_negative;
            emit(opt, j.dump(2));
            return 0;
        }
        if (reedy_check->parsed()) {
            ReedyAxiomReport rep;
            if (reedy_cat == "omega")
                rep = check_reedy_axioms(
                    *make_omega_site(bounds.tree_vertices, bounds.tree_edges).cat);
            else if (reedy_cat == "gamma")
                rep = check_reedy_axioms(*make_gamma_site(bounds.set_size).cat);
            else if (reedy_cat == "m")
                rep = check_reedy_axioms(*make_m_site(bounds.set_size).cat);
            else
                rep = check_reedy_axioms(FinCat::from_json(read_json_file(reedy_cat)));
            emit(opt, rep.to_json().dump(2));
            return rep.all() ? 0 : 1;
        }
        if (reedy_latch->parsed() || reedy_match->parsed()) {
            bool latch = reedy_latch->parsed();
            std::shared_ptr<const FinCat> cat;
            int obj = -1;
            if (reedy_cat == "omega") {
                auto site = make_omega_site(bounds.tree_vertices, bounds.tree_edges);
                cat = site.cat;
                obj = site.tree_id(load_tree(reedy_obj));
                if (obj < 0) throw InvalidInput("tree outside the truncation");
            } else if (reedy_cat == "gamma" || reedy_cat == "m") {
                cat = reedy_cat == "gamma" ? make_gamma_site(bounds.set_size).cat
                                           : make_m_site(bounds.set_size).cat;
                obj = std::stoi(reedy_obj);
            } else {
                throw InvalidInput("--cat must be omega, gamma or m here");
            }
            Presheaf x = representable(cat, obj);
            json j;
            if (latch) {
                auto res = latching_object(x, obj);
                j["elements"] = res.elems;
                j["injective"] = res.map_injective;
            } else {
                auto res = matching_object(x, obj);
                j["families"] = res.families.size();
                j["comparisonInjective"] = res.comparison_injective;
                j["comparisonSurjective"] = res.comparison_surjective;
            }
            emit(opt, j.dump(2));
            return 0;
        }
        if (reedy_lift->parsed()) {
            Bounds b = bounds;
            auto rep = run_suite("covariant", b);
            for (const auto& c : rep.checks) {
                if ((reedy_fixture == "leaf-lifting" && c.name == "leaf-inclusion-lifting") ||
                    (reedy_fixture == "exhaustion" && c.name == "lifting-exhaustion")) {
                    emit(opt, std::string(c.pass ? "pass" : "FAIL") + " " + c.name +
                                  (c.detail.empty() ? "" : " -- " + c.detail));
                    return c.pass ? 0 : 1;
                }
            }
            throw InvalidInput("unknown lifting fixture: " + reedy_fixture);
        }
        if (psh_segal->parsed()) {
            auto site = make_omega_site(std::min(bounds.tree_vertices, 3),
                                        std::min(bounds.tree_edges, 5));
            Presheaf x = tabulate(load_valuation(psh_presheaf, bounds), site);
            auto rep = check_strict_segal(x, site);
            json j;
            j["strictSegal"] = rep.is_strict_segal;
            j["bounds"] = rep.bounds_note;
            j["failures"] = rep.failures;
            emit(opt, j.dump(2));
            return rep.is_strict_segal ? 0 : 1;
        }
        if (psh_boundary->parsed()) {
            auto site = make_omega_site(std::min(bounds.tree_vertices, 3),
                                        std::min(bounds.tree_edges, 5));
            int obj = site.tree_id(load_tree(psh_tree));
            if (obj < 0) throw InvalidInput("tree outside the truncation");
            Presheaf repr = representable(site.cat, obj);
            TreeSubobject kind = psh_kind == "boundary" ? TreeSubobject::Boundary
                                 : psh_kind == "horn"   ? TreeSubobject::Horn
                                                        : TreeSubobject::SegalCore;
            std::string edge = psh_edge;
            if (kind == TreeSubobject::Horn && edge.empty()) {
                for (const auto& e : site.trees[obj].edge_names())
                    if (site.trees[obj].is_inner_edge(e)) edge = e;
                if (edge.empty()) throw InvalidInput("tree has no inner edge");
            }
            auto sub = tree_subobject(site, obj, repr, kind, edge);
            json j;
            j["closed"] = sub.closed_under_actions();
            json counts = json::object();
            for (int o = 0; o < site.cat->num_objects(); ++o)
                if (sub.count(o)) counts[site.trees[o].encoding()] = sub.count(o);
            j["elementCounts"] = counts;
            emit(opt, j.dump(2));
            return 0;
        }
        if (psh_lambda->parsed()) {
            auto osite = make_omega_site(2, 4);
            auto gsite = make_gamma_site(std::min(bounds.set_size, 3));
            if (psh_dir == "shriek") {
                if (psh_presheaf.rfind("repr:", 0) != 0)
                    throw InvalidInput("shriek expects --presheaf repr:<tree>");
                int obj = osite.tree_id(load_tree(psh_presheaf.substr(5)));
                if (obj < 0) throw InvalidInput("tree outside the truncation");
                Presheaf x = representable(osite.cat, obj);
                Presheaf lx = lambda_shriek(x, osite, gsite);
                json j;
                for (int o = 0; o <= gsite.max_size; ++o)
                    j["size|A|=" + std::to_string(o)] = lx.size(o);
                emit(opt, j.dump(2));
                return 0;
            }
            if (psh_dir == "star") {
                int n = psh_presheaf.rfind("F", 0) == 0 ? std::stoi(psh_presheaf.substr(1)) : 1;
                Presheaf y = representable(gsite.cat, n);
                Presheaf ry = lambda_star(y, gsite, osite);
                json j;
                for (int o = 0; o < osite.cat->num_objects(); ++o)
                    j[osite.trees[o].encoding()] = ry.size(o);
                emit(opt, j.dump(2));
                return 0;
            }
            auto rep = run_suite("lambda-adjunction", bounds);
            double ms = 0;
            return report_exit(opt, rep, ms);
        }
        if (op_nerve->parsed()) {
            auto op = std::make_shared<Operad>(
                fixture_operad(op_name, std::max(bounds.arity, 4)));
            Tree t = load_tree(op_tree);
            auto vals = nerve_valuation(op).values(t);
            std::string out = std::to_string(vals.size()) + " nerve elements at " +
                              t.encoding() + "\n";
            for (const auto& v : vals) out += "  " + v + "\n";
            emit(opt, out);
            return 0;
        }
        if (op_free->parsed()) {
            auto op = std::make_shared<Operad>(
                fixture_operad(op_name, std::max(bounds.arity, op_size)));
            Algebra a = load_algebra("free:" + op_gens, op, [&] {
                Bounds b2 = bounds;
                b2.free_size = op_size;
                return b2;
            }());
            json j;
            for (const auto& c : op->colours()) j[c] = a.carrier(c);
            emit(opt, j.dump(2));
            return 0;
        }
        if (op_galg->parsed()) {
            auto op = std::make_shared<Operad>(
                fixture_operad(op_name, std::max(bounds.arity, 4)));
            Algebra a = load_algebra(op_alg, op, bounds);
            Tree t = load_tree(op_tree);
            auto cmp = compare_g_routes(*op, a, t);
            json j;
            j["agree"] = cmp.agree;
            j["localRoute"] = cmp.local_route.size();
            j["pullbackRoute"] = cmp.pullback_route.size();
            if (!cmp.agree) j["witness"] = cmp.witness;
            emit(opt, j.dump(2));
            return cmp.agree ? 0 : 1;
        }
        if (op_cov->parsed()) {
            auto op = std::make_shared<Operad>(
                fixture_operad(op_name, std::max(bounds.arity, 4)));
            auto alg = std::make_shared<Algebra>(load_algebra(op_alg, op, bounds));
            auto gv = g_valuation(op, alg);
            auto verdict = check_strict_covariant_fibration(
                gv.presheaf, nerve_valuation(op), gv.project, std::min(bounds.arity, 3));
            emit(opt, std::string(verdict.pass ? "pass" : "FAIL") +
                          (verdict.witness.empty() ? "" : " -- " + verdict.witness));
            return verdict.pass ? 0 : 1;
        }
        if (slice_build->parsed() || slice_cov->parsed()) {
            auto x = load_valuation(slice_presheaf, bounds);
            Tree eta = Tree::edge_only("e");
            auto colours = x.values(eta);
            std::vector<std::string> labels;
            std::map<std::string, std::string> sigma;
            for (std::size_t i = 0; i < colours.size(); ++i) {
                std::string u = "u" + std::to_string(i + 1);
                labels.push_back(u);
                sigma[u] = colours[i];
            }
            auto sl = slice_construction(labels, sigma, x, bounds.slice_arity);
            if (slice_build->parsed()) {
                Tree base = load_tree(slice_base);
                auto g = attachment_groupoid(base, bounds.slice_arity);
                json j;
                j["attachmentObjects"] = g.num_objects();
                j["attachmentArrows"] = g.num_arrows();
                auto vals = sl.presheaf.values(base);
                j["sliceValues"] = vals;
                if (opt.as_dot) {
                    emit(opt, g.to_dot());
                    return 0;
                }
                emit(opt, j.dump(2));
                return 0;
            }
            auto verdict = check_strict_covariant_fibration(
                sl.presheaf, x, sl.project, std::min(bounds.slice_arity, 2));
            emit(opt, std::string(verdict.pass ? "pass" : "FAIL") +
                          (verdict.witness.empty() ? "" : " -- " + verdict.witness));
            return verdict.pass ? 0 : 1;
        }
        if (bpq_sigma->parsed()) {
            FinSet a = FinSet::skeleton(bpq_a), l = FinSet::skeleton(std::max(bpq_l, 1));
            if (bpq_l == 1) l = FinSet({"*"});
            auto cen = check_pi0_census(a, l, bounds.carrier);
            json j;
            j["isoClasses"] = cen.iso_classes;
            j["expectedTuples"] = cen.expected_tuples;
            j["censusPass"] = cen.pass;
            long long objects = 0;
            objects = static_cast<long long>(
                enumerate_sigma_objects(a, l, bounds.carrier).size());
            j["objects"] = objects;
            if (opt.as_dot && bpq_a * std::max(bpq_l, 1) <= 2 && bounds.carrier <= 2) {
                emit(opt, sigma_groupoid(a, l, bounds.carrier).to_dot());
                return cen.pass ? 0 : 1;
            }
            emit(opt, j.dump(2));
            return cen.pass ? 0 : 1;
        }
        if (bpq_special->parsed()) {
            auto rep = check_special(FinSet::skeleton(bpq_a), FinSet::skeleton(bpq_b),
                                     bounds.carrier, bpq_mutated);
            json j;
            j["essentiallySurjective"] = rep.essentially_surjective;
            j["fullyFaithful"] = rep.fully_faithful;
            j["pairsChecked"] = rep.pairs_checked;
            if (!rep.pass()) j["witness"] = rep.witness;
            emit(opt, j.dump(2));
            return rep.pass() ? 0 : 1;
        }
        if (bpq_cofib->parsed()) {
            auto rep = check_bsigma_cofibrant(FinSet::skeleton(bpq_a), bounds.carrier,
                                              bounds.nerve_degree, bpq_mutated);
            json j;
            j["free"] = rep.free;
            j["complementSimplices"] = rep.complement_simplices;
            if (!rep.free) j["witness"] = rep.witness;
            emit(opt, j.dump(2));
            return rep.free ? 0 : 1;
        }
        if (bpq_lstar->parsed()) {
            json j;
            bool all = true;
            for (int a = 0; a <= 3; ++a) {
                auto pr = check_lstar_pushout(a, std::max(bpq_l, 1));
                j["pushout|A|=" + std::to_string(a)] =
                    json{{"pass", pr.pass()}, {"size", pr.sizes.empty() ? -1 : pr.sizes[0]}};
                all = all && pr.pass();
            }
            auto src = make_gamma_site(std::min(bounds.set_size, 4));
            auto dst = make_gamma_site(std::min(bounds.set_size, 4) / std::max(bpq_l, 1));
            auto wr = check_wedge_identity(src, dst, std::max(bpq_l, 1));
            j["wedgeIdentity"] = wr.pass;
            all = all && wr.pass;
            emit(opt, j.dump(2));
            return all ? 0 : 1;
        }
        if (bpq_reduce->parsed()) {
            auto gsite = make_gamma_site(std::min(bounds.set_size, 3));
            Presheaf x = [&]() {
                if (bpq_presheaf == "monoid")
                    return monoid_power_presheaf(z2_monoid(), gsite);
                if (bpq_presheaf == "two-points") {
                    Presheaf term = terminal_presheaf(gsite.cat);
                    return coproduct({&term, &term});
                }
                int n = bpq_presheaf.rfind("F", 0) == 0
                            ? std::stoi(bpq_presheaf.substr(1))
                            : 1;
                return representable(gsite.cat, n);
            }();
            Presheaf red = reduce_pointed(x, gsite, 0);
            json j;
            for (int o = 0; o <= gsite.max_size; ++o)
                j["|A|=" + std::to_string(o)] =
                    json{{"before", x.size(o)}, {"after", red.size(o)}};
            j["functorial"] = red.check_functorial().empty();
            emit(opt, j.dump(2));
            return 0;
        }
        if (suite_run->parsed()) {
            auto start = std::chrono::steady_clock::now();
            auto rep = run_suite(suite_name, bounds);
            auto stop = std::chrono::steady_clock::now();
            double ms = std::chrono::duration<double, std::milli>(stop - start).count();
            return report_exit(opt, rep, ms);
        }
        if (suite_cmd->got_subcommand("list")) {
            if (opt.as_json) {
                json j = json::array();
                for (const auto& s : suite_registry())
                    j.push_back({{"name", s.name}, {"description", s.description}});
                emit(opt, j.dump(2));
            } else {
                std::string out;
                for (const auto& s : suite_registry())
                    out += s.name + "\n    " + s.description + "\n";
                emit(opt, out);
            }
            return 0;
        }
        if (app.got_subcommand("fixtures")) {
            if (opt.as_json) {
                json j = json::array();
                for (const auto& f : fixture_registry())
                    j.push_back({{"name", f.name},
                                 {"kind", f.kind},
                                 {"description", f.description}});
                emit(opt, j.dump(2));
            } else {
                std::string out;
                for (const auto& f : fixture_registry())
                    out += f.name + " (" + f.kind + "): " + f.description + "\n";
                emit(opt, out);
            }
            return 0;
        }
        std::cerr << "no action for the given subcommand\n";
        return 2;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BoundExceeded& e) {
        std::cerr << "bound exceeded: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
