#include "dendron/slice.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace dendron {

std::string arity_encoding(const ArityFunction& arities) {
    std::vector<std::string> parts;
    for (const auto& [leaf, n] : arities) parts.push_back(leaf + "=" + std::to_string(n));
    return join(parts, ",");
}

Tree attach_corollas(const Tree& base, const ArityFunction& arities) {
    std::map<std::string, std::vector<std::string>> grafts;
    std::set<std::string> caps;
    for (const auto& leaf : base.leaves()) {
        auto it = arities.find(leaf);
        if (it == arities.end())
            throw InvalidInput("arity function misses leaf: " + leaf);
        if (it->second == 0) {
            caps.insert(leaf);
        } else {
            std::vector<std::string> kids;
            for (int i = 1; i <= it->second; ++i)
                kids.push_back(leaf + "#" + std::to_string(i));
            grafts[leaf] = kids;
        }
    }
    return base.graft_at_leaves(grafts, caps);
}

TreeMorphism attachment_inclusion(const Tree& base, const ArityFunction& arities) {
    Tree sharp = attach_corollas(base, arities);
    std::map<std::string, std::string> m;
    for (const auto& e : base.edge_names()) m[e] = e;
    auto r = validate_morphism(base, sharp, m);
    if (!r.ok()) throw InvalidInput("attachment inclusion failed to validate");
    return *r.morphism;
}

long long attachment_object_count(const Tree& base, int arity_bound) {
    long long count = 1;
    for (std::size_t i = 0; i < base.leaves().size(); ++i)
        count *= (arity_bound + 1);
    return count;
}

Groupoid attachment_groupoid(const Tree& base, int arity_bound) {
    auto leaves = base.leaves();
    // enumerate arity functions in lexicographic order
    std::vector<ArityFunction> objects;
    ArityFunction current;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == leaves.size()) {
            objects.push_back(current);
            return;
        }
        for (int n = 0; n <= arity_bound; ++n) {
            current[leaves[i]] = n;
            rec(i + 1);
        }
    };
    rec(0);

    FinCat::Builder b;
    for (std::size_t o = 0; o < objects.size(); ++o) {
        int degree = 0;
        for (const auto& [l, n] : objects[o]) degree += n;
        b.add_object(arity_encoding(objects[o]), degree);
    }
    // arrows: families of permutations, one per leaf block; endomorphisms only
    struct ArrowData {
        int obj;
        std::map<std::string, std::vector<int>> perms;
    };
    std::vector<ArrowData> arrows;
    std::map<std::string, int> arrow_index;
    auto arrow_name = [](const ArrowData& a) {
        std::vector<std::string> parts;
        for (const auto& [leaf, p] : a.perms) {
            std::string s = leaf + ":";
            for (int v : p) s += std::to_string(v + 1);
            parts.push_back(s);
        }
        return join(parts, ",");
    };
    for (std::size_t o = 0; o < objects.size(); ++o) {
        std::vector<std::vector<std::vector<int>>> blocks;
        for (const auto& leaf : leaves) blocks.push_back(all_permutations(objects[o].at(leaf)));
        std::vector<std::size_t> pick(leaves.size(), 0);
        std::function<void(std::size_t)> emit = [&](std::size_t i) {
            if (i == leaves.size()) {
                ArrowData a;
                a.obj = static_cast<int>(o);
                for (std::size_t k = 0; k < leaves.size(); ++k)
                    a.perms[leaves[k]] = blocks[k][pick[k]];
                arrows.push_back(a);
                return;
            }
            for (std::size_t p = 0; p < blocks[i].size(); ++p) {
                pick[i] = p;
                emit(i + 1);
            }
        };
        emit(0);
    }
    for (std::size_t a = 0; a < arrows.size(); ++a) {
        std::string nm = arrow_name(arrows[a]);
        int id = b.add_morphism(nm, arrows[a].obj, arrows[a].obj, true, true);
        arrow_index[std::to_string(arrows[a].obj) + "|" + nm] = id;
        bool is_id = true;
        for (const auto& [leaf, p] : arrows[a].perms)
            for (std::size_t k = 0; k < p.size(); ++k)
                if (p[k] != static_cast<int>(k)) is_id = false;
        if (is_id) b.set_identity(arrows[a].obj, id);
    }
    auto data = std::make_shared<std::vector<ArrowData>>(arrows);
    auto index = std::make_shared<std::map<std::string, int>>(arrow_index);
    auto name_of = std::make_shared<std::function<std::string(const ArrowData&)>>(arrow_name);
    b.set_composer([data, index, name_of](const FinCat&, int g, int f) -> int {
        const ArrowData& gf = (*data)[g];
        const ArrowData& ff = (*data)[f];
        ArrowData out;
        out.obj = ff.obj;
        for (const auto& [leaf, p] : ff.perms)
            out.perms[leaf] = compose_perm(gf.perms.at(leaf), p);
        auto it = index->find(std::to_string(out.obj) + "|" + (*name_of)(out));
        return it == index->end() ? -1 : it->second;
    });
    return Groupoid(b.build());
}

ArityFunction attachment_restrict(const TreeMorphism& alpha, const ArityFunction& arities) {
    const Tree& target = alpha.target();
    Tree sharp = attach_corollas(target, arities);
    ArityFunction out;
    for (const auto& leaf : alpha.source().leaves()) {
        const std::string& image = alpha.apply(leaf);
        // count leaves of the attached tree weakly above the image edge
        int count = 0;
        for (const auto& e : sharp.edges_above(image))
            if (sharp.is_leaf(e)) ++count;
        out[leaf] = count;
    }
    return out;
}

TreeMorphism attachment_morphism(const TreeMorphism& alpha, const ArityFunction& arities) {
    const Tree& target = alpha.target();
    const Tree& source = alpha.source();
    Tree target_sharp = attach_corollas(target, arities);
    ArityFunction restricted = attachment_restrict(alpha, arities);
    Tree source_sharp = attach_corollas(source, restricted);
    // map: base edges via alpha; the block of new leaves over a source leaf
    // goes to the sorted leaves of the attached tree above the image edge
    std::map<std::string, std::string> m;
    for (const auto& e : source.edge_names()) m[e] = alpha.apply(e);
    for (const auto& leaf : source.leaves()) {
        std::vector<std::string> above;
        for (const auto& e : target_sharp.edges_above(alpha.apply(leaf)))
            if (target_sharp.is_leaf(e)) above.push_back(e);
        std::sort(above.begin(), above.end());
        for (std::size_t i = 0; i < above.size(); ++i)
            m[leaf + "#" + std::to_string(i + 1)] = above[i];
    }
    auto r = validate_morphism(source_sharp, target_sharp, m);
    if (!r.ok())
        throw InvalidInput("attachment morphism failed to validate at vertex " +
                           r.rejection->failing_vertex);
    return *r.morphism;
}

// ---------------------------------------------------------------------------
// The slice presheaf
// ---------------------------------------------------------------------------

namespace {

struct SliceElem {
    ArityFunction arities;
    std::string dendrex;                       // element of X at the attached tree
    std::map<std::string, std::string> label;  // new leaf -> label in U
};

std::string slice_name(const SliceElem& e) {
    std::vector<std::string> ls;
    for (const auto& [leaf, u] : e.label) ls.push_back(leaf + "=" + u);
    return "n[" + arity_encoding(e.arities) + "]|a=" + e.dendrex + "|xi[" +
           join(ls, ",") + "]";
}

SliceElem parse_slice_name(const Tree& base, const std::string& name) {
    SliceElem out;
    auto apos = name.find("]|a=");
    auto xpos = name.rfind("|xi[");
    std::string ns = name.substr(2, apos - 2);
    out.dendrex = name.substr(apos + 4, xpos - apos - 4);
    std::string ls = name.substr(xpos + 4, name.size() - xpos - 5);
    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) parts.push_back(item);
        return parts;
    };
    for (const auto& kv : split(ns)) {
        if (kv.empty()) continue;
        auto eq = kv.find('=');
        out.arities[kv.substr(0, eq)] = std::stoi(kv.substr(eq + 1));
    }
    for (const auto& kv : split(ls)) {
        if (kv.empty()) continue;
        auto eq = kv.find('=');
        out.label[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    (void)base;
    return out;
}

// the block-permutation automorphisms of the attached tree over the base
std::vector<TreeMorphism> attachment_automorphisms(const Tree& base,
                                                   const ArityFunction& arities,
                                                   const Tree& sharp) {
    std::vector<TreeMorphism> out;
    auto leaves = base.leaves();
    std::vector<std::vector<std::vector<int>>> blocks;
    for (const auto& leaf : leaves) blocks.push_back(all_permutations(arities.at(leaf)));
    std::vector<std::size_t> pick(leaves.size(), 0);
    std::function<void(std::size_t)> emit = [&](std::size_t i) {
        if (i == leaves.size()) {
            std::map<std::string, std::string> m;
            for (const auto& e : base.edge_names()) m[e] = e;
            for (std::size_t k = 0; k < leaves.size(); ++k) {
                const auto& p = blocks[k][pick[k]];
                for (std::size_t j = 0; j < p.size(); ++j)
                    m[leaves[k] + "#" + std::to_string(j + 1)] =
                        leaves[k] + "#" + std::to_string(p[j] + 1);
            }
            auto r = validate_morphism(sharp, sharp, m);
            if (!r.ok()) throw InvalidInput("attachment automorphism invalid");
            out.push_back(*r.morphism);
            return;
        }
        for (std::size_t p = 0; p < blocks[i].size(); ++p) {
            pick[i] = p;
            emit(i + 1);
        }
    };
    emit(0);
    return out;
}

// canonical representative of the isomorphism class of (arities, a, xi)
SliceElem canonicalize(const Tree& base, const DendroidalValuation& x, SliceElem e) {
    Tree sharp = attach_corollas(base, e.arities);
    SliceElem best = e;
    std::string best_name = slice_name(best);
    for (const auto& tau : attachment_automorphisms(base, e.arities, sharp)) {
        SliceElem cand;
        cand.arities = e.arities;
        cand.dendrex = x.act(tau, e.dendrex);
        for (const auto& [leaf, u] : e.label) cand.label[tau.apply(leaf)] = u;
        std::string nm = slice_name(cand);
        if (nm < best_name) {
            best = cand;
            best_name = nm;
        }
    }
    return best;
}

}  // namespace

SliceConstruction slice_construction(const std::vector<std::string>& labels,
                                     const std::map<std::string, std::string>& sigma,
                                     const DendroidalValuation& x, int arity_bound) {
    for (const auto& u : labels)
        if (!sigma.count(u)) throw InvalidInput("sigma undefined on label: " + u);
    auto labels_p = std::make_shared<std::vector<std::string>>(labels);
    auto sigma_p = std::make_shared<std::map<std::string, std::string>>(sigma);
    auto x_p = std::make_shared<DendroidalValuation>(x);
    int bound = arity_bound;

    SliceConstruction out;
    out.presheaf.values = [labels_p, sigma_p, x_p, bound](const Tree& base) {
        std::set<std::string> names;
        auto leaves = base.leaves();
        ArityFunction arities;
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == leaves.size()) {
                Tree sharp = attach_corollas(base, arities);
                auto new_leaves = sharp.leaves();
                // compatibility: the restriction of the dendrex along each
                // leaf (transported to the canonical one-edge tree) equals
                // sigma of the label
                Tree eta0 = Tree::edge_only("e");
                std::vector<TreeMorphism> leaf_maps;
                for (const auto& l : new_leaves) {
                    auto r = validate_morphism(eta0, sharp,
                                               std::map<std::string, std::string>{{"e", l}});
                    leaf_maps.push_back(*r.morphism);
                }
                for (const auto& a : x_p->values(sharp)) {
                    std::vector<std::vector<std::string>> options(new_leaves.size());
                    bool feasible = true;
                    for (std::size_t k = 0; k < new_leaves.size(); ++k) {
                        // the restriction must be hit by sigma
                        std::string restricted = x_p->act(leaf_maps[k], a);
                        for (const auto& u : *labels_p)
                            if (sigma_p->at(u) == restricted) options[k].push_back(u);
                        if (options[k].empty()) feasible = false;
                    }
                    if (!feasible) continue;
                    std::vector<std::size_t> pick(new_leaves.size(), 0);
                    std::function<void(std::size_t)> lab = [&](std::size_t k) {
                        if (k == new_leaves.size()) {
                            SliceElem e;
                            e.arities = arities;
                            e.dendrex = a;
                            for (std::size_t j = 0; j < new_leaves.size(); ++j)
                                e.label[new_leaves[j]] = options[j][pick[j]];
                            names.insert(slice_name(canonicalize(base, *x_p, e)));
                            return;
                        }
                        for (std::size_t p = 0; p < options[k].size(); ++p) {
                            pick[k] = p;
                            lab(k + 1);
                        }
                    };
                    lab(0);
                }
                return;
            }
            for (int n = 0; n <= bound; ++n) {
                arities[leaves[i]] = n;
                rec(i + 1);
            }
        };
        rec(0);
        return std::vector<std::string>(names.begin(), names.end());
    };

    out.presheaf.act = [x_p, bound](const TreeMorphism& alpha, const std::string& elem) {
        const Tree& target = alpha.target();
        const Tree& source = alpha.source();
        SliceElem e = parse_slice_name(target, elem);
        ArityFunction restricted = attachment_restrict(alpha, e.arities);
        for (const auto& [leaf, n] : restricted)
            if (n > bound)
                throw BoundExceeded("attachment restriction exceeds the arity bound");
        TreeMorphism sharp_map = attachment_morphism(alpha, e.arities);
        SliceElem moved;
        moved.arities = restricted;
        moved.dendrex = x_p->act(sharp_map, e.dendrex);
        for (const auto& l : sharp_map.source().leaves())
            moved.label[l] = e.label.at(sharp_map.apply(l));
        return slice_name(canonicalize(source, *x_p, moved));
    };

    out.project = [x_p](const Tree& base, const std::string& elem) {
        SliceElem e = parse_slice_name(base, elem);
        TreeMorphism incl = attachment_inclusion(base, e.arities);
        return x_p->act(incl, e.dendrex);
    };

    out.lift = [labels_p, sigma_p, x_p, bound](const std::string& u) {
        if (bound < 1) throw BoundExceeded("lift needs arity bound >= 1");
        Tree eta = Tree::edge_only("e");
        SliceElem e;
        e.arities = {{"e", 1}};
        Tree sharp = attach_corollas(eta, e.arities);
        // degenerate dendrex over sigma(u)
        std::map<std::string, std::string> collapse = {{"e", "e"}, {"e#1", "e"}};
        auto degen = validate_morphism(sharp, eta, collapse);
        e.dendrex = x_p->act(*degen.morphism, sigma_p->at(u));
        e.label = {{"e#1", u}};
        return slice_name(canonicalize(eta, *x_p, e));
    };

    return out;
}

}  // namespace dendron
