#include "dendron/reedy.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace dendron {

using nlohmann::json;

json ReedyAxiomReport::to_json() const {
    auto verdict = [](const AxiomVerdict& v) {
        json j;
        j["pass"] = v.pass;
        if (!v.pass) j["witness"] = v.witness;
        return j;
    };
    json j;
    j["table"] = verdict(table);
    j["degree"] = verdict(degree);
    j["factorization"] = verdict(factorization);
    j["iso"] = verdict(iso);
    j["rigidity"] = verdict(rigidity);
    j["all"] = all();
    return j;
}

ReedyAxiomReport check_reedy_axioms(const FinCat& cat) {
    ReedyAxiomReport report;

    std::string table_err = cat.validate();
    if (!table_err.empty()) {
        report.table.pass = false;
        report.table.witness = table_err;
    }

    // degree monotonicity along the two classes
    for (int f = 0; f < cat.num_morphisms() && report.degree.pass; ++f) {
        if (cat.in_plus(f) && cat.degree(cat.src(f)) > cat.degree(cat.dst(f))) {
            report.degree.pass = false;
            report.degree.witness = "positive morphism lowers degree: " +
                                    cat.morphism(f).name;
        }
        if (cat.in_minus(f) && cat.degree(cat.src(f)) < cat.degree(cat.dst(f))) {
            report.degree.pass = false;
            report.degree.witness = "negative morphism raises degree: " +
                                    cat.morphism(f).name;
        }
    }

    // factorization: existence and uniqueness up to isomorphism (transitive
    // linkage of the factorization graph)
    for (int f = 0; f < cat.num_morphisms() && report.factorization.pass; ++f) {
        struct Fact {
            int e, m, mid;
        };
        std::vector<Fact> facts;
        for (int mid = 0; mid < cat.num_objects(); ++mid) {
            for (int e : cat.hom(cat.src(f), mid)) {
                if (!cat.in_minus(e)) continue;
                for (int m : cat.hom(mid, cat.dst(f))) {
                    if (!cat.in_plus(m)) continue;
                    if (cat.compose(m, e) == f) facts.push_back({e, m, mid});
                }
            }
        }
        if (facts.empty()) {
            report.factorization.pass = false;
            report.factorization.witness = "no (negative, positive) factorization of " +
                                           cat.morphism(f).name;
            break;
        }
        // linkage: facts i ~ j when an iso theta satisfies theta∘e_i = e_j and
        // m_j∘theta = m_i
        UnionFind uf(facts.size());
        for (std::size_t i = 0; i < facts.size(); ++i) {
            for (std::size_t j = i + 1; j < facts.size(); ++j) {
                bool linked = false;
                for (int theta : cat.hom(facts[i].mid, facts[j].mid)) {
                    if (!cat.is_iso(theta)) continue;
                    if (cat.compose(theta, facts[i].e) == facts[j].e &&
                        cat.compose(facts[j].m, theta) == facts[i].m) {
                        linked = true;
                        break;
                    }
                }
                if (linked) uf.unite(i, j);
            }
        }
        std::set<std::size_t> roots;
        for (std::size_t i = 0; i < facts.size(); ++i) roots.insert(uf.find(i));
        if (roots.size() != 1) {
            report.factorization.pass = false;
            report.factorization.witness = "factorizations of " + cat.morphism(f).name +
                                           " split into " +
                                           std::to_string(roots.size()) +
                                           " isomorphism-linkage classes";
        }
    }

    // iso characterization
    for (int f = 0; f < cat.num_morphisms() && report.iso.pass; ++f) {
        bool both = cat.in_plus(f) && cat.in_minus(f);
        if (both != cat.is_iso(f)) {
            report.iso.pass = false;
            report.iso.witness = std::string(both ? "non-iso in both classes: "
                                                  : "iso missing from a class: ") +
                                 cat.morphism(f).name;
            break;
        }
        bool degree_preserving = cat.degree(cat.src(f)) == cat.degree(cat.dst(f));
        if ((cat.in_plus(f) || cat.in_minus(f)) && degree_preserving && !cat.is_iso(f)) {
            report.iso.pass = false;
            report.iso.witness = "degree-preserving class member is not an iso: " +
                                 cat.morphism(f).name;
        }
    }

    // rigidity
    for (int o = 0; o < cat.num_objects() && report.rigidity.pass; ++o) {
        for (int theta : cat.automorphism_group(o)) {
            if (theta == cat.identity(o)) continue;
            for (int f : cat.morphisms_out_of(o)) {
                if (cat.in_plus(f) && cat.compose(f, theta) == f) {
                    report.rigidity.pass = false;
                    report.rigidity.witness = "positive " + cat.morphism(f).name +
                                              " absorbs the iso " +
                                              cat.morphism(theta).name;
                }
            }
            for (int g : cat.morphisms_into(o)) {
                if (cat.in_minus(g) && cat.compose(theta, g) == g) {
                    report.rigidity.pass = false;
                    report.rigidity.witness = "negative " + cat.morphism(g).name +
                                              " absorbs the iso " +
                                              cat.morphism(theta).name;
                }
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Latching and matching
// ---------------------------------------------------------------------------

LatchingResult latching_object(const Presheaf& x, int r) {
    const FinCat& cat = x.cat();
    // nodes: (properly negative g: r -> s, element of X(s))
    struct Node {
        int g;
        int elem;
    };
    std::vector<Node> nodes;
    std::map<std::pair<int, int>, int> index;
    for (int g : cat.morphisms_out_of(r)) {
        if (!cat.properly_minus(g)) continue;
        for (int i = 0; i < x.size(cat.dst(g)); ++i) {
            index[{g, i}] = static_cast<int>(nodes.size());
            nodes.push_back({g, i});
        }
    }
    UnionFind uf(nodes.size());
    for (int g : cat.morphisms_out_of(r)) {
        if (!cat.properly_minus(g)) continue;
        // morphisms h: dst(g) -> s' with h∘g properly negative give relations
        for (int h : cat.morphisms_out_of(cat.dst(g))) {
            int hg = cat.compose(h, g);
            if (!cat.properly_minus(hg)) continue;
            for (int i = 0; i < x.size(cat.dst(h)); ++i) {
                // (hg, i) ~ (g, h^*(i))
                uf.unite(static_cast<std::size_t>(index.at({hg, i})),
                         static_cast<std::size_t>(index.at({g, x.act(h, i)})));
            }
        }
    }
    // classes with canonical names and the comparison map g^*(elem)
    std::map<std::size_t, std::string> root_name;
    std::map<std::size_t, int> root_value;
    for (std::size_t n = 0; n < nodes.size(); ++n) {
        std::size_t root = uf.find(n);
        std::string nm = cat.morphism(nodes[n].g).name + "|" +
                         x.elem_name(cat.dst(nodes[n].g), nodes[n].elem);
        auto it = root_name.find(root);
        if (it == root_name.end() || nm < it->second) root_name[root] = nm;
        root_value[root] = x.act(nodes[n].g, nodes[n].elem);
    }
    // the comparison must be constant on classes; verify
    for (std::size_t n = 0; n < nodes.size(); ++n) {
        std::size_t root = uf.find(n);
        if (x.act(nodes[n].g, nodes[n].elem) != root_value.at(root))
            throw InvalidInput("latching comparison not constant on a class");
    }
    LatchingResult out;
    std::vector<std::pair<std::string, int>> named;
    for (const auto& [root, nm] : root_name) named.push_back({nm, root_value.at(root)});
    std::sort(named.begin(), named.end());
    std::set<int> values_seen;
    for (auto& [nm, val] : named) {
        out.elems.push_back(nm);
        out.map_to_value.push_back(val);
        if (!values_seen.insert(val).second) out.map_injective = false;
    }
    return out;
}

SubPresheaf boundary_sieve(const Presheaf& repr, int r) {
    const FinCat& cat = repr.cat();
    SubPresheaf sub = empty_subpresheaf(repr);
    for (int m : cat.morphisms_into(r)) {
        if (!cat.properly_plus(m)) continue;
        // everything factoring through m: m ∘ u for all u into src(m)
        int s = cat.src(m);
        {
            int idx = repr.elem_index(s, cat.morphism(m).name);
            if (idx >= 0) sub.selected[s][idx] = 1;
        }
        for (int u : cat.morphisms_into(s)) {
            int composed = cat.compose(m, u);
            int idx = repr.elem_index(cat.src(u), cat.morphism(composed).name);
            if (idx < 0) throw InvalidInput("boundary element missing from representable");
            sub.selected[cat.src(u)][idx] = 1;
        }
    }
    return sub;
}

std::vector<int> sieve_closure(const FinCat& cat, int r, std::vector<int> generators) {
    std::set<int> members(generators.begin(), generators.end());
    for (int v : generators)
        if (cat.dst(v) != r) throw InvalidInput("sieve generator does not target r");
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<int> current(members.begin(), members.end());
        for (int v : current) {
            for (int h : cat.morphisms_into(cat.src(v))) {
                int vh = cat.compose(v, h);
                if (members.insert(vh).second) grew = true;
            }
        }
    }
    return std::vector<int>(members.begin(), members.end());
}

bool is_sieve(const FinCat& cat, int r, const std::vector<int>& members) {
    std::set<int> set(members.begin(), members.end());
    for (int v : members) {
        if (cat.dst(v) != r) return false;
        for (int h : cat.morphisms_into(cat.src(v)))
            if (!set.count(cat.compose(v, h))) return false;
    }
    return true;
}

MatchingResult matching_object(const Presheaf& x, int r,
                               const std::optional<std::vector<int>>& positions) {
    const FinCat& cat = x.cat();
    Presheaf repr = representable(x.cat_ptr(), r);
    SubPresheaf sieve = empty_subpresheaf(repr);
    if (positions) {
        if (!is_sieve(cat, r, *positions))
            throw InvalidInput("V is not a sieve (not closed under precomposition)");
        for (int v : *positions) {
            int idx = repr.elem_index(cat.src(v), cat.morphism(v).name);
            if (idx < 0) throw InvalidInput("sieve member missing from representable");
            sieve.selected[cat.src(v)][idx] = 1;
        }
    } else {
        sieve = boundary_sieve(repr, r);
    }

    MatchingResult out;
    out.families = enumerate_presheaf_maps(sieve, x);
    // canonical comparison: X(r) -> families, x |-> (sigma |-> sigma^* x)
    std::map<std::string, int> family_pos;
    for (std::size_t i = 0; i < out.families.size(); ++i) {
        std::ostringstream os;
        for (int o = 0; o < cat.num_objects(); ++o)
            for (int k = 0; k < repr.size(o); ++k)
                if (sieve.selected[o][k]) os << o << "." << k << "=" <<
                    out.families[i].component[o][k] << ";";
        family_pos[os.str()] = static_cast<int>(i);
    }
    std::set<int> hit;
    for (int i = 0; i < x.size(r); ++i) {
        std::ostringstream os;
        for (int o = 0; o < cat.num_objects(); ++o) {
            for (int k = 0; k < repr.size(o); ++k) {
                if (!sieve.selected[o][k]) continue;
                int mor = -1;
                for (int f : cat.hom(o, r))
                    if (cat.morphism(f).name == repr.elem_name(o, k)) {
                        mor = f;
                        break;
                    }
                os << o << "." << k << "=" << x.act(mor, i) << ";";
            }
        }
        auto it = family_pos.find(os.str());
        if (it == family_pos.end())
            throw InvalidInput("comparison image is not a compatible family");
        out.comparison.push_back(it->second);
        if (!hit.insert(it->second).second) out.comparison_injective = false;
    }
    out.comparison_surjective = hit.size() == out.families.size();
    return out;
}

// ---------------------------------------------------------------------------
// Normality
// ---------------------------------------------------------------------------

HypothesesReport check_normality_hypotheses(const FinCat& cat) {
    HypothesesReport report;
    for (int g = 0; g < cat.num_morphisms() && report.sections; ++g) {
        if (!cat.properly_minus(g)) continue;
        bool has_section = false;
        for (int h : cat.hom(cat.dst(g), cat.src(g)))
            if (cat.compose(g, h) == cat.identity(cat.dst(g))) {
                has_section = true;
                break;
            }
        if (!has_section) {
            report.sections = false;
            report.witness = "negative morphism without a section: " +
                             cat.morphism(g).name;
        }
    }
    for (int r = 0; r < cat.num_objects() && report.pushouts; ++r) {
        std::vector<int> negs;
        for (int g : cat.morphisms_out_of(r))
            if (cat.properly_minus(g)) negs.push_back(g);
        for (std::size_t i = 0; i < negs.size() && report.pushouts; ++i) {
            for (std::size_t j = i; j < negs.size() && report.pushouts; ++j) {
                auto w = has_absolute_pushout(cat, negs[i], negs[j]);
                if (!w.absolute) {
                    report.pushouts = false;
                    report.witness = "span (" + cat.morphism(negs[i]).name + ", " +
                                     cat.morphism(negs[j]).name +
                                     ") has no absolute pushout";
                }
            }
        }
    }
    return report;
}

namespace {

NormalityReport normality_core(const Presheaf& x, const Presheaf& y,
                               const PresheafMap* f) {
    const FinCat& cat = y.cat();
    NormalityReport report;
    auto hyp = check_normality_hypotheses(cat);
    if (!hyp.ok())
        throw InvalidInput("index category fails normality hypotheses: " + hyp.witness);

    for (int r = 0; r < cat.num_objects(); ++r) {
        std::set<int> excluded;  // image of latching and of X(r)
        LatchingResult latch = latching_object(y, r);
        for (int v : latch.map_to_value) excluded.insert(v);
        if (f) {
            std::set<int> seen;
            for (int a = 0; a < x.size(r); ++a) {
                if (!seen.insert(f->component[r][a]).second) {
                    report.objectwise_injective = false;
                    report.witness = "not injective at " + cat.object(r).name;
                    return report;
                }
                excluded.insert(f->component[r][a]);
            }
        }
        for (int theta : cat.automorphism_group(r)) {
            if (theta == cat.identity(r)) continue;
            for (int e = 0; e < y.size(r); ++e) {
                if (excluded.count(e)) continue;
                if (y.act(theta, e) == e) {
                    report.free_action = false;
                    report.witness = "automorphism " + cat.morphism(theta).name +
                                     " fixes " + y.elem_name(r, e) + " at " +
                                     cat.object(r).name;
                    return report;
                }
            }
        }
    }
    return report;
}

}  // namespace

NormalityReport is_normal_mono(const PresheafMap& f) {
    return normality_core(*f.domain, *f.codomain, &f);
}

NormalityReport is_normal_object(const Presheaf& x) {
    return normality_core(x, x, nullptr);
}

// ---------------------------------------------------------------------------
// Absolute pushouts
// ---------------------------------------------------------------------------

PushoutWitness has_absolute_pushout(const FinCat& cat, int g1, int g2) {
    if (cat.src(g1) != cat.src(g2))
        throw InvalidInput("span legs must share their source");
    int r = cat.src(g1), s = cat.dst(g1), t = cat.dst(g2);

    PushoutWitness best;
    for (int u = 0; u < cat.num_objects(); ++u) {
        for (int q1 : cat.hom(s, u)) {
            for (int q2 : cat.hom(t, u)) {
                if (cat.compose(q1, g1) != cat.compose(q2, g2)) continue;
                // preservation by every corepresentable hom(x, -): the induced
                // square of finite sets must be a pushout for each object x
                bool ok = true;
                for (int obj = 0; obj < cat.num_objects() && ok; ++obj) {
                    const auto& hr = cat.hom(obj, r);
                    const auto& hs = cat.hom(obj, s);
                    const auto& ht = cat.hom(obj, t);
                    const auto& hu = cat.hom(obj, u);
                    // set pushout of hs <- hr -> ht
                    std::map<int, int> pos_s, pos_t;
                    for (std::size_t i = 0; i < hs.size(); ++i) pos_s[hs[i]] = i;
                    for (std::size_t i = 0; i < ht.size(); ++i)
                        pos_t[ht[i]] = static_cast<int>(hs.size()) + i;
                    UnionFind uf(hs.size() + ht.size());
                    for (int a : hr)
                        uf.unite(pos_s.at(cat.compose(g1, a)), pos_t.at(cat.compose(g2, a)));
                    // comparison to hom(obj, u)
                    std::map<std::size_t, int> class_to_u;
                    std::set<int> hu_hit;
                    for (std::size_t i = 0; i < hs.size() && ok; ++i) {
                        int target = cat.compose(q1, hs[i]);
                        auto [it, fresh] = class_to_u.emplace(uf.find(i), target);
                        if (!fresh && it->second != target) ok = false;
                        hu_hit.insert(target);
                    }
                    for (std::size_t i = 0; i < ht.size() && ok; ++i) {
                        int target = cat.compose(q2, ht[i]);
                        auto [it, fresh] =
                            class_to_u.emplace(uf.find(hs.size() + i), target);
                        if (!fresh && it->second != target) ok = false;
                        hu_hit.insert(target);
                    }
                    if (ok) {
                        // injective on classes and surjective onto hom(obj, u)
                        std::set<int> values;
                        for (const auto& [cls, val] : class_to_u)
                            if (!values.insert(val).second) ok = false;
                        if (hu_hit.size() != hu.size()) ok = false;
                        if (static_cast<int>(hu.size()) !=
                            static_cast<int>(class_to_u.size()))
                            ok = false;
                    }
                }
                if (!ok) continue;
                PushoutWitness w;
                w.absolute = true;
                w.cocone_object = u;
                w.q1 = q1;
                w.q2 = q2;
                for (int h : cat.hom(s, r))
                    if (cat.compose(g1, h) == cat.identity(s)) {
                        w.section1 = h;
                        break;
                    }
                for (int h : cat.hom(t, r))
                    if (cat.compose(g2, h) == cat.identity(t)) {
                        w.section2 = h;
                        break;
                    }
                w.detail = "pushout preserved by every corepresentable";
                return w;
            }
        }
    }
    best.detail = "no cocone is preserved by all corepresentables";
    return best;
}

}  // namespace dendron
