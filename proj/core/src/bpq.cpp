#include "dendron/bpq.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace dendron {

// ---------------------------------------------------------------------------
// Sigma objects and groupoids
// ---------------------------------------------------------------------------

std::string SigmaObject::encoding() const {
    std::vector<std::string> parts;
    for (const auto& [a, l] : structure) parts.push_back("(" + a + "," + l + ")");
    return std::to_string(carrier) + ":[" + join(parts, ",") + "]";
}

std::map<std::string, int> SigmaObject::fibre_type() const {
    std::map<std::string, int> type;
    for (const auto& [a, l] : structure) type["(" + a + "," + l + ")"] += 1;
    return type;
}

std::vector<SigmaObject> enumerate_sigma_objects(const FinSet& a, const FinSet& l,
                                                 int carrier_bound) {
    std::vector<SigmaObject> out;
    std::vector<std::pair<std::string, std::string>> points;
    for (const auto& x : a.elements())
        for (const auto& y : l.elements()) points.emplace_back(x, y);
    for (int k = 0; k <= carrier_bound; ++k) {
        SigmaObject obj;
        obj.carrier = k;
        obj.structure.resize(k);
        std::function<void(int)> rec = [&](int i) {
            if (i == k) {
                out.push_back(obj);
                return;
            }
            for (const auto& p : points) {
                obj.structure[i] = p;
                rec(i + 1);
            }
        };
        if (k == 0 || !points.empty()) rec(0);
    }
    return out;
}

SigmaObject gamma_act_object(const PartialMap& phi, const SigmaObject& obj) {
    SigmaObject out;
    for (const auto& [a, l] : obj.structure) {
        if (auto b = phi.apply(a)) out.structure.emplace_back(*b, l);
    }
    out.carrier = static_cast<int>(out.structure.size());
    return out;
}

std::vector<std::vector<int>> fibrewise_bijections(const SigmaObject& f,
                                                   const SigmaObject& g) {
    std::vector<std::vector<int>> out;
    if (f.carrier != g.carrier) return out;
    int k = f.carrier;
    for (const auto& sigma : all_permutations(k)) {
        bool ok = true;
        for (int i = 0; i < k && ok; ++i)
            if (g.structure[sigma[i]] != f.structure[i]) ok = false;
        if (ok) out.push_back(sigma);
    }
    return out;
}

Groupoid sigma_groupoid(const FinSet& a, const FinSet& l, int carrier_bound) {
    auto objects = enumerate_sigma_objects(a, l, carrier_bound);
    FinCat::Builder b;
    for (std::size_t o = 0; o < objects.size(); ++o)
        b.add_object(objects[o].encoding(), objects[o].carrier);

    struct ArrowData {
        int src, dst;
        std::vector<int> perm;
    };
    std::vector<ArrowData> arrows;
    std::map<std::string, int> index;
    auto arrow_key = [](int s, int t, const std::vector<int>& p) {
        std::string key = std::to_string(s) + ">" + std::to_string(t) + ":";
        for (int v : p) key += std::to_string(v) + ".";
        return key;
    };
    for (std::size_t s = 0; s < objects.size(); ++s) {
        for (std::size_t t = 0; t < objects.size(); ++t) {
            if (objects[s].carrier != objects[t].carrier) continue;
            for (auto& perm : fibrewise_bijections(objects[s], objects[t])) {
                ArrowData ad{static_cast<int>(s), static_cast<int>(t), perm};
                std::string key = arrow_key(ad.src, ad.dst, ad.perm);
                std::string nm = key;
                int id = b.add_morphism(nm, ad.src, ad.dst, true, true);
                index[key] = id;
                bool is_id = ad.src == ad.dst;
                for (std::size_t i = 0; i < perm.size() && is_id; ++i)
                    if (perm[i] != static_cast<int>(i)) is_id = false;
                if (is_id && ad.src == ad.dst) b.set_identity(ad.src, id);
                arrows.push_back(std::move(ad));
            }
        }
    }
    auto data = std::make_shared<std::vector<ArrowData>>(arrows);
    auto idx = std::make_shared<std::map<std::string, int>>(index);
    auto keyfn = std::make_shared<std::function<std::string(int, int, const std::vector<int>&)>>(
        arrow_key);
    b.set_composer([data, idx, keyfn](const FinCat&, int g, int f) -> int {
        const ArrowData& gd = (*data)[g];
        const ArrowData& fd = (*data)[f];
        std::vector<int> comp = compose_perm(gd.perm, fd.perm);
        auto it = idx->find((*keyfn)(fd.src, gd.dst, comp));
        return it == idx->end() ? -1 : it->second;
    });
    return Groupoid(b.build());
}

CensusReport check_pi0_census(const FinSet& a, const FinSet& l, int carrier_bound) {
    CensusReport report;
    auto objects = enumerate_sigma_objects(a, l, carrier_bound);
    std::set<std::string> types;
    for (const auto& obj : objects) {
        std::string key;
        for (const auto& [pt, n] : obj.fibre_type()) key += pt + "=" + std::to_string(n) + ";";
        types.insert(key);
    }
    report.iso_classes = static_cast<long long>(types.size());
    // tuples over |A x L| colours with sum <= bound: C(m + bound, m)
    long long m = static_cast<long long>(a.size()) * l.size();
    long long expected = 1;
    for (long long i = 1; i <= m; ++i) expected = expected * (carrier_bound + i) / i;
    report.expected_tuples = expected;
    if (report.iso_classes != expected) {
        report.pass = false;
        report.witness = "census mismatch: " + std::to_string(report.iso_classes) +
                         " classes vs " + std::to_string(expected) + " tuples";
        return report;
    }
    // same fibre type must be connected by an explicit fibrewise bijection
    std::map<std::string, SigmaObject> rep;
    for (const auto& obj : objects) {
        std::string key;
        for (const auto& [pt, n] : obj.fibre_type()) key += pt + "=" + std::to_string(n) + ";";
        auto it = rep.find(key);
        if (it == rep.end()) {
            rep[key] = obj;
        } else if (fibrewise_bijections(it->second, obj).empty()) {
            report.pass = false;
            report.witness = "equal fibre type without a connecting bijection at " +
                             obj.encoding();
            return report;
        }
    }
    return report;
}

SpecialReport check_special(const FinSet& a, const FinSet& b, int carrier_bound,
                            bool mutate_action) {
    SpecialReport report;
    FinSet ab = a.disjoint_union(b);
    FinSet l({"*"});
    // the two inert surjections A⊔B ⇸ A and ⇸ B (undoing the tags)
    std::map<std::string, std::string> to_a, to_b;
    for (const auto& x : a.elements()) to_a["L:" + x] = x;
    for (const auto& y : b.elements()) to_b["R:" + y] = y;
    PartialMap pa(ab, a, to_a), pb(ab, b, to_b);

    auto restrict_a = [&](const SigmaObject& obj) {
        SigmaObject r = gamma_act_object(pa, obj);
        if (mutate_action && r.carrier >= 2)
            std::swap(r.structure[0], r.structure[1]);  // corrupted functor
        return r;
    };
    auto restrict_b = [&](const SigmaObject& obj) { return gamma_act_object(pb, obj); };

    auto objects = enumerate_sigma_objects(ab, l, carrier_bound);

    // essential surjectivity on carrier-compatible class pairs
    std::set<std::string> reachable;
    for (const auto& obj : objects) {
        std::string key;
        for (const auto& [pt, n] : restrict_a(obj).fibre_type())
            key += pt + "=" + std::to_string(n) + ";";
        key += "|";
        for (const auto& [pt, n] : restrict_b(obj).fibre_type())
            key += pt + "=" + std::to_string(n) + ";";
        reachable.insert(key);
    }
    for (const auto& oa : enumerate_sigma_objects(a, l, carrier_bound)) {
        for (const auto& ob : enumerate_sigma_objects(b, l, carrier_bound)) {
            if (oa.carrier + ob.carrier > carrier_bound) continue;
            std::string key;
            for (const auto& [pt, n] : oa.fibre_type())
                key += pt + "=" + std::to_string(n) + ";";
            key += "|";
            for (const auto& [pt, n] : ob.fibre_type())
                key += pt + "=" + std::to_string(n) + ";";
            if (!reachable.count(key)) {
                report.essentially_surjective = false;
                report.witness = "class pair not reached: " + key;
                return report;
            }
        }
    }

    // full faithfulness: Hom(f,g) -> Hom(f_A, g_A) x Hom(f_B, g_B) bijective
    for (std::size_t i = 0; i < objects.size(); ++i) {
        for (std::size_t j = 0; j < objects.size(); ++j) {
            const SigmaObject& f = objects[i];
            const SigmaObject& g = objects[j];
            if (f.carrier != g.carrier) continue;
            auto homs = fibrewise_bijections(f, g);
            if (homs.empty()) continue;
            ++report.pairs_checked;
            SigmaObject fa = restrict_a(f), ga = restrict_a(g);
            SigmaObject fb = restrict_b(f), gb = restrict_b(g);
            auto homs_a = fibrewise_bijections(fa, ga);
            auto homs_b = fibrewise_bijections(fb, gb);
            // induced map: restrict sigma to each tagged part
            std::set<std::string> induced;
            for (const auto& sigma : homs) {
                // positions of the A-part / B-part in carrier order
                std::vector<int> a_pos, b_pos;
                for (int p = 0; p < f.carrier; ++p) {
                    if (f.structure[p].first.rfind("L:", 0) == 0)
                        a_pos.push_back(p);
                    else
                        b_pos.push_back(p);
                }
                std::vector<int> ga_pos, gb_pos;
                for (int p = 0; p < g.carrier; ++p) {
                    if (g.structure[p].first.rfind("L:", 0) == 0)
                        ga_pos.push_back(p);
                    else
                        gb_pos.push_back(p);
                }
                auto restrict_perm = [&](const std::vector<int>& dom,
                                         const std::vector<int>& cod) {
                    std::vector<int> r;
                    for (int p : dom) {
                        auto it = std::find(cod.begin(), cod.end(), sigma[p]);
                        if (it == cod.end()) return std::vector<int>{};
                        r.push_back(static_cast<int>(it - cod.begin()));
                    }
                    return r;
                };
                std::vector<int> sa = restrict_perm(a_pos, ga_pos);
                std::vector<int> sb = restrict_perm(b_pos, gb_pos);
                if ((a_pos.size() && sa.empty() && !a_pos.empty()) ||
                    (b_pos.size() && sb.empty() && !b_pos.empty())) {
                    if (!a_pos.empty() || !b_pos.empty()) {
                        report.fully_faithful = false;
                        report.witness = "restricted bijection leaves its part at " +
                                         f.encoding() + " -> " + g.encoding();
                        return report;
                    }
                }
                // verify the restrictions are fibrewise for the restricted objects
                auto check_member = [](const std::vector<std::vector<int>>& set,
                                       const std::vector<int>& cand) {
                    return std::find(set.begin(), set.end(), cand) != set.end();
                };
                if (!check_member(homs_a, sa) || !check_member(homs_b, sb)) {
                    report.fully_faithful = false;
                    report.witness = "hom-set mismatch: restriction of a bijection is "
                                     "not fibrewise at " +
                                     f.encoding() + " -> " + g.encoding();
                    return report;
                }
                std::string key;
                for (int v : sa) key += std::to_string(v) + ".";
                key += "|";
                for (int v : sb) key += std::to_string(v) + ".";
                induced.insert(key);
            }
            if (induced.size() != homs.size() ||
                induced.size() != homs_a.size() * homs_b.size()) {
                report.fully_faithful = false;
                report.witness = "hom-set cardinality mismatch at " + f.encoding() +
                                 " -> " + g.encoding() + ": " +
                                 std::to_string(homs.size()) + " vs " +
                                 std::to_string(homs_a.size()) + "*" +
                                 std::to_string(homs_b.size());
                return report;
            }
        }
    }
    return report;
}

SigmaObject unit_object(const FinSet& l, const FinSet& a, const PartialMap& phi) {
    (void)a;
    SigmaObject out;
    for (const auto& x : l.elements()) {
        if (auto y = phi.apply(x)) out.structure.emplace_back(*y, x);
    }
    out.carrier = static_cast<int>(out.structure.size());
    return out;
}

UnitReport check_unit_map(const FinSet& l, int max_set_size, int carrier_bound) {
    (void)carrier_bound;
    UnitReport report;
    for (int n = 0; n <= max_set_size && report.pass(); ++n) {
        FinSet a = FinSet::skeleton(n);
        std::set<std::string> seen;
        for (const auto& phi : all_partial_maps(FinSet(l.elements()), a)) {
            SigmaObject u = unit_object(l, a, phi);
            if (!seen.insert(u.encoding()).second) {
                report.injective = false;
                report.witness = "unit not injective at |A|=" + std::to_string(n);
                break;
            }
        }
        // naturality: u(psi ∘ phi) = psi_*(u(phi)) for psi: A ⇸ B
        for (int m = 0; m <= max_set_size && report.natural; ++m) {
            FinSet b = FinSet::skeleton(m);
            for (const auto& psi : all_partial_maps(a, b)) {
                for (const auto& phi : all_partial_maps(FinSet(l.elements()), a)) {
                    SigmaObject lhs = unit_object(l, b, compose_partial(psi, phi));
                    SigmaObject rhs = gamma_act_object(psi, unit_object(l, a, phi));
                    if (!(lhs.encoding() == rhs.encoding())) {
                        report.natural = false;
                        report.witness = "naturality fails for phi=" + phi.encoding() +
                                         ", psi=" + psi.encoding();
                        break;
                    }
                }
                if (!report.natural) break;
            }
        }
    }
    return report;
}

CofibrancyReport check_bsigma_cofibrant(const FinSet& a, int carrier_bound,
                                        int nerve_degree, bool mutated) {
    CofibrancyReport report;
    std::vector<std::vector<int>> auts;
    {
        std::vector<int> base(a.size());
        for (int i = 0; i < a.size(); ++i) base[i] = i;
        for (const auto& p : all_permutations(a.size())) {
            bool is_id = true;
            for (std::size_t i = 0; i < p.size(); ++i)
                if (p[i] != static_cast<int>(i)) is_id = false;
            if (!is_id) auts.push_back(p);
        }
    }
    for (int k = 0; k <= carrier_bound; ++k) {
        // augmentations f: {1..k} -> A; complement keeps the surjective ones
        std::vector<std::vector<int>> fs;
        std::vector<int> f(k, 0);
        std::function<void(int)> rec = [&](int i) {
            if (i == k) {
                std::set<int> image(f.begin(), f.end());
                bool surj = static_cast<int>(image.size()) == a.size();
                if (surj || mutated) fs.push_back(f);
                return;
            }
            for (int v = 0; v < a.size(); ++v) {
                f[i] = v;
                rec(i + 1);
            }
        };
        if (k > 0 || a.size() == 0 || mutated) rec(0);
        if (k == 0 && a.size() == 0 && !mutated) fs.push_back({});
        long long strings = 1;
        for (int d = 0; d < nerve_degree; ++d) strings *= factorial(k);
        report.complement_simplices += static_cast<long long>(fs.size()) * strings;
        for (const auto& fv : fs) {
            for (const auto& theta : auts) {
                bool fixed = true;
                for (int i = 0; i < k && fixed; ++i)
                    if (theta[fv[i]] != fv[i]) fixed = false;
                if (fixed) {
                    report.free = false;
                    std::string fenc;
                    for (int v : fv) fenc += std::to_string(v + 1) + ".";
                    std::string tenc;
                    for (int v : theta) tenc += std::to_string(v + 1) + ".";
                    report.witness = "automorphism " + tenc +
                                     " fixes the augmentation [" + fenc + "] (carrier " +
                                     std::to_string(k) + ")";
                    return report;
                }
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// L^* and the wedge / pushout identities
// ---------------------------------------------------------------------------

namespace {

// lexicographic identification of skeleton(n) x skeleton(l) with skeleton(n*l)
PartialMap times_l(const PartialMap& phi, int l_size) {
    int nb = phi.source().size();
    int na = phi.target().size();
    FinSet src = FinSet::skeleton(nb * l_size);
    FinSet tgt = FinSet::skeleton(na * l_size);
    std::map<std::string, std::string> m;
    for (int b = 1; b <= nb; ++b) {
        auto img = phi.apply(std::to_string(b));
        if (!img) continue;
        int ai = std::stoi(*img);
        for (int l = 1; l <= l_size; ++l)
            m[std::to_string((b - 1) * l_size + l)] =
                std::to_string((ai - 1) * l_size + l);
    }
    return PartialMap(src, tgt, std::move(m));
}

}  // namespace

Presheaf l_star(const Presheaf& x, const GammaSite& src, const GammaSite& dst, int l_size) {
    if (dst.max_size * l_size > src.max_size)
        throw BoundExceeded("source site too small for the product with L");
    const FinCat& dc = *dst.cat;
    std::vector<std::vector<std::string>> values(dc.num_objects());
    for (int aa = 0; aa <= dst.max_size; ++aa) values[aa] = x.value_names(aa * l_size);
    std::vector<std::vector<int>> actions(dc.num_morphisms());
    for (int m = 0; m < dc.num_morphisms(); ++m) {
        PartialMap big = times_l(dst.maps[m], l_size);
        int s = dc.src(m), t = dc.dst(m);
        int big_id = src.arrow_id(s * l_size, t * l_size, big);
        if (big_id < 0) throw InvalidInput("product map missing from the source site");
        actions[m] = x.action(big_id);
    }
    return Presheaf(dst.cat, std::move(values), std::move(actions));
}

PointedPresheaf f1_pointed(const GammaSite& site) {
    PointedPresheaf out;
    out.presheaf = representable(site.cat, 1);
    out.basepoint.resize(site.cat->num_objects());
    for (int o = 0; o < site.cat->num_objects(); ++o) {
        // the nowhere-defined partial map is the empty encoding
        int idx = out.presheaf.elem_index(o, "");
        if (idx < 0) throw InvalidInput("basepoint missing from F(1,-)");
        out.basepoint[o] = idx;
    }
    return out;
}

Presheaf f2_presheaf(const GammaSite& site) { return representable(site.cat, 2); }

Presheaf f2_partial_subfunctor(const GammaSite& site) {
    Presheaf full = representable(site.cat, 2);
    const FinCat& c = *site.cat;
    // keep the maps that are not totally defined; these are closed under the
    // covariant action (postcomposition cannot enlarge the domain)
    std::vector<std::vector<std::string>> values(c.num_objects());
    std::vector<std::vector<int>> keep(c.num_objects());
    for (int o = 0; o < c.num_objects(); ++o) {
        for (int i = 0; i < full.size(o); ++i) {
            const std::string& name = full.elem_name(o, i);
            // encoding "1>x;2>y" is total iff it contains both "1>" and "2>"
            bool total = name.find("1>") != std::string::npos &&
                         name.find("2>") != std::string::npos;
            if (!total) {
                keep[o].push_back(i);
                values[o].push_back(name);
            }
        }
    }
    std::vector<std::vector<int>> actions(c.num_morphisms());
    for (int m = 0; m < c.num_morphisms(); ++m) {
        int s = c.src(m), t = c.dst(m);
        for (int i : keep[t]) {
            int moved = full.act(m, i);
            auto it = std::find(keep[s].begin(), keep[s].end(), moved);
            if (it == keep[s].end())
                throw InvalidInput("partial subfunctor not closed under actions");
            actions[m].push_back(static_cast<int>(it - keep[s].begin()));
        }
    }
    return Presheaf(site.cat, std::move(values), std::move(actions));
}

PointedPresheaf wedge(const std::vector<const PointedPresheaf*>& parts) {
    if (parts.empty()) throw InvalidInput("wedge needs at least one part");
    auto cat = parts[0]->presheaf.cat_ptr();
    const FinCat& c = *cat;
    PointedPresheaf out;
    std::vector<std::vector<std::string>> values(c.num_objects());
    // element maps: per part, per object, per element -> wedge index
    std::vector<std::vector<std::vector<int>>> where(parts.size());
    for (std::size_t k = 0; k < parts.size(); ++k)
        where[k].resize(c.num_objects());
    out.basepoint.assign(c.num_objects(), 0);
    for (int o = 0; o < c.num_objects(); ++o) {
        values[o].push_back("*");
        for (std::size_t k = 0; k < parts.size(); ++k) {
            const Presheaf& p = parts[k]->presheaf;
            where[k][o].assign(p.size(o), 0);
            for (int i = 0; i < p.size(o); ++i) {
                if (i == parts[k]->basepoint[o]) {
                    where[k][o][i] = 0;
                } else {
                    where[k][o][i] = static_cast<int>(values[o].size());
                    values[o].push_back(std::to_string(k) + ":" + p.elem_name(o, i));
                }
            }
        }
    }
    std::vector<std::vector<int>> actions(c.num_morphisms());
    for (int m = 0; m < c.num_morphisms(); ++m) {
        int s = c.src(m), t = c.dst(m);
        actions[m].assign(values[t].size(), 0);
        actions[m][0] = 0;  // basepoint is preserved
        for (std::size_t k = 0; k < parts.size(); ++k) {
            const Presheaf& p = parts[k]->presheaf;
            for (int i = 0; i < p.size(t); ++i) {
                int w = where[k][t][i];
                actions[m][w] = where[k][s][p.act(m, i)];
            }
        }
    }
    out.presheaf = Presheaf(cat, std::move(values), std::move(actions));
    return out;
}

WedgeReport check_wedge_identity(const GammaSite& src, const GammaSite& dst, int l_size) {
    WedgeReport report;
    Presheaf lhs = l_star(representable(src.cat, 1), src, dst, l_size);
    PointedPresheaf f1 = f1_pointed(dst);
    std::vector<const PointedPresheaf*> copies(l_size, &f1);
    PointedPresheaf rhs = wedge(copies);
    // canonical map: wedge copy l of the element "1>a" goes to the partial map
    // 1 |-> (a, l); basepoint to the nowhere-defined map
    const FinCat& dc = *dst.cat;
    for (int o = 0; o < dc.num_objects(); ++o) {
        if (lhs.size(o) != rhs.presheaf.size(o)) {
            report.pass = false;
            report.witness = "size mismatch at |A|=" + std::to_string(o) + ": " +
                             std::to_string(lhs.size(o)) + " vs " +
                             std::to_string(rhs.presheaf.size(o));
            return report;
        }
    }
    std::vector<std::vector<int>> comp(dc.num_objects());
    for (int o = 0; o < dc.num_objects(); ++o) {
        comp[o].resize(rhs.presheaf.size(o));
        for (int i = 0; i < rhs.presheaf.size(o); ++i) {
            const std::string& name = rhs.presheaf.elem_name(o, i);
            std::string target_name;
            if (name != "*") {
                auto colon = name.find(':');
                int l = std::stoi(name.substr(0, colon)) + 1;
                std::string rest = name.substr(colon + 1);  // "1>a"
                int aval = std::stoi(rest.substr(2));
                target_name = "1>" + std::to_string((aval - 1) * l_size + l);
            }
            int idx = lhs.elem_index(o, target_name);
            if (idx < 0) {
                report.pass = false;
                report.witness = "comparison image missing: " + name;
                return report;
            }
            comp[o][i] = idx;
        }
    }
    PresheafMap iso;
    iso.domain = &rhs.presheaf;
    iso.codomain = &lhs;
    iso.component = comp;
    if (!iso.is_natural() || !iso.objectwise_bijective()) {
        report.pass = false;
        report.witness = "comparison map is not a natural bijection";
    }
    return report;
}

PushoutReport check_lstar_pushout(int a_size, int l_size) {
    PushoutReport report;
    FinSet two = FinSet::skeleton(2);
    FinSet a = FinSet::skeleton(a_size);
    FinSet al = FinSet::skeleton(a_size * l_size);
    auto pos = [l_size](int av, int l) { return (av - 1) * l_size + l + 1; };

    long long expected = (static_cast<long long>(a_size) * l_size + 1) *
                         (static_cast<long long>(a_size) * l_size + 1);
    report.sizes.push_back(static_cast<long long>(all_partial_maps(two, al).size()));
    if (report.sizes.back() != expected) {
        report.is_pushout = false;
        report.witness = "|F(2, A x L)| is " + std::to_string(report.sizes.back()) +
                         ", expected " + std::to_string(expected);
        return report;
    }

    // nodes of the pushout diagram: wedge of F(2,A) copies over ordered label
    // pairs, and two fans of F(1,A) copies; glued along the non-total part
    std::vector<std::string> nodes;
    std::map<std::string, int> node_at;
    auto add_node = [&](const std::string& key) {
        auto it = node_at.find(key);
        if (it != node_at.end()) return it->second;
        node_at[key] = static_cast<int>(nodes.size());
        nodes.push_back(key);
        return static_cast<int>(nodes.size()) - 1;
    };
    add_node("base");
    auto f2_maps = all_partial_maps(two, a);
    for (int l1 = 0; l1 < l_size; ++l1)
        for (int l2 = 0; l2 < l_size; ++l2)
            for (const auto& phi : f2_maps)
                if (!phi.mapping().empty())
                    add_node("top|" + std::to_string(l1) + "," + std::to_string(l2) +
                             "|" + phi.encoding());
    for (int side = 0; side < 2; ++side)
        for (int l = 0; l < l_size; ++l)
            for (int v = 1; v <= a_size; ++v)
                add_node("side|" + std::to_string(side) + "," + std::to_string(l) +
                         "|" + std::to_string(v));

    UnionFind uf(nodes.size());
    for (int l1 = 0; l1 < l_size; ++l1) {
        for (int l2 = 0; l2 < l_size; ++l2) {
            for (const auto& phi : f2_maps) {
                if (phi.is_total()) continue;  // only the non-total part is glued
                int left = phi.mapping().empty()
                               ? node_at.at("base")
                               : node_at.at("top|" + std::to_string(l1) + "," +
                                            std::to_string(l2) + "|" + phi.encoding());
                int right;
                if (phi.mapping().empty()) {
                    right = node_at.at("base");
                } else if (phi.defined_at("1")) {
                    right = node_at.at("side|0," + std::to_string(l1) + "|" +
                                       *phi.apply("1"));
                } else {
                    right = node_at.at("side|1," + std::to_string(l2) + "|" +
                                       *phi.apply("2"));
                }
                uf.unite(left, right);
            }
        }
    }
    // comparison into the partial maps 2 ⇸ A x L
    auto to_target = [&](const std::string& key) -> std::string {
        if (key == "base") return "";
        auto bar1 = key.find('|');
        auto bar2 = key.find('|', bar1 + 1);
        std::string kind = key.substr(0, bar1);
        std::string copy = key.substr(bar1 + 1, bar2 - bar1 - 1);
        std::string elem = key.substr(bar2 + 1);
        int c1 = std::stoi(copy.substr(0, copy.find(',')));
        int c2 = std::stoi(copy.substr(copy.find(',') + 1));
        if (kind == "top") {
            std::vector<std::string> mapped;
            std::stringstream ss(elem);
            std::string item;
            while (std::getline(ss, item, ';')) {
                int k = std::stoi(item.substr(0, item.find('>')));
                int v = std::stoi(item.substr(item.find('>') + 1));
                mapped.push_back(std::to_string(k) + ">" +
                                 std::to_string(pos(v, k == 1 ? c1 : c2)));
            }
            return join(mapped, ";");
        }
        // side fan: copy = (side, label), elem = value in A
        return std::to_string(c1 + 1) + ">" + std::to_string(pos(std::stoi(elem), c2));
    };
    std::map<std::size_t, std::string> class_image;
    std::set<std::string> images;
    for (std::size_t n = 0; n < nodes.size(); ++n) {
        std::size_t root = uf.find(n);
        std::string img = to_target(nodes[n]);
        auto it = class_image.find(root);
        if (it == class_image.end()) {
            class_image[root] = img;
        } else if (it->second != img) {
            report.commutes = false;
            report.witness = "comparison not constant on a pushout class";
            return report;
        }
    }
    for (const auto& [root, img] : class_image) {
        if (!images.insert(img).second) {
            report.is_pushout = false;
            report.witness = "comparison not injective";
            return report;
        }
    }
    if (static_cast<long long>(images.size()) != expected) {
        report.is_pushout = false;
        report.witness = "pushout has " + std::to_string(images.size()) +
                         " classes, expected " + std::to_string(expected);
    }
    return report;
}

// ---------------------------------------------------------------------------
// inv^*, pow, rho, reduction
// ---------------------------------------------------------------------------

Presheaf inv_star(const Presheaf& x, const GammaSite& gsite, const MSite& msite) {
    if (msite.max_size > gsite.max_size)
        throw BoundExceeded("injective site exceeds the finite-set site");
    const FinCat& mc = *msite.cat;
    std::vector<std::vector<std::string>> values(mc.num_objects());
    for (int o = 0; o <= msite.max_size; ++o) values[o] = x.value_names(o);
    std::vector<std::vector<int>> actions(mc.num_morphisms());
    for (int m = 0; m < mc.num_morphisms(); ++m) {
        const PartialMap& inj = msite.injections[m];
        PartialMap inv = inv_functor(inj);
        int g = gsite.arrow_id(mc.src(m), mc.dst(m), inv);
        if (g < 0) throw InvalidInput("partial inverse missing from the gamma site");
        actions[m] = x.action(g);
    }
    return Presheaf(msite.cat, std::move(values), std::move(actions));
}

InvPowRho inv_pow_rho(const Presheaf& x, const GammaSite& gsite, const MSite& msite) {
    InvPowRho out;
    out.inv = inv_star(x, gsite, msite);
    const FinCat& mc = *msite.cat;

    // anchor: X(1) -> X(empty) along the site morphism whose underlying
    // partial map is the unique empty map skeleton(0) ⇸ skeleton(1)
    std::vector<int> anchor;
    if (msite.max_size >= 1) {
        int drop = gsite.arrow_id(
            0, 1, PartialMap::nowhere_defined(gsite.sets[1], gsite.sets[0]));
        if (drop < 0) throw InvalidInput("missing map to the empty set");
        anchor = x.action(drop);
    }

    std::vector<std::vector<std::string>> values(mc.num_objects());
    std::vector<std::vector<std::vector<int>>> tuples(mc.num_objects());
    for (int o = 0; o <= msite.max_size; ++o) {
        if (o == 0) {
            values[0] = x.value_names(0);
            for (int i = 0; i < x.size(0); ++i) tuples[0].push_back({i});
            continue;
        }
        // tuples of X(1) with a common anchor in X(empty)
        std::vector<int> pick(o, 0);
        std::function<void(int)> rec = [&](int i) {
            if (i == o) {
                int base = anchor[pick[0]];
                for (int k = 1; k < o; ++k)
                    if (anchor[pick[k]] != base) return;
                std::vector<std::string> parts;
                for (int k = 0; k < o; ++k) parts.push_back(x.elem_name(1, pick[k]));
                values[o].push_back("(" + join(parts, "|") + ")");
                tuples[o].push_back(pick);
                return;
            }
            for (int v = 0; v < x.size(1); ++v) {
                pick[i] = v;
                rec(i + 1);
            }
        };
        rec(0);
    }
    std::vector<std::vector<int>> actions(mc.num_morphisms());
    for (int m = 0; m < mc.num_morphisms(); ++m) {
        int s = mc.src(m), t = mc.dst(m);
        const PartialMap& inj = msite.injections[m];
        actions[m].resize(values[t].size());
        for (std::size_t i = 0; i < tuples[t].size(); ++i) {
            if (s == 0) {
                // reindexing along the empty injection: anchor of the tuple
                int val = t == 0 ? tuples[t][i][0] : anchor[tuples[t][i][0]];
                actions[m][i] = val;
                continue;
            }
            std::vector<int> moved(s);
            for (int k = 1; k <= s; ++k) {
                int img = std::stoi(*inj.apply(std::to_string(k)));
                moved[k - 1] = tuples[t][i][img - 1];
            }
            std::vector<std::string> parts;
            for (int v : moved) parts.push_back(x.elem_name(1, v));
            std::string nm = "(" + join(parts, "|") + ")";
            int idx = -1;
            for (std::size_t q = 0; q < values[s].size(); ++q)
                if (values[s][q] == nm) idx = static_cast<int>(q);
            if (idx < 0) throw InvalidInput("pow action left the anchored tuples");
            actions[m][i] = idx;
        }
    }
    out.pow = Presheaf(msite.cat, std::move(values), std::move(actions));

    // rho: X(A) -> X(1)^A via the inert single-point maps
    out.rho.resize(mc.num_objects());
    for (int o = 0; o <= msite.max_size; ++o) {
        out.rho[o].resize(out.inv.size(o));
        if (o == 0) {
            for (int i = 0; i < out.inv.size(0); ++i) out.rho[0][i] = i;
            continue;
        }
        std::vector<std::vector<int>> comps(o);
        for (int a = 1; a <= o; ++a) {
            std::map<std::string, std::string> mp = {{std::to_string(a), "1"}};
            PartialMap chi(gsite.sets[o], gsite.sets[1], mp);
            int g = gsite.arrow_id(1, o, chi);
            if (g < 0) throw InvalidInput("single-point map missing from the site");
            comps[a - 1] = x.action(g);
        }
        for (int i = 0; i < out.inv.size(o); ++i) {
            std::vector<std::string> parts;
            for (int a = 0; a < o; ++a) parts.push_back(x.elem_name(1, comps[a][i]));
            std::string nm = "(" + join(parts, "|") + ")";
            int idx = out.pow.elem_index(o, nm);
            if (idx < 0) throw InvalidInput("rho image is not an anchored tuple");
            out.rho[o][i] = idx;
        }
    }
    PresheafMap rho_map;
    rho_map.domain = &out.inv;
    rho_map.codomain = &out.pow;
    rho_map.component = out.rho;
    out.natural = rho_map.is_natural();
    out.rho_injective = rho_map.objectwise_injective();
    out.rho_isomorphism = out.rho_injective && rho_map.objectwise_surjective();
    return out;
}

FiniteMonoid z2_monoid() {
    FiniteMonoid m;
    m.elements = {"0", "1"};
    m.unit = 0;
    m.mult = {{0, 1}, {1, 0}};
    return m;
}

Presheaf monoid_power_presheaf(const FiniteMonoid& m, const GammaSite& site) {
    const FinCat& c = *site.cat;
    std::vector<std::vector<std::string>> values(c.num_objects());
    std::vector<std::vector<std::vector<int>>> tuples(c.num_objects());
    for (int o = 0; o <= site.max_size; ++o) {
        std::vector<int> pick(o, 0);
        std::function<void(int)> rec = [&](int i) {
            if (i == o) {
                std::vector<std::string> parts;
                for (int v : pick) parts.push_back(m.elements[v]);
                values[o].push_back("(" + join(parts, "|") + ")");
                tuples[o].push_back(pick);
                return;
            }
            for (std::size_t v = 0; v < m.elements.size(); ++v) {
                pick[i] = static_cast<int>(v);
                rec(i + 1);
            }
        };
        rec(0);
    }
    std::vector<std::vector<int>> actions(c.num_morphisms());
    for (int mor = 0; mor < c.num_morphisms(); ++mor) {
        int s = c.src(mor), t = c.dst(mor);
        const PartialMap& payload = site.maps[mor];  // skeleton(t) ⇸ skeleton(s)
        actions[mor].resize(values[t].size());
        for (std::size_t i = 0; i < tuples[t].size(); ++i) {
            std::vector<int> folded(s, m.unit);
            for (int b = 1; b <= t; ++b) {
                auto img = payload.apply(std::to_string(b));
                if (!img) continue;
                int a = std::stoi(*img) - 1;
                folded[a] = m.mult[folded[a]][tuples[t][i][b - 1]];
            }
            std::vector<std::string> parts;
            for (int v : folded) parts.push_back(m.elements[v]);
            std::string nm = "(" + join(parts, "|") + ")";
            int idx = -1;
            for (std::size_t q = 0; q < values[s].size(); ++q)
                if (values[s][q] == nm) idx = static_cast<int>(q);
            if (idx < 0) throw InvalidInput("monoid fold left the tuple set");
            actions[mor][i] = idx;
        }
    }
    return Presheaf(site.cat, std::move(values), std::move(actions));
}

Presheaf reduce_pointed(const Presheaf& x, const GammaSite& site, int basepoint) {
    const FinCat& c = *site.cat;
    if (basepoint < 0 || basepoint >= x.size(0))
        throw InvalidInput("basepoint outside the value at the terminal object");
    // image of X(empty) in each X(A) along the unique map
    std::vector<std::vector<char>> in_image(c.num_objects());
    std::vector<int> collapse_to(c.num_objects());  // index of the collapsed point
    std::vector<std::vector<int>> newindex(c.num_objects());
    std::vector<std::vector<std::string>> values(c.num_objects());
    for (int o = 0; o <= site.max_size; ++o) {
        int unique = -1;
        for (int m = 0; m < c.num_morphisms(); ++m)
            if (c.src(m) == o && c.dst(m) == 0) unique = m;
        in_image[o].assign(x.size(o), 0);
        for (int i = 0; i < x.size(0); ++i) in_image[o][x.act(unique, i)] = 1;
        newindex[o].assign(x.size(o), -1);
        values[o].push_back("*");
        collapse_to[o] = 0;
        for (int i = 0; i < x.size(o); ++i) {
            if (in_image[o][i]) {
                newindex[o][i] = 0;
            } else {
                newindex[o][i] = static_cast<int>(values[o].size());
                values[o].push_back(x.elem_name(o, i));
            }
        }
    }
    std::vector<std::vector<int>> actions(c.num_morphisms());
    for (int m = 0; m < c.num_morphisms(); ++m) {
        int s = c.src(m), t = c.dst(m);
        actions[m].resize(values[t].size());
        actions[m][0] = 0;
        for (int i = 0; i < x.size(t); ++i) {
            int ni = newindex[t][i];
            if (ni == 0) continue;
            actions[m][ni] = newindex[s][x.act(m, i)];
        }
    }
    return Presheaf(site.cat, std::move(values), std::move(actions));
}

// ---------------------------------------------------------------------------
// Sigma_F
// ---------------------------------------------------------------------------

std::string SigmaFObject::encoding() const {
    return base.encoding() + "@" + decoration;
}

SigmaFResult sigma_f_groupoid(const Presheaf& f, const MSite& msite, const FinSet& a,
                              int carrier_bound) {
    if (carrier_bound > msite.max_size)
        throw BoundExceeded("carrier bound exceeds the injective site");
    SigmaFResult out;
    FinSet l({"*"});
    out.base_groupoid = sigma_groupoid(a, l, carrier_bound);

    auto base_objects = enumerate_sigma_objects(a, l, carrier_bound);
    std::vector<SigmaFObject> objects;
    std::vector<int> base_of;
    for (std::size_t o = 0; o < base_objects.size(); ++o) {
        for (int d = 0; d < f.size(base_objects[o].carrier); ++d) {
            SigmaFObject obj;
            obj.base = base_objects[o];
            obj.decoration = f.elem_name(base_objects[o].carrier, d);
            objects.push_back(obj);
            base_of.push_back(static_cast<int>(o));
        }
    }
    FinCat::Builder b;
    for (const auto& obj : objects) b.add_object(obj.encoding(), obj.base.carrier);

    struct ArrowData {
        int src, dst;
        std::vector<int> perm;
    };
    std::vector<ArrowData> arrows;
    std::vector<int> projection;
    std::map<std::string, int> index;
    auto arrow_key = [](int s, int t, const std::vector<int>& p) {
        std::string key = std::to_string(s) + ">" + std::to_string(t) + ":";
        for (int v : p) key += std::to_string(v) + ".";
        return key;
    };
    for (std::size_t s = 0; s < objects.size(); ++s) {
        for (std::size_t t = 0; t < objects.size(); ++t) {
            if (objects[s].base.carrier != objects[t].base.carrier) continue;
            int k = objects[s].base.carrier;
            for (auto& perm : fibrewise_bijections(objects[s].base, objects[t].base)) {
                // structure compatibility: perm^*(decoration of t) = decoration of s
                std::map<std::string, std::string> pm;
                for (int i = 0; i < k; ++i)
                    pm[std::to_string(i + 1)] = std::to_string(perm[i] + 1);
                PartialMap sigma_map(FinSet::skeleton(k), FinSet::skeleton(k), pm);
                int mid = msite.arrow_id(k, k, sigma_map);
                if (mid < 0) throw InvalidInput("carrier bijection missing from M site");
                int moved = f.act(mid, f.elem_index(k, objects[t].decoration));
                if (f.elem_name(k, moved) != objects[s].decoration) continue;
                ArrowData ad{static_cast<int>(s), static_cast<int>(t), perm};
                std::string key = arrow_key(ad.src, ad.dst, ad.perm);
                int id = b.add_morphism(key, ad.src, ad.dst, true, true);
                index[key] = id;
                bool is_id = ad.src == ad.dst;
                for (std::size_t i = 0; i < perm.size() && is_id; ++i)
                    if (perm[i] != static_cast<int>(i)) is_id = false;
                if (is_id) b.set_identity(ad.src, id);
                arrows.push_back(std::move(ad));
                // projection arrow in the base groupoid
                std::string base_key =
                    std::to_string(base_of[s]) + ">" + std::to_string(base_of[t]) + ":";
                for (int v : perm) base_key += std::to_string(v) + ".";
                int base_arrow = -1;
                for (int g = 0; g < out.base_groupoid.cat().num_morphisms(); ++g)
                    if (out.base_groupoid.cat().morphism(g).name == base_key)
                        base_arrow = g;
                projection.push_back(base_arrow);
            }
        }
    }
    auto data = std::make_shared<std::vector<ArrowData>>(arrows);
    auto idx = std::make_shared<std::map<std::string, int>>(index);
    b.set_composer([data, idx](const FinCat&, int g, int fm) -> int {
        const ArrowData& gd = (*data)[g];
        const ArrowData& fd = (*data)[fm];
        std::vector<int> comp = compose_perm(gd.perm, fd.perm);
        std::string key = std::to_string(fd.src) + ">" + std::to_string(gd.dst) + ":";
        for (int v : comp) key += std::to_string(v) + ".";
        auto it = idx->find(key);
        return it == idx->end() ? -1 : it->second;
    });
    out.groupoid = Groupoid(b.build());
    out.projection = std::move(projection);
    // discrete fibres: no non-identity arrow over an identity between the
    // same decorated object
    for (std::size_t ar = 0; ar < arrows.size(); ++ar) {
        if (arrows[ar].src != arrows[ar].dst) continue;
        bool perm_id = true;
        for (std::size_t i = 0; i < arrows[ar].perm.size(); ++i)
            if (arrows[ar].perm[i] != static_cast<int>(i)) perm_id = false;
        bool base_id =
            out.projection[ar] ==
            out.base_groupoid.cat().identity(base_of[arrows[ar].src]);
        if (base_id && !perm_id) out.fibres_discrete = false;
    }
    return out;
}

SigmaFObject sigma_f_gamma_act(const Presheaf& f, const MSite& msite,
                               const SigmaFObject& obj, const PartialMap& phi) {
    SigmaFObject out;
    out.base = gamma_act_object(phi, obj.base);
    // inclusion of the surviving carrier points, as a morphism of injections
    std::vector<int> kept;
    for (int i = 0; i < obj.base.carrier; ++i)
        if (phi.defined_at(obj.base.structure[i].first)) kept.push_back(i);
    std::map<std::string, std::string> incl;
    for (std::size_t i = 0; i < kept.size(); ++i)
        incl[std::to_string(i + 1)] = std::to_string(kept[i] + 1);
    PartialMap incl_map(FinSet::skeleton(static_cast<int>(kept.size())),
                        FinSet::skeleton(obj.base.carrier), incl);
    int mid = msite.arrow_id(static_cast<int>(kept.size()), obj.base.carrier, incl_map);
    if (mid < 0) throw BoundExceeded("carrier inclusion missing from the injective site");
    int d = f.elem_index(obj.base.carrier, obj.decoration);
    if (d < 0) throw InvalidInput("unknown decoration: " + obj.decoration);
    out.decoration = f.elem_name(static_cast<int>(kept.size()), f.act(mid, d));
    return out;
}

bool check_sigma_f_naturality(const Presheaf& f, const MSite& msite, const FinSet& a,
                              const FinSet& b, const PartialMap& phi, int carrier_bound) {
    if (!(phi.source() == a) || !(phi.target() == b))
        throw InvalidInput("partial map endpoints do not match the given sets");
    FinSet l({"*"});
    for (const auto& base : enumerate_sigma_objects(a, l, carrier_bound)) {
        for (int d = 0; d < f.size(base.carrier); ++d) {
            SigmaFObject obj;
            obj.base = base;
            obj.decoration = f.elem_name(base.carrier, d);
            SigmaFObject acted = sigma_f_gamma_act(f, msite, obj, phi);
            // the projection of the acted object equals the acted projection
            if (!(acted.base.encoding() == gamma_act_object(phi, base).encoding()))
                return false;
        }
    }
    return true;
}

Presheaf terminal_m_presheaf(const MSite& msite) { return terminal_presheaf(msite.cat); }

Presheaf pointed_elements_m_presheaf(const MSite& msite) {
    const FinCat& c = *msite.cat;
    std::vector<std::vector<std::string>> values(c.num_objects());
    for (int o = 0; o <= msite.max_size; ++o) {
        values[o].push_back("*");
        for (int i = 1; i <= o; ++i) values[o].push_back("p" + std::to_string(i));
    }
    std::vector<std::vector<int>> actions(c.num_morphisms());
    for (int m = 0; m < c.num_morphisms(); ++m) {
        int s = c.src(m), t = c.dst(m);
        const PartialMap& inj = msite.injections[m];  // skeleton(s) into skeleton(t)
        actions[m].assign(values[t].size(), 0);
        actions[m][0] = 0;
        for (int i = 1; i <= t; ++i) {
            // preimage of point i under the injection, if any
            int pre = 0;
            for (int k = 1; k <= s; ++k)
                if (*inj.apply(std::to_string(k)) == std::to_string(i)) pre = k;
            actions[m][i] = pre;  // 0 is the basepoint
        }
    }
    return Presheaf(msite.cat, std::move(values), std::move(actions));
}

}  // namespace dendron
