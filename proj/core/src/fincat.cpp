#include "dendron/fincat.hpp"

#include <json.hpp>

#include <algorithm>

namespace dendron {

using nlohmann::json;

// ---------------------------------------------------------------------------
// FinCat
// ---------------------------------------------------------------------------

int FinCat::Builder::add_object(const std::string& name, int degree) {
    objects_.push_back({name, degree});
    identity_.push_back(-1);
    return static_cast<int>(objects_.size()) - 1;
}

int FinCat::Builder::add_morphism(const std::string& name, int src, int dst, bool plus,
                                  bool minus) {
    mors_.push_back({name, src, dst, plus, minus});
    return static_cast<int>(mors_.size()) - 1;
}

void FinCat::Builder::set_identity(int obj, int mor) { identity_[obj] = mor; }

void FinCat::Builder::set_composer(std::function<int(const FinCat&, int, int)> fn) {
    composer_ = std::move(fn);
}

void FinCat::Builder::record_composite(int g, int f, int h) { table_[{g, f}] = h; }

FinCat FinCat::Builder::build() {
    FinCat cat;
    cat.objects_ = std::move(objects_);
    cat.mors_ = std::move(mors_);
    cat.identity_ = std::move(identity_);
    for (int o = 0; o < cat.num_objects(); ++o)
        if (cat.identity_[o] < 0)
            throw InvalidInput("object lacks an identity morphism: " + cat.objects_[o].name);
    cat.index_homs();
    if (composer_) {
        cat.materialize_table(composer_);
    } else {
        auto recorded = std::move(table_);
        cat.materialize_table([&recorded](const FinCat&, int g, int f) -> int {
            auto it = recorded.find({g, f});
            if (it == recorded.end()) return -1;
            return it->second;
        });
    }
    cat.compute_inverses();
    return cat;
}

void FinCat::index_homs() {
    hom_.assign(num_objects(), std::vector<std::vector<int>>(num_objects()));
    for (int f = 0; f < num_morphisms(); ++f) hom_[src(f)][dst(f)].push_back(f);
    into_.assign(num_objects(), {});
    out_.assign(num_objects(), {});
    for (int f = 0; f < num_morphisms(); ++f) {
        out_[src(f)].push_back(f);
        into_[dst(f)].push_back(f);
    }
}

void FinCat::materialize_table(
    const std::function<int(const FinCat&, int, int)>& composer) {
    auto table = std::make_shared<std::unordered_map<long long, int>>();
    table->reserve(static_cast<std::size_t>(num_morphisms()) * 8);
    const long long n = num_morphisms();
    for (int f = 0; f < num_morphisms(); ++f) {
        for (int g : out_[dst(f)]) {
            int h = composer(*this, g, f);
            if (h < 0)
                throw InvalidInput("composition undefined for (" + mors_[g].name + ", " +
                                   mors_[f].name + ")");
            (*table)[static_cast<long long>(g) * n + f] = h;
        }
    }
    table_ = table;
}

void FinCat::compute_inverses() {
    inverse_.assign(num_morphisms(), -1);
    for (int f = 0; f < num_morphisms(); ++f) {
        if (inverse_[f] >= 0) continue;
        for (int g : hom(dst(f), src(f))) {
            if (compose(g, f) == identity(src(f)) && compose(f, g) == identity(dst(f))) {
                inverse_[f] = g;
                inverse_[g] = f;
                break;
            }
        }
    }
}

int FinCat::compose(int g, int f) const {
    if (dst(f) != src(g)) throw InvalidInput("morphisms are not composable");
    auto it = table_->find(static_cast<long long>(g) * num_morphisms() + f);
    if (it == table_->end()) throw InvalidInput("composition table is incomplete");
    return it->second;
}

std::vector<int> FinCat::automorphism_group(int o) const {
    std::vector<int> out;
    for (int f : hom(o, o))
        if (is_iso(f)) out.push_back(f);
    return out;
}

int FinCat::object_by_name(const std::string& name) const {
    for (int o = 0; o < num_objects(); ++o)
        if (objects_[o].name == name) return o;
    return -1;
}

int FinCat::morphism_by_name(int s, int t, const std::string& name) const {
    for (int f : hom(s, t))
        if (mors_[f].name == name) return f;
    return -1;
}

std::string FinCat::validate(long long assoc_budget) const {
    // identities neutral
    for (int f = 0; f < num_morphisms(); ++f) {
        if (compose(f, identity(src(f))) != f)
            return "identity not right-neutral at " + mors_[f].name;
        if (compose(identity(dst(f)), f) != f)
            return "identity not left-neutral at " + mors_[f].name;
    }
    for (int o = 0; o < num_objects(); ++o) {
        int i = identity(o);
        if (!in_plus(i) || !in_minus(i))
            return "identity of " + objects_[o].name + " missing from a Reedy class";
    }
    // closure of composition and of the two classes
    for (int f = 0; f < num_morphisms(); ++f) {
        for (int g : morphisms_out_of(dst(f))) {
            int h = compose(g, f);
            if (src(h) != src(f) || dst(h) != dst(g)) return "composition endpoints wrong";
            if (in_plus(f) && in_plus(g) && !in_plus(h))
                return "positive class not closed under composition at " + mors_[h].name;
            if (in_minus(f) && in_minus(g) && !in_minus(h))
                return "negative class not closed under composition at " + mors_[h].name;
        }
    }
    // associativity, strided deterministically when the triple count is large
    long long triples = 0;
    for (int f = 0; f < num_morphisms(); ++f)
        for (int g : morphisms_out_of(dst(f)))
            triples += static_cast<long long>(morphisms_out_of(dst(g)).size());
    long long stride = triples > assoc_budget ? (triples / assoc_budget) + 1 : 1;
    long long cursor = 0;  // position of the next triple to check
    long long seen = 0;
    for (int f = 0; f < num_morphisms(); ++f) {
        for (int g : morphisms_out_of(dst(f))) {
            const auto& outs = morphisms_out_of(dst(g));
            long long block = static_cast<long long>(outs.size());
            int gf = -1;
            while (cursor < seen + block) {
                int h = outs[static_cast<std::size_t>(cursor - seen)];
                if (gf < 0) gf = compose(g, f);
                if (compose(h, gf) != compose(compose(h, g), f))
                    return "associativity fails at (" + mors_[h].name + ", " +
                           mors_[g].name + ", " + mors_[f].name + ")";
                cursor += stride;
            }
            seen += block;
        }
    }
    return "";
}

FinCat FinCat::reclassify(int mor, bool plus, bool minus) const {
    FinCat out = *this;
    out.mors_[mor].plus = plus;
    out.mors_[mor].minus = minus;
    return out;
}

json FinCat::to_json() const {
    json j;
    json objs = json::array();
    for (const auto& o : objects_) objs.push_back({{"name", o.name}, {"degree", o.degree}});
    j["objects"] = objs;
    json mors = json::array();
    for (int m = 0; m < num_morphisms(); ++m)
        mors.push_back({{"id", m},
                        {"name", mors_[m].name},
                        {"src", objects_[mors_[m].src].name},
                        {"dst", objects_[mors_[m].dst].name},
                        {"plus", mors_[m].plus},
                        {"minus", mors_[m].minus}});
    j["morphisms"] = mors;
    json ids = json::object();
    for (int o = 0; o < num_objects(); ++o)
        ids[objects_[o].name] = identity_[o];
    j["identities"] = ids;
    json comp = json::array();
    for (int f = 0; f < num_morphisms(); ++f)
        for (int g : morphisms_out_of(dst(f)))
            comp.push_back(json::array({g, f, compose(g, f)}));
    j["composition"] = comp;
    return j;
}

FinCat FinCat::from_json(const json& j) {
    Builder b;
    std::map<std::string, int> obj_ids;
    for (const auto& o : j.at("objects")) {
        int id = b.add_object(o.at("name").get<std::string>(), o.at("degree").get<int>());
        obj_ids[o.at("name").get<std::string>()] = id;
    }
    // morphisms are keyed by their integer id when present, else by name
    std::map<std::string, int> by_name;
    bool has_ids = false;
    for (const auto& m : j.at("morphisms")) {
        std::string name = m.at("name").get<std::string>();
        int id = b.add_morphism(name, obj_ids.at(m.at("src").get<std::string>()),
                                obj_ids.at(m.at("dst").get<std::string>()),
                                m.at("plus").get<bool>(), m.at("minus").get<bool>());
        if (m.contains("id")) {
            has_ids = true;
            if (m.at("id").get<int>() != id)
                throw InvalidInput("morphism ids must be listed in order");
        } else {
            if (by_name.count(name))
                throw InvalidInput("duplicate morphism name needs explicit ids: " + name);
            by_name[name] = id;
        }
    }
    auto resolve = [&](const json& entry) -> int {
        if (entry.is_number_integer()) return entry.get<int>();
        return by_name.at(entry.get<std::string>());
    };
    for (const auto& [obj, mor] : j.at("identities").items())
        b.set_identity(obj_ids.at(obj), resolve(mor));
    for (const auto& entry : j.at("composition"))
        b.record_composite(resolve(entry.at(0)), resolve(entry.at(1)),
                           resolve(entry.at(2)));
    (void)has_ids;
    return b.build();
}

// ---------------------------------------------------------------------------
// Omega site
// ---------------------------------------------------------------------------

int OmegaSite::tree_id(const Tree& t) const {
    auto it = tree_index_.find(canonical_form(t).tree.encoding());
    return it == tree_index_.end() ? -1 : it->second;
}

int OmegaSite::arrow_id(int s, int t, const TreeMorphism& f) const {
    auto it = arrow_index_.find(std::to_string(s) + "|" + std::to_string(t) + "|" +
                                f.encoding());
    return it == arrow_index_.end() ? -1 : it->second;
}

OmegaSite make_omega_site(int max_vertices, int max_edges) {
    OmegaSite site;
    site.max_vertices = max_vertices;
    site.max_edges = max_edges;
    site.trees = enumerate_trees(max_vertices, max_edges);

    FinCat::Builder b;
    for (std::size_t i = 0; i < site.trees.size(); ++i) {
        const Tree& t = site.trees[i];
        b.add_object("T" + std::to_string(i) + ":" + t.encoding(), t.degree());
        site.tree_index_[t.encoding()] = static_cast<int>(i);
    }
    for (std::size_t s = 0; s < site.trees.size(); ++s) {
        for (std::size_t t = 0; t < site.trees.size(); ++t) {
            for (auto& f : enumerate_homs(site.trees[s], site.trees[t],
                                          std::max(site.trees[s].edge_count(),
                                                   site.trees[t].edge_count()))) {
                int id = b.add_morphism(f.encoding(), static_cast<int>(s),
                                        static_cast<int>(t), in_positive_class(f),
                                        in_negative_class(f));
                site.arrow_index_[std::to_string(s) + "|" + std::to_string(t) + "|" +
                                  f.encoding()] = id;
                if (s == t && f.is_identity()) b.set_identity(static_cast<int>(s), id);
                site.arrows.push_back(std::move(f));
            }
        }
    }
    auto arrows = std::make_shared<std::vector<TreeMorphism>>(site.arrows);
    auto index = std::make_shared<std::map<std::string, int>>(site.arrow_index_);
    b.set_composer([arrows, index](const FinCat& cat, int g, int f) -> int {
        auto comp = compose((*arrows)[g], (*arrows)[f]);
        auto it = index->find(std::to_string(cat.src(f)) + "|" + std::to_string(cat.dst(g)) +
                              "|" + comp.encoding());
        return it == index->end() ? -1 : it->second;
    });
    site.cat = std::make_shared<const FinCat>(b.build());
    return site;
}

// ---------------------------------------------------------------------------
// Gamma site
// ---------------------------------------------------------------------------

int GammaSite::arrow_id(int s, int t, const PartialMap& p) const {
    auto it = arrow_index_.find(std::to_string(s) + "|" + std::to_string(t) + "|" +
                                p.encoding());
    return it == arrow_index_.end() ? -1 : it->second;
}

GammaSite make_gamma_site(int max_size) {
    GammaSite site;
    site.max_size = max_size;
    FinCat::Builder b;
    for (int n = 0; n <= max_size; ++n) {
        site.sets.push_back(FinSet::skeleton(n));
        b.add_object("set" + std::to_string(n), n);
    }
    // a morphism A -> B of the opposite category is a partial map B ⇸ A
    for (int a = 0; a <= max_size; ++a) {
        for (int bb = 0; bb <= max_size; ++bb) {
            for (auto& p : all_partial_maps(site.sets[bb], site.sets[a])) {
                bool minus = p.is_total() && p.is_injective();
                bool plus = p.is_surjective();
                int id = b.add_morphism(p.encoding(), a, bb, plus, minus);
                site.arrow_index_[std::to_string(a) + "|" + std::to_string(bb) + "|" +
                                  p.encoding()] = id;
                if (a == bb && p.is_identity()) b.set_identity(a, id);
                site.maps.push_back(std::move(p));
            }
        }
    }
    auto maps = std::make_shared<std::vector<PartialMap>>(site.maps);
    auto index = std::make_shared<std::map<std::string, int>>(site.arrow_index_);
    b.set_composer([maps, index](const FinCat& cat, int g, int f) -> int {
        // underlying partial map of g∘f is (map of f) ∘ (map of g)
        auto comp = compose_partial((*maps)[f], (*maps)[g]);
        auto it = index->find(std::to_string(cat.src(f)) + "|" + std::to_string(cat.dst(g)) +
                              "|" + comp.encoding());
        return it == index->end() ? -1 : it->second;
    });
    site.cat = std::make_shared<const FinCat>(b.build());
    return site;
}

// ---------------------------------------------------------------------------
// M site
// ---------------------------------------------------------------------------

int MSite::arrow_id(int s, int t, const PartialMap& p) const {
    auto it = arrow_index_.find(std::to_string(s) + "|" + std::to_string(t) + "|" +
                                p.encoding());
    return it == arrow_index_.end() ? -1 : it->second;
}

MSite make_m_site(int max_size) {
    MSite site;
    site.max_size = max_size;
    FinCat::Builder b;
    for (int n = 0; n <= max_size; ++n) {
        site.sets.push_back(FinSet::skeleton(n));
        b.add_object("set" + std::to_string(n), n);
    }
    for (int a = 0; a <= max_size; ++a) {
        for (int bb = 0; bb <= max_size; ++bb) {
            for (auto& p : all_total_injections(site.sets[a], site.sets[bb])) {
                bool iso = p.is_bijection();
                int id = b.add_morphism(p.encoding(), a, bb, true, iso);
                site.arrow_index_[std::to_string(a) + "|" + std::to_string(bb) + "|" +
                                  p.encoding()] = id;
                if (a == bb && p.is_identity()) b.set_identity(a, id);
                site.injections.push_back(std::move(p));
            }
        }
    }
    auto maps = std::make_shared<std::vector<PartialMap>>(site.injections);
    auto index = std::make_shared<std::map<std::string, int>>(site.arrow_index_);
    b.set_composer([maps, index](const FinCat& cat, int g, int f) -> int {
        auto comp = compose_partial((*maps)[g], (*maps)[f]);
        auto it = index->find(std::to_string(cat.src(f)) + "|" + std::to_string(cat.dst(g)) +
                              "|" + comp.encoding());
        return it == index->end() ? -1 : it->second;
    });
    site.cat = std::make_shared<const FinCat>(b.build());
    return site;
}

}  // namespace dendron
