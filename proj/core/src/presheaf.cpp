#include "dendron/presheaf.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <mutex>
#include <functional>
#include <set>
#include <sstream>

namespace dendron {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Presheaf
// ---------------------------------------------------------------------------

Presheaf::Presheaf(std::shared_ptr<const FinCat> cat,
                   std::vector<std::vector<std::string>> values,
                   std::vector<std::vector<int>> actions)
    : cat_(std::move(cat)), values_(std::move(values)), actions_(std::move(actions)) {
    if (static_cast<int>(values_.size()) != cat_->num_objects())
        throw InvalidInput("presheaf values do not match object count");
    if (static_cast<int>(actions_.size()) != cat_->num_morphisms())
        throw InvalidInput("presheaf actions do not match morphism count");
    for (int f = 0; f < cat_->num_morphisms(); ++f) {
        if (static_cast<int>(actions_[f].size()) != size(cat_->dst(f)))
            throw InvalidInput("action table has wrong arity at " +
                               cat_->morphism(f).name);
        for (int v : actions_[f])
            if (v < 0 || v >= size(cat_->src(f)))
                throw InvalidInput("action lands outside value set at " +
                                   cat_->morphism(f).name);
    }
}

int Presheaf::elem_index(int obj, const std::string& name) const {
    const auto& vals = values_[obj];
    auto it = std::find(vals.begin(), vals.end(), name);
    if (it == vals.end()) return -1;
    return static_cast<int>(it - vals.begin());
}

std::string Presheaf::check_functorial() const {
    const FinCat& c = *cat_;
    for (int o = 0; o < c.num_objects(); ++o) {
        int id = c.identity(o);
        for (int i = 0; i < size(o); ++i)
            if (act(id, i) != i)
                return "identity does not act as identity at " + c.object(o).name;
    }
    for (int f = 0; f < c.num_morphisms(); ++f) {
        for (int g : c.morphisms_out_of(c.dst(f))) {
            int gf = c.compose(g, f);
            for (int i = 0; i < size(c.dst(g)); ++i)
                if (act(gf, i) != act(f, act(g, i)))
                    return "composition not respected at (" + c.morphism(g).name + ", " +
                           c.morphism(f).name + ")";
        }
    }
    return "";
}

json Presheaf::to_json() const {
    json j;
    json vals = json::object();
    for (int o = 0; o < cat_->num_objects(); ++o)
        vals[cat_->object(o).name] = values_[o];
    j["values"] = vals;
    json acts = json::object();
    for (int f = 0; f < cat_->num_morphisms(); ++f) {
        json entry = json::object();
        for (int i = 0; i < size(cat_->dst(f)); ++i)
            entry[values_[cat_->dst(f)][i]] = values_[cat_->src(f)][act(f, i)];
        acts[cat_->object(cat_->src(f)).name + "|" + cat_->object(cat_->dst(f)).name +
             "|" + cat_->morphism(f).name] = entry;
    }
    j["actions"] = acts;
    return j;
}

// ---------------------------------------------------------------------------
// PresheafMap / SubPresheaf
// ---------------------------------------------------------------------------

bool PresheafMap::is_natural() const {
    const FinCat& c = domain->cat();
    for (int f = 0; f < c.num_morphisms(); ++f) {
        int s = c.src(f), t = c.dst(f);
        for (int i = 0; i < domain->size(t); ++i)
            if (component[s][domain->act(f, i)] != codomain->act(f, component[t][i]))
                return false;
    }
    return true;
}

bool PresheafMap::objectwise_injective() const {
    for (std::size_t o = 0; o < component.size(); ++o) {
        std::set<int> seen;
        for (int v : component[o])
            if (!seen.insert(v).second) return false;
    }
    return true;
}

bool PresheafMap::objectwise_surjective() const {
    for (int o = 0; o < domain->cat().num_objects(); ++o) {
        std::set<int> seen(component[o].begin(), component[o].end());
        if (static_cast<int>(seen.size()) != codomain->size(o)) return false;
    }
    return true;
}

std::string PresheafMap::encoding() const {
    std::vector<std::string> parts;
    for (int o = 0; o < domain->cat().num_objects(); ++o) {
        std::vector<std::string> entries;
        for (int i = 0; i < domain->size(o); ++i)
            entries.push_back(domain->elem_name(o, i) + ">" +
                              codomain->elem_name(o, component[o][i]));
        parts.push_back(domain->cat().object(o).name + "{" + join(entries, ",") + "}");
    }
    return join(parts, ";");
}

PresheafMap identity_map(const Presheaf& x) {
    PresheafMap m;
    m.domain = &x;
    m.codomain = &x;
    m.component.resize(x.cat().num_objects());
    for (int o = 0; o < x.cat().num_objects(); ++o) {
        m.component[o].resize(x.size(o));
        for (int i = 0; i < x.size(o); ++i) m.component[o][i] = i;
    }
    return m;
}

PresheafMap compose_maps(const PresheafMap& g, const PresheafMap& f) {
    if (f.codomain != g.domain) throw InvalidInput("presheaf maps are not composable");
    PresheafMap m;
    m.domain = f.domain;
    m.codomain = g.codomain;
    m.component.resize(f.component.size());
    for (std::size_t o = 0; o < f.component.size(); ++o) {
        m.component[o].resize(f.component[o].size());
        for (std::size_t i = 0; i < f.component[o].size(); ++i)
            m.component[o][i] = g.component[o][f.component[o][i]];
    }
    return m;
}

bool SubPresheaf::closed_under_actions() const {
    const FinCat& c = ambient->cat();
    for (int f = 0; f < c.num_morphisms(); ++f) {
        int s = c.src(f), t = c.dst(f);
        for (int i = 0; i < ambient->size(t); ++i)
            if (selected[t][i] && !selected[s][ambient->act(f, i)]) return false;
    }
    return true;
}

int SubPresheaf::count(int obj) const {
    int n = 0;
    for (char c : selected[obj]) n += (c != 0);
    return n;
}

bool SubPresheaf::subset_of(const SubPresheaf& other) const {
    for (std::size_t o = 0; o < selected.size(); ++o)
        for (std::size_t i = 0; i < selected[o].size(); ++i)
            if (selected[o][i] && !other.selected[o][i]) return false;
    return true;
}

SubPresheaf full_subpresheaf(const Presheaf& x) {
    SubPresheaf s;
    s.ambient = &x;
    s.selected.resize(x.cat().num_objects());
    for (int o = 0; o < x.cat().num_objects(); ++o) s.selected[o].assign(x.size(o), 1);
    return s;
}

SubPresheaf empty_subpresheaf(const Presheaf& x) {
    SubPresheaf s;
    s.ambient = &x;
    s.selected.resize(x.cat().num_objects());
    for (int o = 0; o < x.cat().num_objects(); ++o) s.selected[o].assign(x.size(o), 0);
    return s;
}

// ---------------------------------------------------------------------------
// Basic constructions
// ---------------------------------------------------------------------------

Presheaf representable(std::shared_ptr<const FinCat> cat, int r) {
    const FinCat& c = *cat;
    std::vector<std::vector<std::string>> values(c.num_objects());
    std::vector<std::vector<int>> mor_at(c.num_objects());
    for (int o = 0; o < c.num_objects(); ++o) {
        mor_at[o] = c.hom(o, r);
        for (int f : mor_at[o]) values[o].push_back(c.morphism(f).name);
        auto sorted = values[o];
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw InvalidInput("representable needs distinct morphism names per hom set");
    }
    std::vector<std::vector<int>> actions(c.num_morphisms());
    for (int m = 0; m < c.num_morphisms(); ++m) {
        int s = c.src(m), t = c.dst(m);
        actions[m].resize(mor_at[t].size());
        for (std::size_t i = 0; i < mor_at[t].size(); ++i) {
            int composed = c.compose(mor_at[t][i], m);
            auto it = std::find(mor_at[s].begin(), mor_at[s].end(), composed);
            if (it == mor_at[s].end())
                throw InvalidInput("representable action left the hom set");
            actions[m][i] = static_cast<int>(it - mor_at[s].begin());
        }
    }
    return Presheaf(cat, std::move(values), std::move(actions));
}

Presheaf coproduct(const std::vector<const Presheaf*>& parts) {
    if (parts.empty()) throw InvalidInput("coproduct needs at least one part");
    auto cat = parts[0]->cat_ptr();
    const FinCat& c = *cat;
    std::vector<std::vector<std::string>> values(c.num_objects());
    std::vector<std::vector<int>> offsets(parts.size(),
                                          std::vector<int>(c.num_objects(), 0));
    for (int o = 0; o < c.num_objects(); ++o) {
        for (std::size_t k = 0; k < parts.size(); ++k) {
            offsets[k][o] = static_cast<int>(values[o].size());
            for (int i = 0; i < parts[k]->size(o); ++i)
                values[o].push_back(std::to_string(k) + ":" + parts[k]->elem_name(o, i));
        }
    }
    std::vector<std::vector<int>> actions(c.num_morphisms());
    for (int m = 0; m < c.num_morphisms(); ++m) {
        int t = c.dst(m);
        actions[m].reserve(values[t].size());
        for (std::size_t k = 0; k < parts.size(); ++k)
            for (int i = 0; i < parts[k]->size(t); ++i)
                actions[m].push_back(offsets[k][c.src(m)] + parts[k]->act(m, i));
    }
    return Presheaf(cat, std::move(values), std::move(actions));
}

Presheaf terminal_presheaf(std::shared_ptr<const FinCat> cat) {
    const FinCat& c = *cat;
    std::vector<std::vector<std::string>> values(c.num_objects(), {"*"});
    std::vector<std::vector<int>> actions(c.num_morphisms(), {0});
    return Presheaf(cat, std::move(values), std::move(actions));
}

MaterializedSub materialize(const SubPresheaf& sub) {
    if (!sub.closed_under_actions())
        throw InvalidInput("selection is not closed under the actions");
    const Presheaf& amb = *sub.ambient;
    const FinCat& c = amb.cat();
    MaterializedSub out;
    out.include.resize(c.num_objects());
    std::vector<std::vector<int>> back(c.num_objects());
    std::vector<std::vector<std::string>> values(c.num_objects());
    for (int o = 0; o < c.num_objects(); ++o) {
        back[o].assign(amb.size(o), -1);
        for (int i = 0; i < amb.size(o); ++i) {
            if (!sub.selected[o][i]) continue;
            back[o][i] = static_cast<int>(values[o].size());
            out.include[o].push_back(i);
            values[o].push_back(amb.elem_name(o, i));
        }
    }
    std::vector<std::vector<int>> actions(c.num_morphisms());
    for (int m = 0; m < c.num_morphisms(); ++m) {
        int s = c.src(m), t = c.dst(m);
        for (int i : out.include[t]) actions[m].push_back(back[s][amb.act(m, i)]);
    }
    out.presheaf = Presheaf(amb.cat_ptr(), std::move(values), std::move(actions));
    return out;
}

PresheafMap yoneda_map(const Presheaf& repr, int r, const Presheaf& x, int elem) {
    const FinCat& c = repr.cat();
    PresheafMap m;
    m.domain = &repr;
    m.codomain = &x;
    m.component.resize(c.num_objects());
    for (int o = 0; o < c.num_objects(); ++o) {
        m.component[o].resize(repr.size(o));
        for (int i = 0; i < repr.size(o); ++i) {
            int mor = c.morphism_by_name(o, r, repr.elem_name(o, i));
            if (mor < 0) throw InvalidInput("representable element is not a morphism");
            m.component[o][i] = x.act(mor, elem);
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Natural-transformation solver
// ---------------------------------------------------------------------------

namespace {

struct Solver {
    const SubPresheaf& dom;
    const Presheaf& target;
    const FinCat& cat;
    std::vector<std::vector<int>> var_id;   // (obj, elem) -> var or -1
    std::vector<std::pair<int, int>> vars;  // var -> (obj, elem)
    std::vector<int> value;                 // var -> assigned value or -1
    std::vector<std::vector<int>> candidates;
    std::vector<std::vector<int>> into;  // per object: morphisms with dst == obj
    long long nodes = 0;

    Solver(const SubPresheaf& d, const Presheaf& t)
        : dom(d), target(t), cat(d.ambient->cat()) {
        var_id.resize(cat.num_objects());
        for (int o = 0; o < cat.num_objects(); ++o) {
            var_id[o].assign(dom.ambient->size(o), -1);
            for (int i = 0; i < dom.ambient->size(o); ++i) {
                if (!dom.selected[o][i]) continue;
                var_id[o][i] = static_cast<int>(vars.size());
                vars.emplace_back(o, i);
            }
        }
        value.assign(vars.size(), -1);
        candidates.resize(vars.size());
        into.resize(cat.num_objects());
        for (int o = 0; o < cat.num_objects(); ++o) into[o] = cat.morphisms_into(o);
    }

    bool assign(int var, int val, std::vector<int>& trail) {
        std::deque<std::pair<int, int>> queue = {{var, val}};
        while (!queue.empty()) {
            auto [v, x] = queue.front();
            queue.pop_front();
            if (value[v] == x) continue;
            if (value[v] >= 0) return false;
            value[v] = x;
            trail.push_back(v);
            auto [o, i] = vars[v];
            for (int f : into[o]) {
                int s = cat.src(f);
                int j = dom.ambient->act(f, i);
                int w = var_id[s][j];
                if (w < 0) return false;  // domain not closed under actions
                queue.emplace_back(w, target.act(f, x));
            }
        }
        return true;
    }

    void undo(std::vector<int>& trail, std::size_t mark) {
        while (trail.size() > mark) {
            value[trail.back()] = -1;
            trail.pop_back();
        }
    }

    void search(std::size_t next, std::vector<int>& trail, std::vector<PresheafMap>& out,
                long long max_solutions) {
        if (max_solutions >= 0 && static_cast<long long>(out.size()) >= max_solutions)
            return;
        while (next < vars.size() && value[next] >= 0) ++next;
        if (next == vars.size()) {
            PresheafMap m;
            m.domain = dom.ambient;
            m.codomain = &target;
            m.component.resize(cat.num_objects());
            for (int o = 0; o < cat.num_objects(); ++o) {
                m.component[o].assign(dom.ambient->size(o), 0);
                for (int i = 0; i < dom.ambient->size(o); ++i)
                    if (var_id[o][i] >= 0) m.component[o][i] = value[var_id[o][i]];
            }
            out.push_back(std::move(m));
            return;
        }
        for (int cand : candidates[next]) {
            ++nodes;
            std::size_t mark = trail.size();
            if (assign(static_cast<int>(next), cand, trail)) {
                search(next + 1, trail, out, max_solutions);
                if (max_solutions >= 0 &&
                    static_cast<long long>(out.size()) >= max_solutions) {
                    undo(trail, mark);
                    return;
                }
            }
            undo(trail, mark);
        }
    }
};

}  // namespace

std::vector<PresheafMap> enumerate_presheaf_maps(const SubPresheaf& dom,
                                                 const Presheaf& target,
                                                 const HomSearchOptions* opts) {
    Solver solver(dom, target);
    std::vector<int> trail;
    for (std::size_t v = 0; v < solver.vars.size(); ++v) {
        auto [o, i] = solver.vars[v];
        if (opts && !opts->admissible.empty() && !opts->admissible[o][i].empty()) {
            solver.candidates[v] = opts->admissible[o][i];
        } else {
            solver.candidates[v].resize(target.size(o));
            for (int x = 0; x < target.size(o); ++x) solver.candidates[v][x] = x;
        }
    }
    if (opts && !opts->forced.empty()) {
        for (std::size_t v = 0; v < solver.vars.size(); ++v) {
            auto [o, i] = solver.vars[v];
            int f = opts->forced[o][i];
            if (f >= 0 && !solver.assign(static_cast<int>(v), f, trail)) return {};
        }
    }
    std::vector<PresheafMap> out;
    solver.search(0, trail, out,
                  opts && opts->max_solutions >= 0 ? opts->max_solutions : -1);
    std::sort(out.begin(), out.end(), [](const PresheafMap& a, const PresheafMap& b) {
        return a.component < b.component;
    });
    return out;
}

std::vector<PresheafMap> enumerate_presheaf_maps(const Presheaf& dom,
                                                 const Presheaf& target) {
    auto full = full_subpresheaf(dom);
    return enumerate_presheaf_maps(full, target);
}

LiftResult solve_lifting(const PresheafMap& i, const PresheafMap& p, const PresheafMap& f,
                         const PresheafMap& g) {
    const Presheaf& A = *i.domain;
    const Presheaf& B = *i.codomain;
    const Presheaf& X = *p.domain;
    const Presheaf& Y = *p.codomain;
    if (f.domain != &A || f.codomain != &X || g.domain != &B || g.codomain != &Y)
        throw InvalidInput("lifting square endpoints mismatch");
    for (int o = 0; o < A.cat().num_objects(); ++o)
        for (int a = 0; a < A.size(o); ++a)
            if (p.component[o][f.component[o][a]] != g.component[o][i.component[o][a]])
                throw InvalidInput("lifting square does not commute");

    HomSearchOptions opts;
    opts.max_solutions = 1;
    opts.forced.resize(B.cat().num_objects());
    opts.admissible.resize(B.cat().num_objects());
    for (int o = 0; o < B.cat().num_objects(); ++o) {
        opts.forced[o].assign(B.size(o), -1);
        opts.admissible[o].resize(B.size(o));
        for (int b = 0; b < B.size(o); ++b) {
            for (int x = 0; x < X.size(o); ++x)
                if (p.component[o][x] == g.component[o][b])
                    opts.admissible[o][b].push_back(x);
            if (opts.admissible[o][b].empty()) {
                LiftResult r;
                r.note = "no fibre candidate over " + B.elem_name(o, b) + " at " +
                         B.cat().object(o).name;
                return r;
            }
        }
        for (int a = 0; a < A.size(o); ++a) {
            int b = i.component[o][a];
            int want = f.component[o][a];
            if (opts.forced[o][b] >= 0 && opts.forced[o][b] != want) {
                LiftResult r;
                r.note = "incompatible forced values along the top map";
                return r;
            }
            opts.forced[o][b] = want;
        }
    }
    auto full = full_subpresheaf(B);
    auto sols = enumerate_presheaf_maps(full, X, &opts);
    LiftResult r;
    if (!sols.empty()) {
        r.found = true;
        r.diagonal = sols.front();
    } else {
        r.note = "search exhausted without a filler";
    }
    return r;
}

// ---------------------------------------------------------------------------
// Dendroidal valuations
// ---------------------------------------------------------------------------

DendroidalValuation representable_valuation(const Tree& t, int edge_limit) {
    auto target = std::make_shared<Tree>(t);
    struct Cache {
        std::mutex guard;
        std::map<std::string, std::map<std::string, TreeMorphism>> homs;
    };
    auto cache = std::make_shared<Cache>();
    auto lookup = [target, cache, edge_limit](
                      const Tree& s) -> const std::map<std::string, TreeMorphism>& {
        std::string key = s.to_json().dump();
        std::lock_guard<std::mutex> lock(cache->guard);
        auto it = cache->homs.find(key);
        if (it == cache->homs.end()) {
            std::map<std::string, TreeMorphism> homs;
            for (auto& h : enumerate_homs(s, *target, edge_limit))
                homs.emplace(h.encoding(), std::move(h));
            it = cache->homs.emplace(key, std::move(homs)).first;
        }
        return it->second;
    };
    DendroidalValuation v;
    v.values = [lookup](const Tree& s) {
        std::vector<std::string> names;
        for (const auto& [enc, h] : lookup(s)) names.push_back(enc);
        return names;
    };
    v.act = [lookup](const TreeMorphism& alpha, const std::string& elem) {
        const auto& homs = lookup(alpha.target());
        auto it = homs.find(elem);
        if (it == homs.end()) throw InvalidInput("unknown element in valuation action");
        return compose(it->second, alpha).encoding();
    };
    return v;
}

DendroidalValuation terminal_valuation() {
    DendroidalValuation v;
    v.values = [](const Tree&) { return std::vector<std::string>{"*"}; };
    v.act = [](const TreeMorphism&, const std::string&) { return std::string("*"); };
    return v;
}

Presheaf tabulate(const DendroidalValuation& v, const OmegaSite& site) {
    const FinCat& c = *site.cat;
    std::vector<std::vector<std::string>> values(c.num_objects());
    for (int o = 0; o < c.num_objects(); ++o) {
        values[o] = v.values(site.trees[o]);
        auto sorted = values[o];
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw InvalidInput("valuation returned duplicate element names");
    }
    std::vector<std::vector<int>> actions(c.num_morphisms());
    for (int m = 0; m < c.num_morphisms(); ++m) {
        int s = c.src(m), t = c.dst(m);
        actions[m].resize(values[t].size());
        for (std::size_t i = 0; i < values[t].size(); ++i) {
            std::string moved = v.act(site.arrows[m], values[t][i]);
            auto it = std::find(values[s].begin(), values[s].end(), moved);
            if (it == values[s].end())
                throw InvalidInput("valuation action produced an unknown element");
            actions[m][i] = static_cast<int>(it - values[s].begin());
        }
    }
    return Presheaf(site.cat, std::move(values), std::move(actions));
}

// ---------------------------------------------------------------------------
// Boundaries, horns, Segal cores
// ---------------------------------------------------------------------------

namespace {

bool factors_through_face(const TreeMorphism& sigma, const TreeMorphism& face) {
    std::set<std::string> face_image;
    for (const auto& [k, v] : face.edge_map()) face_image.insert(v);
    for (const auto& [k, v] : sigma.edge_map())
        if (!face_image.count(v)) return false;
    return validate_morphism(sigma.source(), face.source(), sigma.edge_map()).ok();
}

}  // namespace

SubPresheaf tree_subobject(const OmegaSite& site, int tree_obj, const Presheaf& ambient,
                           TreeSubobject kind, const std::string& horn_edge) {
    const Tree& t = site.trees[tree_obj];
    SubPresheaf sub = empty_subpresheaf(ambient);

    std::vector<TreeMorphism> faces;
    if (kind == TreeSubobject::Boundary || kind == TreeSubobject::Horn) {
        faces = elementary_faces(t);
        if (kind == TreeSubobject::Horn) {
            if (!t.is_inner_edge(horn_edge))
                throw InvalidInput("horn edge must be an inner edge: " + horn_edge);
            std::vector<TreeMorphism> kept;
            for (auto& f : faces) {
                bool is_contraction_of_e =
                    f.source().edge_count() == t.edge_count() - 1 &&
                    !f.source().has_edge(horn_edge);
                if (!is_contraction_of_e) kept.push_back(std::move(f));
            }
            faces = std::move(kept);
        }
    } else {
        for (const auto& b : t.vertices()) {
            auto kids = t.children(b);
            std::vector<std::string> edges = {b};
            std::map<std::string, std::string> parent;
            std::vector<std::string> caps;
            for (const auto& k : kids) {
                edges.push_back(k);
                parent[k] = b;
            }
            if (t.is_capped(b)) caps.push_back(b);
            Tree corolla_sub = Tree::from_parts(edges, b, parent, caps);
            std::map<std::string, std::string> m;
            for (const auto& e : corolla_sub.edge_names()) m[e] = e;
            faces.emplace_back(corolla_sub, t, std::move(m));
        }
        for (const auto& e : t.edge_names()) {
            Tree eta = Tree::from_parts({e}, e, {}, {});
            faces.emplace_back(eta, t, std::map<std::string, std::string>{{e, e}});
        }
    }

    for (int o = 0; o < ambient.cat().num_objects(); ++o) {
        for (int i = 0; i < ambient.size(o); ++i) {
            int mor = site.cat->morphism_by_name(o, tree_obj, ambient.elem_name(o, i));
            if (mor < 0) throw InvalidInput("ambient is not the expected representable");
            const TreeMorphism& sigma = site.arrows[mor];
            bool in = false;
            for (const auto& f : faces)
                if (factors_through_face(sigma, f)) {
                    in = true;
                    break;
                }
            sub.selected[o][i] = in ? 1 : 0;
        }
    }
    return sub;
}

SegalReport check_strict_segal(const Presheaf& x, const OmegaSite& site) {
    SegalReport report;
    report.bounds_note = "trees with <= " + std::to_string(site.max_vertices) +
                         " vertices and <= " + std::to_string(site.max_edges) + " edges";
    for (int o = 0; o < site.cat->num_objects(); ++o) {
        Presheaf repr = representable(site.cat, o);
        SubPresheaf core = tree_subobject(site, o, repr, TreeSubobject::SegalCore);
        auto maps = enumerate_presheaf_maps(core, x);
        std::set<std::string> images;
        bool injective = true;
        for (int i = 0; i < x.size(o); ++i) {
            // restriction of the Yoneda image of element i to the core
            std::ostringstream os;
            for (int s = 0; s < site.cat->num_objects(); ++s) {
                for (int k = 0; k < repr.size(s); ++k) {
                    if (!core.selected[s][k]) continue;
                    int mor = site.cat->morphism_by_name(s, o, repr.elem_name(s, k));
                    os << s << "." << k << "=" << x.act(mor, i) << ";";
                }
            }
            if (!images.insert(os.str()).second) injective = false;
        }
        bool surjective = images.size() == maps.size();
        if (!injective || !surjective) {
            report.is_strict_segal = false;
            report.failures.push_back(site.cat->object(o).name +
                                      ": X(T)=" + std::to_string(x.size(o)) +
                                      " vs Nat(Sc[T],X)=" + std::to_string(maps.size()) +
                                      (injective ? "" : " (not injective)"));
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Leaf-functor adjunction
// ---------------------------------------------------------------------------

namespace {

PartialMap leaf_skeleton_bijection(const Tree& t) {
    auto lv = t.leaves();
    FinSet dom(lv), cod = FinSet::skeleton(static_cast<int>(lv.size()));
    std::map<std::string, std::string> m;
    for (std::size_t i = 0; i < lv.size(); ++i) m[lv[i]] = std::to_string(i + 1);
    return PartialMap(dom, cod, std::move(m));
}

// Arrows generating the site under composition: isomorphisms together with
// the canonicalized elementary faces and degeneracies.
std::vector<int> generating_arrows(const OmegaSite& site) {
    std::vector<int> out;
    const FinCat& c = *site.cat;
    for (int m = 0; m < c.num_morphisms(); ++m)
        if (c.is_iso(m)) out.push_back(m);
    for (int o = 0; o < c.num_objects(); ++o) {
        const Tree& t = site.trees[o];
        for (const auto& face : elementary_faces(t)) {
            auto canon = canonical_form(face.source());
            int s = site.tree_id(canon.tree);
            if (s < 0) continue;
            std::map<std::string, std::string> comp;
            for (const auto& [orig, can] : canon.relabel) comp[can] = face.apply(orig);
            auto r = validate_morphism(canon.tree, t, comp);
            if (!r.ok()) throw InvalidInput("canonicalized face failed to validate");
            int id = site.arrow_id(s, o, *r.morphism);
            if (id >= 0) out.push_back(id);
        }
        for (const auto& degen : elementary_degeneracies(t)) {
            auto canon = canonical_form(degen.target());
            int d = site.tree_id(canon.tree);
            if (d < 0) continue;
            std::map<std::string, std::string> comp;
            for (const auto& e : t.edge_names()) comp[e] = canon.relabel.at(degen.apply(e));
            auto r = validate_morphism(t, canon.tree, comp);
            if (!r.ok()) throw InvalidInput("canonicalized degeneracy failed to validate");
            int id = site.arrow_id(o, d, *r.morphism);
            if (id >= 0) out.push_back(id);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// The set-level coend computing the left Kan extension along the leaf
// functor: classes of pairs (x in X(T), psi: leaves(T) ⇸ A) under
// (alpha^* x, psi) ~ (x, psi ∘ lambda(alpha)).
struct LanData {
    std::vector<std::vector<std::string>> values;   // per gamma object
    std::vector<std::map<std::string, int>> class_of;
};

std::string lan_node_key(int tree_obj, int elem, const PartialMap& psi) {
    return std::to_string(tree_obj) + "|" + std::to_string(elem) + "|" + psi.encoding();
}

LanData lan_extension(const Presheaf& x, const OmegaSite& osite, const GammaSite& gsite) {
    const FinCat& oc = *osite.cat;
    LanData out;
    out.values.resize(gsite.max_size + 1);
    out.class_of.resize(gsite.max_size + 1);
    std::vector<int> gens = generating_arrows(osite);

    for (int a = 0; a <= gsite.max_size; ++a) {
        const FinSet& A = gsite.sets[a];
        std::vector<std::string> keys;
        std::map<std::string, int> node_index;
        std::vector<std::vector<std::vector<int>>> node_at(oc.num_objects());
        std::vector<std::vector<PartialMap>> psis(oc.num_objects());
        for (int o = 0; o < oc.num_objects(); ++o) {
            FinSet leaves(osite.trees[o].leaves());
            psis[o] = all_partial_maps(leaves, A);
            node_at[o].resize(psis[o].size());
            for (std::size_t pi = 0; pi < psis[o].size(); ++pi) {
                node_at[o][pi].resize(x.size(o));
                for (int i = 0; i < x.size(o); ++i) {
                    std::string key = lan_node_key(o, i, psis[o][pi]);
                    node_index[key] = static_cast<int>(keys.size());
                    node_at[o][pi][i] = static_cast<int>(keys.size());
                    keys.push_back(key);
                }
            }
        }
        UnionFind uf(keys.size());
        for (int m : gens) {
            const TreeMorphism& alpha = osite.arrows[m];
            int s = oc.src(m), t = oc.dst(m);
            PartialMap lam = leaf_functor(alpha);  // leaves(T) ⇸ leaves(S)
            if (x.size(t) == 0) continue;
            for (std::size_t pi = 0; pi < psis[s].size(); ++pi) {
                PartialMap psi_t = compose_partial(psis[s][pi], lam);
                // nodes for (t, i, psi_t) are consecutive in i
                int right_base = node_index.at(lan_node_key(t, 0, psi_t));
                for (int i = 0; i < x.size(t); ++i)
                    uf.unite(node_at[s][pi][x.act(m, i)], right_base + i);
            }
        }
        std::map<std::size_t, std::string> root_name;
        for (std::size_t n = 0; n < keys.size(); ++n) {
            std::size_t r = uf.find(n);
            auto it = root_name.find(r);
            if (it == root_name.end() || keys[n] < it->second) root_name[r] = keys[n];
        }
        std::vector<std::string> names;
        for (const auto& [r, nm] : root_name) names.push_back(nm);
        std::sort(names.begin(), names.end());
        std::map<std::string, int> name_pos;
        for (std::size_t i = 0; i < names.size(); ++i)
            name_pos[names[i]] = static_cast<int>(i);
        out.values[a] = names;
        for (std::size_t n = 0; n < keys.size(); ++n)
            out.class_of[a][keys[n]] = name_pos.at(root_name.at(uf.find(n)));
    }
    return out;
}

struct LanRep {
    int tree_obj = 0;
    int elem = 0;
    PartialMap psi;
};

LanRep parse_lan_key(const std::string& key, const OmegaSite& osite,
                     const GammaSite& gsite, int a) {
    LanRep rep;
    auto p1 = key.find('|');
    auto p2 = key.find('|', p1 + 1);
    rep.tree_obj = std::stoi(key.substr(0, p1));
    rep.elem = std::stoi(key.substr(p1 + 1, p2 - p1 - 1));
    std::string enc = key.substr(p2 + 1);
    FinSet leaves(osite.trees[rep.tree_obj].leaves());
    std::map<std::string, std::string> mp;
    if (!enc.empty()) {
        std::stringstream ss(enc);
        std::string item;
        while (std::getline(ss, item, ';')) {
            auto gt = item.find('>');
            mp[item.substr(0, gt)] = item.substr(gt + 1);
        }
    }
    rep.psi = PartialMap(leaves, gsite.sets[a], mp);
    return rep;
}

}  // namespace

Presheaf lambda_star(const Presheaf& gp, const GammaSite& gsite, const OmegaSite& osite) {
    const FinCat& oc = *osite.cat;
    std::vector<std::vector<std::string>> values(oc.num_objects());
    for (int o = 0; o < oc.num_objects(); ++o) {
        int n = static_cast<int>(osite.trees[o].leaves().size());
        if (n > gsite.max_size)
            throw BoundExceeded("leaf set exceeds the finite-set truncation");
        values[o] = gp.value_names(n);
    }
    std::vector<std::vector<int>> actions(oc.num_morphisms());
    for (int m = 0; m < oc.num_morphisms(); ++m) {
        const TreeMorphism& alpha = osite.arrows[m];
        int ns = static_cast<int>(alpha.source().leaves().size());
        int nt = static_cast<int>(alpha.target().leaves().size());
        PartialMap lam = leaf_functor(alpha);
        PartialMap skel = compose_partial(
            leaf_skeleton_bijection(alpha.source()),
            compose_partial(lam, inv_functor(leaf_skeleton_bijection(alpha.target()))));
        int gamma_mor = gsite.arrow_id(ns, nt, skel);
        if (gamma_mor < 0) throw InvalidInput("leaf map missing from the gamma site");
        actions[m] = gp.action(gamma_mor);
    }
    return Presheaf(osite.cat, std::move(values), std::move(actions));
}

Presheaf lambda_shriek(const Presheaf& x, const OmegaSite& osite, const GammaSite& gsite) {
    LanData lan = lan_extension(x, osite, gsite);
    const FinCat& gc = *gsite.cat;

    std::vector<std::vector<LanRep>> reps(gsite.max_size + 1);
    for (int a = 0; a <= gsite.max_size; ++a)
        for (const auto& key : lan.values[a])
            reps[a].push_back(parse_lan_key(key, osite, gsite, a));

    std::vector<std::vector<int>> actions(gc.num_morphisms());
    for (int m = 0; m < gc.num_morphisms(); ++m) {
        int s = gc.src(m), t = gc.dst(m);
        const PartialMap& phi = gsite.maps[m];  // skeleton(t) ⇸ skeleton(s)
        actions[m].resize(lan.values[t].size());
        for (std::size_t i = 0; i < lan.values[t].size(); ++i) {
            const LanRep& rep = reps[t][i];
            PartialMap moved = compose_partial(phi, rep.psi);
            actions[m][i] =
                lan.class_of[s].at(lan_node_key(rep.tree_obj, rep.elem, moved));
        }
    }
    std::vector<std::vector<std::string>> values = lan.values;
    return Presheaf(gsite.cat, std::move(values), std::move(actions));
}

AdjunctionReport check_lambda_adjunction(const Presheaf& x, const Presheaf& y,
                                         const OmegaSite& osite, const GammaSite& gsite) {
    AdjunctionReport report;
    LanData lan = lan_extension(x, osite, gsite);
    Presheaf lx = lambda_shriek(x, osite, gsite);
    Presheaf ry = lambda_star(y, gsite, osite);

    auto left = enumerate_presheaf_maps(lx, y);
    auto right = enumerate_presheaf_maps(x, ry);
    report.hom_count_left = left.size();
    report.hom_count_right = right.size();

    // forward transpose: g |-> lambda*(g) ∘ unit
    auto forward = [&](const PresheafMap& g) {
        PresheafMap tr;
        tr.domain = &x;
        tr.codomain = &ry;
        tr.component.resize(osite.cat->num_objects());
        for (int o = 0; o < osite.cat->num_objects(); ++o) {
            int n = static_cast<int>(osite.trees[o].leaves().size());
            tr.component[o].resize(x.size(o));
            PartialMap skel = leaf_skeleton_bijection(osite.trees[o]);
            for (int i = 0; i < x.size(o); ++i) {
                int cls = lan.class_of[n].at(lan_node_key(o, i, skel));
                tr.component[o][i] = g.component[n][cls];
            }
        }
        return tr;
    };
    // backward transpose: h |-> counit ∘ lambda_!(h)
    auto backward = [&](const PresheafMap& h) {
        PresheafMap tr;
        tr.domain = &lx;
        tr.codomain = &y;
        tr.component.resize(gsite.cat->num_objects());
        for (int a = 0; a <= gsite.max_size; ++a) {
            tr.component[a].resize(lx.size(a));
            for (int i = 0; i < lx.size(a); ++i) {
                LanRep rep = parse_lan_key(lx.elem_name(a, i), osite, gsite, a);
                int n = static_cast<int>(osite.trees[rep.tree_obj].leaves().size());
                PartialMap skel_psi = compose_partial(
                    rep.psi, inv_functor(leaf_skeleton_bijection(osite.trees[rep.tree_obj])));
                int mor = gsite.arrow_id(a, n, skel_psi);
                if (mor < 0) throw InvalidInput("counit leaf map missing from gamma site");
                tr.component[a][i] = y.act(mor, h.component[rep.tree_obj][rep.elem]);
            }
        }
        return tr;
    };

    std::set<std::string> right_set;
    for (const auto& r : right) right_set.insert(r.encoding());
    std::set<std::string> forwarded;
    bool roundtrips = true;
    for (const auto& g : left) {
        auto tr = forward(g);
        if (!tr.is_natural()) {
            report.hom_bijection = false;
            report.detail = "forward transpose is not natural";
        }
        forwarded.insert(tr.encoding());
        auto back = backward(tr);
        if (back.component != g.component) roundtrips = false;
    }
    for (const auto& h : right) {
        auto back = backward(h);
        if (!back.is_natural()) {
            report.hom_bijection = false;
            report.detail = "backward transpose is not natural";
        }
        auto fwd = forward(back);
        if (fwd.component != h.component) roundtrips = false;
    }
    if (forwarded != right_set || forwarded.size() != left.size())
        report.hom_bijection = false;
    report.triangles = roundtrips;
    return report;
}

}  // namespace dendron
