#include "dendron/groupoid.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>

namespace dendron {

using nlohmann::json;

Groupoid::Groupoid(FinCat cat) : cat_(std::make_shared<const FinCat>(std::move(cat))) {
    for (int f = 0; f < cat_->num_morphisms(); ++f)
        if (!cat_->is_iso(f))
            throw InvalidInput("groupoid arrow is not invertible: " +
                               cat_->morphism(f).name);
}

std::string Groupoid::validate() const {
    std::string err = cat_->validate();
    if (!err.empty()) return err;
    for (int f = 0; f < cat_->num_morphisms(); ++f)
        if (!cat_->is_iso(f))
            return "arrow is not invertible: " + cat_->morphism(f).name;
    return "";
}

std::vector<int> Groupoid::component_representatives() const {
    UnionFind uf(cat_->num_objects());
    for (int f = 0; f < cat_->num_morphisms(); ++f)
        uf.unite(cat_->src(f), cat_->dst(f));
    std::vector<int> reps;
    for (int o = 0; o < cat_->num_objects(); ++o)
        if (uf.find(o) == static_cast<std::size_t>(o)) reps.push_back(o);
    return reps;
}

long long Groupoid::automorphism_count(int obj) const {
    return static_cast<long long>(cat_->hom(obj, obj).size());
}

json Groupoid::to_json() const {
    json j;
    json objs = json::array();
    for (int o = 0; o < cat_->num_objects(); ++o) objs.push_back(cat_->object(o).name);
    j["objects"] = objs;
    json arrows = json::array();
    for (int f = 0; f < cat_->num_morphisms(); ++f)
        arrows.push_back({{"name", cat_->morphism(f).name},
                          {"src", cat_->object(cat_->src(f)).name},
                          {"dst", cat_->object(cat_->dst(f)).name}});
    j["arrows"] = arrows;
    return j;
}

std::string Groupoid::to_dot() const {
    std::string out = "digraph groupoid {\n";
    for (int o = 0; o < cat_->num_objects(); ++o)
        out += "  \"" + cat_->object(o).name + "\";\n";
    for (int f = 0; f < cat_->num_morphisms(); ++f) {
        if (f == cat_->identity(cat_->src(f))) continue;
        out += "  \"" + cat_->object(cat_->src(f)).name + "\" -> \"" +
               cat_->object(cat_->dst(f)).name + "\" [label=\"" +
               cat_->morphism(f).name + "\"];\n";
    }
    out += "}\n";
    return out;
}

std::vector<int> TruncatedNerve::face(int k, int i, const std::vector<int>& simplex) const {
    const FinCat& c = groupoid->cat();
    if (k == 1) return {i == 0 ? c.dst(simplex[0]) : c.src(simplex[0])};
    std::vector<int> out;
    if (i == 0) {
        out.assign(simplex.begin() + 1, simplex.end());
    } else if (i == k) {
        out.assign(simplex.begin(), simplex.end() - 1);
    } else {
        out.assign(simplex.begin(), simplex.end());
        int composed = c.compose(out[i], out[i - 1]);
        out[i - 1] = composed;
        out.erase(out.begin() + i);
    }
    return out;
}

std::vector<int> TruncatedNerve::degeneracy(int k, int i,
                                            const std::vector<int>& simplex) const {
    const FinCat& c = groupoid->cat();
    std::vector<int> out;
    if (k == 0) {
        out = {c.identity(simplex[0])};
        return out;
    }
    out = simplex;
    int obj = (i == 0) ? c.src(simplex[0]) : c.dst(simplex[i - 1]);
    out.insert(out.begin() + i, c.identity(obj));
    return out;
}

TruncatedNerve nerve_truncate(const Groupoid& g, int degree) {
    TruncatedNerve nerve;
    nerve.groupoid = &g;
    nerve.degree = degree;
    nerve.simplices.resize(degree + 1);
    const FinCat& c = g.cat();
    for (int o = 0; o < c.num_objects(); ++o) nerve.simplices[0].push_back({o});
    if (degree >= 1)
        for (int f = 0; f < c.num_morphisms(); ++f) nerve.simplices[1].push_back({f});
    for (int k = 2; k <= degree; ++k) {
        for (const auto& prev : nerve.simplices[k - 1]) {
            int end = c.dst(prev.back());
            for (int f : c.morphisms_out_of(end)) {
                auto next = prev;
                next.push_back(f);
                nerve.simplices[k].push_back(std::move(next));
            }
        }
    }
    return nerve;
}

SimplicialIdentityReport check_simplicial_identities(const TruncatedNerve& nerve) {
    SimplicialIdentityReport report;
    for (int k = 2; k <= nerve.degree; ++k) {
        for (const auto& s : nerve.simplices[k]) {
            for (int j = 1; j <= k; ++j) {
                for (int i = 0; i < j; ++i) {
                    auto lhs = nerve.face(k - 1, i, nerve.face(k, j, s));
                    auto rhs = nerve.face(k - 1, j - 1, nerve.face(k, i, s));
                    if (lhs != rhs) {
                        report.pass = false;
                        report.witness = "d_" + std::to_string(i) + " d_" +
                                         std::to_string(j) + " != d_" +
                                         std::to_string(j - 1) + " d_" +
                                         std::to_string(i) + " at degree " +
                                         std::to_string(k);
                        return report;
                    }
                }
            }
        }
    }
    // s then d round-trips: d_i s_i = id = d_{i+1} s_i
    for (int k = 0; k < nerve.degree; ++k) {
        for (const auto& s : nerve.simplices[k]) {
            for (int i = 0; i <= k; ++i) {
                auto up = nerve.degeneracy(k, i, s);
                if (nerve.face(k + 1, i, up) != s || nerve.face(k + 1, i + 1, up) != s) {
                    report.pass = false;
                    report.witness = "degeneracy/face relation fails at degree " +
                                     std::to_string(k);
                    return report;
                }
            }
        }
    }
    return report;
}

}  // namespace dendron
