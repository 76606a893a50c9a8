#include "dendron/finset.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>

namespace dendron {

using nlohmann::json;

FinSet FinSet::skeleton(int n) {
    if (n < 0) throw InvalidInput("skeleton size must be non-negative");
    std::vector<std::string> elems;
    for (int i = 1; i <= n; ++i) elems.push_back(std::to_string(i));
    return FinSet(std::move(elems));
}

bool FinSet::contains(const std::string& x) const {
    return std::binary_search(elems_.begin(), elems_.end(), x);
}

FinSet FinSet::disjoint_union(const FinSet& other, const std::string& left_tag,
                              const std::string& right_tag) const {
    std::vector<std::string> elems;
    for (const auto& e : elems_) elems.push_back(left_tag + e);
    for (const auto& e : other.elems_) elems.push_back(right_tag + e);
    return FinSet(std::move(elems));
}

FinSet FinSet::product(const FinSet& other) const {
    std::vector<std::string> elems;
    for (const auto& a : elems_)
        for (const auto& b : other.elems_) elems.push_back("(" + a + "," + b + ")");
    return FinSet(std::move(elems));
}

json FinSet::to_json() const { return json(elems_); }

PartialMap::PartialMap(FinSet source, FinSet target, std::map<std::string, std::string> map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
    for (const auto& [k, v] : map_) {
        if (!source_.contains(k)) throw InvalidInput("map defined outside source: " + k);
        if (!target_.contains(v)) throw InvalidInput("map hits outside target: " + v);
    }
}

PartialMap PartialMap::identity(const FinSet& a) {
    std::map<std::string, std::string> m;
    for (const auto& e : a.elements()) m[e] = e;
    return PartialMap(a, a, std::move(m));
}

PartialMap PartialMap::nowhere_defined(const FinSet& a, const FinSet& b) {
    return PartialMap(a, b, {});
}

std::optional<std::string> PartialMap::apply(const std::string& x) const {
    auto it = map_.find(x);
    if (it == map_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::string> PartialMap::domain() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : map_) out.push_back(k);
    return out;
}

std::vector<std::string> PartialMap::image() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : map_) out.push_back(v);
    return sorted_unique(std::move(out));
}

bool PartialMap::is_injective() const {
    auto img = image();
    return img.size() == map_.size();
}

bool PartialMap::is_surjective() const {
    return static_cast<int>(image().size()) == target_.size();
}

bool PartialMap::is_identity() const {
    if (!(source_ == target_) || !is_total()) return false;
    for (const auto& [k, v] : map_)
        if (k != v) return false;
    return true;
}

std::string PartialMap::encoding() const {
    std::vector<std::string> parts;
    for (const auto& [k, v] : map_) parts.push_back(k + ">" + v);
    return join(parts, ";");
}

bool PartialMap::operator==(const PartialMap& o) const {
    return source_ == o.source_ && target_ == o.target_ && map_ == o.map_;
}

json PartialMap::to_json() const {
    json j;
    j["source"] = source_.to_json();
    j["target"] = target_.to_json();
    j["map"] = map_;
    return j;
}

PartialMap PartialMap::from_json(const json& j) {
    FinSet src(j.at("source").get<std::vector<std::string>>());
    FinSet tgt(j.at("target").get<std::vector<std::string>>());
    std::map<std::string, std::string> m;
    if (j.contains("map")) m = j.at("map").get<std::map<std::string, std::string>>();
    return PartialMap(src, tgt, std::move(m));
}

PartialMap compose_partial(const PartialMap& g, const PartialMap& f) {
    if (!(f.target() == g.source()))
        throw InvalidInput("partial maps are not composable: endpoints mismatch");
    std::map<std::string, std::string> m;
    for (const auto& [k, v] : f.mapping()) {
        if (auto w = g.apply(v)) m[k] = *w;
    }
    return PartialMap(f.source(), g.target(), std::move(m));
}

std::vector<PartialMap> all_partial_maps(const FinSet& a, const FinSet& b) {
    std::vector<PartialMap> out;
    const auto& src = a.elements();
    const int n = a.size();
    // each source element picks a target element or "undefined"
    std::vector<int> choice(n, -1);
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            std::map<std::string, std::string> m;
            for (int k = 0; k < n; ++k)
                if (choice[k] >= 0) m[src[k]] = b.elements()[choice[k]];
            out.emplace_back(a, b, std::move(m));
            return;
        }
        choice[i] = -1;
        rec(i + 1);
        for (int t = 0; t < b.size(); ++t) {
            choice[i] = t;
            rec(i + 1);
        }
        choice[i] = -1;
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<PartialMap> all_total_injections(const FinSet& a, const FinSet& b) {
    std::vector<PartialMap> out;
    for (const auto& f : all_partial_maps(a, b))
        if (f.is_total() && f.is_injective()) out.push_back(f);
    return out;
}

std::vector<PartialMap> all_bijections(const FinSet& a, const FinSet& b) {
    std::vector<PartialMap> out;
    if (a.size() != b.size()) return out;
    for (const auto& f : all_total_injections(a, b))
        if (f.is_surjective()) out.push_back(f);
    return out;
}

GammaFactorization reedy_factorize_gamma(const PartialMap& f) {
    FinSet img(f.image());
    std::map<std::string, std::string> surj = f.mapping();
    std::map<std::string, std::string> inj;
    for (const auto& e : img.elements()) inj[e] = e;
    GammaFactorization out;
    out.surjection = PartialMap(f.source(), img, std::move(surj));
    out.injection = PartialMap(img, f.target(), std::move(inj));
    out.dual_positive = f.is_surjective();
    out.dual_negative = f.is_total() && f.is_injective();
    return out;
}

PartialMap leaf_functor(const TreeMorphism& alpha) {
    const Tree& S = alpha.source();
    const Tree& T = alpha.target();
    FinSet lt(T.leaves()), ls(S.leaves());
    // image edge -> source leaf, for leaves of S
    std::map<std::string, std::string> leaf_image;
    for (const auto& d : S.leaves()) {
        auto [it, fresh] = leaf_image.emplace(alpha.apply(d), d);
        if (!fresh)
            throw InvalidInput("two source leaves share an image edge");
    }
    std::map<std::string, std::string> m;
    for (const auto& e : T.leaves()) {
        std::optional<std::string> hit;
        for (const auto& x : T.path_to_root(e)) {
            auto it = leaf_image.find(x);
            if (it != leaf_image.end()) {
                if (hit) throw InvalidInput("leaf path meets two images; invalid morphism");
                hit = it->second;
            }
        }
        if (hit) m[e] = *hit;
    }
    return PartialMap(lt, ls, std::move(m));
}

PartialMap inv_functor(const PartialMap& m) {
    if (!m.is_total() || !m.is_injective())
        throw InvalidInput("inv expects a total injection");
    std::map<std::string, std::string> inv;
    for (const auto& [k, v] : m.mapping()) inv[v] = k;
    return PartialMap(m.target(), m.source(), std::move(inv));
}

}  // namespace dendron
