#pragma once

#include <functional>
#include <unordered_map>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "finset.hpp"
#include "json_fwd.hpp"
#include "tree.hpp"

namespace dendron {

// A finite category tabulated with a degree function and positive/negative
// class flags per morphism. Composition is supplied by the builder; identity
// morphisms are always present.
class FinCat {
public:
    struct Obj {
        std::string name;
        int degree = 0;
    };
    struct Mor {
        std::string name;
        int src = -1;
        int dst = -1;
        bool plus = false;
        bool minus = false;
    };

    int num_objects() const { return static_cast<int>(objects_.size()); }
    int num_morphisms() const { return static_cast<int>(mors_.size()); }
    const Obj& object(int o) const { return objects_[o]; }
    const Mor& morphism(int f) const { return mors_[f]; }
    int degree(int o) const { return objects_[o].degree; }
    int src(int f) const { return mors_[f].src; }
    int dst(int f) const { return mors_[f].dst; }
    int identity(int o) const { return identity_[o]; }
    const std::vector<int>& hom(int s, int t) const { return hom_[s][t]; }
    const std::vector<int>& morphisms_into(int t) const { return into_[t]; }
    const std::vector<int>& morphisms_out_of(int s) const { return out_[s]; }

    // g after f; throws when endpoints mismatch. Backed by a table
    // materialized at construction, so lookups are cheap and const.
    int compose(int g, int f) const;

    bool is_iso(int f) const { return inverse_[f] >= 0; }
    int inverse_of(int f) const { return inverse_[f]; }
    bool in_plus(int f) const { return mors_[f].plus; }
    bool in_minus(int f) const { return mors_[f].minus; }
    bool properly_plus(int f) const { return mors_[f].plus && !is_iso(f); }
    bool properly_minus(int f) const { return mors_[f].minus && !is_iso(f); }
    std::vector<int> automorphism_group(int o) const;  // iso endos of o

    int object_by_name(const std::string& name) const;
    int morphism_by_name(int s, int t, const std::string& name) const;

    // Structural validation: identities neutral, composition closed, classes
    // closed under composition, associativity (exhaustive up to the budget,
    // deterministically strided beyond it). Returns "" on success.
    std::string validate(long long assoc_budget = 2'000'000) const;

    nlohmann::json to_json() const;
    static FinCat from_json(const nlohmann::json& j);

    // Copy with one morphism's Reedy classes overridden; used by the
    // mutation fixtures.
    FinCat reclassify(int mor, bool plus, bool minus) const;

    // Builder interface ------------------------------------------------------
    class Builder {
    public:
        int add_object(const std::string& name, int degree);
        int add_morphism(const std::string& name, int src, int dst, bool plus, bool minus);
        void set_identity(int obj, int mor);
        // compose(g, f) -> morphism id
        void set_composer(std::function<int(const FinCat&, int, int)> fn);
        // Eager table alternative: record g∘f = h.
        void record_composite(int g, int f, int h);
        FinCat build();

    private:
        std::vector<Obj> objects_;
        std::vector<Mor> mors_;
        std::vector<int> identity_;
        std::map<std::pair<int, int>, int> table_;
        std::function<int(const FinCat&, int, int)> composer_;
    };

private:
    std::vector<Obj> objects_;
    std::vector<Mor> mors_;
    std::vector<int> identity_;
    std::vector<std::vector<std::vector<int>>> hom_;
    std::vector<std::vector<int>> into_, out_;
    std::vector<int> inverse_;
    // composition table over composable pairs, keyed g * num_morphisms + f
    std::shared_ptr<const std::unordered_map<long long, int>> table_;

    void index_homs();
    void materialize_table(const std::function<int(const FinCat&, int, int)>& composer);
    void compute_inverses();
};

// The tree category truncated to canonical trees with bounded vertex and edge
// counts; degree = vertex count, positive = injective on edges, negative =
// surjective on edges.
struct OmegaSite {
    std::shared_ptr<const FinCat> cat;
    std::vector<Tree> trees;            // aligned with objects
    std::vector<TreeMorphism> arrows;   // aligned with morphisms
    int max_vertices = 0;
    int max_edges = 0;

    int tree_id(const Tree& t) const;  // by canonical encoding; -1 if absent
    int arrow_id(int s, int t, const TreeMorphism& f) const;

private:
    friend OmegaSite make_omega_site(int, int);
    std::map<std::string, int> tree_index_;
    std::map<std::string, int> arrow_index_;  // "s|t|encoding"
};

OmegaSite make_omega_site(int max_vertices, int max_edges);

// Segal's category Γ truncated to skeleta 0..n. A morphism A -> B is stored as
// its underlying partial map skeleton(B) ⇸ skeleton(A); negative = duals of
// total injections, positive = duals of (possibly partial) surjections.
struct GammaSite {
    std::shared_ptr<const FinCat> cat;
    std::vector<FinSet> sets;
    std::vector<PartialMap> maps;  // underlying partial map of each morphism
    int max_size = 0;

    int object_of_size(int n) const { return n; }
    int arrow_id(int s, int t, const PartialMap& p) const;

private:
    friend GammaSite make_gamma_site(int);
    std::map<std::string, int> arrow_index_;
};

GammaSite make_gamma_site(int max_size);

// Finite sets and total injections, truncated; every morphism is positive and
// only isomorphisms are negative.
struct MSite {
    std::shared_ptr<const FinCat> cat;
    std::vector<FinSet> sets;
    std::vector<PartialMap> injections;
    int max_size = 0;

    int arrow_id(int s, int t, const PartialMap& p) const;

private:
    friend MSite make_m_site(int);
    std::map<std::string, int> arrow_index_;
};

MSite make_m_site(int max_size);

}  // namespace dendron
