#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json_fwd.hpp"
#include "tree.hpp"
#include "util.hpp"

namespace dendron {

class FinSet {
public:
    FinSet() = default;
    explicit FinSet(std::vector<std::string> elements)
        : elems_(sorted_unique(std::move(elements))) {}
    static FinSet skeleton(int n);  // {"1",...,"n"}

    const std::vector<std::string>& elements() const { return elems_; }
    int size() const { return static_cast<int>(elems_.size()); }
    bool contains(const std::string& x) const;
    bool operator==(const FinSet& o) const { return elems_ == o.elems_; }
    bool operator<(const FinSet& o) const { return elems_ < o.elems_; }

    FinSet disjoint_union(const FinSet& other, const std::string& left_tag = "L:",
                          const std::string& right_tag = "R:") const;
    FinSet product(const FinSet& other) const;  // pairs "(a,b)"

    nlohmann::json to_json() const;

private:
    std::vector<std::string> elems_;
};

// A partial map between finite sets: defined on a subset of the source.
class PartialMap {
public:
    PartialMap() = default;
    PartialMap(FinSet source, FinSet target, std::map<std::string, std::string> map);

    static PartialMap identity(const FinSet& a);
    static PartialMap nowhere_defined(const FinSet& a, const FinSet& b);

    const FinSet& source() const { return source_; }
    const FinSet& target() const { return target_; }
    const std::map<std::string, std::string>& mapping() const { return map_; }
    bool defined_at(const std::string& x) const { return map_.count(x) != 0; }
    std::optional<std::string> apply(const std::string& x) const;
    std::vector<std::string> domain() const;  // sorted
    std::vector<std::string> image() const;   // sorted, duplicate-free

    bool is_total() const { return static_cast<int>(map_.size()) == source_.size(); }
    bool is_injective() const;
    bool is_surjective() const;
    bool is_bijection() const { return is_total() && is_injective() && is_surjective(); }
    // Inert: the preimage of every singleton is a singleton, i.e. the partial
    // inverse of a total injection.
    bool is_inert() const { return is_injective() && is_surjective(); }
    bool is_identity() const;

    std::string encoding() const;  // "a>x;b>y" over the defined set
    bool operator==(const PartialMap& o) const;
    bool operator<(const PartialMap& o) const { return encoding() < o.encoding(); }

    nlohmann::json to_json() const;
    static PartialMap from_json(const nlohmann::json& j);

private:
    FinSet source_, target_;
    std::map<std::string, std::string> map_;
};

// g after f; defined on f^{-1}(defined(g)).
PartialMap compose_partial(const PartialMap& g, const PartialMap& f);

// All partial maps a -> b, deterministic order.
std::vector<PartialMap> all_partial_maps(const FinSet& a, const FinSet& b);
std::vector<PartialMap> all_total_injections(const FinSet& a, const FinSet& b);
std::vector<PartialMap> all_bijections(const FinSet& a, const FinSet& b);

struct GammaFactorization {
    PartialMap surjection;  // partial surjection onto the image
    PartialMap injection;   // total injection of the image into the target
    // Reedy class of the dual morphism of the input map.
    bool dual_positive = false;  // input is a (possibly partial) surjection
    bool dual_negative = false;  // input is a total injection
};

// Factors f = injection ∘ surjection through its image.
GammaFactorization reedy_factorize_gamma(const PartialMap& f);

// The leaf functor on a tree-category morphism alpha: S -> T, as the partial
// map leaves(T) ⇸ leaves(S): e maps to d when the path from e to the root of T
// passes through alpha(d).
PartialMap leaf_functor(const TreeMorphism& alpha);

// Sends a total injection m: B ↪ A to the inert partial map A ⇸ B given by
// the partial inverse.
PartialMap inv_functor(const PartialMap& m);

}  // namespace dendron
