#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fincat.hpp"
#include "json_fwd.hpp"

namespace dendron {

// A set-valued presheaf on a tabulated category, stored as explicit value
// sets together with one transition function per morphism. For a morphism
// f: r -> s the action maps X(s) to X(r).
class Presheaf {
public:
    Presheaf() = default;
    Presheaf(std::shared_ptr<const FinCat> cat,
             std::vector<std::vector<std::string>> values,
             std::vector<std::vector<int>> actions);

    const FinCat& cat() const { return *cat_; }
    std::shared_ptr<const FinCat> cat_ptr() const { return cat_; }
    int size(int obj) const { return static_cast<int>(values_[obj].size()); }
    const std::vector<std::string>& value_names(int obj) const { return values_[obj]; }
    const std::string& elem_name(int obj, int i) const { return values_[obj][i]; }
    int elem_index(int obj, const std::string& name) const;
    // action of morphism f on the element with index i of X(dst(f))
    int act(int mor, int i) const { return actions_[mor][i]; }
    const std::vector<int>& action(int mor) const { return actions_[mor]; }

    // "" when every identity acts as identity and actions respect composition.
    std::string check_functorial() const;

    nlohmann::json to_json() const;

private:
    std::shared_ptr<const FinCat> cat_;
    std::vector<std::vector<std::string>> values_;
    std::vector<std::vector<int>> actions_;
};

// A natural map of presheaves over the same index category.
struct PresheafMap {
    const Presheaf* domain = nullptr;
    const Presheaf* codomain = nullptr;
    std::vector<std::vector<int>> component;  // per object: X(o) -> Y(o)

    bool is_natural() const;
    bool objectwise_injective() const;
    bool objectwise_surjective() const;
    bool objectwise_bijective() const {
        return objectwise_injective() && objectwise_surjective();
    }
    std::string encoding() const;
};

PresheafMap identity_map(const Presheaf& x);
PresheafMap compose_maps(const PresheafMap& g, const PresheafMap& f);

// A subpresheaf given by a per-object subset, closed under all actions.
struct SubPresheaf {
    const Presheaf* ambient = nullptr;
    std::vector<std::vector<char>> selected;  // per object, per element

    bool closed_under_actions() const;
    int count(int obj) const;
    bool subset_of(const SubPresheaf& other) const;
};

SubPresheaf full_subpresheaf(const Presheaf& x);
SubPresheaf empty_subpresheaf(const Presheaf& x);

// The representable presheaf R(-, r): value at s is hom(s, r), action is
// precomposition.
Presheaf representable(std::shared_ptr<const FinCat> cat, int r);

// Coproduct of presheaves on the same index, element names tagged by part.
Presheaf coproduct(const std::vector<const Presheaf*>& parts);

// Terminal presheaf (singleton everywhere).
Presheaf terminal_presheaf(std::shared_ptr<const FinCat> cat);

// The natural map repr(-, r) -> X classifying an element of X(r).
PresheafMap yoneda_map(const Presheaf& repr, int r, const Presheaf& x, int elem);

// Materializes a subpresheaf as a presheaf together with its inclusion into
// the ambient one. The selection must be closed under the actions.
struct MaterializedSub {
    Presheaf presheaf;
    std::vector<std::vector<int>> include;  // per object: sub elem -> ambient elem
};
MaterializedSub materialize(const SubPresheaf& sub);

// --- natural-transformation / lifting solver --------------------------------

struct HomSearchOptions {
    // forced[(obj, elem)] = codomain element; -1 means free.
    std::vector<std::vector<int>> forced;
    // admissible[(obj, elem)] = candidate codomain elements; empty means all.
    std::vector<std::vector<std::vector<int>>> admissible;
    long long max_solutions = -1;  // -1: enumerate all
};

// All natural maps from the subpresheaf `dom` into `target`, in lexicographic
// order of their component tables. The solver backtracks over elements with
// eager propagation along every action.
std::vector<PresheafMap> enumerate_presheaf_maps(const SubPresheaf& dom,
                                                 const Presheaf& target,
                                                 const HomSearchOptions* opts = nullptr);
std::vector<PresheafMap> enumerate_presheaf_maps(const Presheaf& dom,
                                                 const Presheaf& target);

struct LiftResult {
    bool found = false;
    PresheafMap diagonal;
    long long nodes_explored = 0;
    std::string note;  // exhaustion summary when not found
};

// Diagonal filler for a commuting square f: A -> X, g: B -> Y over i: A -> B
// and p: X -> Y: returns h: B -> X with h∘i = f and p∘h = g when one exists.
LiftResult solve_lifting(const PresheafMap& i, const PresheafMap& p, const PresheafMap& f,
                         const PresheafMap& g);

// --- tree-category specific presheaf constructions --------------------------

// On-demand dendroidal presheaf: values at arbitrary trees plus contravariant
// actions along arbitrary tree morphisms. Element names are canonical.
struct DendroidalValuation {
    std::function<std::vector<std::string>(const Tree&)> values;
    // action of alpha: S -> T as a map element-of-X(T) -> element-of-X(S)
    std::function<std::string(const TreeMorphism&, const std::string&)> act;
};

DendroidalValuation representable_valuation(const Tree& t, int edge_limit = 12);
DendroidalValuation terminal_valuation();

// Tabulates a valuation over every tree of the site.
Presheaf tabulate(const DendroidalValuation& v, const OmegaSite& site);

enum class TreeSubobject { Boundary, Horn, SegalCore };

// The boundary, inner horn, or Segal core of a representable over the site.
// `ambient` must be representable(site, T). For horns, `horn_edge` names an
// inner edge of T.
SubPresheaf tree_subobject(const OmegaSite& site, int tree_obj, const Presheaf& ambient,
                           TreeSubobject kind, const std::string& horn_edge = "");

struct SegalReport {
    bool is_strict_segal = true;
    std::vector<std::string> failures;  // per-tree diagnostics
    std::string bounds_note;
};

// X(T) -> Nat(Sc[T], X) bijective for every tree of the site.
SegalReport check_strict_segal(const Presheaf& x, const OmegaSite& site);

// --- leaf-functor adjunction -------------------------------------------------

// Precomposition with the leaf functor: a presheaf on the gamma site pulled
// back to a dendroidal presheaf on the omega site.
Presheaf lambda_star(const Presheaf& gamma_presheaf, const GammaSite& gsite,
                     const OmegaSite& osite);

// Left Kan extension along the leaf functor, computed as the set-level coend
// over the omega site.
Presheaf lambda_shriek(const Presheaf& dendroidal, const OmegaSite& osite,
                       const GammaSite& gsite);

struct AdjunctionReport {
    bool hom_bijection = true;
    bool triangles = true;
    std::size_t hom_count_left = 0;   // |Hom(lambda_! X, Y)|
    std::size_t hom_count_right = 0;  // |Hom(X, lambda* Y)|
    std::string detail;
};

// Checks Hom(lambda_! X, Y) ≅ Hom(X, lambda* Y) via the explicit transpose
// maps, plus the unit/counit triangle identities on X and Y.
AdjunctionReport check_lambda_adjunction(const Presheaf& x, const Presheaf& y,
                                         const OmegaSite& osite, const GammaSite& gsite);

}  // namespace dendron
