#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "json_fwd.hpp"
#include "presheaf.hpp"
#include "tree.hpp"

namespace dendron {

// A coloured symmetric operad in finite sets, tabulated up to an arity bound.
// Composition and the symmetric action are supplied per instance; entries may
// be undefined (-1) beyond the tabulated range.
class Operad {
public:
    struct Op {
        std::string name;
        std::vector<std::string> inputs;
        std::string output;
        int arity() const { return static_cast<int>(inputs.size()); }
    };

    Operad() = default;
    Operad(std::string name, std::vector<std::string> colours, std::vector<Op> ops,
           std::map<std::string, int> units,
           std::function<int(const Operad&, int, const std::vector<int>&)> gamma,
           std::function<int(const Operad&, int, const std::vector<int>&)> reorder);

    const std::string& name() const { return name_; }
    const std::vector<std::string>& colours() const { return colours_; }
    int num_operations() const { return static_cast<int>(ops_.size()); }
    const Op& operation(int i) const { return ops_[i]; }
    int op_by_name(const std::string& n) const;
    const std::vector<int>& ops_with_profile(const std::vector<std::string>& inputs,
                                             const std::string& output) const;
    std::vector<int> ops_with_output(const std::string& output, int arity) const;
    int max_arity() const { return max_arity_; }

    int unit(const std::string& colour) const;
    // gamma(op; args): full operadic composition; -1 when outside the table.
    int gamma(int op, const std::vector<int>& args) const;
    // The right symmetric action: the k-th input of the result is the
    // perm[k]-th input of op (0-indexed).
    int reorder(int op, const std::vector<int>& perm) const;

    // Unit laws, associativity and equivariance on in-bound composites;
    // returns "" or the first failure.
    std::string validate(int composite_budget = 200000) const;

    struct SigmaFreeness {
        bool is_free = true;
        std::string witness;
    };
    SigmaFreeness sigma_freeness() const;

    nlohmann::json to_json(int table_arity_cap = 3) const;

private:
    std::string name_;
    std::vector<std::string> colours_;
    std::vector<Op> ops_;
    std::map<std::string, int> op_index_;
    std::map<std::string, std::vector<int>> profile_index_;
    std::map<std::string, int> units_;
    std::function<int(const Operad&, int, const std::vector<int>&)> gamma_;
    std::function<int(const Operad&, int, const std::vector<int>&)> reorder_;
    int max_arity_ = 0;

    static std::string profile_key(const std::vector<std::string>& inputs,
                                   const std::string& output);
};

// The free coloured operad of a tree: colours are the edges, operations are
// subtrees with an ordered leaf cut, composition is grafting.
Operad tree_operad(const Tree& t);

// The associative operad: one colour, operations of arity n >= 1 are the
// orderings of n factors. Sigma-free.
Operad ass_operad(int max_arity);
// The commutative operad: one operation per arity n >= 1. Not Sigma-free for
// n >= 2.
Operad com_operad(int max_arity);
// One colour, the unit operation only.
Operad trivial_operad();

Operad operad_from_json(const nlohmann::json& j);

// An algebra over an operad; multiplication may be partial (-1) when a
// truncation cannot host the product.
class Algebra {
public:
    Algebra() = default;
    Algebra(std::shared_ptr<const Operad> op,
            std::map<std::string, std::vector<std::string>> carrier,
            std::function<int(const Algebra&, int, const std::vector<int>&)> mult);

    const Operad& operad() const { return *operad_; }
    std::shared_ptr<const Operad> operad_ptr() const { return operad_; }
    const std::vector<std::string>& carrier(const std::string& colour) const;
    int carrier_index(const std::string& colour, const std::string& elem) const;
    int mult(int op, const std::vector<int>& args) const;
    // unit laws plus equivariance of the multiplication in bound
    std::string validate(int budget = 100000) const;

private:
    std::shared_ptr<const Operad> operad_;
    std::map<std::string, std::vector<std::string>> carrier_;
    std::function<int(const Algebra&, int, const std::vector<int>&)> mult_;
};

// The free algebra on a finite generator set, truncated by term size. Element
// names are canonical orbit representatives "op(g1,...,gn)". Multiplications
// exceeding the truncation are undefined; requesting one through `mult`
// yields -1, and `free_algebra` itself throws when the generators alone
// exceed the bound.
Algebra free_algebra(std::shared_ptr<const Operad> op,
                     const std::vector<std::pair<std::string, std::string>>& generators,
                     int size_bound);
Algebra terminal_algebra(std::shared_ptr<const Operad> op);
// Z/2 with addition, as an algebra over the one-colour associative operad.
Algebra parity_algebra(std::shared_ptr<const Operad> ass);

// Dendroidal nerve: value at T is the set of operad maps out of the free
// operad of T, i.e. edge colourings plus vertex operations.
DendroidalValuation nerve_valuation(std::shared_ptr<const Operad> op);
Presheaf dendroidal_nerve(const Operad& op, const OmegaSite& site);

// The covariant presheaf of an algebra over the nerve, with its projection.
struct GValuation {
    DendroidalValuation presheaf;
    // projection to the nerve: element name at T -> nerve element name at T
    std::function<std::string(const Tree&, const std::string&)> project;
};
GValuation g_valuation(std::shared_ptr<const Operad> op, std::shared_ptr<const Algebra> alg);

// Two computations of the algebra presheaf at one tree: the local route
// (labelling every edge, checking each vertex) and the pullback route (a
// nerve element plus a leaf labelling whose evaluation is defined). The
// canonical comparison must be a bijection.
// The canonical element over a nerve element x of the free algebra on the
// leaves of the tree: leaves carry their own generators, every other edge the
// evaluation of its maximal generator subtree. Its projection is x, which is
// the well-definedness this data is tested for.
struct FreeUnitData {
    Algebra algebra;                 // free on one generator per leaf
    std::string element;             // element of the algebra presheaf at the tree
    bool projects_to_nerve = false;  // projection equals the given nerve element
};
FreeUnitData free_algebra_unit(std::shared_ptr<const Operad> op, const Tree& t,
                               const std::string& nerve_elem, int size_bound);

struct GRouteComparison {
    std::vector<std::string> local_route;
    std::vector<std::string> pullback_route;
    bool agree = true;
    std::string witness;
};
GRouteComparison compare_g_routes(const Operad& op, const Algebra& alg, const Tree& t);

struct CovariantVerdict {
    bool pass = true;
    bool base_segal_checked = false;
    std::string witness;
};

// Strict covariant-fibration check at corollas of arity 0..max_arity: the
// square formed by leaf restrictions must be a strict pullback of sets.
CovariantVerdict check_strict_covariant_fibration(
    const DendroidalValuation& total, const DendroidalValuation& base,
    const std::function<std::string(const Tree&, const std::string&)>& project,
    int max_arity);

}  // namespace dendron
