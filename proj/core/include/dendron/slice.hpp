#pragma once

#include <map>
#include <string>
#include <vector>

#include "groupoid.hpp"
#include "json_fwd.hpp"
#include "presheaf.hpp"
#include "tree.hpp"

namespace dendron {

// An assignment of a corolla arity to each leaf of a base tree.
using ArityFunction = std::map<std::string, int>;

std::string arity_encoding(const ArityFunction& arities);

// The tree obtained by grafting a corolla of arity n onto each leaf (arity 0
// caps the leaf); new edges are named "<leaf>#<i>".
Tree attach_corollas(const Tree& base, const ArityFunction& arities);
// The inclusion of the base into the attached tree.
TreeMorphism attachment_inclusion(const Tree& base, const ArityFunction& arities);

// The groupoid of corolla attachments: objects are arity functions with
// values <= arity_bound, arrows are isomorphisms under the base tree, so the
// automorphism group of an object is the product of symmetric groups.
Groupoid attachment_groupoid(const Tree& base, int arity_bound);
long long attachment_object_count(const Tree& base, int arity_bound);

// Contravariant functoriality: restrict an attachment on the target of alpha
// to an attachment on its source (each source leaf receives the total leaf
// count sitting above its image in the attached tree).
ArityFunction attachment_restrict(const TreeMorphism& alpha, const ArityFunction& arities);

// The induced morphism attach(S, restricted) -> attach(T, arities) over alpha.
TreeMorphism attachment_morphism(const TreeMorphism& alpha, const ArityFunction& arities);

// The covariant slice presheaf of a labelled family sigma: U -> X(eta):
// elements at T are isomorphism classes of (arity function, element of X at
// the attached tree, labelling of the new leaves by U) compatible with sigma.
struct SliceConstruction {
    DendroidalValuation presheaf;
    // projection to X: restrict along the attachment inclusion
    std::function<std::string(const Tree&, const std::string&)> project;
    // canonical lift of a label u: the unary attachment with the degenerate
    // element over sigma(u)
    std::function<std::string(const std::string&)> lift;
};

SliceConstruction slice_construction(const std::vector<std::string>& labels,
                                     const std::map<std::string, std::string>& sigma,
                                     const DendroidalValuation& x, int arity_bound);

}  // namespace dendron
