#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fincat.hpp"
#include "json_fwd.hpp"
#include "presheaf.hpp"

namespace dendron {

struct AxiomVerdict {
    bool pass = true;
    std::string witness;  // first failure, when any
};

struct ReedyAxiomReport {
    AxiomVerdict table;          // composition table consistency
    AxiomVerdict degree;         // axiom: degree monotone along the classes
    AxiomVerdict factorization;  // axiom: existence + uniqueness up to iso
    AxiomVerdict iso;            // axiom: intersection and degree-preserving maps
    AxiomVerdict rigidity;       // axiom: no nontrivial stabilizing isos
    bool all() const {
        return table.pass && degree.pass && factorization.pass && iso.pass &&
               rigidity.pass;
    }
    nlohmann::json to_json() const;
};

ReedyAxiomReport check_reedy_axioms(const FinCat& cat);

struct LatchingResult {
    std::vector<std::string> elems;   // canonical class names
    std::vector<int> map_to_value;    // class -> element of X(r)
    bool map_injective = true;
};

// Colimit of X over the properly negative morphisms out of r, with its
// canonical comparison map into X(r).
LatchingResult latching_object(const Presheaf& x, int r);

struct MatchingResult {
    std::vector<PresheafMap> families;  // natural families on the sieve
    std::vector<int> comparison;        // X(r) -> family index
    bool comparison_injective = true;
    bool comparison_surjective = true;
};

// Limit of X over the boundary sieve of r (morphisms factoring through a
// properly positive morphism). When positions is given it must be a sieve of
// such morphisms (closed under precomposition); the limit is then taken over
// that sieve only.
MatchingResult matching_object(const Presheaf& x, int r,
                               const std::optional<std::vector<int>>& positions =
                                   std::nullopt);

// The boundary sieve of the representable at r: morphisms into r factoring
// through some properly positive morphism.
SubPresheaf boundary_sieve(const Presheaf& repr, int r);
// Saturation of a set of morphisms into r under precomposition.
std::vector<int> sieve_closure(const FinCat& cat, int r, std::vector<int> generators);
bool is_sieve(const FinCat& cat, int r, const std::vector<int>& members);

struct NormalityReport {
    bool objectwise_injective = true;
    bool free_action = true;
    std::string witness;
    bool is_normal() const { return objectwise_injective && free_action; }
};

// Checks that f is a normal monomorphism: objectwise injective with a free
// automorphism action on the complement of the latching part. The index
// category must satisfy the section / absolute-pushout hypotheses; this is
// verified first and reported as an error otherwise.
NormalityReport is_normal_mono(const PresheafMap& f);
NormalityReport is_normal_object(const Presheaf& x);

struct PushoutWitness {
    bool absolute = false;
    int cocone_object = -1;
    int q1 = -1, q2 = -1;          // cocone legs
    int section1 = -1, section2 = -1;  // sections of the span legs, if found
    std::string detail;
};

// Decides whether the span g1: r -> s, g2: r -> t of negative morphisms has
// an absolute pushout in the tabulated category: a cocone preserved by every
// corepresentable, which by density is preservation by every functor. The
// verdict is exact for the truncation it runs in.
PushoutWitness has_absolute_pushout(const FinCat& cat, int g1, int g2);

// Section + absolute-pushout hypotheses for normality, cached per call.
struct HypothesesReport {
    bool sections = true;
    bool pushouts = true;
    std::string witness;
    bool ok() const { return sections && pushouts; }
};
HypothesesReport check_normality_hypotheses(const FinCat& cat);

}  // namespace dendron
