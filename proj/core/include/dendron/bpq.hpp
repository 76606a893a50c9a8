#pragma once

#include <map>
#include <string>
#include <vector>

#include "finset.hpp"
#include "fincat.hpp"
#include "groupoid.hpp"
#include "json_fwd.hpp"
#include "presheaf.hpp"

namespace dendron {

// An object of the groupoid of labelled finite sets over A: a total function
// from a skeletal carrier {1..k} to A x L, stored as the list of (point,
// label) pairs in carrier order.
struct SigmaObject {
    int carrier = 0;
    std::vector<std::pair<std::string, std::string>> structure;  // (a, l) per point

    std::string encoding() const;
    // fibre sizes indexed by "(a,l)" keys, zeroes omitted
    std::map<std::string, int> fibre_type() const;
};

std::vector<SigmaObject> enumerate_sigma_objects(const FinSet& a, const FinSet& l,
                                                 int carrier_bound);

// The action of a partial map phi: A ⇸ B on an object over A x L: restrict
// the carrier to the points whose A-component is defined, renumber
// order-preservingly, push the structure forward.
SigmaObject gamma_act_object(const PartialMap& phi, const SigmaObject& obj);

// Fibrewise bijections (f -> g): carrier bijections sigma with g∘sigma = f.
std::vector<std::vector<int>> fibrewise_bijections(const SigmaObject& f,
                                                   const SigmaObject& g);

// Materialized groupoid presentation; intended for small bounds.
Groupoid sigma_groupoid(const FinSet& a, const FinSet& l, int carrier_bound);

struct CensusReport {
    bool pass = true;
    long long iso_classes = 0;
    long long expected_tuples = 0;
    std::string witness;
};

// pi_0 of the labelled groupoid agrees with the truncated tuple count
// C(|AxL| + bound, |AxL|), and fibre types classify components.
CensusReport check_pi0_census(const FinSet& a, const FinSet& l, int carrier_bound);

struct SpecialReport {
    bool essentially_surjective = true;
    bool fully_faithful = true;
    long long pairs_checked = 0;
    std::string witness;
    bool pass() const { return essentially_surjective && fully_faithful; }
};

// The comparison functor from the groupoid over A ⊔ B to the product of the
// groupoids over A and over B, induced by the two inert surjections: checks
// essential surjectivity on carrier-compatible classes and full
// faithfulness. `mutate_action` corrupts the restriction functor to exercise
// the failure reporting.
SpecialReport check_special(const FinSet& a, const FinSet& b, int carrier_bound,
                            bool mutate_action = false);

// The unit object of a partial map phi: L ⇸ A: carrier = dom(phi) renumbered,
// structure point i -> (phi(l_i), l_i).
SigmaObject unit_object(const FinSet& l, const FinSet& a, const PartialMap& phi);

struct UnitReport {
    bool injective = true;
    bool natural = true;
    std::string witness;
    bool pass() const { return injective && natural; }
};

// u is injective on partial maps and natural in A.
UnitReport check_unit_map(const FinSet& l, int max_set_size, int carrier_bound);

struct CofibrancyReport {
    bool free = true;
    long long complement_simplices = 0;
    std::string witness;
};

// The complement of the proper-subset part of the classifying space in
// degrees <= nerve_degree consists of the simplices whose augmentation is
// surjective; the automorphisms of A must act freely on it. The mutated
// variant forgets to remove the proper-subset part and therefore fails.
CofibrancyReport check_bsigma_cofibrant(const FinSet& a, int carrier_bound,
                                        int nerve_degree, bool mutated = false);

// --- finite-set presheaf functors -------------------------------------------

// L*(X)(A) = X(A x L), via the lexicographic identification of A x L with a
// skeleton. dst.max_size * l_size must not exceed src.max_size.
Presheaf l_star(const Presheaf& x, const GammaSite& src, const GammaSite& dst, int l_size);

struct PointedPresheaf {
    Presheaf presheaf;
    std::vector<int> basepoint;  // per object
};

// The representable at 1 with its canonical basepoint (the nowhere-defined
// map), built over the site.
PointedPresheaf f1_pointed(const GammaSite& site);
// F(2,-) and its subfunctor of non-total maps.
Presheaf f2_presheaf(const GammaSite& site);
Presheaf f2_partial_subfunctor(const GammaSite& site);
// wedge of pointed presheaves: disjoint union with basepoints identified
PointedPresheaf wedge(const std::vector<const PointedPresheaf*>& parts);

struct WedgeReport {
    bool pass = true;
    std::string witness;
};
// L* F(1,-) is naturally isomorphic to the |L|-fold wedge of F(1,-).
WedgeReport check_wedge_identity(const GammaSite& src, const GammaSite& dst, int l_size);

struct PushoutReport {
    bool commutes = true;
    bool is_pushout = true;
    std::vector<long long> sizes;  // |F(2, A x L)| per object of dst
    std::string witness;
    bool pass() const { return commutes && is_pushout; }
};
// The strict pushout decomposition of the partial maps from a two-point set
// into A x L, checked pointwise as sets for the given cardinalities.
PushoutReport check_lstar_pushout(int a_size, int l_size);

// --- the injective-category functors ----------------------------------------

// Restriction along partial inverses of injections.
Presheaf inv_star(const Presheaf& x, const GammaSite& gsite, const MSite& msite);

struct InvPowRho {
    Presheaf inv;   // inv^*(X) on the injective site
    Presheaf pow;   // A -> X(1)^A, iterated fibre product over X(empty)
    std::vector<std::vector<int>> rho;  // per object: inv(A) -> pow(A)
    bool natural = true;
    bool rho_injective = true;
    bool rho_isomorphism = true;
};
InvPowRho inv_pow_rho(const Presheaf& x, const GammaSite& gsite, const MSite& msite);

// A strictly special fixture: powers of a finite commutative monoid, with the
// fold maps as the functorial action.
struct FiniteMonoid {
    std::vector<std::string> elements;
    int unit = 0;
    std::vector<std::vector<int>> mult;  // commutative, associative
};
FiniteMonoid z2_monoid();
Presheaf monoid_power_presheaf(const FiniteMonoid& m, const GammaSite& site);

// Collapse of the image of the value at the empty set to a point.
Presheaf reduce_pointed(const Presheaf& x, const GammaSite& site, int basepoint);

// --- the decorated groupoid --------------------------------------------------

struct SigmaFObject {
    SigmaObject base;
    std::string decoration;  // element of F at the carrier
    std::string encoding() const;
};

struct SigmaFResult {
    Groupoid groupoid;
    Groupoid base_groupoid;
    // arrow index in groupoid -> arrow index in base (projection functor)
    std::vector<int> projection;
    bool fibres_discrete = true;
};

// The groupoid of pairs (f: U -> A, x in F(U)) with structure-compatible
// bijections; fibred over the plain groupoid with discrete fibres.
SigmaFResult sigma_f_groupoid(const Presheaf& f, const MSite& msite, const FinSet& a,
                              int carrier_bound);

// The action of a partial map on a decorated object: restrict the carrier,
// renumber, restrict the decoration along the carrier inclusion.
SigmaFObject sigma_f_gamma_act(const Presheaf& f, const MSite& msite,
                               const SigmaFObject& obj, const PartialMap& phi);

// naturality of the projection against a partial map phi: A ⇸ B
bool check_sigma_f_naturality(const Presheaf& f, const MSite& msite, const FinSet& a,
                              const FinSet& b, const PartialMap& phi, int carrier_bound);

// constant singleton presheaf on the injective site, and a presheaf with a
// genuinely nontrivial action (points plus a basepoint, pulled back along
// partial inverses)
Presheaf terminal_m_presheaf(const MSite& msite);
Presheaf pointed_elements_m_presheaf(const MSite& msite);

}  // namespace dendron
