#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fincat.hpp"
#include "json_fwd.hpp"

namespace dendron {

// A finite groupoid presented by objects and invertible arrows with an
// explicit composition table. Backed by the same tabulation as categories;
// construction verifies every arrow has a two-sided inverse.
class Groupoid {
public:
    Groupoid() = default;
    explicit Groupoid(FinCat cat);

    const FinCat& cat() const { return *cat_; }
    std::shared_ptr<const FinCat> cat_ptr() const { return cat_; }
    int num_objects() const { return cat_->num_objects(); }
    int num_arrows() const { return cat_->num_morphisms(); }

    // "" when the composition is closed, associative and every arrow invertible
    std::string validate() const;

    // connected-component representatives (object indices, sorted)
    std::vector<int> component_representatives() const;
    long long automorphism_count(int obj) const;

    nlohmann::json to_json() const;
    std::string to_dot() const;

private:
    std::shared_ptr<const FinCat> cat_;
};

// A truncated simplicial nerve: degree-k simplices for k >= 1 are composable
// strings of arrows; degree 0 holds the objects.
struct TruncatedNerve {
    const Groupoid* groupoid = nullptr;
    int degree = 0;
    // simplices[k]: each entry is a vector of k arrow ids (k >= 1); entry at
    // degree 0 is a single object id.
    std::vector<std::vector<std::vector<int>>> simplices;

    std::vector<int> face(int k, int i, const std::vector<int>& simplex) const;
    std::vector<int> degeneracy(int k, int i, const std::vector<int>& simplex) const;
};

TruncatedNerve nerve_truncate(const Groupoid& g, int degree);

struct SimplicialIdentityReport {
    bool pass = true;
    std::string witness;
};

// d_i d_j = d_{j-1} d_i (i < j) plus the face/degeneracy relations, checked
// exhaustively through the truncation degree.
SimplicialIdentityReport check_simplicial_identities(const TruncatedNerve& nerve);

}  // namespace dendron
