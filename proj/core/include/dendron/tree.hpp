#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json_fwd.hpp"
#include "util.hpp"

namespace dendron {

// A finite rooted tree with named edges. Vertices are identified with their
// output edge: an edge carries a vertex on top iff it has children or is
// flagged "capped" (a nullary vertex). Edges with no children and no cap are
// leaves; the root edge may itself be a leaf (the edge-only tree).
class Tree {
public:
    Tree() = default;

    static Tree edge_only(const std::string& name = "e");
    static Tree corolla(int n);   // root "r", leaves "l1".."ln"; n == 0 caps the root
    static Tree linear(int n);    // chain of n unary vertices, edges "e0".."en"
    static Tree from_parts(std::vector<std::string> edges, std::string root,
                           std::map<std::string, std::string> parent,
                           std::vector<std::string> capped);
    static Tree from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    std::string to_dot() const;

    int edge_count() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& edge_names() const { return names_; }  // sorted
    const std::string& root() const { return names_[root_]; }
    bool has_edge(const std::string& e) const { return index_.count(e) != 0; }
    bool is_root(const std::string& e) const { return idx(e) == root_; }
    bool is_capped(const std::string& e) const { return capped_[idx(e)] != 0; }
    std::optional<std::string> parent(const std::string& e) const;
    std::vector<std::string> children(const std::string& e) const;
    bool has_vertex_above(const std::string& e) const {
        int i = idx(e);
        return !children_[i].empty() || capped_[i];
    }
    bool is_leaf(const std::string& e) const { return !has_vertex_above(e); }
    bool is_inner_edge(const std::string& e) const {
        return !is_root(e) && has_vertex_above(e);
    }
    std::vector<std::string> leaves() const;    // sorted
    std::vector<std::string> vertices() const;  // output edges of vertices, sorted
    int degree() const;                         // number of vertices

    // Edges of the path from e down to (and including) the root.
    std::vector<std::string> path_to_root(const std::string& e) const;
    // Edges weakly above e (e itself and all descendants).
    std::vector<std::string> edges_above(const std::string& e) const;

    // The subtree with root r whose leaf cut is exactly `cut`; nullopt when no
    // such subtree exists. On success returns all edges of the subtree.
    std::optional<std::vector<std::string>> subtree_cut(
        const std::string& r, const std::set<std::string>& cut) const;

    // All leaf cuts of subtrees rooted at r, each sorted; deterministic order.
    std::vector<std::vector<std::string>> subtree_cuts(const std::string& r) const;

    // Isomorphism-invariant encoding (AHU-style, cap-aware).
    const std::string& encoding() const { return encoding_; }
    bool isomorphic_to(const Tree& other) const { return encoding_ == other.encoding_; }
    bool operator==(const Tree& other) const;

    // Structure-preserving rename; mapping must be injective and total.
    Tree renamed(const std::map<std::string, std::string>& mapping) const;

    // Grafts a corolla of the given arity onto each listed leaf; arity 0 caps
    // the leaf. New edges are named "<leaf>#<i>" unless names are supplied.
    Tree graft_at_leaves(const std::map<std::string, std::vector<std::string>>& grafts,
                         const std::set<std::string>& caps) const;

    int idx(const std::string& e) const;

private:
    void finalize();

    std::vector<std::string> names_;            // sorted
    std::map<std::string, int> index_;
    int root_ = -1;
    std::vector<int> parent_;                   // -1 at root
    std::vector<std::vector<int>> children_;    // sorted by edge name
    std::vector<char> capped_;
    std::string encoding_;
};

// A morphism of the tree category, stored as its edge map.
class TreeMorphism {
public:
    TreeMorphism() = default;
    TreeMorphism(Tree source, Tree target, std::map<std::string, std::string> edge_map);

    const Tree& source() const { return *source_; }
    const Tree& target() const { return *target_; }
    const std::map<std::string, std::string>& edge_map() const { return map_; }
    const std::string& apply(const std::string& e) const;

    bool injective_on_edges() const;
    bool surjective_on_edges() const;
    bool bijective_on_edges() const {
        return injective_on_edges() && surjective_on_edges();
    }
    bool is_identity() const;

    // Canonical encoding "a>x;b>y;..." over the source's sorted edges.
    std::string encoding() const;
    bool operator==(const TreeMorphism& o) const;
    bool operator<(const TreeMorphism& o) const;

    nlohmann::json to_json() const;

private:
    std::shared_ptr<const Tree> source_, target_;
    std::map<std::string, std::string> map_;
};

struct MorphismRejection {
    std::string failing_vertex;  // output edge of the first failing vertex
    std::string reason;
};

struct ValidationResult {
    std::optional<TreeMorphism> morphism;
    std::optional<MorphismRejection> rejection;
    bool ok() const { return morphism.has_value(); }
};

// Checks the operad-map condition at every source vertex. Throws InvalidInput
// when the edge map is not total or mentions unknown edges.
ValidationResult validate_morphism(const Tree& source, const Tree& target,
                                   const std::map<std::string, std::string>& edge_map);

TreeMorphism identity_morphism(const Tree& t);
TreeMorphism compose(const TreeMorphism& g, const TreeMorphism& f);  // g after f

// Complete duplicate-free hom-set, sorted by encoding. Throws BoundExceeded
// when either tree has more than `edge_limit` edges.
std::vector<TreeMorphism> enumerate_homs(const Tree& source, const Tree& target,
                                         int edge_limit = 12);

std::vector<TreeMorphism> automorphisms(const Tree& t, int edge_limit = 12);

bool is_isomorphism(const TreeMorphism& f);
TreeMorphism inverse(const TreeMorphism& f);

struct ReedyFactorization {
    TreeMorphism negative;  // degeneracies and isos; surjective on edges
    TreeMorphism positive;  // faces and isos; injective on edges
};

// f = positive ∘ negative, with isomorphisms absorbed into the negative part.
// The intermediate tree carries the image edge names of the target.
ReedyFactorization reedy_factorize(const TreeMorphism& f);

// Membership in the two Reedy classes. Positive morphisms are the composites
// of faces and isomorphisms (injective on edges; this includes the uncapping
// faces, which are edge-bijective without being invertible). Negative
// morphisms are the composites of degeneracies and isomorphisms, i.e. the
// maps whose Reedy factorization has trivial positive part.
bool in_positive_class(const TreeMorphism& f);
bool in_negative_class(const TreeMorphism& f);

// Elementary morphisms into / out of a tree.
std::vector<TreeMorphism> elementary_faces(const Tree& t);          // T' -> T
std::vector<TreeMorphism> elementary_degeneracies(const Tree& t);   // T -> T'

// Writes f as a composite of elementary morphisms (faces, degeneracies, isos),
// listed inner-to-outer: f = chain[k-1] ∘ ... ∘ chain[0]. Throws on failure.
std::vector<TreeMorphism> decompose_elementary(const TreeMorphism& f);

struct CanonicalForm {
    Tree tree;
    std::map<std::string, std::string> relabel;  // original edge -> canonical edge
};

// Isomorphic trees receive identical canonical trees; the relabeling is an
// isomorphism onto the representative.
CanonicalForm canonical_form(const Tree& t);

// All canonical trees with at most max_vertices vertices and max_edges edges,
// sorted by (vertex count, edge count, encoding).
std::vector<Tree> enumerate_trees(int max_vertices, int max_edges);

}  // namespace dendron
