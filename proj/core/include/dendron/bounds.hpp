#pragma once

#include <string>

#include "json_fwd.hpp"

namespace dendron {

// Truncation bounds shared across the library. Every verdict a suite emits is
// relative to the bounds it ran with, and reports stamp them verbatim.
struct Bounds {
    int tree_vertices = 3;  // max vertex count in tree-category truncations
    int tree_edges = 6;     // max edge count in tree-category truncations
    int set_size = 4;       // max cardinality in finite-set truncations
    int nerve_degree = 3;   // simplicial degree for truncated nerves
    int carrier = 4;        // max carrier cardinality for groupoids over a set
    int arity = 3;          // corolla arity for operad / covariant checks
    int slice_arity = 3;    // max corolla arity attached to a leaf
    int free_size = 6;      // term-size truncation for free algebras
    int hom_edge_limit = 12;  // per-tree edge guard for hom enumeration

    // Parses "tree-vertices=K,set-size=N,nerve-degree=M,carrier=C,..." and
    // overrides the corresponding fields. Throws InvalidInput on bad keys.
    void apply_spec(const std::string& spec);

    nlohmann::json to_json() const;
};

}  // namespace dendron
