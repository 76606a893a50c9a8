#include "dendron/fixtures.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>

namespace dendron {

using nlohmann::json;

std::vector<FixtureInfo> fixture_registry() {
    return {
        {"eta", "tree", "the tree with one edge and no vertices"},
        {"c0", "tree", "nullary corolla (capped edge)"},
        {"c1", "tree", "unary corolla"},
        {"c2", "tree", "binary corolla"},
        {"c3", "tree", "ternary corolla"},
        {"c4", "tree", "4-ary corolla"},
        {"linear2", "tree", "chain of two unary vertices"},
        {"linear3", "tree", "chain of three unary vertices"},
        {"tree-2v", "tree", "binary corolla grafted on a unary vertex"},
        {"fig-tree-4v", "tree",
         "four-vertex tree: binary root, ternary middle vertex with one capped "
         "input, unary top vertex"},
        {"ass-operad", "operad", "associative operad; sigma-free"},
        {"com-operad", "operad", "commutative operad; not sigma-free for n >= 2"},
        {"trivial-operad", "operad", "one colour, units only"},
        {"free-ass-x", "algebra", "free associative algebra on one generator"},
        {"free-ass-xy", "algebra", "free associative algebra on two generators"},
        {"parity", "algebra", "integers mod 2 as an associative algebra"},
        {"terminal-algebra", "algebra", "one-point algebra"},
        {"omega-mutated", "note", "tree-category truncation with one face reclassified "
                                  "as negative; fails the degree axiom"},
        {"gamma-mutated", "note", "finite-set truncation with one dual surjection "
                                  "reclassified; fails an axiom"},
        {"special-mutated", "note", "corrupted restriction functor; fails full "
                                    "faithfulness"},
        {"cofib-mutated", "note", "classifying-space complement without the subset "
                                  "part removed; automorphisms have fixed points"},
    };
}

namespace {

bool load_override(const std::string& name, json& out) {
    const char* dir = std::getenv("DENDRON_FIXTURES");
    if (!dir) return false;
    std::ifstream in(std::string(dir) + "/" + name + ".json");
    if (!in.good()) return false;
    in >> out;
    return true;
}

}  // namespace

bool is_tree_fixture(const std::string& name) {
    for (const auto& f : fixture_registry())
        if (f.name == name && f.kind == "tree") return true;
    return false;
}

Tree fixture_tree(const std::string& name) {
    json j;
    if (load_override(name, j)) return Tree::from_json(j);
    if (name == "eta") return Tree::edge_only();
    if (name == "c0") return Tree::corolla(0);
    if (name == "c1") return Tree::corolla(1);
    if (name == "c2") return Tree::corolla(2);
    if (name == "c3") return Tree::corolla(3);
    if (name == "c4") return Tree::corolla(4);
    if (name == "linear2") return Tree::linear(2);
    if (name == "linear3") return Tree::linear(3);
    if (name == "tree-2v")
        return Tree::from_parts({"r", "x", "c", "d"}, "r",
                                {{"x", "r"}, {"c", "x"}, {"d", "x"}}, {});
    if (name == "fig-tree-4v")
        return Tree::from_parts(
            {"r0", "a", "e", "b", "f", "g", "c"}, "r0",
            {{"a", "r0"}, {"e", "r0"}, {"b", "e"}, {"f", "e"}, {"g", "e"}, {"c", "f"}},
            {"g"});
    throw InvalidInput("unknown tree fixture: " + name);
}

Operad fixture_operad(const std::string& name, int max_arity) {
    json j;
    if (load_override(name, j)) return operad_from_json(j);
    if (name == "ass-operad" || name == "ass") return ass_operad(max_arity);
    if (name == "com-operad" || name == "com") return com_operad(max_arity);
    if (name == "trivial-operad" || name == "trivial") return trivial_operad();
    throw InvalidInput("unknown operad fixture: " + name);
}

}  // namespace dendron
