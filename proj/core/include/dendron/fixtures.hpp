#pragma once

#include <string>
#include <vector>

#include "finset.hpp"
#include "operad.hpp"
#include "tree.hpp"

namespace dendron {

struct FixtureInfo {
    std::string name;
    std::string kind;  // tree | operad | algebra | pmap | note
    std::string description;
};

// Bundled fixtures. Setting DENDRON_FIXTURES to a directory lets a file
// <name>.json override the builtin of the same name.
std::vector<FixtureInfo> fixture_registry();

Tree fixture_tree(const std::string& name);
Operad fixture_operad(const std::string& name, int max_arity);
bool is_tree_fixture(const std::string& name);

}  // namespace dendron
