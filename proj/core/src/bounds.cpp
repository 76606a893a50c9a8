#include "dendron/bounds.hpp"

#include <json.hpp>

#include <sstream>

#include "dendron/util.hpp"

namespace dendron {

void Bounds::apply_spec(const std::string& spec) {
    if (spec.empty()) return;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw InvalidInput("bad bounds entry (expected key=value): " + item);
        std::string key = item.substr(0, eq);
        int value = 0;
        try {
            value = std::stoi(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw InvalidInput("bad bounds value in: " + item);
        }
        if (value < 0) throw InvalidInput("bounds must be non-negative: " + item);
        if (key == "tree-vertices")
            tree_vertices = value;
        else if (key == "tree-edges")
            tree_edges = value;
        else if (key == "set-size")
            set_size = value;
        else if (key == "nerve-degree")
            nerve_degree = value;
        else if (key == "carrier")
            carrier = value;
        else if (key == "arity")
            arity = value;
        else if (key == "slice-arity")
            slice_arity = value;
        else if (key == "free-size")
            free_size = value;
        else if (key == "hom-edge-limit")
            hom_edge_limit = value;
        else
            throw InvalidInput("unknown bounds key: " + key);
    }
}

nlohmann::json Bounds::to_json() const {
    nlohmann::json j;
    j["tree-vertices"] = tree_vertices;
    j["tree-edges"] = tree_edges;
    j["set-size"] = set_size;
    j["nerve-degree"] = nerve_degree;
    j["carrier"] = carrier;
    j["arity"] = arity;
    j["slice-arity"] = slice_arity;
    j["free-size"] = free_size;
    j["hom-edge-limit"] = hom_edge_limit;
    return j;
}

}  // namespace dendron
