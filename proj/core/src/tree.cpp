#include "dendron/tree.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

namespace dendron {

using nlohmann::json;

std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::vector<int> compose_perm(const std::vector<int>& g, const std::vector<int>& f) {
    std::vector<int> r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) r[i] = g[f[i]];
    return r;
}

std::vector<int> invert_perm(const std::vector<int>& p) {
    std::vector<int> r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
    return r;
}

long long factorial(int n) {
    long long r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// ---------------------------------------------------------------------------
// Tree
// ---------------------------------------------------------------------------

int Tree::idx(const std::string& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) throw InvalidInput("unknown edge identifier: " + e);
    return it->second;
}

Tree Tree::edge_only(const std::string& name) {
    Tree t;
    t.names_ = {name};
    t.index_[name] = 0;
    t.root_ = 0;
    t.parent_ = {-1};
    t.children_ = {{}};
    t.capped_ = {0};
    t.finalize();
    return t;
}

Tree Tree::corolla(int n) {
    if (n < 0) throw InvalidInput("corolla arity must be non-negative");
    std::vector<std::string> edges = {"r"};
    std::map<std::string, std::string> parent;
    for (int i = 1; i <= n; ++i) {
        std::string leaf = "l" + std::to_string(i);
        edges.push_back(leaf);
        parent[leaf] = "r";
    }
    std::vector<std::string> caps;
    if (n == 0) caps.push_back("r");
    return from_parts(edges, "r", parent, caps);
}

Tree Tree::linear(int n) {
    if (n < 0) throw InvalidInput("linear tree length must be non-negative");
    std::vector<std::string> edges;
    std::map<std::string, std::string> parent;
    for (int i = 0; i <= n; ++i) {
        edges.push_back("e" + std::to_string(i));
        if (i > 0) parent["e" + std::to_string(i)] = "e" + std::to_string(i - 1);
    }
    return from_parts(edges, "e0", parent, {});
}

Tree Tree::from_parts(std::vector<std::string> edges, std::string root,
                      std::map<std::string, std::string> parent,
                      std::vector<std::string> capped) {
    if (edges.empty()) throw InvalidInput("a tree must have at least one edge");
    Tree t;
    t.names_ = sorted_unique(edges);
    if (t.names_.size() != edges.size()) throw InvalidInput("duplicate edge identifiers");
    for (std::size_t i = 0; i < t.names_.size(); ++i)
        t.index_[t.names_[i]] = static_cast<int>(i);
    auto rit = t.index_.find(root);
    if (rit == t.index_.end()) throw InvalidInput("root is not an edge: " + root);
    t.root_ = rit->second;
    t.parent_.assign(t.names_.size(), -1);
    t.children_.assign(t.names_.size(), {});
    t.capped_.assign(t.names_.size(), 0);
    for (const auto& [child, par] : parent) {
        auto ci = t.index_.find(child);
        auto pi = t.index_.find(par);
        if (ci == t.index_.end() || pi == t.index_.end())
            throw InvalidInput("parent map mentions unknown edge");
        if (ci->second == t.root_) throw InvalidInput("root cannot have a parent");
        t.parent_[ci->second] = pi->second;
    }
    for (std::size_t i = 0; i < t.names_.size(); ++i) {
        if (static_cast<int>(i) != t.root_ && t.parent_[i] < 0)
            throw InvalidInput("non-root edge lacks a parent: " + t.names_[i]);
    }
    // acyclicity: walk each edge to the root
    for (std::size_t i = 0; i < t.names_.size(); ++i) {
        int cur = static_cast<int>(i);
        std::size_t steps = 0;
        while (cur != t.root_) {
            cur = t.parent_[cur];
            if (++steps > t.names_.size()) throw InvalidInput("parent relation has a cycle");
        }
    }
    for (std::size_t i = 0; i < t.names_.size(); ++i) {
        if (t.parent_[i] >= 0) t.children_[t.parent_[i]].push_back(static_cast<int>(i));
    }
    for (const auto& c : capped) {
        int ci = t.idx(c);
        if (!t.children_[ci].empty())
            throw InvalidInput("capped edge has children: " + c);
        t.capped_[ci] = 1;
    }
    t.finalize();
    return t;
}

void Tree::finalize() {
    for (auto& kids : children_) std::sort(kids.begin(), kids.end());
    // AHU encoding with cap marker
    std::function<std::string(int)> enc = [&](int e) -> std::string {
        std::vector<std::string> parts;
        parts.reserve(children_[e].size());
        for (int c : children_[e]) parts.push_back(enc(c));
        std::sort(parts.begin(), parts.end());
        std::string s = "(";
        if (capped_[e]) s += "*";
        for (const auto& p : parts) s += p;
        s += ")";
        return s;
    };
    encoding_ = enc(root_);
}

std::optional<std::string> Tree::parent(const std::string& e) const {
    int p = parent_[idx(e)];
    if (p < 0) return std::nullopt;
    return names_[p];
}

std::vector<std::string> Tree::children(const std::string& e) const {
    std::vector<std::string> out;
    for (int c : children_[idx(e)]) out.push_back(names_[c]);
    return out;
}

std::vector<std::string> Tree::leaves() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (children_[i].empty() && !capped_[i]) out.push_back(names_[i]);
    return out;
}

std::vector<std::string> Tree::vertices() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (!children_[i].empty() || capped_[i]) out.push_back(names_[i]);
    return out;
}

int Tree::degree() const {
    int d = 0;
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (!children_[i].empty() || capped_[i]) ++d;
    return d;
}

std::vector<std::string> Tree::path_to_root(const std::string& e) const {
    std::vector<std::string> out;
    int cur = idx(e);
    while (true) {
        out.push_back(names_[cur]);
        if (cur == root_) break;
        cur = parent_[cur];
    }
    return out;
}

std::vector<std::string> Tree::edges_above(const std::string& e) const {
    std::vector<std::string> out;
    std::deque<int> q = {idx(e)};
    while (!q.empty()) {
        int cur = q.front();
        q.pop_front();
        out.push_back(names_[cur]);
        for (int c : children_[cur]) q.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::vector<std::string>> Tree::subtree_cut(
    const std::string& r, const std::set<std::string>& cut) const {
    for (const auto& c : cut)
        if (!has_edge(c)) throw InvalidInput("cut mentions unknown edge: " + c);
    std::vector<std::string> acc;
    std::set<std::string> reached;
    bool ok = true;
    std::function<void(int)> grow = [&](int e) {
        if (!ok) return;
        acc.push_back(names_[e]);
        if (cut.count(names_[e])) {
            reached.insert(names_[e]);
            return;
        }
        if (children_[e].empty() && !capped_[e]) {
            ok = false;  // hit a leaf of the ambient tree that is not in the cut
            return;
        }
        for (int c : children_[e]) grow(c);
    };
    grow(idx(r));
    if (!ok || reached.size() != cut.size()) return std::nullopt;
    std::sort(acc.begin(), acc.end());
    return acc;
}

std::vector<std::vector<std::string>> Tree::subtree_cuts(const std::string& r) const {
    std::function<std::vector<std::vector<std::string>>(int)> cuts =
        [&](int e) -> std::vector<std::vector<std::string>> {
        std::vector<std::vector<std::string>> out;
        out.push_back({names_[e]});  // stop here
        if (!children_[e].empty() || capped_[e]) {
            std::vector<std::vector<std::vector<std::string>>> kid_cuts;
            for (int c : children_[e]) kid_cuts.push_back(cuts(c));
            std::vector<std::vector<std::string>> combos = {{}};
            for (const auto& kc : kid_cuts) {
                std::vector<std::vector<std::string>> next;
                for (const auto& base : combos)
                    for (const auto& choice : kc) {
                        auto merged = base;
                        merged.insert(merged.end(), choice.begin(), choice.end());
                        next.push_back(std::move(merged));
                    }
                combos = std::move(next);
            }
            for (auto& c : combos) {
                std::sort(c.begin(), c.end());
                out.push_back(std::move(c));
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    return cuts(idx(r));
}

bool Tree::operator==(const Tree& other) const {
    return names_ == other.names_ && root_ == other.root_ && parent_ == other.parent_ &&
           capped_ == other.capped_;
}

Tree Tree::renamed(const std::map<std::string, std::string>& mapping) const {
    std::vector<std::string> edges;
    std::map<std::string, std::string> parent;
    std::vector<std::string> caps;
    auto ren = [&](const std::string& e) {
        auto it = mapping.find(e);
        if (it == mapping.end()) throw InvalidInput("rename map misses edge: " + e);
        return it->second;
    };
    for (const auto& e : names_) {
        edges.push_back(ren(e));
        if (auto p = this->parent(e)) parent[ren(e)] = ren(*p);
        if (is_capped(e)) caps.push_back(ren(e));
    }
    return from_parts(edges, ren(root()), parent, caps);
}

Tree Tree::graft_at_leaves(const std::map<std::string, std::vector<std::string>>& grafts,
                           const std::set<std::string>& caps) const {
    std::vector<std::string> edges = names_;
    std::map<std::string, std::string> parent;
    std::vector<std::string> capped;
    for (const auto& e : names_) {
        if (auto p = this->parent(e)) parent[e] = *p;
        if (is_capped(e)) capped.push_back(e);
    }
    for (const auto& [leaf, kids] : grafts) {
        if (!is_leaf(leaf)) throw InvalidInput("graft target is not a leaf: " + leaf);
        for (const auto& k : kids) {
            edges.push_back(k);
            parent[k] = leaf;
        }
        if (kids.empty()) throw InvalidInput("empty graft; use caps for arity zero");
    }
    for (const auto& leaf : caps) {
        if (!is_leaf(leaf)) throw InvalidInput("cap target is not a leaf: " + leaf);
        if (grafts.count(leaf)) throw InvalidInput("edge both grafted and capped: " + leaf);
        capped.push_back(leaf);
    }
    return from_parts(edges, root(), parent, capped);
}

json Tree::to_json() const {
    json j;
    j["edges"] = names_;
    j["root"] = root();
    json par = json::object();
    for (const auto& e : names_)
        if (auto p = parent(e)) par[e] = *p;
    j["parent"] = par;
    json caps = json::array();
    for (const auto& e : names_)
        if (is_capped(e)) caps.push_back(e);
    j["capped"] = caps;
    return j;
}

Tree Tree::from_json(const json& j) {
    std::vector<std::string> edges = j.at("edges").get<std::vector<std::string>>();
    std::string root = j.at("root").get<std::string>();
    std::map<std::string, std::string> parent;
    if (j.contains("parent"))
        parent = j.at("parent").get<std::map<std::string, std::string>>();
    std::vector<std::string> caps;
    if (j.contains("capped")) caps = j.at("capped").get<std::vector<std::string>>();
    return from_parts(edges, root, parent, caps);
}

std::string Tree::to_dot() const {
    std::ostringstream os;
    os << "digraph tree {\n  rankdir=BT;\n";
    os << "  node [shape=point];\n";
    os << "  ground [style=invis];\n";
    for (const auto& e : names_) {
        std::string vertex_mark = has_vertex_above(e) ? "v_" + e : "tip_" + e;
        if (has_vertex_above(e))
            os << "  \"v_" << e << "\" [shape=circle, width=0.12, label=\"\"];\n";
        else
            os << "  \"tip_" << e << "\" [style=invis];\n";
    }
    for (const auto& e : names_) {
        std::string below = is_root(e) ? std::string("ground")
                                       : "v_" + *parent(e);
        std::string above = has_vertex_above(e) ? "v_" + e : "tip_" + e;
        os << "  \"" << below << "\" -> \"" << above << "\" [label=\"" << e
           << (is_capped(e) ? " (capped)" : "") << "\", dir=none];\n";
    }
    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// TreeMorphism
// ---------------------------------------------------------------------------

TreeMorphism::TreeMorphism(Tree source, Tree target,
                           std::map<std::string, std::string> edge_map)
    : source_(std::make_shared<Tree>(std::move(source))),
      target_(std::make_shared<Tree>(std::move(target))),
      map_(std::move(edge_map)) {}

const std::string& TreeMorphism::apply(const std::string& e) const {
    auto it = map_.find(e);
    if (it == map_.end()) throw InvalidInput("edge map undefined on: " + e);
    return it->second;
}

bool TreeMorphism::injective_on_edges() const {
    std::set<std::string> seen;
    for (const auto& [k, v] : map_)
        if (!seen.insert(v).second) return false;
    return true;
}

bool TreeMorphism::surjective_on_edges() const {
    std::set<std::string> seen;
    for (const auto& [k, v] : map_) seen.insert(v);
    return static_cast<int>(seen.size()) == target_->edge_count();
}

bool TreeMorphism::is_identity() const {
    if (!(source() == target())) return false;
    for (const auto& [k, v] : map_)
        if (k != v) return false;
    return true;
}

std::string TreeMorphism::encoding() const {
    std::vector<std::string> parts;
    for (const auto& e : source_->edge_names()) parts.push_back(e + ">" + apply(e));
    return join(parts, ";");
}

bool TreeMorphism::operator==(const TreeMorphism& o) const {
    return source() == o.source() && target() == o.target() && map_ == o.map_;
}

bool TreeMorphism::operator<(const TreeMorphism& o) const { return encoding() < o.encoding(); }

json TreeMorphism::to_json() const {
    json j;
    j["source"] = source_->to_json();
    j["target"] = target_->to_json();
    j["edgeMap"] = map_;
    return j;
}

// ---------------------------------------------------------------------------
// Validation, composition, enumeration
// ---------------------------------------------------------------------------

ValidationResult validate_morphism(const Tree& source, const Tree& target,
                                   const std::map<std::string, std::string>& edge_map) {
    for (const auto& e : source.edge_names()) {
        auto it = edge_map.find(e);
        if (it == edge_map.end())
            throw InvalidInput("edge map is not total; missing: " + e);
        if (!target.has_edge(it->second))
            throw InvalidInput("edge map hits unknown target edge: " + it->second);
    }
    for (const auto& [k, v] : edge_map)
        if (!source.has_edge(k)) throw InvalidInput("edge map mentions unknown edge: " + k);

    ValidationResult res;
    for (const auto& b : source.vertices()) {
        auto inputs = source.children(b);
        std::set<std::string> images;
        for (const auto& a : inputs) images.insert(edge_map.at(a));
        if (images.size() != inputs.size()) {
            res.rejection = MorphismRejection{
                b, "input edges of the vertex do not have distinct images"};
            return res;
        }
        if (!target.subtree_cut(edge_map.at(b), images)) {
            res.rejection = MorphismRejection{
                b, "target has no subtree with the required root and leaf cut"};
            return res;
        }
    }
    res.morphism = TreeMorphism(source, target, edge_map);
    return res;
}

TreeMorphism identity_morphism(const Tree& t) {
    std::map<std::string, std::string> m;
    for (const auto& e : t.edge_names()) m[e] = e;
    return TreeMorphism(t, t, std::move(m));
}

TreeMorphism compose(const TreeMorphism& g, const TreeMorphism& f) {
    if (!(f.target() == g.source()))
        throw InvalidInput("morphisms are not composable");
    std::map<std::string, std::string> m;
    for (const auto& [k, v] : f.edge_map()) m[k] = g.apply(v);
    return TreeMorphism(f.source(), g.target(), std::move(m));
}

std::vector<TreeMorphism> enumerate_homs(const Tree& source, const Tree& target,
                                         int edge_limit) {
    if (source.edge_count() > edge_limit || target.edge_count() > edge_limit)
        throw BoundExceeded("hom enumeration bound exceeded (edges > " +
                            std::to_string(edge_limit) + ")");

    // Precompute subtree cuts of the target grouped by root edge and size.
    std::map<std::string, std::map<int, std::vector<std::vector<std::string>>>> cuts;
    for (const auto& t : target.edge_names()) {
        for (auto& c : target.subtree_cuts(t))
            cuts[t][static_cast<int>(c.size())].push_back(std::move(c));
    }

    // Vertices of the source in breadth-first order from the root, so the
    // output edge of each vertex is assigned before the vertex is processed.
    std::vector<std::string> vertex_order;
    {
        std::deque<std::string> q = {source.root()};
        while (!q.empty()) {
            std::string e = q.front();
            q.pop_front();
            if (source.has_vertex_above(e)) {
                vertex_order.push_back(e);
                for (const auto& c : source.children(e)) q.push_back(c);
            }
        }
    }

    std::vector<TreeMorphism> out;
    std::map<std::string, std::string> assignment;
    std::function<void(std::size_t)> assign_vertex = [&](std::size_t vi) {
        if (vi == vertex_order.size()) {
            out.emplace_back(source, target, assignment);
            return;
        }
        const std::string& b = vertex_order[vi];
        auto inputs = source.children(b);
        const std::string& image = assignment.at(b);
        auto by_size = cuts.find(image);
        if (by_size == cuts.end()) return;
        auto sized = by_size->second.find(static_cast<int>(inputs.size()));
        if (sized == by_size->second.end()) return;
        for (const auto& cut : sized->second) {
            std::vector<std::string> arrangement = cut;
            std::sort(arrangement.begin(), arrangement.end());
            do {
                for (std::size_t i = 0; i < inputs.size(); ++i)
                    assignment[inputs[i]] = arrangement[i];
                assign_vertex(vi + 1);
            } while (std::next_permutation(arrangement.begin(), arrangement.end()));
            for (const auto& in : inputs) assignment.erase(in);
        }
    };

    for (const auto& t : target.edge_names()) {
        assignment.clear();
        assignment[source.root()] = t;
        assign_vertex(0);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<TreeMorphism> automorphisms(const Tree& t, int edge_limit) {
    std::vector<TreeMorphism> out;
    for (auto& f : enumerate_homs(t, t, edge_limit))
        if (f.bijective_on_edges()) out.push_back(std::move(f));
    return out;
}

bool is_isomorphism(const TreeMorphism& f) {
    if (!f.bijective_on_edges()) return false;
    std::map<std::string, std::string> inv;
    for (const auto& [k, v] : f.edge_map()) inv[v] = k;
    return validate_morphism(f.target(), f.source(), inv).ok();
}

TreeMorphism inverse(const TreeMorphism& f) {
    if (!f.bijective_on_edges()) throw InvalidInput("morphism is not invertible");
    std::map<std::string, std::string> inv;
    for (const auto& [k, v] : f.edge_map()) inv[v] = k;
    auto r = validate_morphism(f.target(), f.source(), inv);
    if (!r.ok()) throw InvalidInput("edge-bijective morphism with invalid inverse");
    return *r.morphism;
}

// ---------------------------------------------------------------------------
// Reedy factorization
// ---------------------------------------------------------------------------

ReedyFactorization reedy_factorize(const TreeMorphism& f) {
    const Tree& S = f.source();
    const Tree& T = f.target();

    // Image tree: edges are the image names in T; the tree structure is the
    // quotient of S collapsing each fibre (a chain through unary vertices).
    std::map<std::string, std::vector<std::string>> fibre;  // image -> source edges
    for (const auto& e : S.edge_names()) fibre[f.apply(e)].push_back(e);

    std::vector<std::string> edges;
    std::map<std::string, std::string> parent;
    std::vector<std::string> caps;
    std::string root;
    for (const auto& [img, pre] : fibre) {
        edges.push_back(img);
        // lowest preimage: the one whose parent is outside the fibre
        std::string low, high;
        for (const auto& p : pre) {
            auto par = S.parent(p);
            if (!par || f.apply(*par) != img) low = p;
            bool has_child_in_fibre = false;
            for (const auto& c : S.children(p))
                if (f.apply(c) == img) has_child_in_fibre = true;
            if (!has_child_in_fibre) high = p;
        }
        if (low.empty() || high.empty())
            throw InvalidInput("fibre of a valid morphism is not a chain");
        if (S.is_root(low))
            root = img;
        else
            parent[img] = f.apply(*S.parent(low));
        if (S.is_capped(high)) caps.push_back(img);
    }
    Tree mid = Tree::from_parts(edges, root, parent, caps);

    std::map<std::string, std::string> neg_map;
    for (const auto& e : S.edge_names()) neg_map[e] = f.apply(e);
    std::map<std::string, std::string> pos_map;
    for (const auto& e : mid.edge_names()) pos_map[e] = e;

    ReedyFactorization out;
    out.negative = TreeMorphism(S, mid, std::move(neg_map));
    out.positive = TreeMorphism(mid, T, std::move(pos_map));
    return out;
}

bool in_positive_class(const TreeMorphism& f) { return f.injective_on_edges(); }

bool in_negative_class(const TreeMorphism& f) {
    return reedy_factorize(f).positive.is_identity();
}

// ---------------------------------------------------------------------------
// Elementary morphisms
// ---------------------------------------------------------------------------

std::vector<TreeMorphism> elementary_faces(const Tree& t) {
    std::vector<TreeMorphism> out;

    // inner faces: contract an edge lying between two vertices
    for (const auto& e : t.edge_names()) {
        if (!t.is_inner_edge(e)) continue;
        std::vector<std::string> edges;
        std::map<std::string, std::string> parent;
        std::vector<std::string> caps;
        for (const auto& x : t.edge_names()) {
            if (x == e) continue;
            edges.push_back(x);
            if (auto p = t.parent(x)) parent[x] = (*p == e) ? *t.parent(e) : *p;
            if (t.is_capped(x)) caps.push_back(x);
        }
        // contracting a capped edge that was the only input of its vertex
        // leaves a nullary merged vertex
        if (t.is_capped(e) && t.children(*t.parent(e)).size() == 1)
            caps.push_back(*t.parent(e));
        Tree contracted = Tree::from_parts(edges, t.root(), parent, caps);
        std::map<std::string, std::string> m;
        for (const auto& x : contracted.edge_names()) m[x] = x;
        out.emplace_back(contracted, t, std::move(m));
    }

    // top faces: chop a vertex all of whose inputs are leaves
    for (const auto& b : t.vertices()) {
        auto inputs = t.children(b);
        bool top = true;
        for (const auto& a : inputs)
            if (t.has_vertex_above(a)) top = false;
        if (!top) continue;
        if (t.edge_count() - static_cast<int>(inputs.size()) < 1) continue;
        std::vector<std::string> edges;
        std::map<std::string, std::string> parent;
        std::vector<std::string> caps;
        std::set<std::string> dropped(inputs.begin(), inputs.end());
        for (const auto& x : t.edge_names()) {
            if (dropped.count(x)) continue;
            edges.push_back(x);
            if (auto p = t.parent(x)) parent[x] = *p;
            if (t.is_capped(x) && x != b) caps.push_back(x);  // b loses its cap/vertex
        }
        Tree chopped = Tree::from_parts(edges, t.root(), parent, caps);
        std::map<std::string, std::string> m;
        for (const auto& x : chopped.edge_names()) m[x] = x;
        out.emplace_back(chopped, t, std::move(m));
    }

    // root faces: remove the root vertex, keeping the branch above one input
    // whose siblings are all leaves
    if (t.has_vertex_above(t.root())) {
        auto inputs = t.children(t.root());
        for (const auto& keep : inputs) {
            bool siblings_are_leaves = true;
            for (const auto& s : inputs)
                if (s != keep && !t.is_leaf(s)) siblings_are_leaves = false;
            if (!siblings_are_leaves) continue;
            auto kept = t.edges_above(keep);
            std::vector<std::string> edges(kept.begin(), kept.end());
            std::map<std::string, std::string> parent;
            std::vector<std::string> caps;
            std::set<std::string> in_subtree(kept.begin(), kept.end());
            for (const auto& x : kept) {
                if (x != keep) parent[x] = *t.parent(x);
                if (t.is_capped(x)) caps.push_back(x);
            }
            Tree branch = Tree::from_parts(edges, keep, parent, caps);
            std::map<std::string, std::string> m;
            for (const auto& x : branch.edge_names()) m[x] = x;
            out.emplace_back(branch, t, std::move(m));
        }
    }

    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<TreeMorphism> elementary_degeneracies(const Tree& t) {
    std::vector<TreeMorphism> out;
    for (const auto& b : t.vertices()) {
        auto inputs = t.children(b);
        if (inputs.size() != 1) continue;  // unary vertices only
        const std::string& a = inputs[0];
        std::vector<std::string> edges;
        std::map<std::string, std::string> parent;
        std::vector<std::string> caps;
        for (const auto& x : t.edge_names()) {
            if (x == a) continue;
            edges.push_back(x);
            if (auto p = t.parent(x)) parent[x] = (*p == a) ? b : *p;
            if (t.is_capped(x)) caps.push_back(x);
        }
        if (t.is_capped(a)) caps.push_back(b);
        Tree collapsed = Tree::from_parts(edges, t.root(), parent, caps);
        std::map<std::string, std::string> m;
        for (const auto& x : t.edge_names()) m[x] = (x == a) ? b : x;
        out.emplace_back(t, collapsed, std::move(m));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<TreeMorphism> decompose_elementary(const TreeMorphism& f) {
    auto fact = reedy_factorize(f);
    std::vector<TreeMorphism> chain;

    // Negative part: peel degeneracies until bijective.
    TreeMorphism neg = fact.negative;
    while (!neg.bijective_on_edges()) {
        bool peeled = false;
        for (const auto& sigma : elementary_degeneracies(neg.source())) {
            // sigma collapses a into b; compatible when neg identifies them
            std::string collapsed_b, collapsed_a;
            for (const auto& [k, v] : sigma.edge_map())
                if (k != v) {
                    collapsed_a = k;
                    collapsed_b = v;
                }
            if (neg.apply(collapsed_a) != neg.apply(collapsed_b)) continue;
            std::map<std::string, std::string> rest;
            for (const auto& e : sigma.target().edge_names()) rest[e] = neg.apply(e);
            auto r = validate_morphism(sigma.target(), neg.target(), rest);
            if (!r.ok()) continue;
            chain.push_back(sigma);
            neg = *r.morphism;
            peeled = true;
            break;
        }
        if (!peeled)
            throw InvalidInput("failed to peel a degeneracy from a negative morphism");
    }
    chain.push_back(neg);  // residual isomorphism (possibly the identity)

    // Positive part: wrap faces around the outside. Every face (including the
    // uncapping ones that keep all edges) lowers the target degree by one.
    std::vector<TreeMorphism> pos_chain;
    TreeMorphism pos = fact.positive;
    while (!is_isomorphism(pos)) {
        std::set<std::string> image;
        for (const auto& [k, v] : pos.edge_map()) image.insert(v);
        bool wrapped = false;
        for (const auto& face : elementary_faces(pos.target())) {
            std::set<std::string> face_image;
            for (const auto& [k, v] : face.edge_map()) face_image.insert(v);
            bool contains = std::includes(face_image.begin(), face_image.end(),
                                          image.begin(), image.end());
            if (!contains) continue;
            std::map<std::string, std::string> inner;
            for (const auto& [k, v] : pos.edge_map()) inner[k] = v;  // same names
            auto r = validate_morphism(pos.source(), face.source(), inner);
            if (!r.ok()) continue;
            pos_chain.push_back(face);
            pos = *r.morphism;
            wrapped = true;
            break;
        }
        if (!wrapped)
            throw InvalidInput("failed to factor a positive morphism through a face");
    }
    if (!pos.is_identity()) chain.push_back(pos);  // residual isomorphism
    for (auto it = pos_chain.rbegin(); it != pos_chain.rend(); ++it) chain.push_back(*it);

    // sanity: the chain composes back to f
    TreeMorphism acc = chain.front();
    for (std::size_t i = 1; i < chain.size(); ++i) acc = compose(chain[i], acc);
    if (!(acc == f)) throw InvalidInput("elementary decomposition failed to recompose");
    return chain;
}

// ---------------------------------------------------------------------------
// Canonical form and enumeration
// ---------------------------------------------------------------------------

CanonicalForm canonical_form(const Tree& t) {
    // Sort children by subtree encoding, then assign names in DFS order.
    std::map<std::string, std::string> enc;
    std::function<std::string(const std::string&)> compute = [&](const std::string& e) {
        std::vector<std::string> parts;
        for (const auto& c : t.children(e)) parts.push_back(compute(c));
        std::sort(parts.begin(), parts.end());
        std::string s = "(";
        if (t.is_capped(e)) s += "*";
        for (const auto& p : parts) s += p;
        s += ")";
        enc[e] = s;
        return s;
    };
    compute(t.root());

    std::map<std::string, std::string> relabel;
    int counter = 0;
    std::function<void(const std::string&)> assign = [&](const std::string& e) {
        relabel[e] = "e" + std::to_string(counter++);
        auto kids = t.children(e);
        std::stable_sort(kids.begin(), kids.end(),
                         [&](const std::string& x, const std::string& y) {
                             if (enc[x] != enc[y]) return enc[x] < enc[y];
                             return x < y;
                         });
        for (const auto& c : kids) assign(c);
    };
    assign(t.root());

    CanonicalForm out;
    out.tree = t.renamed(relabel);
    out.relabel = std::move(relabel);
    return out;
}

std::vector<Tree> enumerate_trees(int max_vertices, int max_edges) {
    std::vector<Tree> out;
    std::set<std::string> seen;
    auto add = [&](const Tree& t) {
        auto canon = canonical_form(t).tree;
        if (seen.insert(canon.encoding()).second) out.push_back(canon);
    };

    std::vector<Tree> frontier;
    Tree eta = canonical_form(Tree::edge_only()).tree;
    add(eta);
    frontier.push_back(eta);

    for (int d = 1; d <= max_vertices; ++d) {
        std::vector<Tree> next;
        std::set<std::string> next_seen;
        for (const auto& t : frontier) {
            for (const auto& leaf : t.leaves()) {
                // cap the leaf (attach a nullary vertex)
                {
                    Tree grown = t.graft_at_leaves({}, {leaf});
                    if (grown.edge_count() <= max_edges) {
                        auto canon = canonical_form(grown).tree;
                        if (next_seen.insert(canon.encoding()).second) {
                            add(canon);
                            next.push_back(canon);
                        }
                    }
                }
                // attach a corolla of arity m >= 1
                for (int m = 1; t.edge_count() + m <= max_edges; ++m) {
                    std::vector<std::string> kids;
                    for (int i = 1; i <= m; ++i)
                        kids.push_back(leaf + "#" + std::to_string(i));
                    Tree grown = t.graft_at_leaves({{leaf, kids}}, {});
                    auto canon = canonical_form(grown).tree;
                    if (next_seen.insert(canon.encoding()).second) {
                        add(canon);
                        next.push_back(canon);
                    }
                }
            }
        }
        frontier = std::move(next);
    }

    std::sort(out.begin(), out.end(), [](const Tree& a, const Tree& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        if (a.edge_count() != b.edge_count()) return a.edge_count() < b.edge_count();
        return a.encoding() < b.encoding();
    });
    return out;
}

}  // namespace dendron
