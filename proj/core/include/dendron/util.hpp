#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dendron {

// Raised when an input violates a documented precondition (unknown names,
// mismatched endpoints, malformed tables).
struct InvalidInput : std::runtime_error {
    explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a computation would exceed a configured truncation bound.
struct BoundExceeded : std::runtime_error {
    explicit BoundExceeded(const std::string& what) : std::runtime_error(what) {}
};

template <typename T>
std::string join(const std::vector<T>& items, const std::string& sep) {
    std::ostringstream os;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) os << sep;
        os << items[i];
    }
    return os.str();
}

inline std::vector<std::string> sorted_unique(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// Disjoint-set forest used for set-level colimits.
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
        for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
    }
    std::size_t find(std::size_t x) const {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
    }
    std::size_t size() const { return parent_.size(); }

private:
    mutable std::vector<std::size_t> parent_;
    std::vector<int> rank_;
};

// All permutations of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> all_permutations(int n);

// Composition of permutations acting on positions: (g*f)(i) = g[f[i]].
std::vector<int> compose_perm(const std::vector<int>& g, const std::vector<int>& f);
std::vector<int> invert_perm(const std::vector<int>& p);

long long factorial(int n);

}  // namespace dendron
