// Acceptance suite: one verdict line per criterion, exit code 0 only when
// every criterion passes. Each criterion pins its own truncation bounds in
// code; nothing is calibrated at run time.

#include <json.hpp>

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include "dendron/bpq.hpp"
#include "dendron/fixtures.hpp"
#include "dendron/operad.hpp"
#include "dendron/presheaf.hpp"
#include "dendron/reedy.hpp"
#include "dendron/slice.hpp"
#include "dendron/suites.hpp"

using namespace dendron;

namespace {

struct Criterion {
    int number;
    std::string title;
    bool pass = false;
    std::string detail;
};

Bounds default_bounds() { return Bounds{}; }

bool suite_passes(const std::string& name, const Bounds& b, std::string& detail) {
    auto rep = run_suite(name, b);
    if (!rep.all_pass()) {
        for (const auto& c : rep.checks)
            if (!c.pass) detail += c.name + (c.detail.empty() ? "" : " [" + c.detail + "]") + "; ";
    } else {
        detail = std::to_string(rep.passed()) + " checks";
    }
    return rep.all_pass();
}

Criterion criterion_1() {
    Criterion c{1, "Reedy axioms on the three sites, with failing mutations"};
    Bounds b = default_bounds();
    b.tree_vertices = 3;
    b.tree_edges = 6;
    b.set_size = 4;
    c.pass = suite_passes("reedy-axioms", b, c.detail);
    return c;
}

Criterion criterion_2() {
    Criterion c{2, "tree-category combinatorics oracles"};
    Bounds b = default_bounds();
    b.tree_vertices = 4;
    b.tree_edges = 6;
    c.pass = suite_passes("omega-combinatorics", b, c.detail);
    return c;
}

Criterion criterion_3() {
    Criterion c{3, "leaf functor: functoriality and generator classification"};
    Bounds b = default_bounds();
    b.tree_vertices = 4;
    b.tree_edges = 6;
    c.pass = suite_passes("lambda-functor", b, c.detail);
    return c;
}

Criterion criterion_4() {
    Criterion c{4, "nerve realization and strict Segal checks"};
    Bounds b = default_bounds();
    std::string detail;
    bool base = suite_passes("segal", b, detail);
    c.detail = "4a/4b " + detail;

    // 4c, as specified: a representable with an inner edge must fail the
    // strict Segal check. The computation shows it does not (representables
    // are nerves of free tree operads, and nerves satisfy the strict Segal
    // bijection; the non-Segal statement concerns derived mapping spaces).
    // The assertion is kept as written and reported honestly.
    auto site = make_omega_site(3, 5);
    int lin2 = site.tree_id(Tree::linear(2));
    Presheaf repr = representable(site.cat, lin2);
    auto seg = check_strict_segal(repr, site);
    bool spec_claim_holds = !seg.is_strict_segal;
    if (!spec_claim_holds)
        c.detail += "; 4c EXPECTED-RED: the representable with an inner edge is "
                    "strictly Segal (it is the nerve of its free operad), so the "
                    "specified failure cannot occur at set level";
    c.pass = base && spec_claim_holds;
    return c;
}

Criterion criterion_5() {
    Criterion c{5, "algebra presheaf: route identity and covariant check"};
    Bounds b = default_bounds();
    c.pass = suite_passes("covariant", b, c.detail);
    return c;
}

Criterion criterion_6() {
    Criterion c{6, "corolla attachments and the slice projection"};
    Bounds b = default_bounds();
    c.pass = suite_passes("slice", b, c.detail);
    return c;
}

Criterion criterion_7() {
    Criterion c{7, "labelled-set groupoids: census, equivalence, unit, cofibrancy"};
    Bounds b = default_bounds();
    b.carrier = 4;
    b.nerve_degree = 3;
    std::string d1, d2;
    bool p1 = suite_passes("bpq-special", b, d1);
    bool p2 = suite_passes("bpq-cofibrant", b, d2);
    c.detail = d1 + " / " + d2;
    c.pass = p1 && p2;
    return c;
}

Criterion criterion_8() {
    Criterion c{8, "product-with-labels identities and the pushout decomposition"};
    Bounds b = default_bounds();
    c.pass = suite_passes("lstar-pushout", b, c.detail);
    return c;
}

Criterion criterion_9() {
    Criterion c{9, "adjunction of the leaf functor"};
    Bounds b = default_bounds();
    b.set_size = 3;
    c.pass = suite_passes("lambda-adjunction", b, c.detail);
    return c;
}

Criterion criterion_10() {
    Criterion c{10, "byte-identical replays of every suite"};
    Bounds b = default_bounds();
    c.pass = true;
    for (const auto& info : suite_registry()) {
        auto first = run_suite(info.name, b).to_json().dump();
        auto second = run_suite(info.name, b).to_json().dump();
        if (first != second) {
            c.pass = false;
            c.detail += info.name + " differs; ";
        }
    }
    if (c.pass) c.detail = std::to_string(suite_registry().size()) + " suites replayed";
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) only = std::stoi(argv[++i]);
    }
    std::vector<Criterion (*)()> criteria = {
        criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
        criterion_6, criterion_7, criterion_8, criterion_9, criterion_10};

    bool all = true;
    for (int k = 0; k < static_cast<int>(criteria.size()); ++k) {
        if (only != 0 && only != k + 1) continue;
        auto start = std::chrono::steady_clock::now();
        Criterion c = criteria[k]();
        auto stop = std::chrono::steady_clock::now();
        double ms = std::chrono::duration<double, std::milli>(stop - start).count();
        std::cout << "criterion " << c.number << ": " << (c.pass ? "PASS" : "FAIL")
                  << " -- " << c.title << " (" << static_cast<long long>(ms) << " ms)";
        if (!c.detail.empty()) std::cout << "\n    " << c.detail;
        std::cout << std::endl;
        all = all && c.pass;
    }
    return all ? 0 : 1;
}
