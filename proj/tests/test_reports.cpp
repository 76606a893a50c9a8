#include <doctest.h>

#include <json.hpp>

#include "dendron/bounds.hpp"
#include "dendron/util.hpp"
#include "dendron/suites.hpp"

using namespace dendron;

TEST_CASE("bounds parsing") {
    Bounds b;
    b.apply_spec("tree-vertices=2,set-size=3,nerve-degree=2,carrier=3");
    CHECK(b.tree_vertices == 2);
    CHECK(b.set_size == 3);
    CHECK(b.nerve_degree == 2);
    CHECK(b.carrier == 3);
    CHECK(b.tree_edges == 6);  // untouched default
    CHECK_THROWS_AS(b.apply_spec("bogus=1"), InvalidInput);
    CHECK_THROWS_AS(b.apply_spec("tree-vertices"), InvalidInput);
    CHECK_THROWS_AS(b.apply_spec("carrier=-2"), InvalidInput);
}

TEST_CASE("unknown suites list the registry") {
    Bounds b;
    try {
        run_suite("no-such-suite", b);
        FAIL("expected a rejection");
    } catch (const InvalidInput& e) {
        std::string msg = e.what();
        CHECK(msg.find("reedy-axioms") != std::string::npos);
        CHECK(msg.find("lstar-pushout") != std::string::npos);
    }
}

TEST_CASE("suite reports are deterministic and carry the schema") {
    Bounds b;
    b.tree_vertices = 2;
    b.tree_edges = 4;
    b.set_size = 3;
    b.carrier = 3;
    for (const auto& name : {"bpq-cofibrant", "lambda-adjunction"}) {
        auto first = run_suite(name, b).to_json().dump();
        auto second = run_suite(name, b).to_json().dump();
        CHECK(first == second);
        auto j = nlohmann::json::parse(first);
        CHECK(j.at("schema") == "dendron-report/1");
        CHECK(j.at("suite") == name);
        CHECK(j.contains("bounds"));
        CHECK(j.at("failed") == 0);
    }
}
