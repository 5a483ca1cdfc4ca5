#include <catch2/catch_amalgamated.hpp>

#include "caspforge/csp.hpp"
#include "helpers.hpp"

using namespace caspforge;
using namespace test_helpers;

TEST_CASE("evaluate on a binary disequality", "[csp]") {
    CspInstance csp({var("x", 1, 2), var("y", 1, 2)}, {neq("c", "x", "y")});

    SECTION("satisfying assignment") {
        auto r = evaluate(csp, {{"x", 1}, {"y", 2}});
        REQUIRE(r.satisfied == std::set<std::string>{"c"});
        REQUIRE(r.is_solution);
    }
    SECTION("violating assignment") {
        auto r = evaluate(csp, {{"x", 1}, {"y", 1}});
        REQUIRE(r.satisfied.empty());
        REQUIRE_FALSE(r.is_solution);
    }
}

TEST_CASE("evaluate detects pigeonhole infeasibility", "[csp]") {
    CspInstance csp({var("x1", 1, 2), var("x2", 1, 2), var("x3", 1, 2)},
                    {alldiff("c", {"x1", "x2", "x3"})});
    for_each_assignment(csp, [&](const Assignment& a) {
        REQUIRE_FALSE(evaluate(csp, a).is_solution);
    });
}

TEST_CASE("evaluate rejects bad assignments", "[csp]") {
    CspInstance csp({var("x", 1, 2), var("y", 1, 2)}, {neq("c", "x", "y")});
    REQUIRE_THROWS_WITH(evaluate(csp, {{"x", 1}}),
                        Catch::Matchers::ContainsSubstring("incomplete assignment"));
    REQUIRE_THROWS_WITH(evaluate(csp, {{"x", 1}, {"y", 7}}),
                        Catch::Matchers::ContainsSubstring("domain violation"));
}

TEST_CASE("binary decomposition of all-different", "[csp]") {
    SECTION("three variables") {
        auto out = binary_decomposition(alldiff("c", {"x1", "x2", "x3"}));
        REQUIRE(out.size() == 3);
        REQUIRE(out[0].scope == std::vector<std::string>{"x1", "x2"});
        REQUIRE(out[1].scope == std::vector<std::string>{"x1", "x3"});
        REQUIRE(out[2].scope == std::vector<std::string>{"x2", "x3"});
        for (const auto& c : out) REQUIRE(c.kind == ConstraintKind::NotEqual);
    }
    SECTION("two variables") {
        REQUIRE(binary_decomposition(alldiff("c", {"x1", "x2"})).size() == 1);
    }
    SECTION("five variables") {
        REQUIRE(binary_decomposition(alldiff("c", {"a", "b", "c", "d", "e"})).size() == 10);
    }
    SECTION("ids are deterministic") {
        auto a = binary_decomposition(alldiff("c", {"x", "y"}));
        auto b = binary_decomposition(alldiff("c", {"x", "y"}));
        REQUIRE(a[0].id == b[0].id);
    }
}

TEST_CASE("all-different agrees with its decomposition on total assignments", "[csp]") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);  // 2..4
        const Value d = 2 + static_cast<Value>(rng() % 3);
        std::vector<VariableDecl> vars;
        std::vector<std::string> names;
        for (int i = 0; i < n; ++i) {
            names.push_back("v" + std::to_string(i));
            vars.push_back(var(names.back(), 1, d));
        }
        auto ad = alldiff("c", names);
        CspInstance whole(vars, {ad});
        CspInstance split(vars, binary_decomposition(ad));
        for_each_assignment(whole, [&](const Assignment& a) {
            REQUIRE(evaluate(whole, a).is_solution == evaluate(split, a).is_solution);
        });
    }
}

TEST_CASE("normalize renames the domain union order-preservingly", "[csp]") {
    SECTION("single variable with gaps") {
        CspInstance csp({var("x", {5, 7, 9})}, {});
        auto res = normalize(csp);
        REQUIRE(res.normalized.variable(0).domain == std::vector<Value>{1, 2, 3});
        REQUIRE(res.value_maps[0] == std::map<Value, Value>{{5, 1}, {7, 2}, {9, 3}});
    }
    SECTION("already normalized is the identity") {
        CspInstance csp({var("x", 1, 3)}, {});
        auto res = normalize(csp);
        REQUIRE(res.normalized.variable(0).domain == std::vector<Value>{1, 2, 3});
        REQUIRE(res.value_maps[0] == std::map<Value, Value>{{1, 1}, {2, 2}, {3, 3}});
    }
    SECTION("joint renaming over the union") {
        CspInstance csp({var("x", {2, 4}), var("y", {1, 4})}, {});
        auto res = normalize(csp);
        REQUIRE(res.normalized.variable(0).domain == std::vector<Value>{2, 3});
        REQUIRE(res.normalized.variable(1).domain == std::vector<Value>{1, 3});
    }
}

TEST_CASE("normalize preserves solutions exactly", "[csp]") {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<VariableDecl> vars;
        std::vector<std::string> names = {"a", "b", "c"};
        for (const auto& nm : names) {
            std::vector<Value> dom;
            for (Value x = -2; x <= 8; ++x)
                if (rng() % 2) dom.push_back(x);
            if (dom.empty()) dom.push_back(static_cast<Value>(rng() % 5));
            vars.push_back(var(nm, dom));
        }
        std::vector<Tuple> tuples;
        for (Value x = -2; x <= 8; ++x)
            for (Value y = -2; y <= 8; ++y)
                if (rng() % 3 == 0) tuples.push_back({x, y});
        CspInstance csp(vars, {alldiff("c1", names), allowed("c2", {"a", "b"}, tuples)});
        auto res = normalize(csp);
        size_t solutions = 0;
        for_each_assignment(csp, [&](const Assignment& a) {
            Assignment mapped;
            for (int v = 0; v < csp.var_count(); ++v) {
                const auto& nm = csp.variable(v).name;
                mapped[nm] = res.value_maps[static_cast<size_t>(v)].at(a.at(nm));
            }
            const bool orig = evaluate(csp, a).is_solution;
            REQUIRE(orig == evaluate(res.normalized, mapped).is_solution);
            if (orig) {
                ++solutions;
                REQUIRE(denormalize(mapped, csp, res.value_maps) == a);
            }
        });
        (void)solutions;
    }
}

TEST_CASE("instance validation", "[csp]") {
    REQUIRE_THROWS_WITH(CspInstance({var("x", std::vector<Value>{})}, {}),
                        Catch::Matchers::ContainsSubstring("empty domain"));
    REQUIRE_THROWS_WITH(CspInstance({var("x", 1, 2)}, {alldiff("c", {"x"})}),
                        Catch::Matchers::ContainsSubstring("degenerate scope"));
    REQUIRE_THROWS_WITH(CspInstance({var("x", 1, 2)}, {neq("c", "x", "x")}),
                        Catch::Matchers::ContainsSubstring("repeated scope"));
    REQUIRE_THROWS_WITH(CspInstance({var("x", 1, 2)}, {neq("c", "x", "y")}),
                        Catch::Matchers::ContainsSubstring("unknown variable"));
}

TEST_CASE("extensional lowering over the value box", "[csp]") {
    SECTION("disequality lowers to the diagonal") {
        auto f = forbidden_tuples(neq("c", "x", "y"), 2);
        REQUIRE(f == std::vector<Tuple>{{1, 1}, {2, 2}});
    }
    SECTION("allowed and forbidden complement each other") {
        auto c = allowed("c", {"x", "y"}, {{1, 1}});
        auto f = forbidden_tuples(c, 2);
        REQUIRE(f == std::vector<Tuple>{{1, 2}, {2, 1}, {2, 2}});
        auto back = allowed_tuples(forbidden("c", {"x", "y"}, f), 2);
        REQUIRE(back == std::vector<Tuple>{{1, 1}});
    }
}
