#pragma once
#include <cstdlib>

#include <random>
#include <string>
#include <vector>

#include "caspforge/csp.hpp"

namespace caspforge {

/// n pigeons into n-1 holes: always unsatisfiable.
inline CspInstance gen_pigeonhole(int n) {
    if (n < 2) throw Error("pigeonhole needs n >= 2");
    std::vector<VariableDecl> vars;
    Constraint all;
    all.id = "_c1";
    all.kind = ConstraintKind::AllDifferent;
    for (int i = 1; i <= n; ++i) {
        std::vector<Value> dom;
        for (Value x = 1; x <= n - 1; ++x) dom.push_back(x);
        vars.push_back({"p" + std::to_string(i), dom});
        all.scope.push_back(vars.back().name);
    }
    return CspInstance(std::move(vars), {std::move(all)});
}

/// Quasigroup completion: n x n cells over [1,n], one all-different per row
/// and per column, with ratio% of the cells preassigned. Preassignments are
/// drawn uniformly, rejecting draws that repeat a value in a row or column;
/// a stalled draw restarts from a derived seed so the result is a pure
/// function of (n, ratio, seed).
inline CspInstance gen_qcp(int n, int ratio, uint64_t seed) {
    if (n < 1) throw Error("qcp needs n >= 1");
    if (ratio < 0 || ratio > 100) throw Error("qcp ratio must be in [0,100]");
    const int want = ratio * n * n / 100;

    std::vector<Value> fixed(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
    for (int restart = 0;; ++restart) {
        if (restart > 50) throw Error("qcp preassignment stalled");
        std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull * static_cast<uint64_t>(restart));
        std::fill(fixed.begin(), fixed.end(), 0);
        int placed = 0;
        uint64_t attempts = 0;
        const uint64_t cap = 2000ull * static_cast<uint64_t>(n) * static_cast<uint64_t>(n) + 1000;
        while (placed < want && attempts < cap) {
            ++attempts;
            const size_t cell = static_cast<size_t>(rng() % (static_cast<uint64_t>(n) *
                                                             static_cast<uint64_t>(n)));
            if (fixed[cell]) continue;
            const Value val = 1 + static_cast<Value>(rng() % static_cast<uint64_t>(n));
            const size_t row = cell / static_cast<size_t>(n);
            const size_t col = cell % static_cast<size_t>(n);
            bool clash = false;
            for (size_t j = 0; j < static_cast<size_t>(n) && !clash; ++j)
                clash = fixed[row * static_cast<size_t>(n) + j] == val ||
                        fixed[j * static_cast<size_t>(n) + col] == val;
            if (clash) continue;
            fixed[cell] = val;
            ++placed;
        }
        if (placed == want) break;
    }

    std::vector<VariableDecl> vars;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            const Value f = fixed[static_cast<size_t>(i - 1) * static_cast<size_t>(n) +
                                  static_cast<size_t>(j - 1)];
            std::vector<Value> dom;
            if (f)
                dom.push_back(f);
            else
                for (Value x = 1; x <= n; ++x) dom.push_back(x);
            vars.push_back({"c" + std::to_string(i) + "_" + std::to_string(j), dom});
        }
    std::vector<Constraint> cons;
    for (int i = 1; i <= n; ++i) {
        Constraint row;
        row.kind = ConstraintKind::AllDifferent;
        for (int j = 1; j <= n; ++j)
            row.scope.push_back("c" + std::to_string(i) + "_" + std::to_string(j));
        row.id = "_c" + std::to_string(cons.size() + 1);
        cons.push_back(std::move(row));
    }
    for (int j = 1; j <= n; ++j) {
        Constraint col;
        col.kind = ConstraintKind::AllDifferent;
        for (int i = 1; i <= n; ++i)
            col.scope.push_back("c" + std::to_string(i) + "_" + std::to_string(j));
        col.id = "_c" + std::to_string(cons.size() + 1);
        cons.push_back(std::move(col));
    }
    return CspInstance(std::move(vars), std::move(cons));
}

/// Double wheel: two n-cycles sharing a hub. Node labels range over
/// [0,4n], edge label variables over [1,4n]; each edge variable is tied to
/// its endpoints by the extensional distance relation (kept in the direct
/// conflict lowering under every encoding), and both label families carry
/// an all-different constraint.
inline CspInstance gen_graceful_double_wheel(int n) {
    if (n < 3) throw Error("double wheel needs n >= 3");
    const int edges = 4 * n;
    std::vector<VariableDecl> vars;
    std::vector<std::string> nodes;
    auto node_dom = [&] {
        std::vector<Value> dom;
        for (Value x = 0; x <= edges; ++x) dom.push_back(x);
        return dom;
    };
    nodes.push_back("h");
    vars.push_back({"h", node_dom()});
    for (int i = 1; i <= n; ++i) {
        nodes.push_back("a" + std::to_string(i));
        vars.push_back({nodes.back(), node_dom()});
    }
    for (int i = 1; i <= n; ++i) {
        nodes.push_back("b" + std::to_string(i));
        vars.push_back({nodes.back(), node_dom()});
    }

    struct Edge {
        std::string name, u, v;
    };
    std::vector<Edge> es;
    for (int i = 1; i <= n; ++i)
        es.push_back({"ea" + std::to_string(i), "a" + std::to_string(i),
                      "a" + std::to_string(i % n + 1)});
    for (int i = 1; i <= n; ++i)
        es.push_back({"eb" + std::to_string(i), "b" + std::to_string(i),
                      "b" + std::to_string(i % n + 1)});
    for (int i = 1; i <= n; ++i)
        es.push_back({"sa" + std::to_string(i), "h", "a" + std::to_string(i)});
    for (int i = 1; i <= n; ++i)
        es.push_back({"sb" + std::to_string(i), "h", "b" + std::to_string(i)});

    for (const auto& e : es) {
        std::vector<Value> dom;
        for (Value x = 1; x <= edges; ++x) dom.push_back(x);
        vars.push_back({e.name, dom});
    }

    std::vector<Constraint> cons;
    {
        Constraint c;
        c.kind = ConstraintKind::AllDifferent;
        c.scope = nodes;
        c.id = "_c1";
        cons.push_back(std::move(c));
    }
    {
        Constraint c;
        c.kind = ConstraintKind::AllDifferent;
        for (const auto& e : es) c.scope.push_back(e.name);
        c.id = "_c2";
        cons.push_back(std::move(c));
    }
    for (const auto& e : es) {
        Constraint c;
        c.kind = ConstraintKind::ExtensionalAllowed;
        c.id = "dist_" + e.name;
        c.scope = {e.u, e.v, e.name};
        c.prefer_direct = true;
        for (Value x = 0; x <= edges; ++x)
            for (Value y = 0; y <= edges; ++y)
                if (x != y) c.tuples.push_back({x, y, std::abs(x - y)});
        cons.push_back(std::move(c));
    }
    return CspInstance(std::move(vars), std::move(cons));
}

/// The instance distribution the theorem suites run on: a few variables
/// with random sub-domains of [1,d] and a mix of binary extensional,
/// disequality and all-different constraints.
struct RandomCspOptions {
    int min_vars = 2, max_vars = 5;
    Value min_d = 2, max_d = 5;
    int max_constraints = 3;
    bool with_alldiff = true;
    bool with_extensional = true;
    unsigned hole_one_in = 4;  // P(drop value) = 1/hole_one_in
};

inline CspInstance random_csp(uint64_t seed, const RandomCspOptions& opt = {}) {
    std::mt19937_64 rng(seed);
    const int n = opt.min_vars +
                  static_cast<int>(rng() % static_cast<uint64_t>(opt.max_vars - opt.min_vars + 1));
    const Value d = opt.min_d +
                    static_cast<Value>(rng() % static_cast<uint64_t>(opt.max_d - opt.min_d + 1));
    std::vector<VariableDecl> vars;
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) {
        names.push_back("x" + std::to_string(i));
        std::vector<Value> dom;
        for (Value x = 1; x <= d; ++x)
            if (opt.hole_one_in == 0 || rng() % opt.hole_one_in != 0) dom.push_back(x);
        if (dom.empty()) dom.push_back(1 + static_cast<Value>(rng() % static_cast<uint64_t>(d)));
        vars.push_back({names.back(), dom});
    }
    std::vector<Constraint> cons;
    const int m = 1 + static_cast<int>(rng() % static_cast<uint64_t>(opt.max_constraints));
    for (int k = 0; k < m; ++k) {
        const std::string id = "c" + std::to_string(k);
        unsigned kind = static_cast<unsigned>(rng() % 4);
        if (!opt.with_alldiff && kind == 0) kind = 2;
        if (!opt.with_extensional && kind >= 2) kind = 1;
        if (kind == 0) {
            std::vector<std::string> scope = names;
            std::shuffle(scope.begin(), scope.end(), rng);
            scope.resize(2 + static_cast<size_t>(rng() % static_cast<uint64_t>(n - 1)));
            Constraint c;
            c.kind = ConstraintKind::AllDifferent;
            c.id = id;
            c.scope = scope;
            cons.push_back(std::move(c));
        } else if (kind == 1) {
            size_t a = rng() % names.size(), b = rng() % names.size();
            if (a == b) b = (b + 1) % names.size();
            Constraint c;
            c.kind = ConstraintKind::NotEqual;
            c.id = id;
            c.scope = {names[a], names[b]};
            cons.push_back(std::move(c));
        } else {
            size_t a = rng() % names.size(), b = rng() % names.size();
            if (a == b) b = (b + 1) % names.size();
            Constraint c;
            c.kind = kind == 2 ? ConstraintKind::ExtensionalAllowed
                               : ConstraintKind::ExtensionalForbidden;
            c.id = id;
            c.scope = {names[a], names[b]};
            for (Value x = 1; x <= d; ++x)
                for (Value y = 1; y <= d; ++y)
                    if (rng() % 2) c.tuples.push_back({x, y});
            cons.push_back(std::move(c));
        }
    }
    return CspInstance(std::move(vars), std::move(cons));
}

}  // namespace caspforge
