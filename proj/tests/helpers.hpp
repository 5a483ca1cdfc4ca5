#pragma once

#include <random>
#include <string>
#include <vector>

#include "caspforge/csp.hpp"
#include "caspforge/domain_state.hpp"

namespace test_helpers {

using namespace caspforge;

inline VariableDecl var(std::string name, Value lo, Value hi) {
    std::vector<Value> dom;
    for (Value x = lo; x <= hi; ++x) dom.push_back(x);
    return {std::move(name), std::move(dom)};
}

inline VariableDecl var(std::string name, std::vector<Value> dom) {
    return {std::move(name), std::move(dom)};
}

inline Constraint neq(std::string id, std::string a, std::string b) {
    Constraint c;
    c.id = std::move(id);
    c.scope = {std::move(a), std::move(b)};
    c.kind = ConstraintKind::NotEqual;
    return c;
}

inline Constraint alldiff(std::string id, std::vector<std::string> scope) {
    Constraint c;
    c.id = std::move(id);
    c.scope = std::move(scope);
    c.kind = ConstraintKind::AllDifferent;
    return c;
}

inline Constraint allowed(std::string id, std::vector<std::string> scope,
                          std::vector<Tuple> tuples) {
    Constraint c;
    c.id = std::move(id);
    c.scope = std::move(scope);
    c.kind = ConstraintKind::ExtensionalAllowed;
    c.tuples = std::move(tuples);
    return c;
}

inline Constraint forbidden(std::string id, std::vector<std::string> scope,
                            std::vector<Tuple> tuples) {
    Constraint c;
    c.id = std::move(id);
    c.scope = std::move(scope);
    c.kind = ConstraintKind::ExtensionalForbidden;
    c.tuples = std::move(tuples);
    return c;
}

/// Enumerates every total assignment over the declared domains.
template <typename F>
void for_each_assignment(const CspInstance& csp, F&& f) {
    const int n = csp.var_count();
    std::vector<size_t> idx(static_cast<size_t>(n), 0);
    while (true) {
        Assignment a;
        for (int v = 0; v < n; ++v)
            a[csp.variable(v).name] = csp.variable(v).domain[idx[static_cast<size_t>(v)]];
        f(a);
        int pos = n - 1;
        while (pos >= 0 &&
               idx[static_cast<size_t>(pos)] + 1 == csp.variable(pos).domain.size()) {
            idx[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) return;
        ++idx[static_cast<size_t>(pos)];
    }
}

inline std::vector<Assignment> all_solutions(const CspInstance& csp) {
    std::vector<Assignment> out;
    for_each_assignment(csp, [&](const Assignment& a) {
        if (evaluate(csp, a).is_solution) out.push_back(a);
    });
    return out;
}

}  // namespace test_helpers
