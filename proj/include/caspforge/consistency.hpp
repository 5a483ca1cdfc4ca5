#pragma once

#include <optional>
#include <vector>

#include "caspforge/csp.hpp"
#include "caspforge/domain_state.hpp"

namespace caspforge {

// Reference implementations of the local consistencies. They are written
// as literal per-value support searches, not as filtering algorithms: the
// point is to be an obviously-correct specification the encodings are
// measured against. Fixpoints iterate round-robin over constraints until
// no change; every step only removes values, so the result is confluent.

namespace detail {

inline bool find_support_rec(const Constraint& c,
                             const std::vector<const std::vector<Value>*>& candidates,
                             Tuple& t, const std::vector<size_t>& order, size_t depth,
                             size_t fixed_pos) {
    if (depth == order.size()) return constraint_satisfied(c, t);
    const size_t vi = order[depth];
    for (Value x : *candidates[vi]) {
        if (c.kind == ConstraintKind::AllDifferent) {
            // forward check: repeated values can never complete
            bool clash = x == t[fixed_pos];
            for (size_t k = 0; !clash && k < depth; ++k) clash = t[order[k]] == x;
            if (clash) continue;
        }
        t[vi] = x;
        if (find_support_rec(c, candidates, t, order, depth + 1, fixed_pos)) return true;
    }
    return false;
}

/// Depth-first search for a tuple satisfying c with position `fixed_pos`
/// pinned to `fixed_val` and every other position ranging over its
/// candidate list. This is the brute-force support search the consistency
/// definitions speak about.
inline bool find_support(const Constraint& c,
                         const std::vector<const std::vector<Value>*>& candidates,
                         size_t fixed_pos, Value fixed_val) {
    Tuple t(c.scope.size(), 0);
    t[fixed_pos] = fixed_val;
    std::vector<size_t> order;
    for (size_t i = 0; i < t.size(); ++i)
        if (i != fixed_pos) order.push_back(i);
    return find_support_rec(c, candidates, t, order, 0, fixed_pos);
}

inline std::vector<Value> interval_values(Value lo, Value hi) {
    std::vector<Value> out;
    for (Value x = lo; x <= hi; ++x) out.push_back(x);
    return out;
}

}  // namespace detail

/// Arc consistency on the binary view of the CSP (all-different decomposed
/// into pairwise disequalities, n-ary extensional constraints projected to
/// pairs). AC-3 style: drop any value without a compatible partner value,
/// repeat to fixpoint.
inline DomainState enforce_ac_binary(const CspInstance& csp, DomainState ds) {
    const auto binaries = to_binary_constraints(csp);
    bool changed = true;
    while (changed && !ds.wiped_out()) {
        changed = false;
        for (const auto& c : binaries) {
            if (c.arity() == 1) {
                const int v = csp.var_index(c.scope[0]);
                auto vals = ds.values(v);
                for (Value x : vals) {
                    Value t[1] = {x};
                    if (!constraint_satisfied(c, t)) changed |= ds.remove(v, x);
                }
                continue;
            }
            for (int side = 0; side < 2; ++side) {
                const int v = csp.var_index(c.scope[static_cast<size_t>(side)]);
                const int w = csp.var_index(c.scope[static_cast<size_t>(1 - side)]);
                auto vals = ds.values(v);
                for (Value x : vals) {
                    bool supported = false;
                    for (Value y : ds.values(w)) {
                        Value t[2];
                        t[static_cast<size_t>(side)] = x;
                        t[static_cast<size_t>(1 - side)] = y;
                        if (constraint_satisfied(c, t)) {
                            supported = true;
                            break;
                        }
                    }
                    if (!supported) changed |= ds.remove(v, x);
                }
            }
        }
    }
    return ds;
}

/// Bound consistency. The working state is each variable's interval hull;
/// an endpoint survives iff the exact endpoint value extends to a tuple
/// where every other variable ranges over its hull (a bound support).
/// Unsupported endpoints shrink the hull by one step. The input sets are
/// intersected with the final hulls at the end, so interior holes pass
/// through untouched.
inline DomainState enforce_bound(const CspInstance& csp, DomainState ds) {
    if (ds.wiped_out()) {
        ds.set_wiped();
        return ds;
    }
    const int n = csp.var_count();
    std::vector<Value> lo(static_cast<size_t>(n)), hi(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) {
        lo[static_cast<size_t>(v)] = ds.min(v);
        hi[static_cast<size_t>(v)] = ds.max(v);
    }

    auto hull_supported = [&](const Constraint& c, size_t pos, Value val) {
        std::vector<std::vector<Value>> hulls;
        std::vector<const std::vector<Value>*> cand(c.scope.size(), nullptr);
        hulls.reserve(c.scope.size());
        for (size_t i = 0; i < c.scope.size(); ++i) {
            const int w = csp.var_index(c.scope[i]);
            hulls.push_back(detail::interval_values(lo[static_cast<size_t>(w)],
                                                    hi[static_cast<size_t>(w)]));
            cand[i] = &hulls.back();
        }
        return detail::find_support(c, cand, pos, val);
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& c : csp.constraints()) {
            for (size_t pos = 0; pos < c.scope.size(); ++pos) {
                const int v = csp.var_index(c.scope[pos]);
                auto& l = lo[static_cast<size_t>(v)];
                auto& h = hi[static_cast<size_t>(v)];
                while (l <= h && !hull_supported(c, pos, l)) {
                    ++l;
                    changed = true;
                }
                while (l <= h && !hull_supported(c, pos, h)) {
                    --h;
                    changed = true;
                }
                if (l > h) {
                    ds.set_wiped();
                    return ds;
                }
            }
        }
    }
    for (int v = 0; v < n; ++v)
        ds.restrict_to(v, detail::interval_values(lo[static_cast<size_t>(v)],
                                                  hi[static_cast<size_t>(v)]));
    if (ds.wiped_out()) ds.set_wiped();
    return ds;
}

/// Range consistency: every value (interior ones included) needs a bound
/// support, i.e. a satisfying tuple with the other variables relaxed to
/// their current interval hulls.
inline DomainState enforce_range(const CspInstance& csp, DomainState ds) {
    bool changed = true;
    while (changed && !ds.wiped_out()) {
        changed = false;
        for (const auto& c : csp.constraints()) {
            for (size_t pos = 0; pos < c.scope.size(); ++pos) {
                const int v = csp.var_index(c.scope[pos]);
                auto vals = ds.values(v);
                for (Value x : vals) {
                    std::vector<std::vector<Value>> hulls;
                    std::vector<const std::vector<Value>*> cand(c.scope.size(), nullptr);
                    hulls.reserve(c.scope.size());
                    bool possible = true;
                    for (size_t i = 0; i < c.scope.size(); ++i) {
                        const int w = csp.var_index(c.scope[i]);
                        if (ds.empty(w)) {
                            possible = false;
                            break;
                        }
                        hulls.push_back(detail::interval_values(ds.min(w), ds.max(w)));
                        cand[i] = &hulls.back();
                    }
                    if (!possible || !detail::find_support(c, cand, pos, x))
                        changed |= ds.remove(v, x);
                }
            }
        }
    }
    if (ds.wiped_out()) ds.set_wiped();
    return ds;
}

/// Domain consistency: every value must extend to a satisfying tuple over
/// the actual current domains. Guarded brute force.
inline DomainState enforce_domain(const CspInstance& csp, DomainState ds) {
    bool changed = true;
    while (changed && !ds.wiped_out()) {
        changed = false;
        for (const auto& c : csp.constraints()) {
            uint64_t product = 1;
            for (const auto& s : c.scope) {
                const int w = csp.var_index(s);
                product *= std::max<uint64_t>(1, ds.values(w).size());
                if (product > 1000000u) throw Error("oracle too large: " + c.id);
            }
            for (size_t pos = 0; pos < c.scope.size(); ++pos) {
                const int v = csp.var_index(c.scope[pos]);
                auto vals = ds.values(v);
                for (Value x : vals) {
                    std::vector<const std::vector<Value>*> cand(c.scope.size(), nullptr);
                    for (size_t i = 0; i < c.scope.size(); ++i)
                        cand[i] = &ds.values(csp.var_index(c.scope[i]));
                    if (!detail::find_support(c, cand, pos, x)) changed |= ds.remove(v, x);
                }
            }
        }
    }
    if (ds.wiped_out()) ds.set_wiped();
    return ds;
}

struct HallInterval {
    Value lo = 0;
    Value hi = 0;
    std::vector<int> members;  // csp variable indexes drawn from the input list
};

/// Every interval [l,u] within [1,d] that contains the current domains of
/// exactly u-l+1 of the given variables, listed with its member set.
/// d is taken as the largest value currently present among the variables.
inline std::vector<HallInterval> hall_intervals(const DomainState& ds,
                                                const std::vector<int>& vars) {
    Value d = 0;
    for (int v : vars)
        if (!ds.empty(v)) d = std::max(d, ds.max(v));
    std::vector<HallInterval> out;
    for (Value l = 1; l <= d; ++l)
        for (Value u = l; u <= d; ++u) {
            HallInterval h{l, u, {}};
            for (int v : vars)
                if (!ds.empty(v) && ds.min(v) >= l && ds.max(v) <= u)
                    h.members.push_back(v);
            if (static_cast<Value>(h.members.size()) == u - l + 1) out.push_back(std::move(h));
        }
    return out;
}

}  // namespace caspforge
