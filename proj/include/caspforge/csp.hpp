#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace caspforge {

using Value = int;
using Tuple = std::vector<Value>;

/// All contract violations are reported through this type. The message
/// starts with a stable token ("domain violation", "oracle too large", ...)
/// so callers can match on it without parsing prose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct VariableDecl {
    std::string name;
    std::vector<Value> domain;  // sorted ascending, unique, non-empty
};

enum class ConstraintKind {
    ExtensionalAllowed,
    ExtensionalForbidden,
    NotEqual,      // arity 2
    AllDifferent,  // arity n
};

struct Constraint {
    std::string id;
    std::vector<std::string> scope;
    ConstraintKind kind = ConstraintKind::ExtensionalAllowed;
    std::vector<Tuple> tuples;   // sorted lexicographically, unique; unused for neq/alldiff
    bool prefer_direct = false;  // encode as plain forbidden combinations under every encoding

    int arity() const { return static_cast<int>(scope.size()); }
};

inline void sort_tuples(std::vector<Tuple>& tuples) {
    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
}

inline bool has_tuple(const std::vector<Tuple>& sorted, const Tuple& t) {
    return std::binary_search(sorted.begin(), sorted.end(), t);
}

/// Does the scope-ordered value tuple satisfy the constraint relation?
inline bool constraint_satisfied(const Constraint& c, std::span<const Value> t) {
    switch (c.kind) {
        case ConstraintKind::ExtensionalAllowed:
            return std::binary_search(c.tuples.begin(), c.tuples.end(),
                                      Tuple(t.begin(), t.end()));
        case ConstraintKind::ExtensionalForbidden:
            return !std::binary_search(c.tuples.begin(), c.tuples.end(),
                                       Tuple(t.begin(), t.end()));
        case ConstraintKind::NotEqual:
            return t[0] != t[1];
        case ConstraintKind::AllDifferent:
            for (size_t i = 0; i < t.size(); ++i)
                for (size_t j = i + 1; j < t.size(); ++j)
                    if (t[i] == t[j]) return false;
            return true;
    }
    return false;
}

/// Finite-domain CSP: ordered variables with integer domains plus ordered
/// constraints. Immutable after construction; construction validates.
class CspInstance {
public:
    CspInstance() = default;

    CspInstance(std::vector<VariableDecl> vars, std::vector<Constraint> cons)
        : variables_(std::move(vars)), constraints_(std::move(cons)) {
        for (auto& v : variables_) {
            if (v.domain.empty()) throw Error("empty domain: variable " + v.name);
            std::sort(v.domain.begin(), v.domain.end());
            v.domain.erase(std::unique(v.domain.begin(), v.domain.end()), v.domain.end());
            if (!index_.emplace(v.name, static_cast<int>(index_.size())).second)
                throw Error("duplicate variable: " + v.name);
        }
        std::set<std::string> ids;
        for (auto& c : constraints_) {
            if (!c.id.empty() && !ids.insert(c.id).second)
                throw Error("duplicate constraint id: " + c.id);
            std::set<std::string> seen;
            for (const auto& s : c.scope) {
                if (!index_.contains(s))
                    throw Error("unknown variable: " + s + " in constraint " + c.id);
                if (!seen.insert(s).second)
                    throw Error("repeated scope variable: " + s + " in constraint " + c.id);
            }
            switch (c.kind) {
                case ConstraintKind::NotEqual:
                    if (c.arity() != 2) throw Error("arity mismatch: " + c.id);
                    break;
                case ConstraintKind::AllDifferent:
                    if (c.arity() < 2) throw Error("degenerate scope: " + c.id);
                    break;
                default:
                    for (const auto& t : c.tuples)
                        if (static_cast<int>(t.size()) != c.arity())
                            throw Error("arity mismatch: tuple in constraint " + c.id);
                    sort_tuples(c.tuples);
                    break;
            }
        }
    }

    const std::vector<VariableDecl>& variables() const { return variables_; }
    const std::vector<Constraint>& constraints() const { return constraints_; }

    int var_count() const { return static_cast<int>(variables_.size()); }

    int var_index(std::string_view name) const {
        auto it = index_.find(std::string(name));
        return it == index_.end() ? -1 : it->second;
    }

    const VariableDecl& variable(int i) const { return variables_[static_cast<size_t>(i)]; }

    /// d: the largest declared domain value across all variables.
    Value max_value() const {
        Value d = 0;
        for (const auto& v : variables_) d = std::max(d, v.domain.back());
        return d;
    }

private:
    std::vector<VariableDecl> variables_;
    std::vector<Constraint> constraints_;
    std::unordered_map<std::string, int> index_;
};

using Assignment = std::map<std::string, Value>;

struct EvalResult {
    std::set<std::string> satisfied;
    bool is_solution = false;
};

/// Evaluates a total assignment: which constraints hold, and whether all do.
inline EvalResult evaluate(const CspInstance& csp, const Assignment& a) {
    for (const auto& v : csp.variables()) {
        auto it = a.find(v.name);
        if (it == a.end())
            throw Error("incomplete assignment: missing " + v.name);
        if (!std::binary_search(v.domain.begin(), v.domain.end(), it->second))
            throw Error("domain violation: " + v.name + " = " + std::to_string(it->second));
    }
    EvalResult r;
    r.is_solution = true;
    for (const auto& c : csp.constraints()) {
        Tuple t;
        t.reserve(c.scope.size());
        for (const auto& s : c.scope) t.push_back(a.at(s));
        if (constraint_satisfied(c, t))
            r.satisfied.insert(c.id);
        else
            r.is_solution = false;
    }
    return r;
}

/// Splits all-different over n variables into the n(n-1)/2 pairwise
/// disequalities, one per unordered pair, with ids derived from the parent.
inline std::vector<Constraint> binary_decomposition(const Constraint& c) {
    if (c.kind != ConstraintKind::AllDifferent)
        throw Error("binary_decomposition expects all-different: " + c.id);
    if (c.arity() < 2) throw Error("degenerate scope: " + c.id);
    std::vector<Constraint> out;
    for (size_t i = 0; i < c.scope.size(); ++i)
        for (size_t j = i + 1; j < c.scope.size(); ++j) {
            Constraint d;
            d.id = c.id + "#" + c.scope[i] + "#" + c.scope[j];
            d.scope = {c.scope[i], c.scope[j]};
            d.kind = ConstraintKind::NotEqual;
            out.push_back(std::move(d));
        }
    return out;
}

namespace detail {

inline uint64_t box_cells(int arity, Value d) {
    uint64_t n = 1;
    for (int i = 0; i < arity; ++i) {
        n *= static_cast<uint64_t>(d);
        if (n > (1u << 30)) return n;  // already past any guard
    }
    return n;
}

/// Enumerates [1,d]^arity in lexicographic order, invoking f on each tuple.
template <typename F>
void for_each_box_tuple(int arity, Value d, F&& f) {
    Tuple t(static_cast<size_t>(arity), 1);
    while (true) {
        f(const_cast<const Tuple&>(t));
        int pos = arity - 1;
        while (pos >= 0 && t[static_cast<size_t>(pos)] == d) {
            t[static_cast<size_t>(pos)] = 1;
            --pos;
        }
        if (pos < 0) return;
        ++t[static_cast<size_t>(pos)];
    }
}

}  // namespace detail

namespace detail {
/// Tuples mentioning values outside [1,d] cannot occur; drop them.
inline std::vector<Tuple> clip_to_box(const std::vector<Tuple>& tuples, Value d) {
    std::vector<Tuple> out;
    for (const auto& t : tuples) {
        bool inside = true;
        for (Value x : t) inside &= x >= 1 && x <= d;
        if (inside) out.push_back(t);
    }
    return out;
}
}  // namespace detail

/// Forbidden-tuple form of a constraint over the box [1,d]^arity.
/// All-different has no bounded form and is rejected.
inline std::vector<Tuple> forbidden_tuples(const Constraint& c, Value d) {
    switch (c.kind) {
        case ConstraintKind::ExtensionalForbidden:
            return detail::clip_to_box(c.tuples, d);
        case ConstraintKind::NotEqual: {
            std::vector<Tuple> out;
            for (Value i = 1; i <= d; ++i) out.push_back({i, i});
            return out;
        }
        case ConstraintKind::ExtensionalAllowed: {
            if (detail::box_cells(c.arity(), d) > 1000000u)
                throw Error("no extensional form: " + c.id + " (complement too large)");
            std::vector<Tuple> out;
            detail::for_each_box_tuple(c.arity(), d, [&](const Tuple& t) {
                if (!has_tuple(c.tuples, t)) out.push_back(t);
            });
            return out;
        }
        case ConstraintKind::AllDifferent:
            throw Error("no extensional form: " + c.id + " (all-different)");
    }
    return {};
}

/// Allowed-tuple form over the box [1,d]^arity; dual of forbidden_tuples.
inline std::vector<Tuple> allowed_tuples(const Constraint& c, Value d) {
    switch (c.kind) {
        case ConstraintKind::ExtensionalAllowed:
            return detail::clip_to_box(c.tuples, d);
        case ConstraintKind::NotEqual: {
            std::vector<Tuple> out;
            for (Value i = 1; i <= d; ++i)
                for (Value j = 1; j <= d; ++j)
                    if (i != j) out.push_back({i, j});
            return out;
        }
        case ConstraintKind::ExtensionalForbidden: {
            if (detail::box_cells(c.arity(), d) > 1000000u)
                throw Error("no extensional form: " + c.id + " (complement too large)");
            std::vector<Tuple> out;
            detail::for_each_box_tuple(c.arity(), d, [&](const Tuple& t) {
                if (!has_tuple(c.tuples, t)) out.push_back(t);
            });
            return out;
        }
        case ConstraintKind::AllDifferent:
            throw Error("no extensional form: " + c.id + " (all-different)");
    }
    return {};
}

/// Binary view of a CSP: all-different decomposed into disequalities and
/// extensional constraints of arity >= 3 replaced by their pairwise
/// projections over [1,d]. This is the constraint set both the arc
/// consistency oracle and the support encoder operate on.
inline std::vector<Constraint> to_binary_constraints(const CspInstance& csp) {
    const Value d = csp.max_value();
    std::vector<Constraint> out;
    for (const auto& c : csp.constraints()) {
        switch (c.kind) {
            case ConstraintKind::AllDifferent: {
                auto pairs = binary_decomposition(c);
                out.insert(out.end(), pairs.begin(), pairs.end());
                break;
            }
            case ConstraintKind::NotEqual:
                out.push_back(c);
                break;
            default: {
                if (c.arity() <= 2) {
                    out.push_back(c);
                    break;
                }
                auto allowed = allowed_tuples(c, d);
                for (size_t p = 0; p < c.scope.size(); ++p)
                    for (size_t q = p + 1; q < c.scope.size(); ++q) {
                        Constraint proj;
                        proj.id = c.id + "#" + c.scope[p] + "#" + c.scope[q];
                        proj.scope = {c.scope[p], c.scope[q]};
                        proj.kind = ConstraintKind::ExtensionalAllowed;
                        for (const auto& t : allowed)
                            proj.tuples.push_back({t[p], t[q]});
                        sort_tuples(proj.tuples);
                        out.push_back(std::move(proj));
                    }
                break;
            }
        }
    }
    return out;
}

struct NormalizeResult {
    CspInstance normalized;
    /// Per original variable (csp order): declared value -> normalized value.
    std::vector<std::map<Value, Value>> value_maps;
};

/// Renames the union of all declared values order-preservingly onto [1,m]
/// so every domain becomes a subset of [1,d]. Constraint tuples are
/// rewritten through the renaming; tuples mentioning values no variable
/// declares can never match an assignment and are dropped.
inline NormalizeResult normalize(const CspInstance& csp) {
    std::set<Value> universe;
    for (const auto& v : csp.variables())
        universe.insert(v.domain.begin(), v.domain.end());
    std::map<Value, Value> rename;
    Value next = 1;
    for (Value x : universe) rename[x] = next++;

    std::vector<VariableDecl> vars;
    NormalizeResult res;
    for (const auto& v : csp.variables()) {
        VariableDecl nv{v.name, {}};
        std::map<Value, Value> vm;
        for (Value x : v.domain) {
            nv.domain.push_back(rename.at(x));
            vm[x] = rename.at(x);
        }
        vars.push_back(std::move(nv));
        res.value_maps.push_back(std::move(vm));
    }
    std::vector<Constraint> cons;
    for (const auto& c : csp.constraints()) {
        Constraint nc = c;
        nc.tuples.clear();
        for (const auto& t : c.tuples) {
            Tuple nt;
            bool mapped = true;
            for (Value x : t) {
                auto it = rename.find(x);
                if (it == rename.end()) {
                    mapped = false;
                    break;
                }
                nt.push_back(it->second);
            }
            if (mapped) nc.tuples.push_back(std::move(nt));
        }
        sort_tuples(nc.tuples);
        cons.push_back(std::move(nc));
    }
    res.normalized = CspInstance(std::move(vars), std::move(cons));
    return res;
}

/// Maps a solution of the normalized instance back to original values.
inline Assignment denormalize(const Assignment& a, const CspInstance& original,
                              const std::vector<std::map<Value, Value>>& value_maps) {
    Assignment out;
    for (int i = 0; i < original.var_count(); ++i) {
        const auto& name = original.variable(i).name;
        auto it = a.find(name);
        if (it == a.end()) continue;
        for (const auto& [orig, norm] : value_maps[static_cast<size_t>(i)])
            if (norm == it->second) {
                out[name] = orig;
                break;
            }
    }
    return out;
}

}  // namespace caspforge
