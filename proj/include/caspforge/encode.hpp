#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "caspforge/csp.hpp"
#include "caspforge/domain_state.hpp"
#include "caspforge/program.hpp"

namespace caspforge {

enum class EncodingName { Direct, Support, Bound, Range };

struct EncodingKind {
    EncodingName name = EncodingName::Support;
    int hall_k = 0;  // Hall bound for bound/range; 0 means unbounded (k = d)
};

enum class RegionMode { Maximal, Unit };

/// A conflict region: one closed interval [l,u] per scope position. The
/// union of a constraint's regions is exactly its forbidden tuple set.
using Region = std::vector<std::pair<Value, Value>>;

inline const char* encoding_name(EncodingName k) {
    switch (k) {
        case EncodingName::Direct: return "direct";
        case EncodingName::Support: return "support";
        case EncodingName::Bound: return "bound";
        case EncodingName::Range: return "range";
    }
    return "?";
}

/// A compiled encoding: the ground program plus the vocabulary needed to
/// map between CSP domains and atoms.
struct Encoding {
    GroundProgram program;
    EncodingName kind = EncodingName::Support;
    int hall_k = 0;
    Value d = 0;

    std::vector<std::vector<AtomId>> e_atoms;  // [var][i-1]   direct/support
    std::vector<std::vector<AtomId>> b_atoms;  // [var][i-1]   bound
    std::vector<std::map<std::pair<Value, Value>, AtomId>> r_atoms;  // [var][{l,u}]
    std::map<std::string, std::pair<AtomId, AtomId>> constraint_atoms;  // id -> (sat, violate)
};

/// Reification pair for a constraint, plus the integrity rule asserting it
/// when required.
inline std::pair<AtomId, AtomId> reify(GroundProgram& p, const std::string& id,
                                       bool required = true) {
    AtomId sat = p.add_atom("sat(" + id + ")");
    AtomId violate = p.add_atom("violate(" + id + ")");
    Rule r1;
    r1.head = {sat};
    r1.body_neg = {violate};
    p.add_rule(std::move(r1));
    Rule r2;
    r2.head = {violate};
    r2.body_neg = {sat};
    p.add_rule(std::move(r2));
    if (required) {
        Rule r3;
        r3.head = {p.bottom()};
        r3.body_pos = {violate};
        p.add_rule(std::move(r3));
    }
    return {sat, violate};
}

namespace detail {

inline uint64_t region_cells(const Region& r) {
    uint64_t n = 1;
    for (auto [l, u] : r) n *= static_cast<uint64_t>(u - l + 1);
    return n;
}

/// Dense forbidden-cell lookup over [1,d]^arity.
struct ForbiddenGrid {
    int arity;
    Value d;
    std::vector<char> cells;

    ForbiddenGrid(const std::vector<Tuple>& tuples, int arity_, Value d_)
        : arity(arity_), d(d_) {
        cells.assign(static_cast<size_t>(detail::region_cells(
                         Region(static_cast<size_t>(arity), {1, d}))),
                     0);
        for (const auto& t : tuples) {
            bool inside = true;
            for (Value x : t) inside &= x >= 1 && x <= d;
            if (inside) cells[index(t)] = 1;
        }
    }

    size_t index(const Tuple& t) const {
        size_t ix = 0;
        for (Value x : t) ix = ix * static_cast<size_t>(d) + static_cast<size_t>(x - 1);
        return ix;
    }

    bool box_forbidden(const Region& box) const {
        Tuple t;
        t.reserve(static_cast<size_t>(arity));
        return box_forbidden_rec(box, t);
    }

private:
    bool box_forbidden_rec(const Region& box, Tuple& t) const {
        if (static_cast<int>(t.size()) == arity) return cells[index(t)] != 0;
        auto [l, u] = box[t.size()];
        for (Value x = l; x <= u; ++x) {
            t.push_back(x);
            bool ok = box_forbidden_rec(box, t);
            t.pop_back();
            if (!ok) return false;
        }
        return true;
    }
};

/// All intervals of [1,d] ordered by size, then lower end.
inline std::vector<std::pair<Value, Value>> intervals_by_size(Value d, Value max_size) {
    std::vector<std::pair<Value, Value>> out;
    for (Value s = 1; s <= max_size; ++s)
        for (Value l = 1; l + s - 1 <= d; ++l) out.push_back({l, l + s - 1});
    return out;
}

}  // namespace detail

/// Conflict regions covering a constraint's forbidden tuples over [1,d].
/// Maximal mode enumerates every inclusion-maximal all-forbidden box (for
/// arity <= 3; the completeness Theorems 3 and 4 rely on is exactly "every
/// forbidden hull box lies inside some emitted region"). Higher arities
/// fall back to growing one maximal box per uncovered tuple. Unit mode
/// emits one box per tuple.
inline std::vector<Region> conflict_regions(const Constraint& c, Value d,
                                            RegionMode mode = RegionMode::Maximal) {
    const auto tuples = forbidden_tuples(c, d);
    const int arity = c.arity();
    std::vector<Region> out;
    if (tuples.empty()) return out;

    if (mode == RegionMode::Unit) {
        for (const auto& t : tuples) {
            Region r;
            for (Value x : t) r.push_back({x, x});
            out.push_back(std::move(r));
        }
        return out;
    }

    if (arity > 3 && tuples.size() > 10000) throw Error("region blow-up: " + c.id);

    if (arity <= 3) {
        if (detail::box_cells(arity, d) > 1000000u) throw Error("region blow-up: " + c.id);
        detail::ForbiddenGrid grid(tuples, arity, d);
        const auto ivs = [&] {
            std::vector<std::pair<Value, Value>> v;
            for (Value l = 1; l <= d; ++l)
                for (Value u = l; u <= d; ++u) v.push_back({l, u});
            return v;
        }();
        auto maximal = [&](const Region& box) {
            for (int dim = 0; dim < arity; ++dim) {
                Region ext = box;
                if (box[static_cast<size_t>(dim)].first > 1) {
                    ext[static_cast<size_t>(dim)].first--;
                    if (grid.box_forbidden(ext)) return false;
                    ext[static_cast<size_t>(dim)].first++;
                }
                if (box[static_cast<size_t>(dim)].second < d) {
                    ext[static_cast<size_t>(dim)].second++;
                    if (grid.box_forbidden(ext)) return false;
                }
            }
            return true;
        };
        // lexicographic sweep over all boxes
        std::vector<size_t> pick(static_cast<size_t>(arity), 0);
        while (true) {
            Region box;
            for (size_t i = 0; i < pick.size(); ++i) box.push_back(ivs[pick[i]]);
            if (grid.box_forbidden(box) && maximal(box)) out.push_back(box);
            int pos = arity - 1;
            while (pos >= 0 && pick[static_cast<size_t>(pos)] + 1 == ivs.size()) {
                pick[static_cast<size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
            ++pick[static_cast<size_t>(pos)];
        }
        return out;
    }

    // arity >= 4: one maximal box grown around each uncovered tuple
    std::set<Tuple> forb(tuples.begin(), tuples.end());
    auto slice_forbidden = [&](Region box) {
        if (detail::region_cells(box) > 200000u) return false;  // stop growing
        Tuple t(box.size(), 0);
        auto rec = [&](auto&& self, size_t depth) -> bool {
            if (depth == box.size()) return forb.contains(t);
            for (Value x = box[depth].first; x <= box[depth].second; ++x) {
                t[depth] = x;
                if (!self(self, depth + 1)) return false;
            }
            return true;
        };
        return rec(rec, 0);
    };
    std::set<Tuple> covered;
    for (const auto& seed : tuples) {
        if (covered.contains(seed)) continue;
        Region box;
        for (Value x : seed) box.push_back({x, x});
        for (int dim = 0; dim < arity; ++dim) {
            while (box[static_cast<size_t>(dim)].first > 1) {
                Region ext = box;
                ext[static_cast<size_t>(dim)].first--;
                if (!slice_forbidden(ext)) break;
                box = ext;
            }
            while (box[static_cast<size_t>(dim)].second < d) {
                Region ext = box;
                ext[static_cast<size_t>(dim)].second++;
                if (!slice_forbidden(ext)) break;
                box = ext;
            }
        }
        Tuple t(box.size(), 0);
        auto mark = [&](auto&& self, size_t depth) -> void {
            if (depth == box.size()) {
                covered.insert(t);
                return;
            }
            for (Value x = box[depth].first; x <= box[depth].second; ++x) {
                t[depth] = x;
                self(self, depth + 1);
            }
        };
        mark(mark, 0);
        out.push_back(std::move(box));
    }
    return out;
}

namespace detail {

inline void require_normalized(const CspInstance& csp) {
    for (const auto& v : csp.variables())
        if (v.domain.front() < 1)
            throw Error("unnormalized instance: domain of " + v.name +
                        " has values below 1");
}

inline std::string e_name(const std::string& v, Value i) {
    return "e(" + v + "," + std::to_string(i) + ")";
}
inline std::string b_name(const std::string& v, Value i) {
    return "b(" + v + "," + std::to_string(i) + ")";
}
inline std::string r_name(const std::string& v, Value l, Value u) {
    return "r(" + v + "," + std::to_string(l) + "," + std::to_string(u) + ")";
}

/// Rules (1)-(3): choice over the value atoms, at-least-one, at-most-one.
inline void add_value_var_rules(Encoding& enc, const CspInstance& csp) {
    auto& p = enc.program;
    enc.e_atoms.assign(static_cast<size_t>(csp.var_count()), {});
    for (int v = 0; v < csp.var_count(); ++v) {
        const auto& name = csp.variable(v).name;
        auto& atoms = enc.e_atoms[static_cast<size_t>(v)];
        for (Value i = 1; i <= enc.d; ++i) atoms.push_back(p.add_atom(e_name(name, i)));
        Rule choice;
        choice.kind = RuleKind::Choice;
        choice.head = atoms;
        p.add_rule(std::move(choice));
        Rule at_least;
        at_least.head = {p.bottom()};
        at_least.body_neg = atoms;
        p.add_rule(std::move(at_least));
        Rule at_most;
        at_most.kind = RuleKind::Cardinality;
        at_most.head = {p.bottom()};
        at_most.bound = 2;
        at_most.body_pos = atoms;
        p.add_rule(std::move(at_most));
    }
}

/// Forbidden-combination rules of the direct encoding.
inline void add_forbidden_combination_rules(Encoding& enc, const CspInstance& csp,
                                            const Constraint& c) {
    auto& p = enc.program;
    auto [sat, violate] = reify(p, c.id);
    enc.constraint_atoms[c.id] = {sat, violate};
    for (const auto& t : forbidden_tuples(c, enc.d)) {
        Rule r;
        r.head = {violate};
        for (size_t i = 0; i < c.scope.size(); ++i) {
            const int v = csp.var_index(c.scope[i]);
            r.body_pos.push_back(
                enc.e_atoms[static_cast<size_t>(v)][static_cast<size_t>(t[i] - 1)]);
        }
        p.add_rule(std::move(r));
    }
}

/// Support rules of a binary constraint: one rule per ordered pair and
/// value, listing the partner values compatible with the assignment.
inline void add_support_rules(Encoding& enc, const CspInstance& csp, const Constraint& c) {
    auto& p = enc.program;
    auto [sat, violate] = reify(p, c.id);
    enc.constraint_atoms[c.id] = {sat, violate};
    for (int side = 0; side < 2; ++side) {
        const int v = csp.var_index(c.scope[static_cast<size_t>(side)]);
        const int w = csp.var_index(c.scope[static_cast<size_t>(1 - side)]);
        for (Value i = 1; i <= enc.d; ++i) {
            Rule r;
            r.head = {violate};
            r.body_pos = {
                enc.e_atoms[static_cast<size_t>(v)][static_cast<size_t>(i - 1)]};
            for (Value j = 1; j <= enc.d; ++j) {
                Value t[2];
                t[static_cast<size_t>(side)] = i;
                t[static_cast<size_t>(1 - side)] = j;
                if (constraint_satisfied(c, t))
                    r.body_neg.push_back(
                        enc.e_atoms[static_cast<size_t>(w)][static_cast<size_t>(j - 1)]);
            }
            p.add_rule(std::move(r));
        }
    }
}

}  // namespace detail

/// Direct encoding: value atoms with rules (1)-(3) and one violate rule per
/// forbidden value combination. All-different is lowered to its binary
/// decomposition first.
inline Encoding encode_direct(const CspInstance& csp, const DomainState& ds) {
    detail::require_normalized(csp);
    Encoding enc;
    enc.kind = EncodingName::Direct;
    enc.d = csp.max_value();
    detail::add_value_var_rules(enc, csp);
    for (const auto& c : csp.constraints()) {
        if (c.kind == ConstraintKind::AllDifferent) {
            for (const auto& pc : binary_decomposition(c))
                detail::add_forbidden_combination_rules(enc, csp, pc);
        } else {
            detail::add_forbidden_combination_rules(enc, csp, c);
        }
    }
    auto& p = enc.program;
    for (int v = 0; v < csp.var_count(); ++v)
        for (Value i = 1; i <= enc.d; ++i)
            if (!ds.contains(v, i)) {
                Rule r;
                r.head = {p.bottom()};
                r.body_pos = {enc.e_atoms[static_cast<size_t>(v)][static_cast<size_t>(i - 1)]};
                p.add_rule(std::move(r));
            }
    return enc;
}

/// Support encoding: value atoms with rules (1)-(3); binary constraints get
/// support rules, all-different the cardinality rules (4), and n-ary
/// extensional constraints their pairwise projections. Constraints marked
/// prefer_direct keep the direct conflict lowering.
inline Encoding encode_support(const CspInstance& csp, const DomainState& ds) {
    detail::require_normalized(csp);
    Encoding enc;
    enc.kind = EncodingName::Support;
    enc.d = csp.max_value();
    detail::add_value_var_rules(enc, csp);
    auto& p = enc.program;
    for (const auto& c : csp.constraints()) {
        if (c.kind == ConstraintKind::AllDifferent) {
            auto [sat, violate] = reify(p, c.id);
            enc.constraint_atoms[c.id] = {sat, violate};
            for (Value i = 1; i <= enc.d; ++i) {
                Rule r;  // (4)
                r.kind = RuleKind::Cardinality;
                r.head = {violate};
                r.bound = 2;
                for (const auto& s : c.scope) {
                    const int v = csp.var_index(s);
                    r.body_pos.push_back(
                        enc.e_atoms[static_cast<size_t>(v)][static_cast<size_t>(i - 1)]);
                }
                p.add_rule(std::move(r));
            }
        } else if (c.prefer_direct || c.arity() == 1) {
            detail::add_forbidden_combination_rules(enc, csp, c);
        } else if (c.arity() == 2) {
            detail::add_support_rules(enc, csp, c);
        } else {
            const auto allowed = allowed_tuples(c, enc.d);
            for (size_t a = 0; a < c.scope.size(); ++a)
                for (size_t b = a + 1; b < c.scope.size(); ++b) {
                    Constraint proj;
                    proj.id = c.id + "#" + c.scope[a] + "#" + c.scope[b];
                    proj.scope = {c.scope[a], c.scope[b]};
                    proj.kind = ConstraintKind::ExtensionalAllowed;
                    for (const auto& t : allowed) proj.tuples.push_back({t[a], t[b]});
                    sort_tuples(proj.tuples);
                    detail::add_support_rules(enc, csp, proj);
                }
        }
    }
    for (int v = 0; v < csp.var_count(); ++v)
        for (Value i = 1; i <= enc.d; ++i)
            if (!ds.contains(v, i)) {
                Rule r;
                r.head = {p.bottom()};
                r.body_pos = {enc.e_atoms[static_cast<size_t>(v)][static_cast<size_t>(i - 1)]};
                p.add_rule(std::move(r));
            }
    return enc;
}

/// Range encoding: interval atoms r(v,l,u) with rules (5)-(7), conflict
/// region rules for extensional constraints, and the Hall counting rules
/// (8) for all-different restricted to intervals of size <= k.
inline Encoding encode_range(const CspInstance& csp, const DomainState& ds, int hall_k = 0,
                             RegionMode mode = RegionMode::Maximal) {
    detail::require_normalized(csp);
    Encoding enc;
    enc.kind = EncodingName::Range;
    enc.d = csp.max_value();
    enc.hall_k = (hall_k <= 0 || hall_k > enc.d) ? enc.d : hall_k;
    auto& p = enc.program;
    enc.r_atoms.assign(static_cast<size_t>(csp.var_count()), {});

    const auto all_ivs = detail::intervals_by_size(enc.d, enc.d);
    for (int v = 0; v < csp.var_count(); ++v) {
        const auto& name = csp.variable(v).name;
        auto& table = enc.r_atoms[static_cast<size_t>(v)];
        for (auto [l, u] : all_ivs) table[{l, u}] = p.add_atom(detail::r_name(name, l, u));
        for (auto [l, u] : all_ivs) {  // (5)
            Rule r;
            r.head = {table.at({l, u})};
            if (l >= 2) r.body_neg.push_back(table.at({1, l - 1}));
            if (u <= enc.d - 1) r.body_neg.push_back(table.at({u + 1, enc.d}));
            p.add_rule(std::move(r));
        }
        for (auto [l, u] : all_ivs)  // (6)
            if (l >= 2) {
                Rule r;
                r.head = {p.bottom()};
                r.body_pos = {table.at({l, u})};
                r.body_neg = {table.at({l - 1, u})};
                p.add_rule(std::move(r));
            }
        for (auto [l, u] : all_ivs)  // (7)
            if (u <= enc.d - 1) {
                Rule r;
                r.head = {p.bottom()};
                r.body_pos = {table.at({l, u})};
                r.body_neg = {table.at({l, u + 1})};
                p.add_rule(std::move(r));
            }
    }

    for (const auto& c : csp.constraints()) {
        auto [sat, violate] = reify(p, c.id);
        enc.constraint_atoms[c.id] = {sat, violate};
        if (c.kind == ConstraintKind::AllDifferent) {
            for (auto [l, u] : detail::intervals_by_size(enc.d, static_cast<Value>(enc.hall_k))) {
                Rule r;  // (8)
                r.kind = RuleKind::Cardinality;
                r.head = {violate};
                r.bound = u - l + 2;
                for (const auto& s : c.scope) {
                    const int v = csp.var_index(s);
                    r.body_pos.push_back(enc.r_atoms[static_cast<size_t>(v)].at({l, u}));
                }
                p.add_rule(std::move(r));
            }
        } else {
            const auto regions =
                conflict_regions(c, enc.d, c.prefer_direct ? RegionMode::Unit : mode);
            for (const auto& region : regions) {
                Rule r;
                r.head = {violate};
                for (size_t i = 0; i < c.scope.size(); ++i) {
                    const int v = csp.var_index(c.scope[i]);
                    r.body_pos.push_back(
                        enc.r_atoms[static_cast<size_t>(v)].at(region[i]));
                }
                p.add_rule(std::move(r));
            }
        }
    }

    for (int v = 0; v < csp.var_count(); ++v)
        for (Value i = 1; i <= enc.d; ++i)
            if (!ds.contains(v, i)) {
                Rule r;
                r.head = {p.bottom()};
                r.body_pos = {enc.r_atoms[static_cast<size_t>(v)].at({i, i})};
                p.add_rule(std::move(r));
            }
    return enc;
}

/// Bound encoding: order atoms b(v,i) with rules (9)-(11), conflict regions
/// in the order vocabulary, and for all-different the linked interval atoms
/// (12)-(14) feeding the counting rules (8).
inline Encoding encode_bound(const CspInstance& csp, const DomainState& ds, int hall_k = 0,
                             RegionMode mode = RegionMode::Maximal) {
    detail::require_normalized(csp);
    Encoding enc;
    enc.kind = EncodingName::Bound;
    enc.d = csp.max_value();
    enc.hall_k = (hall_k <= 0 || hall_k > enc.d) ? enc.d : hall_k;
    auto& p = enc.program;
    enc.b_atoms.assign(static_cast<size_t>(csp.var_count()), {});
    enc.r_atoms.assign(static_cast<size_t>(csp.var_count()), {});

    for (int v = 0; v < csp.var_count(); ++v) {
        const auto& name = csp.variable(v).name;
        auto& atoms = enc.b_atoms[static_cast<size_t>(v)];
        for (Value i = 1; i <= enc.d; ++i) atoms.push_back(p.add_atom(detail::b_name(name, i)));
        Rule choice;  // (9)
        choice.kind = RuleKind::Choice;
        choice.head = atoms;
        p.add_rule(std::move(choice));
        for (Value i = 1; i <= enc.d - 1; ++i) {  // (10)
            Rule r;
            r.head = {p.bottom()};
            r.body_pos = {atoms[static_cast<size_t>(i - 1)]};
            r.body_neg = {atoms[static_cast<size_t>(i)]};
            p.add_rule(std::move(r));
        }
        Rule last;  // (11)
        last.head = {p.bottom()};
        last.body_neg = {atoms[static_cast<size_t>(enc.d - 1)]};
        p.add_rule(std::move(last));
    }

    auto link_interval = [&](int v, Value l, Value u) -> AtomId {
        auto& table = enc.r_atoms[static_cast<size_t>(v)];
        auto it = table.find({l, u});
        if (it != table.end()) return it->second;
        const auto& name = csp.variable(v).name;
        const auto& b = enc.b_atoms[static_cast<size_t>(v)];
        AtomId ra = p.add_atom(detail::r_name(name, l, u));
        table[{l, u}] = ra;
        Rule def;  // (12)
        def.head = {ra};
        def.body_pos = {b[static_cast<size_t>(u - 1)]};
        if (l >= 2) def.body_neg = {b[static_cast<size_t>(l - 2)]};
        p.add_rule(std::move(def));
        if (l >= 2) {
            Rule lo;  // (13)
            lo.head = {p.bottom()};
            lo.body_pos = {ra, b[static_cast<size_t>(l - 2)]};
            p.add_rule(std::move(lo));
        }
        Rule hi;  // (14)
        hi.head = {p.bottom()};
        hi.body_pos = {ra};
        hi.body_neg = {b[static_cast<size_t>(u - 1)]};
        p.add_rule(std::move(hi));
        return ra;
    };

    for (const auto& c : csp.constraints()) {
        auto [sat, violate] = reify(p, c.id);
        enc.constraint_atoms[c.id] = {sat, violate};
        if (c.kind == ConstraintKind::AllDifferent) {
            const auto ivs =
                detail::intervals_by_size(enc.d, static_cast<Value>(enc.hall_k));
            for (const auto& s : c.scope)
                for (auto [l, u] : ivs) link_interval(csp.var_index(s), l, u);
            for (auto [l, u] : ivs) {
                Rule r;  // (8)
                r.kind = RuleKind::Cardinality;
                r.head = {violate};
                r.bound = u - l + 2;
                for (const auto& s : c.scope)
                    r.body_pos.push_back(
                        enc.r_atoms[static_cast<size_t>(csp.var_index(s))].at({l, u}));
                p.add_rule(std::move(r));
            }
        } else {
            const auto regions =
                conflict_regions(c, enc.d, c.prefer_direct ? RegionMode::Unit : mode);
            for (const auto& region : regions) {
                Rule r;
                r.head = {violate};
                for (size_t i = 0; i < c.scope.size(); ++i) {
                    const auto& b = enc.b_atoms[static_cast<size_t>(csp.var_index(c.scope[i]))];
                    r.body_pos.push_back(b[static_cast<size_t>(region[i].second - 1)]);
                }
                for (size_t i = 0; i < c.scope.size(); ++i) {
                    if (region[i].first < 2) continue;  // not b(v,0) is vacuous
                    const auto& b = enc.b_atoms[static_cast<size_t>(csp.var_index(c.scope[i]))];
                    r.body_neg.push_back(b[static_cast<size_t>(region[i].first - 2)]);
                }
                p.add_rule(std::move(r));
            }
        }
    }

    for (int v = 0; v < csp.var_count(); ++v) {
        const auto& b = enc.b_atoms[static_cast<size_t>(v)];
        if (ds.empty(v)) {
            Rule r;  // no value left: derive falsum outright
            r.head = {p.bottom()};
            p.add_rule(std::move(r));
            continue;
        }
        const Value lo = ds.min(v), hi = ds.max(v);
        if (lo > 1) {
            Rule r;
            r.head = {p.bottom()};
            r.body_pos = {b[static_cast<size_t>(lo - 2)]};
            p.add_rule(std::move(r));
        }
        if (hi < enc.d) {
            Rule r;
            r.head = {p.bottom()};
            r.body_neg = {b[static_cast<size_t>(hi - 1)]};
            p.add_rule(std::move(r));
        }
    }
    return enc;
}

inline Encoding encode(const CspInstance& csp, const DomainState& ds, EncodingKind kind,
                       RegionMode mode = RegionMode::Maximal) {
    switch (kind.name) {
        case EncodingName::Direct: return encode_direct(csp, ds);
        case EncodingName::Support: return encode_support(csp, ds);
        case EncodingName::Bound: return encode_bound(csp, ds, kind.hall_k, mode);
        case EncodingName::Range: return encode_range(csp, ds, kind.hall_k, mode);
    }
    throw Error("unknown encoding");
}

}  // namespace caspforge
