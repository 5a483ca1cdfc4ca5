#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "caspforge/csp.hpp"

namespace caspforge {

using AtomId = int;

enum class RuleKind { Normal, Choice, Cardinality };

struct Rule {
    RuleKind kind = RuleKind::Normal;
    std::vector<AtomId> head;  // singleton unless choice; {bottom} for integrity
    int bound = 0;             // cardinality only; may exceed the literal count (never fires)
    std::vector<AtomId> body_pos;
    std::vector<AtomId> body_neg;
};

/// Ground logic program over an interned atom table. Atom 0 is the
/// reserved falsum; rules with head 0 are integrity constraints.
class GroundProgram {
public:
    GroundProgram() { add_atom("#false"); }

    AtomId bottom() const { return 0; }

    AtomId add_atom(const std::string& name) {
        auto it = index_.find(name);
        if (it != index_.end()) return it->second;
        AtomId id = static_cast<AtomId>(names_.size());
        names_.push_back(name);
        index_.emplace(name, id);
        return id;
    }

    /// Interns `name`, appending underscores until it is new. Used for
    /// deterministically generated auxiliary atoms.
    AtomId add_fresh_atom(std::string name) {
        while (index_.contains(name)) name += "_";
        return add_atom(name);
    }

    AtomId find_atom(std::string_view name) const {
        auto it = index_.find(std::string(name));
        return it == index_.end() ? -1 : it->second;
    }

    const std::string& atom_name(AtomId a) const { return names_[static_cast<size_t>(a)]; }
    int atom_count() const { return static_cast<int>(names_.size()); }

    void add_rule(Rule r) {
        validate(r);
        // a cardinality bound of zero makes the head unconditionally true
        if (r.kind == RuleKind::Cardinality && r.bound == 0) {
            r.kind = RuleKind::Normal;
            r.body_pos.clear();
            r.body_neg.clear();
        }
        rules_.push_back(std::move(r));
    }

    const std::vector<Rule>& rules() const { return rules_; }

    bool has_extended_rules() const {
        for (const auto& r : rules_)
            if (r.kind != RuleKind::Normal) return true;
        return false;
    }

    /// No cycle through positive bodies among non-choice-defined atoms.
    bool is_tight() const {
        const int n = atom_count();
        std::vector<char> choice_defined(static_cast<size_t>(n), 0);
        for (const auto& r : rules_)
            if (r.kind == RuleKind::Choice)
                for (AtomId h : r.head) choice_defined[static_cast<size_t>(h)] = 1;
        std::vector<std::vector<AtomId>> edges(static_cast<size_t>(n));
        for (const auto& r : rules_) {
            if (r.kind == RuleKind::Choice) continue;
            for (AtomId h : r.head) {
                if (choice_defined[static_cast<size_t>(h)]) continue;
                for (AtomId b : r.body_pos)
                    if (!choice_defined[static_cast<size_t>(b)])
                        edges[static_cast<size_t>(h)].push_back(b);
            }
        }
        // iterative DFS, colors: 0 unseen, 1 on stack, 2 done
        std::vector<char> color(static_cast<size_t>(n), 0);
        for (AtomId s = 0; s < n; ++s) {
            if (color[static_cast<size_t>(s)] != 0) continue;
            std::vector<std::pair<AtomId, size_t>> stack{{s, 0}};
            color[static_cast<size_t>(s)] = 1;
            while (!stack.empty()) {
                auto& [a, i] = stack.back();
                if (i < edges[static_cast<size_t>(a)].size()) {
                    AtomId b = edges[static_cast<size_t>(a)][i++];
                    if (color[static_cast<size_t>(b)] == 1) return false;
                    if (color[static_cast<size_t>(b)] == 0) {
                        color[static_cast<size_t>(b)] = 1;
                        stack.emplace_back(b, 0);
                    }
                } else {
                    color[static_cast<size_t>(a)] = 2;
                    stack.pop_back();
                }
            }
        }
        return true;
    }

private:
    void validate(const Rule& r) const {
        auto check = [&](AtomId a) {
            if (a < 0 || a >= atom_count()) throw Error("rule references unknown atom");
        };
        if (r.head.empty()) throw Error("rule without head");
        for (AtomId a : r.head) check(a);
        for (AtomId a : r.body_pos) check(a);
        for (AtomId a : r.body_neg) check(a);
        if (r.kind != RuleKind::Choice && r.head.size() != 1)
            throw Error("non-choice rule needs a singleton head");
        if (r.kind == RuleKind::Cardinality && r.bound < 0)
            throw Error("negative cardinality bound");
    }

    std::vector<std::string> names_;
    std::unordered_map<std::string, AtomId> index_;
    std::vector<Rule> rules_;
};

using AtomSet = std::set<AtomId>;

/// The positive program P^X: rules whose negative body avoids X, with the
/// negative body stripped. Rule order is preserved.
inline GroundProgram reduct(const GroundProgram& p, const AtomSet& x) {
    if (p.has_extended_rules()) throw Error("untransformed program");
    GroundProgram out;
    for (AtomId a = 1; a < p.atom_count(); ++a) out.add_atom(p.atom_name(a));
    for (const auto& r : p.rules()) {
        bool blocked = false;
        for (AtomId a : r.body_neg)
            if (x.contains(a)) {
                blocked = true;
                break;
            }
        if (blocked) continue;
        Rule nr;
        nr.kind = RuleKind::Normal;
        nr.head = r.head;
        nr.body_pos = r.body_pos;
        out.add_rule(std::move(nr));
    }
    return out;
}

/// Least model of a negation-free normal program (forward chaining with
/// per-rule counters).
inline AtomSet least_model(const GroundProgram& p) {
    const auto& rules = p.rules();
    std::vector<int> missing(rules.size());
    std::vector<std::vector<size_t>> watch(static_cast<size_t>(p.atom_count()));
    std::vector<char> in(static_cast<size_t>(p.atom_count()), 0);
    std::vector<AtomId> queue;
    for (size_t i = 0; i < rules.size(); ++i) {
        missing[i] = static_cast<int>(rules[i].body_pos.size());
        for (AtomId a : rules[i].body_pos) watch[static_cast<size_t>(a)].push_back(i);
        if (missing[i] == 0) {
            AtomId h = rules[i].head[0];
            if (!in[static_cast<size_t>(h)]) {
                in[static_cast<size_t>(h)] = 1;
                queue.push_back(h);
            }
        }
    }
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        for (size_t ri : watch[static_cast<size_t>(queue[qi])]) {
            if (--missing[ri] == 0) {
                AtomId h = rules[ri].head[0];
                if (!in[static_cast<size_t>(h)]) {
                    in[static_cast<size_t>(h)] = 1;
                    queue.push_back(h);
                }
            }
        }
    }
    AtomSet out;
    for (AtomId a = 0; a < p.atom_count(); ++a)
        if (in[static_cast<size_t>(a)]) out.insert(a);
    return out;
}

/// X is an answer set iff it is the least model of its own reduct and
/// does not contain falsum.
inline bool is_answer_set(const GroundProgram& p, const AtomSet& x) {
    if (x.contains(p.bottom())) return false;
    return least_model(reduct(p, x)) == x;
}

/// Rewrites choice and cardinality rules into normal rules. Choice heads
/// get the complementary-pair guess; cardinality rules become a counting
/// ladder cnt(j,m) = "at least m of the first j literals hold". Negative
/// ladder literals enter through complement atoms. Fresh atom names are
/// derived from the rule index, so the output is reproducible. Projection
/// of answer sets onto the original atoms is preserved.
inline GroundProgram transform_extended(const GroundProgram& p) {
    GroundProgram out;
    for (AtomId a = 1; a < p.atom_count(); ++a) out.add_atom(p.atom_name(a));
    const auto& rules = p.rules();
    for (size_t ri = 0; ri < rules.size(); ++ri) {
        const Rule& r = rules[ri];
        switch (r.kind) {
            case RuleKind::Normal:
                out.add_rule(r);
                break;
            case RuleKind::Choice: {
                for (size_t j = 0; j < r.head.size(); ++j) {
                    AtomId h = r.head[j];
                    AtomId prime = out.add_fresh_atom(
                        "chc(" + std::to_string(ri) + "," + std::to_string(j) + ")");
                    Rule pick;
                    pick.head = {h};
                    pick.body_pos = r.body_pos;
                    pick.body_neg = r.body_neg;
                    pick.body_neg.push_back(prime);
                    out.add_rule(std::move(pick));
                    Rule skip;
                    skip.head = {prime};
                    skip.body_neg = {h};
                    out.add_rule(std::move(skip));
                }
                break;
            }
            case RuleKind::Cardinality: {
                // literal sequence: positive atoms, then complement atoms
                std::vector<AtomId> lits = r.body_pos;
                for (size_t j = 0; j < r.body_neg.size(); ++j) {
                    AtomId na = out.add_fresh_atom(
                        "neg(" + std::to_string(ri) + "," + std::to_string(j) + ")");
                    Rule def;
                    def.head = {na};
                    def.body_neg = {r.body_neg[j]};
                    out.add_rule(std::move(def));
                    lits.push_back(na);
                }
                const int len = static_cast<int>(lits.size());
                const int k = r.bound;
                auto cnt = [&](int j, int m) {
                    return out.add_fresh_atom("cnt(" + std::to_string(ri) + "," +
                                              std::to_string(j) + "," + std::to_string(m) +
                                              ")");
                };
                std::map<std::pair<int, int>, AtomId> cnt_atoms;
                for (int j = 1; j <= len; ++j)
                    for (int m = 1; m <= std::min(j, k); ++m) cnt_atoms[{j, m}] = cnt(j, m);
                for (int j = 1; j <= len; ++j) {
                    for (int m = 1; m <= std::min(j, k); ++m) {
                        AtomId me = cnt_atoms.at({j, m});
                        if (m <= j - 1) {
                            Rule carry;
                            carry.head = {me};
                            carry.body_pos = {cnt_atoms.at({j - 1, m})};
                            out.add_rule(std::move(carry));
                        }
                        Rule take;
                        take.head = {me};
                        if (m >= 2) take.body_pos = {cnt_atoms.at({j - 1, m - 1})};
                        take.body_pos.push_back(lits[static_cast<size_t>(j - 1)]);
                        out.add_rule(std::move(take));
                    }
                }
                Rule fire;
                fire.head = r.head;
                // k > len leaves the trigger atom underivable: the rule never fires
                AtomId trigger =
                    k <= len ? cnt_atoms.at({len, k}) : cnt(len, k);
                fire.body_pos = {trigger};
                out.add_rule(std::move(fire));
                break;
            }
        }
    }
    return out;
}

/// Semantic oracle: every answer set of transform_extended(p), projected
/// onto the given atoms (names resolved in p). An answer set of a normal
/// program is fixed by its intersection with the negatively-occurring
/// atoms, so the search branches only over those, bounded above and below
/// by least models of the two extreme reducts. The node budget replaces a
/// raw atom-count guard; exceeding it raises "oracle too large".
inline std::set<AtomSet> enumerate_answer_sets(const GroundProgram& p,
                                               const AtomSet& projection,
                                               uint64_t node_budget = (1u << 22)) {
    GroundProgram q = transform_extended(p);
    const auto& rules = q.rules();
    const size_t na = static_cast<size_t>(q.atom_count());
    const size_t nr = rules.size();

    std::vector<AtomId> neg_atoms;
    {
        std::set<AtomId> negs;
        for (const auto& r : rules)
            for (AtomId a : r.body_neg) negs.insert(a);
        neg_atoms.assign(negs.begin(), negs.end());
    }
    const size_t nn = neg_atoms.size();
    std::vector<size_t> neg_pos(na, SIZE_MAX);
    for (size_t i = 0; i < nn; ++i) neg_pos[static_cast<size_t>(neg_atoms[i])] = i;

    enum : char { Undecided = 0, In = 1, Out = 2 };
    std::vector<char> decided(nn, Undecided);

    std::vector<std::vector<size_t>> watch(na);
    for (size_t ri = 0; ri < nr; ++ri)
        for (AtomId a : rules[ri].body_pos) watch[static_cast<size_t>(a)].push_back(ri);

    std::vector<int> missing(nr);
    std::vector<AtomId> queue;
    queue.reserve(na);

    // least model of the reduct where undecided negative atoms are treated
    // as `undecided_in` (true shrinks the reduct, false grows it)
    auto bound_model = [&](bool undecided_in, std::vector<char>& out) {
        out.assign(na, 0);
        queue.clear();
        for (size_t ri = 0; ri < nr; ++ri) {
            const Rule& r = rules[ri];
            bool blocked = false;
            for (AtomId a : r.body_neg) {
                char st = decided[neg_pos[static_cast<size_t>(a)]];
                if (st == In || (st == Undecided && undecided_in)) {
                    blocked = true;
                    break;
                }
            }
            missing[ri] = blocked ? -1 : static_cast<int>(r.body_pos.size());
            if (missing[ri] == 0) {
                AtomId h = r.head[0];
                if (!out[static_cast<size_t>(h)]) {
                    out[static_cast<size_t>(h)] = 1;
                    queue.push_back(h);
                }
            }
        }
        for (size_t qi = 0; qi < queue.size(); ++qi)
            for (size_t ri : watch[static_cast<size_t>(queue[qi])])
                if (missing[ri] > 0 && --missing[ri] == 0) {
                    AtomId h = rules[ri].head[0];
                    if (!out[static_cast<size_t>(h)]) {
                        out[static_cast<size_t>(h)] = 1;
                        queue.push_back(h);
                    }
                }
    };

    uint64_t nodes = 0;
    std::set<AtomSet> results;

    // recursive search with unit-style forcing from the two bounds
    auto search = [&](auto&& self) -> void {
        if (++nodes > node_budget) throw Error("oracle too large: answer set enumeration");
        std::vector<char> lo, hi;
        bound_model(true, lo);
        bound_model(false, hi);
        std::vector<size_t> touched;
        auto undo = [&] {
            for (size_t t : touched) decided[t] = Undecided;
        };
        if (lo[0]) return;  // falsum certain
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t i = 0; i < nn; ++i) {
                const size_t a = static_cast<size_t>(neg_atoms[i]);
                if (decided[i] == Undecided) {
                    if (lo[a]) {
                        decided[i] = In;
                        touched.push_back(i);
                        changed = true;
                    } else if (!hi[a]) {
                        decided[i] = Out;
                        touched.push_back(i);
                        changed = true;
                    }
                } else if ((decided[i] == In && !hi[a]) || (decided[i] == Out && lo[a])) {
                    undo();
                    return;
                }
            }
            if (changed) {
                bound_model(true, lo);
                bound_model(false, hi);
                if (lo[0]) {
                    undo();
                    return;
                }
            }
        }
        size_t branch = SIZE_MAX;
        for (size_t i = 0; i < nn; ++i)
            if (decided[i] == Undecided) {
                branch = i;
                break;
            }
        if (branch == SIZE_MAX) {
            // leaf: the reduct is fully determined; lo == hi == its least model
            bool consistent = !lo[0];
            for (size_t i = 0; consistent && i < nn; ++i)
                consistent = (lo[static_cast<size_t>(neg_atoms[i])] != 0) == (decided[i] == In);
            if (consistent) {
                AtomSet model;
                for (size_t a = 0; a < na; ++a)
                    if (lo[a]) model.insert(static_cast<AtomId>(a));
                if (is_answer_set(q, model)) {
                    AtomSet proj;
                    for (AtomId a : model)
                        if (a < p.atom_count() && projection.contains(a)) proj.insert(a);
                    results.insert(std::move(proj));
                }
            }
        } else {
            decided[branch] = In;
            self(self);
            decided[branch] = Out;
            self(self);
            decided[branch] = Undecided;
        }
        undo();
    };
    search(search);
    return results;
}

}  // namespace caspforge
