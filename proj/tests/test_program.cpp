#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "caspforge/program.hpp"

using namespace caspforge;

namespace {

struct Builder {
    GroundProgram p;

    AtomId atom(const std::string& n) { return p.add_atom(n); }

    void normal(const std::string& h, std::vector<std::string> pos,
                std::vector<std::string> neg) {
        Rule r;
        r.head = {h == "#false" ? p.bottom() : atom(h)};
        for (auto& a : pos) r.body_pos.push_back(atom(a));
        for (auto& a : neg) r.body_neg.push_back(atom(a));
        p.add_rule(std::move(r));
    }

    void choice(std::vector<std::string> heads) {
        Rule r;
        r.kind = RuleKind::Choice;
        for (auto& a : heads) r.head.push_back(atom(a));
        p.add_rule(std::move(r));
    }

    void card(const std::string& h, int bound, std::vector<std::string> pos,
              std::vector<std::string> neg) {
        Rule r;
        r.kind = RuleKind::Cardinality;
        r.head = {h == "#false" ? p.bottom() : atom(h)};
        r.bound = bound;
        for (auto& a : pos) r.body_pos.push_back(atom(a));
        for (auto& a : neg) r.body_neg.push_back(atom(a));
        p.add_rule(std::move(r));
    }

    AtomSet set(std::vector<std::string> names) {
        AtomSet out;
        for (auto& n : names) out.insert(atom(n));
        return out;
    }
};

/// Direct-definition stable-model check for extended programs: cardinality
/// rules keep their positive part with the bound lowered by the satisfied
/// negative literals, choice rules keep chosen heads. Independent of the
/// transformation under test.
bool is_stable_extended(const GroundProgram& p, const AtomSet& x) {
    if (x.contains(p.bottom())) return false;
    struct PosRule {
        AtomId head;
        int bound;
        bool card;
        std::vector<AtomId> pos;
    };
    std::vector<PosRule> prs;
    for (const auto& r : p.rules()) {
        switch (r.kind) {
            case RuleKind::Normal: {
                bool blocked = false;
                for (AtomId a : r.body_neg) blocked |= x.contains(a);
                if (!blocked) prs.push_back({r.head[0], 0, false, r.body_pos});
                break;
            }
            case RuleKind::Choice: {
                bool blocked = false;
                for (AtomId a : r.body_neg) blocked |= x.contains(a);
                if (!blocked)
                    for (AtomId h : r.head)
                        if (x.contains(h)) prs.push_back({h, 0, false, r.body_pos});
                break;
            }
            case RuleKind::Cardinality: {
                int k = r.bound;
                for (AtomId a : r.body_neg)
                    if (!x.contains(a)) --k;
                prs.push_back({r.head[0], std::max(0, k), true, r.body_pos});
                break;
            }
        }
    }
    AtomSet m;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& pr : prs) {
            if (m.contains(pr.head)) continue;
            bool fire;
            if (!pr.card) {
                fire = true;
                for (AtomId a : pr.pos) fire &= m.contains(a);
            } else {
                int cnt = 0;
                for (AtomId a : pr.pos) cnt += m.contains(a) ? 1 : 0;
                fire = cnt >= pr.bound;
            }
            if (fire) {
                m.insert(pr.head);
                changed = true;
            }
        }
    }
    return m == x;
}

/// Literal powerset enumeration over all atoms; the slow reference for the
/// search-based enumerator.
std::set<AtomSet> powerset_answer_sets(const GroundProgram& p, const AtomSet& projection) {
    GroundProgram q = transform_extended(p);
    const int n = q.atom_count();
    REQUIRE(n <= 16);
    std::set<AtomSet> out;
    for (uint32_t bits = 0; bits < (1u << n); ++bits) {
        if (bits & 1u) continue;  // falsum can never be in
        AtomSet x;
        for (int a = 0; a < n; ++a)
            if (bits & (1u << a)) x.insert(a);
        if (is_answer_set(q, x)) {
            AtomSet proj;
            for (AtomId a : x)
                if (a < p.atom_count() && projection.contains(a)) proj.insert(a);
            out.insert(proj);
        }
    }
    return out;
}

GroundProgram random_extended_program(std::mt19937& rng) {
    Builder b;
    const int natoms = 3 + static_cast<int>(rng() % 4);
    std::vector<std::string> names;
    for (int i = 0; i < natoms; ++i) names.push_back("a" + std::to_string(i));
    for (auto& n : names) b.atom(n);

    auto pick_distinct = [&](size_t count) {
        std::vector<std::string> pool = names;
        std::shuffle(pool.begin(), pool.end(), rng);
        pool.resize(std::min(count, pool.size()));
        return pool;
    };

    const int nrules = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < nrules; ++i) {
        const unsigned kind = rng() % 4;
        if (kind == 0) {
            auto lits = pick_distinct(1 + rng() % 3);
            std::string head = lits[0];
            std::vector<std::string> pos(lits.begin() + 1, lits.end());
            auto negs = pick_distinct(rng() % 3);
            b.normal(head, pos, negs);
        } else if (kind == 1) {
            b.choice(pick_distinct(1 + rng() % 3));
        } else if (kind == 2) {
            auto lits = pick_distinct(1 + rng() % 3);
            b.normal("#false", {lits.begin(), lits.end()}, pick_distinct(rng() % 2));
        } else {
            auto lits = pick_distinct(1 + rng() % 3);
            std::string head = lits[0];
            std::vector<std::string> pos(lits.begin() + 1, lits.end());
            auto negs = pick_distinct(rng() % 3);
            int maxlen = static_cast<int>(pos.size() + negs.size());
            b.card(head, static_cast<int>(rng() % static_cast<unsigned>(maxlen + 2)), pos,
                   negs);
        }
    }
    return std::move(b.p);
}

}  // namespace

TEST_CASE("reduct", "[program]") {
    SECTION("negative body absent keeps and strips the rule") {
        Builder b;
        b.normal("a", {}, {"b"});
        auto r = reduct(b.p, b.set({"a"}));
        REQUIRE(r.rules().size() == 1);
        REQUIRE(r.rules()[0].body_neg.empty());
        REQUIRE(r.rules()[0].body_pos.empty());
    }
    SECTION("negative body hit deletes the rule") {
        Builder b;
        b.normal("a", {}, {"b"});
        REQUIRE(reduct(b.p, b.set({"b"})).rules().empty());
    }
    SECTION("mixed program, order preserved") {
        Builder b;
        b.normal("a", {"b"}, {});
        b.normal("b", {}, {"c"});
        auto r = reduct(b.p, b.set({"a", "b"}));
        REQUIRE(r.rules().size() == 2);
        REQUIRE(r.rules()[0].body_pos.size() == 1);
        REQUIRE(r.rules()[1].body_pos.empty());
    }
    SECTION("extended rules are rejected") {
        Builder b;
        b.choice({"a"});
        REQUIRE_THROWS_WITH(reduct(b.p, {}),
                            Catch::Matchers::ContainsSubstring("untransformed program"));
    }
}

TEST_CASE("answer set recognition", "[program]") {
    SECTION("supported model accepted") {
        Builder b;
        b.normal("a", {}, {"b"});
        REQUIRE(is_answer_set(b.p, b.set({"a"})));
    }
    SECTION("empty set rejected when a rule fires") {
        Builder b;
        b.normal("a", {}, {"b"});
        REQUIRE_FALSE(is_answer_set(b.p, {}));
    }
    SECTION("self-support rejected") {
        Builder b;
        b.normal("a", {"a"}, {});
        REQUIRE_FALSE(is_answer_set(b.p, b.set({"a"})));
        REQUIRE(is_answer_set(b.p, {}));
    }
}

TEST_CASE("enumerating answer sets", "[program]") {
    SECTION("even loop has two answer sets") {
        Builder b;
        b.normal("a", {}, {"b"});
        b.normal("b", {}, {"a"});
        auto out = enumerate_answer_sets(b.p, b.set({"a", "b"}));
        REQUIRE(out == std::set<AtomSet>{b.set({"a"}), b.set({"b"})});
    }
    SECTION("odd loop has none") {
        Builder b;
        b.normal("a", {}, {"a"});
        REQUIRE(enumerate_answer_sets(b.p, b.set({"a"})).empty());
    }
    SECTION("choice with exclusion") {
        Builder b;
        b.choice({"a", "b"});
        b.normal("#false", {"a", "b"}, {});
        auto out = enumerate_answer_sets(b.p, b.set({"a", "b"}));
        REQUIRE(out == std::set<AtomSet>{{}, b.set({"a"}), b.set({"b"})});
    }
}

TEST_CASE("extended-rule transformation", "[program]") {
    SECTION("choice elimination gives the free guess") {
        Builder b;
        b.choice({"a"});
        auto q = transform_extended(b.p);
        REQUIRE(q.rules().size() == 2);
        auto out = enumerate_answer_sets(b.p, b.set({"a"}));
        REQUIRE(out == std::set<AtomSet>{{}, b.set({"a"})});
    }
    SECTION("bound-1 ladder equals the disjunction of its literals") {
        Builder lhs;
        lhs.choice({"a", "b"});
        lhs.card("h", 1, {"a", "b"}, {});
        Builder rhs;
        rhs.choice({"a", "b"});
        rhs.normal("h", {"a"}, {});
        rhs.normal("h", {"b"}, {});
        auto proj = lhs.set({"a", "b", "h"});
        REQUIRE(enumerate_answer_sets(lhs.p, proj) == enumerate_answer_sets(rhs.p, proj));
    }
    SECTION("bound-2 over two choice atoms requires both") {
        Builder b;
        b.choice({"a", "b"});
        b.card("h", 2, {"a", "b"}, {});
        auto out = enumerate_answer_sets(b.p, b.set({"a", "b", "h"}));
        REQUIRE(out == std::set<AtomSet>{{},
                                         b.set({"a"}),
                                         b.set({"b"}),
                                         b.set({"a", "b", "h"})});
    }
    SECTION("bound above the literal count never fires") {
        Builder b;
        b.choice({"a"});
        b.card("h", 2, {"a"}, {});
        auto out = enumerate_answer_sets(b.p, b.set({"a", "h"}));
        REQUIRE(out == std::set<AtomSet>{{}, b.set({"a"})});
    }
    SECTION("bound zero degenerates to a fact") {
        Builder b;
        b.card("h", 0, {"a"}, {});
        REQUIRE(b.p.rules()[0].kind == RuleKind::Normal);
        auto out = enumerate_answer_sets(b.p, b.set({"a", "h"}));
        REQUIRE(out == std::set<AtomSet>{b.set({"h"})});
    }
}

TEST_CASE("tightness flag", "[program]") {
    SECTION("positive self loop is not tight") {
        Builder b;
        b.normal("a", {"a"}, {});
        REQUIRE_FALSE(b.p.is_tight());
    }
    SECTION("negation breaks the cycle") {
        Builder b;
        b.normal("a", {"b"}, {});
        b.normal("b", {}, {"a"});
        REQUIRE(b.p.is_tight());
    }
    SECTION("cycles through choice-defined atoms are ignored") {
        Builder b;
        b.choice({"a"});
        b.normal("b", {"a"}, {});
        b.normal("a", {"b"}, {});
        REQUIRE(b.p.is_tight());
    }
}

TEST_CASE("transformation preserves projected answer sets", "[program][slow]") {
    std::mt19937 rng(4242);
    int nontrivial = 0;
    for (int trial = 0; trial < 200; ++trial) {
        auto p = random_extended_program(rng);
        AtomSet proj;
        for (AtomId a = 1; a < p.atom_count(); ++a) proj.insert(a);

        // direct-definition oracle over the original extended program
        std::set<AtomSet> direct;
        const int n = p.atom_count();
        for (uint32_t bits = 0; bits < (1u << n); bits += 2) {
            AtomSet x;
            for (int a = 1; a < n; ++a)
                if (bits & (1u << a)) x.insert(a);
            if (is_stable_extended(p, x)) direct.insert(x);
        }
        auto via_transform = enumerate_answer_sets(p, proj);
        REQUIRE(via_transform == direct);
        if (!direct.empty()) ++nontrivial;
    }
    REQUIRE(nontrivial > 50);
}

TEST_CASE("search enumeration equals powerset enumeration", "[program][slow]") {
    std::mt19937 rng(31337);
    for (int trial = 0; trial < 120; ++trial) {
        auto p = random_extended_program(rng);
        GroundProgram q = transform_extended(p);
        if (q.atom_count() > 16) continue;
        AtomSet proj;
        for (AtomId a = 1; a < p.atom_count(); ++a) proj.insert(a);
        REQUIRE(enumerate_answer_sets(p, proj) == powerset_answer_sets(p, proj));
    }
}
