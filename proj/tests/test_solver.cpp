#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "caspforge/generators.hpp"
#include "caspforge/solver.hpp"
#include "helpers.hpp"

using namespace caspforge;
using namespace test_helpers;

namespace {

AtomSet true_program_atoms(const SolveResult& r, const CompiledStore& st) {
    AtomSet x;
    for (AtomId a = 1; a < st.program_atom_count; ++a)
        if (r.model[static_cast<size_t>(a)] == Truth::True) x.insert(a);
    return x;
}

/// Checks that the solver model, restricted to program atoms, extends to an
/// answer set of the transformed program. Fresh atoms are functionally
/// determined: the complement guesses flip their source atom, the ladder
/// atoms count.
bool model_is_answer_set(const GroundProgram& p, const AtomSet& x) {
    GroundProgram q = transform_extended(p);
    std::set<AtomId> negs;
    for (const auto& r : q.rules())
        for (AtomId a : r.body_neg) negs.insert(a);
    AtomSet negdec;
    for (AtomId a : negs) {
        if (a < p.atom_count()) {
            if (x.contains(a)) negdec.insert(a);
            continue;
        }
        // fresh negative atoms have a unique definition f <- not h
        bool found = false;
        for (const auto& r : q.rules()) {
            if (r.kind != RuleKind::Normal || r.head[0] != a) continue;
            REQUIRE(r.body_pos.empty());
            REQUIRE(r.body_neg.size() == 1);
            REQUIRE(r.body_neg[0] < p.atom_count());
            if (!x.contains(r.body_neg[0])) negdec.insert(a);
            found = true;
            break;
        }
        REQUIRE(found);
    }
    AtomSet y = least_model(reduct(q, negdec));
    if (!is_answer_set(q, y)) return false;
    AtomSet yproj;
    for (AtomId a : y)
        if (a < p.atom_count()) yproj.insert(a);
    return yproj == x;
}

}  // namespace

TEST_CASE("pigeonhole is unsat under every encoding", "[solver]") {
    auto csp = gen_pigeonhole(3);
    for (auto name : {EncodingName::Direct, EncodingName::Support, EncodingName::Bound,
                      EncodingName::Range}) {
        auto enc = encode(csp, DomainState::full(csp), {name, 0});
        auto st = compile(enc.program);
        auto r = solve(st);
        INFO(encoding_name(name));
        REQUIRE(r.status == SolveStatus::Unsat);
    }
}

TEST_CASE("bound encoding refutes pigeonhole by propagation alone", "[solver]") {
    auto csp = gen_pigeonhole(3);
    auto enc = encode_bound(csp, DomainState::full(csp));
    auto out = unit_propagate(compile(enc.program), {});
    REQUIRE(out.status == PropagationOutcome::Status::Conflict);
    auto r = solve(compile(enc.program));
    REQUIRE(r.status == SolveStatus::Unsat);
    REQUIRE(r.stats.decisions == 0);
}

TEST_CASE("a fully preassigned latin square solves forced", "[solver]") {
    // rows of the cyclic square of order 3
    std::vector<VariableDecl> vars;
    Value grid[3][3] = {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}};
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            vars.push_back(var("c" + std::to_string(i) + "_" + std::to_string(j),
                               {grid[i - 1][j - 1]}));
    std::vector<Constraint> cons;
    for (int i = 1; i <= 3; ++i) {
        std::vector<std::string> row, col;
        for (int j = 1; j <= 3; ++j) {
            row.push_back("c" + std::to_string(i) + "_" + std::to_string(j));
            col.push_back("c" + std::to_string(j) + "_" + std::to_string(i));
        }
        cons.push_back(alldiff("r" + std::to_string(i), row));
        cons.push_back(alldiff("k" + std::to_string(i), col));
    }
    CspInstance csp(vars, cons);
    auto enc = encode_support(csp, DomainState::full(csp));
    auto st = compile(enc.program);
    auto r = solve(st);
    REQUIRE(r.status == SolveStatus::Sat);
    auto a = extract_solution(r.model, enc, csp);
    REQUIRE(evaluate(csp, a).is_solution);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            REQUIRE(a.at("c" + std::to_string(i) + "_" + std::to_string(j)) ==
                    grid[i - 1][j - 1]);
}

TEST_CASE("solution extraction per vocabulary", "[solver]") {
    SECTION("value vocabulary needs exactly one true atom") {
        CspInstance csp({var("v", 1, 3)}, {});
        auto enc = encode_support(csp, DomainState::full(csp));
        std::vector<Truth> model(8, Truth::False);
        model[static_cast<size_t>(enc.e_atoms[0][1])] = Truth::True;
        REQUIRE(extract_solution(model, enc, csp).at("v") == 2);
        model[static_cast<size_t>(enc.e_atoms[0][2])] = Truth::True;
        REQUIRE_THROWS_WITH(extract_solution(model, enc, csp),
                            Catch::Matchers::ContainsSubstring("not a model"));
    }
    SECTION("bound vocabulary reads the least true step") {
        CspInstance csp({var("v", 1, 4)}, {});
        auto enc = encode_bound(csp, DomainState::full(csp));
        std::vector<Truth> model(8, Truth::True);
        model[static_cast<size_t>(enc.b_atoms[0][0])] = Truth::False;
        REQUIRE(extract_solution(model, enc, csp).at("v") == 2);
    }
    SECTION("range vocabulary reads the unit interval") {
        CspInstance csp({var("v", 1, 3)}, {});
        auto enc = encode_range(csp, DomainState::full(csp));
        std::vector<Truth> model(16, Truth::False);
        model[static_cast<size_t>(enc.r_atoms[0].at({3, 3}))] = Truth::True;
        REQUIRE(extract_solution(model, enc, csp).at("v") == 3);
    }
}

TEST_CASE("solver agrees with the enumeration oracle", "[solver][slow]") {
    RandomCspOptions opt;
    opt.max_vars = 3;
    opt.max_d = 3;
    int sat_seen = 0, unsat_seen = 0;
    for (uint64_t seed = 0; seed < 50; ++seed) {
        auto csp = random_csp(7000 + seed, opt);
        for (auto name : {EncodingName::Direct, EncodingName::Support, EncodingName::Bound,
                          EncodingName::Range}) {
            auto enc = encode(csp, DomainState::full(csp), {name, 0});
            auto st = compile(enc.program);
            auto r = solve(st);
            AtomSet proj;
            for (AtomId a = 1; a < enc.program.atom_count(); ++a) proj.insert(a);
            auto sets = enumerate_answer_sets(enc.program, proj);
            INFO("seed " << seed << " encoding " << encoding_name(name));
            REQUIRE((r.status == SolveStatus::Sat) == !sets.empty());
            if (r.status == SolveStatus::Sat) {
                ++sat_seen;
                REQUIRE(model_is_answer_set(enc.program, true_program_atoms(r, st)));
                auto a = extract_solution(r.model, enc, csp);
                REQUIRE(evaluate(csp, a).is_solution);
            } else {
                ++unsat_seen;
            }
        }
    }
    REQUIRE(sat_seen > 20);
    REQUIRE(unsat_seen > 20);
}

TEST_CASE("learned nogoods are entailed", "[solver][slow]") {
    auto csp = gen_pigeonhole(5);
    auto enc = encode_support(csp, DomainState::full(csp));
    auto st = compile(enc.program);
    SolverConfig cfg;
    cfg.collect_learned = true;
    auto r = solve(st, cfg);
    REQUIRE(r.status == SolveStatus::Unsat);
    REQUIRE_FALSE(r.learned.empty());
    size_t checked = 0;
    for (const auto& ng : r.learned) {
        if (checked++ > 200) break;
        std::vector<Lit> assumptions;
        for (const Lit& l : ng) assumptions.push_back(l);
        auto out = unit_propagate(st, assumptions);
        REQUIRE(out.status == PropagationOutcome::Status::Conflict);
    }
}

TEST_CASE("identical seeds give identical runs", "[solver]") {
    auto csp = gen_qcp(4, 30, 11);
    auto enc = encode_support(csp, DomainState::full(csp));
    auto st = compile(enc.program);
    SolverConfig cfg;
    cfg.seed = 99;
    auto a = solve(st, cfg);
    auto b = solve(st, cfg);
    REQUIRE(a.status == b.status);
    REQUIRE(a.stats.decisions == b.stats.decisions);
    REQUIRE(a.stats.conflicts == b.stats.conflicts);
    REQUIRE(a.model == b.model);
}

TEST_CASE("smallest-domain heuristic solves too", "[solver]") {
    auto csp = gen_qcp(4, 20, 3);
    auto enc = encode_support(csp, DomainState::full(csp));
    auto st = compile(enc.program);
    SolverConfig cfg;
    cfg.heuristic = Heuristic::SmallestDomain;
    cfg.domain_hint = &enc;
    auto r = solve(st, cfg);
    REQUIRE(r.status == SolveStatus::Sat);
    REQUIRE(evaluate(csp, extract_solution(r.model, enc, csp)).is_solution);
}

TEST_CASE("budgets yield unknown", "[solver]") {
    auto csp = gen_pigeonhole(9);
    auto enc = encode_support(csp, DomainState::full(csp));
    auto st = compile(enc.program);
    SolverConfig cfg;
    cfg.max_conflicts = 10;
    auto r = solve(st, cfg);
    REQUIRE(r.status == SolveStatus::Unknown);
    REQUIRE(r.stats.conflicts >= 10);
}
