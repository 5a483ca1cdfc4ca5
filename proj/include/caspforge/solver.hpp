#pragma once

#include <chrono>
#include <cmath>
#include <random>

#include "caspforge/propagate.hpp"

namespace caspforge {

enum class SolveStatus { Sat, Unsat, Unknown };

enum class Heuristic { Activity, SmallestDomain };

struct SolverConfig {
    Heuristic heuristic = Heuristic::Activity;
    bool phase_default = false;
    int luby_unit = 256;            // restart interval multiplier, in conflicts
    size_t keep_learned_size = 4;   // learned nogoods this short are kept forever
    uint64_t seed = 0;
    uint64_t max_conflicts = 0;     // 0 = unlimited
    double max_seconds = 0.0;       // 0 = unlimited
    const Encoding* domain_hint = nullptr;  // vocabulary for SmallestDomain
    bool collect_learned = false;
};

struct SolveStats {
    uint64_t decisions = 0;
    uint64_t conflicts = 0;
    uint64_t propagations = 0;
    uint64_t restarts = 0;
    uint64_t learned = 0;
    double seconds = 0.0;
};

struct SolveResult {
    SolveStatus status = SolveStatus::Unknown;
    std::vector<Truth> model;  // total assignment when Sat
    SolveStats stats;
    std::vector<Nogood> learned;  // filled when collect_learned
};

namespace detail {

inline uint64_t luby(uint64_t i) {
    // the reluctant-doubling sequence 1 1 2 1 1 2 4 ...
    uint64_t k = 1;
    while ((1ull << (k + 1)) - 1 <= i) ++k;
    while (i + 1 != (1ull << k)) {
        i = i - (1ull << (k - 1)) + 1;
        k = 1;
        while ((1ull << (k + 1)) - 1 <= i) ++k;
    }
    return 1ull << (k - 1);
}

/// Max-heap over atom activities with lazy reinsertion.
class VarOrder {
public:
    VarOrder(int n, const std::vector<double>& act) : act_(act), pos_(static_cast<size_t>(n), -1) {
        for (AtomId a = 0; a < n; ++a) push(a);
    }

    void push(AtomId a) {
        if (pos_[static_cast<size_t>(a)] >= 0) return;
        pos_[static_cast<size_t>(a)] = static_cast<int>(heap_.size());
        heap_.push_back(a);
        up(static_cast<int>(heap_.size()) - 1);
    }

    bool empty() const { return heap_.empty(); }

    AtomId pop() {
        AtomId top = heap_[0];
        pos_[static_cast<size_t>(top)] = -1;
        heap_[0] = heap_.back();
        heap_.pop_back();
        if (!heap_.empty()) {
            pos_[static_cast<size_t>(heap_[0])] = 0;
            down(0);
        }
        return top;
    }

    void bumped(AtomId a) {
        if (pos_[static_cast<size_t>(a)] >= 0) up(pos_[static_cast<size_t>(a)]);
    }

private:
    bool less(AtomId a, AtomId b) const {
        return act_[static_cast<size_t>(a)] < act_[static_cast<size_t>(b)] ||
               (act_[static_cast<size_t>(a)] == act_[static_cast<size_t>(b)] && a > b);
    }

    void up(int i) {
        while (i > 0) {
            int p = (i - 1) / 2;
            if (!less(heap_[static_cast<size_t>(p)], heap_[static_cast<size_t>(i)])) break;
            swap_at(i, p);
            i = p;
        }
    }

    void down(int i) {
        const int n = static_cast<int>(heap_.size());
        while (true) {
            int l = 2 * i + 1, r = 2 * i + 2, best = i;
            if (l < n && less(heap_[static_cast<size_t>(best)], heap_[static_cast<size_t>(l)]))
                best = l;
            if (r < n && less(heap_[static_cast<size_t>(best)], heap_[static_cast<size_t>(r)]))
                best = r;
            if (best == i) break;
            swap_at(i, best);
            i = best;
        }
    }

    void swap_at(int i, int j) {
        std::swap(heap_[static_cast<size_t>(i)], heap_[static_cast<size_t>(j)]);
        pos_[static_cast<size_t>(heap_[static_cast<size_t>(i)])] = i;
        pos_[static_cast<size_t>(heap_[static_cast<size_t>(j)])] = j;
    }

    const std::vector<double>& act_;
    std::vector<int> pos_;
    std::vector<AtomId> heap_;
};

}  // namespace detail

/// Conflict-driven search over a compiled store: unit propagation,
/// first-UIP learning, backjumping, Luby restarts and activity-based
/// learned-nogood deletion. Deterministic for a fixed config.
inline SolveResult solve(const CompiledStore& st, const SolverConfig& cfg = {}) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    SolveResult res;
    PropagationEngine eng(st);

    const int n = st.atom_count;
    std::vector<double> activity(static_cast<size_t>(n), 0.0);
    {
        // seed-dependent jitter decides ties deterministically per seed
        std::mt19937_64 rng(cfg.seed);
        for (auto& a : activity)
            a = 1e-10 * static_cast<double>(rng() % 1024);
    }
    detail::VarOrder order(n, activity);
    std::vector<char> phase(static_cast<size_t>(n), cfg.phase_default ? 1 : 0);
    double act_inc = 1.0;

    eng.on_unassign = [&](AtomId a) { order.push(a); };

    std::vector<int> learned_ids;
    std::vector<double> learned_act;
    double learned_inc = 1.0;
    size_t reduce_threshold = 4000;

    auto bump_atom = [&](AtomId a) {
        activity[static_cast<size_t>(a)] += act_inc;
        if (activity[static_cast<size_t>(a)] > 1e100) {
            for (auto& x : activity) x *= 1e-100;
            act_inc *= 1e-100;
        }
        order.bumped(a);
    };

    auto elapsed = [&] {
        return std::chrono::duration<double>(clock::now() - t0).count();
    };

    auto finish = [&](SolveStatus status) {
        res.status = status;
        res.stats.propagations = eng.propagations();
        res.stats.seconds = elapsed();
        if (cfg.collect_learned)
            for (int id : learned_ids)
                if (!eng.nogood(id).empty()) res.learned.push_back(eng.nogood(id));
        if (status == SolveStatus::Sat) res.model = eng.assignment();
        return res;
    };

    // smallest current domain first; falls back to activity order when the
    // vocabulary is exhausted
    auto smallest_domain_decision = [&]() -> std::optional<Lit> {
        const Encoding* enc = cfg.domain_hint;
        if (!enc) return std::nullopt;
        int best_var = -1;
        int best_size = std::numeric_limits<int>::max();
        Lit best_lit{};
        const int vars = static_cast<int>(
            enc->kind == EncodingName::Bound ? enc->b_atoms.size()
            : enc->kind == EncodingName::Range ? enc->r_atoms.size()
                                               : enc->e_atoms.size());
        for (int v = 0; v < vars; ++v) {
            int size = 0;
            Lit pick{};
            bool fixed = false;
            switch (enc->kind) {
                case EncodingName::Direct:
                case EncodingName::Support: {
                    const auto& atoms = enc->e_atoms[static_cast<size_t>(v)];
                    bool have_pick = false;
                    for (AtomId a : atoms) {
                        if (eng.value(a) == Truth::True) fixed = true;
                        if (eng.value(a) != Truth::False) {
                            ++size;
                            if (!have_pick && eng.value(a) == Truth::Unknown) {
                                pick = lit_true(a);
                                have_pick = true;
                            }
                        }
                    }
                    if (!have_pick) fixed = true;
                    break;
                }
                case EncodingName::Bound: {
                    const auto& atoms = enc->b_atoms[static_cast<size_t>(v)];
                    const int d = static_cast<int>(atoms.size());
                    int lo = 1, hi = d;
                    for (int i = 1; i <= d; ++i)
                        if (eng.value(atoms[static_cast<size_t>(i - 1)]) == Truth::False)
                            lo = std::max(lo, i + 1);
                    for (int i = 1; i <= d; ++i)
                        if (eng.value(atoms[static_cast<size_t>(i - 1)]) == Truth::True) {
                            hi = i;
                            break;
                        }
                    size = hi - lo + 1;
                    if (lo <= d && eng.value(atoms[static_cast<size_t>(lo - 1)]) == Truth::Unknown)
                        pick = lit_true(atoms[static_cast<size_t>(lo - 1)]);
                    else
                        fixed = true;
                    break;
                }
                case EncodingName::Range: {
                    const auto& table = enc->r_atoms[static_cast<size_t>(v)];
                    bool have_pick = false;
                    for (const auto& [iv, a] : table) {
                        if (iv.first != iv.second) continue;
                        if (eng.value(a) != Truth::False) {
                            ++size;
                            if (!have_pick && eng.value(a) == Truth::Unknown) {
                                pick = lit_true(a);
                                have_pick = true;
                            }
                        }
                    }
                    if (!have_pick) fixed = true;
                    break;
                }
            }
            if (!fixed && size >= 1 && size < best_size) {
                best_size = size;
                best_var = v;
                best_lit = pick;
            }
        }
        if (best_var < 0) return std::nullopt;
        return best_lit;
    };

    if (auto c = eng.bootstrap()) return finish(SolveStatus::Unsat);

    uint64_t restart_count = 0;
    uint64_t conflicts_since_restart = 0;
    uint64_t restart_limit =
        detail::luby(restart_count) * static_cast<uint64_t>(cfg.luby_unit);

    while (true) {
        auto conflict = eng.propagate();
        if (conflict) {
            ++res.stats.conflicts;
            int top = 0;
            for (const Lit& l : *conflict) top = std::max(top, eng.level_of(l.atom));
            if (top == 0) return finish(SolveStatus::Unsat);
            if (top < eng.decision_level()) eng.backjump(top);

            auto ana = eng.analyze(*conflict);
            for (AtomId a : ana.involved) bump_atom(a);
            act_inc /= 0.95;

            const Lit uip = ana.learned[0];
            const int id = eng.add_learned(ana.learned);
            learned_ids.push_back(id);
            learned_act.push_back(learned_inc);
            ++res.stats.learned;
            eng.backjump(ana.backjump_level);
            eng.enqueue(complement(uip), {Reason::FromNogood, id});
            phase[static_cast<size_t>(uip.atom)] = complement(uip).want_true ? 1 : 0;

            learned_inc *= 1.05;
            if (learned_inc > 1e100) {
                for (auto& x : learned_act) x *= 1e-100;
                learned_inc *= 1e-100;
            }

            if (cfg.max_conflicts && res.stats.conflicts >= cfg.max_conflicts)
                return finish(SolveStatus::Unknown);
            if (cfg.max_seconds > 0 && (res.stats.conflicts & 1023) == 0 &&
                elapsed() > cfg.max_seconds)
                return finish(SolveStatus::Unknown);

            if (++conflicts_since_restart >= restart_limit) {
                ++restart_count;
                ++res.stats.restarts;
                conflicts_since_restart = 0;
                restart_limit =
                    detail::luby(restart_count) * static_cast<uint64_t>(cfg.luby_unit);
                eng.backjump(0);
            }

            if (learned_ids.size() >= reduce_threshold) {
                // retire the less active half, keeping short or locked ones
                std::vector<size_t> order_ix(learned_ids.size());
                for (size_t i = 0; i < order_ix.size(); ++i) order_ix[i] = i;
                std::sort(order_ix.begin(), order_ix.end(), [&](size_t a, size_t b) {
                    return learned_act[a] < learned_act[b];
                });
                size_t removed = 0;
                const size_t target = learned_ids.size() / 2;
                for (size_t ix : order_ix) {
                    if (removed >= target) break;
                    const int nid = learned_ids[ix];
                    if (eng.nogood(nid).size() <= cfg.keep_learned_size) continue;
                    if (eng.is_reason_locked(nid)) continue;
                    eng.retire_learned(nid);
                    ++removed;
                }
                std::vector<int> live_ids;
                std::vector<double> live_act;
                for (size_t i = 0; i < learned_ids.size(); ++i)
                    if (!eng.nogood(learned_ids[i]).empty()) {
                        live_ids.push_back(learned_ids[i]);
                        live_act.push_back(learned_act[i]);
                    }
                learned_ids = std::move(live_ids);
                learned_act = std::move(live_act);
                reduce_threshold *= 2;
            }
            continue;
        }

        // decision
        std::optional<Lit> decision;
        if (cfg.heuristic == Heuristic::SmallestDomain)
            decision = smallest_domain_decision();
        if (!decision) {
            while (!order.empty()) {
                AtomId a = order.pop();
                if (eng.value(a) == Truth::Unknown) {
                    decision = Lit{a, phase[static_cast<size_t>(a)] != 0};
                    break;
                }
            }
        }
        if (!decision) return finish(SolveStatus::Sat);
        ++res.stats.decisions;
        eng.new_level();
        eng.enqueue(*decision, {Reason::None, -1});
    }
}

/// Reads the CSP assignment out of a sat model of an encoding.
inline Assignment extract_solution(const std::vector<Truth>& model, const Encoding& enc,
                                   const CspInstance& csp) {
    Assignment out;
    auto truth = [&](AtomId a) { return model[static_cast<size_t>(a)]; };
    for (int v = 0; v < csp.var_count(); ++v) {
        const auto& name = csp.variable(v).name;
        switch (enc.kind) {
            case EncodingName::Direct:
            case EncodingName::Support: {
                int hits = 0;
                Value val = 0;
                for (Value i = 1; i <= enc.d; ++i)
                    if (truth(enc.e_atoms[static_cast<size_t>(v)][static_cast<size_t>(i - 1)]) ==
                        Truth::True) {
                        ++hits;
                        val = i;
                    }
                if (hits != 1) throw Error("not a model: " + name);
                out[name] = val;
                break;
            }
            case EncodingName::Bound: {
                const auto& b = enc.b_atoms[static_cast<size_t>(v)];
                Value val = 0;
                for (Value i = 1; i <= enc.d; ++i)
                    if (truth(b[static_cast<size_t>(i - 1)]) == Truth::True) {
                        val = i;
                        break;
                    }
                if (val == 0) throw Error("not a model: " + name);
                out[name] = val;
                break;
            }
            case EncodingName::Range: {
                int hits = 0;
                Value val = 0;
                for (Value i = 1; i <= enc.d; ++i)
                    if (truth(enc.r_atoms[static_cast<size_t>(v)].at({i, i})) == Truth::True) {
                        ++hits;
                        val = i;
                    }
                if (hits != 1) throw Error("not a model: " + name);
                out[name] = val;
                break;
            }
        }
    }
    return out;
}

}  // namespace caspforge
