#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "caspforge/csp.hpp"
#include "caspforge/domain_state.hpp"
#include "caspforge/encode.hpp"
#include "caspforge/program.hpp"

namespace caspforge {

enum class Truth : uint8_t { Unknown = 0, True = 1, False = 2 };

struct Lit {
    AtomId atom = 0;
    bool want_true = true;

    friend bool operator==(const Lit&, const Lit&) = default;
};

inline Lit lit_true(AtomId a) { return {a, true}; }
inline Lit lit_false(AtomId a) { return {a, false}; }
inline Lit complement(Lit l) { return {l.atom, !l.want_true}; }

/// A set of literals that must not all hold at once.
using Nogood = std::vector<Lit>;

/// Native counting constraint: body_atom holds iff at least `bound` of the
/// member literals hold.
struct CardConstraint {
    AtomId body_atom = 0;
    int bound = 0;
    std::vector<Lit> lits;
};

/// Completion of a tight ground program: nogoods plus native cardinality
/// constraints, ready for unit propagation. Immutable once built; engines
/// take private copies of the mutable parts.
struct CompiledStore {
    int atom_count = 0;          // program atoms followed by auxiliary body atoms
    int program_atom_count = 0;  // ids below this belong to the program
    std::vector<Nogood> nogoods;
    std::vector<CardConstraint> cards;

    struct CardOcc {
        int card;
        bool want_true;
    };
    std::vector<std::vector<CardOcc>> member_occs;  // per atom
    std::vector<int> beta_card;                     // per atom: card it is the body of, or -1
    std::vector<std::string> atom_names;
};

/// Clark-completion compilation. Choice-rule heads stay unconstrained,
/// integrity rules become plain nogoods, every other atom is bound to its
/// defining bodies through shared auxiliary body atoms, and cardinality
/// rules keep a native counting constraint whose body atom joins the
/// head's completion.
inline CompiledStore compile(const GroundProgram& p) {
    if (!p.is_tight()) throw Error("not tight");
    CompiledStore st;
    st.program_atom_count = p.atom_count();
    st.atom_names.reserve(static_cast<size_t>(p.atom_count()));
    for (AtomId a = 0; a < p.atom_count(); ++a) st.atom_names.push_back(p.atom_name(a));

    std::vector<char> choice_head(static_cast<size_t>(p.atom_count()), 0);
    for (const auto& r : p.rules())
        if (r.kind == RuleKind::Choice)
            for (AtomId h : r.head) choice_head[static_cast<size_t>(h)] = 1;

    std::vector<char> fact(static_cast<size_t>(p.atom_count()), 0);
    std::vector<std::vector<Lit>> bodies_of(static_cast<size_t>(p.atom_count()));

    int next_atom = p.atom_count();
    auto new_aux = [&](const std::string& name) {
        st.atom_names.push_back(name);
        return next_atom++;
    };

    struct BodyKey {
        std::vector<AtomId> pos, neg;
        auto operator<=>(const BodyKey&) const = default;
    };
    std::map<BodyKey, Lit> body_cache;

    enum class BodyKind { True, Unsat, Literal };
    struct BodyRef {
        BodyKind kind;
        Lit lit;
    };

    auto make_body = [&](const Rule& r) -> BodyRef {
        BodyKey key{r.body_pos, r.body_neg};
        std::sort(key.pos.begin(), key.pos.end());
        key.pos.erase(std::unique(key.pos.begin(), key.pos.end()), key.pos.end());
        std::sort(key.neg.begin(), key.neg.end());
        key.neg.erase(std::unique(key.neg.begin(), key.neg.end()), key.neg.end());
        for (AtomId a : key.pos)
            if (std::binary_search(key.neg.begin(), key.neg.end(), a))
                return {BodyKind::Unsat, {}};
        const size_t len = key.pos.size() + key.neg.size();
        if (len == 0) return {BodyKind::True, {}};
        if (len == 1) {
            Lit l = key.pos.empty() ? lit_false(key.neg[0]) : lit_true(key.pos[0]);
            return {BodyKind::Literal, l};
        }
        auto it = body_cache.find(key);
        if (it != body_cache.end()) return {BodyKind::Literal, it->second};
        AtomId beta = new_aux("body(" + std::to_string(body_cache.size()) + ")");
        std::vector<Lit> lits;
        for (AtomId a : key.pos) lits.push_back(lit_true(a));
        for (AtomId a : key.neg) lits.push_back(lit_false(a));
        Nogood fire{lit_false(beta)};  // body holds but beta false
        fire.insert(fire.end(), lits.begin(), lits.end());
        st.nogoods.push_back(std::move(fire));
        for (Lit l : lits) st.nogoods.push_back({lit_true(beta), complement(l)});
        Lit bl = lit_true(beta);
        body_cache.emplace(std::move(key), bl);
        return {BodyKind::Literal, bl};
    };

    st.nogoods.push_back({lit_true(p.bottom())});

    for (const auto& r : p.rules()) {
        switch (r.kind) {
            case RuleKind::Choice:
                break;  // heads are free
            case RuleKind::Normal: {
                const AtomId h = r.head[0];
                if (h == p.bottom()) {
                    Nogood ng;
                    bool unsat = false;
                    for (AtomId a : r.body_pos) ng.push_back(lit_true(a));
                    for (AtomId a : r.body_neg) ng.push_back(lit_false(a));
                    for (const Lit& l : ng)
                        for (const Lit& m : ng)
                            if (l.atom == m.atom && l.want_true != m.want_true) unsat = true;
                    if (unsat) break;
                    if (ng.empty())  // unconditional falsum
                        st.nogoods.push_back({lit_false(p.bottom())});
                    else
                        st.nogoods.push_back(std::move(ng));
                    break;
                }
                BodyRef b = make_body(r);
                if (b.kind == BodyKind::Unsat) break;
                if (b.kind == BodyKind::True) {
                    fact[static_cast<size_t>(h)] = 1;
                    break;
                }
                bodies_of[static_cast<size_t>(h)].push_back(b.lit);
                break;
            }
            case RuleKind::Cardinality: {
                const AtomId h = r.head[0];
                AtomId beta = new_aux("cardbody(" + std::to_string(st.cards.size()) + ")");
                CardConstraint cc;
                cc.body_atom = beta;
                cc.bound = r.bound;
                for (AtomId a : r.body_pos) cc.lits.push_back(lit_true(a));
                for (AtomId a : r.body_neg) cc.lits.push_back(lit_false(a));
                st.cards.push_back(std::move(cc));
                if (h == p.bottom())
                    st.nogoods.push_back({lit_true(beta)});
                else
                    bodies_of[static_cast<size_t>(h)].push_back(lit_true(beta));
                break;
            }
        }
    }

    for (AtomId a = 1; a < p.atom_count(); ++a) {
        if (choice_head[static_cast<size_t>(a)]) continue;
        if (fact[static_cast<size_t>(a)]) {
            st.nogoods.push_back({lit_false(a)});
            continue;
        }
        auto& bodies = bodies_of[static_cast<size_t>(a)];
        {  // dedupe while keeping first occurrence order
            std::vector<Lit> unique;
            for (Lit l : bodies)
                if (std::find(unique.begin(), unique.end(), l) == unique.end())
                    unique.push_back(l);
            bodies = std::move(unique);
        }
        Nogood support{lit_true(a)};
        for (Lit b : bodies) support.push_back(complement(b));
        st.nogoods.push_back(std::move(support));
        for (Lit b : bodies) st.nogoods.push_back({lit_false(a), b});
    }

    st.atom_count = next_atom;
    st.member_occs.assign(static_cast<size_t>(st.atom_count), {});
    st.beta_card.assign(static_cast<size_t>(st.atom_count), -1);
    for (size_t ci = 0; ci < st.cards.size(); ++ci) {
        st.beta_card[static_cast<size_t>(st.cards[ci].body_atom)] = static_cast<int>(ci);
        for (const Lit& l : st.cards[ci].lits)
            st.member_occs[static_cast<size_t>(l.atom)].push_back(
                {static_cast<int>(ci), l.want_true});
    }
    return st;
}

struct Reason {
    enum Kind : uint8_t {
        None,             // decision or assumption
        FromNogood,       // id indexes the engine's nogood pool
        CardBetaTrue,     // id indexes cards
        CardBetaFalse,
        CardMemberTrue,   // forced to hold because beta holds and count is tight
        CardMemberFalse,  // forced to fail because beta fails and count is at bound-1
    };
    Kind kind = None;
    int id = -1;
};

struct TrailEntry {
    Lit lit;  // the literal that holds
    Reason reason;
    int level = 0;
};

/// Watched-literal unit propagation over a CompiledStore, with decision
/// levels for the solver. One engine per propagation run; the store is
/// shared read-only.
class PropagationEngine {
public:
    explicit PropagationEngine(const CompiledStore& st)
        : store_(st),
          nogoods_(st.nogoods),
          val_(static_cast<size_t>(st.atom_count), Truth::Unknown),
          level_of_(static_cast<size_t>(st.atom_count), -1),
          pos_of_(static_cast<size_t>(st.atom_count), -1),
          watches_(2 * static_cast<size_t>(st.atom_count)),
          card_true_(st.cards.size(), 0),
          card_false_(st.cards.size(), 0),
          seen_(static_cast<size_t>(st.atom_count), 0) {
        for (int i = 0; i < static_cast<int>(nogoods_.size()); ++i) attach(i);
    }

    Truth value(AtomId a) const { return val_[static_cast<size_t>(a)]; }
    bool holds(Lit l) const {
        return value(l.atom) == (l.want_true ? Truth::True : Truth::False);
    }
    bool refuted(Lit l) const {
        return value(l.atom) == (l.want_true ? Truth::False : Truth::True);
    }
    bool unassigned(Lit l) const { return value(l.atom) == Truth::Unknown; }

    int decision_level() const { return static_cast<int>(level_starts_.size()); }
    const std::vector<TrailEntry>& trail() const { return trail_; }
    int level_of(AtomId a) const { return level_of_[static_cast<size_t>(a)]; }
    uint64_t propagations() const { return propagations_; }
    const std::vector<Truth>& assignment() const { return val_; }

    /// Asserts root facts from unit nogoods and gives every cardinality
    /// constraint an initial check (bounds beyond the literal count force
    /// their body atom false with nothing assigned). Returns a conflict if
    /// facts disagree.
    std::optional<Nogood> bootstrap() {
        for (int i = 0; i < static_cast<int>(nogoods_.size()); ++i) {
            if (nogoods_[static_cast<size_t>(i)].size() != 1) continue;
            Lit l = nogoods_[static_cast<size_t>(i)][0];
            if (!enqueue(complement(l), {Reason::FromNogood, i}))
                return conflict_;
        }
        for (int ci = 0; ci < static_cast<int>(store_.cards.size()); ++ci)
            if (!check_card(ci)) return conflict_;
        return propagate();
    }

    /// Makes `l` hold. Returns false on contradiction with the current
    /// assignment, leaving the conflicting nogood in `last_conflict()`.
    bool enqueue(Lit l, Reason r) {
        if (holds(l)) return true;
        if (refuted(l)) {
            conflict_ = materialize_reason(r, l, static_cast<int>(trail_.size()));
            if (r.kind == Reason::None) conflict_ = {l, complement(l)};
            return false;
        }
        val_[static_cast<size_t>(l.atom)] = l.want_true ? Truth::True : Truth::False;
        level_of_[static_cast<size_t>(l.atom)] = decision_level();
        pos_of_[static_cast<size_t>(l.atom)] = static_cast<int>(trail_.size());
        trail_.push_back({l, r, decision_level()});
        for (auto [ci, want] : store_.member_occs[static_cast<size_t>(l.atom)]) {
            if (want == l.want_true)
                ++card_true_[static_cast<size_t>(ci)];
            else
                ++card_false_[static_cast<size_t>(ci)];
        }
        return true;
    }

    void new_level() { level_starts_.push_back(trail_.size()); }

    void backjump(int level) {
        if (level >= decision_level()) return;
        const size_t keep = level_starts_[static_cast<size_t>(level)];
        for (size_t i = trail_.size(); i-- > keep;) {
            const Lit l = trail_[i].lit;
            val_[static_cast<size_t>(l.atom)] = Truth::Unknown;
            level_of_[static_cast<size_t>(l.atom)] = -1;
            pos_of_[static_cast<size_t>(l.atom)] = -1;
            for (auto [ci, want] : store_.member_occs[static_cast<size_t>(l.atom)]) {
                if (want == l.want_true)
                    --card_true_[static_cast<size_t>(ci)];
                else
                    --card_false_[static_cast<size_t>(ci)];
            }
            if (on_unassign) on_unassign(l.atom);
        }
        trail_.resize(keep);
        level_starts_.resize(static_cast<size_t>(level));
        qhead_ = keep;
    }

    /// Runs unit propagation to fixpoint. Returns the violated nogood on
    /// conflict.
    std::optional<Nogood> propagate() {
        while (qhead_ < trail_.size()) {
            const Lit assigned = trail_[qhead_++].lit;
            ++propagations_;
            if (!propagate_watches(assigned)) return conflict_;
            for (auto [ci, want] : store_.member_occs[static_cast<size_t>(assigned.atom)])
                if (!check_card(ci)) return conflict_;
            const int bc = store_.beta_card[static_cast<size_t>(assigned.atom)];
            if (bc >= 0 && !check_card(bc)) return conflict_;
        }
        return std::nullopt;
    }

    const Nogood& last_conflict() const { return conflict_; }

    int add_learned(Nogood ng) {
        const int id = static_cast<int>(nogoods_.size());
        nogoods_.push_back(std::move(ng));
        attach(id);
        return id;
    }

    int first_learned_id() const { return static_cast<int>(store_.nogoods.size()); }

    const Nogood& nogood(int id) const { return nogoods_[static_cast<size_t>(id)]; }

    /// Drops a learned nogood from the watch lists; the slot stays as an
    /// inert husk so ids remain stable.
    void retire_learned(int id) {
        auto& ng = nogoods_[static_cast<size_t>(id)];
        if (ng.size() >= 2) {
            detach_watch(ng[0], id);
            detach_watch(ng[1], id);
        }
        ng.clear();
        ng.shrink_to_fit();
    }

    bool is_reason_locked(int id) const {
        for (const auto& te : trail_)
            if (te.reason.kind == Reason::FromNogood && te.reason.id == id) return true;
        return false;
    }

    /// The reason nogood of a trail entry: all its literals held when the
    /// entry's literal was forced, except the entry's complement.
    Nogood reason_nogood(size_t trail_index) const {
        const TrailEntry& te = trail_[trail_index];
        return materialize_reason(te.reason, te.lit, static_cast<int>(trail_index));
    }

    struct AnalyzeResult {
        Nogood learned;       // learned[0] is the UIP literal
        int backjump_level;   // second-highest level in the learned nogood
        std::vector<AtomId> involved;
    };

    /// First-UIP conflict analysis with trail-order resolution.
    /// Precondition: the conflict's highest level equals the current
    /// decision level, which is > 0.
    AnalyzeResult analyze(const Nogood& conflict) {
        AnalyzeResult res;
        const int dl = decision_level();
        int counter = 0;
        std::vector<Lit> pending = conflict;
        size_t idx = trail_.size();
        Lit uip{};
        while (true) {
            for (Lit q : pending) {
                if (seen_[static_cast<size_t>(q.atom)]) continue;
                seen_[static_cast<size_t>(q.atom)] = 1;
                res.involved.push_back(q.atom);
                const int ql = level_of(q.atom);
                if (ql == dl)
                    ++counter;
                else if (ql > 0)
                    res.learned.push_back(q);
            }
            while (idx > 0 && !seen_[static_cast<size_t>(trail_[idx - 1].lit.atom)]) --idx;
            --idx;
            const Lit p = trail_[idx].lit;
            seen_[static_cast<size_t>(p.atom)] = 0;
            --counter;
            if (counter == 0) {
                uip = p;
                break;
            }
            Nogood r = reason_nogood(idx);
            pending.clear();
            for (Lit q : r)
                if (q.atom != p.atom) pending.push_back(q);
        }
        res.learned.insert(res.learned.begin(), uip);
        res.backjump_level = 0;
        for (size_t i = 1; i < res.learned.size(); ++i)
            res.backjump_level = std::max(res.backjump_level, level_of(res.learned[i].atom));
        for (AtomId a : res.involved) seen_[static_cast<size_t>(a)] = 0;
        return res;
    }

    /// Optional hook invoked when an atom becomes unassigned (solver heap).
    std::function<void(AtomId)> on_unassign;

private:
    static size_t lit_index(Lit l) {
        return 2 * static_cast<size_t>(l.atom) + (l.want_true ? 1 : 0);
    }

    void attach(int id) {
        const auto& ng = nogoods_[static_cast<size_t>(id)];
        if (ng.size() < 2) return;  // units handled by bootstrap / caller
        watches_[lit_index(ng[0])].push_back(id);
        watches_[lit_index(ng[1])].push_back(id);
    }

    void detach_watch(Lit l, int id) {
        auto& wl = watches_[lit_index(l)];
        for (size_t i = 0; i < wl.size(); ++i)
            if (wl[i] == id) {
                wl[i] = wl.back();
                wl.pop_back();
                return;
            }
    }

    bool propagate_watches(Lit assigned) {
        auto& wl = watches_[lit_index(assigned)];
        size_t keep = 0;
        for (size_t wi = 0; wi < wl.size(); ++wi) {
            const int id = wl[wi];
            auto& ng = nogoods_[static_cast<size_t>(id)];
            if (ng.empty()) continue;  // retired husk
            if (!(ng[0] == assigned)) std::swap(ng[0], ng[1]);
            const Lit other = ng[1];
            if (refuted(other)) {
                wl[keep++] = id;  // satisfied forever at this level
                continue;
            }
            bool moved = false;
            for (size_t k = 2; k < ng.size(); ++k) {
                if (!holds(ng[k])) {  // unknown or refuted: watchable
                    std::swap(ng[0], ng[k]);
                    watches_[lit_index(ng[0])].push_back(id);
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            // every literal but `other` holds
            wl[keep++] = id;
            if (unassigned(other)) {
                if (!enqueue(complement(other), {Reason::FromNogood, id})) {
                    for (++wi; wi < wl.size(); ++wi) wl[keep++] = wl[wi];
                    wl.resize(keep);
                    return false;
                }
            } else {  // holds: violated
                conflict_ = ng;
                for (++wi; wi < wl.size(); ++wi) wl[keep++] = wl[wi];
                wl.resize(keep);
                return false;
            }
        }
        wl.resize(keep);
        return true;
    }

    bool check_card(int ci) {
        const auto& c = store_.cards[static_cast<size_t>(ci)];
        const int t = card_true_[static_cast<size_t>(ci)];
        const int f = card_false_[static_cast<size_t>(ci)];
        const int u = static_cast<int>(c.lits.size()) - t - f;
        const Truth bv = value(c.body_atom);
        const int now = static_cast<int>(trail_.size());
        if (t >= c.bound) {
            if (bv == Truth::False) {
                conflict_ = materialize_reason({Reason::CardBetaTrue, ci},
                                               lit_true(c.body_atom), now);
                return false;
            }
            if (bv == Truth::Unknown &&
                !enqueue(lit_true(c.body_atom), {Reason::CardBetaTrue, ci}))
                return false;
        }
        if (t + u < c.bound) {
            if (bv == Truth::True) {
                conflict_ = materialize_reason({Reason::CardBetaFalse, ci},
                                               lit_false(c.body_atom), now);
                return false;
            }
            if (bv == Truth::Unknown &&
                !enqueue(lit_false(c.body_atom), {Reason::CardBetaFalse, ci}))
                return false;
        }
        if (value(c.body_atom) == Truth::True && t + u == c.bound) {
            for (const Lit& m : c.lits)
                if (unassigned(m) && !enqueue(m, {Reason::CardMemberTrue, ci})) return false;
        }
        if (value(c.body_atom) == Truth::False && t == c.bound - 1) {
            for (const Lit& m : c.lits)
                if (unassigned(m) &&
                    !enqueue(complement(m), {Reason::CardMemberFalse, ci}))
                    return false;
        }
        return true;
    }

    /// Rebuilds the nogood that forced `forced` (whose complement is a
    /// member of the result); `before` restricts to assignments made
    /// strictly earlier on the trail.
    Nogood materialize_reason(Reason r, Lit forced, int before) const {
        auto assigned_before = [&](Lit l, bool want_holding) {
            if (want_holding ? !holds(l) : !refuted(l)) return false;
            return pos_of_[static_cast<size_t>(l.atom)] < before;
        };
        switch (r.kind) {
            case Reason::None:
                return {};
            case Reason::FromNogood:
                return nogoods_[static_cast<size_t>(r.id)];
            case Reason::CardBetaTrue: {
                const auto& c = store_.cards[static_cast<size_t>(r.id)];
                Nogood ng{lit_false(c.body_atom)};
                int need = c.bound;
                for (const Lit& m : c.lits)
                    if (need > 0 && assigned_before(m, true)) {
                        ng.push_back(m);
                        --need;
                    }
                return ng;
            }
            case Reason::CardBetaFalse: {
                const auto& c = store_.cards[static_cast<size_t>(r.id)];
                Nogood ng{lit_true(c.body_atom)};
                int need = static_cast<int>(c.lits.size()) - c.bound + 1;
                for (const Lit& m : c.lits)
                    if (need > 0 && assigned_before(m, false)) {
                        ng.push_back(complement(m));
                        --need;
                    }
                return ng;
            }
            case Reason::CardMemberTrue: {
                const auto& c = store_.cards[static_cast<size_t>(r.id)];
                Nogood ng{complement(forced), lit_true(c.body_atom)};
                for (const Lit& m : c.lits)
                    if (m.atom != forced.atom && assigned_before(m, false))
                        ng.push_back(complement(m));
                return ng;
            }
            case Reason::CardMemberFalse: {
                const auto& c = store_.cards[static_cast<size_t>(r.id)];
                Nogood ng{complement(forced), lit_false(c.body_atom)};
                int need = c.bound - 1;
                for (const Lit& m : c.lits)
                    if (m.atom != forced.atom && need > 0 && assigned_before(m, true)) {
                        ng.push_back(m);
                        --need;
                    }
                return ng;
            }
        }
        return {};
    }

    const CompiledStore& store_;
    std::vector<Nogood> nogoods_;
    std::vector<Truth> val_;
    std::vector<int> level_of_;
    std::vector<int> pos_of_;
    std::vector<std::vector<int>> watches_;
    std::vector<int> card_true_, card_false_;
    std::vector<char> seen_;
    std::vector<TrailEntry> trail_;
    std::vector<size_t> level_starts_;
    size_t qhead_ = 0;
    Nogood conflict_;
    uint64_t propagations_ = 0;
};

struct PropagationOutcome {
    enum class Status { Fixpoint, Conflict };
    Status status = Status::Fixpoint;
    std::vector<Truth> assignment;  // per atom, auxiliaries included
    struct Step {
        Lit lit;
        Nogood reason;  // empty for assumptions and root facts of unit nogoods
    };
    std::vector<Step> trail;
    Nogood conflict;
    uint64_t propagations = 0;
};

/// Runs unit propagation from the given assumptions. Contradictory
/// assumptions yield an immediate conflict outcome.
inline PropagationOutcome unit_propagate(const CompiledStore& st,
                                         std::span<const Lit> assumptions) {
    PropagationEngine eng(st);
    PropagationOutcome out;
    auto finish = [&](std::optional<Nogood> conflict) {
        out.assignment = eng.assignment();
        for (size_t i = 0; i < eng.trail().size(); ++i)
            out.trail.push_back({eng.trail()[i].lit, eng.reason_nogood(i)});
        out.propagations = eng.propagations();
        if (conflict) {
            out.status = PropagationOutcome::Status::Conflict;
            out.conflict = std::move(*conflict);
        }
        return out;
    };
    if (auto c = eng.bootstrap()) return finish(c);
    for (const Lit& l : assumptions)
        if (!eng.enqueue(l, {Reason::None, -1})) return finish(eng.last_conflict());
    if (auto c = eng.propagate()) return finish(c);
    return finish(std::nullopt);
}

/// Translates a domain state into assumption literals of an encoding.
inline std::vector<Lit> inject_domains(const DomainState& ds, const Encoding& enc) {
    if (ds.wiped_out()) throw Error("wiped domain state");
    std::vector<Lit> out;
    const Value d = enc.d;
    for (int v = 0; v < ds.var_count(); ++v) {
        switch (enc.kind) {
            case EncodingName::Direct:
            case EncodingName::Support:
                for (Value i = 1; i <= d; ++i)
                    if (!ds.contains(v, i))
                        out.push_back(lit_false(
                            enc.e_atoms[static_cast<size_t>(v)][static_cast<size_t>(i - 1)]));
                break;
            case EncodingName::Bound: {
                const Value lo = ds.min(v), hi = ds.max(v);
                if (lo > 1)
                    out.push_back(lit_false(
                        enc.b_atoms[static_cast<size_t>(v)][static_cast<size_t>(lo - 2)]));
                out.push_back(lit_true(
                    enc.b_atoms[static_cast<size_t>(v)][static_cast<size_t>(hi - 1)]));
                break;
            }
            case EncodingName::Range: {
                const auto& table = enc.r_atoms[static_cast<size_t>(v)];
                const Value lo = ds.min(v), hi = ds.max(v);
                if (lo > 1) out.push_back(lit_false(table.at({1, lo - 1})));
                if (hi < d) out.push_back(lit_false(table.at({hi + 1, d})));
                for (Value i = lo + 1; i < hi; ++i)
                    if (!ds.contains(v, i)) out.push_back(lit_false(table.at({i, i})));
                break;
            }
        }
    }
    return out;
}

/// Reads a domain state back out of a propagation fixpoint. Conflicts map
/// to the wiped-out state.
inline DomainState extract_domains(const PropagationOutcome& out, const Encoding& enc,
                                   const CspInstance& csp) {
    DomainState ds = DomainState::full(csp);
    if (out.status == PropagationOutcome::Status::Conflict) {
        ds.set_wiped();
        return ds;
    }
    auto value = [&](AtomId a) { return out.assignment[static_cast<size_t>(a)]; };
    const Value d = enc.d;
    for (int v = 0; v < csp.var_count(); ++v) {
        switch (enc.kind) {
            case EncodingName::Direct:
            case EncodingName::Support: {
                for (Value i = 1; i <= d; ++i)
                    if (value(enc.e_atoms[static_cast<size_t>(v)][static_cast<size_t>(i - 1)]) ==
                        Truth::False)
                        ds.remove(v, i);
                break;
            }
            case EncodingName::Bound: {
                const auto& b = enc.b_atoms[static_cast<size_t>(v)];
                Value lo = 1, hi = d;
                for (Value i = 1; i <= d; ++i)
                    if (value(b[static_cast<size_t>(i - 1)]) == Truth::False)
                        lo = std::max(lo, i + 1);
                for (Value i = 1; i <= d; ++i)
                    if (value(b[static_cast<size_t>(i - 1)]) == Truth::True) {
                        hi = i;
                        break;
                    }
                for (Value i = 1; i <= d; ++i)
                    if (i < lo || i > hi) ds.remove(v, i);
                break;
            }
            case EncodingName::Range: {
                const auto& table = enc.r_atoms[static_cast<size_t>(v)];
                for (Value i = 1; i <= d; ++i)
                    if (value(table.at({i, i})) == Truth::False) ds.remove(v, i);
                for (Value j = 1; j <= d; ++j) {
                    if (j < d && value(table.at({1, j})) == Truth::False)
                        for (Value i = 1; i <= j; ++i) ds.remove(v, i);
                    if (j > 1 && value(table.at({j, d})) == Truth::False)
                        for (Value i = j; i <= d; ++i) ds.remove(v, i);
                }
                break;
            }
        }
    }
    if (ds.wiped_out()) ds.set_wiped();
    return ds;
}

/// The theorem harness: encode at the declared domains, compile, propagate
/// under the injected domain state, and read the pruned domains back.
inline DomainState propagate_encoding(const CspInstance& csp, const DomainState& ds,
                                      EncodingKind kind,
                                      RegionMode mode = RegionMode::Maximal) {
    if (ds.wiped_out()) {
        DomainState out = ds;
        out.set_wiped();
        return out;
    }
    const Encoding enc = encode(csp, DomainState::full(csp), kind, mode);
    const CompiledStore st = compile(enc.program);
    const auto outcome = unit_propagate(st, inject_domains(ds, enc));
    return extract_domains(outcome, enc, csp);
}

}  // namespace caspforge
