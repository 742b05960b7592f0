#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <vector>

#include "atomize/formula.hpp"

namespace atomize {

/// Conflict-driven clause-learning SAT solver with assumption-based
/// incremental querying: the clause database, learned clauses, variable
/// activities and saved phases persist across solve() calls, while
/// assumptions only hold for the duration of one call.
///
/// The solver is deterministic: branching uses activity with variable-index
/// tie-breaking, phases default to false, and no randomization is used
/// anywhere. Two solvers built from the same formula and given the same
/// query sequence produce identical models.
class CdclSolver {
public:
    explicit CdclSolver(const CnfFormula& formula) : num_vars_(formula.var_count()) {
        assign_.assign(num_vars_ + 1, 0);
        level_.assign(num_vars_ + 1, 0);
        reason_.assign(num_vars_ + 1, -1);
        phase_.assign(num_vars_ + 1, 0);
        seen_.assign(num_vars_ + 1, 0);
        activity_.assign(num_vars_ + 1, 0.0);
        watches_.assign(2 * num_vars_ + 2, {});
        heap_pos_.assign(num_vars_ + 1, -1);
        for (int v = 1; v <= num_vars_; ++v)
            heap_insert(v);
        for (const Clause& clause : formula.clauses()) {
            std::vector<int> lits;
            lits.reserve(clause.size());
            for (Lit l : clause)
                lits.push_back(l.encoded());
            attach_input_clause(std::move(lits));
        }
        max_learnts_ = std::max<std::size_t>(1000, clauses_.size() / 3);
    }

    int var_count() const { return num_vars_; }

    /// Decides F plus the assumption literals. Returns true iff satisfiable;
    /// the model is then available through model_value(). The formula itself
    /// is unchanged by the call.
    bool solve(const std::vector<int>& assumptions) {
        if (!ok_)
            return false;
        assumptions_ = assumptions;
        cancel_until(0);
        const bool result = search();
        cancel_until(0);
        return result;
    }

    /// Value of a variable in the last satisfying assignment. Total: every
    /// variable of the formula is assigned.
    bool model_value(int var) const {
        assert(var >= 1 && var <= num_vars_);
        return model_[var] > 0;
    }

private:
    // --- literal helpers (internal watch index: 2*var for positive, +1 for negative)

    static int watch_index(int lit) { return lit > 0 ? 2 * lit : -2 * lit + 1; }

    int value_of(int lit) const {
        const int v = lit > 0 ? lit : -lit;
        const int a = assign_[v];
        return lit > 0 ? a : -a; // 1 true, -1 false, 0 unassigned
    }

    int decision_level() const { return static_cast<int>(trail_lim_.size()); }

    // --- clause database

    struct ClauseRec {
        std::vector<int> lits;
        double activity = 0.0;
        bool learned = false;
        bool deleted = false;
    };

    struct Watcher {
        int clause;
        int blocker;
    };

    void attach_input_clause(std::vector<int> lits) {
        if (!ok_)
            return;
        if (lits.size() == 1) {
            const int l = lits[0];
            if (value_of(l) < 0)
                ok_ = false;
            else if (value_of(l) == 0)
                enqueue(l, -1);
            return;
        }
        const int id = static_cast<int>(clauses_.size());
        clauses_.push_back({std::move(lits), 0.0, false, false});
        attach_watches(id);
    }

    void attach_watches(int id) {
        const auto& lits = clauses_[id].lits;
        watches_[watch_index(-lits[0])].push_back({id, lits[1]});
        watches_[watch_index(-lits[1])].push_back({id, lits[0]});
    }

    // --- trail

    void enqueue(int lit, int reason) {
        const int v = lit > 0 ? lit : -lit;
        assign_[v] = lit > 0 ? 1 : -1;
        level_[v] = decision_level();
        reason_[v] = reason;
        trail_.push_back(lit);
    }

    void new_decision_level() { trail_lim_.push_back(static_cast<int>(trail_.size())); }

    void cancel_until(int target) {
        if (decision_level() <= target)
            return;
        const int keep = trail_lim_[target];
        for (int i = static_cast<int>(trail_.size()) - 1; i >= keep; --i) {
            const int lit = trail_[i];
            const int v = lit > 0 ? lit : -lit;
            phase_[v] = static_cast<std::int8_t>(assign_[v]);
            assign_[v] = 0;
            reason_[v] = -1;
            if (heap_pos_[v] < 0)
                heap_insert(v);
        }
        trail_.resize(keep);
        trail_lim_.resize(target);
        qhead_ = std::min(qhead_, static_cast<int>(trail_.size()));
    }

    // --- propagation

    int propagate() {
        while (qhead_ < static_cast<int>(trail_.size())) {
            const int p = trail_[qhead_++]; // p is now true
            auto& ws = watches_[watch_index(p)];
            std::size_t i = 0, j = 0;
            while (i < ws.size()) {
                const Watcher w = ws[i];
                if (value_of(w.blocker) > 0) {
                    ws[j++] = ws[i++];
                    continue;
                }
                ClauseRec& rec = clauses_[w.clause];
                auto& lits = rec.lits;
                const int false_lit = -p;
                if (lits[0] == false_lit)
                    std::swap(lits[0], lits[1]);
                // lits[1] == false_lit now
                if (value_of(lits[0]) > 0) {
                    ws[j++] = {w.clause, lits[0]};
                    ++i;
                    continue;
                }
                bool moved = false;
                for (std::size_t k = 2; k < lits.size(); ++k) {
                    if (value_of(lits[k]) >= 0) {
                        std::swap(lits[1], lits[k]);
                        watches_[watch_index(-lits[1])].push_back({w.clause, lits[0]});
                        moved = true;
                        break;
                    }
                }
                if (moved) {
                    ++i;
                    continue;
                }
                // unit or conflicting
                if (value_of(lits[0]) < 0) {
                    while (i < ws.size())
                        ws[j++] = ws[i++];
                    ws.resize(j);
                    return w.clause;
                }
                enqueue(lits[0], w.clause);
                ws[j++] = ws[i++];
            }
            ws.resize(j);
        }
        return -1;
    }

    // --- conflict analysis (first UIP with basic minimization)

    void analyze(int confl, std::vector<int>& learnt, int& backtrack_level) {
        learnt.clear();
        learnt.push_back(0); // slot for the asserting literal
        int path = 0;
        int p = 0;
        int index = static_cast<int>(trail_.size()) - 1;

        do {
            ClauseRec& rec = clauses_[confl];
            if (rec.learned)
                bump_clause(confl);
            for (std::size_t k = (p == 0 ? 0 : 1); k < rec.lits.size(); ++k) {
                const int q = rec.lits[k];
                const int v = q > 0 ? q : -q;
                if (!seen_[v] && level_[v] > 0) {
                    seen_[v] = 1;
                    bump_var(v);
                    if (level_[v] >= decision_level())
                        ++path;
                    else
                        learnt.push_back(q);
                }
            }
            while (!seen_[trail_[index] > 0 ? trail_[index] : -trail_[index]])
                --index;
            p = trail_[index--];
            const int pv = p > 0 ? p : -p;
            confl = reason_[pv];
            seen_[pv] = 0;
            --path;
        } while (path > 0);
        learnt[0] = -p;

        // Drop literals implied by the rest of the clause.
        to_clear_.assign(learnt.begin(), learnt.end());
        std::size_t out = 1;
        for (std::size_t k = 1; k < learnt.size(); ++k)
            if (!literal_redundant(learnt[k]))
                learnt[out++] = learnt[k];
        learnt.resize(out);

        if (learnt.size() == 1) {
            backtrack_level = 0;
        } else {
            std::size_t max_k = 1;
            for (std::size_t k = 2; k < learnt.size(); ++k) {
                const int v = learnt[k] > 0 ? learnt[k] : -learnt[k];
                const int mv = learnt[max_k] > 0 ? learnt[max_k] : -learnt[max_k];
                if (level_[v] > level_[mv])
                    max_k = k;
            }
            std::swap(learnt[1], learnt[max_k]);
            backtrack_level = level_[learnt[1] > 0 ? learnt[1] : -learnt[1]];
        }

        for (int q : to_clear_)
            seen_[q > 0 ? q : -q] = 0;
    }

    bool literal_redundant(int lit) {
        const int v = lit > 0 ? lit : -lit;
        if (reason_[v] < 0)
            return false;
        const auto& lits = clauses_[reason_[v]].lits;
        for (int q : lits) {
            const int qv = q > 0 ? q : -q;
            if (qv != v && !seen_[qv] && level_[qv] > 0)
                return false;
        }
        return true;
    }

    void record_learnt(const std::vector<int>& learnt) {
        if (learnt.size() == 1) {
            enqueue(learnt[0], -1);
            return;
        }
        const int id = static_cast<int>(clauses_.size());
        clauses_.push_back({learnt, clause_inc_, true, false});
        ++num_learnts_;
        attach_watches(id);
        enqueue(learnt[0], id);
    }

    // --- activities

    void bump_var(int v) {
        activity_[v] += var_inc_;
        if (activity_[v] > 1e100) {
            for (int u = 1; u <= num_vars_; ++u)
                activity_[u] *= 1e-100;
            var_inc_ *= 1e-100;
        }
        if (heap_pos_[v] >= 0)
            heap_sift_up(heap_pos_[v]);
    }

    void bump_clause(int id) {
        clauses_[id].activity += clause_inc_;
        if (clauses_[id].activity > 1e20) {
            for (auto& rec : clauses_)
                rec.activity *= 1e-20;
            clause_inc_ *= 1e-20;
        }
    }

    // --- branching heap (max activity, ties broken towards lower index)

    bool heap_less(int a, int b) const {
        return activity_[a] != activity_[b] ? activity_[a] > activity_[b] : a < b;
    }

    void heap_insert(int v) {
        heap_pos_[v] = static_cast<int>(heap_.size());
        heap_.push_back(v);
        heap_sift_up(heap_pos_[v]);
    }

    void heap_sift_up(int i) {
        const int v = heap_[i];
        while (i > 0) {
            const int parent = (i - 1) / 2;
            if (!heap_less(v, heap_[parent]))
                break;
            heap_[i] = heap_[parent];
            heap_pos_[heap_[i]] = i;
            i = parent;
        }
        heap_[i] = v;
        heap_pos_[v] = i;
    }

    void heap_sift_down(int i) {
        const int v = heap_[i];
        const int size = static_cast<int>(heap_.size());
        while (true) {
            int child = 2 * i + 1;
            if (child >= size)
                break;
            if (child + 1 < size && heap_less(heap_[child + 1], heap_[child]))
                ++child;
            if (!heap_less(heap_[child], v))
                break;
            heap_[i] = heap_[child];
            heap_pos_[heap_[i]] = i;
            i = child;
        }
        heap_[i] = v;
        heap_pos_[v] = i;
    }

    int heap_pop() {
        const int top = heap_[0];
        heap_pos_[top] = -1;
        const int last = heap_.back();
        heap_.pop_back();
        if (!heap_.empty()) {
            heap_[0] = last;
            heap_pos_[last] = 0;
            heap_sift_down(0);
        }
        return top;
    }

    // --- learned clause reduction

    void reduce_db() {
        std::vector<int> candidates;
        for (int id = 0; id < static_cast<int>(clauses_.size()); ++id) {
            const auto& rec = clauses_[id];
            if (rec.learned && !rec.deleted && rec.lits.size() > 2 && !is_reason(id))
                candidates.push_back(id);
        }
        std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
            return clauses_[a].activity != clauses_[b].activity
                       ? clauses_[a].activity < clauses_[b].activity
                       : a < b;
        });
        for (std::size_t k = 0; k < candidates.size() / 2; ++k) {
            clauses_[candidates[k]].deleted = true;
            --num_learnts_;
        }
        for (auto& ws : watches_) {
            std::erase_if(ws, [&](const Watcher& w) { return clauses_[w.clause].deleted; });
        }
    }

    bool is_reason(int id) const {
        const auto& lits = clauses_[id].lits;
        const int v = lits[0] > 0 ? lits[0] : -lits[0];
        return assign_[v] != 0 && reason_[v] == id;
    }

    // --- restarts

    static std::uint64_t luby(std::uint64_t x) {
        std::uint64_t size = 1, seq = 0;
        while (size < x + 1) {
            ++seq;
            size = 2 * size + 1;
        }
        while (size - 1 != x) {
            size = (size - 1) / 2;
            --seq;
            x %= size;
        }
        return std::uint64_t{1} << seq;
    }

    // --- main search loop

    bool search() {
        std::vector<int> learnt;
        std::uint64_t conflicts_here = 0;
        std::uint64_t restart_limit = kRestartBase * luby(restarts_);

        while (true) {
            const int confl = propagate();
            if (confl >= 0) {
                ++conflicts_here;
                if (decision_level() == 0) {
                    ok_ = false;
                    return false;
                }
                int backtrack_level = 0;
                analyze(confl, learnt, backtrack_level);
                cancel_until(backtrack_level);
                record_learnt(learnt);
                var_inc_ /= kVarDecay;
                clause_inc_ /= kClauseDecay;
                if (num_learnts_ > max_learnts_) {
                    reduce_db();
                    max_learnts_ = max_learnts_ * 11 / 10;
                }
                continue;
            }

            if (conflicts_here >= restart_limit) {
                ++restarts_;
                conflicts_here = 0;
                restart_limit = kRestartBase * luby(restarts_);
                cancel_until(0);
                continue;
            }

            int next = 0;
            while (decision_level() < static_cast<int>(assumptions_.size())) {
                const int p = assumptions_[decision_level()];
                if (value_of(p) > 0) {
                    new_decision_level(); // already holds, keep level bookkeeping aligned
                } else if (value_of(p) < 0) {
                    return false; // assumptions inconsistent with F
                } else {
                    next = p;
                    break;
                }
            }
            if (next == 0) {
                if (static_cast<int>(trail_.size()) == num_vars_) {
                    model_.assign(num_vars_ + 1, 0);
                    for (int v = 1; v <= num_vars_; ++v)
                        model_[v] = assign_[v];
                    return true;
                }
                int v = 0;
                while (!heap_.empty()) {
                    v = heap_pop();
                    if (assign_[v] == 0)
                        break;
                    v = 0;
                }
                assert(v != 0);
                next = phase_[v] > 0 ? v : -v;
            }
            new_decision_level();
            enqueue(next, -1);
        }
    }

    static constexpr double kVarDecay = 0.95;
    static constexpr double kClauseDecay = 0.999;
    static constexpr std::uint64_t kRestartBase = 100;

    int num_vars_;
    bool ok_ = true;

    std::vector<ClauseRec> clauses_;
    std::vector<std::vector<Watcher>> watches_;
    std::size_t num_learnts_ = 0;
    std::size_t max_learnts_;

    std::vector<std::int8_t> assign_;
    std::vector<int> level_;
    std::vector<int> reason_;
    std::vector<std::int8_t> phase_;
    std::vector<std::int8_t> seen_;
    std::vector<int> to_clear_;
    std::vector<int> trail_;
    std::vector<int> trail_lim_;
    int qhead_ = 0;

    std::vector<double> activity_;
    double var_inc_ = 1.0;
    double clause_inc_ = 1.0;
    std::vector<int> heap_;
    std::vector<int> heap_pos_;

    std::uint64_t restarts_ = 0;
    std::vector<int> assumptions_;
    std::vector<std::int8_t> model_;
};

} // namespace atomize
