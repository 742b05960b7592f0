#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "atomize/formula.hpp"

namespace atomize {

/// Plain DPLL with unit propagation and chronological backtracking. Branches
/// on the lowest-index unassigned variable, false first. No learning, no
/// heuristics. Intended as a second, structurally different backend for
/// cross-checking the CDCL solver; fine for small and mid-size inputs.
class DpllSolver {
public:
    explicit DpllSolver(const CnfFormula& formula) : num_vars_(formula.var_count()) {
        for (const Clause& clause : formula.clauses()) {
            std::vector<int> lits;
            lits.reserve(clause.size());
            for (Lit l : clause)
                lits.push_back(l.encoded());
            clauses_.push_back(std::move(lits));
        }
    }

    int var_count() const { return num_vars_; }

    bool solve(const std::vector<int>& assumptions) {
        assign_.assign(num_vars_ + 1, 0);
        trail_.clear();
        for (int a : assumptions)
            if (!assume(a))
                return false;
        if (!propagate())
            return false;
        return search();
    }

    bool model_value(int var) const {
        assert(var >= 1 && var <= num_vars_);
        return model_[var] > 0;
    }

private:
    bool assume(int lit) {
        const int v = lit > 0 ? lit : -lit;
        const int want = lit > 0 ? 1 : -1;
        if (assign_[v] == -want)
            return false;
        if (assign_[v] == 0) {
            assign_[v] = static_cast<std::int8_t>(want);
            trail_.push_back(v);
        }
        return true;
    }

    /// Fixpoint unit propagation over the full clause list. Returns false on
    /// a falsified clause.
    bool propagate() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& clause : clauses_) {
                int unassigned = 0;
                int candidate = 0;
                bool satisfied = false;
                for (int l : clause) {
                    const int v = l > 0 ? l : -l;
                    const int a = assign_[v];
                    if (a == 0) {
                        ++unassigned;
                        candidate = l;
                    } else if ((a > 0) == (l > 0)) {
                        satisfied = true;
                        break;
                    }
                }
                if (satisfied)
                    continue;
                if (unassigned == 0)
                    return false;
                if (unassigned == 1) {
                    assume(candidate);
                    changed = true;
                }
            }
        }
        return true;
    }

    bool search() {
        int branch = 0;
        for (int v = 1; v <= num_vars_; ++v)
            if (assign_[v] == 0) {
                branch = v;
                break;
            }
        if (branch == 0) {
            model_ = assign_;
            return true;
        }
        for (int value : {-1, 1}) {
            const std::size_t mark = trail_.size();
            assign_[branch] = static_cast<std::int8_t>(value);
            trail_.push_back(branch);
            if (propagate() && search())
                return true;
            while (trail_.size() > mark) {
                assign_[trail_.back()] = 0;
                trail_.pop_back();
            }
        }
        return false;
    }

    int num_vars_;
    std::vector<std::vector<int>> clauses_;
    std::vector<std::int8_t> assign_;
    std::vector<int> trail_;
    std::vector<std::int8_t> model_;
};

} // namespace atomize
