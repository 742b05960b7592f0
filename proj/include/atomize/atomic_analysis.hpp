#pragma once

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "atomize/formula.hpp"
#include "atomize/report.hpp"
#include "atomize/sat_engine.hpp"

namespace atomize {

/// Candidate variables for the atomic set of one pivot: every member of that
/// set must be true in the pivot-true certificate and false in the
/// pivot-false certificate, so the set of variables with exactly that
/// polarity pattern is a superset of the atomic set.
struct CandidateSet {
    std::vector<int> candidates; // sorted ascending, contains the pivot
};

/// Intersects the positive variables of the pivot-true model with the
/// negative variables of the pivot-false model.
inline CandidateSet candidate_set(const Model& model_pos, const Model& model_neg) {
    if (model_pos.var_count() != model_neg.var_count())
        throw std::invalid_argument("candidate_set: models over different variable counts");
    CandidateSet out;
    for (int v = 1; v <= model_pos.var_count(); ++v)
        if (model_pos.value(v) && !model_neg.value(v))
            out.candidates.push_back(v);
    return out;
}

enum class RefutationDirection {
    pos, // witness satisfies F and v and not u
    neg, // witness satisfies F and not v and u
};

struct PairVerdict {
    bool confirmed = false;
    RefutationDirection direction = RefutationDirection::pos;
    std::optional<Model> witness; // set on refutation
};

/// Tests whether u always attains the same value as v: confirmed iff both
/// F and v and not-u, and F and not-v and u, are unsatisfiable. On refutation
/// the first satisfying witness is returned together with its direction; the
/// second query is not issued when the first already refutes.
/// Precondition: v != u and neither variable is core or dead.
/// Works with a SolverSession or any wrapper exposing the same check().
template <typename Session>
PairVerdict verify_pair(Session& session, int v, int u) {
    assert(v != u);
    SatOutcome pos = session.check({v, -u});
    if (pos.is_sat())
        return {false, RefutationDirection::pos, pos.model()};
    SatOutcome neg = session.check({-v, u});
    if (neg.is_sat())
        return {false, RefutationDirection::neg, neg.model()};
    return {true, RefutationDirection::pos, std::nullopt};
}

/// Removes from the candidate set every variable the refutation witness
/// proves different from the pivot: for a pos-direction witness (pivot true)
/// the variables assigned false, for a neg-direction witness (pivot false)
/// the variables assigned true. The pivot itself always survives because it
/// agrees with itself in any witness.
inline CandidateSet prune_with_refutation(CandidateSet candidates, const Model& witness,
                                          RefutationDirection direction) {
    const bool drop_value = direction == RefutationDirection::pos ? false : true;
    std::erase_if(candidates.candidates,
                  [&](int v) { return witness.value(v) == drop_value; });
    return candidates;
}

/// Remainder sets from completed pivot iterations. If a pivot ever appeared
/// in a remainder R = C \ A, its whole atomic set is contained in R, so
/// future candidate sets can be intersected with every recorded R of the
/// pivot.
class ConfinementIndex {
public:
    void record(std::vector<int> remainder) {
        if (remainder.empty())
            return;
        const int id = static_cast<int>(remainders_.size());
        for (int v : remainder)
            membership_[v].push_back(id);
        remainders_.push_back(std::move(remainder));
    }

    const std::vector<std::vector<int>>& remainders() const { return remainders_; }

    /// Ids of all recorded remainder sets containing the variable.
    std::vector<int> sets_of(int var) const {
        auto it = membership_.find(var);
        return it == membership_.end() ? std::vector<int>{} : it->second;
    }

private:
    std::vector<std::vector<int>> remainders_; // each sorted ascending
    std::map<int, std::vector<int>> membership_;
};

/// Intersects the candidates with every recorded remainder set that contains
/// the pivot; identity when none is recorded.
inline CandidateSet apply_confinement(CandidateSet candidates, int pivot,
                                      const ConfinementIndex& index) {
    for (int id : index.sets_of(pivot)) {
        const auto& remainder = index.remainders()[id];
        std::vector<int> kept;
        std::set_intersection(candidates.candidates.begin(), candidates.candidates.end(),
                              remainder.begin(), remainder.end(), std::back_inserter(kept));
        candidates.candidates = std::move(kept);
    }
    return candidates;
}

struct GntOptions {
    bool inline_backbone = true;    // detect core/dead from the certificate queries
    bool refutation_pruning = true; // prune candidates with refutation witnesses
    bool confinement = true;        // intersect candidates with recorded remainders
    double time_limit_seconds = std::numeric_limits<double>::infinity();
    std::string solver = "cdcl";
};

namespace detail {

class Deadline {
public:
    explicit Deadline(double seconds) {
        if (seconds != std::numeric_limits<double>::infinity())
            at_ = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(seconds));
    }

    void enforce() const {
        if (at_ && std::chrono::steady_clock::now() > *at_)
            throw TimeLimitError("time budget exceeded");
    }

private:
    std::optional<std::chrono::steady_clock::time_point> at_;
};

struct QueryEngine {
    SolverSession& session;
    GntStats& stats;
    const Deadline& deadline;
    bool sat_established = false;

    SatOutcome check(std::initializer_list<int> assumptions) {
        deadline.enforce();
        ++stats.sat_calls;
        return session.check(assumptions);
    }
};

/// The shared per-variable loop of backbone computation and GnT: issues the
/// pivot-true and pivot-false certificate queries, classifies core/dead, and
/// hands both models to `on_free` for undecided free variables. Raises
/// UnsatisfiableError when the queries show F itself has no model, which is
/// how satisfiability gets established without a dedicated query.
template <typename OnFree>
void certificate_loop(QueryEngine& engine, int var_count, const std::vector<char>& decided,
                      BackboneResult& backbone, OnFree&& on_free) {
    for (int v = 1; v <= var_count; ++v) {
        if (decided[v])
            continue;
        SatOutcome pos = engine.check({v});
        if (!pos.is_sat()) {
            if (!engine.sat_established) {
                SatOutcome neg = engine.check({-v});
                if (!neg.is_sat())
                    throw UnsatisfiableError("formula is unsatisfiable");
                engine.sat_established = true;
            }
            backbone.dead.push_back(v);
            continue;
        }
        engine.sat_established = true;
        SatOutcome neg = engine.check({-v});
        if (!neg.is_sat()) {
            backbone.core.push_back(v);
            continue;
        }
        on_free(v, pos.model(), neg.model());
    }
}

} // namespace detail

/// Exact core and dead variable sets, computed with the same certificate
/// loop GnT uses but without any candidate verification.
inline BackboneResult compute_backbone(SolverSession& session, int var_count) {
    GntStats stats;
    detail::Deadline deadline(std::numeric_limits<double>::infinity());
    detail::QueryEngine engine{session, stats, deadline};
    std::vector<char> decided(var_count + 1, 0);
    BackboneResult backbone;
    detail::certificate_loop(engine, var_count, decided, backbone,
                             [](int, const Model&, const Model&) {});
    return backbone;
}

/// Computes all atomic sets of a satisfiable formula with the
/// generate-and-test strategy: for each undecided pivot v (ascending), two
/// certificate queries produce the candidate set, which is confined by
/// recorded remainders and then verified pairwise against the pivot, pruning
/// with every refutation witness. The certificate queries double as core and
/// dead detection. Throws UnsatisfiableError on unsatisfiable input and
/// TimeLimitError when the budget runs out (no partial report).
inline AtomicSetReport gnt_atomic_sets(const CnfFormula& formula, const GntOptions& options = {}) {
    auto session = create_session(formula, options.solver);
    const int n = formula.var_count();

    GntStats stats;
    detail::Deadline deadline(options.time_limit_seconds);
    detail::QueryEngine engine{*session, stats, deadline};

    std::vector<char> decided(n + 1, 0);
    BackboneResult backbone;
    if (!options.inline_backbone) {
        detail::certificate_loop(engine, n, decided, backbone,
                                 [](int, const Model&, const Model&) {});
        for (int v : backbone.core)
            decided[v] = 1;
        for (int v : backbone.dead)
            decided[v] = 1;
    }

    std::vector<std::vector<int>> regular_sets;
    ConfinementIndex confinement;

    detail::certificate_loop(
        engine, n, decided, backbone, [&](int v, const Model& pos, const Model& neg) {
            ++stats.pivots;
            CandidateSet cand = candidate_set(pos, neg);
            if (options.confinement) {
                const std::size_t before = cand.candidates.size();
                cand = apply_confinement(cand, v, confinement);
                stats.pruned_by_confinement += before - cand.candidates.size();
            }
            for (int u : cand.candidates)
                if (!decided[u])
                    ++stats.candidate_sum;

            std::vector<int> members{v};
            std::vector<char> pruned(n + 1, 0);
            for (std::size_t i = 0; i < cand.candidates.size(); ++i) {
                const int u = cand.candidates[i];
                if (u == v || decided[u] || pruned[u])
                    continue;
                ++stats.pair_tests;
                PairVerdict verdict = verify_pair(engine, v, u);
                if (verdict.confirmed) {
                    members.push_back(u);
                    continue;
                }
                if (!options.refutation_pruning)
                    continue;
                const bool drop_value =
                    verdict.direction == RefutationDirection::pos ? false : true;
                for (std::size_t j = i + 1; j < cand.candidates.size(); ++j) {
                    const int w = cand.candidates[j];
                    if (!pruned[w] && !decided[w] &&
                        verdict.witness->value(w) == drop_value) {
                        pruned[w] = 1;
                        ++stats.pruned_by_refutation;
                    }
                }
            }

            // R = C \ A: variables that shared the pivot's certificate
            // pattern but are not atomic with it. Any future atomic set
            // containing one of them is a subset of R.
            std::vector<int> remainder;
            for (int u : cand.candidates)
                if (std::find(members.begin(), members.end(), u) == members.end())
                    remainder.push_back(u);
            if (options.confinement)
                confinement.record(std::move(remainder));

            for (int u : members)
                decided[u] = 1;
            if (members.size() >= 2)
                regular_sets.push_back(std::move(members));
        });

    return make_report(std::move(backbone), std::move(regular_sets), stats);
}

} // namespace atomize
