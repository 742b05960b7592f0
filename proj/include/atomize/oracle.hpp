#pragma once

#include <bit>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "atomize/ase.hpp"
#include "atomize/formula.hpp"
#include "atomize/report.hpp"

namespace atomize {

inline constexpr int kDefaultOracleLimit = 25;

struct EnumerationResult {
    std::uint64_t model_count = 0;
    int var_count = 0;
    /// cardinalities[v] = number of models in which variable v is true (1-based).
    std::vector<std::uint64_t> cardinalities;
};

/// Walks all 2^var_count assignments in Gray-code order and invokes
/// `on_model(mask)` for every satisfying one. Bit v-1 of the mask is the
/// value of variable v. Clause state is updated incrementally, so the cost
/// per step is the number of occurrences of the flipped variable.
template <typename OnModel>
void for_each_model(const CnfFormula& formula, OnModel&& on_model, int limit = kDefaultOracleLimit) {
    const int n = formula.var_count();
    if (limit > 31)
        throw std::invalid_argument("for_each_model: limit above 31 is not representable");
    if (n > limit)
        throw OracleLimitError("formula has " + std::to_string(n) +
                               " variables, enumeration limit is " + std::to_string(limit));

    const auto& clauses = formula.clauses();
    const int m = static_cast<int>(clauses.size());

    // occurrences[v-1]: (clause index, polarity) pairs for variable v
    std::vector<std::vector<std::pair<int, bool>>> occurrences(n);
    std::vector<int> true_literals(m, 0);
    int falsified = 0;
    for (int c = 0; c < m; ++c) {
        for (Lit l : clauses[c]) {
            occurrences[l.var() - 1].emplace_back(c, l.positive());
            if (!l.positive())
                ++true_literals[c]; // all-false start satisfies negative literals
        }
        if (true_literals[c] == 0)
            ++falsified;
    }

    std::uint32_t mask = 0;
    if (falsified == 0)
        on_model(mask);
    const std::uint64_t steps = n == 0 ? 0 : (std::uint64_t{1} << n) - 1;
    for (std::uint64_t k = 1; k <= steps; ++k) {
        const int v = std::countr_zero(k); // 0-based variable to flip
        mask ^= std::uint32_t{1} << v;
        const bool now_true = (mask >> v) & 1;
        for (auto [c, positive] : occurrences[v]) {
            const int delta = (positive == now_true) ? 1 : -1;
            true_literals[c] += delta;
            if (delta == 1 && true_literals[c] == 1)
                --falsified;
            else if (delta == -1 && true_literals[c] == 0)
                ++falsified;
        }
        if (falsified == 0)
            on_model(mask);
    }
}

/// Exact model count and per-variable cardinalities by exhaustive enumeration.
/// Variables that occur in no clause are enumerated like any other, so each
/// one doubles the model count.
inline EnumerationResult enumerate_models(const CnfFormula& formula, int limit = kDefaultOracleLimit) {
    EnumerationResult result;
    result.var_count = formula.var_count();
    result.cardinalities.assign(formula.var_count() + 1, 0);
    for_each_model(
        formula,
        [&](std::uint32_t mask) {
            ++result.model_count;
            for (int v = 1; v <= result.var_count; ++v)
                result.cardinalities[v] += (mask >> (v - 1)) & 1;
        },
        limit);
    return result;
}

/// Ground-truth atomic sets by column equivalence: variables are partitioned
/// by their truth-value column over all models. The all-true class is core,
/// the all-false class is dead, every other class of size >= 2 is a regular
/// atomic set. Completely independent of the SAT engine.
inline AtomicSetReport oracle_atomic_sets(const CnfFormula& formula, int limit = kDefaultOracleLimit) {
    const int n = formula.var_count();
    std::vector<int> group(n + 1, 0); // refined per model: equal column prefix <=> equal group
    int group_count = 1;
    std::uint64_t model_count = 0;
    std::vector<std::uint64_t> cardinality(n + 1, 0);

    std::vector<int> relabel; // scratch: (old group, bit) -> new group
    for_each_model(
        formula,
        [&](std::uint32_t mask) {
            ++model_count;
            for (int v = 1; v <= n; ++v)
                cardinality[v] += (mask >> (v - 1)) & 1;
            if (group_count == n)
                return; // all classes are singletons already
            relabel.assign(2 * group_count, -1);
            int next = 0;
            for (int v = 1; v <= n; ++v) {
                const int key = 2 * group[v] + ((mask >> (v - 1)) & 1);
                if (relabel[key] < 0)
                    relabel[key] = next++;
                group[v] = relabel[key];
            }
            group_count = next;
        },
        limit);
    if (model_count == 0)
        throw UnsatisfiableError("oracle: formula is unsatisfiable");

    BackboneResult backbone;
    std::vector<std::vector<int>> classes(group_count);
    for (int v = 1; v <= n; ++v) {
        if (cardinality[v] == model_count)
            backbone.core.push_back(v);
        else if (cardinality[v] == 0)
            backbone.dead.push_back(v);
        else
            classes[group[v]].push_back(v);
    }
    std::vector<std::vector<int>> regular;
    for (auto& members : classes)
        if (members.size() >= 2)
            regular.push_back(std::move(members));
    return make_report(std::move(backbone), std::move(regular));
}

struct VerificationResult {
    bool pass = true;
    std::string diagnosis;

    explicit operator bool() const { return pass; }
};

namespace detail {

inline const VariableFate& resolve_fate(const VariableMap& map, int var) {
    const VariableFate& fate = map.fate(var);
    if (fate.kind != FateKind::merged)
        return fate;
    if (fate.target < 1 || fate.target > map.old_var_count)
        throw std::invalid_argument("variable map: merge target out of range");
    const VariableFate& target = map.fate(fate.target);
    if (target.kind == FateKind::merged)
        throw std::invalid_argument("variable map: merge target is itself merged");
    return target;
}

} // namespace detail

/// Checks that an elimination preserved the configuration space: the model
/// counts of original and reduced formula must be equal and every original
/// variable's cardinality must survive through the map (kept and merged
/// variables map onto a reduced variable's cardinality, constants onto
/// model count or zero).
inline VerificationResult verify_elimination(const CnfFormula& original, const CnfFormula& reduced,
                                             const VariableMap& map, int limit = kDefaultOracleLimit) {
    if (map.old_var_count != original.var_count() || map.new_var_count != reduced.var_count())
        throw std::invalid_argument("variable map does not match the formulas");
    for (int v = 1; v <= map.old_var_count; ++v) {
        const VariableFate& fate = map.fate(v);
        if (fate.kind == FateKind::kept && (fate.target < 1 || fate.target > map.new_var_count))
            throw std::invalid_argument("variable map: kept target out of range");
    }

    const EnumerationResult before = enumerate_models(original, limit);
    const EnumerationResult after = enumerate_models(reduced, limit);
    if (before.model_count != after.model_count)
        return {false, "model count mismatch: " + std::to_string(before.model_count) + " vs " +
                           std::to_string(after.model_count)};

    for (int v = 1; v <= map.old_var_count; ++v) {
        const VariableFate& fate = detail::resolve_fate(map, v);
        std::uint64_t expected = 0;
        switch (fate.kind) {
        case FateKind::kept: expected = after.cardinalities[fate.target]; break;
        case FateKind::const_true: expected = after.model_count; break;
        case FateKind::const_false: expected = 0; break;
        case FateKind::merged: break; // unreachable after resolve_fate
        }
        if (before.cardinalities[v] != expected)
            return {false, "cardinality mismatch for variable " + std::to_string(v) + ": " +
                               std::to_string(before.cardinalities[v]) + " vs " +
                               std::to_string(expected)};
    }
    return {true, ""};
}

} // namespace atomize
