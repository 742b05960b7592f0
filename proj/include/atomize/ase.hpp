#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "atomize/formula.hpp"
#include "atomize/report.hpp"

namespace atomize {

enum class FateKind { kept, merged, const_true, const_false };

/// What happened to one original variable during elimination.
struct VariableFate {
    FateKind kind = FateKind::kept;
    /// kept: the variable's index in the reduced formula;
    /// merged: the representative's index in the ORIGINAL numbering.
    int target = 0;

    friend bool operator==(const VariableFate&, const VariableFate&) = default;
};

struct VariableMap {
    int old_var_count = 0;
    int new_var_count = 0;
    std::vector<VariableFate> fates; // 1-based, size old_var_count + 1

    const VariableFate& fate(int var) const { return fates.at(var); }

    friend bool operator==(const VariableMap&, const VariableMap&) = default;
};

/// Rewrites every literal whose variable is mapped onto the representative's
/// literal of equal polarity, renormalizing clauses (collapsed tautologies
/// are dropped, duplicates merged). The map must be a projection:
/// representatives map to themselves or are absent.
inline CnfFormula substitute(const CnfFormula& formula, const std::map<int, int>& representative_of) {
    for (auto [from, to] : representative_of) {
        if (from < 1 || from > formula.var_count() || to < 1 || to > formula.var_count())
            throw std::invalid_argument("substitute: variable out of range");
        auto it = representative_of.find(to);
        if (it != representative_of.end() && it->second != to)
            throw std::invalid_argument("substitute: map is not a projection");
    }
    CnfFormula out(formula.var_count());
    for (const auto& [var, name] : formula.names())
        out.set_name(var, name);
    for (const Clause& clause : formula.clauses()) {
        Clause rewritten;
        rewritten.reserve(clause.size());
        for (Lit l : clause) {
            auto it = representative_of.find(l.var());
            const int target = it == representative_of.end() ? l.var() : it->second;
            rewritten.push_back(Lit(l.positive() ? target : -target));
        }
        out.add_clause(rewritten);
    }
    return out;
}

struct PropagationOutcome {
    bool conflict = false;
    CnfFormula formula;            // meaningful only when !conflict
    std::map<int, bool> constants; // the input constants plus everything derived
};

/// Fixpoint unit propagation: the given constants are substituted into all
/// clauses, satisfied clauses are dropped, falsified literals removed, and
/// any clause shrunk to a unit yields a new constant, until nothing changes.
/// Deriving the empty clause reports a conflict instead of a formula.
inline PropagationOutcome unit_propagate(const CnfFormula& formula, std::map<int, bool> constants) {
    const int n = formula.var_count();
    std::vector<std::vector<int>> occurrences(n + 1);
    const auto& clauses = formula.clauses();
    std::vector<char> satisfied(clauses.size(), 0);
    for (int c = 0; c < static_cast<int>(clauses.size()); ++c)
        for (Lit l : clauses[c])
            occurrences[l.var()].push_back(c);

    std::vector<char> value(n + 1, 0); // 0 unset, 1 true, -1 false
    std::vector<int> queue;
    auto push_constant = [&](int var, bool val) -> bool {
        const char want = val ? 1 : -1;
        if (value[var] != 0)
            return value[var] == want;
        value[var] = want;
        constants[var] = val;
        queue.push_back(var);
        return true;
    };
    for (auto [var, val] : constants) {
        if (var < 1 || var > n)
            throw std::invalid_argument("unit_propagate: constant variable out of range");
        if (!push_constant(var, val))
            return {true, {}, std::move(constants)};
    }
    // Input units count as constants as well.
    for (int c = 0; c < static_cast<int>(clauses.size()); ++c)
        if (clauses[c].size() == 1)
            if (!push_constant(clauses[c][0].var(), clauses[c][0].positive()))
                return {true, {}, std::move(constants)};

    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int var = queue[head];
        for (int c : occurrences[var]) {
            if (satisfied[c])
                continue;
            // Re-derive the clause state under the current constants.
            bool sat = false;
            int remaining = 0;
            Lit last(1);
            for (Lit l : clauses[c]) {
                const char val = value[l.var()];
                if (val == 0) {
                    ++remaining;
                    last = l;
                } else if ((val > 0) == l.positive()) {
                    sat = true;
                    break;
                }
            }
            if (sat) {
                satisfied[c] = 1;
                continue;
            }
            if (remaining == 0)
                return {true, {}, std::move(constants)};
            if (remaining == 1) {
                if (!push_constant(last.var(), last.positive()))
                    return {true, {}, std::move(constants)};
            }
        }
    }

    CnfFormula out(n);
    for (const auto& [var, name] : formula.names())
        out.set_name(var, name);
    for (int c = 0; c < static_cast<int>(clauses.size()); ++c) {
        if (satisfied[c])
            continue;
        Clause reduced;
        bool sat = false;
        for (Lit l : clauses[c]) {
            const char val = value[l.var()];
            if (val == 0)
                reduced.push_back(l);
            else if ((val > 0) == l.positive())
                sat = true;
        }
        if (!sat)
            out.add_clause(reduced); // never empty: the fixpoint loop catches conflicts
    }
    return {false, std::move(out), std::move(constants)};
}

/// Renumbers the surviving variables onto 1..|surviving| preserving their
/// order; names follow their variables. Every clause variable must survive.
inline std::pair<CnfFormula, std::map<int, int>> compact(const CnfFormula& formula,
                                                         const std::set<int>& surviving) {
    std::map<int, int> renumber;
    int next = 1;
    for (int v : surviving) {
        if (v < 1 || v > formula.var_count())
            throw std::invalid_argument("compact: surviving variable out of range");
        renumber[v] = next++;
    }
    CnfFormula out(static_cast<int>(surviving.size()));
    for (const auto& [var, name] : formula.names())
        if (auto it = renumber.find(var); it != renumber.end())
            out.set_name(it->second, name);
    for (const Clause& clause : formula.clauses()) {
        Clause renamed;
        renamed.reserve(clause.size());
        for (Lit l : clause) {
            auto it = renumber.find(l.var());
            if (it == renumber.end())
                throw std::invalid_argument("compact: clause references non-surviving variable " +
                                            std::to_string(l.var()));
            renamed.push_back(Lit(l.positive() ? it->second : -it->second));
        }
        out.add_clause(renamed);
    }
    return {std::move(out), std::move(renumber)};
}

namespace detail {

inline CnfFormula drop_duplicate_clauses(const CnfFormula& formula) {
    CnfFormula out(formula.var_count());
    for (const auto& [var, name] : formula.names())
        out.set_name(var, name);
    std::set<Clause> seen;
    for (const Clause& clause : formula.clauses())
        if (seen.insert(clause).second)
            out.add_clause(clause);
    return out;
}

} // namespace detail

/// Atomic-set elimination: merges every regular atomic set onto its minimum
/// member, fixes core variables true and dead variables false, propagates
/// units to fixpoint, removes satisfied/tautological/duplicate clauses and
/// compacts the surviving variables. Returns the reduced formula and the
/// per-variable provenance map.
///
/// The transformation preserves the configuration space: model count and
/// per-variable cardinalities carry over through the map.
inline std::pair<CnfFormula, VariableMap> eliminate(const CnfFormula& formula,
                                                    const AtomicSetReport& report) {
    const int n = formula.var_count();
    std::vector<char> in_backbone(n + 1, 0);
    for (int v : report.backbone.core) {
        if (v < 1 || v > n)
            throw std::invalid_argument("eliminate: report does not match formula");
        in_backbone[v] = 1;
    }
    for (int v : report.backbone.dead) {
        if (v < 1 || v > n || in_backbone[v])
            throw std::invalid_argument("eliminate: report does not match formula");
        in_backbone[v] = 1;
    }

    std::map<int, int> representative_of;
    for (const AtomicSet& set : report.sets) {
        if (set.kind != AtomicSetKind::regular)
            continue;
        const int representative = *std::min_element(set.members.begin(), set.members.end());
        for (int v : set.members) {
            if (v < 1 || v > n || in_backbone[v] || representative_of.count(v))
                throw std::invalid_argument("eliminate: report does not match formula");
            representative_of[v] = representative;
        }
    }

    CnfFormula merged = substitute(formula, representative_of);

    std::map<int, bool> constants;
    for (int v : report.backbone.core)
        constants[v] = true;
    for (int v : report.backbone.dead)
        constants[v] = false;
    PropagationOutcome propagated = unit_propagate(merged, std::move(constants));
    if (propagated.conflict)
        throw ConflictError("eliminate: unit propagation derived the empty clause; "
                            "the report is inconsistent with the formula");

    std::set<int> surviving;
    for (int v = 1; v <= n; ++v)
        if (!propagated.constants.count(v) &&
            (!representative_of.count(v) || representative_of.at(v) == v))
            surviving.insert(v);

    CnfFormula deduped = detail::drop_duplicate_clauses(propagated.formula);
    auto [reduced, renumber] = compact(deduped, surviving);

    VariableMap map;
    map.old_var_count = n;
    map.new_var_count = static_cast<int>(surviving.size());
    map.fates.assign(n + 1, {});
    for (int v = 1; v <= n; ++v) {
        if (auto it = propagated.constants.find(v); it != propagated.constants.end())
            map.fates[v] = {it->second ? FateKind::const_true : FateKind::const_false, 0};
        else if (auto rep = representative_of.find(v);
                 rep != representative_of.end() && rep->second != v)
            map.fates[v] = {FateKind::merged, rep->second};
        else
            map.fates[v] = {FateKind::kept, renumber.at(v)};
    }
    return {std::move(reduced), std::move(map)};
}

/// Line-oriented sidecar format: header `map <old> <new>`, then one line per
/// original variable: `<old> KEPT <new>` | `<old> MERGED <rep>` |
/// `<old> TRUE` | `<old> FALSE`.
inline void write_variable_map(const VariableMap& map, std::ostream& out) {
    out << "map " << map.old_var_count << ' ' << map.new_var_count << '\n';
    for (int v = 1; v <= map.old_var_count; ++v) {
        const VariableFate& fate = map.fates[v];
        out << v << ' ';
        switch (fate.kind) {
        case FateKind::kept: out << "KEPT " << fate.target; break;
        case FateKind::merged: out << "MERGED " << fate.target; break;
        case FateKind::const_true: out << "TRUE"; break;
        case FateKind::const_false: out << "FALSE"; break;
        }
        out << '\n';
    }
}

inline VariableMap parse_variable_map(std::istream& in) {
    VariableMap map;
    std::string keyword;
    if (!(in >> keyword) || keyword != "map" || !(in >> map.old_var_count >> map.new_var_count))
        throw ParseError("variable map: malformed header");
    map.fates.assign(map.old_var_count + 1, {});
    std::vector<char> filled(map.old_var_count + 1, 0);
    for (int i = 0; i < map.old_var_count; ++i) {
        int var = 0;
        std::string kind;
        if (!(in >> var >> kind) || var < 1 || var > map.old_var_count || filled[var])
            throw ParseError("variable map: malformed entry");
        filled[var] = 1;
        if (kind == "KEPT" || kind == "MERGED") {
            int target = 0;
            if (!(in >> target))
                throw ParseError("variable map: missing target");
            map.fates[var] = {kind == "KEPT" ? FateKind::kept : FateKind::merged, target};
        } else if (kind == "TRUE") {
            map.fates[var] = {FateKind::const_true, 0};
        } else if (kind == "FALSE") {
            map.fates[var] = {FateKind::const_false, 0};
        } else {
            throw ParseError("variable map: unknown fate '" + kind + "'");
        }
    }
    return map;
}

} // namespace atomize
