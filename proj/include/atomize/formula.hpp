#pragma once

#include <algorithm>
#include <cassert>
#include <compare>
#include <cstdlib>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "atomize/errors.hpp"

namespace atomize {

/// A literal in signed DIMACS encoding: |value| is the variable index,
/// the sign is the polarity. Zero is not a literal.
class Lit {
public:
    explicit constexpr Lit(int encoded) : value_(encoded) { assert(encoded != 0); }

    constexpr int var() const { return value_ < 0 ? -value_ : value_; }
    constexpr bool positive() const { return value_ > 0; }
    constexpr int encoded() const { return value_; }
    constexpr Lit operator-() const { return Lit(-value_); }

    friend constexpr auto operator<=>(Lit, Lit) = default;

private:
    int value_;
};

using Clause = std::vector<Lit>;

inline Clause make_clause(std::initializer_list<int> lits) {
    Clause c;
    c.reserve(lits.size());
    for (int l : lits) c.push_back(Lit(l));
    return c;
}

/// Sorts ascending by variable index, removes duplicate literals and reports
/// tautologies as std::nullopt. Throws on an empty input clause.
inline std::optional<Clause> normalize_clause(std::span<const Lit> literals) {
    if (literals.empty())
        throw std::invalid_argument("normalize_clause: empty clause");
    Clause out(literals.begin(), literals.end());
    std::sort(out.begin(), out.end(), [](Lit a, Lit b) {
        return a.var() != b.var() ? a.var() < b.var() : a.encoded() < b.encoded();
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i].var() == out[i - 1].var())
            return std::nullopt;
    return out;
}

inline std::optional<Clause> normalize_clause(const Clause& literals) {
    return normalize_clause(std::span<const Lit>(literals));
}

/// A CNF formula over variables 1..var_count. Clauses are normalized on
/// insertion (sorted, duplicate-free, tautologies dropped). var_count may
/// exceed the number of variables that actually occur in clauses.
///
/// Instances are conceptually immutable once built; every algorithm in this
/// library takes them by const reference and never mutates shared state.
class CnfFormula {
public:
    CnfFormula() = default;
    explicit CnfFormula(int var_count) : var_count_(var_count) {
        if (var_count < 0)
            throw std::invalid_argument("CnfFormula: negative variable count");
    }

    int var_count() const { return var_count_; }
    int clause_count() const { return static_cast<int>(clauses_.size()); }
    const std::vector<Clause>& clauses() const { return clauses_; }
    const std::map<int, std::string>& names() const { return names_; }

    /// Normalizes and stores the clause. Returns false when the clause was a
    /// tautology and therefore dropped.
    bool add_clause(const Clause& literals) {
        auto normalized = normalize_clause(literals);
        if (!normalized)
            return false;
        for (Lit l : *normalized)
            if (l.var() > var_count_)
                throw std::invalid_argument("add_clause: literal outside declared variables");
        clauses_.push_back(std::move(*normalized));
        return true;
    }

    bool add_clause(std::initializer_list<int> lits) { return add_clause(make_clause(lits)); }

    void set_name(int var, std::string name) {
        if (var < 1 || var > var_count_)
            throw std::invalid_argument("set_name: variable out of range");
        names_[var] = std::move(name);
    }

    /// Display name for a variable: its declared name, or the index as text.
    std::string name_of(int var) const {
        auto it = names_.find(var);
        return it != names_.end() ? it->second : std::to_string(var);
    }

private:
    int var_count_ = 0;
    std::vector<Clause> clauses_;
    std::map<int, std::string> names_;
};

} // namespace atomize
