#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "atomize/dpll.hpp"
#include "atomize/formula.hpp"
#include "atomize/solver.hpp"

namespace atomize {

/// A total truth assignment over variables 1..var_count.
class Model {
public:
    explicit Model(std::vector<bool> values) : values_(std::move(values)) {}

    int var_count() const { return static_cast<int>(values_.size()) - 1; }
    bool value(int var) const { return values_.at(var); }

    bool satisfies(Lit l) const { return value(l.var()) == l.positive(); }
    bool satisfies(const Clause& clause) const {
        for (Lit l : clause)
            if (satisfies(l))
                return true;
        return false;
    }
    bool satisfies(const CnfFormula& formula) const {
        for (const Clause& clause : formula.clauses())
            if (!satisfies(clause))
                return false;
        return true;
    }

    /// The assignment as signed DIMACS literals, ascending by variable.
    std::vector<int> to_literals() const {
        std::vector<int> out;
        out.reserve(var_count());
        for (int v = 1; v <= var_count(); ++v)
            out.push_back(value(v) ? v : -v);
        return out;
    }

    friend bool operator==(const Model&, const Model&) = default;

private:
    std::vector<bool> values_; // index 0 unused
};

class SatOutcome {
public:
    static SatOutcome satisfiable(Model model) { return SatOutcome(std::move(model)); }
    static SatOutcome unsatisfiable() { return SatOutcome(); }

    bool is_sat() const { return model_.has_value(); }
    const Model& model() const {
        if (!model_)
            throw std::logic_error("SatOutcome: no model on an unsatisfiable outcome");
        return *model_;
    }

private:
    SatOutcome() = default;
    explicit SatOutcome(Model model) : model_(std::move(model)) {}
    std::optional<Model> model_;
};

/// One loaded formula plus solver state, answering repeated satisfiability
/// queries under temporary assumptions. Assumptions never become part of the
/// formula. Sessions are single-consumer: one query at a time; run distinct
/// sessions for concurrent work.
class SolverSession {
public:
    virtual ~SolverSession() = default;

    SatOutcome check(std::span<const Lit> assumptions) {
        std::vector<int> lits;
        lits.reserve(assumptions.size());
        for (Lit l : assumptions) {
            if (l.var() > var_count())
                throw std::invalid_argument("check: assumption variable outside formula");
            lits.push_back(l.encoded());
        }
        for (std::size_t i = 0; i < lits.size(); ++i)
            for (std::size_t j = i + 1; j < lits.size(); ++j)
                if (lits[i] == -lits[j])
                    throw std::invalid_argument("check: contradictory assumptions");
        ++num_queries_;
        return run(lits);
    }

    SatOutcome check(std::initializer_list<int> assumptions) {
        std::vector<Lit> lits;
        lits.reserve(assumptions.size());
        for (int l : assumptions)
            lits.push_back(Lit(l));
        return check(std::span<const Lit>(lits));
    }

    virtual int var_count() const = 0;

    std::uint64_t num_queries() const { return num_queries_; }

protected:
    virtual SatOutcome run(const std::vector<int>& assumptions) = 0;

    /// Builds a total model from a backend's per-variable view; any variable
    /// the backend left out defaults to false.
    template <typename ValueFn>
    Model totalize(ValueFn&& value_of) const {
        std::vector<bool> values(var_count() + 1, false);
        for (int v = 1; v <= var_count(); ++v)
            values[v] = value_of(v);
        return Model(std::move(values));
    }

private:
    std::uint64_t num_queries_ = 0;
};

namespace detail {

template <typename Backend>
class BackendSession final : public SolverSession {
public:
    explicit BackendSession(const CnfFormula& formula) : backend_(formula) {}

    int var_count() const override { return backend_.var_count(); }

protected:
    SatOutcome run(const std::vector<int>& assumptions) override {
        if (!backend_.solve(assumptions))
            return SatOutcome::unsatisfiable();
        return SatOutcome::satisfiable(
            totalize([this](int v) { return backend_.model_value(v); }));
    }

private:
    Backend backend_;
};

} // namespace detail

inline const std::vector<std::string>& solver_backends() {
    static const std::vector<std::string> names = {"cdcl", "dpll"};
    return names;
}

inline std::unique_ptr<SolverSession> create_session(const CnfFormula& formula,
                                                     const std::string& backend = "cdcl") {
    if (backend == "cdcl")
        return std::make_unique<detail::BackendSession<CdclSolver>>(formula);
    if (backend == "dpll")
        return std::make_unique<detail::BackendSession<DpllSolver>>(formula);
    throw std::invalid_argument("unknown solver backend '" + backend + "'");
}

} // namespace atomize
