#pragma once

#include <cstdint>
#include <string>

#include "atomize/formula.hpp"
#include "atomize/report.hpp"

namespace atomize {

/// One analysis row: instance characteristics, atomic-set statistics,
/// wall-clock time and SAT-call count.
struct AnalysisRecord {
    std::string instance;
    int vars = 0;
    int clauses = 0;
    int sets = 0;
    int set_vars = 0;
    double mean_size = 0.0;
    int max_size = 0;
    double seconds = 0.0;
    std::uint64_t sat_calls = 0;
};

inline AnalysisRecord make_analysis_record(std::string instance, const CnfFormula& formula,
                                           const AtomicSetReport& report, double seconds) {
    AnalysisRecord record;
    record.instance = std::move(instance);
    record.vars = formula.var_count();
    record.clauses = formula.clause_count();
    record.sets = report.set_count();
    record.set_vars = report.variables_in_sets();
    record.mean_size = record.sets == 0 ? 0.0 : static_cast<double>(record.set_vars) / record.sets;
    record.max_size = report.max_set_size();
    record.seconds = seconds;
    record.sat_calls = report.stats.sat_calls;
    return record;
}

/// Variable and clause counts before and after elimination.
struct ReductionRecord {
    std::string instance;
    int vars_before = 0;
    int vars_after = 0;
    int clauses_before = 0;
    int clauses_after = 0;

    /// (after - before) / before, as a percentage; 0 when before is 0.
    static double delta_percent(int before, int after) {
        return before == 0 ? 0.0 : 100.0 * (after - before) / before;
    }
    double var_delta_percent() const { return delta_percent(vars_before, vars_after); }
    double clause_delta_percent() const { return delta_percent(clauses_before, clauses_after); }
};

inline ReductionRecord make_reduction_record(std::string instance, const CnfFormula& before,
                                             const CnfFormula& after) {
    return {std::move(instance), before.var_count(), after.var_count(), before.clause_count(),
            after.clause_count()};
}

} // namespace atomize
