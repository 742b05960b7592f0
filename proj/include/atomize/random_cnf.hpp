#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "atomize/formula.hpp"
#include "atomize/oracle.hpp"

namespace atomize {

/// Parameters for the seeded random-CNF generator used by the verification
/// fuzz harness. Sizes stay firmly inside the enumeration oracle's range.
struct RandomCnfParams {
    int min_vars = 8;
    int max_vars = 20;
    double min_ratio = 1.5; // clauses per variable
    double max_ratio = 4.0;
    /// Probability that an instance gets a few planted variable
    /// equivalences (pairs of binary clauses), so the corpus regularly
    /// contains non-trivial atomic sets.
    double equivalence_probability = 0.5;
};

/// Deterministically generates the index-th satisfiable random CNF of a
/// seeded stream. Instances mix random 3-clauses with occasionally planted
/// equivalences; unsatisfiable draws are rejected (checked by exhaustive
/// enumeration, not by the solver under test) and redrawn.
inline CnfFormula random_satisfiable_cnf(std::uint64_t seed, std::uint64_t index,
                                         const RandomCnfParams& params = {}) {
    if (params.min_vars < 2 || params.max_vars < params.min_vars || params.max_vars > 25)
        throw std::invalid_argument("random_satisfiable_cnf: bad parameters");

    std::seed_seq sequence{seed, index};
    std::mt19937_64 rng(sequence);

    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::uniform_int_distribution<int> var_dist(params.min_vars, params.max_vars);
        std::uniform_real_distribution<double> ratio_dist(params.min_ratio, params.max_ratio);
        const int n = var_dist(rng);
        const int m = std::max(1, static_cast<int>(ratio_dist(rng) * n + 0.5));

        CnfFormula formula(n);
        int clauses_left = m;

        if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) <
            params.equivalence_probability) {
            const int max_pairs = std::max(1, n / 6);
            const int pairs = std::uniform_int_distribution<int>(1, max_pairs)(rng);
            for (int k = 0; k < pairs && clauses_left >= 2; ++k) {
                std::uniform_int_distribution<int> pick(1, n);
                const int a = pick(rng);
                int b = pick(rng);
                if (a == b)
                    continue;
                formula.add_clause({-a, b});
                formula.add_clause({a, -b});
                clauses_left -= 2;
            }
        }

        std::uniform_int_distribution<int> pick(1, n);
        std::bernoulli_distribution sign(0.5);
        while (clauses_left-- > 0) {
            Clause clause;
            while (clause.size() < 3) {
                const int v = pick(rng);
                bool fresh = true;
                for (Lit l : clause)
                    if (l.var() == v)
                        fresh = false;
                if (fresh)
                    clause.push_back(Lit(sign(rng) ? v : -v));
            }
            formula.add_clause(clause);
        }

        if (enumerate_models(formula).model_count > 0)
            return formula;
    }
    throw std::runtime_error("random_satisfiable_cnf: no satisfiable instance found");
}

} // namespace atomize
