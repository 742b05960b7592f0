#include "atomize/atomic_analysis.hpp"

#include <gtest/gtest.h>

#include "atomize/dimacs.hpp"
#include "atomize/oracle.hpp"
#include "atomize/random_cnf.hpp"
#include "test_util.hpp"

using namespace atomize;

namespace {

Model make_model(std::vector<bool> bits) {
    bits.insert(bits.begin(), false); // shift to 1-based
    return Model(std::move(bits));
}

TEST(CandidateSetOp, Fig1PivotC) {
    // the two certificates are forced: fig1 has exactly two models
    Model pos = make_model({true, true, true, false, true});
    Model neg = make_model({true, true, false, true, false});
    EXPECT_EQ(candidate_set(pos, neg).candidates, (std::vector<int>{3, 5}));
}

TEST(CandidateSetOp, FullIntersection) {
    Model pos = make_model({true, true, true});
    Model neg = make_model({false, false, false});
    EXPECT_EQ(candidate_set(pos, neg).candidates, (std::vector<int>{1, 2, 3}));
}

TEST(CandidateSetOp, OnlyPivotRemains) {
    Model pos = make_model({true, false, true});
    Model neg = make_model({true, false, false});
    EXPECT_EQ(candidate_set(pos, neg).candidates, (std::vector<int>{3}));
}

TEST(CandidateSetOp, MismatchedModelsRejected) {
    EXPECT_THROW(candidate_set(make_model({true}), make_model({true, false})),
                 std::invalid_argument);
}

TEST(VerifyPairOp, Fig1) {
    CnfFormula f = test::fig1();
    auto session = create_session(f);
    PairVerdict ce = verify_pair(*session, 3, 5);
    EXPECT_TRUE(ce.confirmed);

    PairVerdict de = verify_pair(*session, 4, 5);
    EXPECT_FALSE(de.confirmed);
    ASSERT_TRUE(de.witness.has_value());
    EXPECT_TRUE(de.witness->satisfies(f));
    if (de.direction == RefutationDirection::pos) {
        EXPECT_TRUE(de.witness->value(4));
        EXPECT_FALSE(de.witness->value(5));
    } else {
        EXPECT_FALSE(de.witness->value(4));
        EXPECT_TRUE(de.witness->value(5));
    }
}

TEST(PruneOp, PosWitnessRemovesFalseAssigned) {
    CandidateSet cand{{3, 5, 7}};
    // witness with 5 false, 3 and 7 true
    Model witness = make_model({false, false, true, false, false, false, true});
    CandidateSet pruned = prune_with_refutation(cand, witness, RefutationDirection::pos);
    EXPECT_EQ(pruned.candidates, (std::vector<int>{3, 7}));
}

TEST(PruneOp, NegWitnessRemovesTrueAssigned) {
    CandidateSet cand{{3, 5}};
    Model witness = make_model({false, false, false, false, true});
    CandidateSet pruned = prune_with_refutation(cand, witness, RefutationDirection::neg);
    EXPECT_EQ(pruned.candidates, (std::vector<int>{3}));
}

TEST(PruneOp, PivotNeverRemoved) {
    // a pos-direction witness assigns the pivot true by construction
    CandidateSet cand{{2, 4}};
    Model witness = make_model({false, true, false, false});
    CandidateSet pruned = prune_with_refutation(cand, witness, RefutationDirection::pos);
    EXPECT_EQ(pruned.candidates, (std::vector<int>{2}));
}

TEST(ConfinementOp, NoRecordIsIdentity) {
    ConfinementIndex index;
    CandidateSet cand{{2, 3, 4}};
    EXPECT_EQ(apply_confinement(cand, 3, index).candidates, (std::vector<int>{2, 3, 4}));
}

TEST(ConfinementOp, IntersectsWithRecordedRemainder) {
    ConfinementIndex index;
    index.record({3, 4});
    CandidateSet cand{{2, 3, 4}};
    EXPECT_EQ(apply_confinement(cand, 3, index).candidates, (std::vector<int>{3, 4}));
    // variables not in any remainder are unaffected
    EXPECT_EQ(apply_confinement(CandidateSet{{2, 5}}, 5, index).candidates,
              (std::vector<int>{2, 5}));
}

TEST(ConfinementOp, AllRecordedRemaindersApply) {
    ConfinementIndex index;
    index.record({3, 4, 6});
    index.record({3, 4});
    CandidateSet cand{{2, 3, 4, 6}};
    EXPECT_EQ(apply_confinement(cand, 3, index).candidates, (std::vector<int>{3, 4}));
}

TEST(ComputeBackbone, Fig1) {
    CnfFormula f = test::fig1();
    auto session = create_session(f);
    BackboneResult b = compute_backbone(*session, f.var_count());
    EXPECT_EQ(b.core, (std::vector<int>{1, 2}));
    EXPECT_TRUE(b.dead.empty());
}

TEST(ComputeBackbone, UnitForcesCore) {
    CnfFormula f = test::from_clauses(2, {{1}, {1, 2}});
    auto session = create_session(f);
    BackboneResult b = compute_backbone(*session, 2);
    EXPECT_EQ(b.core, (std::vector<int>{1}));
    EXPECT_TRUE(b.dead.empty());
}

TEST(ComputeBackbone, NegativeUnitIsDead) {
    CnfFormula f = test::from_clauses(1, {{-1}});
    auto session = create_session(f);
    BackboneResult b = compute_backbone(*session, 1);
    EXPECT_TRUE(b.core.empty());
    EXPECT_EQ(b.dead, (std::vector<int>{1}));
}

TEST(ComputeBackbone, UnsatisfiableIsAnError) {
    CnfFormula f = test::from_clauses(2, {{1}, {-1}});
    auto session = create_session(f);
    EXPECT_THROW(compute_backbone(*session, 2), UnsatisfiableError);
}

TEST(Gnt, Fig1Report) {
    AtomicSetReport r = gnt_atomic_sets(test::fig1());
    ASSERT_EQ(r.sets.size(), 2u);
    EXPECT_EQ(r.sets[0].kind, AtomicSetKind::core);
    EXPECT_EQ(r.sets[0].members, (std::vector<int>{1, 2}));
    EXPECT_EQ(r.sets[1].kind, AtomicSetKind::regular);
    EXPECT_EQ(r.sets[1].members, (std::vector<int>{3, 5}));
    EXPECT_EQ(r.backbone.core, (std::vector<int>{1, 2}));
    EXPECT_TRUE(r.backbone.dead.empty());
}

TEST(Gnt, PureBiImplication) {
    AtomicSetReport r = gnt_atomic_sets(test::from_clauses(2, {{-1, 2}, {1, -2}}));
    ASSERT_EQ(r.sets.size(), 1u);
    EXPECT_EQ(r.sets[0].kind, AtomicSetKind::regular);
    EXPECT_EQ(r.sets[0].members, (std::vector<int>{1, 2}));
    EXPECT_TRUE(r.backbone.core.empty());
}

TEST(Gnt, UnsatisfiableInput) {
    EXPECT_THROW(gnt_atomic_sets(test::from_clauses(1, {{1}, {-1}})), UnsatisfiableError);
}

TEST(Gnt, UnreferencedVariablesAreHarmless) {
    CnfFormula f = test::from_clauses(6, {{1}, {-2, 3}, {2, -3}});
    AtomicSetReport r = gnt_atomic_sets(f);
    EXPECT_EQ(r.backbone.core, (std::vector<int>{1}));
    ASSERT_EQ(r.sets.size(), 1u);
    EXPECT_EQ(r.sets[0].members, (std::vector<int>{2, 3}));
    EXPECT_TRUE(same_partition(r, oracle_atomic_sets(f)));
}

TEST(Gnt, ZeroVariableFormula) {
    AtomicSetReport r = gnt_atomic_sets(CnfFormula(0));
    EXPECT_TRUE(r.sets.empty());
    EXPECT_EQ(r.stats.sat_calls, 0u);
}

TEST(Gnt, MatchesOracleOnRandomInstances) {
    RandomCnfParams params;
    params.min_vars = 12;
    params.max_vars = 12;
    for (std::uint64_t i = 0; i < 30; ++i) {
        CnfFormula f = random_satisfiable_cnf(2024, i, params);
        AtomicSetReport expected = oracle_atomic_sets(f);
        AtomicSetReport actual = gnt_atomic_sets(f);
        EXPECT_TRUE(same_partition(actual, expected)) << "instance " << i << "\n"
                                                      << write_dimacs(f);
    }
}

TEST(Gnt, ReportedPairsSatisfyTheDefinition) {
    for (std::uint64_t i = 0; i < 10; ++i) {
        CnfFormula f = random_satisfiable_cnf(555, i);
        AtomicSetReport r = gnt_atomic_sets(f);
        auto session = create_session(f);
        for (const AtomicSet& s : r.sets) {
            if (s.kind != AtomicSetKind::regular)
                continue;
            for (std::size_t a = 0; a < s.members.size(); ++a)
                for (std::size_t b = a + 1; b < s.members.size(); ++b) {
                    const int x = s.members[a], y = s.members[b];
                    EXPECT_FALSE(session->check({x, -y}).is_sat());
                    EXPECT_FALSE(session->check({-x, y}).is_sat());
                }
        }
    }
}

TEST(Gnt, ReportedSetsAreMaximal) {
    for (std::uint64_t i = 0; i < 10; ++i) {
        CnfFormula f = random_satisfiable_cnf(556, i);
        AtomicSetReport r = gnt_atomic_sets(f);
        auto session = create_session(f);
        std::vector<char> settled(f.var_count() + 1, 0);
        for (int v : r.backbone.core)
            settled[v] = 1;
        for (int v : r.backbone.dead)
            settled[v] = 1;
        for (const AtomicSet& s : r.sets)
            for (int v : s.members)
                settled[v] = 1;
        for (const AtomicSet& s : r.sets) {
            if (s.kind != AtomicSetKind::regular)
                continue;
            const int a = s.members.front();
            for (int w = 1; w <= f.var_count(); ++w) {
                if (settled[w])
                    continue;
                const bool separated = session->check({a, -w}).is_sat() ||
                                       session->check({-a, w}).is_sat();
                EXPECT_TRUE(separated) << "variable " << w << " missing from a set";
            }
        }
    }
}

TEST(Gnt, AugmentationNeutrality) {
    for (std::uint64_t i = 0; i < 20; ++i) {
        CnfFormula f = random_satisfiable_cnf(901, i);
        AtomicSetReport full = gnt_atomic_sets(f);
        for (int bit = 0; bit < 3; ++bit) {
            GntOptions opt;
            if (bit == 0)
                opt.inline_backbone = false;
            else if (bit == 1)
                opt.refutation_pruning = false;
            else
                opt.confinement = false;
            EXPECT_TRUE(same_partition(gnt_atomic_sets(f, opt), full)) << "bit " << bit;
        }
        GntOptions none;
        none.inline_backbone = none.refutation_pruning = none.confinement = false;
        AtomicSetReport plain = gnt_atomic_sets(f, none);
        EXPECT_TRUE(same_partition(plain, full));
        EXPECT_LE(full.stats.sat_calls, plain.stats.sat_calls);
    }
}

TEST(Gnt, QueryBoundHolds) {
    for (std::uint64_t i = 0; i < 30; ++i) {
        CnfFormula f = random_satisfiable_cnf(902, i);
        AtomicSetReport r = gnt_atomic_sets(f);
        EXPECT_LE(r.stats.sat_calls,
                  2 * static_cast<std::uint64_t>(f.var_count()) + 2 * r.stats.candidate_sum);
    }
}

TEST(Gnt, TimeBudgetExceeded) {
    GntOptions opt;
    opt.time_limit_seconds = 0.0;
    EXPECT_THROW(gnt_atomic_sets(test::fig1(), opt), TimeLimitError);
}

TEST(Gnt, BackendsProduceTheSamePartition) {
    for (std::uint64_t i = 0; i < 10; ++i) {
        CnfFormula f = random_satisfiable_cnf(903, i);
        GntOptions dpll;
        dpll.solver = "dpll";
        EXPECT_TRUE(same_partition(gnt_atomic_sets(f), gnt_atomic_sets(f, dpll)));
    }
}

} // namespace
