#include "atomize/oracle.hpp"

#include <gtest/gtest.h>

#include "atomize/ase.hpp"
#include "atomize/random_cnf.hpp"
#include "test_util.hpp"

using namespace atomize;

namespace {

TEST(Enumerate, Fig1) {
    EnumerationResult r = enumerate_models(test::fig1());
    EXPECT_EQ(r.model_count, 2u);
    EXPECT_EQ(r.cardinalities[1], 2u);
    EXPECT_EQ(r.cardinalities[2], 2u);
    EXPECT_EQ(r.cardinalities[3], 1u);
    EXPECT_EQ(r.cardinalities[4], 1u);
    EXPECT_EQ(r.cardinalities[5], 1u);
}

TEST(Enumerate, EmptyFormulaThreeVars) {
    EnumerationResult r = enumerate_models(CnfFormula(3));
    EXPECT_EQ(r.model_count, 8u);
    for (int v = 1; v <= 3; ++v)
        EXPECT_EQ(r.cardinalities[v], 4u);
}

TEST(Enumerate, Contradiction) {
    EXPECT_EQ(enumerate_models(test::from_clauses(1, {{1}, {-1}})).model_count, 0u);
}

TEST(Enumerate, ZeroVars) {
    EXPECT_EQ(enumerate_models(CnfFormula(0)).model_count, 1u);
}

TEST(Enumerate, LimitEnforced) {
    EXPECT_THROW(enumerate_models(CnfFormula(26)), OracleLimitError);
    EXPECT_THROW(enumerate_models(CnfFormula(11), 10), OracleLimitError);
}

TEST(Enumerate, UnreferencedVariablesDoubleTheCount) {
    CnfFormula base = test::from_clauses(3, {{1, 2}, {-2, 3}});
    CnfFormula padded = test::from_clauses(6, {{1, 2}, {-2, 3}});
    EXPECT_EQ(enumerate_models(padded).model_count, enumerate_models(base).model_count * 8);
}

TEST(OracleAtomicSets, Fig1) {
    AtomicSetReport r = oracle_atomic_sets(test::fig1());
    EXPECT_EQ(r.backbone.core, (std::vector<int>{1, 2}));
    EXPECT_TRUE(r.backbone.dead.empty());
    ASSERT_EQ(r.sets.size(), 2u);
    EXPECT_EQ(r.sets[0].kind, AtomicSetKind::core);
    EXPECT_EQ(r.sets[0].members, (std::vector<int>{1, 2}));
    EXPECT_EQ(r.sets[1].kind, AtomicSetKind::regular);
    EXPECT_EQ(r.sets[1].members, (std::vector<int>{3, 5}));
}

TEST(OracleAtomicSets, PureBiImplication) {
    AtomicSetReport r = oracle_atomic_sets(test::from_clauses(2, {{-1, 2}, {1, -2}}));
    EXPECT_TRUE(r.backbone.core.empty());
    EXPECT_TRUE(r.backbone.dead.empty());
    ASSERT_EQ(r.sets.size(), 1u);
    EXPECT_EQ(r.sets[0].kind, AtomicSetKind::regular);
    EXPECT_EQ(r.sets[0].members, (std::vector<int>{1, 2}));
}

TEST(OracleAtomicSets, UnsatisfiableIsAnError) {
    EXPECT_THROW(oracle_atomic_sets(test::from_clauses(1, {{1}, {-1}})), UnsatisfiableError);
}

TEST(OracleAtomicSets, ClassesAreDisjoint) {
    for (std::uint64_t i = 0; i < 30; ++i) {
        AtomicSetReport r = oracle_atomic_sets(random_satisfiable_cnf(77, i));
        std::vector<char> seen(64, 0);
        for (const AtomicSet& s : r.sets) {
            EXPECT_GE(s.members.size(), 2u);
            if (s.kind != AtomicSetKind::regular)
                continue;
            for (int v : s.members) {
                EXPECT_FALSE(seen[v]);
                seen[v] = 1;
            }
        }
        for (int v : r.backbone.core)
            EXPECT_FALSE(seen[v]);
        for (int v : r.backbone.dead)
            EXPECT_FALSE(seen[v]);
    }
}

TEST(VerifyElimination, IdentityOnSetFreeFormula) {
    CnfFormula f = test::from_clauses(3, {{1, 2}, {2, 3}, {1, 3}});
    AtomicSetReport report = oracle_atomic_sets(f);
    ASSERT_TRUE(report.sets.empty());
    auto [reduced, map] = eliminate(f, report);
    EXPECT_TRUE(verify_elimination(f, reduced, map).pass);
    EXPECT_EQ(reduced.var_count(), 3);
}

TEST(VerifyElimination, TamperedReducedFails) {
    CnfFormula f = test::fig1();
    auto [reduced, map] = eliminate(f, oracle_atomic_sets(f));
    ASSERT_TRUE(verify_elimination(f, reduced, map).pass);

    CnfFormula tampered(reduced.var_count());
    for (const Clause& c : reduced.clauses())
        tampered.add_clause(c);
    tampered.add_clause({1}); // kills one of the two models
    VerificationResult r = verify_elimination(f, tampered, map);
    EXPECT_FALSE(r.pass);
    EXPECT_NE(r.diagnosis.find("model count"), std::string::npos);
}

TEST(VerifyElimination, MalformedMapThrows) {
    CnfFormula f = test::from_clauses(2, {{1, 2}});
    VariableMap map;
    map.old_var_count = 2;
    map.new_var_count = 2;
    map.fates.assign(3, {});
    map.fates[1] = {FateKind::kept, 1};
    map.fates[2] = {FateKind::kept, 5}; // out of range
    EXPECT_THROW(verify_elimination(f, f, map), std::invalid_argument);
}

} // namespace
