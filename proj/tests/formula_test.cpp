#include "atomize/dimacs.hpp"
#include "atomize/formula.hpp"
#include "atomize/random_cnf.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <set>

#include "test_util.hpp"

using namespace atomize;

namespace {

std::vector<int> encoded(const Clause& clause) {
    std::vector<int> out;
    for (Lit l : clause)
        out.push_back(l.encoded());
    return out;
}

TEST(Lit, Basics) {
    Lit l(-7);
    EXPECT_EQ(l.var(), 7);
    EXPECT_FALSE(l.positive());
    EXPECT_EQ((-l).encoded(), 7);
}

TEST(NormalizeClause, DedupAndSort) {
    auto c = normalize_clause(make_clause({3, 3, -1}));
    ASSERT_TRUE(c.has_value());
    EXPECT_EQ(encoded(*c), (std::vector<int>{-1, 3}));
}

TEST(NormalizeClause, Tautology) {
    EXPECT_FALSE(normalize_clause(make_clause({2, -2})).has_value());
}

TEST(NormalizeClause, Identity) {
    auto c = normalize_clause(make_clause({5}));
    ASSERT_TRUE(c.has_value());
    EXPECT_EQ(encoded(*c), (std::vector<int>{5}));
}

TEST(NormalizeClause, EmptyInputThrows) {
    EXPECT_THROW(normalize_clause(Clause{}), std::invalid_argument);
}

TEST(ParseDimacs, Minimal) {
    CnfFormula f = parse_dimacs("p cnf 2 1\n1 -2 0");
    EXPECT_EQ(f.var_count(), 2);
    ASSERT_EQ(f.clause_count(), 1);
    EXPECT_EQ(encoded(f.clauses()[0]), (std::vector<int>{1, -2}));
}

TEST(ParseDimacs, TautologyDropped) {
    CnfFormula f = parse_dimacs("p cnf 1 1\n1 -1 0");
    EXPECT_EQ(f.var_count(), 1);
    EXPECT_EQ(f.clause_count(), 0);
}

TEST(ParseDimacs, Fig1Fixture) {
    std::ifstream in(test::fixture_path("fig1.cnf"));
    ASSERT_TRUE(in.good());
    CnfFormula f = parse_dimacs(in);
    EXPECT_EQ(f.var_count(), 5);
    EXPECT_EQ(f.clause_count(), 10);
    EXPECT_EQ(f.name_of(1), "A");
    EXPECT_EQ(f.name_of(5), "E");
}

TEST(ParseDimacs, NamesAfterProblemLine) {
    CnfFormula f = parse_dimacs("p cnf 2 1\nc 2 Two\n1 2 0\n");
    EXPECT_EQ(f.name_of(2), "Two");
    EXPECT_EQ(f.name_of(1), "1");
}

TEST(ParseDimacs, NameIndexOutOfRangeIgnored) {
    CnfFormula f = parse_dimacs("c 9 Nine\nc plain comment\np cnf 2 1\n1 2 0\n");
    EXPECT_TRUE(f.names().empty());
}

TEST(ParseDimacs, ClauseSpanningLines) {
    CnfFormula f = parse_dimacs("p cnf 3 1\n1\n2 3\n0\n");
    ASSERT_EQ(f.clause_count(), 1);
    EXPECT_EQ(f.clauses()[0].size(), 3u);
}

TEST(ParseDimacs, MalformedProblemLine) {
    EXPECT_THROW(parse_dimacs("p dnf 2 1\n1 0"), ParseError);
    EXPECT_THROW(parse_dimacs("p cnf -2 1\n1 0"), ParseError);
    EXPECT_THROW(parse_dimacs("p cnf 2\n1 0"), ParseError);
    EXPECT_THROW(parse_dimacs("1 0"), ParseError);
}

TEST(ParseDimacs, LiteralBeyondDeclared) {
    EXPECT_THROW(parse_dimacs("p cnf 2 1\n3 0"), ParseError);
}

TEST(ParseDimacs, UnterminatedClause) {
    EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 2"), ParseError);
}

TEST(ParseDimacs, EmptyClauseIsDistinctError) {
    EXPECT_THROW(parse_dimacs("p cnf 2 2\n1 0\n0"), EmptyClauseError);
}

TEST(WriteDimacs, Minimal) {
    CnfFormula f(2);
    f.add_clause({1, -2});
    EXPECT_EQ(write_dimacs(f), "p cnf 2 1\n1 -2 0\n");
}

TEST(WriteDimacs, EmptyFormula) {
    EXPECT_EQ(write_dimacs(CnfFormula(0)), "p cnf 0 0\n");
}

TEST(WriteDimacs, ClauseCountMatchesEmission) {
    CnfFormula f(3);
    f.add_clause({1, 2});
    f.add_clause({2, -2, 3}); // tautology, dropped
    f.add_clause({-3});
    std::string text = write_dimacs(f);
    EXPECT_NE(text.find("p cnf 3 2\n"), std::string::npos);
}

std::multiset<std::vector<int>> clause_multiset(const CnfFormula& f) {
    std::multiset<std::vector<int>> out;
    for (const Clause& c : f.clauses())
        out.insert(encoded(c));
    return out;
}

TEST(RoundTrip, ParseWriteParseIsIdempotent) {
    for (std::uint64_t i = 0; i < 25; ++i) {
        CnfFormula f = random_satisfiable_cnf(123, i);
        CnfFormula once = parse_dimacs(write_dimacs(f));
        CnfFormula twice = parse_dimacs(write_dimacs(once));
        EXPECT_EQ(clause_multiset(once), clause_multiset(twice));
        EXPECT_EQ(clause_multiset(f), clause_multiset(once));
        EXPECT_EQ(f.var_count(), once.var_count());
    }
}

TEST(RoundTrip, Fig1WithNames) {
    CnfFormula f = test::fig1();
    CnfFormula parsed = parse_dimacs(write_dimacs(f));
    EXPECT_EQ(clause_multiset(f), clause_multiset(parsed));
    EXPECT_EQ(parsed.names(), f.names());
}

TEST(Invariants, NoParsedClauseIsTautological) {
    for (std::uint64_t i = 0; i < 25; ++i) {
        CnfFormula f = parse_dimacs(write_dimacs(random_satisfiable_cnf(5, i)));
        for (const Clause& clause : f.clauses())
            for (std::size_t k = 1; k < clause.size(); ++k)
                EXPECT_NE(clause[k].var(), clause[k - 1].var());
    }
}

TEST(CnfFormula, UnusedVariablesRetained) {
    CnfFormula f = parse_dimacs("p cnf 10 1\n1 2 0\n");
    EXPECT_EQ(f.var_count(), 10);
}

TEST(CnfFormula, RejectsOutOfRangeLiteral) {
    CnfFormula f(2);
    EXPECT_THROW(f.add_clause({3}), std::invalid_argument);
}

} // namespace
