#pragma once

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "atomize/formula.hpp"

namespace atomize {

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline bool parse_int(std::string_view token, int& out) {
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    return ec == std::errc() && ptr == token.data() + token.size();
}

} // namespace detail

/// Reads DIMACS CNF. Comment lines of the form `c <index> <name>` declare
/// variable names; they are accepted before or after the problem line and
/// kept only when the index is a positive integer within the declared range.
/// Clauses are normalized; tautologies are dropped. An explicit empty clause
/// raises EmptyClauseError.
inline CnfFormula parse_dimacs(std::istream& in) {
    std::vector<std::pair<int, std::string>> pending_names;
    bool have_problem = false;
    int declared_vars = 0;
    CnfFormula formula;

    Clause current;
    bool in_clause = false;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view text = detail::trim(line);
        if (text.empty())
            continue;
        if (text.front() == 'c') {
            std::string_view rest = detail::trim(text.substr(1));
            auto space = rest.find_first_of(" \t");
            if (space != std::string_view::npos) {
                int index = 0;
                std::string_view name = detail::trim(rest.substr(space + 1));
                if (detail::parse_int(rest.substr(0, space), index) && index > 0 && !name.empty())
                    pending_names.emplace_back(index, std::string(name));
            }
            continue;
        }
        if (text.front() == 'p') {
            if (have_problem)
                throw ParseError("line " + std::to_string(line_no) + ": duplicate problem line");
            std::istringstream fields{std::string(text)};
            std::string p, fmt;
            long vars = -1, clauses = -1;
            fields >> p >> fmt >> vars >> clauses;
            if (fields.fail() || fmt != "cnf" || vars < 0 || clauses < 0)
                throw ParseError("line " + std::to_string(line_no) + ": malformed problem line");
            std::string extra;
            if (fields >> extra)
                throw ParseError("line " + std::to_string(line_no) + ": malformed problem line");
            declared_vars = static_cast<int>(vars);
            formula = CnfFormula(declared_vars);
            have_problem = true;
            continue;
        }
        if (!have_problem)
            throw ParseError("line " + std::to_string(line_no) + ": clause data before problem line");

        std::istringstream tokens{std::string(text)};
        std::string token;
        while (tokens >> token) {
            int value = 0;
            if (!detail::parse_int(token, value))
                throw ParseError("line " + std::to_string(line_no) + ": bad literal '" + token + "'");
            if (value == 0) {
                if (current.empty())
                    throw EmptyClauseError("line " + std::to_string(line_no) +
                                           ": empty clause (input is trivially unsatisfiable)");
                formula.add_clause(current);
                current.clear();
                in_clause = false;
                continue;
            }
            int var = value < 0 ? -value : value;
            if (var > declared_vars)
                throw ParseError("line " + std::to_string(line_no) + ": literal " +
                                 std::to_string(value) + " exceeds declared variable count");
            current.push_back(Lit(value));
            in_clause = true;
        }
    }
    if (in_clause)
        throw ParseError("unexpected end of input: clause not 0-terminated");
    if (!have_problem)
        throw ParseError("missing problem line");

    for (auto& [index, name] : pending_names)
        if (index <= declared_vars)
            formula.set_name(index, std::move(name));
    return formula;
}

inline CnfFormula parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    return parse_dimacs(in);
}

/// Writes DIMACS CNF: the name comment block, the problem line with the exact
/// variable and clause counts, then the clauses in stored order.
inline void write_dimacs(const CnfFormula& formula, std::ostream& out) {
    for (const auto& [var, name] : formula.names())
        out << "c " << var << ' ' << name << '\n';
    out << "p cnf " << formula.var_count() << ' ' << formula.clause_count() << '\n';
    for (const Clause& clause : formula.clauses()) {
        for (Lit l : clause)
            out << l.encoded() << ' ';
        out << "0\n";
    }
}

inline std::string write_dimacs(const CnfFormula& formula) {
    std::ostringstream out;
    write_dimacs(formula, out);
    return out.str();
}

} // namespace atomize
